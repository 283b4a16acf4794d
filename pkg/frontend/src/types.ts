// Shapes of the service API documents.

export interface SearchParamsDoc {
  s: number;
  t: number;
  d: number;
  n: number;
  c_max: number;
  epsilon: number;
  k: number;
  root_mode: string;
  max_iterations: number;
}

/** The seven user-facing knobs of the params panel. */
export interface ParamOverrides {
  t: number;
  d: number;
  n: number;
  c_max: number;
  epsilon: number;
  k: number;
  root_mode: "adapted" | "classic";
}

export const DEFAULT_PARAMS: ParamOverrides = {
  t: 50,
  d: 20,
  n: 10,
  c_max: 30,
  epsilon: 1e-8,
  k: 0.5,
  root_mode: "adapted",
};

export interface MemberDoc {
  id: number;
  title: string;
  authority: number;
  hub: number;
  selected: boolean;
  supporting_hubs: number[];
}

export interface ClusterDoc {
  label: string;
  weight: number;
  oversized: boolean;
  categories: number[];
  objective_value: number;
  members: MemberDoc[];
}

export interface SearchResultDoc {
  params: SearchParamsDoc;
  source: { id: number; title: string };
  iterations_used: number;
  final_error: number;
  root_set: number[];
  edges: [number, number][];
  clusters: ClusterDoc[];
}

export interface NeighborsDoc {
  id: number;
  title: string;
  out_links: number[];
  in_links: number[];
  categories: number[];
  titles: Record<string, string>;
  category_names: Record<string, string>;
}

export interface RatingDoc {
  id: number;
  rating: string;
}

export interface SessionDoc {
  version: number;
  source_title: string;
  params: SearchParamsDoc;
  ratings: RatingDoc[];
  seen_ids: number[];
  created_at: string;
  updated_at: string;
}

export interface CreateSessionResponse {
  token: string;
  session: SessionDoc;
  result: SearchResultDoc;
}

export interface ExpandResponse {
  neighbors: NeighborsDoc;
  session: SessionDoc;
}

export interface ApiErrorDoc {
  code: "bad_request" | "not_found" | "server_error";
  message: string;
}
