// Displayed-graph state. Every node carries the set of reasons ("anchors")
// it is on screen: the base search result, or one or more node expansions.
// Hiding an expansion removes that anchor everywhere and drops nodes with
// none left, so expand-then-hide restores the previous node set exactly.
// Nodes are only ever created from API documents, never fabricated.

import type { NeighborsDoc, SearchResultDoc, SessionDoc } from "./types";

export const BASE_ANCHOR = "base";

export interface NodeState {
  id: number;
  title: string;
  authority: number;
  hub: number;
  selected: boolean;
  supportingHubs: number[];
  clusterIndex: number; // -1 for nodes revealed by expansion only
  clusterLabel: string;
  anchors: Set<string>;
  rated: boolean;
  expanded: boolean;
}

function edgeKey(u: number, v: number): string {
  return `${u}->${v}`;
}

export class GraphModel {
  readonly nodes = new Map<number, NodeState>();
  private readonly edges = new Map<string, [number, number]>();
  result: SearchResultDoc | null = null;

  applySearchResult(result: SearchResultDoc): void {
    this.nodes.clear();
    this.edges.clear();
    this.result = result;
    result.clusters.forEach((cluster, index) => {
      for (const member of cluster.members) {
        this.nodes.set(member.id, {
          id: member.id,
          title: member.title,
          authority: member.authority,
          hub: member.hub,
          selected: member.selected,
          supportingHubs: member.supporting_hubs,
          clusterIndex: index,
          clusterLabel: cluster.label,
          anchors: new Set([BASE_ANCHOR]),
          rated: false,
          expanded: false,
        });
      }
    });
    for (const [u, v] of result.edges) {
      this.edges.set(edgeKey(u, v), [u, v]);
    }
  }

  /** Merge one node's fetched adjacency; returns the ids newly displayed. */
  applyExpansion(sourceId: number, neighbors: NeighborsDoc): number[] {
    const source = this.nodes.get(sourceId);
    if (!source) {
      return [];
    }
    const anchor = `expand:${sourceId}`;
    const added: number[] = [];
    const reveal = (id: number) => {
      const known = this.nodes.get(id);
      if (known) {
        known.anchors.add(anchor);
        return;
      }
      const title = neighbors.titles[String(id)];
      if (title === undefined) {
        return; // never fabricate a node the API did not describe
      }
      this.nodes.set(id, {
        id,
        title,
        authority: 0,
        hub: 0,
        selected: false,
        supportingHubs: [],
        clusterIndex: -1,
        clusterLabel: "",
        anchors: new Set([anchor]),
        rated: false,
        expanded: false,
      });
      added.push(id);
    };
    for (const id of neighbors.out_links) {
      reveal(id);
      this.edges.set(edgeKey(sourceId, id), [sourceId, id]);
    }
    for (const id of neighbors.in_links) {
      reveal(id);
      this.edges.set(edgeKey(id, sourceId), [id, sourceId]);
    }
    source.expanded = true;
    return added;
  }

  /** Undo one expansion; neighbors still anchored elsewhere stay. */
  hideExpansion(sourceId: number): number[] {
    const anchor = `expand:${sourceId}`;
    const removed: number[] = [];
    for (const node of [...this.nodes.values()]) {
      node.anchors.delete(anchor);
      if (node.anchors.size === 0) {
        this.nodes.delete(node.id);
        removed.push(node.id);
      }
    }
    const source = this.nodes.get(sourceId);
    if (source) {
      source.expanded = false;
    }
    return removed;
  }

  /** Rating marks always mirror the server session, never local hopes. */
  setRatings(session: SessionDoc): void {
    const rated = new Set(session.ratings.map((r) => r.id));
    for (const node of this.nodes.values()) {
      node.rated = rated.has(node.id);
    }
  }

  /** Edges with both endpoints displayed. */
  visibleEdges(): [number, number][] {
    const out: [number, number][] = [];
    for (const [u, v] of this.edges.values()) {
      if (this.nodes.has(u) && this.nodes.has(v)) {
        out.push([u, v]);
      }
    }
    return out;
  }

  nodeIds(): number[] {
    return [...this.nodes.keys()].sort((a, b) => a - b);
  }

  nodeCount(): number {
    return this.nodes.size;
  }

  edgeCount(): number {
    return this.visibleEdges().length;
  }
}
