// Single-page explorer: search form + params panel on top, detail panel
// left, force-directed base-set graph right, result table below. One
// search in flight at a time; expansion and rating requests run through
// a serial queue, and rating marks always reflect the server's session
// state after the response (no optimistic marking).

import { ApiClient, ApiError } from "./api";
import { GraphModel, type NodeState } from "./model";
import { GraphView } from "./graph_view";
import { TableView } from "./table_view";
import { SerialQueue } from "./queue";
import { DEFAULT_PARAMS, type ParamOverrides, type SessionDoc } from "./types";

const PARAM_FIELDS: [keyof ParamOverrides, string][] = [
  ["t", "root set volume"],
  ["d", "in-link cap"],
  ["n", "results per cluster"],
  ["c_max", "cluster weight cap"],
  ["epsilon", "iteration error"],
  ["k", "objective mix"],
  ["root_mode", "root mode"],
];

export class App {
  readonly model = new GraphModel();
  readonly queue = new SerialQueue();
  private readonly graph: GraphView;
  private readonly table: TableView;
  private token: string | null = null;
  private session: SessionDoc | null = null;
  private searching = false;
  private layoutKey = "";
  private focused: NodeState | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    root.innerHTML = `
      <header>
        <form id="search-form">
          <input id="word" type="text" placeholder="word to search" autocomplete="off" />
          <button id="go" type="submit">Search</button>
          <span id="status"></span>
        </form>
        <fieldset id="params"><legend>parameters</legend></fieldset>
        <div id="banner" hidden></div>
      </header>
      <main>
        <aside id="detail">
          <h3>details</h3>
          <div id="detail-body"><p>Search for a word, then click a node.</p></div>
          <h3>session</h3>
          <div id="session-controls">
            <button id="download" type="button" disabled>download session</button>
            <label class="upload">upload session<input id="upload" type="file" accept=".json" hidden /></label>
          </div>
        </aside>
        <section id="graph-pane">
          <svg id="graph"></svg>
        </section>
      </main>
      <section id="table-pane"></section>
    `;
    this.buildParamsPanel();
    this.graph = new GraphView(root.querySelector("#graph")!, {
      onNodeClick: (node) => this.focusNode(node.id),
    });
    this.table = new TableView(root.querySelector("#table-pane")!, (id) => this.focusNode(id));

    root.querySelector<HTMLFormElement>("#search-form")!.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.search();
    });
    root.querySelector<HTMLButtonElement>("#download")!.addEventListener("click", () => {
      void this.downloadSession();
    });
    root.querySelector<HTMLInputElement>("#upload")!.addEventListener("change", (event) => {
      const input = event.target as HTMLInputElement;
      const file = input.files?.[0];
      if (file) {
        void this.uploadSession(file);
      }
      input.value = "";
    });
  }

  private buildParamsPanel(): void {
    const panel = this.root.querySelector("#params")!;
    for (const [name, label] of PARAM_FIELDS) {
      const wrap = document.createElement("label");
      wrap.textContent = `${label} `;
      if (name === "root_mode") {
        const select = document.createElement("select");
        select.id = `param-${name}`;
        for (const mode of ["adapted", "classic"]) {
          const option = document.createElement("option");
          option.value = mode;
          option.textContent = mode;
          select.appendChild(option);
        }
        select.value = DEFAULT_PARAMS.root_mode;
        wrap.appendChild(select);
      } else {
        const input = document.createElement("input");
        input.id = `param-${name}`;
        input.type = "text";
        input.size = 8;
        input.value = String(DEFAULT_PARAMS[name]);
        wrap.appendChild(input);
      }
      panel.appendChild(wrap);
    }
  }

  readParams(): ParamOverrides {
    const read = (name: keyof ParamOverrides): string =>
      this.root.querySelector<HTMLInputElement | HTMLSelectElement>(`#param-${name}`)!.value;
    return {
      t: Number(read("t")),
      d: Number(read("d")),
      n: Number(read("n")),
      c_max: Number(read("c_max")),
      epsilon: Number(read("epsilon")),
      k: Number(read("k")),
      root_mode: read("root_mode") === "classic" ? "classic" : "adapted",
    };
  }

  banner(message: string | null): void {
    const el = this.root.querySelector<HTMLDivElement>("#banner")!;
    if (message) {
      el.textContent = message;
      el.hidden = false;
    } else {
      el.textContent = "";
      el.hidden = true;
    }
  }

  private status(text: string): void {
    this.root.querySelector("#status")!.textContent = text;
  }

  async search(word?: string): Promise<void> {
    if (this.searching) {
      return; // at most one in-flight search
    }
    const title = word ?? this.root.querySelector<HTMLInputElement>("#word")!.value.trim();
    if (!title) {
      return;
    }
    this.searching = true;
    this.banner(null);
    this.status("searching...");
    try {
      const params = this.readParams();
      const created = await this.api.createSession(title, params);
      this.token = created.token;
      this.session = created.session;
      this.layoutKey = `${title}|${JSON.stringify(params)}`;
      this.model.applySearchResult(created.result);
      this.model.setRatings(created.session);
      this.table.setResult(created.result);
      this.refresh();
      this.focused = null;
      this.renderDetail();
      this.root.querySelector<HTMLButtonElement>("#download")!.disabled = false;
      this.status(
        `${created.result.source.title}: ${this.model.nodeCount()} nodes, ` +
          `${this.model.edgeCount()} edges, ${created.result.iterations_used} iterations`,
      );
    } catch (error) {
      this.status("");
      this.banner(this.describe(error));
    } finally {
      this.searching = false;
    }
  }

  /** Queue a rate/unrate round-trip; marks update from the response only. */
  rateToggle(id: number): Promise<void> {
    return this.queue.push(async () => {
      if (!this.token) {
        return;
      }
      const node = this.model.nodes.get(id);
      if (!node) {
        return;
      }
      try {
        const session = node.rated
          ? await this.api.unrate(this.token, id)
          : await this.api.rate(this.token, id);
        this.session = session;
        this.model.setRatings(session);
        this.refresh();
        this.renderDetail();
      } catch (error) {
        this.banner(this.describe(error));
      }
    });
  }

  expandNode(id: number): Promise<void> {
    return this.queue.push(async () => {
      if (!this.token) {
        return;
      }
      try {
        const { neighbors, session } = await this.api.expand(this.token, id);
        this.session = session;
        this.model.applyExpansion(id, neighbors);
        this.model.setRatings(session);
        this.refresh();
        this.renderDetail();
      } catch (error) {
        this.banner(this.describe(error));
      }
    });
  }

  hideNode(id: number): void {
    this.model.hideExpansion(id);
    this.refresh();
    this.renderDetail();
  }

  focusNode(id: number): void {
    this.focused = this.model.nodes.get(id) ?? null;
    this.graph.setSelected(this.focused ? id : null);
    this.refresh();
    this.renderDetail();
  }

  private refresh(): void {
    this.graph.render(this.model, this.layoutKey);
    this.table.setRated(new Set((this.session?.ratings ?? []).map((r) => r.id)));
  }

  private renderDetail(): void {
    const body = this.root.querySelector<HTMLDivElement>("#detail-body")!;
    body.textContent = "";
    const node = this.focused ? this.model.nodes.get(this.focused.id) : null;
    if (!node) {
      const hint = document.createElement("p");
      hint.textContent = this.model.nodeCount()
        ? "Click a node to inspect it."
        : "Search for a word, then click a node.";
      body.appendChild(hint);
      return;
    }
    const title = document.createElement("h4");
    title.textContent = node.title;
    body.appendChild(title);
    const facts = document.createElement("dl");
    const fact = (key: string, value: string) => {
      const dt = document.createElement("dt");
      dt.textContent = key;
      const dd = document.createElement("dd");
      dd.textContent = value;
      facts.append(dt, dd);
    };
    fact("id", String(node.id));
    fact("authority", node.authority.toFixed(6));
    fact("hub", node.hub.toFixed(6));
    if (node.clusterLabel) {
      fact("cluster", node.clusterLabel);
    }
    if (node.selected) {
      fact("supporting hubs", node.supportingHubs.join(", ") || "-");
    }
    fact("rated", node.rated ? "synonym" : "unrated");
    body.appendChild(facts);

    const actions = document.createElement("div");
    actions.className = "actions";
    const rateButton = document.createElement("button");
    rateButton.id = "rate-toggle";
    rateButton.textContent = node.rated ? "unrate" : "rate as synonym";
    rateButton.addEventListener("click", () => void this.rateToggle(node.id));
    actions.appendChild(rateButton);
    const expandButton = document.createElement("button");
    expandButton.id = "expand-node";
    expandButton.textContent = "expand";
    expandButton.addEventListener("click", () => void this.expandNode(node.id));
    actions.appendChild(expandButton);
    if (node.expanded) {
      const hideButton = document.createElement("button");
      hideButton.id = "hide-node";
      hideButton.textContent = "hide neighbours";
      hideButton.addEventListener("click", () => this.hideNode(node.id));
      actions.appendChild(hideButton);
    }
    body.appendChild(actions);
  }

  private async downloadSession(): Promise<void> {
    if (!this.token) {
      return;
    }
    try {
      const doc = await this.api.getSession(this.token);
      const blob = new Blob([JSON.stringify(doc, null, 2) + "\n"], {
        type: "application/json",
      });
      const anchor = document.createElement("a");
      anchor.href = URL.createObjectURL(blob);
      anchor.download = `session-${doc.source_title.replaceAll(" ", "_")}.json`;
      anchor.click();
      URL.revokeObjectURL(anchor.href);
    } catch (error) {
      this.banner(this.describe(error));
    }
  }

  private async uploadSession(file: File): Promise<void> {
    try {
      const doc = JSON.parse(await file.text()) as SessionDoc;
      const imported = await this.api.importSession(doc);
      this.token = imported.token;
      this.session = imported.session;
      // rebuild the view for the imported word with its stored params
      const p = imported.session.params;
      const result = await this.api.search(imported.session.source_title, {
        t: p.t,
        d: p.d,
        n: p.n,
        c_max: p.c_max,
        epsilon: p.epsilon,
        k: p.k,
        root_mode: p.root_mode === "classic" ? "classic" : "adapted",
      });
      this.layoutKey = `${imported.session.source_title}|import`;
      this.model.applySearchResult(result);
      this.model.setRatings(imported.session);
      this.table.setResult(result);
      this.refresh();
      this.renderDetail();
      this.root.querySelector<HTMLButtonElement>("#download")!.disabled = false;
      this.banner(null);
    } catch (error) {
      this.banner(this.describe(error));
    }
  }

  private describe(error: unknown): string {
    if (error instanceof ApiError) {
      return `${error.code}: ${error.message}`;
    }
    return error instanceof Error ? error.message : String(error);
  }
}
