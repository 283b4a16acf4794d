// Result table: the selected related terms of every cluster, sortable by
// any column (authority descending by default). Clicking a row focuses
// the node in the graph.

import type { SearchResultDoc } from "./types";

export interface TableRow {
  id: number;
  title: string;
  authority: number;
  hub: number;
  cluster: string;
  rated: boolean;
}

type SortKey = "title" | "authority" | "hub" | "cluster";

export class TableView {
  private rows: TableRow[] = [];
  private sortKey: SortKey = "authority";
  private sortAsc = false;

  constructor(
    private readonly container: HTMLElement,
    private readonly onRowClick?: (id: number) => void,
  ) {}

  setResult(result: SearchResultDoc): void {
    this.rows = result.clusters.flatMap((cluster) =>
      cluster.members
        .filter((m) => m.selected)
        .map((m) => ({
          id: m.id,
          title: m.title,
          authority: m.authority,
          hub: m.hub,
          cluster: cluster.label,
          rated: false,
        })),
    );
    this.sortKey = "authority";
    this.sortAsc = false;
    this.render();
  }

  setRated(ratedIds: Set<number>): void {
    for (const row of this.rows) {
      row.rated = ratedIds.has(row.id);
    }
    this.render();
  }

  clear(): void {
    this.rows = [];
    this.render();
  }

  sortBy(key: SortKey): void {
    if (this.sortKey === key) {
      this.sortAsc = !this.sortAsc;
    } else {
      this.sortKey = key;
      this.sortAsc = key === "title" || key === "cluster";
    }
    this.render();
  }

  sortedRows(): TableRow[] {
    const rows = [...this.rows];
    const key = this.sortKey;
    rows.sort((a, b) => {
      const left = a[key];
      const right = b[key];
      const cmp =
        typeof left === "number" && typeof right === "number"
          ? left - right
          : String(left).localeCompare(String(right));
      return (this.sortAsc ? cmp : -cmp) || a.id - b.id;
    });
    return rows;
  }

  private render(): void {
    this.container.textContent = "";
    if (this.rows.length === 0) {
      const empty = document.createElement("p");
      empty.className = "table-empty";
      empty.textContent = "No related terms found.";
      this.container.appendChild(empty);
      return;
    }
    const table = document.createElement("table");
    table.className = "results";
    const head = table.createTHead().insertRow();
    const columns: [string, SortKey | null][] = [
      ["#", null],
      ["title", "title"],
      ["authority", "authority"],
      ["hub", "hub"],
      ["cluster", "cluster"],
      ["rated", null],
    ];
    for (const [label, key] of columns) {
      const th = document.createElement("th");
      th.textContent = label + (key === this.sortKey ? (this.sortAsc ? " ^" : " v") : "");
      if (key) {
        th.style.cursor = "pointer";
        th.addEventListener("click", () => this.sortBy(key));
      }
      head.appendChild(th);
    }
    const body = table.createTBody();
    this.sortedRows().forEach((row, rank) => {
      const tr = body.insertRow();
      tr.dataset.id = String(row.id);
      tr.style.cursor = "pointer";
      tr.addEventListener("click", () => this.onRowClick?.(row.id));
      tr.insertCell().textContent = String(rank + 1);
      tr.insertCell().textContent = row.title;
      tr.insertCell().textContent = row.authority.toFixed(6);
      tr.insertCell().textContent = row.hub.toFixed(6);
      tr.insertCell().textContent = row.cluster;
      tr.insertCell().textContent = row.rated ? "*" : "";
    });
    this.container.appendChild(table);
  }
}
