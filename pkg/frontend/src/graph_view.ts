// SVG rendering of the displayed graph. Re-renders the whole scene from
// the model on every update; at base-set sizes this is cheap and keeps
// the view a pure function of model + layout.

import { select } from "d3-selection";
import { schemeTableau10 } from "d3-scale-chromatic";

import type { GraphModel, NodeState } from "./model";
import { computeLayout, seedFromString } from "./layout";

export interface GraphCallbacks {
  onNodeClick?: (node: NodeState) => void;
}

export class GraphView {
  private readonly svg;
  private selectedId: number | null = null;

  constructor(
    svgElement: SVGSVGElement,
    private readonly callbacks: GraphCallbacks = {},
    private readonly width = 860,
    private readonly height = 600,
  ) {
    this.svg = select(svgElement)
      .attr("viewBox", `0 0 ${this.width} ${this.height}`)
      .attr("preserveAspectRatio", "xMidYMid meet");
    const defs = this.svg.append("defs");
    defs
      .append("marker")
      .attr("id", "arrow")
      .attr("viewBox", "0 -4 8 8")
      .attr("refX", 20)
      .attr("refY", 0)
      .attr("markerWidth", 7)
      .attr("markerHeight", 7)
      .attr("orient", "auto")
      .append("path")
      .attr("d", "M0,-4L8,0L0,4")
      .attr("fill", "#9aa1a9");
    this.svg.append("g").attr("class", "edges");
    this.svg.append("g").attr("class", "nodes");
  }

  clear(): void {
    this.svg.select(".edges").selectAll("*").remove();
    this.svg.select(".nodes").selectAll("*").remove();
  }

  setSelected(id: number | null): void {
    this.selectedId = id;
  }

  render(model: GraphModel, layoutKey: string): void {
    const ids = model.nodeIds();
    const edges = model.visibleEdges();
    const { positions } = computeLayout(
      ids,
      edges,
      this.width,
      this.height,
      seedFromString(layoutKey),
    );
    const sourceId = model.result?.source.id;

    const edgeSel = this.svg
      .select(".edges")
      .selectAll<SVGLineElement, [number, number]>("line")
      .data(edges, (e) => `${e[0]}->${e[1]}`);
    edgeSel.exit().remove();
    edgeSel
      .enter()
      .append("line")
      .attr("class", "edge")
      .attr("stroke", "#c4c9cf")
      .attr("stroke-width", 1.1)
      .attr("marker-end", "url(#arrow)")
      .merge(edgeSel)
      .attr("x1", (e) => positions.get(e[0])?.x ?? 0)
      .attr("y1", (e) => positions.get(e[0])?.y ?? 0)
      .attr("x2", (e) => positions.get(e[1])?.x ?? 0)
      .attr("y2", (e) => positions.get(e[1])?.y ?? 0);

    const nodes = ids.map((id) => model.nodes.get(id)!);
    const nodeSel = this.svg
      .select(".nodes")
      .selectAll<SVGGElement, NodeState>("g.node")
      .data(nodes, (n) => String(n.id));
    nodeSel.exit().remove();
    const entered = nodeSel
      .enter()
      .append("g")
      .attr("class", "node")
      .style("cursor", "pointer")
      .on("click", (_event, node) => this.callbacks.onNodeClick?.(node));
    entered.append("circle").attr("class", "halo");
    entered.append("circle").attr("class", "dot");
    entered
      .append("text")
      .attr("class", "label")
      .attr("dy", -16)
      .attr("text-anchor", "middle")
      .style("font", "11px sans-serif");

    const merged = entered.merge(nodeSel);
    merged.attr("transform", (n) => {
      const p = positions.get(n.id);
      return `translate(${p?.x ?? 0},${p?.y ?? 0})`;
    });
    merged
      .select<SVGCircleElement>("circle.halo")
      .attr("r", (n) => (n.selected ? 14 : 0))
      .attr("fill", "none")
      .attr("stroke", (n) => (n.selected ? "#2b2f33" : "none"))
      .attr("stroke-width", 1.4);
    merged
      .select<SVGCircleElement>("circle.dot")
      .attr("r", (n) => (n.id === sourceId ? 12 : 9))
      .attr("fill", (n) => this.fillFor(n, sourceId))
      .attr("stroke", (n) => (n.rated ? "#d4a017" : n.id === this.selectedId ? "#0b66c3" : "#ffffff"))
      .attr("stroke-width", (n) => (n.rated || n.id === this.selectedId ? 3 : 1.2));
    merged
      .select<SVGTextElement>("text.label")
      .text((n) => n.title)
      .style("font-weight", (n) => (n.id === sourceId || n.rated ? "700" : "400"));
  }

  private fillFor(node: NodeState, sourceId: number | undefined): string {
    if (node.id === sourceId) {
      return "#2b2f33";
    }
    if (node.clusterIndex < 0) {
      return "#b9c0c7"; // expansion-only node, not part of any cluster
    }
    return schemeTableau10[node.clusterIndex % schemeTableau10.length] ?? "#888";
  }
}
