// Deterministic force-directed layout. The simulation is ticked
// synchronously with a seeded random source, so the same query always
// produces the same picture; positions carry no algorithmic meaning.

import {
  forceCenter,
  forceCollide,
  forceLink,
  forceManyBody,
  forceSimulation,
  type SimulationLinkDatum,
  type SimulationNodeDatum,
} from "d3-force";

export interface LayoutNode extends SimulationNodeDatum {
  id: number;
}

export interface LayoutResult {
  positions: Map<number, { x: number; y: number }>;
}

/** mulberry32: tiny deterministic PRNG over a 32-bit state. */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/** FNV-1a hash so a query string can seed the layout. */
export function seedFromString(text: string): number {
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193);
  }
  return hash >>> 0;
}

export function computeLayout(
  ids: number[],
  edges: [number, number][],
  width: number,
  height: number,
  seed: number,
): LayoutResult {
  const random = mulberry32(seed);
  const nodes: LayoutNode[] = ids.map((id) => ({
    id,
    x: width / 2 + (random() - 0.5) * width * 0.8,
    y: height / 2 + (random() - 0.5) * height * 0.8,
  }));
  const index = new Map(nodes.map((n) => [n.id, n]));
  const links: SimulationLinkDatum<LayoutNode>[] = edges
    .filter(([u, v]) => index.has(u) && index.has(v))
    .map(([u, v]) => ({ source: index.get(u)!, target: index.get(v)! }));

  const simulation = forceSimulation(nodes)
    .randomSource(random)
    .force("charge", forceManyBody().strength(-120))
    .force("link", forceLink(links).distance(70).strength(0.6))
    .force("center", forceCenter(width / 2, height / 2))
    .force("collide", forceCollide(18))
    .stop();
  const ticks = Math.min(300, 60 + nodes.length * 4);
  for (let i = 0; i < ticks; i++) {
    simulation.tick();
  }

  const positions = new Map<number, { x: number; y: number }>();
  for (const node of nodes) {
    positions.set(node.id, {
      x: Math.max(16, Math.min(width - 16, node.x ?? width / 2)),
      y: Math.max(16, Math.min(height - 16, node.y ?? height / 2)),
    });
  }
  return { positions };
}
