/** Seeded force-directed layout.
 *
 * Dependency-free and deterministic: initial positions come from a seeded
 * PRNG keyed by the center entity, so re-running the same query draws the
 * same picture.  Forces are the usual trio: pairwise repulsion, spring
 * attraction along edges, and a pull toward the viewport center.
 */

export interface LayoutNode {
  id: number;
  x: number;
  y: number;
  /** pinned by dragging; forces leave it alone */
  fixed?: boolean;
}

export interface LayoutEdge {
  head: number;
  tail: number;
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
  seed?: number;
}

/** mulberry32: tiny deterministic PRNG, good enough for layout jitter. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function layout(
  nodeIds: number[],
  edges: LayoutEdge[],
  options: LayoutOptions,
): Map<number, LayoutNode> {
  const { width, height } = options;
  const iterations = options.iterations ?? 150;
  const rand = mulberry32(options.seed ?? 1);
  const nodes = new Map<number, LayoutNode>();
  for (const id of nodeIds) {
    nodes.set(id, {
      id,
      x: width / 2 + (rand() - 0.5) * width * 0.6,
      y: height / 2 + (rand() - 0.5) * height * 0.6,
    });
  }
  const list = [...nodes.values()];
  if (list.length <= 1) {
    for (const node of list) {
      node.x = width / 2;
      node.y = height / 2;
    }
    return nodes;
  }
  const springLength = Math.min(width, height) / Math.max(3, Math.sqrt(list.length));
  const repulsion = springLength * springLength;
  let temperature = Math.min(width, height) / 8;
  const cooling = 0.95;

  for (let iter = 0; iter < iterations; iter++) {
    const fx = new Map<number, number>();
    const fy = new Map<number, number>();
    for (const node of list) {
      fx.set(node.id, 0);
      fy.set(node.id, 0);
    }
    // pairwise repulsion
    for (let i = 0; i < list.length; i++) {
      for (let j = i + 1; j < list.length; j++) {
        const a = list[i];
        const b = list[j];
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let dist2 = dx * dx + dy * dy;
        if (dist2 < 1e-6) {
          dx = rand() - 0.5;
          dy = rand() - 0.5;
          dist2 = dx * dx + dy * dy;
        }
        const dist = Math.sqrt(dist2);
        const force = repulsion / dist2;
        fx.set(a.id, fx.get(a.id)! + (dx / dist) * force);
        fy.set(a.id, fy.get(a.id)! + (dy / dist) * force);
        fx.set(b.id, fx.get(b.id)! - (dx / dist) * force);
        fy.set(b.id, fy.get(b.id)! - (dy / dist) * force);
      }
    }
    // spring attraction along edges
    for (const edge of edges) {
      const a = nodes.get(edge.head);
      const b = nodes.get(edge.tail);
      if (!a || !b) continue;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const dist = Math.max(Math.sqrt(dx * dx + dy * dy), 1e-3);
      const force = (dist - springLength) * 0.05;
      fx.set(a.id, fx.get(a.id)! + (dx / dist) * force);
      fy.set(a.id, fy.get(a.id)! + (dy / dist) * force);
      fx.set(b.id, fx.get(b.id)! - (dx / dist) * force);
      fy.set(b.id, fy.get(b.id)! - (dy / dist) * force);
    }
    // gentle centering + apply with temperature cap
    for (const node of list) {
      if (node.fixed) continue;
      let dx = fx.get(node.id)! + (width / 2 - node.x) * 0.01;
      let dy = fy.get(node.id)! + (height / 2 - node.y) * 0.01;
      const mag = Math.sqrt(dx * dx + dy * dy);
      if (mag > temperature) {
        dx = (dx / mag) * temperature;
        dy = (dy / mag) * temperature;
      }
      node.x = Math.min(width - 10, Math.max(10, node.x + dx));
      node.y = Math.min(height - 10, Math.max(10, node.y + dy));
    }
    temperature = Math.max(temperature * cooling, 0.5);
  }
  return nodes;
}
