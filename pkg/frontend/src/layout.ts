/**
 * Deterministic force layout: the family format carries no coordinates, so
 * vertex positions are computed client-side from a fixed seed. Same graph
 * + same seed = identical layout (screenshot-test friendly).
 */

export interface Point {
  x: number;
  y: number;
}

/** mulberry32: tiny seeded PRNG, plenty for layout jitter. */
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

export function forceLayout(
  vertexCount: number,
  edges: [number, number][],
  width: number,
  height: number,
  seed = 42,
  iterations = 250,
): Point[] {
  const rand = mulberry32(seed);
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) * 0.35;
  const pos: Point[] = [];
  for (let i = 0; i < vertexCount; i++) {
    const angle = (2 * Math.PI * i) / vertexCount;
    pos.push({
      x: cx + radius * Math.cos(angle) + (rand() - 0.5) * 10,
      y: cy + radius * Math.sin(angle) + (rand() - 0.5) * 10,
    });
  }
  if (vertexCount === 1) {
    return [{ x: cx, y: cy }];
  }

  const springLength = radius * (1.6 / Math.sqrt(vertexCount));
  const repulsion = radius * radius * 0.08;
  for (let step = 0; step < iterations; step++) {
    const cool = 1 - step / iterations;
    const force: Point[] = pos.map(() => ({ x: 0, y: 0 }));
    for (let i = 0; i < vertexCount; i++) {
      for (let j = i + 1; j < vertexCount; j++) {
        const dx = pos[i].x - pos[j].x;
        const dy = pos[i].y - pos[j].y;
        const d2 = Math.max(dx * dx + dy * dy, 1e-4);
        const f = repulsion / d2;
        const d = Math.sqrt(d2);
        force[i].x += (dx / d) * f;
        force[i].y += (dy / d) * f;
        force[j].x -= (dx / d) * f;
        force[j].y -= (dy / d) * f;
      }
    }
    for (const [u, v] of edges) {
      const dx = pos[v].x - pos[u].x;
      const dy = pos[v].y - pos[u].y;
      const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1e-2);
      const f = (d - springLength) * 0.06;
      force[u].x += (dx / d) * f;
      force[u].y += (dy / d) * f;
      force[v].x -= (dx / d) * f;
      force[v].y -= (dy / d) * f;
    }
    for (let i = 0; i < vertexCount; i++) {
      force[i].x += (cx - pos[i].x) * 0.01;
      force[i].y += (cy - pos[i].y) * 0.01;
      pos[i].x += force[i].x * cool;
      pos[i].y += force[i].y * cool;
    }
  }
  // clamp into the viewport with a margin
  const margin = 24;
  for (const p of pos) {
    p.x = Math.min(Math.max(p.x, margin), width - margin);
    p.y = Math.min(Math.max(p.y, margin), height - margin);
  }
  return pos;
}
