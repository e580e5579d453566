/** Deterministic force-directed layout.
 *
 * Positions depend only on (node count, edge list, seed), so re-rendering a
 * cell with unchanged structure reproduces the layout exactly; callers key a
 * cache by `graphSignature` to skip even the recomputation.
 */

export interface Point {
  x: number;
  y: number;
}

export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function hashString(text: string): number {
  let h = 2166136261 >>> 0;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 16777619);
  }
  return h >>> 0;
}

export function graphSignature(
  nNodes: number,
  edges: [number, number][],
): string {
  return `${nNodes}|${edges.map((e) => `${e[0]}-${e[1]}`).join(",")}`;
}

export function forceLayout(
  nNodes: number,
  edges: [number, number][],
  seed: number,
  iterations = 120,
): Point[] {
  const rand = mulberry32(seed);
  const pos: Point[] = Array.from({ length: nNodes }, () => ({
    x: rand() * 2 - 1,
    y: rand() * 2 - 1,
  }));
  if (nNodes <= 1) return pos.map(() => ({ x: 0, y: 0 }));

  const ideal = 1.0 / Math.sqrt(nNodes);
  for (let it = 0; it < iterations; it++) {
    const step = 0.1 * (1 - it / iterations) + 0.005;
    const disp: Point[] = pos.map(() => ({ x: 0, y: 0 }));
    for (let i = 0; i < nNodes; i++) {
      for (let j = i + 1; j < nNodes; j++) {
        const dx = pos[i]!.x - pos[j]!.x;
        const dy = pos[i]!.y - pos[j]!.y;
        const d2 = dx * dx + dy * dy + 1e-9;
        const f = (ideal * ideal) / d2;
        disp[i]!.x += dx * f;
        disp[i]!.y += dy * f;
        disp[j]!.x -= dx * f;
        disp[j]!.y -= dy * f;
      }
    }
    for (const [a, b] of edges) {
      const dx = pos[a]!.x - pos[b]!.x;
      const dy = pos[a]!.y - pos[b]!.y;
      const d = Math.sqrt(dx * dx + dy * dy) + 1e-9;
      const f = (d * d) / ideal / (d * 8);
      disp[a]!.x -= dx * f;
      disp[a]!.y -= dy * f;
      disp[b]!.x += dx * f;
      disp[b]!.y += dy * f;
    }
    for (let i = 0; i < nNodes; i++) {
      // mild gravity toward the center keeps components on screen
      disp[i]!.x -= pos[i]!.x * 0.05;
      disp[i]!.y -= pos[i]!.y * 0.05;
      const len = Math.sqrt(disp[i]!.x ** 2 + disp[i]!.y ** 2) + 1e-9;
      const cap = Math.min(len, step);
      pos[i]!.x += (disp[i]!.x / len) * cap;
      pos[i]!.y += (disp[i]!.y / len) * cap;
    }
  }

  // normalize into the unit square with a small margin
  const xs = pos.map((p) => p.x);
  const ys = pos.map((p) => p.y);
  const lo = { x: Math.min(...xs), y: Math.min(...ys) };
  const hi = { x: Math.max(...xs), y: Math.max(...ys) };
  const span = Math.max(hi.x - lo.x, hi.y - lo.y, 1e-6);
  return pos.map((p) => ({
    x: 0.05 + (0.9 * (p.x - lo.x)) / span,
    y: 0.05 + (0.9 * (p.y - lo.y)) / span,
  }));
}
