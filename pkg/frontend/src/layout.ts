/**
 * Vertex placement.
 *
 * Named constructions get hand-pinned positions so their renders always
 * look the same (the six-vertex cores as a square with the marked pair
 * above and below, the double-arrow triangle as a triangle, grids as
 * lattices).  Everything else goes through a small deterministic
 * force-directed pass; pinned vertices never move.
 */

import {
  arrowsOf,
  isMatrix,
  plabicEdges,
  plabicVertexCount,
  type ViewModel,
} from "./model.js";

export interface Point {
  x: number;
  y: number;
}

export type Positions = Map<number, Point>;

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
  seed?: number;
  pinned?: Positions;
}

/** Deterministic linear-congruential generator in [0, 1). */
export function lcg(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state * 1664525 + 1013904223) >>> 0;
    return state / 0x100000000;
  };
}

/**
 * Pinned positions for a named construction, in unit coordinates
 * (scaled by the caller); null when the construction has no pin set.
 */
export function pinnedLayout(vm: ViewModel): Positions | null {
  if (vm.kind !== "matrix" || !isMatrix(vm.object)) return null;
  const name = vm.construction;
  if (name === "extended_somos4" || name === "double_four_cycle") {
    // base 4-cycle on a square, marked pair centered above and below
    return new Map<number, Point>([
      [1, { x: 0.25, y: 0.35 }],
      [2, { x: 0.75, y: 0.35 }],
      [3, { x: 0.75, y: 0.65 }],
      [4, { x: 0.25, y: 0.65 }],
      [5, { x: 0.5, y: 0.1 }], // u
      [6, { x: 0.5, y: 0.9 }], // v
    ]);
  }
  if (name === "markov" || name === "two_universal_3") {
    return new Map<number, Point>([
      [1, { x: 0.5, y: 0.15 }],
      [2, { x: 0.15, y: 0.8 }],
      [3, { x: 0.85, y: 0.8 }],
    ]);
  }
  if (name === "grid") {
    const k = Number(vm.constructionParams["k"]);
    const ell = Number(vm.constructionParams["ell"]);
    if (!Number.isInteger(k) || !Number.isInteger(ell)) return null;
    const positions: Positions = new Map();
    for (let r = 0; r < k; r++) {
      for (let c = 0; c < ell; c++) {
        positions.set(r * ell + c + 1, {
          x: ell === 1 ? 0.5 : 0.1 + (0.8 * c) / (ell - 1),
          y: k === 1 ? 0.5 : 0.1 + (0.8 * r) / (k - 1),
        });
      }
    }
    return positions;
  }
  if (name === "kronecker") {
    return new Map<number, Point>([
      [1, { x: 0.25, y: 0.5 }],
      [2, { x: 0.75, y: 0.5 }],
    ]);
  }
  return null;
}

/**
 * Force-directed placement: spring attraction along edges, pairwise
 * repulsion, deterministic seeded start.  Positions land in
 * [0, width] x [0, height]; pinned vertices stay exactly where given.
 */
export function forceLayout(
  vertices: number[],
  edges: Array<[number, number]>,
  options: LayoutOptions,
): Positions {
  const { width, height } = options;
  const iterations = options.iterations ?? 150;
  const random = lcg(options.seed ?? 42);
  const pinned = options.pinned ?? new Map();

  const positions: Positions = new Map();
  for (const v of vertices) {
    const pin = pinned.get(v);
    positions.set(
      v,
      pin
        ? { ...pin }
        : { x: (0.1 + 0.8 * random()) * width, y: (0.1 + 0.8 * random()) * height },
    );
  }
  if (vertices.length <= 1) return positions;

  const area = width * height;
  const ideal = Math.sqrt(area / vertices.length) * 0.7;

  for (let step = 0; step < iterations; step++) {
    const heat = 0.1 * Math.min(width, height) * (1 - step / iterations);
    const force = new Map<number, Point>(
      vertices.map((v) => [v, { x: 0, y: 0 }]),
    );
    for (let i = 0; i < vertices.length; i++) {
      for (let j = i + 1; j < vertices.length; j++) {
        const a = vertices[i]!;
        const b = vertices[j]!;
        const pa = positions.get(a)!;
        const pb = positions.get(b)!;
        let dx = pa.x - pb.x;
        let dy = pa.y - pb.y;
        let dist = Math.hypot(dx, dy);
        if (dist < 1e-9) {
          dx = 1e-4 * (i - j);
          dy = 1e-4;
          dist = Math.hypot(dx, dy);
        }
        const repulse = (ideal * ideal) / dist;
        force.get(a)!.x += (dx / dist) * repulse;
        force.get(a)!.y += (dy / dist) * repulse;
        force.get(b)!.x -= (dx / dist) * repulse;
        force.get(b)!.y -= (dy / dist) * repulse;
      }
    }
    for (const [a, b] of edges) {
      if (a === b) continue;
      const pa = positions.get(a);
      const pb = positions.get(b);
      if (!pa || !pb) continue;
      const dx = pa.x - pb.x;
      const dy = pa.y - pb.y;
      const dist = Math.max(Math.hypot(dx, dy), 1e-9);
      const attract = (dist * dist) / ideal;
      force.get(a)!.x -= (dx / dist) * attract;
      force.get(a)!.y -= (dy / dist) * attract;
      force.get(b)!.x += (dx / dist) * attract;
      force.get(b)!.y += (dy / dist) * attract;
    }
    for (const v of vertices) {
      if (pinned.has(v)) continue;
      const p = positions.get(v)!;
      const f = force.get(v)!;
      const mag = Math.max(Math.hypot(f.x, f.y), 1e-9);
      const stepLen = Math.min(mag, heat);
      p.x += (f.x / mag) * stepLen;
      p.y += (f.y / mag) * stepLen;
      p.x = Math.min(width * 0.95, Math.max(width * 0.05, p.x));
      p.y = Math.min(height * 0.95, Math.max(height * 0.05, p.y));
    }
  }
  return positions;
}

/** Full placement for the current view model, in pixel coordinates. */
export function layoutForView(
  vm: ViewModel,
  width: number,
  height: number,
): Positions {
  if (vm.kind === "matrix" && isMatrix(vm.object)) {
    const pinnedUnit = pinnedLayout(vm);
    if (pinnedUnit) {
      const scaled: Positions = new Map();
      for (const [v, p] of pinnedUnit) {
        scaled.set(v, { x: p.x * width, y: p.y * height });
      }
      return scaled;
    }
    const vertices = Array.from({ length: vm.object.n }, (_, i) => i + 1);
    const edges = arrowsOf(vm.object).map(
      (a) => [a.from, a.to] as [number, number],
    );
    return forceLayout(vertices, edges, { width, height });
  }
  if (!isMatrix(vm.object)) {
    const count = plabicVertexCount(vm.object);
    const vertices = Array.from({ length: count }, (_, i) => i + 1);
    const edges = plabicEdges(vm.object).map(
      ([a, b]) => [a + 1, b + 1] as [number, number],
    );
    return forceLayout(vertices, edges, { width, height });
  }
  return new Map();
}
