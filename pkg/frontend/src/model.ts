/**
 * View model: typed schemas for everything the service sends, plus pure
 * projections of those payloads (arrow lists, marked-pair counts).
 *
 * Nothing in this module computes a mutation: the current object is always
 * exactly what the last service response contained, so the client can never
 * drift from the server's arithmetic.
 */

import { z } from "zod";

export const SCHEMA = "quiverlab/1";

export const MatrixObjSchema = z
  .object({
    schema: z.literal(SCHEMA),
    n: z.number().int().positive(),
    b: z.array(z.array(z.number().int())),
    frozen: z.array(z.number().int().positive()),
    labels: z.array(z.string()).optional(),
  })
  .refine(
    (o) => o.b.length === o.n && o.b.every((row) => row.length === o.n),
    { message: "b must be an n x n matrix" },
  );

export type MatrixObj = z.infer<typeof MatrixObjSchema>;

export const PlabicObjSchema = z.object({
  schema: z.literal(SCHEMA),
  half_edges: z.number().int().nonnegative(),
  pairing: z.array(z.number().int().nonnegative()),
  rotation: z.array(z.array(z.number().int().nonnegative())),
  colors: z.record(z.string(), z.enum(["b", "w"])),
  boundary: z.array(z.number().int().nonnegative()),
  outer: z.number().int().nonnegative().nullable(),
});

export type PlabicObj = z.infer<typeof PlabicObjSchema>;

export const SessionViewSchema = z.object({
  session: z.string().min(1),
  kind: z.enum(["matrix", "plabic"]),
  object: z.record(z.string(), z.unknown()),
  undo_depth: z.number().int().nonnegative(),
  metadata: z.record(z.string(), z.unknown()),
});

export type SessionView = z.infer<typeof SessionViewSchema>;

export const ErrorPayloadSchema = z.object({
  error: z.object({ type: z.string(), message: z.string() }),
});

export type ErrorPayload = z.infer<typeof ErrorPayloadSchema>;

/** One directed arrow bundle; vertex numbers are 1-based, as served. */
export interface Arrow {
  from: number;
  to: number;
  count: number;
}

/** The client's whole state: a projection of the last response only. */
export interface ViewModel {
  session: string;
  kind: "matrix" | "plabic";
  object: MatrixObj | PlabicObj;
  undoDepth: number;
  /** construction name when the session was seeded by name, else null */
  construction: string | null;
  constructionParams: Record<string, unknown>;
  selection: number | null;
}

export function parseSessionView(payload: unknown): SessionView {
  return SessionViewSchema.parse(payload);
}

/** Narrow a session view into the typed view model. */
export function toViewModel(view: SessionView): ViewModel {
  const object =
    view.kind === "matrix"
      ? MatrixObjSchema.parse(view.object)
      : PlabicObjSchema.parse(view.object);
  const source = view.metadata["source"];
  let construction: string | null = null;
  if (typeof source === "string" && source.startsWith("construction:")) {
    construction = source.slice("construction:".length);
  }
  const params = view.metadata["params"];
  return {
    session: view.session,
    kind: view.kind,
    object,
    undoDepth: view.undo_depth,
    construction,
    constructionParams:
      params && typeof params === "object"
        ? (params as Record<string, unknown>)
        : {},
    selection: null,
  };
}

export function isMatrix(object: MatrixObj | PlabicObj): object is MatrixObj {
  return "b" in object;
}

/** All positive entries of the exchange matrix, as arrow bundles. */
export function arrowsOf(m: MatrixObj): Arrow[] {
  const arrows: Arrow[] = [];
  for (let i = 0; i < m.n; i++) {
    const row = m.b[i]!;
    for (let j = 0; j < m.n; j++) {
      const entry = row[j]!;
      if (entry > 0) {
        arrows.push({ from: i + 1, to: j + 1, count: entry });
      }
    }
  }
  return arrows;
}

/** Arrow count from one 1-based vertex to another (0 when none). */
export function arrowCountBetween(
  m: MatrixObj,
  from: number,
  to: number,
): number {
  const entry = m.b[from - 1]?.[to - 1];
  if (entry === undefined) {
    throw new RangeError(`vertex pair (${from}, ${to}) out of range 1..${m.n}`);
  }
  return Math.max(entry, 0);
}

/**
 * The tracked pair for count charts: when the matrix carries the marked
 * labels u and v, track arrows v -> u (the direction the long schedules
 * accumulate); otherwise null.
 */
export function markedPairOf(m: MatrixObj): [number, number] | null {
  if (!m.labels) return null;
  const u = m.labels.indexOf("u");
  const v = m.labels.indexOf("v");
  if (u < 0 || v < 0) return null;
  return [v + 1, u + 1];
}

/** Interior-vertex count of a bicolored graph (rotation rows). */
export function plabicVertexCount(g: PlabicObj): number {
  return g.rotation.length;
}

/** Map each half-edge to the interior vertex whose rotation lists it. */
export function halfEdgeOwners(g: PlabicObj): Map<number, number> {
  const owners = new Map<number, number>();
  g.rotation.forEach((cycle, vertex) => {
    for (const h of cycle) owners.set(h, vertex);
  });
  return owners;
}

/**
 * Undirected edges between interior vertices, as [vertexA, vertexB,
 * halfEdgeId] with the smaller half-edge id of the pair; legs (one end on
 * the boundary) are omitted.
 */
export function plabicEdges(g: PlabicObj): Array<[number, number, number]> {
  const owners = halfEdgeOwners(g);
  const edges: Array<[number, number, number]> = [];
  for (let h = 0; h < g.half_edges; h++) {
    const mate = g.pairing[h]!;
    if (mate < h) continue;
    const a = owners.get(h);
    const b = owners.get(mate);
    if (a === undefined || b === undefined) continue;
    edges.push([a, b, h]);
  }
  return edges;
}
