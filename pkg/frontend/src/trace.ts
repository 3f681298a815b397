/**
 * Session recording and replay.
 *
 * Every applied operation is recorded alongside the arrow count of the
 * tracked marked pair after each step (read from the served matrices,
 * never computed locally).  A finished trace downloads as JSON and can be
 * replayed through the command line; the CLI's final output must equal
 * the service's final export byte for byte.
 */

import {
  arrowCountBetween,
  isMatrix,
  markedPairOf,
  type MatrixObj,
  type PlabicObj,
} from "./model.js";

export type TraceOp =
  | { op: "mutate"; vertex: number }
  | { op: "move"; move: "square" | "flip"; location: number };

export interface Trace {
  /** how the session was seeded */
  construction: string | null;
  params: Record<string, unknown>;
  seedObject: Record<string, unknown> | null;
  ops: TraceOp[];
  /** canonical JSON of the final object, exactly as exported by the service */
  final: string;
}

/**
 * Records arrow counts of one ordered pair across a session.  The pair
 * defaults to the marked v -> u direction when the matrix labels carry
 * u and v.
 */
export class SequenceRecorder {
  private readonly counts: number[] = [];
  private pair: [number, number] | null = null;

  constructor(pair?: [number, number]) {
    if (pair) this.pair = pair;
  }

  trackedPair(): [number, number] | null {
    return this.pair;
  }

  /** Record the count in the current served object (matrices only). */
  record(object: MatrixObj | PlabicObj): void {
    if (!isMatrix(object)) {
      this.counts.push(0);
      return;
    }
    if (!this.pair) {
      this.pair = markedPairOf(object);
    }
    if (!this.pair) {
      this.counts.push(0);
      return;
    }
    this.counts.push(arrowCountBetween(object, this.pair[0], this.pair[1]));
  }

  history(): number[] {
    return [...this.counts];
  }
}

/** Accumulates operations and serves the downloadable trace. */
export class TraceRecorder {
  private readonly ops: TraceOp[] = [];

  constructor(
    private readonly construction: string | null,
    private readonly params: Record<string, unknown>,
    private readonly seedObject: Record<string, unknown> | null,
  ) {}

  recordMutate(vertex: number): void {
    this.ops.push({ op: "mutate", vertex });
  }

  recordMove(move: "square" | "flip", location: number): void {
    this.ops.push({ op: "move", move, location });
  }

  recordUndo(): void {
    this.ops.pop();
  }

  operations(): TraceOp[] {
    return [...this.ops];
  }

  finish(finalExport: string): Trace {
    return {
      construction: this.construction,
      params: this.params,
      seedObject: this.seedObject,
      ops: this.operations(),
      final: finalExport,
    };
  }
}

/**
 * The command-line invocations that replay a trace: a `make` (or reading
 * the seed object from a file), then one pipeline stage per operation
 * run, with consecutive mutations merged into a single `mutate` call.
 * Returns argv arrays without the program name; each stage reads the
 * previous stage's stdout.
 */
export function cliReplayPlan(trace: Trace): string[][] {
  const stages: string[][] = [];
  if (trace.construction) {
    const stage = ["make", trace.construction];
    for (const [key, value] of Object.entries(trace.params)) {
      stage.push(`--${key}`, String(value));
    }
    stages.push(stage);
  } else {
    stages.push(["(stdin)"]); // caller feeds the seed object on stdin
  }
  let pendingMutate: string[] = [];
  const flush = () => {
    if (pendingMutate.length > 0) {
      stages.push(["mutate", ...pendingMutate]);
      pendingMutate = [];
    }
  };
  for (const op of trace.ops) {
    if (op.op === "mutate") {
      pendingMutate.push("--at", String(op.vertex));
    } else {
      flush();
      if (op.move === "square") {
        stages.push(["plabic", "square", "--face", String(op.location)]);
      } else {
        stages.push(["plabic", "flip", "--edge", String(op.location)]);
      }
    }
  }
  flush();
  return stages;
}

export function traceToJson(trace: Trace): string {
  return JSON.stringify(trace, null, 2);
}

export function traceFromJson(text: string): Trace {
  const raw = JSON.parse(text) as Trace;
  if (!Array.isArray(raw.ops)) throw new Error("trace has no ops array");
  return raw;
}
