import { spawnSync } from "node:child_process";
import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { MatrixObjSchema } from "../src/model.js";
import {
  cliReplayPlan,
  SequenceRecorder,
  TraceRecorder,
  traceFromJson,
  traceToJson,
  type Trace,
} from "../src/trace.js";

const trace = JSON.parse(
  readFileSync(new URL("./fixtures/somos_trace.json", import.meta.url), "utf8"),
) as Trace & { objects: unknown[] };

function rep(value: number, times: number): number[] {
  return Array.from({ length: times }, () => value);
}

// Frozen reference: tracked v -> u arrow count after each of the 60 recorded
// steps (plus the seed state first).  The count climbs one staircase tread
// every fifteen steps: twelve flat steps at each level, a three-step riser,
// ending at eight.
const EXPECTED_COUNTS = [
  ...rep(0, 2),
  ...rep(1, 12),
  ...rep(2, 3),
  ...rep(3, 12),
  ...rep(4, 3),
  ...rep(5, 12),
  ...rep(6, 3),
  ...rep(7, 12),
  ...rep(8, 2),
];

describe("staircase sequence", () => {
  it("recorded session counts match the reference staircase for all 60 steps", () => {
    expect(trace.objects.length).toBe(61);
    expect(EXPECTED_COUNTS.length).toBe(61);
    const recorder = new SequenceRecorder();
    for (const raw of trace.objects) {
      recorder.record(MatrixObjSchema.parse(raw));
    }
    expect(recorder.trackedPair()).toEqual([6, 5]);
    expect(recorder.history()).toEqual(EXPECTED_COUNTS);
    expect(recorder.history()[60]).toBe(8);
  });

  it("an explicit pair overrides the marked default", () => {
    const recorder = new SequenceRecorder([5, 6]);
    recorder.record(MatrixObjSchema.parse(trace.objects[60]));
    // u -> v holds no arrows once everything flowed v -> u
    expect(recorder.history()).toEqual([0]);
  });
});

describe("trace recording", () => {
  it("accumulates operations and drops the last one on undo", () => {
    const rec = new TraceRecorder("extended_somos4", {}, null);
    rec.recordMutate(1);
    rec.recordMutate(2);
    rec.recordMove("flip", 17);
    rec.recordUndo();
    rec.recordMutate(3);
    expect(rec.operations()).toEqual([
      { op: "mutate", vertex: 1 },
      { op: "mutate", vertex: 2 },
      { op: "mutate", vertex: 3 },
    ]);
    const finished = rec.finish('{"n": 6}');
    expect(finished.construction).toBe("extended_somos4");
    expect(finished.final).toBe('{"n": 6}');
  });

  it("round trips through JSON and rejects junk", () => {
    const rec = new TraceRecorder("grid", { k: 2, ell: 5 }, null);
    rec.recordMutate(4);
    const t = rec.finish("{}");
    expect(traceFromJson(traceToJson(t))).toEqual(t);
    expect(() => traceFromJson('{"construction": "x"}')).toThrow(/ops/);
  });
});

describe("replay plan", () => {
  it("merges consecutive mutations into one pipeline stage", () => {
    const t: Trace = {
      construction: "grid",
      params: { k: 2, ell: 5 },
      seedObject: null,
      ops: [
        { op: "mutate", vertex: 1 },
        { op: "mutate", vertex: 7 },
        { op: "mutate", vertex: 2 },
      ],
      final: "{}",
    };
    expect(cliReplayPlan(t)).toEqual([
      ["make", "grid", "--k", "2", "--ell", "5"],
      ["mutate", "--at", "1", "--at", "7", "--at", "2"],
    ]);
  });

  it("keeps graph moves as separate ordered stages", () => {
    const t: Trace = {
      construction: "universal_plabic",
      params: { n: 2 },
      seedObject: null,
      ops: [
        { op: "move", move: "square", location: 3 },
        { op: "move", move: "flip", location: 17 },
        { op: "move", move: "square", location: 3 },
      ],
      final: "{}",
    };
    expect(cliReplayPlan(t)).toEqual([
      ["make", "universal_plabic", "--n", "2"],
      ["plabic", "square", "--face", "3"],
      ["plabic", "flip", "--edge", "17"],
      ["plabic", "square", "--face", "3"],
    ]);
  });

  it("marks JSON-seeded traces as reading from stdin", () => {
    const t: Trace = {
      construction: null,
      params: {},
      seedObject: { schema: "quiverlab/1", n: 1, b: [[0]], frozen: [] },
      ops: [{ op: "mutate", vertex: 1 }],
      final: "{}",
    };
    expect(cliReplayPlan(t)[0]).toEqual(["(stdin)"]);
  });
});

describe("command-line replay", () => {
  it("replaying the recorded session yields a byte-identical final export", () => {
    const stages = cliReplayPlan(trace);
    expect(stages[0]).toEqual(["make", "extended_somos4"]);
    expect(stages.length).toBe(2);
    expect(stages[1]!.length).toBe(1 + 2 * 60);

    let stdin: string | undefined;
    for (const stage of stages) {
      const result = spawnSync("quiverlab", stage, {
        input: stdin,
        encoding: "utf8",
      });
      expect(result.error).toBeUndefined();
      expect(result.status).toBe(0);
      stdin = result.stdout;
    }
    expect(stdin).toBe(trace.final + "\n");
  });
});
