/**
 * Browser wiring: realizes the virtual SVG tree, routes clicks to the
 * service client, and keeps the staircase chart and trace download in
 * sync.  All state lives in the last service response; this file only
 * moves it around.
 */

import { ApiClient, ApiError } from "./api.js";
import { layoutForView } from "./layout.js";
import { isMatrix, toViewModel, type ViewModel } from "./model.js";
import { render, staircaseChart, type VNode } from "./render.js";
import { SequenceRecorder, TraceRecorder, traceToJson } from "./trace.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 760;
const HEIGHT = 520;

function realize(node: VNode): SVGElement {
  const dom = document.createElementNS(SVG_NS, node.tag) as SVGElement;
  for (const [key, value] of Object.entries(node.attrs)) {
    dom.setAttribute(key, value);
  }
  if (node.text !== undefined) dom.textContent = node.text;
  if (node.onClick) {
    dom.addEventListener("click", node.onClick);
    dom.setAttribute("cursor", "pointer");
  }
  for (const child of node.children) dom.appendChild(realize(child));
  return dom;
}

interface AppState {
  vm: ViewModel | null;
  error: string | null;
  busy: boolean;
  recorder: SequenceRecorder;
  trace: TraceRecorder | null;
}

function start(): void {
  const api = new ApiClient(
    (window as unknown as { QUIVERLAB_BASE?: string }).QUIVERLAB_BASE ??
      "http://127.0.0.1:8000",
  );
  const canvasHost = document.getElementById("canvas")!;
  const chartHost = document.getElementById("chart")!;
  const statusHost = document.getElementById("status")!;

  const state: AppState = {
    vm: null,
    error: null,
    busy: false,
    recorder: new SequenceRecorder(),
    trace: null,
  };

  const redraw = () => {
    canvasHost.replaceChildren();
    chartHost.replaceChildren();
    if (state.vm) {
      const positions = layoutForView(state.vm, WIDTH, HEIGHT);
      const tree = render(
        {
          vm: state.vm,
          positions,
          width: WIDTH,
          height: HEIGHT,
          error: state.error,
          busy: state.busy,
        },
        {
          onVertexClick: (vertex) => void applyMutate(vertex),
          onEdgeClick: (halfEdge) => void applyMove("flip", halfEdge),
        },
      );
      canvasHost.appendChild(realize(tree));
      const history = state.recorder.history();
      if (history.length > 1) {
        chartHost.appendChild(realize(staircaseChart(history, WIDTH, 180)));
      }
    }
    statusHost.textContent = state.vm
      ? `session ${state.vm.session} · undo depth ${state.vm.undoDepth}`
      : "no session";
  };

  const absorb = (view: Parameters<typeof toViewModel>[0]) => {
    state.vm = toViewModel(view);
    state.error = null;
    if (isMatrix(state.vm.object)) state.recorder.record(state.vm.object);
  };

  const guard = async (work: () => Promise<void>) => {
    state.busy = true;
    redraw();
    try {
      await work();
    } catch (error) {
      state.error =
        error instanceof ApiError
          ? `${error.type}: ${error.message}`
          : String(error);
    } finally {
      state.busy = false;
      redraw();
    }
  };

  const newSession = (construction: string, params: Record<string, unknown>) =>
    guard(async () => {
      const view = await api.createSession({ construction, params });
      state.recorder = new SequenceRecorder();
      state.trace = new TraceRecorder(construction, params, null);
      absorb(view);
    });

  const applyMutate = (vertex: number) =>
    guard(async () => {
      if (!state.vm) return;
      const view = await api.mutate(state.vm.session, vertex);
      state.trace?.recordMutate(vertex);
      absorb(view);
    });

  const applyMove = (move: "square" | "flip", location: number) =>
    guard(async () => {
      if (!state.vm) return;
      const view = await api.move(state.vm.session, move, location);
      state.trace?.recordMove(move, location);
      absorb(view);
    });

  document.getElementById("undo")!.addEventListener("click", () =>
    guard(async () => {
      if (!state.vm) return;
      const view = await api.undo(state.vm.session);
      state.trace?.recordUndo();
      absorb(view);
    }),
  );

  document.getElementById("square-apply")!.addEventListener("click", () => {
    const face = Number(
      (document.getElementById("square-face") as HTMLInputElement).value,
    );
    if (Number.isInteger(face) && face >= 1) void applyMove("square", face);
  });

  document.getElementById("download-trace")!.addEventListener("click", () =>
    guard(async () => {
      if (!state.vm || !state.trace) return;
      const exported = await api.exportSession(state.vm.session, "json");
      const blob = new Blob([traceToJson(state.trace.finish(exported.content))], {
        type: "application/json",
      });
      const link = document.createElement("a");
      link.href = URL.createObjectURL(blob);
      link.download = "trace.json";
      link.click();
      URL.revokeObjectURL(link.href);
    }),
  );

  document.getElementById("create")!.addEventListener("click", () => {
    const name = (
      document.getElementById("construction") as HTMLSelectElement
    ).value;
    const params: Record<string, unknown> = {};
    const raw = (
      document.getElementById("params") as HTMLInputElement
    ).value.trim();
    if (raw) {
      for (const part of raw.split(",")) {
        const [key, value] = part.split("=");
        if (key && value !== undefined) {
          params[key.trim()] = /^\d+$/.test(value.trim())
            ? Number(value.trim())
            : value.trim();
        }
      }
    }
    void newSession(name, params);
  });

  redraw();
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", start);
}
