/**
 * Pure view construction: view model + positions -> a virtual SVG tree.
 *
 * The tree is plain data so it can be asserted on in tests without a DOM;
 * mount() in main.ts realizes it with document.createElementNS.  Click
 * handlers are attached as functions on the nodes.
 */

import {
  arrowsOf,
  isMatrix,
  plabicEdges,
  type MatrixObj,
  type PlabicObj,
  type ViewModel,
} from "./model.js";
import type { Positions } from "./layout.js";

export interface VNode {
  tag: string;
  attrs: Record<string, string>;
  children: VNode[];
  text?: string;
  onClick?: () => void;
}

export interface Handlers {
  onVertexClick?: (vertex: number) => void;
  onEdgeClick?: (halfEdge: number) => void;
}

export interface RenderState {
  vm: ViewModel;
  positions: Positions;
  width: number;
  height: number;
  error: string | null;
  busy: boolean;
}

function el(
  tag: string,
  attrs: Record<string, string> = {},
  children: VNode[] = [],
  text?: string,
): VNode {
  const node: VNode = { tag, attrs, children };
  if (text !== undefined) node.text = text;
  return node;
}

const VERTEX_RADIUS = 16;

function arrowNodes(m: MatrixObj, positions: Positions): VNode[] {
  const nodes: VNode[] = [];
  for (const arrow of arrowsOf(m)) {
    const from = positions.get(arrow.from);
    const to = positions.get(arrow.to);
    if (!from || !to) continue;
    const dx = to.x - from.x;
    const dy = to.y - from.y;
    const dist = Math.max(Math.hypot(dx, dy), 1e-9);
    // trim the segment so the head is visible outside the vertex disc
    const sx = from.x + (dx / dist) * VERTEX_RADIUS;
    const sy = from.y + (dy / dist) * VERTEX_RADIUS;
    const tx = to.x - (dx / dist) * (VERTEX_RADIUS + 4);
    const ty = to.y - (dy / dist) * (VERTEX_RADIUS + 4);
    nodes.push(
      el("line", {
        class: "arrow",
        x1: String(sx),
        y1: String(sy),
        x2: String(tx),
        y2: String(ty),
        stroke: "#444",
        "stroke-width": arrow.count > 1 ? "2.5" : "1.5",
        "marker-end": "url(#arrowhead)",
        "data-from": String(arrow.from),
        "data-to": String(arrow.to),
      }),
    );
    if (arrow.count > 1) {
      nodes.push(
        el(
          "text",
          {
            class: "arrow-count",
            x: String((sx + tx) / 2 + 8),
            y: String((sy + ty) / 2 - 4),
            "font-size": "12",
            fill: "#b33",
          },
          [],
          String(arrow.count),
        ),
      );
    }
  }
  return nodes;
}

function matrixVertexNodes(
  m: MatrixObj,
  positions: Positions,
  selection: number | null,
  handlers: Handlers,
): VNode[] {
  const nodes: VNode[] = [];
  const frozen = new Set(m.frozen);
  for (let v = 1; v <= m.n; v++) {
    const p = positions.get(v);
    if (!p) continue;
    const isFrozen = frozen.has(v);
    const common = {
      class: isFrozen ? "vertex frozen" : "vertex",
      "data-vertex": String(v),
      fill: v === selection ? "#ffd54d" : isFrozen ? "#dfe7f0" : "#ffffff",
      stroke: "#222",
      "stroke-width": "1.5",
    };
    const shape = isFrozen
      ? el("rect", {
          ...common,
          x: String(p.x - VERTEX_RADIUS),
          y: String(p.y - VERTEX_RADIUS),
          width: String(2 * VERTEX_RADIUS),
          height: String(2 * VERTEX_RADIUS),
        })
      : el("circle", {
          ...common,
          cx: String(p.x),
          cy: String(p.y),
          r: String(VERTEX_RADIUS),
        });
    if (handlers.onVertexClick) {
      const handler = handlers.onVertexClick;
      shape.onClick = () => handler(v);
    }
    nodes.push(shape);
    nodes.push(
      el(
        "text",
        {
          class: "vertex-label",
          x: String(p.x),
          y: String(p.y + 4),
          "text-anchor": "middle",
          "font-size": "12",
          "pointer-events": "none",
        },
        [],
        m.labels?.[v - 1] ?? String(v),
      ),
    );
  }
  return nodes;
}

function plabicNodes(
  g: PlabicObj,
  positions: Positions,
  handlers: Handlers,
): VNode[] {
  const nodes: VNode[] = [];
  for (const [a, b, halfEdge] of plabicEdges(g)) {
    const pa = positions.get(a + 1);
    const pb = positions.get(b + 1);
    if (!pa || !pb) continue;
    const line = el("line", {
      class: "plabic-edge",
      x1: String(pa.x),
      y1: String(pa.y),
      x2: String(pb.x),
      y2: String(pb.y),
      stroke: "#444",
      "stroke-width": "2",
      "data-half-edge": String(halfEdge),
    });
    if (handlers.onEdgeClick) {
      const handler = handlers.onEdgeClick;
      line.onClick = () => handler(halfEdge);
    }
    nodes.push(line);
  }
  g.rotation.forEach((_, vertex) => {
    const p = positions.get(vertex + 1);
    if (!p) return;
    const color = g.colors[String(vertex + 1)] ?? "w";
    nodes.push(
      el("circle", {
        class: `plabic-vertex ${color === "b" ? "black" : "white"}`,
        cx: String(p.x),
        cy: String(p.y),
        r: "9",
        fill: color === "b" ? "#111" : "#ffffff",
        stroke: "#111",
        "stroke-width": "1.5",
        "data-vertex": String(vertex + 1),
      }),
    );
  });
  return nodes;
}

/** The whole interactive canvas as one virtual SVG tree. */
export function render(state: RenderState, handlers: Handlers = {}): VNode {
  const children: VNode[] = [
    el("defs", {}, [
      el(
        "marker",
        {
          id: "arrowhead",
          markerWidth: "8",
          markerHeight: "8",
          refX: "7",
          refY: "3",
          orient: "auto",
        },
        [el("path", { d: "M0,0 L8,3 L0,6 z", fill: "#444" })],
      ),
    ]),
  ];
  const object = state.vm.object;
  if (isMatrix(object)) {
    children.push(...arrowNodes(object, state.positions));
    children.push(
      ...matrixVertexNodes(
        object,
        state.positions,
        state.vm.selection,
        handlers,
      ),
    );
  } else {
    children.push(...plabicNodes(object, state.positions, handlers));
  }
  if (state.error) {
    children.push(
      el(
        "text",
        {
          class: "error-banner",
          x: "12",
          y: "20",
          fill: "#b00020",
          "font-size": "14",
        },
        [],
        state.error,
      ),
    );
  }
  if (state.busy) {
    children.push(
      el(
        "text",
        { class: "busy", x: String(state.width - 24), y: "20", fill: "#888" },
        [],
        "…",
      ),
    );
  }
  return el(
    "svg",
    {
      xmlns: "http://www.w3.org/2000/svg",
      width: String(state.width),
      height: String(state.height),
      viewBox: `0 0 ${state.width} ${state.height}`,
    },
    children,
  );
}

/**
 * Count-versus-step staircase chart for a recorded arrow-count history;
 * one point per step, stepped line (horizontal-then-vertical).
 */
export function staircaseChart(
  counts: number[],
  width: number,
  height: number,
): VNode {
  const pad = 24;
  const maxCount = Math.max(1, ...counts);
  const stepX = (step: number) =>
    counts.length <= 1
      ? pad
      : pad + ((width - 2 * pad) * step) / (counts.length - 1);
  const countY = (c: number) => height - pad - ((height - 2 * pad) * c) / maxCount;

  const points: string[] = [];
  counts.forEach((c, step) => {
    if (step > 0) points.push(`${stepX(step)},${countY(counts[step - 1]!)}`);
    points.push(`${stepX(step)},${countY(c)}`);
  });

  return el(
    "svg",
    {
      xmlns: "http://www.w3.org/2000/svg",
      class: "staircase",
      width: String(width),
      height: String(height),
      viewBox: `0 0 ${width} ${height}`,
    },
    [
      el("polyline", {
        class: "staircase-line",
        points: points.join(" "),
        fill: "none",
        stroke: "#2266cc",
        "stroke-width": "2",
        "data-steps": String(counts.length),
        "data-final": String(counts[counts.length - 1] ?? 0),
      }),
      el(
        "text",
        { x: String(pad), y: "16", "font-size": "12", fill: "#555" },
        [],
        `arrows: 0 → ${counts[counts.length - 1] ?? 0} over ${
          counts.length - 1
        } steps`,
      ),
    ],
  );
}
