import type { Point } from "./layout.js";
import type { GameInfo, MoveOption, SessionView } from "./types.js";
import { formatValue } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface BoardCallbacks {
  onHoverMove(moveId: number | null): void;
  onClickMove(moveId: number): void;
}

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
  return node;
}

/**
 * SVG board: graph, tokens, move targets with value badges, history strip.
 * Pure rendering over server payloads; all interaction is delegated to the
 * callbacks.
 */
export class BoardView {
  private svg: SVGSVGElement;
  private historyEl: HTMLElement;
  private bannerEl: HTMLElement;
  private statusEl: HTMLElement;
  private hovered: number | null = null;

  constructor(
    root: HTMLElement,
    readonly game: GameInfo,
    readonly positions: Point[],
    readonly callbacks: BoardCallbacks,
  ) {
    root.innerHTML = "";
    this.bannerEl = document.createElement("div");
    this.bannerEl.className = "banner";
    this.statusEl = document.createElement("div");
    this.statusEl.className = "status";
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("viewBox", "0 0 640 480");
    this.svg.setAttribute("class", "board");
    this.historyEl = document.createElement("div");
    this.historyEl.className = "history";
    root.append(this.bannerEl, this.statusEl, this.svg, this.historyEl);
  }

  setBanner(text: string, tone: "info" | "warn" | "error"): void {
    this.bannerEl.textContent = text;
    this.bannerEl.dataset.tone = tone;
  }

  setHover(moveId: number | null): void {
    this.hovered = moveId;
  }

  render(view: SessionView | null, humansTurn: boolean, moves: MoveOption[]): void {
    this.svg.replaceChildren();
    const graph = this.game.metadata.graph;
    if (!graph) return;

    for (const [u, v] of graph.edges) {
      this.svg.append(
        el("line", {
          x1: this.positions[u].x,
          y1: this.positions[u].y,
          x2: this.positions[v].x,
          y2: this.positions[v].y,
          class: "edge",
        }),
      );
    }

    // move targets first so tokens draw on top
    if (view && humansTurn) {
      for (const move of moves) {
        const vertex = this.moveTargetVertex(view, move);
        if (vertex === null) continue;
        const p = this.positions[vertex];
        const group = el("g", { class: "move-target" });
        const circle = el("circle", { cx: p.x, cy: p.y, r: 16, class: "target" });
        group.append(circle);
        const badge = el("text", {
          x: p.x,
          y: p.y - 20,
          class: move.optimal ? "badge recommended" : "badge",
          "text-anchor": "middle",
        });
        badge.textContent =
          this.hovered === move.id
            ? `T=${formatValue(move.value)}${move.optimal ? " ★" : ""}`
            : "";
        group.append(badge);
        group.addEventListener("mouseenter", () => this.callbacks.onHoverMove(move.id));
        group.addEventListener("mouseleave", () => this.callbacks.onHoverMove(null));
        group.addEventListener("click", () => this.callbacks.onClickMove(move.id));
        this.svg.append(group);
      }
    }

    for (let v = 0; v < graph.vertices; v++) {
      const p = this.positions[v];
      this.svg.append(el("circle", { cx: p.x, cy: p.y, r: 10, class: "vertex" }));
      const label = el("text", { x: p.x, y: p.y + 4, class: "vertex-label", "text-anchor": "middle" });
      label.textContent = String(v);
      this.svg.append(label);
    }

    if (view && !view.state.terminal) {
      const tokens = view.state.pursuer_tokens ?? [];
      for (const vertex of tokens) {
        const p = this.positions[vertex];
        this.svg.append(
          el("rect", { x: p.x - 8, y: p.y - 8, width: 16, height: 16, class: "token pursuer" }),
        );
      }
      const evader = view.state.evader_vertex;
      if (evader !== undefined) {
        const p = this.positions[evader];
        this.svg.append(el("circle", { cx: p.x, cy: p.y, r: 7, class: "token evader" }));
      }
      const moverName = view.state.mover === 1 ? "pursuer" : "evader";
      this.statusEl.textContent =
        `state ${view.state.id} | value ${formatValue(view.state.value)} | ` +
        `${moverName} to move${humansTurn ? " (you)" : ""}`;
    }

    this.historyEl.textContent = view ? `history: ${view.history.join(" → ")}` : "";
  }

  /** Where the mover's token would stand after this move. */
  private moveTargetVertex(view: SessionView, move: MoveOption): number | null {
    if (view.state.mover === 2) {
      return move.evader_loc;
    }
    const tokens = move.pursuer_tokens ?? [];
    if (tokens.length === 1) return tokens[0];
    // teams: highlight the token that moved, else the first
    const before = view.state.pursuer_tokens ?? [];
    for (let i = 0; i < tokens.length; i++) {
      if (tokens[i] !== before[i]) return tokens[i];
    }
    return tokens[0] ?? null;
  }
}
