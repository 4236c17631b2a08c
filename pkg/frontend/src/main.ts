import { ApiClient } from "./api.js";
import { BoardView } from "./board.js";
import { forceLayout } from "./layout.js";
import { SessionController } from "./session.js";
import type { GameInfo } from "./types.js";
import { formatValue } from "./types.js";

const LAYOUT_SEED = 42;

function encodePursuerLocation(game: GameInfo, raw: string): number {
  const meta = game.metadata;
  const vertices = meta.graph?.vertices ?? game.locations1;
  if (meta.variant === "k_cops") {
    const team = raw.split(",").map((t) => Number(t.trim()));
    const cops = meta.parameters?.cops ?? 1;
    if (team.length !== cops || team.some((v) => !(v >= 0 && v < vertices))) {
      throw new Error(`enter ${cops} comma-separated vertices`);
    }
    return team.reduce((acc, v) => acc * vertices + v, 0);
  }
  const vertex = Number(raw.trim());
  if (!(vertex >= 0 && vertex < vertices)) {
    throw new Error(`vertex must be in [0, ${vertices})`);
  }
  if (meta.variant === "speed2_pursuer") {
    return vertex * 2; // start at phase 0
  }
  return vertex;
}

async function boot(): Promise<void> {
  const api = new ApiClient("");
  const app = document.getElementById("app")!;
  const controls = document.getElementById("controls")!;

  let game: GameInfo;
  try {
    game = await api.game();
  } catch {
    app.innerHTML = '<div class="banner" data-tone="error">cannot reach the game server</div>';
    return;
  }
  const graph = game.metadata.graph;
  if (!graph) {
    app.innerHTML =
      '<div class="banner" data-tone="error">this family has no graph metadata to draw</div>';
    return;
  }

  const positions = forceLayout(graph.vertices, graph.edges, 640, 480, LAYOUT_SEED);
  const controller = new SessionController(api);

  const sideSel = document.createElement("select");
  sideSel.innerHTML =
    '<option value="1">play pursuer</option><option value="2">play evader</option>';
  const pursuerInput = document.createElement("input");
  pursuerInput.placeholder =
    game.metadata.variant === "k_cops" ? "cop vertices, e.g. 0,2" : "pursuer vertex";
  pursuerInput.value = String(game.placement.cop_placement);
  const evaderInput = document.createElement("input");
  evaderInput.placeholder = "evader vertex";
  evaderInput.value = String(
    game.placement.robber_best_response[game.placement.cop_placement] ?? 0,
  );
  const startBtn = document.createElement("button");
  startBtn.textContent = "start";
  const info = document.createElement("span");
  info.className = "placement-note";
  info.textContent = ` placement value ${formatValue(game.placement.value)}`;
  controls.append(sideSel, pursuerInput, evaderInput, startBtn, info);

  const board = new BoardView(app, game, positions, {
    onHoverMove(moveId) {
      board.setHover(moveId);
      redraw();
    },
    onClickMove(moveId) {
      void controller.playMove(moveId).then(redraw);
    },
  });

  function redraw(): void {
    const banner = controller.banner;
    switch (banner.kind) {
      case "captured":
        board.setBanner(`captured at turn ${banner.turn}`, "info");
        break;
      case "evasion":
        board.setBanner(`evasion certified after ${banner.turns} turns`, "info");
        break;
      case "error":
        board.setBanner(banner.message, "warn");
        break;
      case "disconnected":
        board.setBanner(banner.message, "error");
        break;
      default:
        board.setBanner("", "info");
    }
    board.render(controller.view, controller.humansTurn, controller.moves);
  }

  startBtn.addEventListener("click", () => {
    let pursuerLoc: number;
    try {
      pursuerLoc = encodePursuerLocation(game, pursuerInput.value);
    } catch (err) {
      board.setBanner(err instanceof Error ? err.message : String(err), "warn");
      return;
    }
    const evader = Number(evaderInput.value.trim());
    const vertices = graph.vertices;
    if (!(evader >= 0 && evader < vertices)) {
      board.setBanner(`evader vertex must be in [0, ${vertices})`, "warn");
      return;
    }
    const mover = game.metadata.initial_mover ?? 1;
    const startState = (pursuerLoc * game.locations2 + evader) * 2 + (mover - 1);
    void controller.start(startState, Number(sideSel.value)).then(redraw);
  });

  redraw();
}

void boot();
