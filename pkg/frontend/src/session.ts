import { ApiClient, ApiError } from "./api.js";
import type { MoveOption, SessionView, StateDetail, WireValue } from "./types.js";

export interface Badge {
  moveId: number;
  value: WireValue;
  recommended: boolean;
}

export type Banner =
  | { kind: "none" }
  | { kind: "captured"; turn: number }
  | { kind: "evasion"; turns: number }
  | { kind: "error"; message: string }
  | { kind: "disconnected"; message: string };

/**
 * Board-facing session state machine. Holds no game rules: every value,
 * legal move and recommendation comes from the server's session/state
 * payloads; this class only gates interaction (whose turn, game over) and
 * shapes render data.
 */
export class SessionController {
  view: SessionView | null = null;
  banner: Banner = { kind: "none" };

  constructor(readonly api: ApiClient) {}

  get humansTurn(): boolean {
    if (!this.view || this.gameOver) return false;
    return this.view.state.mover === this.view.human_side;
  }

  get gameOver(): boolean {
    return !!this.view && (this.view.captured || this.view.evasion_certified);
  }

  /** Legal moves of the current state (empty when the board is inactive). */
  get moves(): MoveOption[] {
    return this.view ? this.view.state.moves.filter((m) => !m.terminal) : [];
  }

  async start(startState: number, humanSide: number): Promise<void> {
    try {
      this.view = await this.api.createSession(startState, humanSide);
      this.banner = this.bannerFor(this.view);
    } catch (err) {
      this.view = null;
      this.banner = this.bannerFromError(err);
    }
  }

  /**
   * Hover badge for a candidate move: the value the mover would move into,
   * straight from the current state payload. Disabled off-turn.
   */
  hoverBadge(moveId: number): Badge | null {
    if (!this.humansTurn) return null;
    const move = this.view!.state.moves.find((m) => m.id === moveId);
    if (!move) return null;
    return { moveId, value: move.value, recommended: move.optimal };
  }

  /** Deeper what-if: fetch the candidate successor's own detail. */
  async whatIf(moveId: number): Promise<StateDetail | null> {
    if (!this.humansTurn) return null;
    if (!this.view!.state.moves.some((m) => m.id === moveId)) return null;
    try {
      return await this.api.state(moveId);
    } catch (err) {
      this.banner = this.bannerFromError(err);
      return null;
    }
  }

  async playMove(moveId: number): Promise<void> {
    if (!this.view || !this.humansTurn) return;
    try {
      this.view = await this.api.move(this.view.session_id, moveId);
      this.banner = this.bannerFor(this.view);
    } catch (err) {
      if (err instanceof ApiError) {
        // illegal move or stale turn: session is unchanged server-side
        this.banner = { kind: "error", message: err.message };
        return;
      }
      this.banner = this.bannerFromError(err);
    }
  }

  private bannerFor(view: SessionView): Banner {
    if (view.captured) return { kind: "captured", turn: view.capture_time ?? 0 };
    if (view.evasion_certified) return { kind: "evasion", turns: view.history.length - 1 };
    return { kind: "none" };
  }

  private bannerFromError(err: unknown): Banner {
    if (err instanceof ApiError) {
      return { kind: "error", message: err.message };
    }
    return {
      kind: "disconnected",
      message: err instanceof Error ? err.message : "server unreachable",
    };
  }
}
