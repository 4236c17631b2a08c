/** Wire types for the solver's HTTP API. Infinite values arrive as null. */

export type WireValue = number | null;

export interface GraphInfo {
  vertices: number;
  edges: [number, number][];
  directed: boolean;
}

export interface GameInfo {
  locations1: number;
  locations2: number;
  state_count: number;
  regular_count: number;
  capture: number[];
  metadata: {
    variant?: string;
    parameters?: { k?: number; cops?: number };
    initial_mover?: number;
    graph?: GraphInfo;
  };
  placement: {
    value: WireValue;
    cop_placement: number;
    robber_best_response: number[];
  };
  evasion_horizon: number;
}

export interface ValueRecord {
  id: number;
  pursuer_loc: number | null;
  evader_loc: number | null;
  mover: number | null;
  value: WireValue;
  finitized_at: WireValue;
  optimal_move: number | null;
}

export interface ValuesDoc {
  iterations_run: number;
  states: ValueRecord[];
}

export interface MoveOption {
  id: number;
  terminal: boolean;
  pursuer_loc: number | null;
  evader_loc: number | null;
  mover: number | null;
  is_capture: boolean;
  value: WireValue;
  optimal: boolean;
  pursuer_tokens?: number[];
}

export interface StateDetail {
  id: number;
  terminal: boolean;
  pursuer_loc: number | null;
  evader_loc: number | null;
  mover: number | null;
  is_capture: boolean;
  value: WireValue;
  pursuer_tokens?: number[];
  pursuer_phase?: number | null;
  evader_vertex?: number;
  moves: MoveOption[];
}

export interface SessionView {
  session_id: string;
  human_side: number;
  machine_side: number;
  history: number[];
  state: StateDetail;
  captured: boolean;
  capture_time: number | null;
  evasion_certified: boolean;
  machine_moves?: number[];
}

export function formatValue(v: WireValue): string {
  return v === null ? "∞" : String(v);
}
