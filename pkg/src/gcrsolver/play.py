"""Game execution: histories, payoffs, and strategy verification.

A strategy is either a positional table (``PositionalStrategy``) or any
callable taking the history so far (a tuple of state ids) and returning
the next state id.  Play is deterministic whenever the strategies are.
"""

import random
from dataclasses import dataclass

from gcrsolver.family import EVADER, INFINITY, PURSUER, GameFamily, encode_value
from gcrsolver.solver import PositionalStrategy


class IllegalMoveError(ValueError):
    """A strategy produced a move outside the current state's successors."""

    def __init__(self, turn: int, state: int, move):
        self.turn = turn
        self.state = state
        self.move = move
        super().__init__(
            f"illegal move at turn {turn}: state {state} has no successor {move!r}"
        )


@dataclass(frozen=True)
class History:
    """A finite run of the game; ``truncated`` marks a cut at the turn
    limit before capture."""

    states: tuple
    truncated: bool

    def __len__(self) -> int:
        return len(self.states)


def _next_move(strategy, history: list) -> int:
    if isinstance(strategy, PositionalStrategy):
        return strategy.move(history[-1])
    return strategy(tuple(history))


def play_out(
    family: GameFamily,
    sigma1,
    sigma2,
    s0: int,
    max_turns: int | None = None,
) -> History:
    """Run the game from ``s0`` until capture or ``max_turns`` transitions.

    The default limit is twice the regular-state count: positional play
    that survives that long has necessarily looped, certifying evasion.
    """
    family._check_id(s0)
    if max_turns is None:
        max_turns = 2 * family.regular_count
    if max_turns < 0:
        raise ValueError("max_turns must be >= 0")
    states = [s0]
    if s0 == family.tau or family.is_capture(s0):
        return History(tuple(states), False)
    for turn in range(max_turns):
        s = states[-1]
        strategy = sigma1 if s % 2 == 0 else sigma2
        nxt = _next_move(strategy, states)
        if nxt not in family.successors(s):
            raise IllegalMoveError(turn, s, nxt)
        states.append(nxt)
        if family.is_capture(nxt):
            return History(tuple(states), False)
    return History(tuple(states), True)


def capture_time(family: GameFamily, h: History):
    """Index of the first capture state in the history; infinite if none."""
    for i, sid in enumerate(h.states):
        if family.is_capture(sid):
            return i
    return INFINITY


def total_payoff(family: GameFamily, h: History) -> int:
    """Sum of per-turn evader gains over the history (equals the capture
    time whenever the history ends in capture)."""
    return sum(family.turn_payoff(sid) for sid in h.states)


def best_response_value(
    family: GameFamily,
    fixed: PositionalStrategy,
    s0: int,
    objective: str | None = None,
):
    """Optimal capture time against a frozen positional strategy.

    With the pursuer frozen the evader maximizes (computed as forced-
    capture layers of the induced one-choice graph); with the evader frozen
    the pursuer minimizes (breadth-first layers).  ``objective`` overrides
    the opponent's natural goal ("min"/"max") when a deliberately
    adversarial-in-reverse probe is wanted.
    """
    if not isinstance(fixed, PositionalStrategy):
        raise ValueError("only positional strategies are supported here")
    family._check_id(s0)
    if objective is None:
        objective = "max" if fixed.side == PURSUER else "min"
    if objective not in ("min", "max"):
        raise ValueError("objective must be 'min' or 'max'")

    fixed_parity = 0 if fixed.side == PURSUER else 1

    def induced(sid: int) -> list:
        if sid % 2 == fixed_parity:
            return [fixed.move(sid)]
        return family.successors(sid)

    n = family.regular_count
    level = [INFINITY] * family.state_count
    frontier = []
    for s in range(n):
        if family.is_capture(s):
            level[s] = 0
            frontier.append(s)
    if objective == "min":
        # breadth-first from the capture set over reversed induced edges
        reverse: list[list[int]] = [[] for _ in range(n)]
        for s in range(n):
            if family.is_capture(s):
                continue
            for t in induced(s):
                if t != family.tau:
                    reverse[t].append(s)
        depth = 0
        while frontier:
            depth += 1
            nxt = []
            for t in frontier:
                for s in reverse[t]:
                    if level[s] == INFINITY:
                        level[s] = depth
                        nxt.append(s)
            frontier = nxt
    else:
        # a state levels once every induced choice is already leveled
        pending = [s for s in range(n) if level[s] == INFINITY]
        depth = 0
        while True:
            depth += 1
            newly = [
                s
                for s in pending
                if all(level[t] != INFINITY for t in induced(s))
            ]
            if not newly:
                break
            for s in newly:
                level[s] = depth
            done = set(newly)
            pending = [s for s in pending if s not in done]
    return level[s0]


def random_positional_strategy(
    family: GameFamily, side: int, rng: random.Random
) -> PositionalStrategy:
    """Uniform random move table for one side; deterministic per seeded rng."""
    if side not in (PURSUER, EVADER):
        raise ValueError("side must be 1 or 2")
    parity = 0 if side == PURSUER else 1
    choice = {}
    for s in range(family.regular_count):
        if s % 2 != parity or family.is_capture(s):
            continue
        choice[s] = rng.choice(family.successors(s))
    return PositionalStrategy(side, choice)


def export_history(family: GameFamily, h: History) -> str:
    """One line per visited state (id, locations, mover, running payoff)
    plus a capture-time trailer."""
    lines = []
    running = 0
    for sid in h.states:
        running += family.turn_payoff(sid)
        lines.append(f"{sid}\t{family.state(sid)}\tpayoff={running}")
    lines.append(f"capture_time\t{encode_value(capture_time(family, h))}")
    return "\n".join(lines) + "\n"
