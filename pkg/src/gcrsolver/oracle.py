"""Independent verification paths for solved families.

Two deliberately separate methods reproduce what the labeling sweep
computes, without sharing any code with it:

* exhaustive minimax on the horizon-limited game (finite, hence directly
  solvable by recursion over (state, turns left));
* a capture-attractor built from set operations only, classifying each
  state as pursuer-win or evader-win and layering the pursuer-win set by
  guaranteed capture time.

Both are intentionally naive; they exist to be obviously correct at small
scale, not to be fast.
"""

from dataclasses import dataclass

from gcrsolver.family import INFINITY, GameFamily, validate_family


@dataclass(frozen=True)
class Partition:
    """Pursuer-win / evader-win split of the regular states."""

    pwin: frozenset
    ewin: frozenset


@dataclass(frozen=True)
class AttractorTrace:
    """The growing capture-attractor sets, first set = capture set.

    ``levels[n]`` holds every state from which capture is forced within n
    turns; ``converged_at`` is the first index whose set is the fixpoint.
    """

    levels: list
    converged_at: int

    def membership(self) -> dict:
        """State id -> n of the first level containing it (exact forced
        capture time)."""
        out: dict[int, int] = {}
        for n, level in enumerate(self.levels):
            for sid in level:
                if sid not in out:
                    out[sid] = n
        return out


def truncated_value(family: GameFamily, s0: int, horizon: int) -> int:
    """Exact minimax total payoff of the game cut after ``horizon`` turns.

    The evader collects 1 per state visited away from capture, so the
    result is the capture time when capture happens inside the horizon and
    ``horizon + 1`` when the evader survives the whole truncated game.
    Plain memoized game-tree evaluation on (state, turns left); never calls
    the solver.
    """
    family._check_id(s0)
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    tau = family.tau
    memo: dict[tuple[int, int], int] = {}
    stack = [(s0, horizon)]
    while stack:
        s, r = stack[-1]
        if (s, r) in memo:
            stack.pop()
            continue
        if s == tau or family.is_capture(s):
            memo[(s, r)] = 0  # all further play sits on the terminal loop
            stack.pop()
            continue
        if r == 0:
            memo[(s, r)] = 1
            stack.pop()
            continue
        succs = family.successors(s)
        missing = [t for t in succs if (t, r - 1) not in memo]
        if missing:
            stack.extend((t, r - 1) for t in missing)
            continue
        child = [memo[(t, r - 1)] for t in succs]
        memo[(s, r)] = 1 + (min(child) if s % 2 == 0 else max(child))
        stack.pop()
    return memo[(s0, horizon)]


def _truncated_all(family: GameFamily, horizon: int) -> tuple[list, list]:
    """Horizon-limited minimax for every state at once (bottom-up over the
    same recurrence as ``truncated_value``).

    Returns (values, captured): ``captured[s]`` says whether the unique
    first-choice optimal line from s reaches capture inside the horizon.
    """
    n = family.state_count
    tau = family.tau
    settled = [s == tau or family.is_capture(s) for s in range(n)]
    value = [0 if settled[s] else 1 for s in range(n)]
    captured = list(settled)
    for _ in range(horizon):
        nvalue = list(value)
        ncaptured = list(captured)
        for s in range(family.regular_count):
            if settled[s]:
                continue
            succs = family.successors(s)
            best = succs[0]
            if s % 2 == 0:
                for t in succs[1:]:
                    if value[t] < value[best]:
                        best = t
            else:
                for t in succs[1:]:
                    if value[t] > value[best]:
                        best = t
            nvalue[s] = 1 + value[best]
            ncaptured[s] = captured[best]
        value, captured = nvalue, ncaptured
    return value, captured


def oracle_value(family: GameFamily, s0: int):
    """Exact game value of ``s0`` via the truncated game only.

    The horizon is the regular-state count: any forced capture happens
    within that many turns, so a line that exhausts the horizon uncaptured
    certifies the infinite value.
    """
    return oracle_values(family)[s0]


def oracle_values(family: GameFamily) -> list:
    """``oracle_value`` for every state in one bottom-up pass."""
    bound = family.regular_count
    value, captured = _truncated_all(family, bound)
    return [
        value[s] if captured[s] and value[s] <= bound - 1 else INFINITY
        for s in range(family.state_count)
    ]


def attractor_classify(family: GameFamily) -> tuple[Partition, AttractorTrace]:
    """Classify every regular state by the capture attractor.

    Level 0 is the capture set; a pursuer-move state joins the next level
    when SOME successor is in, an evader-move state when ALL successors
    are.  Set operations only -- independent of both the solver and the
    truncated game.
    """
    violations = validate_family(family)
    if violations:
        raise ValueError(f"invalid family: {violations[0]}")
    regular = frozenset(range(family.regular_count))
    current = frozenset(family.capture_ids())
    levels = [current]
    while True:
        grown = set(current)
        for s in regular:
            if s in current:
                continue
            succs = family.successors(s)
            if s % 2 == 0:
                if any(t in current for t in succs):
                    grown.add(s)
            else:
                if all(t in current for t in succs):
                    grown.add(s)
        grown = frozenset(grown)
        if grown == current:
            break
        levels.append(grown)
        current = grown
    pwin = current
    return (
        Partition(pwin=pwin, ewin=regular - pwin),
        AttractorTrace(levels=levels, converged_at=len(levels) - 1),
    )
