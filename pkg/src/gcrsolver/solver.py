"""Value labeling, optimal strategies, and the placement round.

The labeling sweep assigns every state the exact optimal capture time
(number of turns, pursuer minimizing / evader maximizing) or the infinite
value.  Labels start at 0 on the capture set and infinity elsewhere; each
sweep re-derives unlabeled states from the previous sweep only (1 + min
over successors on pursuer-move states, 1 + max on evader-move states),
finite labels are frozen, and the run stops at the first sweep that
changes nothing.  A label finitized in sweep i always equals i; that index
is kept per state and doubles as a cross-check.
"""

from array import array
from dataclasses import dataclass, field

from gcrsolver import kernels
from gcrsolver.family import (
    EVADER,
    INFINITY,
    PURSUER,
    FamilyFormatError,
    GameFamily,
    decode_value,
    encode_value,
    validate_family,
)


@dataclass
class LabelTable:
    """Per-state values and the sweep index at which each turned finite."""

    value: list
    finitized_at: list
    iterations_run: int
    #: Optional per-sweep snapshots (sweep 0 = initialization), small runs only.
    trace: list | None = field(default=None, repr=False)

    def is_finite(self, sid: int) -> bool:
        return self.value[sid] != INFINITY


@dataclass(frozen=True)
class PositionalStrategy:
    """Move choice per state for one side; domain is that side's
    non-capture states."""

    side: int
    choice: dict

    def move(self, sid: int) -> int:
        try:
            return self.choice[sid]
        except KeyError:
            raise ValueError(
                f"side-{self.side} strategy has no move at state {sid}"
            ) from None


@dataclass(frozen=True)
class PlacementSummary:
    """Placement-round solution: the game value when the pursuer places
    first and the evader replies."""

    value: int | float
    cop_placement: int
    robber_best_response: list


def _require_valid(family: GameFamily) -> None:
    violations = validate_family(family)
    if violations:
        head = "; ".join(str(v) for v in violations[:3])
        more = f" (+{len(violations) - 3} more)" if len(violations) > 3 else ""
        raise ValueError(f"invalid family: {head}{more}")


def vl_solve(family: GameFamily, record_trace: bool = False) -> LabelTable:
    """Label every state with its exact game value.

    ``record_trace=True`` runs a plain full-array sweep that keeps every
    intermediate labeling (for small instances); otherwise the selected
    kernel backend does the work.
    """
    _require_valid(family)
    if record_trace:
        return _solve_traced(family)
    n = family.state_count
    value = array("i", bytes(4 * n))
    fin = array("i", bytes(4 * n))
    iterations = kernels.vl_label(family.indptr, family.succ, family.capture_flags, value, fin)
    return LabelTable(
        value=[INFINITY if v < 0 else v for v in value],
        finitized_at=[INFINITY if v < 0 else v for v in fin],
        iterations_run=iterations,
    )


def _solve_traced(family: GameFamily) -> LabelTable:
    """Literal sweep over full arrays, snapshotting every iteration."""
    n = family.state_count
    tau = family.tau
    value = [0 if (s == tau or family.is_capture(s)) else INFINITY for s in range(n)]
    fin = [0 if value[s] == 0 else INFINITY for s in range(n)]
    trace = [tuple(value)]
    iterations = 0
    while True:
        iterations += 1
        new = list(value)
        for s in range(tau):
            if value[s] != INFINITY:
                continue  # frozen once finite
            succ_vals = [value[t] for t in family.successors(s)]
            bound = min(succ_vals) if s % 2 == 0 else max(succ_vals)
            new[s] = 1 + bound  # INFINITY + 1 saturates
            if new[s] != INFINITY:
                fin[s] = iterations
        changed = new != value
        value = new
        trace.append(tuple(value))
        if not changed:
            return LabelTable(value, fin, iterations, trace=trace)


def optimal_strategies(
    family: GameFamily, labels: LabelTable
) -> tuple[PositionalStrategy, PositionalStrategy]:
    """Greedy move choosers over the label table.

    The pursuer takes the first successor (smallest id) of minimum value,
    the evader the first of maximum value; both depend on the current state
    only.
    """
    _check_labels_match(family, labels)
    value = labels.value
    pursuer: dict[int, int] = {}
    evader: dict[int, int] = {}
    for s in range(family.regular_count):
        if family.is_capture(s):
            continue
        succs = family.successors(s)
        best = succs[0]
        if s % 2 == 0:
            for t in succs[1:]:
                if value[t] < value[best]:
                    best = t
            pursuer[s] = best
        else:
            for t in succs[1:]:
                if value[t] > value[best]:
                    best = t
            evader[s] = best
    return (
        PositionalStrategy(PURSUER, pursuer),
        PositionalStrategy(EVADER, evader),
    )


def check_optimality_equations(family: GameFamily, labels: LabelTable) -> list[int]:
    """States whose label breaks its defining equation (empty = consistent).

    Checks value 0 exactly on capture states, 1 + min over successors on
    pursuer-move states, and 1 + max on evader-move states, with infinite
    values saturating.
    """
    _check_labels_match(family, labels)
    value = labels.value
    bad = []
    for s in range(family.regular_count):
        if family.is_capture(s):
            if value[s] != 0:
                bad.append(s)
            continue
        succ_vals = [value[t] for t in family.successors(s)]
        bound = min(succ_vals) if s % 2 == 0 else max(succ_vals)
        if value[s] != 1 + bound:
            bad.append(s)
    return bad


def placement_minimax(family: GameFamily, labels: LabelTable) -> PlacementSummary:
    """Solve the placement round: the pursuer picks a start location, the
    evader replies, then play begins with the pursuer to move.

    Returns the min-max value over pursuer-move start states, the first
    minimizing pursuer placement, and the first maximizing evader reply for
    every pursuer placement.
    """
    _check_labels_match(family, labels)
    value = labels.value
    replies = []
    best_p = 0
    best_v = None
    for p in range(family.loc1_count):
        worst_e = 0
        worst_v = value[family.state_id(p, 0, PURSUER)]
        for e in range(1, family.loc2_count):
            v = value[family.state_id(p, e, PURSUER)]
            if v > worst_v:
                worst_e, worst_v = e, v
        replies.append(worst_e)
        if best_v is None or worst_v < best_v:
            best_p, best_v = p, worst_v
    return PlacementSummary(value=best_v, cop_placement=best_p, robber_best_response=replies)


def _check_labels_match(family: GameFamily, labels: LabelTable) -> None:
    if len(labels.value) != family.state_count or len(labels.finitized_at) != family.state_count:
        raise ValueError(
            "label table covers %d states but the family has %d"
            % (len(labels.value), family.state_count)
        )


# -- label documents ------------------------------------------------------------


def labels_to_document(family: GameFamily, labels: LabelTable) -> dict:
    _check_labels_match(family, labels)
    states = []
    for sid in range(family.state_count):
        st = family.state(sid)
        states.append(
            {
                "id": sid,
                "pursuer_loc": st.pursuer_loc,
                "evader_loc": st.evader_loc,
                "mover": st.mover,
                "value": encode_value(labels.value[sid]),
                "finitized_at": encode_value(labels.finitized_at[sid]),
            }
        )
    return {"iterations_run": labels.iterations_run, "states": states}


def labels_from_document(family: GameFamily, doc: dict) -> LabelTable:
    if not isinstance(doc, dict) or "states" not in doc:
        raise FamilyFormatError("label document must be an object with a 'states' field")
    records = doc["states"]
    if not isinstance(records, list) or len(records) != family.state_count:
        raise FamilyFormatError(
            "label document must cover all %d states" % family.state_count
        )
    value = [None] * family.state_count
    fin = [None] * family.state_count
    for rec in records:
        if not isinstance(rec, dict) or "id" not in rec:
            raise FamilyFormatError("each label record needs an 'id'")
        sid = rec["id"]
        if not isinstance(sid, int) or not 0 <= sid < family.state_count:
            raise FamilyFormatError(f"label record id {sid!r} out of range")
        if value[sid] is not None:
            raise FamilyFormatError(f"duplicate label record for state {sid}")
        value[sid] = decode_value(rec.get("value"))
        fin[sid] = decode_value(rec.get("finitized_at"))
    iterations = doc.get("iterations_run", 0)
    if not isinstance(iterations, int) or iterations < 0:
        raise FamilyFormatError("iterations_run must be a nonnegative integer")
    return LabelTable(value, fin, iterations)


# -- DOT export -------------------------------------------------------------------


def to_dot(
    family: GameFamily,
    labels: LabelTable | None = None,
    strategies: tuple[PositionalStrategy, PositionalStrategy] | None = None,
) -> str:
    """State graph in DOT form; nodes annotated with values, optimal-move
    edges highlighted (pursuer red, evader blue)."""
    lines = ["digraph game {", "  rankdir=LR;", '  node [shape=ellipse, fontsize=10];']
    highlight = {}
    if strategies is not None:
        s1, s2 = strategies
        highlight.update({(s, t): "red" for s, t in s1.choice.items()})
        highlight.update({(s, t): "blue" for s, t in s2.choice.items()})
    for sid in range(family.state_count):
        st = family.state(sid)
        label = "tau" if st.terminal else str(st)
        if labels is not None:
            label += "\\nT=%s" % encode_value(labels.value[sid])
        attrs = [f'label="{label}"']
        if st.terminal:
            attrs.append("shape=box")
        elif family.is_capture(sid):
            attrs.append("style=filled")
            attrs.append("fillcolor=lightgray")
        lines.append(f"  s{sid} [{', '.join(attrs)}];")
    for sid in range(family.state_count):
        for t in family.successors(sid):
            color = highlight.get((sid, t))
            if color:
                lines.append(f"  s{sid} -> s{t} [color={color}, penwidth=2.0];")
            else:
                lines.append(f"  s{sid} -> s{t} [color=gray];")
    lines.append("}")
    return "\n".join(lines) + "\n"
