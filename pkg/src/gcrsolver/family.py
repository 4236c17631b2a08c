"""State-space model of a pursuit game family.

A family is a finite set of states with one mover per state, a successor
relation, and a capture set.  Regular states are triples
(pursuer location, evader location, mover); a single terminal state sits
at the end of the numbering and absorbs all play after capture.

State numbering is the fixed total order used everywhere for
deterministic tie-breaking:

    id(p, e, m) = ((p * locations2) + e) * 2 + (m - 1)

with the terminal state last (id = locations1 * locations2 * 2).
Successor lists are kept sorted ascending by state id.
"""

import json
import math
from array import array
from dataclasses import dataclass
from typing import Iterable, Iterator

#: The infinite game value.  A genuine non-integer sentinel: comparisons and
#: +1 saturate the way unbounded capture times must (INFINITY + 1 == INFINITY).
INFINITY = math.inf

PURSUER = 1
EVADER = 2


def is_finite_value(v) -> bool:
    return v != INFINITY


class FamilyFormatError(ValueError):
    """Raised when a family document cannot be decoded."""


@dataclass(frozen=True)
class State:
    """A single position: locations plus whose move it is.

    The terminal state has all fields set to None.
    """

    pursuer_loc: int | None
    evader_loc: int | None
    mover: int | None

    @property
    def terminal(self) -> bool:
        return self.mover is None

    def __str__(self) -> str:
        if self.terminal:
            return "<terminal>"
        return f"({self.pursuer_loc},{self.evader_loc},{self.mover})"


TERMINAL_STATE = State(None, None, None)


@dataclass(frozen=True)
class Violation:
    """One structural rule broken by a family, at one state."""

    state: int
    rule: str
    message: str

    def __str__(self) -> str:
        return f"state {self.state}: [{self.rule}] {self.message}"


class GameFamily:
    """Explicit finite encoding of a pursuit game family.

    Immutable after construction; safe to share across threads.  Successor
    lists are CSR-packed int arrays so the solver kernels can sweep them
    without per-state allocation.
    """

    def __init__(
        self,
        loc1_count: int,
        loc2_count: int,
        successors: list[list[int]],
        capture: Iterable[int],
        metadata: dict | None = None,
    ):
        if loc1_count <= 0 or loc2_count <= 0:
            raise ValueError("location counts must be positive")
        self.loc1_count = loc1_count
        self.loc2_count = loc2_count
        self.regular_count = loc1_count * loc2_count * 2
        self.tau = self.regular_count
        self.state_count = self.regular_count + 1
        if len(successors) != self.state_count:
            raise ValueError(
                "expected %d successor lists (including the terminal state), got %d"
                % (self.state_count, len(successors))
            )
        succ = array("i")
        indptr = array("i", [0])
        for lst in successors:
            succ.extend(lst)
            indptr.append(len(succ))
        self._indptr = indptr
        self._succ = succ
        self._capture = bytearray(self.state_count)
        for sid in capture:
            if not 0 <= sid < self.regular_count:
                raise ValueError("capture id %r out of range" % (sid,))
            self._capture[sid] = 1
        self.metadata = dict(metadata or {})

    # -- state indexing ----------------------------------------------------

    def state_id(self, pursuer_loc: int, evader_loc: int, mover: int) -> int:
        if not 0 <= pursuer_loc < self.loc1_count:
            raise ValueError("pursuer location %r out of range" % (pursuer_loc,))
        if not 0 <= evader_loc < self.loc2_count:
            raise ValueError("evader location %r out of range" % (evader_loc,))
        if mover not in (PURSUER, EVADER):
            raise ValueError("mover must be 1 or 2, got %r" % (mover,))
        return ((pursuer_loc * self.loc2_count) + evader_loc) * 2 + (mover - 1)

    def state(self, sid: int) -> State:
        self._check_id(sid)
        if sid == self.tau:
            return TERMINAL_STATE
        pair, m = divmod(sid, 2)
        p, e = divmod(pair, self.loc2_count)
        return State(p, e, m + 1)

    def states(self) -> Iterator[State]:
        return (self.state(sid) for sid in range(self.state_count))

    def mover_of(self, sid: int) -> int | None:
        self._check_id(sid)
        if sid == self.tau:
            return None
        return (sid % 2) + 1

    def _check_id(self, sid: int) -> None:
        if not isinstance(sid, int) or isinstance(sid, bool):
            raise ValueError("state id must be an int, got %r" % (sid,))
        if not 0 <= sid < self.state_count:
            raise ValueError("state id %r out of range [0, %d)" % (sid, self.state_count))

    # -- core queries -------------------------------------------------------

    def successors(self, sid: int) -> list[int]:
        """Legal next states from ``sid``, ascending by id."""
        self._check_id(sid)
        return list(self._succ[self._indptr[sid] : self._indptr[sid + 1]])

    def successor_count(self, sid: int) -> int:
        self._check_id(sid)
        return self._indptr[sid + 1] - self._indptr[sid]

    def is_capture(self, sid: int) -> bool:
        self._check_id(sid)
        return bool(self._capture[sid])

    def turn_payoff(self, sid: int) -> int:
        """What the evader gains while the game sits at ``sid``: 1 away from
        capture, 0 at capture states and at the terminal state."""
        self._check_id(sid)
        if sid == self.tau or self._capture[sid]:
            return 0
        return 1

    def capture_ids(self) -> list[int]:
        return [sid for sid in range(self.regular_count) if self._capture[sid]]

    def capture_count(self) -> int:
        return sum(self._capture)

    # -- raw views for the kernels -------------------------------------------

    @property
    def indptr(self) -> array:
        return self._indptr

    @property
    def succ(self) -> array:
        return self._succ

    @property
    def capture_flags(self) -> bytearray:
        return self._capture

    # -- comparisons ----------------------------------------------------------

    def same_structure(self, other: "GameFamily") -> bool:
        """State-for-state equality of the game itself (metadata ignored)."""
        return (
            self.loc1_count == other.loc1_count
            and self.loc2_count == other.loc2_count
            and self._indptr == other._indptr
            and self._succ == other._succ
            and self._capture == other._capture
        )

    def __repr__(self) -> str:
        return "GameFamily(V1=%d, V2=%d, states=%d, capture=%d)" % (
            self.loc1_count,
            self.loc2_count,
            self.state_count,
            self.capture_count(),
        )


def validate_family(family: GameFamily) -> list[Violation]:
    """Check every structural rule; an empty report means the family is valid.

    Violations are data, not exceptions: builders assert emptiness, file
    loaders surface the list to the user.
    """
    out: list[Violation] = []
    tau = family.tau
    indptr, succ, capture = family.indptr, family.succ, family.capture_flags
    loc2 = family.loc2_count

    for sid in range(family.state_count):
        lo, hi = indptr[sid], indptr[sid + 1]
        if lo == hi:
            out.append(Violation(sid, "nonempty-successors", "state has no possible next move"))
            continue
        prev = -1
        bad_order = False
        for j in range(lo, hi):
            t = succ[j]
            if not 0 <= t < family.state_count:
                out.append(Violation(sid, "successor-range", f"successor id {t} out of range"))
                bad_order = True
                break
            if t <= prev:
                bad_order = True
            prev = t
        if bad_order:
            out.append(
                Violation(sid, "successor-order", "successor list must be strictly ascending by id")
            )
            continue

        if sid == tau:
            if family.successors(sid) != [tau]:
                out.append(
                    Violation(sid, "terminal-loop", "the terminal state must loop only to itself")
                )
            continue

        if capture[sid]:
            if family.successors(sid) != [tau]:
                out.append(
                    Violation(
                        sid,
                        "capture-to-terminal",
                        "a capture state's only successor must be the terminal state",
                    )
                )
            continue

        # Non-capture regular state: successors stay regular and keep the
        # waiting player's location fixed.  The successor's mover is free.
        pair, m = divmod(sid, 2)
        p, e = divmod(pair, loc2)
        for j in range(lo, hi):
            t = succ[j]
            if t == tau:
                out.append(
                    Violation(sid, "regular-successor", "non-capture state may not move to terminal")
                )
                continue
            tpair = t // 2
            tp, te = divmod(tpair, loc2)
            if m == 0 and te != e:
                out.append(
                    Violation(
                        sid,
                        "other-location-fixed",
                        f"pursuer move to state {t} changes the evader's location",
                    )
                )
            elif m == 1 and tp != p:
                out.append(
                    Violation(
                        sid,
                        "other-location-fixed",
                        f"evader move to state {t} changes the pursuer's location",
                    )
                )
    return out


# -- family documents ---------------------------------------------------------
#
# Canonical JSON layout (see docs/family-format.md):
#   {"locations1": n, "locations2": n, "edges": [[...], ...],
#    "capture": [...], "metadata": {...}}
# State ids are implicit: ((p * locations2) + e) * 2 + (mover - 1), terminal
# last.  write_family emits a canonical form that round-trips byte-identically.


def family_to_document(family: GameFamily) -> dict:
    return {
        "locations1": family.loc1_count,
        "locations2": family.loc2_count,
        "edges": [family.successors(sid) for sid in range(family.state_count)],
        "capture": family.capture_ids(),
        "metadata": family.metadata,
    }


def family_from_document(doc: dict) -> GameFamily:
    if not isinstance(doc, dict):
        raise FamilyFormatError("family document must be an object")
    for key in ("locations1", "locations2", "edges", "capture"):
        if key not in doc:
            raise FamilyFormatError(f"missing field {key!r}")
    n1, n2 = doc["locations1"], doc["locations2"]
    if not (isinstance(n1, int) and isinstance(n2, int) and n1 > 0 and n2 > 0):
        raise FamilyFormatError("locations1/locations2 must be positive integers")
    edges = doc["edges"]
    expected = n1 * n2 * 2 + 1
    if not isinstance(edges, list) or len(edges) != expected:
        raise FamilyFormatError(
            "edges must list successors for all %d states (including terminal)" % expected
        )
    for i, lst in enumerate(edges):
        if not isinstance(lst, list) or not all(
            isinstance(t, int) and not isinstance(t, bool) for t in lst
        ):
            raise FamilyFormatError(f"edges[{i}] must be a list of state ids")
    capture = doc["capture"]
    if not isinstance(capture, list) or not all(
        isinstance(c, int) and not isinstance(c, bool) for c in capture
    ):
        raise FamilyFormatError("capture must be a list of state ids")
    metadata = doc.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise FamilyFormatError("metadata must be an object")
    try:
        return GameFamily(n1, n2, edges, capture, metadata)
    except ValueError as exc:
        raise FamilyFormatError(str(exc)) from exc


def write_family(family: GameFamily) -> str:
    """Serialize to the canonical text form (stable bytes for equal input)."""
    return json.dumps(family_to_document(family), indent=1, sort_keys=False) + "\n"


def read_family(text: str) -> GameFamily:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FamilyFormatError(f"not valid JSON: {exc}") from exc
    return family_from_document(doc)


def encode_value(v) -> int | str:
    """Game value -> JSON-safe form ("infinity" for the unbounded value)."""
    if v == INFINITY:
        return "infinity"
    return int(v)


def decode_value(v) -> int | float:
    if v == "infinity":
        return INFINITY
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    raise FamilyFormatError("values must be integers or the string 'infinity', got %r" % (v,))
