"""Builders that turn a graph plus a variant choice into a game family.

Supported variants:

* ``classic``       -- one cop, one robber, alternating moves, capture on
                       co-location.
* ``distance_k``    -- classic movement, capture once the cop is within
                       graph distance k of the robber.
* ``k_cops``        -- a team of c cop tokens, all of which may step (or
                       stay) on one cop turn; capture when the robber shares
                       a vertex with any token.
* ``speed2_pursuer``-- the cop moves twice in a row before the robber
                       replies; exercises states whose successor keeps the
                       same mover.

Movement is over closed neighborhoods: staying in place is always legal.
All builders are deterministic; the same inputs yield an identical family.
"""

from collections import deque
from dataclasses import dataclass
from itertools import product

from gcrsolver.family import EVADER, PURSUER, GameFamily

VARIANT_KINDS = ("classic", "distance_k", "k_cops", "speed2_pursuer")


class GraphParseError(ValueError):
    """Malformed graph text; carries the 1-based offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    """A loop-free graph; reflexive closure is applied by the builders."""

    vertex_count: int
    edges: tuple = ()
    directed: bool = False

    def __init__(self, vertex_count: int, edges, directed: bool = False):
        if vertex_count <= 0:
            raise ValueError("graph must have at least one vertex")
        norm = set()
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {vertex_count})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u} not allowed in the input edge set")
            norm.add((u, v) if directed else (min(u, v), max(u, v)))
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        object.__setattr__(self, "directed", directed)

    def closed_neighborhoods(self) -> list[list[int]]:
        """Per-vertex sorted move targets, self included (arcs respected)."""
        nbrs = [{v} for v in range(self.vertex_count)]
        for u, v in self.edges:
            nbrs[u].add(v)
            if not self.directed:
                nbrs[v].add(u)
        return [sorted(s) for s in nbrs]

    def distances_from(self, source: int) -> list[float]:
        """BFS distance along arcs; unreachable vertices get inf."""
        dist: list[float] = [float("inf")] * self.vertex_count
        dist[source] = 0
        nbrs = self.closed_neighborhoods()
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for v in nbrs[u]:
                if dist[v] == float("inf"):
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist


@dataclass(frozen=True)
class VariantSpec:
    """Which game to build on top of a graph."""

    kind: str
    k: int | None = None
    cops: int | None = None
    initial_mover: int = PURSUER

    def __post_init__(self):
        if self.kind not in VARIANT_KINDS:
            raise ValueError(f"unknown variant {self.kind!r}; expected one of {VARIANT_KINDS}")
        if self.kind == "distance_k":
            if self.k is None or self.k < 0:
                raise ValueError("distance_k requires a capture distance k >= 0")
        elif self.k is not None:
            raise ValueError(f"variant {self.kind!r} takes no k parameter")
        if self.kind == "k_cops":
            if self.cops is None or self.cops < 1:
                raise ValueError("k_cops requires a team size cops >= 1")
        elif self.cops is not None:
            raise ValueError(f"variant {self.kind!r} takes no cops parameter")
        if self.initial_mover not in (PURSUER, EVADER):
            raise ValueError("initial_mover must be 1 or 2")


def build_family(g: Graph, spec: VariantSpec) -> GameFamily:
    if spec.kind == "classic":
        fam = _build_two_token(g, capture_pairs=_colocation_pairs(g))
    elif spec.kind == "distance_k":
        fam = _build_two_token(g, capture_pairs=_distance_pairs(g, spec.k))
    elif spec.kind == "k_cops":
        fam = _build_cop_team(g, spec.cops)
    else:
        fam = _build_speed2(g)
    fam.metadata.update(_metadata(g, spec))
    return fam


def _metadata(g: Graph, spec: VariantSpec) -> dict:
    params = {}
    if spec.k is not None:
        params["k"] = spec.k
    if spec.cops is not None:
        params["cops"] = spec.cops
    return {
        "variant": spec.kind,
        "parameters": params,
        "initial_mover": spec.initial_mover,
        "graph": {
            "vertices": g.vertex_count,
            "edges": [list(e) for e in g.edges],
            "directed": g.directed,
        },
    }


def _colocation_pairs(g: Graph) -> set[tuple[int, int]]:
    return {(v, v) for v in range(g.vertex_count)}


def _distance_pairs(g: Graph, k: int) -> set[tuple[int, int]]:
    pairs = set()
    for p in range(g.vertex_count):
        dist = g.distances_from(p)
        for e in range(g.vertex_count):
            if dist[e] <= k:
                pairs.add((p, e))
    return pairs


def _assemble(
    loc1: int,
    loc2: int,
    capture,
    pursuer_moves,
    evader_moves,
) -> GameFamily:
    """Shared family assembly.

    ``capture(p, e)`` marks capture pairs (both movers).  ``pursuer_moves(p)``
    yields (new_p, next_mover) pairs; ``evader_moves(e)`` yields
    (new_e, next_mover).  Successor lists come out sorted and deduplicated.
    """
    regular = loc1 * loc2 * 2
    tau = regular
    successors: list[list[int]] = []
    capture_ids: list[int] = []

    def sid(p, e, m):
        return ((p * loc2) + e) * 2 + (m - 1)

    for p in range(loc1):
        for e in range(loc2):
            captured = capture(p, e)
            for m in (PURSUER, EVADER):
                if captured:
                    capture_ids.append(sid(p, e, m))
                    successors.append([tau])
                elif m == PURSUER:
                    succ = {sid(np, e, nm) for np, nm in pursuer_moves(p)}
                    successors.append(sorted(succ))
                else:
                    succ = {sid(p, ne, nm) for ne, nm in evader_moves(e)}
                    successors.append(sorted(succ))
    successors.append([tau])
    return GameFamily(loc1, loc2, successors, capture_ids)


def _build_two_token(g: Graph, capture_pairs: set[tuple[int, int]]) -> GameFamily:
    nbrs = g.closed_neighborhoods()
    return _assemble(
        g.vertex_count,
        g.vertex_count,
        lambda p, e: (p, e) in capture_pairs,
        lambda p: [(z, EVADER) for z in nbrs[p]],
        lambda e: [(z, PURSUER) for z in nbrs[e]],
    )


def _build_cop_team(g: Graph, cops: int) -> GameFamily:
    n = g.vertex_count
    nbrs = g.closed_neighborhoods()
    team_count = n**cops

    def encode(team) -> int:
        idx = 0
        for v in team:
            idx = idx * n + v
        return idx

    def decode(idx) -> tuple:
        team = []
        for _ in range(cops):
            idx, v = divmod(idx, n)
            team.append(v)
        return tuple(reversed(team))

    def team_moves(idx):
        # Every token may step within its closed neighborhood in one turn.
        team = decode(idx)
        return [(encode(new), EVADER) for new in product(*(nbrs[v] for v in team))]

    return _assemble(
        team_count,
        n,
        lambda t, e: e in decode(t),
        team_moves,
        lambda e: [(z, PURSUER) for z in nbrs[e]],
    )


def _build_speed2(g: Graph) -> GameFamily:
    """Cop location carries a phase bit: loc = vertex * 2 + phase.

    Phase 0 = first move of the cop's pair (cop keeps the move), phase 1 =
    second move (play passes to the robber).  The robber's move leaves the
    phase untouched.
    """
    n = g.vertex_count
    nbrs = g.closed_neighborhoods()

    def pursuer_moves(ploc):
        v, phase = divmod(ploc, 2)
        if phase == 0:
            return [(z * 2 + 1, PURSUER) for z in nbrs[v]]
        return [(z * 2, EVADER) for z in nbrs[v]]

    return _assemble(
        n * 2,
        n,
        lambda ploc, e: ploc // 2 == e,
        pursuer_moves,
        lambda e: [(z, PURSUER) for z in nbrs[e]],
    )


# -- graph parsing --------------------------------------------------------------

GRAPH_FORMATS = ("edge_list", "dot_subset")


def parse_graph(text: str, fmt: str = "edge_list") -> Graph:
    if fmt == "edge_list":
        return _parse_edge_list(text)
    if fmt == "dot_subset":
        return _parse_dot(text)
    raise ValueError(f"unknown graph format {fmt!r}; expected one of {GRAPH_FORMATS}")


def detect_graph_format(text: str) -> str:
    head = text.lstrip()
    if head.startswith("graph") or head.startswith("digraph"):
        return "dot_subset"
    return "edge_list"


def _parse_edge_list(text: str) -> Graph:
    """First line: "<n> directed|undirected"; then one "u v" pair per line."""
    lines = text.splitlines()
    header = None
    header_no = 0
    for i, raw in enumerate(lines, start=1):
        if raw.strip():
            header, header_no = raw.split(), i
            break
    if header is None:
        raise GraphParseError("empty input: expected a header line '<n> directed|undirected'")
    if len(header) != 2 or header[1] not in ("directed", "undirected"):
        raise GraphParseError(
            "header must be '<n> directed|undirected'", line=header_no
        )
    try:
        n = int(header[0])
    except ValueError:
        raise GraphParseError(f"vertex count {header[0]!r} is not an integer", line=header_no)
    if n <= 0:
        raise GraphParseError("vertex count must be positive", line=header_no)
    directed = header[1] == "directed"

    edges = []
    for i, raw in enumerate(lines, start=1):
        if i <= header_no or not raw.strip():
            continue
        parts = raw.split()
        if len(parts) != 2:
            raise GraphParseError(f"expected 'u v', got {raw.strip()!r}", line=i)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"endpoints must be integers, got {raw.strip()!r}", line=i)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"endpoint out of range [0, {n})", line=i)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u} not allowed", line=i)
        edges.append((u, v))
    return Graph(n, edges, directed)


def _parse_dot(text: str) -> Graph:
    """Accepts "graph {…}" / "digraph {…}" with bare integer ids and
    "--"/"->" edges only; vertex count = max id + 1."""
    lines = text.splitlines()
    directed = None
    body: list[tuple[int, str]] = []
    opened = closed = False
    for i, raw in enumerate(lines, start=1):
        s = raw.strip()
        if not s:
            continue
        if directed is None:
            if s.startswith("digraph"):
                directed = True
            elif s.startswith("graph"):
                directed = False
            else:
                raise GraphParseError("expected 'graph {' or 'digraph {'", line=i)
            rest = s.split("{", 1)
            if len(rest) != 2:
                raise GraphParseError("missing '{' after graph keyword", line=i)
            opened = True
            s = rest[1].strip()
            if not s:
                continue
        if "}" in s:
            s = s.split("}", 1)[0].strip()
            closed = True
            if s:
                body.append((i, s))
            break
        body.append((i, s))
    if directed is None:
        raise GraphParseError("empty input: expected 'graph {...}' or 'digraph {...}'")
    if not opened or not closed:
        raise GraphParseError("unbalanced braces in graph text")

    op = "->" if directed else "--"
    wrong_op = "--" if directed else "->"
    edges: list[tuple[int, int]] = []
    max_id = -1
    for lineno, chunk in body:
        for stmt in chunk.split(";"):
            stmt = stmt.strip()
            if not stmt:
                continue
            if wrong_op in stmt:
                raise GraphParseError(
                    f"edge operator {wrong_op!r} not allowed in this graph kind", line=lineno
                )
            ids = [t.strip() for t in stmt.split(op)]
            try:
                chain = [int(t) for t in ids]
            except ValueError:
                raise GraphParseError(f"node ids must be bare integers, got {stmt!r}", line=lineno)
            if any(v < 0 for v in chain):
                raise GraphParseError("node ids must be nonnegative", line=lineno)
            max_id = max(max_id, *chain)
            for u, v in zip(chain, chain[1:]):
                if u == v:
                    raise GraphParseError(f"self-loop at vertex {u} not allowed", line=lineno)
                edges.append((u, v))
    if max_id < 0:
        raise GraphParseError("graph body declares no vertices")
    return Graph(max_id + 1, edges, directed)
