"""Command-line entry point.

Subcommands: solve, classify, verify, play, export, serve.  Inputs are
graph files (edge-list or a DOT subset) plus variant flags, or a family
JSON document written earlier by ``export --format family``.

Exit codes: 0 ok, 1 verification failure, 2 input error, 3 state space too
large for the oracle checks, 4 environment error.
"""

import argparse
import json
import sys
from pathlib import Path

from gcrsolver import __version__
from gcrsolver.family import (
    EVADER,
    INFINITY,
    PURSUER,
    FamilyFormatError,
    GameFamily,
    encode_value,
    read_family,
    validate_family,
    write_family,
)
from gcrsolver.oracle import attractor_classify, oracle_values
from gcrsolver.play import capture_time
from gcrsolver.solver import (
    LabelTable,
    check_optimality_equations,
    labels_from_document,
    labels_to_document,
    optimal_strategies,
    placement_minimax,
    to_dot,
    vl_solve,
)
from gcrsolver.server import SolvedGame, make_server, pursuer_tokens, wire_value
from gcrsolver.variants import (
    Graph,
    GraphParseError,
    VariantSpec,
    build_family,
    detect_graph_format,
    parse_graph,
)

DEFAULT_SEED = 1729
DEFAULT_ORACLE_CAP = 2000

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_INPUT = 2
EXIT_ORACLE_CAP = 3
EXIT_ENV = 4


class CliInputError(Exception):
    pass


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("input", help="graph file (edge list / DOT subset) or family JSON")
    sub.add_argument(
        "--input-format",
        choices=("edge-list", "dot", "family"),
        help="input kind; default: detect from content",
    )
    sub.add_argument(
        "--variant",
        choices=("classic", "distance-k", "k-cops", "speed2-pursuer"),
        help="game variant for graph inputs (default classic)",
    )
    sub.add_argument("--k", type=int, help="capture distance for --variant distance-k")
    sub.add_argument("--cops", type=int, help="team size for --variant k-cops")
    sub.add_argument(
        "--directed",
        action="store_true",
        help="require the input graph to be directed",
    )
    sub.add_argument(
        "--first-mover",
        type=int,
        choices=(1, 2),
        default=1,
        help="who moves first in default start states (metadata)",
    )
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED, help="deterministic seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcrsolver",
        description="solve, verify and play pursuit games on finite state spaces",
    )
    parser.add_argument("--version", action="version", version=f"gcrsolver {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("solve", help="label every state with its exact game value")
    _add_common(p)
    p.add_argument("--output", help="write the result document here instead of stdout")

    p = subs.add_parser("classify", help="pursuer-win / evader-win partition via the attractor")
    _add_common(p)
    p.add_argument("--output", help="write the result document here instead of stdout")

    p = subs.add_parser("verify", help="cross-check solved labels with the independent oracles")
    _add_common(p)
    p.add_argument("--labels", help="verify this label document instead of solving")
    p.add_argument(
        "--oracle-cap",
        type=int,
        default=DEFAULT_ORACLE_CAP,
        help="skip oracle checks above this many states (default %(default)s)",
    )

    p = subs.add_parser("export", help="write the family, labels, or an annotated DOT graph")
    _add_common(p)
    p.add_argument(
        "--format",
        choices=("family", "dot", "labels"),
        default="family",
        help="what to write (default %(default)s)",
    )
    p.add_argument("--output", help="write here instead of stdout")

    p = subs.add_parser("play", help="play against the optimal strategy in the terminal")
    _add_common(p)
    p.add_argument("--side", type=int, choices=(1, 2), default=1, help="your side (default 1)")
    p.add_argument(
        "--start",
        help="start state 'P,E' or 'P,E,M' (locations, optional mover); "
        "default: optimal placements",
    )
    p.add_argument("--max-turns", type=int, help="evasion horizon override")

    p = subs.add_parser("serve", help="serve the wire API for the browser client")
    _add_common(p)
    p.add_argument("--port", type=int, default=8128)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui", help="directory of built web-client assets to serve at /")

    return parser


# -- input loading ------------------------------------------------------------


def _variant_spec(args) -> VariantSpec:
    kind = (args.variant or "classic").replace("-", "_")
    if kind == "k_cops":
        if args.cops is None:
            raise CliInputError("--variant k-cops requires --cops")
        return VariantSpec("k_cops", cops=args.cops, initial_mover=args.first_mover)
    if kind == "distance_k":
        if args.k is None:
            raise CliInputError("--variant distance-k requires --k")
        return VariantSpec("distance_k", k=args.k, initial_mover=args.first_mover)
    if args.k is not None:
        raise CliInputError("--k only applies to --variant distance-k")
    if args.cops is not None:
        raise CliInputError("--cops only applies to --variant k-cops")
    return VariantSpec(kind, initial_mover=args.first_mover)


def load_family(args) -> GameFamily:
    path = Path(args.input)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CliInputError(f"cannot read {args.input!r}: {exc}")
    if not text.strip():
        raise CliInputError(f"parse error: {args.input!r} is empty")

    fmt = args.input_format
    if fmt is None:
        fmt = "family" if text.lstrip().startswith("{") else {
            "dot_subset": "dot",
            "edge_list": "edge-list",
        }[detect_graph_format(text)]

    if fmt == "family":
        if args.variant or args.k is not None or args.cops is not None:
            raise CliInputError("variant flags apply to graph inputs, not family documents")
        try:
            family = read_family(text)
        except FamilyFormatError as exc:
            raise CliInputError(f"parse error in family document: {exc}")
        violations = validate_family(family)
        if violations:
            raise CliInputError(
                "invalid family: " + "; ".join(str(v) for v in violations[:5])
            )
        return family

    try:
        graph = parse_graph(text, "dot_subset" if fmt == "dot" else "edge_list")
    except (GraphParseError, ValueError) as exc:
        raise CliInputError(f"parse error: {exc}")
    if args.directed and not graph.directed:
        raise CliInputError("--directed given but the input graph is undirected")
    try:
        return build_family(graph, _variant_spec(args))
    except ValueError as exc:
        raise CliInputError(str(exc))


def _emit(doc_text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(doc_text)
    else:
        sys.stdout.write(doc_text)


def _placement_document(family: GameFamily, labels: LabelTable) -> dict:
    placement = placement_minimax(family, labels)
    return {
        "value": encode_value(placement.value),
        "cop_placement": placement.cop_placement,
        "robber_best_response": placement.robber_best_response,
    }


# -- commands -------------------------------------------------------------------


def cmd_solve(args) -> int:
    family = load_family(args)
    labels = vl_solve(family)
    doc = {
        "command": "solve",
        "family": {
            "locations1": family.loc1_count,
            "locations2": family.loc2_count,
            "state_count": family.state_count,
            "capture_count": family.capture_count(),
            "metadata": family.metadata,
        },
        "placement": _placement_document(family, labels),
        "label_table": labels_to_document(family, labels),
    }
    _emit(json.dumps(doc, indent=1) + "\n", args.output)
    return EXIT_OK


def cmd_classify(args) -> int:
    family = load_family(args)
    partition, trace = attractor_classify(family)
    doc = {
        "command": "classify",
        "regular_count": family.regular_count,
        "pwin_count": len(partition.pwin),
        "ewin_count": len(partition.ewin),
        "converged_at": trace.converged_at,
        "pwin": sorted(partition.pwin),
        "ewin": sorted(partition.ewin),
        "levels": [sorted(level) for level in trace.levels],
    }
    _emit(json.dumps(doc, indent=1) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    family = load_family(args)
    if args.labels:
        try:
            labels = labels_from_document(family, json.loads(Path(args.labels).read_text()))
        except (OSError, json.JSONDecodeError, FamilyFormatError) as exc:
            raise CliInputError(f"cannot load labels from {args.labels!r}: {exc}")
    else:
        labels = vl_solve(family)

    print(f"verify: {args.input}")
    print(f"seed: {args.seed}")
    print(f"states: {family.state_count} (oracle cap {args.oracle_cap})")

    failed = False

    bad = check_optimality_equations(family, labels)
    if bad:
        first = bad[0]
        print(f"check optimality-equations: FAIL ({len(bad)} states, first: {first} {family.state(first)})")
        failed = True
    else:
        print("check optimality-equations: pass")

    mismatched = [
        s
        for s in range(family.regular_count)
        if labels.value[s] != labels.finitized_at[s]
    ]
    if mismatched:
        first = mismatched[0]
        print(
            f"check finitization-index: FAIL ({len(mismatched)} states, first: {first} {family.state(first)})"
        )
        failed = True
    else:
        print("check finitization-index: pass")

    capped = family.state_count > args.oracle_cap
    if capped:
        print("check oracle-agreement: skipped (state space too large for oracle)")
        print("check attractor-agreement: skipped (state space too large for oracle)")
    else:
        oracle = oracle_values(family)
        bad_oracle = [s for s in range(family.state_count) if oracle[s] != labels.value[s]]
        if bad_oracle:
            first = bad_oracle[0]
            print(
                f"check oracle-agreement: FAIL ({len(bad_oracle)} states, first: {first} {family.state(first)})"
            )
            failed = True
        else:
            print("check oracle-agreement: pass")

        partition, trace = attractor_classify(family)
        membership = trace.membership()
        bad_attr = []
        for s in range(family.regular_count):
            finite = labels.value[s] != INFINITY
            if finite != (s in partition.pwin) or (
                finite and membership.get(s) != labels.value[s]
            ):
                bad_attr.append(s)
        if bad_attr:
            first = bad_attr[0]
            print(
                f"check attractor-agreement: FAIL ({len(bad_attr)} states, first: {first} {family.state(first)})"
            )
            failed = True
        else:
            print("check attractor-agreement: pass")

    if failed:
        print("result: FAIL")
        return EXIT_VERIFY_FAIL
    if capped:
        print("result: pass (oracle checks skipped)")
        return EXIT_ORACLE_CAP
    print("result: pass")
    return EXIT_OK


def cmd_export(args) -> int:
    family = load_family(args)
    if args.format == "family":
        _emit(write_family(family), args.output)
    elif args.format == "labels":
        labels = vl_solve(family)
        _emit(json.dumps(labels_to_document(family, labels), indent=1) + "\n", args.output)
    else:
        labels = vl_solve(family)
        strategies = optimal_strategies(family, labels)
        _emit(to_dot(family, labels, strategies), args.output)
    return EXIT_OK


# -- interactive play ----------------------------------------------------------


def _describe_state(family: GameFamily, sid: int) -> str:
    st = family.state(sid)
    if st.terminal:
        return "terminal"
    tokens = pursuer_tokens(family, st.pursuer_loc)
    cop = ",".join(map(str, tokens))
    mover = "pursuer" if st.mover == PURSUER else "evader"
    return f"pursuer@{cop} evader@{st.evader_loc} ({mover} to move)"


def _move_key(family: GameFamily, sid: int, succ: int) -> str:
    """What the human types to pick this successor: the mover's new
    location (team as comma-joined vertices)."""
    mover = family.mover_of(sid)
    st = family.state(succ)
    if mover == PURSUER:
        return ",".join(map(str, pursuer_tokens(family, st.pursuer_loc)))
    return str(st.evader_loc)


def _parse_start(family: GameFamily, raw: str | None, default_mover: int) -> int:
    if raw is None:
        return None
    parts = raw.split(",")
    if len(parts) not in (2, 3):
        raise CliInputError("--start must be 'P,E' or 'P,E,M'")
    try:
        nums = [int(x) for x in parts]
    except ValueError:
        raise CliInputError(f"--start must be integers, got {raw!r}")
    mover = nums[2] if len(nums) == 3 else default_mover
    try:
        return family.state_id(nums[0], nums[1], mover)
    except ValueError as exc:
        raise CliInputError(str(exc))


def cmd_play(args) -> int:
    family = load_family(args)
    labels = vl_solve(family)
    sigma1, sigma2 = optimal_strategies(family, labels)
    human_side = args.side
    machine_side = EVADER if human_side == PURSUER else PURSUER
    machine = sigma1 if machine_side == PURSUER else sigma2

    start = _parse_start(family, args.start, family.metadata.get("initial_mover", 1))
    if start is None:
        placement = placement_minimax(family, labels)
        p = placement.cop_placement
        start = family.state_id(p, placement.robber_best_response[p], PURSUER)
    horizon = args.max_turns if args.max_turns is not None else 2 * family.regular_count

    print(f"you play {'pursuer' if human_side == PURSUER else 'evader'}; "
          f"the machine answers with its optimal strategy")
    print(f"start: state {start} {_describe_state(family, start)} "
          f"value {encode_value(labels.value[start])}")

    states = [start]
    while True:
        current = states[-1]
        turn = len(states) - 1
        if family.is_capture(current):
            print(f"captured at turn {turn}")
            return EXIT_OK
        if turn >= horizon:
            print(f"evasion certified: {turn} turns without capture")
            return EXIT_OK
        if family.mover_of(current) == machine_side:
            nxt = machine.move(current)
            states.append(nxt)
            print(
                f"[turn {turn}] machine moves to state {nxt} "
                f"{_describe_state(family, nxt)} value {encode_value(labels.value[nxt])}"
            )
            continue

        succs = family.successors(current)
        keys = {}
        print(f"[turn {turn}] {_describe_state(family, current)} -- your move:")
        for t in succs:
            key = _move_key(family, current, t)
            keys[key] = t
            marker = ""
            table = sigma1 if human_side == PURSUER else sigma2
            if table.choice.get(current) == t:
                marker = "  (optimal)"
            print(f"  {key} -> state {t}, value {encode_value(labels.value[t])}{marker}")
        while True:
            try:
                raw = input("move> ").strip()
            except EOFError:
                print("stdin closed; leaving the game", file=sys.stderr)
                return EXIT_INPUT
            if raw in keys:
                states.append(keys[raw])
                break
            print(f"no such move {raw!r}; choose one of: {', '.join(keys)}")


def cmd_serve(args) -> int:
    family = load_family(args)
    labels = vl_solve(family)
    strategies = optimal_strategies(family, labels)
    game = SolvedGame(family, labels, strategies)
    try:
        server = make_server(game, host=args.host, port=args.port, ui_dir=args.ui)
    except OSError as exc:
        print(f"cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return EXIT_ENV
    print(f"serving {args.input} on http://{args.host}:{server.server_address[1]}/", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "solve": cmd_solve,
        "classify": cmd_classify,
        "verify": cmd_verify,
        "export": cmd_export,
        "play": cmd_play,
        "serve": cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
