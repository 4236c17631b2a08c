"""Acceptance suite: one test per release criterion, exact tolerances.

Every expected number here is either computed by an independent method in
the same test (exhaustive truncated-game minimax, attractor sets) or was
frozen from those oracles on tiny instances.  Run with ``-v`` (and ``-s``
for the summary lines) to see one verdict per criterion.
"""

import json
import random
import subprocess
import sys
import time

import pytest

from gcrsolver.family import EVADER, INFINITY, PURSUER
from gcrsolver.graphs import complete_graph, cycle_graph, path_graph, petersen_graph
from gcrsolver.oracle import attractor_classify, oracle_values
from gcrsolver.play import best_response_value, capture_time, play_out, random_positional_strategy
from gcrsolver.solver import (
    check_optimality_equations,
    labels_to_document,
    optimal_strategies,
    placement_minimax,
    vl_solve,
)
from gcrsolver.variants import VariantSpec, build_family

from conftest import random_connected_graph

RANDOM_GRAPH_SEED = 1729
RANDOM_GRAPH_COUNT = 50
ORACLE_CAP = 2000


@pytest.fixture(scope="module")
def random_families():
    rng = random.Random(RANDOM_GRAPH_SEED)
    return [
        build_family(random_connected_graph(rng, 3, 6), VariantSpec("classic"))
        for _ in range(RANDOM_GRAPH_COUNT)
    ]


@pytest.fixture(scope="module")
def named_families(random_families):
    named = {
        "P3": build_family(path_graph(3), VariantSpec("classic")),
        "K2": build_family(complete_graph(2), VariantSpec("classic")),
        "C4": build_family(cycle_graph(4), VariantSpec("classic")),
        "C5": build_family(cycle_graph(5), VariantSpec("classic")),
        "P3-dist1": build_family(path_graph(3), VariantSpec("distance_k", k=1)),
        "P4-speed2": build_family(path_graph(4), VariantSpec("speed2_pursuer")),
        "Petersen-1cop": build_family(petersen_graph(), VariantSpec("k_cops", cops=1)),
        "Petersen-2cop": build_family(petersen_graph(), VariantSpec("k_cops", cops=2)),
        "Petersen-3cop": build_family(petersen_graph(), VariantSpec("k_cops", cops=3)),
    }
    named.update({f"random-{i}": fam for i, fam in enumerate(random_families)})
    return named


def test_criterion_1_three_way_value_agreement(random_families):
    started = time.time()
    checked = 0
    for fam in random_families:
        labels = vl_solve(fam)
        oracle = oracle_values(fam)
        partition, _ = attractor_classify(fam)
        for sid in range(fam.state_count):
            assert labels.value[sid] == oracle[sid], (fam, sid)
        for sid in range(fam.regular_count):
            assert (labels.value[sid] != INFINITY) == (sid in partition.pwin), (fam, sid)
        checked += fam.state_count
    elapsed = time.time() - started
    assert elapsed < 60
    print(
        f"\nACCEPTANCE 1: three-way agreement on {len(random_families)} random graphs "
        f"({checked} states, {elapsed:.1f}s) PASS"
    )


def test_criterion_2_equations_and_finitization_on_the_matrix(named_families):
    for name, fam in named_families.items():
        labels = vl_solve(fam)
        assert check_optimality_equations(fam, labels) == [], name
        assert labels.value == labels.finitized_at, name
    print(f"\nACCEPTANCE 2: optimality equations + finitization index on "
          f"{len(named_families)} families PASS")


def test_criterion_3_attractor_levels_equal_labels(named_families):
    families = {n: f for n, f in named_families.items() if f.state_count <= ORACLE_CAP}
    assert len(families) > RANDOM_GRAPH_COUNT  # the random set plus the small named ones
    for name, fam in families.items():
        labels = vl_solve(fam)
        membership = attractor_classify(fam)[1].membership()
        for sid in range(fam.regular_count):
            if labels.value[sid] == INFINITY:
                assert sid not in membership, (name, sid)
            else:
                assert membership[sid] == labels.value[sid], (name, sid)
    print(f"\nACCEPTANCE 3: attractor level == label on {len(families)} capped families PASS")


def test_criterion_4_saddle_point_and_random_exploitation(named_families):
    started = time.time()
    rng = random.Random(RANDOM_GRAPH_SEED)
    plays = 0
    for name in ("P3", "K2", "C4", "C5"):
        fam = named_families[name]
        labels = vl_solve(fam)
        sigma1, sigma2 = optimal_strategies(fam, labels)
        for sid in range(fam.regular_count):
            assert best_response_value(fam, sigma1, sid) == labels.value[sid], (name, sid)
            assert best_response_value(fam, sigma2, sid) == labels.value[sid], (name, sid)

        horizon = 2 * fam.regular_count
        infinite_states = [
            s for s in range(fam.regular_count) if labels.value[s] == INFINITY
        ]
        pursuers = [
            random_positional_strategy(fam, PURSUER, rng) for _ in range(1000)
        ]
        for sid in infinite_states:
            for adversary in pursuers:
                h = play_out(fam, adversary, sigma2, sid, max_turns=horizon)
                assert h.truncated, (name, sid)
                assert capture_time(fam, h) == INFINITY, (name, sid)
                plays += 1
    elapsed = time.time() - started
    assert elapsed < 30
    print(
        f"\nACCEPTANCE 4: saddle point exact; evader survived {plays} random-pursuer "
        f"games ({elapsed:.1f}s) PASS"
    )


def test_criterion_5_derived_golden_values(named_families):
    p3 = named_families["P3"]
    labels = vl_solve(p3)
    placement = placement_minimax(p3, labels)
    assert placement.value == 1
    assert placement.cop_placement == 1  # center vertex of the path
    assert labels.value[p3.state_id(0, 2, PURSUER)] == 3

    # K2: pursuer-to-move off-diagonal states have value 1; the whole table
    # is pinned by the truncated-game oracle (evader-to-move states get 2,
    # a consequence of the always-legal stay move).
    k2 = named_families["K2"]
    k2_labels = vl_solve(k2)
    assert k2_labels.value == oracle_values(k2)
    for p, e in ((0, 1), (1, 0)):
        assert k2_labels.value[k2.state_id(p, e, PURSUER)] == 1

    for name in ("C4", "C5"):
        fam = named_families[name]
        assert placement_minimax(fam, vl_solve(fam)).value == INFINITY, name

    for name, expect_finite in (
        ("Petersen-1cop", False),
        ("Petersen-2cop", False),
    ):
        fam = named_families[name]
        value = placement_minimax(fam, vl_solve(fam)).value
        assert (value != INFINITY) == expect_finite, name

    started = time.time()
    pet3 = build_family(petersen_graph(), VariantSpec("k_cops", cops=3))
    pet3_labels = vl_solve(pet3)
    solve_elapsed = time.time() - started
    assert solve_elapsed < 10
    assert pet3.state_count == 20001
    value = placement_minimax(pet3, pet3_labels).value
    assert value != INFINITY
    print(
        f"\nACCEPTANCE 5: golden values exact; Petersen 3-cop ({pet3.state_count} states) "
        f"solved in {solve_elapsed:.1f}s, placement value {value} PASS"
    )


def test_criterion_6_variant_degeneracies():
    for graph in (path_graph(3), cycle_graph(5), petersen_graph()):
        classic = build_family(graph, VariantSpec("classic"))
        d0 = build_family(graph, VariantSpec("distance_k", k=0))
        c1 = build_family(graph, VariantSpec("k_cops", cops=1))
        assert d0.same_structure(classic)
        assert c1.same_structure(classic)
        reference = json.dumps(labels_to_document(classic, vl_solve(classic)))
        assert json.dumps(labels_to_document(d0, vl_solve(d0))) == reference
        assert json.dumps(labels_to_document(c1, vl_solve(c1))) == reference
    print("\nACCEPTANCE 6: distance-0 and 1-cop teams byte-match classic PASS")


def test_criterion_7_cli_determinism(tmp_path):
    graph = tmp_path / "graph.edges"
    graph.write_text("4 undirected\n0 1\n1 2\n2 3\n0 3\n")
    permuted = tmp_path / "permuted.edges"
    permuted.write_text("4 undirected\n2 3\n0 3\n1 2\n0 1\n")

    def solve(path):
        res = subprocess.run(
            [sys.executable, "-m", "gcrsolver", "solve", str(path)],
            capture_output=True,
            text=True,
            timeout=120,
        )
        assert res.returncode == 0
        return res.stdout

    first, second = solve(graph), solve(graph)
    assert first == second
    assert json.loads(solve(permuted))["label_table"] == json.loads(first)["label_table"]
    print("\nACCEPTANCE 7: byte-identical reruns; labels invariant under edge order PASS")
