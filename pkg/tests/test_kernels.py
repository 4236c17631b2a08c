"""Both kernel backends must produce bit-identical labelings."""

import random
from array import array

import pytest

from gcrsolver.graphs import cycle_graph, petersen_graph
from gcrsolver.kernels import available_backends
from gcrsolver.variants import VariantSpec, build_family

from conftest import random_connected_graph

BACKENDS = available_backends()


def run_backend(mod, fam):
    n = fam.state_count
    value = array("i", bytes(4 * n))
    fin = array("i", bytes(4 * n))
    iters = mod.vl_label(fam.indptr, fam.succ, fam.capture_flags, value, fin)
    return list(value), list(fin), iters


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
def test_backends_agree_on_standard_families(p3, k2, c4, c5, p3_dist1, p4_speed2):
    fams = [p3, k2, c4, c5, p3_dist1, p4_speed2]
    fams.append(build_family(petersen_graph(), VariantSpec("k_cops", cops=2)))
    for fam in fams:
        results = [run_backend(mod, fam) for mod in BACKENDS.values()]
        assert results[0] == results[1]


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
def test_backends_agree_on_random_graphs():
    rng = random.Random(7342)
    for _ in range(15):
        fam = build_family(random_connected_graph(rng, 3, 7), VariantSpec("classic"))
        results = [run_backend(mod, fam) for mod in BACKENDS.values()]
        assert results[0] == results[1]


def test_python_kernel_matches_public_solver(c5):
    from gcrsolver._kernels_py import vl_label
    from gcrsolver.family import INFINITY
    from gcrsolver.solver import vl_solve

    n = c5.state_count
    value = array("i", bytes(4 * n))
    fin = array("i", bytes(4 * n))
    iters = vl_label(c5.indptr, c5.succ, c5.capture_flags, value, fin)
    labels = vl_solve(c5)
    assert [INFINITY if v < 0 else v for v in value] == labels.value
    assert iters == labels.iterations_run
