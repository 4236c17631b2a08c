"""Compare the compiled and pure-Python labeling kernels.

Usage: python benchmarks/bench_backends.py [--repeats N]

Prints per-instance best-of-N wall times for every available backend and
verifies the outputs are bit-identical while at it.
"""

import argparse
import time
from array import array

from gcrsolver.graphs import cycle_graph, petersen_graph
from gcrsolver.kernels import available_backends
from gcrsolver.variants import Graph, VariantSpec, build_family


def instances():
    yield "C100 classic", build_family(cycle_graph(100), VariantSpec("classic"))
    grid = Graph(
        36,
        [(r * 6 + c, r * 6 + c + 1) for r in range(6) for c in range(5)]
        + [(r * 6 + c, (r + 1) * 6 + c) for r in range(5) for c in range(6)],
    )
    yield "6x6 grid classic", build_family(grid, VariantSpec("classic"))
    yield "Petersen 2 cops", build_family(petersen_graph(), VariantSpec("k_cops", cops=2))
    yield "Petersen 3 cops", build_family(petersen_graph(), VariantSpec("k_cops", cops=3))


def run(mod, fam):
    n = fam.state_count
    value = array("i", bytes(4 * n))
    fin = array("i", bytes(4 * n))
    started = time.perf_counter()
    mod.vl_label(fam.indptr, fam.succ, fam.capture_flags, value, fin)
    return time.perf_counter() - started, (bytes(value), bytes(fin))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    header = f"{'instance':24} {'states':>8} " + " ".join(f"{name:>12}" for name in backends)
    print(header)
    print("-" * len(header))
    for name, fam in instances():
        best = {}
        outputs = {}
        for backend, mod in backends.items():
            times = []
            for _ in range(args.repeats):
                elapsed, out = run(mod, fam)
                times.append(elapsed)
                outputs[backend] = out
            best[backend] = min(times)
        row = f"{name:24} {fam.state_count:>8} " + " ".join(
            f"{best[b] * 1000:>10.2f}ms" for b in backends
        )
        if len(set(outputs.values())) != 1:
            raise SystemExit(f"backend outputs differ on {name}!")
        print(row)
    if len(backends) == 2:
        print("outputs bit-identical across backends")


if __name__ == "__main__":
    main()
