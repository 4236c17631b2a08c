"""Pure-Python label propagation kernel.

Same contract as the compiled module in ``_kernels.pyx``; outputs are
bit-identical.  Values use -1 for "not yet finite": the caller maps -1 to
the public infinite value.

The sweep keeps an active list of still-unlabeled states, so total work is
proportional to the edges of states that have not stabilized rather than
the whole family per sweep.
"""

BACKEND = "python"


def vl_label(indptr, succ, capture, value, fin) -> int:
    """Iterated min/max labeling to fixpoint.

    ``value``/``fin`` are caller-allocated arrays of length n (terminal
    last); filled in place.  Returns the number of sweeps run, counting the
    final sweep that changes nothing.

    Sweep semantics: a state with an even id minimizes over successors, an
    odd id maximizes; finite labels are frozen; each sweep reads only the
    previous sweep's labels (updates are buffered and applied after the
    pass).
    """
    n = len(value)
    tau = n - 1
    for s in range(tau):
        if capture[s]:
            value[s] = 0
            fin[s] = 0
        else:
            value[s] = -1
            fin[s] = -1
    value[tau] = 0
    fin[tau] = 0

    active = [s for s in range(tau) if value[s] < 0]
    iterations = 0
    while True:
        iterations += 1
        pend_state = []
        pend_value = []
        for s in active:
            lo, hi = indptr[s], indptr[s + 1]
            if s % 2 == 0:
                best = -1
                for j in range(lo, hi):
                    v = value[succ[j]]
                    if v >= 0 and (best < 0 or v < best):
                        best = v
                if best >= 0:
                    pend_state.append(s)
                    pend_value.append(1 + best)
            else:
                worst = -1
                for j in range(lo, hi):
                    v = value[succ[j]]
                    if v < 0:
                        worst = -2
                        break
                    if v > worst:
                        worst = v
                if worst >= 0:
                    pend_state.append(s)
                    pend_value.append(1 + worst)
        if not pend_state:
            return iterations
        for s, v in zip(pend_state, pend_value):
            assert value[s] < 0, "a finite label must never be rewritten"
            value[s] = v
            fin[s] = iterations
        pending = set(pend_state)
        active = [s for s in active if s not in pending]
