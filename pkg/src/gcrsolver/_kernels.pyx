# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled label propagation kernel.

Mirror of ``_kernels_py.vl_label``; same inputs, bit-identical outputs.
"""

from libc.stdlib cimport free, malloc

BACKEND = "cython"


def vl_label(int[:] indptr, int[:] succ, const unsigned char[:] capture,
             int[:] value, int[:] fin) -> int:
    """Iterated min/max labeling to fixpoint; see the Python kernel docs."""
    cdef Py_ssize_t n = value.shape[0]
    cdef Py_ssize_t tau = n - 1
    cdef Py_ssize_t s, j, lo, hi, t
    cdef int v, best, worst
    cdef Py_ssize_t n_active = 0, n_pend = 0, i, keep
    cdef int iterations = 0

    cdef Py_ssize_t *active = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t *pend_state = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    cdef int *pend_value = <int *> malloc(n * sizeof(int))
    if active == NULL or pend_state == NULL or pend_value == NULL:
        free(active); free(pend_state); free(pend_value)
        raise MemoryError()

    try:
        for s in range(tau):
            if capture[s]:
                value[s] = 0
                fin[s] = 0
            else:
                value[s] = -1
                fin[s] = -1
                active[n_active] = s
                n_active += 1
        value[tau] = 0
        fin[tau] = 0

        while True:
            iterations += 1
            n_pend = 0
            for i in range(n_active):
                s = active[i]
                lo = indptr[s]
                hi = indptr[s + 1]
                if s % 2 == 0:
                    best = -1
                    for j in range(lo, hi):
                        v = value[succ[j]]
                        if v >= 0 and (best < 0 or v < best):
                            best = v
                    if best >= 0:
                        pend_state[n_pend] = s
                        pend_value[n_pend] = 1 + best
                        n_pend += 1
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
                        pend_state[n_pend] = s
                        pend_value[n_pend] = 1 + worst
                        n_pend += 1
            if n_pend == 0:
                return iterations
            for i in range(n_pend):
                s = pend_state[i]
                if value[s] >= 0:
                    raise AssertionError("a finite label must never be rewritten")
                value[s] = pend_value[i]
                fin[s] = iterations
            keep = 0
            for i in range(n_active):
                s = active[i]
                if value[s] < 0:
                    active[keep] = s
                    keep += 1
            n_active = keep
    finally:
        free(active)
        free(pend_state)
        free(pend_value)
