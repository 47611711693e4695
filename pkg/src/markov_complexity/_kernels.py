"""Compiled inner loops for the Graver completion.

These run on int64 arrays and bail out (returning ``None``) as soon as any
entry could leave the range where int64 arithmetic is exact; callers then
redo the work on Python integers.  The completed set can differ from the
pure Python path in redundant elements, but its conformally minimal part
is the same.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is an optional accelerator
    njit = None

SAFE = 1 << 40
MAX_COLUMNS = 62   # support masks live in one int64

OK, OVERFLOW, FULL = 0, 1, 2


def _complete_impl(seed, cap):
    # One representative per +/- pair; both u + v and u - v are reduced.
    n = seed.shape[1]
    size = max(16, 2 * seed.shape[0])
    R = np.zeros((size, n), dtype=np.int64)
    P = np.zeros(size, dtype=np.int64)
    M = np.zeros(size, dtype=np.int64)
    order = np.zeros(size, dtype=np.int64)   # indices sorted by 1-norm
    norm = np.zeros(size, dtype=np.int64)
    N = 0
    s = np.zeros(n, dtype=np.int64)
    for k in range(seed.shape[0]):
        for c in range(n):
            s[c] = seed[k, c]
        status, nz = _normal_form(R, P, M, order, N, s)
        if status != OK:
            return status, R, N
        if nz:
            R, P, M, order, norm, N = _insert(R, P, M, order, norm, N, s)
    i = 0
    while i < N:
        for j in range(i):
            for sg in (1, -1):
                if sg == 1:
                    cancel = (P[i] & M[j]) | (M[i] & P[j])
                else:
                    cancel = (P[i] & P[j]) | (M[i] & M[j])
                if cancel == 0:
                    continue
                zero = True
                for c in range(n):
                    s[c] = R[i, c] + sg * R[j, c]
                    if s[c] != 0:
                        zero = False
                if zero:
                    continue
                status, nz = _normal_form(R, P, M, order, N, s)
                if status != OK:
                    return status, R, N
                if nz:
                    if 2 * N >= cap:
                        return FULL, R, N
                    R, P, M, order, norm, N = _insert(R, P, M, order, norm, N, s)
        i += 1
    return OK, R, N


def _insert(R, P, M, order, norm, N, s):
    if N == R.shape[0]:
        size = 2 * N
        R2 = np.zeros((size, R.shape[1]), dtype=np.int64)
        R2[:N] = R[:N]
        P2 = np.zeros(size, dtype=np.int64)
        P2[:N] = P[:N]
        M2 = np.zeros(size, dtype=np.int64)
        M2[:N] = M[:N]
        o2 = np.zeros(size, dtype=np.int64)
        o2[:N] = order[:N]
        n2 = np.zeros(size, dtype=np.int64)
        n2[:N] = norm[:N]
        R, P, M, order, norm = R2, P2, M2, o2, n2
    pm = 0
    nm = 0
    nrm = 0
    for c in range(s.shape[0]):
        R[N, c] = s[c]
        if s[c] > 0:
            pm |= 1 << c
            nrm += s[c]
        elif s[c] < 0:
            nm |= 1 << c
            nrm -= s[c]
    P[N] = pm
    M[N] = nm
    norm[N] = nrm
    pos = N
    while pos > 0 and norm[order[pos - 1]] > nrm:
        order[pos] = order[pos - 1]
        pos -= 1
    order[pos] = N
    return R, P, M, order, norm, N + 1


def _below(R, k, sign, s):
    for c in range(s.shape[0]):
        g = sign * R[k, c]
        if g > 0:
            if s[c] < g:
                return False
        elif g < 0:
            if s[c] > g:
                return False
    return True


def _normal_form(R, P, M, order, N, s):
    """Reduce ``s`` in place by +/- the stored rows; True if a nonzero remainder is left."""
    n = s.shape[0]
    while True:
        sp = 0
        sn = 0
        for c in range(n):
            if s[c] > 0:
                sp |= 1 << c
                if s[c] > SAFE:
                    return OVERFLOW, False
            elif s[c] < 0:
                sn |= 1 << c
                if s[c] < -SAFE:
                    return OVERFLOW, False
        if sp == 0 and sn == 0:
            return OK, False
        found = -1
        sign = 0
        for t in range(N):
            k = order[t]
            if (P[k] & ~sp) == 0 and (M[k] & ~sn) == 0 and _below(R, k, 1, s):
                found = k
                sign = 1
                break
            if (M[k] & ~sp) == 0 and (P[k] & ~sn) == 0 and _below(R, k, -1, s):
                found = k
                sign = -1
                break
        if found < 0:
            return OK, True
        for c in range(n):
            s[c] -= sign * R[found, c]


def _minimal_impl(V):
    """Rows of ``V`` (sorted by norm) with no earlier row conformally below them."""
    N, n = V.shape
    keep = np.zeros(N, dtype=np.bool_)
    idx = np.zeros(N, dtype=np.int64)
    K = 0
    for r in range(N):
        red = False
        for t in range(K):
            k = idx[t]
            ok = True
            for c in range(n):
                g = V[k, c]
                v = V[r, c]
                if g > 0:
                    if v < g:
                        ok = False
                        break
                elif g < 0:
                    if v > g:
                        ok = False
                        break
            if ok:
                red = True
                break
        if not red:
            keep[r] = True
            idx[K] = r
            K += 1
    return keep


if njit is not None:
    _below = njit(cache=True)(_below)
    _normal_form = njit(cache=True)(_normal_form)
    _insert = njit(cache=True)(_insert)
    _complete_impl = njit(cache=True)(_complete_impl)
    _minimal_impl = njit(cache=True)(_minimal_impl)


def complete(seed_vectors, cap):
    """Run the completion on int64; ``None`` if int64 is not provably exact or numba is absent.

    Returns the completed set closed under negation, or ``"full"`` once it
    would exceed ``cap`` vectors.
    """
    if njit is None or not seed_vectors or len(seed_vectors[0]) > MAX_COLUMNS:
        return None
    if max(abs(x) for v in seed_vectors for x in v) > SAFE:
        return None
    seed = np.array(seed_vectors, dtype=np.int64)
    status, R, N = _complete_impl(seed, cap)
    if status == OVERFLOW:
        return None
    if status == FULL:
        return "full"
    reps = [tuple(int(x) for x in row) for row in R[:N]]
    return reps + [tuple(-x for x in v) for v in reps]


def minimal_mask(sorted_vectors):
    if njit is None or not sorted_vectors:
        return None
    if max(abs(x) for v in sorted_vectors for x in v) > SAFE:
        return None
    return _minimal_impl(np.array(sorted_vectors, dtype=np.int64))
