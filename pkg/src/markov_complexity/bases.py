"""Fibers, Graver bases, minimal Markov bases and indispensability.

Vectors are tuples of Python ints.  Every set of moves that leaves this
module is a :class:`BasisSet`: sign-normalized (first nonzero coordinate
positive), deduplicated and sorted lexicographically.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence

from . import _kernels
from .intlin import (IntMatrix, InvalidInput, column_weights, integer_grading, kernel_basis, rank,
                     sign_normalize, vneg, vpos)

DEFAULT_FIBER_CAP = 10 ** 7
DEFAULT_GRAVER_CAP = 10 ** 6


class NotPositivelyGraded(InvalidInput):
    """``Ker_Z(A)`` contains a nonzero nonnegative vector, so fibers may be infinite."""


class ResourceLimit(RuntimeError):
    """A configured size cap was exceeded; results are never silently truncated."""


KINDS = ("graver", "markov-minimal", "markov", "indispensable")


@dataclass(frozen=True)
class BasisSet:
    matrix: IntMatrix
    kind: str
    elements: tuple

    @classmethod
    def build(cls, matrix: IntMatrix, kind: str, vectors: Iterable[Sequence[int]]) -> "BasisSet":
        if kind not in KINDS:
            raise InvalidInput(f"unknown basis kind {kind!r}")
        elems = set()
        for v in vectors:
            v = tuple(v)
            if len(v) != matrix.n:
                raise InvalidInput(f"vector {v} has wrong length for a {matrix.m}x{matrix.n} matrix")
            if not any(v):
                raise InvalidInput("basis elements must be nonzero")
            if any(matrix.apply(v)):
                raise InvalidInput(f"{v} is not in the kernel")
            elems.add(sign_normalize(v))
        return cls(matrix, kind, tuple(sorted(elems)))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, v):
        return sign_normalize(tuple(v)) in set(self.elements)

    def as_set(self) -> set:
        return set(self.elements)

    def without(self, v) -> "BasisSet":
        v = sign_normalize(tuple(v))
        return BasisSet(self.matrix, self.kind, tuple(e for e in self.elements if e != v))

    def format(self) -> str:
        head = f"# kind={self.kind} matrix={self.matrix.digest()} shape={self.matrix.m}x{self.matrix.n}\n"
        return head + "".join(",".join(map(str, e)) + "\n" for e in self.elements)


def parse_basis(text: str, matrix: IntMatrix, kind: str = "markov") -> BasisSet:
    """Read one comma-separated vector per line; ``#`` lines are comments."""
    vecs = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        try:
            vecs.append(tuple(int(x) for x in ln.split(",")))
        except ValueError:
            raise InvalidInput(f"bad basis line {ln!r}") from None
    return BasisSet.build(matrix, kind, vecs)


# ---------------------------------------------------------------------------
# Conformal predicates
# ---------------------------------------------------------------------------

def conformal_leq(v: Sequence[int], u: Sequence[int]) -> bool:
    """``v`` is conformally below ``u``: ``v+ <= u+`` and ``v- <= u-``."""
    if len(v) != len(u):
        raise InvalidInput("length mismatch")
    for a, b in zip(v, u):
        if a > 0:
            if b < a:
                return False
        elif a < 0:
            if b > a:
                return False
    return True


def is_semiconformal_sum(u, v, w) -> bool:
    """``u = v + w`` with ``v_i > 0 => w_i >= 0`` and ``w_i < 0 => v_i <= 0``."""
    if not (len(u) == len(v) == len(w)):
        raise InvalidInput("length mismatch")
    for a, b, c in zip(u, v, w):
        if a != b + c:
            return False
        if b > 0 and c < 0:
            return False
    return True


def has_proper_semiconformal_decomposition(A: IntMatrix, u: Sequence[int]) -> bool:
    """Exhaustive search for ``u = v +sc w`` with ``v, w`` nonzero kernel vectors.

    The sign rules force ``v+ <= u+``, so ``deg(v-) = deg(v+) <= deg(u+)``
    and the grading bounds every negative entry of ``v``.
    """
    u = tuple(u)
    y = integer_grading(A)
    if y is None:
        raise NotPositivelyGraded("semiconformal search needs a positively graded matrix")
    w_col = column_weights(A, y)
    budget = sum(wj * x for wj, x in zip(w_col, vpos(u)))
    ranges = [(-(budget // wj), max(x, 0)) for wj, x in zip(w_col, u)]
    for v in _kernel_points_in_box(A, ranges):
        if not any(v) or v == u:
            continue
        w = tuple(a - b for a, b in zip(u, v))
        if is_semiconformal_sum(u, v, w):
            return True
    return False


def _kernel_points_in_box(A: IntMatrix, ranges) -> Iterator[tuple]:
    K = kernel_basis(A).basis_rows
    n = A.n
    if not K:
        if all(lo <= 0 <= hi for lo, hi in ranges):
            yield (0,) * n
        return
    pivots = [next(j for j, x in enumerate(r) if x) for r in K]

    def rec(i, partial):
        if i == len(K):
            if all(lo <= x <= hi for x, (lo, hi) in zip(partial, ranges)):
                yield tuple(partial)
            return
        p = pivots[i]
        c, piv = partial[p], K[i][p]
        lo, hi = ranges[p]
        for lam in range(-((c - lo) // piv), (hi - c) // piv + 1):
            nxt = [a + lam * b for a, b in zip(partial, K[i])]
            yield from rec(i + 1, nxt)

    yield from rec(0, [0] * n)


# ---------------------------------------------------------------------------
# Fibers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Fiber:
    matrix: IntMatrix
    degree: tuple
    members: frozenset

    def __len__(self):
        return len(self.members)


class _FiberEnumerator:
    """Depth-first enumeration of ``{t in N^n : A t = b}`` for one matrix.

    A set of ``rank(A)`` basic columns is solved exactly at the leaves; the
    remaining free columns are branched on.  Each branch interval comes from
    two necessary conditions over the still-unassigned columns: the grading
    budget ``y . b_res`` stays nonnegative, and every residual row entry lies
    between budget times the smallest and largest ``a_il / w_l`` ratios.
    """

    def __init__(self, A: IntMatrix):
        y = integer_grading(A)
        if y is None:
            raise NotPositivelyGraded("matrix is not positively graded; fibers can be infinite")
        self.A = A
        self.y = y
        self.w = column_weights(A, y)
        m, n = A.shape
        cols = A.columns()
        # basic columns: greedy from the right so the free columns come first
        basic: list = []
        for j in reversed(range(n)):
            if rank(IntMatrix([cols[k] for k in basic + [j]]).transpose()) > len(basic):
                basic.append(j)
        basic.sort()
        self.basic = basic
        self.free = [j for j in range(n) if j not in basic]
        d = len(basic)
        # independent rows of the basic submatrix
        sub = IntMatrix([[A[i, j] for j in basic] for i in range(m)], ncols=d)
        R: list = []
        for i in range(m):
            if rank(IntMatrix([sub.rows[k] for k in R + [i]], ncols=d)) > len(R):
                R.append(i)
        self.R = R
        Bmat = [[Fraction(A[i, j]) for j in basic] for i in R]
        inv = _rational_inverse(Bmat)
        den = 1
        for row in inv:
            for f in row:
                den = den * f.denominator // gcd(den, f.denominator)
        self.det = den
        self.adj = [[int(f * den) for f in row] for row in inv]
        # per-depth ratio bounds over the columns still unassigned after the branch
        self.levels = []
        order = self.free
        for k, j in enumerate(order):
            rest = order[k + 1:] + basic
            rows = []
            for i in range(m):
                coeffs = [A[i, l] for l in rest]
                if not any(coeffs) and not A[i, j]:
                    continue
                ratios = [Fraction(A[i, l], self.w[l]) for l in rest] or [Fraction(0)]
                lo, hi = min(ratios), max(ratios)
                rows.append((i, A[i, j], lo.numerator, lo.denominator, hi.numerator, hi.denominator))
            self.levels.append((j, self.w[j], rows))

    def enumerate(self, b: Sequence[int], cap: int = DEFAULT_FIBER_CAP,
                  stop_after: Optional[int] = None) -> list:
        A, n = self.A, self.A.n
        b = list(b)
        if len(b) != A.m:
            raise InvalidInput("degree vector has wrong length")
        budget = sum(a * c for a, c in zip(self.y, b))
        out: list = []
        if budget < 0:
            return out
        cols = A.columns()
        t = [0] * n
        levels, nf = self.levels, len(self.free)
        basic, R, adj, det = self.basic, self.R, self.adj, self.det

        def leaf(res):
            rhs = [res[i] for i in R]
            for idx, arow in enumerate(adj):
                num = sum(a * r for a, r in zip(arow, rhs))
                if num < 0 or num % det:
                    return False
                t[basic[idx]] = num // det
            if any(res[i] != sum(A[i, j] * t[j] for j in basic) for i in range(A.m)):
                return False
            return True

        def rec(k, res, B):
            if k == nf:
                if leaf(res):
                    out.append(tuple(t))
                    if len(out) > cap:
                        raise ResourceLimit(f"fiber exceeds {cap} members")
                    if stop_after is not None and len(out) >= stop_after:
                        return True
                return False
            j, wj, rows = levels[k]
            lo_x, hi_x = 0, B // wj
            for i, a, pl, ql, ph, qh in rows:
                r = res[i]
                # q_l (r - a x) >= p_l (B - w x)   <=>   x (p_l w - q_l a) >= p_l B - q_l r
                lo_x, hi_x = _tighten(lo_x, hi_x, pl * wj - ql * a, pl * B - ql * r)
                # q_h (r - a x) <= p_h (B - w x)   <=>   x (q_h a - p_h w) >= q_h r - p_h B
                lo_x, hi_x = _tighten(lo_x, hi_x, qh * a - ph * wj, qh * r - ph * B)
                if lo_x > hi_x:
                    return False
            col = cols[j]
            for x in range(lo_x, hi_x + 1):
                t[j] = x
                nres = [r - c * x for r, c in zip(res, col)] if x else res
                if rec(k + 1, nres, B - wj * x):
                    return True
            t[j] = 0
            return False

        rec(0, b, budget)
        return out


def _tighten(lo: int, hi: int, coef: int, rhs: int):
    """Intersect ``[lo, hi]`` with ``{x : coef * x >= rhs}``."""
    if coef > 0:
        lo = max(lo, -((-rhs) // coef))
    elif coef < 0:
        hi = min(hi, (-rhs) // (-coef))
    elif rhs > 0:
        hi = lo - 1
    return lo, hi


def _rational_inverse(M):
    n = len(M)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


@lru_cache(maxsize=64)
def _enumerator(A: IntMatrix) -> _FiberEnumerator:
    return _FiberEnumerator(A)


def fiber_by_degree(A: IntMatrix, b: Sequence[int], cap: int = DEFAULT_FIBER_CAP,
                    stop_after: Optional[int] = None) -> Fiber:
    """All ``t >= 0`` with ``A t = b`` (or the first ``stop_after`` found)."""
    members = _enumerator(A).enumerate(tuple(b), cap=cap, stop_after=stop_after)
    return Fiber(A, tuple(b), frozenset(members))


def fiber_of(A: IntMatrix, u: Sequence[int], cap: int = DEFAULT_FIBER_CAP) -> Fiber:
    """Fiber through ``u+`` for a kernel vector ``u``."""
    if any(A.apply(u)):
        raise InvalidInput(f"{tuple(u)} is not in the kernel")
    return fiber_by_degree(A, A.apply(vpos(u)), cap=cap)


def degree(A: IntMatrix, u: Sequence[int]) -> tuple:
    return A.apply(vpos(u))


# ---------------------------------------------------------------------------
# Graver bases
# ---------------------------------------------------------------------------

def _masks(v) -> tuple:
    pm = nm = 0
    for i, x in enumerate(v):
        if x > 0:
            pm |= 1 << i
        elif x < 0:
            nm |= 1 << i
    return pm, nm


class _ReductionSet:
    """Growing list of vectors with a fast conformal-reducer lookup."""

    def __init__(self):
        self.vecs: list = []
        self.masks: list = []
        self.members: set = set()

    def add(self, v):
        self.vecs.append(v)
        self.masks.append(_masks(v))
        self.members.add(v)

    def reducer(self, v, pm, nm):
        for g, (gp, gn) in zip(self.vecs, self.masks):
            if gp & ~pm or gn & ~nm:
                continue
            if conformal_leq(g, v):
                return g
        return None

    def normal_form(self, v):
        pm, nm = _masks(v)
        while pm or nm:
            g = self.reducer(v, pm, nm)
            if g is None:
                return v
            v = tuple(a - b for a, b in zip(v, g))
            pm, nm = _masks(v)
        return None


def graver(A: IntMatrix, cap: int = DEFAULT_GRAVER_CAP) -> BasisSet:
    """Graver basis by completion.

    Seeds with the kernel basis and its negation, then repeatedly adds the
    conformal normal form of pairwise sums (FIFO over newly inserted
    elements) until every sum reduces to zero.  The ``⊑``-minimal elements of
    the completed set form the Graver basis.
    """
    K = kernel_basis(A).basis_rows
    seed = [v for b in K for v in (tuple(b), tuple(-x for x in b))]
    completed = _kernels.complete([tuple(b) for b in K], 2 * cap)
    if completed == "full":
        raise ResourceLimit(f"Graver completion exceeds {cap} elements")
    if completed is None:
        completed = _complete_exact(seed, cap)
    minimal = _minimal_elements(completed)
    return BasisSet(A, "graver", tuple(sorted({sign_normalize(v) for v in minimal})))


def _complete_exact(seed: list, cap: int) -> list:
    G = _ReductionSet()
    queue: deque = deque()

    def insert(v):
        if len(G.vecs) >= 2 * cap:
            raise ResourceLimit(f"Graver completion exceeds {cap} elements")
        for g in G.vecs:
            queue.append((v, g))
        G.add(v)

    for v in seed:
        r = G.normal_form(v)
        if r is not None:
            insert(r)
    while queue:
        v, g = queue.popleft()
        # sign-compatible pairs sum to something v already reduces
        if all(a * c >= 0 for a, c in zip(v, g)):
            continue
        s = tuple(a + c for a, c in zip(v, g))
        if not any(s):
            continue
        r = G.normal_form(s)
        if r is not None:
            insert(r)
    return G.vecs


def _minimal_elements(vecs: list) -> list:
    by_norm = sorted(set(vecs), key=lambda v: (sum(map(abs, v)), v))
    mask = _kernels.minimal_mask(by_norm)
    if mask is not None:
        return [v for v, keep in zip(by_norm, mask) if keep]
    kept = _ReductionSet()
    for v in by_norm:
        pm, nm = _masks(v)
        if kept.reducer(v, pm, nm) is None:
            kept.add(v)
    return kept.vecs


def kernel_vectors_up_to_norm(A: IntMatrix, norm_cap: int) -> list:
    """All nonzero ``u`` in ``Ker_Z(A)`` with ``||u||_1 <= norm_cap``."""
    K = kernel_basis(A).basis_rows
    if not K:
        return []
    n = A.n
    pivots = [next(j for j, x in enumerate(r) if x) for r in K]
    out = []

    def rec(i, partial, used):
        if i == len(K):
            if any(partial) and sum(map(abs, partial)) <= norm_cap:
                out.append(tuple(partial))
            return
        p = pivots[i]
        c, piv = partial[p], K[i][p]
        room = norm_cap - used
        # |c + lam * piv| <= room
        for lam in range(-((room + c) // piv), (room - c) // piv + 1):
            nxt = [a + lam * x for a, x in zip(partial, K[i])]
            rec(i + 1, nxt, used + abs(nxt[p]))

    rec(0, [0] * n, 0)
    return out


def graver_bruteforce(A: IntMatrix, norm_cap: int) -> BasisSet:
    """Graver basis by exhaustion over the 1-norm ball of radius ``norm_cap``.

    Vectors are visited by increasing norm; one is kept when no previously
    kept vector lies conformally below it.
    """
    vecs = kernel_vectors_up_to_norm(A, norm_cap)
    return BasisSet(A, "graver", tuple(sorted({sign_normalize(v) for v in _minimal_elements(vecs)})))


def circuits(A: IntMatrix) -> list:
    """Support-minimal kernel vectors, each as a sign-normalized primitive vector."""
    d = rank(A)
    n = A.n
    found = set()
    for S in itertools.combinations(range(n), min(d + 1, n)):
        sub = A.select_columns(S)
        K = kernel_basis(sub).basis_rows
        if len(K) != 1:
            continue
        v = [0] * n
        for j, x in zip(S, K[0]):
            v[j] = x
        found.add(sign_normalize(tuple(v)))
    return sorted(found)


def graver_norm_cap(A: IntMatrix) -> int:
    """A 1-norm no Graver element exceeds: ``(n - rank) * max circuit norm``.

    Any Graver element that is not a circuit is a conformal combination of at
    most ``n - rank`` circuits with coefficients in ``[0, 1)``.
    """
    cs = circuits(A)
    if not cs:
        return 0
    return max(1, A.n - rank(A)) * max(sum(map(abs, c)) for c in cs)


# ---------------------------------------------------------------------------
# Markov bases
# ---------------------------------------------------------------------------

def _moves(S: Iterable[Sequence[int]]) -> list:
    out = []
    for s in S:
        for v in (tuple(s), tuple(-x for x in s)):
            p = vpos(v)
            out.append((v, p, _masks(p)[0]))
    return out


def _neighbours(t: tuple, moves: list):
    tm = _masks(t)[0]
    for v, p, pm in moves:
        if pm & ~tm:
            continue
        if all(a <= b for a, b in zip(p, t)):
            yield tuple(a - c for a, c in zip(t, v))


def _connected(start: tuple, goal: tuple, moves: list, cap: int) -> bool:
    """Whether ``moves`` join ``start`` and ``goal`` inside their common fiber.

    Searches from both ends, always growing the smaller frontier, and stops as
    soon as one side's component is exhausted.
    """
    if start == goal:
        return True
    seen = [{start}, {goal}]
    frontier = [[start], [goal]]
    while frontier[0] and frontier[1]:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        other = seen[1 - side]
        nxt = []
        for t in frontier[side]:
            for w in _neighbours(t, moves):
                if w in other:
                    return True
                if w not in seen[side]:
                    seen[side].add(w)
                    nxt.append(w)
        if len(seen[0]) + len(seen[1]) > cap:
            raise ResourceLimit(f"fiber search exceeds {cap} points")
        frontier[side] = nxt
    return False


def _degree_groups(A: IntMatrix, elements: Iterable[Sequence[int]], y) -> list:
    groups: dict = {}
    for g in elements:
        groups.setdefault(degree(A, g), []).append(g)
    key = lambda b: (sum(a * c for a, c in zip(y, b)), b)
    return [(b, groups[b]) for b in sorted(groups, key=key)]


def minimal_markov(A: IntMatrix, fiber_cap: int = DEFAULT_FIBER_CAP,
                   graver_cap: int = DEFAULT_GRAVER_CAP, graver_basis: Optional[BasisSet] = None) -> BasisSet:
    """A minimal Markov basis extracted from the Graver basis degree by degree.

    Graver elements are visited by increasing degree under the grading
    functional, in canonical order within a degree.  An element ``g`` is kept
    exactly when the moves kept so far do not already join ``g+`` and ``g-``
    in their fiber.  Every move kept in a lower degree acts on the fiber, so
    this yields the same components as building the whole fiber graph.
    """
    y = integer_grading(A)
    if y is None:
        raise NotPositivelyGraded("minimal Markov bases need a positively graded matrix")
    G = graver_basis if graver_basis is not None else graver(A, cap=graver_cap)
    selected: list = []
    moves: list = []
    for _, elems in _degree_groups(A, G.elements, y):
        for g in elems:
            if not _connected(vpos(g), vneg(g), moves, fiber_cap):
                selected.append(g)
                moves.extend(_moves([g]))
    return BasisSet(A, "markov-minimal", tuple(sorted(selected)))


def is_markov_basis(A: IntMatrix, S: BasisSet, fiber_cap: int = DEFAULT_FIBER_CAP,
                    graver_basis: Optional[BasisSet] = None) -> bool:
    """Connectivity of every fiber under the moves ``±S``.

    The Graver basis connects every fiber, and each Graver edge is a
    nonnegative translate of some ``g+ -- g-``.  So it suffices that ``±S``
    joins ``g+`` and ``g-`` for every Graver element ``g``.
    """
    if integer_grading(A) is None:
        raise NotPositivelyGraded("Markov basis check needs a positively graded matrix")
    for v in S.elements:
        if any(A.apply(v)):
            raise InvalidInput(f"{v} is not in the kernel")
    G = graver_basis if graver_basis is not None else graver(A)
    moves = _moves(S.elements)
    return all(_connected(vpos(g), vneg(g), moves, fiber_cap) for g in G.elements)


def is_indispensable(A: IntMatrix, u: Sequence[int], fiber_cap: int = DEFAULT_FIBER_CAP) -> bool:
    """``u`` lies in every minimal Markov basis iff its fiber is exactly ``{u+, u-}``."""
    u = tuple(u)
    if not any(u):
        raise InvalidInput("the zero vector is never indispensable")
    if any(A.apply(u)):
        raise InvalidInput(f"{u} is not in the kernel")
    members = fiber_by_degree(A, degree(A, u), cap=fiber_cap, stop_after=3).members
    return members == {vpos(u), vneg(u)}


def indispensable_set(A: IntMatrix, fiber_cap: int = DEFAULT_FIBER_CAP,
                      graver_basis: Optional[BasisSet] = None) -> BasisSet:
    if integer_grading(A) is None:
        raise NotPositivelyGraded("indispensability needs a positively graded matrix")
    G = graver_basis if graver_basis is not None else graver(A)
    return BasisSet(A, "indispensable",
                    tuple(g for g in G.elements if is_indispensable(A, g, fiber_cap=fiber_cap)))
