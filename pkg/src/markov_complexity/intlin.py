"""Exact integer linear algebra.

Everything here works on Python integers, so entries never overflow.
Matrices are stored as tuples of row tuples inside :class:`IntMatrix`;
vectors are plain tuples of ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

IntVector = tuple  # tuple[int, ...]


class InvalidInput(ValueError):
    """Raised when an argument violates a documented precondition."""


class IntMatrix:
    """Dense integer matrix with arbitrary-precision entries (immutable)."""

    __slots__ = ("rows", "_ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: Optional[int] = None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        widths = {len(r) for r in data}
        if len(widths) > 1:
            raise InvalidInput(f"ragged matrix rows: lengths {sorted(widths)}")
        if ncols is not None and data and len(data[0]) != ncols:
            raise InvalidInput("column count mismatch")
        self.rows = data
        self._ncols = ncols if not data else len(data[0])

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(m)], ncols=n)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return self._ncols or 0

    @property
    def shape(self) -> tuple:
        return (self.m, self.n)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def column(self, j: int) -> IntVector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.n)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix([self.column(j) for j in range(self.n)], ncols=self.m)

    def apply(self, v: Sequence[int]) -> IntVector:
        """Matrix-vector product ``self @ v``."""
        if len(v) != self.n:
            raise InvalidInput(f"vector of length {len(v)} for {self.m}x{self.n} matrix")
        return tuple(sum(a * b for a, b in zip(row, v) if a and b) for row in self.rows)

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        cols = other.columns()
        return IntMatrix([[sum(a * b for a, b in zip(row, c)) for c in cols] for row in self.rows],
                         ncols=other.n)

    def max_abs(self) -> int:
        return max((abs(x) for r in self.rows for x in r), default=0)

    def select_columns(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[r[j] for j in idx] for r in self.rows], ncols=len(idx))

    def digest(self) -> str:
        import hashlib

        return hashlib.sha256(format_matrix(self).encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# Hermite normal form
# ---------------------------------------------------------------------------

def hnf(M: IntMatrix):
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``.  Pivots of
    ``H`` are positive, entries above a pivot lie in ``[0, pivot)`` and zero
    rows come last.
    """
    m, n = M.shape
    H = [list(r) for r in M.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    row = 0
    for col in range(n):
        if row == m:
            break
        # gcd-eliminate column ``col`` below ``row``
        while True:
            nz = [i for i in range(row, m) if H[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][col]))
            if p != row:
                H[row], H[p] = H[p], H[row]
                U[row], U[p] = U[p], U[row]
            done = True
            piv = H[row][col]
            for i in range(row + 1, m):
                if H[i][col]:
                    q = H[i][col] // piv
                    if q:
                        _axpy(H[i], H[row], -q)
                        _axpy(U[i], U[row], -q)
                    if H[i][col]:
                        done = False
            if done:
                break
        if not any(H[i][col] for i in range(row, m)):
            continue
        if H[row][col] < 0:
            H[row] = [-x for x in H[row]]
            U[row] = [-x for x in U[row]]
        piv = H[row][col]
        for i in range(row):
            q = H[i][col] // piv
            if q:
                _axpy(H[i], H[row], -q)
                _axpy(U[i], U[row], -q)
        row += 1
    return IntMatrix(H, ncols=n), IntMatrix(U, ncols=m)


def _axpy(y: list, x: list, a: int) -> None:
    for k, xv in enumerate(x):
        if xv:
            y[k] += a * xv


def hnf_rows(vectors: Sequence[Sequence[int]], n: int) -> tuple:
    """Nonzero rows of the HNF of the lattice spanned by ``vectors``."""
    if not vectors:
        return ()
    H, _ = hnf(IntMatrix(vectors, ncols=n))
    return tuple(r for r in H.rows if any(r))


def rank(M: IntMatrix) -> int:
    if M.m == 0 or M.n == 0:
        return 0
    H, _ = hnf(M)
    return sum(1 for r in H.rows if any(r))


def row_space_basis(M: IntMatrix) -> IntMatrix:
    """Rows of ``M`` pruned to a maximal independent subset (original rows kept)."""
    kept: list = []
    current = 0
    for r in M.rows:
        if rank(IntMatrix(kept + [r], ncols=M.n)) > current:
            kept.append(r)
            current += 1
    return IntMatrix(kept, ncols=M.n) if kept else IntMatrix([], ncols=M.n)


# ---------------------------------------------------------------------------
# Kernel lattices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeBasis:
    """Integer basis of a lattice in ``Z^ambient_dim`` stored as rows."""

    ambient_dim: int
    basis_rows: tuple
    canonical: bool = True

    @property
    def dim(self) -> int:
        return len(self.basis_rows)

    def as_matrix(self) -> IntMatrix:
        return IntMatrix(self.basis_rows, ncols=self.ambient_dim)

    def contains(self, v: Sequence[int]) -> bool:
        """Membership test by reduction against the (echelon) basis rows."""
        rows = self.basis_rows if self.canonical else hnf_rows(self.basis_rows, self.ambient_dim)
        v = list(v)
        for r in rows:
            p = next(j for j, x in enumerate(r) if x)
            if any(v[:p]):
                return False
            if v[p] % r[p]:
                return False
            _axpy(v, list(r), -(v[p] // r[p]))
        return not any(v)

    def canonicalized(self) -> "LatticeBasis":
        if self.canonical:
            return self
        return LatticeBasis(self.ambient_dim, hnf_rows(self.basis_rows, self.ambient_dim), True)

    def same_lattice(self, other: "LatticeBasis") -> bool:
        return (self.ambient_dim == other.ambient_dim
                and self.canonicalized().basis_rows == other.canonicalized().basis_rows)


def kernel_basis(A: IntMatrix) -> LatticeBasis:
    """Canonical basis of the saturated lattice ``{u in Z^n : A u = 0}``."""
    n = A.n
    if A.m == 0:
        return LatticeBasis(n, tuple(IntMatrix.identity(n).rows))
    H, U = hnf(A.transpose())
    r = sum(1 for row in H.rows if any(row))
    return LatticeBasis(n, hnf_rows(U.rows[r:], n))


def gale_transforms(A: IntMatrix) -> list:
    """Gale vector of every column: the columns of the canonical kernel basis matrix.

    The vectors depend on the chosen kernel basis; their parallelism classes
    do not.  A zero Gale vector marks a free column.
    """
    K = kernel_basis(A).basis_rows
    return [tuple(row[i] for row in K) for i in range(A.n)]


# ---------------------------------------------------------------------------
# Positive grading
# ---------------------------------------------------------------------------

def positive_grading_witness(A: IntMatrix) -> Optional[tuple]:
    """Rational ``y`` with ``y . a_j > 0`` for every column, or ``None``.

    Such a ``y`` exists exactly when ``Ker_Z(A)`` meets the nonnegative
    orthant only in zero.  Solved as the exact feasibility problem
    ``A^T y >= 1`` with a phase-one Bland simplex on rationals.
    """
    m, n = A.shape
    if n == 0:
        return ()
    if m == 0:
        return None
    # variables: p (m), q (m), s (n), art (n);   A^T (p - q) - s + art = 1
    nvar = 2 * m + 2 * n
    T = []
    for j in range(n):
        col = A.column(j)
        row = [Fraction(0)] * (nvar + 1)
        for i in range(m):
            row[i] = Fraction(col[i])
            row[m + i] = Fraction(-col[i])
        row[2 * m + j] = Fraction(-1)
        row[2 * m + n + j] = Fraction(1)
        row[nvar] = Fraction(1)
        T.append(row)
    basis = [2 * m + n + j for j in range(n)]
    # objective: minimise sum(art)  <=>  reduced costs = -(sum of rows) on non-art columns
    obj = [Fraction(0)] * (nvar + 1)
    for row in T:
        for k in range(nvar + 1):
            obj[k] -= row[k]
    for k in range(2 * m + n, nvar):
        obj[k] = Fraction(0)
    while True:
        enter = next((k for k in range(nvar) if obj[k] < 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(T):
            if row[enter] > 0:
                ratio = row[nvar] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded direction cannot occur in phase one
            break
        i = best[1]
        piv = T[i][enter]
        T[i] = [x / piv for x in T[i]]
        for r in range(n):
            if r != i and T[r][enter]:
                f = T[r][enter]
                T[r] = [a - f * b for a, b in zip(T[r], T[i])]
        if obj[enter]:
            f = obj[enter]
            obj = [a - f * b for a, b in zip(obj, T[i])]
        basis[i] = enter
    if -obj[nvar] != 0:
        return None
    val = [Fraction(0)] * nvar
    for i, b in enumerate(basis):
        val[b] = T[i][nvar]
    y = tuple(val[i] - val[m + i] for i in range(m))
    assert all(sum(yi * a for yi, a in zip(y, A.column(j))) > 0 for j in range(n))
    return y


def integer_grading(A: IntMatrix) -> Optional[tuple]:
    """Integer version of :func:`positive_grading_witness`, scaled to be primitive."""
    y = positive_grading_witness(A)
    if y is None:
        return None
    den = lcm(*(f.denominator for f in y)) if y else 1
    yi = [int(f * den) for f in y]
    g = gcd(*yi) or 1
    return tuple(v // g for v in yi)


def column_weights(A: IntMatrix, y: Sequence[int]) -> tuple:
    """Degree functional on columns, ``w_j = y . a_j``."""
    return tuple(sum(a * b for a, b in zip(y, A.column(j))) for j in range(A.n))


# ---------------------------------------------------------------------------
# Small vector helpers shared across modules
# ---------------------------------------------------------------------------

def vpos(u: Sequence[int]) -> tuple:
    return tuple(x if x > 0 else 0 for x in u)


def vneg(u: Sequence[int]) -> tuple:
    return tuple(-x if x < 0 else 0 for x in u)


def vadd(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vneg_all(u) -> tuple:
    return tuple(-a for a in u)


def sign_normalize(u: Sequence[int]) -> tuple:
    """Flip ``u`` so that its first nonzero coordinate is positive."""
    for x in u:
        if x:
            return tuple(u) if x > 0 else tuple(-a for a in u)
    return tuple(u)


def ext_gcd_coefficients(c: Sequence[int]) -> tuple:
    """Integers ``lam`` with ``sum(lam_i * c_i) == gcd(c)`` via extended Euclid."""
    lam = [0] * len(c)
    g = 0
    for i, ci in enumerate(c):
        if ci == 0:
            continue
        if g == 1:
            break   # later coefficients stay zero
        if g == 0:
            g, lam[i] = abs(ci), (1 if ci > 0 else -1)
            continue
        # solve x*g + y*ci = gcd(g, ci)
        old_r, r = g, ci
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        lam = [old_s * x for x in lam]
        lam[i] = old_t
        g = old_r
    return tuple(lam)


# ---------------------------------------------------------------------------
# Matrix text format
# ---------------------------------------------------------------------------

def parse_matrix(text: str) -> IntMatrix:
    """Parse ``m n`` followed by ``m`` rows of ``n`` integers; ``#`` lines are comments."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InvalidInput("empty matrix text")
    try:
        head = lines[0].split()
        m, n = int(head[0]), int(head[1])
        if len(head) != 2 or m < 0 or n < 0:
            raise ValueError
        rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
    except (ValueError, IndexError) as exc:
        raise InvalidInput(f"malformed matrix text: {exc}") from None
    if len(rows) != m or any(len(r) != n for r in rows):
        raise InvalidInput(f"expected {m} rows of {n} integers")
    return IntMatrix(rows, ncols=n)


def format_matrix(M: IntMatrix, comment: Optional[str] = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"{M.m} {M.n}")
    out.extend(" ".join(str(x) for x in r) for r in M.rows)
    return "\n".join(out) + "\n"


def read_matrix(path) -> IntMatrix:
    with open(path) as fh:
        return parse_matrix(fh.read())
