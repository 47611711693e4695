"""Bouquet decomposition of an integer matrix and the kernel isomorphisms D and T."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .intlin import IntMatrix, InvalidInput, gale_transforms, kernel_basis, sign_normalize
from .lawrence import Tableau, lawrence_lift


class DomainError(InvalidInput):
    """A vector handed to D or T is not in the kernel the map is defined on."""


class UnsupportedInput(InvalidInput):
    """The input lies outside the class of matrices an operation handles."""


@dataclass(frozen=True)
class BouquetDecomposition:
    source: IntMatrix
    bouquets: tuple       # tuple of tuples of 0-based column indices, ordered by smallest member
    free_flags: tuple
    cB: tuple             # one length-n vector per bouquet
    AB: IntMatrix         # m x q bouquet matrix
    C: IntMatrix          # n x q, column i is cB[i]

    @property
    def q(self) -> int:
        return len(self.bouquets)

    @property
    def has_free(self) -> bool:
        return any(self.free_flags)

    def leading(self, k: int) -> tuple:
        """(first column of bouquet ``k``, its ``c`` entry)."""
        j = self.bouquets[k][0]
        return j, self.cB[k][j]

    def describe(self) -> str:
        lines = []
        for k, (cols, free, cb) in enumerate(zip(self.bouquets, self.free_flags, self.cB)):
            lines.append(f"B{k + 1} {'free' if free else 'nonfree'} "
                         f"cols={','.join(str(c + 1) for c in cols)} cB={','.join(map(str, cb))}")
        return "\n".join(lines)


def _direction(g: Sequence[int]) -> tuple:
    d = gcd(*g)
    return sign_normalize(tuple(x // d for x in g))


def bouquets(A: IntMatrix) -> BouquetDecomposition:
    """Partition the columns of ``A`` into bouquets and build ``c_B``, ``A_B`` and ``C``.

    Non-free bouquets are the classes of columns whose Gale vectors are nonzero
    and parallel; all columns with zero Gale vector form one free bouquet whose
    ``c_B`` is all ones on its support.
    """
    m, n = A.shape
    gale = gale_transforms(A)
    groups: dict = {}
    for i, g in enumerate(gale):
        key = _direction(g) if any(g) else None
        groups.setdefault(key, []).append(i)
    ordered = sorted(groups.items(), key=lambda kv: kv[1][0])
    parts, free, cBs = [], [], []
    for key, cols in ordered:
        cB = [0] * n
        if key is None:
            for i in cols:
                cB[i] = 1
        else:
            j = next(k for k in range(len(key)) if all(gale[i][k] for i in cols))
            gj = gcd(*(gale[i][j] for i in cols))
            eps = 1 if gale[cols[0]][j] > 0 else -1
            for i in cols:
                cB[i] = eps * gale[i][j] // gj
        parts.append(tuple(cols))
        free.append(key is None)
        cBs.append(tuple(cB))
    AB = IntMatrix([[sum(c * a for c, a in zip(cB, row) if c) for cB in cBs] for row in A.rows],
                   ncols=len(cBs))
    C = IntMatrix([[cB[i] for cB in cBs] for i in range(n)], ncols=len(cBs))
    return BouquetDecomposition(A, tuple(parts), tuple(free), tuple(cBs), AB, C)


def map_D(dec: BouquetDecomposition, u: Sequence[int]) -> tuple:
    """``Ker_Z(A_B) -> Ker_Z(A)``, ``u -> C u``."""
    if len(u) != dec.q or any(dec.AB.apply(u)):
        raise DomainError(f"{tuple(u)} is not in the kernel of the bouquet matrix")
    return dec.C.apply(u)


def map_T(dec: BouquetDecomposition, v: Sequence[int]) -> tuple:
    """Inverse of :func:`map_D`: read each bouquet off its first column."""
    if len(v) != dec.source.n or any(dec.source.apply(v)):
        raise DomainError(f"{tuple(v)} is not in the kernel of the matrix")
    out = []
    for k in range(dec.q):
        j, c = dec.leading(k)
        if v[j] % c:
            raise DomainError(f"{tuple(v)}: coordinate {j + 1} is not divisible by {c}")
        out.append(v[j] // c)
    return tuple(out)


def map_D_r(dec: BouquetDecomposition, t: Tableau) -> Tableau:
    if any(t.column_sums()):
        raise DomainError("tableau rows do not sum to zero")
    return Tableau(tuple(map_D(dec, row) for row in t.rows))


def map_T_r(dec: BouquetDecomposition, t: Tableau) -> Tableau:
    if any(t.column_sums()):
        raise DomainError("tableau rows do not sum to zero")
    return Tableau(tuple(map_T(dec, row) for row in t.rows))


def markov_image_under_T(dec: BouquetDecomposition, markov):
    """Element-wise T image of a Markov basis of ``A``: a (possibly non-minimal) Markov basis of ``A_B``."""
    from .bases import BasisSet

    images = [map_T(dec, v) for v in markov.elements]
    return BasisSet.build(dec.AB, "markov", images)


def lifted_bouquet_kernel_check(A: IntMatrix, r: int) -> bool:
    """Check that the bouquet matrix of ``A^(r)`` and ``(A_B)^(r)`` have equal kernels."""
    if r < 3:
        raise InvalidInput(f"the lifted kernel comparison needs r >= 3, got {r}")
    dec = bouquets(A)
    if dec.has_free:
        raise UnsupportedInput("matrix has a free bouquet; lifted comparison is not supported")
    lifted = bouquets(lawrence_lift(A, r))
    if lifted.q != r * dec.q:
        return False
    return kernel_basis(lifted.AB).same_lattice(kernel_basis(lawrence_lift(dec.AB, r)))
