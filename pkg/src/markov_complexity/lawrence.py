"""Lawrence liftings, tableaux, the matrix families and the generalized Lawrence constructor."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .intlin import IntMatrix, InvalidInput, ext_gcd_coefficients, kernel_basis, rank


def lawrence_lift(A: IntMatrix, r: int) -> IntMatrix:
    """The ``(r*m + n) x (r*n)`` matrix with ``r`` diagonal copies of ``A`` over ``[I_n ... I_n]``."""
    if r < 2:
        raise InvalidInput(f"Lawrence lifting needs r >= 2, got {r}")
    m, n = A.shape
    rows = []
    for s in range(r):
        for i in range(m):
            row = [0] * (r * n)
            row[s * n:(s + 1) * n] = A.rows[i]
            rows.append(row)
    for j in range(n):
        rows.append([int(k % n == j) for k in range(r * n)])
    return IntMatrix(rows, ncols=r * n)


@dataclass(frozen=True)
class Tableau:
    """A kernel element of a Lawrence lifting viewed as an ``r x n`` integer matrix."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if len({len(r) for r in rows}) > 1:
            raise InvalidInput("tableau rows must have equal length")
        object.__setattr__(self, "rows", rows)

    @property
    def r(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def type(self) -> int:
        return tableau_type(self)

    def flat(self) -> tuple:
        return tuple(x for row in self.rows for x in row)

    @classmethod
    def from_flat(cls, v: Sequence[int], r: int) -> "Tableau":
        if len(v) % r:
            raise InvalidInput(f"vector of length {len(v)} is not r x n for r = {r}")
        n = len(v) // r
        return cls(tuple(tuple(v[i * n:(i + 1) * n]) for i in range(r)))

    @classmethod
    def parse(cls, text: str) -> "Tableau":
        """Parse the literal ``"1,-1,-1,1;0,-1,2,-1;-1,2,-1,0"``."""
        try:
            return cls(tuple(tuple(int(x) for x in part.split(",")) for part in text.strip().split(";")))
        except ValueError as exc:
            raise InvalidInput(f"bad tableau literal {text!r}: {exc}") from None

    def format(self) -> str:
        return ";".join(",".join(str(x) for x in row) for row in self.rows)

    def column_sums(self) -> tuple:
        return tuple(sum(col) for col in zip(*self.rows))

    def is_kernel_element(self, A: IntMatrix) -> bool:
        """Rows in ``Ker_Z(A)`` and summing to zero, i.e. membership in ``Ker_Z(A^(r))``."""
        return (all(not any(A.apply(row)) for row in self.rows)
                and not any(self.column_sums()))


def tableau_type(t: Tableau) -> int:
    """Number of nonzero rows."""
    return sum(1 for row in t.rows if any(row))


def family_As(s: int) -> IntMatrix:
    """``[[0, 1, s-1, s], [1, 1, 1, 1]]``."""
    if s < 3:
        raise InvalidInput(f"family_As needs s >= 3, got {s}")
    return IntMatrix([[0, 1, s - 1, s], [1, 1, 1, 1]])


def family_KT(s: int, k: int = 0) -> IntMatrix:
    """The 1 x (4 + k) matrix ``[1, s, s^2 - s, s^2 - 1]`` padded with ``k`` ones."""
    if s < 2 or k < 0:
        raise InvalidInput(f"family_KT needs s >= 2 and k >= 0, got s={s}, k={k}")
    return IntMatrix([[1, s, s * s - s, s * s - 1] + [1] * k])


def witness_matrix(s: int) -> Tableau:
    """Type-``s`` element of ``Ker(A_s^(s))``: ``s-2`` copies of ``(1,-1,-1,1)`` then two closing rows."""
    if s < 3:
        raise InvalidInput(f"witness_matrix needs s >= 3, got {s}")
    rows = [(1, -1, -1, 1)] * (s - 2)
    rows.append((0, -1, s - 1, 2 - s))
    rows.append((2 - s, s - 1, -1, 0))
    t = Tableau(tuple(rows))
    assert t.is_kernel_element(family_As(s))
    return t


# ---------------------------------------------------------------------------
# Generalized Lawrence matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BouquetSpec:
    """Direction ``cprime`` of one bouquet and coefficients ``lam`` with ``lam . cprime == 1``."""

    cprime: tuple
    lam: tuple

    def __post_init__(self):
        object.__setattr__(self, "cprime", tuple(int(x) for x in self.cprime))
        object.__setattr__(self, "lam", tuple(int(x) for x in self.lam))

    @classmethod
    def solved(cls, cprime: Sequence[int]) -> "BouquetSpec":
        """Spec whose ``lam`` comes from the extended Euclid algorithm."""
        return cls(tuple(cprime), ext_gcd_coefficients(cprime))

    def problem(self) -> str | None:
        c, lam = self.cprime, self.lam
        if not c:
            return "empty c'"
        if len(lam) != len(c):
            return f"lambda has length {len(lam)}, c' has length {len(c)}"
        if any(x == 0 for x in c):
            return "c' has a zero entry"
        if c[0] <= 0:
            return "first entry of c' is not positive"
        if gcd(*c) != 1:
            return "entries of c' are not coprime"
        if sum(a * b for a, b in zip(lam, c)) != 1:
            return "lambda . c' != 1"
        return None


def generalized_lawrence(base: IntMatrix, specs: Sequence[BouquetSpec], validate: bool = True) -> IntMatrix:
    """Matrix whose bouquets are the column blocks given by ``specs`` and whose bouquet matrix is ``base``.

    Columns are grouped in blocks, one per spec, in spec order.  The top rows
    carry ``base[k, i] * lam_ij``; below them, every block of length
    ``m_i > 1`` contributes relation rows ``-c'_ij`` at its first column and
    ``c'_i1`` at its ``j``-th column.
    """
    d, q = base.shape
    if len(specs) != q:
        raise InvalidInput(f"base has {q} columns but {len(specs)} bouquet specs were given")
    for i, sp in enumerate(specs):
        why = sp.problem()
        if why:
            raise InvalidInput(f"bouquet {i + 1}: {why}")
    offsets = []
    n = 0
    for sp in specs:
        offsets.append(n)
        n += len(sp.cprime)
    rows = []
    for k in range(d):
        row = []
        for i, sp in enumerate(specs):
            row.extend(base[k, i] * l for l in sp.lam)
        rows.append(row)
    for i, sp in enumerate(specs):
        c = sp.cprime
        for j in range(1, len(c)):
            row = [0] * n
            row[offsets[i]] = -c[j]
            row[offsets[i] + j] = c[0]
            rows.append(row)
    L = IntMatrix(rows, ncols=n)
    if validate:
        _validate_generalized_lawrence(L, base, specs, offsets)
    return L


def _validate_generalized_lawrence(L, base, specs, offsets) -> None:
    from .bouquet import bouquets

    q = len(specs)
    if rank(L) != rank(base) + L.n - q:
        raise AssertionError("generalized Lawrence matrix has unexpected rank")
    if not kernel_basis(base).basis_rows:
        return  # no kernel: every column is free, nothing further to check
    dec = bouquets(L)
    expected = []
    for off, sp in zip(offsets, specs):
        cB = [0] * L.n
        cB[off:off + len(sp.cprime)] = sp.cprime
        expected.append(tuple(cB))
    nonfree = [cb for cb, free in zip(dec.cB, dec.free_flags) if not free]
    if len(nonfree) == q and nonfree != expected:
        raise AssertionError("bouquet directions of L differ from the requested c' vectors")


def parse_specs(text: str) -> list:
    """Parse one bouquet per line: ``cprime = a,b,c ; lambda = x,y,z`` (lambda optional)."""
    specs = []
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        fields = {}
        for part in ln.split(";"):
            if "=" not in part:
                raise InvalidInput(f"bad spec line {ln!r}")
            key, val = part.split("=", 1)
            try:
                fields[key.strip().lower()] = tuple(int(x) for x in val.split(","))
            except ValueError:
                raise InvalidInput(f"bad integers in spec line {ln!r}") from None
        if "cprime" not in fields:
            raise InvalidInput(f"spec line without cprime: {ln!r}")
        lam = fields.get("lambda")
        specs.append(BouquetSpec(fields["cprime"], lam) if lam is not None else BouquetSpec(fields["cprime"], ()))
    return specs


def format_specs(specs: Sequence[BouquetSpec]) -> str:
    return "".join(
        f"cprime = {','.join(map(str, sp.cprime))} ; lambda = {','.join(map(str, sp.lam))}\n" for sp in specs)


def kt_lawrence_specs() -> list:
    """The twelve bouquet specs used for the 6 x 17 construction."""
    data = [((1, -1), (1, 0)), ((1,), (1,)), ((1, -1), (1, 0)), ((1,), (1,)), ((1,), (1,)),
            ((1, 11), (1, 0)), ((1,), (1,)), ((1,), (1,)), ((3, 7, 2021), (-2, 1, 0)),
            ((1,), (1,)), ((1,), (1,)), ((1,), (1,))]
    return [BouquetSpec(c, l) for c, l in data]


def kt_lawrence_matrix(s: int) -> IntMatrix:
    """The 6 x 17 generalized Lawrence matrix built from ``kt_lawrence_specs``, at parameter ``s``."""
    q = s * s
    top = [1, 0, s, q - s, 0, q - 1, 1, 1, 0, 1, 1, -2, 1, 0, 1, 1, 1]
    rel = [
        [1, 1] + [0] * 15,
        [0, 0, 0, 1, 1] + [0] * 12,
        [0] * 7 + [-11, 1] + [0] * 8,
        [0] * 11 + [-7, 3] + [0] * 4,
        [0] * 11 + [-2021, 0, 3] + [0] * 3,
    ]
    return IntMatrix([top] + rel)


_ZERO_ONE_FIXTURE = """\
0 0 0 1 1 1 1 1 0 1 1 1 1 1 0
0 0 1 0 1 1 1 1 0 1 1 1 1 1 0
0 0 1 0 0 1 1 1 1 1 1 1 1 1 0
0 0 1 0 1 0 1 1 1 1 1 1 1 1 0
0 0 1 0 1 1 0 1 1 1 1 1 1 1 0
0 0 1 0 1 1 1 0 1 1 1 1 1 1 0
0 0 1 0 1 1 1 1 0 1 1 1 1 1 0
0 0 1 0 1 1 1 1 0 0 1 1 1 1 1
0 0 1 0 1 1 1 1 0 1 0 1 1 1 1
0 0 1 0 1 1 1 1 0 1 1 0 1 1 1
0 0 1 0 1 1 1 1 0 1 1 1 0 1 1
0 0 1 0 1 1 1 1 0 1 1 1 1 0 1
0 0 1 0 1 1 1 1 0 1 1 1 1 1 0
1 0 1 0 1 0 0 0 0 1 0 0 0 0 0
0 1 1 0 1 0 0 0 0 1 0 0 0 0 0
"""


def zero_one_fixture() -> IntMatrix:
    """A 15 x 15 0/1 matrix whose bouquet matrix has the kernel of ``A_5``."""
    return IntMatrix([[int(x) for x in ln.split()] for ln in _ZERO_ONE_FIXTURE.splitlines()])
