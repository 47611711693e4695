"""Markov and Graver complexity up to a lifting order, tree-depth and the closed-form bounds."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .bases import (DEFAULT_FIBER_CAP, DEFAULT_GRAVER_CAP, ResourceLimit, graver,
                    is_indispensable, minimal_markov)
from .intlin import IntMatrix, InvalidInput, row_space_basis
from .lawrence import Tableau, lawrence_lift

DEFAULT_VERTEX_CAP = 20


# ---------------------------------------------------------------------------
# Graphs and rooted trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    edges: frozenset   # pairs (j, k) with j < k

    def __post_init__(self):
        clean = set()
        for e in self.edges:
            j, k = sorted(e)
            if j == k:
                raise InvalidInput(f"loop at vertex {j}")
            if not 0 <= j < k < self.vertex_count:
                raise InvalidInput(f"edge {e} out of range")
            clean.add((j, k))
        object.__setattr__(self, "edges", frozenset(clean))

    def adjacency(self) -> list:
        """Neighbour bitmask per vertex."""
        adj = [0] * self.vertex_count
        for j, k in self.edges:
            adj[j] |= 1 << k
            adj[k] |= 1 << j
        return adj


def matrix_graph(M: IntMatrix) -> SimpleGraph:
    """Graph on the columns of ``M``; ``j ~ k`` when some row is nonzero at both."""
    edges = set()
    for row in M.rows:
        support = [j for j, x in enumerate(row) if x]
        for a in range(len(support)):
            for b in range(a + 1, len(support)):
                edges.add((support[a], support[b]))
    return SimpleGraph(M.n, frozenset(edges))


@dataclass(frozen=True)
class RootedTree:
    vertex_count: int
    parent: tuple      # parent[v] is None exactly at the root
    root: int

    def __post_init__(self):
        if len(self.parent) != self.vertex_count:
            raise InvalidInput("parent map must cover every vertex")
        roots = [v for v, p in enumerate(self.parent) if p is None]
        if roots != [self.root]:
            raise InvalidInput(f"expected the single root {self.root}, found {roots}")
        for v in range(self.vertex_count):
            self.ancestors(v)   # raises on cycles

    def ancestors(self, v: int) -> list:
        """Path from ``v`` up to the root, ``v`` included."""
        path = [v]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
            if len(path) > self.vertex_count:
                raise InvalidInput("parent map has a cycle")
        return path

    def height(self) -> int:
        """Largest number of vertices on a root-to-leaf path."""
        return max((len(self.ancestors(v)) for v in range(self.vertex_count)), default=0)

    def is_valid_for(self, G: SimpleGraph) -> bool:
        """Every edge joins a vertex to one of its ancestors."""
        if G.vertex_count != self.vertex_count:
            return False
        anc = [set(self.ancestors(v)) for v in range(self.vertex_count)]
        return all(j in anc[k] or k in anc[j] for j, k in G.edges)


def lawrence_valid_tree(m: int, n: int, r: int) -> RootedTree:
    """A tree of height ``n + m`` valid for the graph of the transposed ``r``-th lifting.

    Vertices follow the row order of :func:`lawrence_lift`: copy ``i`` row
    ``j`` is ``i*m + j``, identity row ``k`` is ``r*m + k``.  The identity
    rows form a path from the root; each copy hangs below the last of them
    as its own path.
    """
    if m < 1 or n < 1 or r < 2:
        raise InvalidInput(f"need m, n >= 1 and r >= 2, got m={m}, n={n}, r={r}")
    c = lambda k: r * m + k
    parent: list = [None] * (r * m + n)
    for k in range(1, n):
        parent[c(k)] = c(k - 1)
    for i in range(r):
        parent[i * m] = c(n - 1)
        for j in range(1, m):
            parent[i * m + j] = i * m + j - 1
    return RootedTree(r * m + n, tuple(parent), c(0))


def _components(adj: list, S: int) -> list:
    comps = []
    while S:
        seed = S & -S
        comp = seed
        frontier = seed
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = adj[v] & S & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        S &= ~comp
    return comps


def tree_depth(G: SimpleGraph, convention: str = "forest", vertex_cap: int = DEFAULT_VERTEX_CAP) -> int:
    """Exact tree-depth by eliminating vertices, memoized on connected vertex sets.

    ``forest`` lets each component have its own root; ``single-tree`` asks
    for one rooted tree spanning all vertices.  Both agree on connected graphs.
    """
    if convention not in ("forest", "single-tree"):
        raise InvalidInput(f"unknown tree-depth convention {convention!r}")
    if G.vertex_count < 1:
        raise InvalidInput("tree-depth needs at least one vertex")
    if G.vertex_count > vertex_cap:
        raise ResourceLimit(f"tree-depth of {G.vertex_count} vertices exceeds the cap of {vertex_cap}")
    adj = G.adjacency()

    @lru_cache(maxsize=None)
    def connected(S: int) -> int:
        if S & (S - 1) == 0:
            return 1
        best = None
        T = S
        while T:
            bit = T & -T
            T &= T - 1
            d = forest(S & ~bit)
            if best is None or d < best:
                best = d
                if best == 1:
                    break
        return 1 + best

    def forest(S: int) -> int:
        return max((connected(C) for C in _components(adj, S)), default=0)

    full = (1 << G.vertex_count) - 1
    if convention == "forest" or len(_components(adj, full)) == 1:
        return forest(full)
    return 1 + min(forest(full & ~(1 << v)) for v in range(G.vertex_count))


# ---------------------------------------------------------------------------
# Closed-form bounds
# ---------------------------------------------------------------------------

def graver_norm_bound(a: int, t: int) -> int:
    """``(2a+1)^(2^t - 1)``: a 1-norm bound for Graver elements given entry size and tree-depth."""
    if a < 0 or t < 1:
        raise InvalidInput(f"need a >= 0 and t >= 1, got a={a}, t={t}")
    return (2 * a + 1) ** (2 ** t - 1)


def complexity_bound(a: int, n: int, sharp: bool = False) -> int:
    """``(2a+1)^(4^n - 1) + 1`` bounding both complexities of any matrix with ``n`` columns.

    With ``sharp=True`` the zero matrix (``a == 0``) gets its exact value 2:
    every lifted Graver element is then a unit vector against its negative.
    """
    if a < 0 or n < 1:
        raise InvalidInput(f"need a >= 0 and n >= 1, got a={a}, n={n}")
    if sharp and a == 0:
        return 2
    return (2 * a + 1) ** (4 ** n - 1) + 1


def prune_redundant_rows(A: IntMatrix) -> IntMatrix:
    """Keep the first maximal linearly independent subset of rows; the kernel is unchanged."""
    return row_space_basis(A)


def tree_bound(A: IntMatrix) -> int:
    """Type bound from the explicit valid tree: height ``n + rank`` instead of ``2n``."""
    B = prune_redundant_rows(A)
    a = B.max_abs()
    if a == 0:
        return 2
    return graver_norm_bound(a, A.n + B.m)


# ---------------------------------------------------------------------------
# Complexity estimation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexityReport:
    matrix: IntMatrix
    r_values: tuple
    per_r_max_type_markov: tuple
    per_r_max_type_graver: Optional[tuple]
    running_max: int        # certified lower bound on the Markov complexity
    bound_td: int           # upper bound via the valid tree of height n + rank
    bound_closed_form: int  # upper bound (2a+1)^(4^n - 1) + 1

    @property
    def lower_bound(self) -> int:
        return self.running_max


def max_type(vectors: Sequence, r: int) -> int:
    """Largest number of nonzero rows among the vectors read as ``r``-row tableaux."""
    return max((Tableau.from_flat(v, r).type for v in vectors), default=0)


def _types_at(args) -> tuple:
    A, r, fiber_cap, graver_cap = args
    L = lawrence_lift(A, r)
    G = graver(L, cap=graver_cap)
    M = minimal_markov(L, fiber_cap=fiber_cap, graver_basis=G)
    return max_type(M.elements, r), max_type(G.elements, r)


def _per_r(A: IntMatrix, r_max: int, jobs: int, fiber_cap: int, graver_cap: int) -> list:
    if r_max < 2:
        raise InvalidInput(f"r_max must be at least 2, got {r_max}")
    work = [(A, r, fiber_cap, graver_cap) for r in range(2, r_max + 1)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_types_at, work))
    return [_types_at(w) for w in work]


def markov_complexity_upto(A: IntMatrix, r_max: int, with_graver: bool = False, jobs: int = 1,
                           fiber_cap: int = DEFAULT_FIBER_CAP,
                           graver_cap: int = DEFAULT_GRAVER_CAP) -> ComplexityReport:
    """Largest tableau type in a minimal Markov basis of each lifting ``A^(r)``, ``2 <= r <= r_max``."""
    rows = _per_r(A, r_max, jobs, fiber_cap, graver_cap)
    markov = tuple(mk for mk, _ in rows)
    return ComplexityReport(
        matrix=A,
        r_values=tuple(range(2, r_max + 1)),
        per_r_max_type_markov=markov,
        per_r_max_type_graver=tuple(g for _, g in rows) if with_graver else None,
        running_max=max(markov),
        bound_td=tree_bound(A),
        bound_closed_form=complexity_bound(A.max_abs(), A.n),
    )


def graver_complexity_upto(A: IntMatrix, r_max: int, jobs: int = 1,
                           graver_cap: int = DEFAULT_GRAVER_CAP) -> tuple:
    """Largest tableau type in the Graver basis of each lifting ``A^(r)``, ``2 <= r <= r_max``."""
    if r_max < 2:
        raise InvalidInput(f"r_max must be at least 2, got {r_max}")
    rs = range(2, r_max + 1)
    return tuple(max_type(graver(lawrence_lift(A, r), cap=graver_cap).elements, r) for r in rs)


def certify_witness(A: IntMatrix, t: Tableau, fiber_cap: int = DEFAULT_FIBER_CAP) -> bool:
    """Whether ``t`` is indispensable in ``A^(t.r)``, so its type bounds the Markov complexity below."""
    if t.n != A.n:
        raise InvalidInput(f"tableau has {t.n} columns, matrix has {A.n}")
    if not t.is_kernel_element(A):
        raise InvalidInput("tableau is not in the kernel of the lifting")
    return is_indispensable(lawrence_lift(A, t.r), t.flat(), fiber_cap=fiber_cap)


def transpose_tree_depths(A: IntMatrix, vertex_cap: int = DEFAULT_VERTEX_CAP) -> dict:
    """Both tree-depth conventions for the graph of ``A^T``; ``None`` when over the vertex cap."""
    G = matrix_graph(A.transpose())
    out = {}
    for key, conv in (("forest", "forest"), ("single_tree", "single-tree")):
        try:
            out[key] = tree_depth(G, conv, vertex_cap) if G.vertex_count else 0
        except ResourceLimit:
            out[key] = None
    return out


def report_document(report: ComplexityReport, witness: Optional[dict] = None) -> dict:
    """The machine-readable form of a report; big integers become decimal strings."""
    doc = {
        "matrix_digest": report.matrix.digest(),
        "r": list(report.r_values),
        "markov_max_type": list(report.per_r_max_type_markov),
        "graver_max_type": (list(report.per_r_max_type_graver)
                            if report.per_r_max_type_graver is not None else None),
        "lower_bound": report.lower_bound,
        "upper_bound_closed_form": str(report.bound_closed_form),
        "tree_depth": transpose_tree_depths(report.matrix),
    }
    if witness is not None:
        doc["witness"] = witness
        if witness["indispensable"]:
            doc["lower_bound"] = max(doc["lower_bound"], witness["type"])
    return doc


def empty_report(A: IntMatrix) -> ComplexityReport:
    """Report with no liftings computed, used when only a witness is checked."""
    return ComplexityReport(A, (), (), None, 0, tree_bound(A), complexity_bound(A.max_abs(), A.n))
