"""Tree-depth of transposed Lawrence liftings and the Graver norm bound."""

import random

from markov_complexity import (IntMatrix, family_As, graver, graver_norm_bound, lawrence_lift,
                               lawrence_valid_tree, matrix_graph, tree_depth)

A = family_As(3)
for r in (2, 3):
    B = lawrence_lift(A, r)
    G = matrix_graph(B.transpose())
    T = lawrence_valid_tree(A.m, A.n, r)
    print(f"r={r}: tree of height {T.height()} valid={T.is_valid_for(G)}, "
          f"tree-depth forest={tree_depth(G, 'forest')} single={tree_depth(G, 'single-tree')}")

# random check of the norm bound: max Graver norm against (2a+1)^(2^t - 1)
rng = random.Random(1)
worst = 0.0
for _ in range(50):
    M = IntMatrix([[rng.randint(-2, 2) for _ in range(4)] for _ in range(rng.randint(1, 3))])
    t = tree_depth(matrix_graph(M.transpose()), "forest")
    norms = [sum(map(abs, g)) for g in graver(M)]
    if norms:
        worst = max(worst, max(norms) / graver_norm_bound(M.max_abs(), t))
print(f"largest ratio of Graver norm to its bound over 50 matrices: {worst:.4f}")
