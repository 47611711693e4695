"""Per-r maximal types of minimal Markov and Graver bases for a few small matrices.

The reported Markov value is a lower bound on the Markov complexity (a
supremum over all r); the closed form gives an upper bound.
"""

import time

from markov_complexity import IntMatrix, family_As, markov_complexity_upto

cases = {
    "identity 3x3": (IntMatrix.identity(3), 4),
    "[1 1]": (IntMatrix([[1, 1]]), 4),
    "[1 2 3]": (IntMatrix([[1, 2, 3]]), 4),
    "[2 3 5]": (IntMatrix([[2, 3, 5]]), 4),
    "A_3": (family_As(3), 3),
}

print(f"{'matrix':14s} {'markov by r':16s} {'graver by r':16s} {'lower':>5s}  upper (digits)")
for name, (A, r_max) in cases.items():
    t0 = time.perf_counter()
    rep = markov_complexity_upto(A, r_max, with_graver=True)
    dt = time.perf_counter() - t0
    print(f"{name:14s} {str(list(rep.per_r_max_type_markov)):16s} "
          f"{str(list(rep.per_r_max_type_graver)):16s} {rep.lower_bound:5d}  "
          f"{len(str(rep.bound_closed_form))}   [{dt:.1f}s]")
