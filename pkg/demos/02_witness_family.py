"""Certify growing lower bounds on Markov complexity along the A_s family.

For each s the s x 4 witness tableau is indispensable in the s-th Lawrence
lifting of A_s, so every minimal Markov basis has an element of type s.
"""

import time

from markov_complexity import family_As, is_indispensable, lawrence_lift, witness_matrix

for s in range(3, 7):
    t = witness_matrix(s)
    L = lawrence_lift(family_As(s), s)
    t0 = time.perf_counter()
    ok = is_indispensable(L, t.flat())
    dt = time.perf_counter() - t0
    print(f"s={s}  lifting {L.shape[0]}x{L.shape[1]}  indispensable={ok}  type={t.type}  ({dt:.3f}s)")
    for row in t.rows:
        print("     ", " ".join(f"{x:3d}" for x in row))
