"""Bouquet decomposition of a small matrix and what it does to Markov bases."""

from markov_complexity import (IntMatrix, bouquets, is_markov_basis, map_T, markov_image_under_T,
                               minimal_markov)

A = IntMatrix([[3, 3, 4, 5], [2, 3, 0, 0]])
dec = bouquets(A)
print(dec.describe())
print("bouquet matrix:", dec.AB.rows)

# Markov bases of A and of its bouquet matrix
MA = minimal_markov(A)
MB = minimal_markov(dec.AB)
print("\nminimal Markov basis of A:")
for v in MA:
    print("  ", v, "-> T ->", map_T(dec, v))

# the T-image is again a Markov basis, just not a minimal one
image = markov_image_under_T(dec, MA)
print("\nT-image is a Markov basis of A_B:", is_markov_basis(dec.AB, image))
print(f"sizes: image {len(image)}, minimal {len(MB)}")
print("minimal basis of A_B:", MB.elements)
