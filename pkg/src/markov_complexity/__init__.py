"""Exact Markov and Graver complexity toolkit for integer matrices."""

from .bases import (BasisSet, Fiber, NotPositivelyGraded, ResourceLimit, conformal_leq, degree,
                    fiber_by_degree, fiber_of, graver, graver_bruteforce, graver_norm_cap,
                    has_proper_semiconformal_decomposition, indispensable_set, is_indispensable,
                    is_markov_basis, is_semiconformal_sum, minimal_markov, parse_basis)
from .bouquet import (BouquetDecomposition, DomainError, UnsupportedInput, bouquets,
                      lifted_bouquet_kernel_check, map_D, map_D_r, map_T, map_T_r,
                      markov_image_under_T)
from .complexity import (ComplexityReport, RootedTree, SimpleGraph, certify_witness,
                         complexity_bound, graver_complexity_upto, graver_norm_bound,
                         lawrence_valid_tree, markov_complexity_upto, matrix_graph,
                         prune_redundant_rows, tree_depth)
from .intlin import (IntMatrix, InvalidInput, LatticeBasis, format_matrix, gale_transforms, hnf,
                     kernel_basis, parse_matrix, positive_grading_witness, rank, read_matrix)
from .lawrence import (BouquetSpec, Tableau, family_As, family_KT, generalized_lawrence,
                       lawrence_lift, witness_matrix)

__version__ = "0.1.0"
