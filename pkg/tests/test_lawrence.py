import pytest
from hypothesis import given, strategies as st

from conftest import int_matrices
from markov_complexity.bouquet import bouquets
from markov_complexity.intlin import IntMatrix, InvalidInput, kernel_basis, rank
from markov_complexity.lawrence import (BouquetSpec, Tableau, kt_lawrence_matrix, kt_lawrence_specs,
                                        family_As, family_KT, zero_one_fixture, format_specs,
                                        generalized_lawrence, lawrence_lift, parse_specs,
                                        witness_matrix)

A3 = family_As(3)


def test_lift_shape_and_blocks():
    L = lawrence_lift(IntMatrix([[1, 2]]), 3)
    assert L.shape == (5, 6)
    assert L.rows[0] == (1, 2, 0, 0, 0, 0)
    assert L.rows[3] == (1, 0, 1, 0, 1, 0)
    with pytest.raises(InvalidInput):
        lawrence_lift(A3, 1)


@given(int_matrices(max_m=2, max_n=3), st.integers(2, 4))
def test_lift_kernel_dimension(A, r):
    # rows in Ker(A) summing to zero: (r - 1) * dim Ker(A)
    L = lawrence_lift(A, r)
    assert kernel_basis(L).dim == (r - 1) * kernel_basis(A).dim


@given(int_matrices(max_m=2, max_n=3), st.integers(2, 4))
def test_lift_kernel_elements_are_tableaux(A, r):
    for v in kernel_basis(lawrence_lift(A, r)).basis_rows:
        assert Tableau.from_flat(v, r).is_kernel_element(A)


def test_tableau_literal_round_trip():
    t = Tableau.parse("1,-1,-1,1;0,-1,2,-1;-1,2,-1,0")
    assert t.r == 3 and t.n == 4 and t.type == 3
    assert t.format() == "1,-1,-1,1;0,-1,2,-1;-1,2,-1,0"
    assert Tableau.from_flat(t.flat(), 3) == t
    with pytest.raises(InvalidInput):
        Tableau.parse("1,2;3")
    with pytest.raises(InvalidInput):
        Tableau.parse("1,a")


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_tableau_flat_round_trip(r, n, data):
    v = data.draw(st.lists(st.integers(-5, 5), min_size=r * n, max_size=r * n))
    t = Tableau.from_flat(v, r)
    assert t.flat() == tuple(v)
    assert t.type == sum(1 for row in t.rows if any(row))


def test_family_matrices():
    assert family_As(5).rows == ((0, 1, 4, 5), (1, 1, 1, 1))
    assert family_KT(3, 2).rows == ((1, 3, 6, 8, 1, 1),)
    with pytest.raises(InvalidInput):
        family_As(2)


@pytest.mark.parametrize("s", range(3, 8))
def test_witness_tableau(s):
    t = witness_matrix(s)
    assert t.r == s and t.type == s
    assert t.is_kernel_element(family_As(s))


def test_witness_rows_for_three():
    assert witness_matrix(3).format() == "1,-1,-1,1;0,-1,2,-1;-1,2,-1,0"


def test_bouquet_spec_problems():
    assert BouquetSpec((3, 7, 2021), (-2, 1, 0)).problem() is None
    assert BouquetSpec((2, 4), (1, 0)).problem() is not None
    assert BouquetSpec((-1,), (-1,)).problem() is not None
    assert BouquetSpec.solved((3, 7, 2021)).lam == (-2, 1, 0)


def test_generalized_lawrence_small():
    specs = [BouquetSpec((1, -1), (1, 0))] + [BouquetSpec((1,), (1,))] * 3
    L = generalized_lawrence(A3, specs)
    assert L.rows == ((0, 0, 1, 2, 3), (1, 0, 1, 1, 1), (1, 1, 0, 0, 0))


@pytest.mark.parametrize("s", [3, 4, 5])
def test_generalized_lawrence_matches_reference_matrix(s):
    base = IntMatrix([[1, s, s * s - s, s * s - 1, 1, 1, 1, 1, 1, 1, 1, 1]])
    L = generalized_lawrence(base, kt_lawrence_specs())
    assert L == kt_lawrence_matrix(s)
    assert rank(L) == 6


def test_generalized_lawrence_rejects_bad_specs():
    with pytest.raises(InvalidInput):
        generalized_lawrence(A3, [BouquetSpec((1,), (1,))] * 3)
    with pytest.raises(InvalidInput):
        generalized_lawrence(A3, [BouquetSpec((2, 4), (1, 0))] + [BouquetSpec((1,), (1,))] * 3)


@given(st.lists(st.lists(st.integers(-4, 4), min_size=1, max_size=3), min_size=4, max_size=4))
def test_generalized_lawrence_bouquets_follow_specs(cps):
    # normalize each random c' to a valid direction: coprime, first entry positive, no zeros
    specs = []
    for c in cps:
        c = [x if x else 1 for x in c]
        c[0] = abs(c[0])
        c.append(1)   # forces gcd 1
        specs.append(BouquetSpec.solved(c))
    L = generalized_lawrence(A3, specs)
    dec = bouquets(L)
    assert len(dec.bouquets) == 4 and not dec.has_free
    assert kernel_basis(dec.AB).same_lattice(kernel_basis(A3))


def test_specs_round_trip():
    text = "# comment\ncprime = 1,-1 ; lambda = 1,0\ncprime = 3,7,2021\n"
    specs = parse_specs(text)
    assert specs[0] == BouquetSpec((1, -1), (1, 0))
    assert specs[1].cprime == (3, 7, 2021) and specs[1].lam == ()
    full = [specs[0], BouquetSpec.solved(specs[1].cprime)]
    assert parse_specs(format_specs(full)) == full
    with pytest.raises(InvalidInput):
        parse_specs("lambda = 1\n")


def test_zero_one_fixture():
    F = zero_one_fixture()
    assert F.shape == (15, 15)
    assert {x for row in F.rows for x in row} == {0, 1}
    assert rank(F) == 13
