from fractions import Fraction
from itertools import product

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from laurent_duality import linalg as la
from laurent_duality.laurent import (
    Lattice,
    LaurentMatrix,
    LaurentRing,
    character_exponents,
    coset_representatives,
    fixed_sublattice,
    hnf_rows,
    integer_snf,
    is_unit,
    reduce_mod_hnf,
    snf_univariate,
    strip_unit,
)
from laurent_duality.scalars import Field

Q = Field.rational()
R1 = LaurentRing(Q, 1, ["x"])
R2 = LaurentRing(Q, 2, ["x", "y"])


def laurent_polys(ring, max_terms=3, lo=-2, hi=2):
    exps = st.tuples(*[st.integers(lo, hi)] * ring.nvars)
    coeff = st.integers(-3, 3).filter(bool)
    return st.dictionaries(exps, coeff, max_size=max_terms).map(
        lambda d: sum((ring.monomial(e, c) for e, c in d.items()), ring.zero))


def same_lattice(a, b, dim):
    return hnf_rows(a, dim) == hnf_rows(b, dim)


def test_units():
    assert is_unit(R2.parse("3*x^2*y^-1"))
    assert not is_unit(R2.parse("1 + x"))
    assert not is_unit(R2.zero)


def test_fixed_sublattice_examples():
    G = [[Q(-1)]]
    assert fixed_sublattice(Lattice(1), G, Q) == [[2]]
    K = Field.cyclotomic(3)
    z = K.zeta(1)
    got = fixed_sublattice(Lattice(2), [[z, z]], K)
    assert same_lattice(got, [[1, -1], [3, 0]], 2)
    assert same_lattice(fixed_sublattice(Lattice(2), [], Q), [[1, 0], [0, 1]], 2)
    got = fixed_sublattice(Lattice(2), [[Q(-1), Q(-1)]], Q)
    assert same_lattice(got, [[1, 1], [2, 0]], 2)


@pytest.mark.parametrize("n,chars", [
    (3, [["z", "z"]]),
    (4, [["z", "1"], ["1", "z^2"]]),
    (6, [["z", "z^3"]]),
    (5, [["z^2", "1", "z"]]),
])
def test_fixed_sublattice_is_fixed_and_has_right_index(n, chars):
    K = Field.cyclotomic(n)
    gens = [[K.parse(c) for c in ch] for ch in chars]
    d = len(gens[0])
    basis = fixed_sublattice(Lattice(d), gens, K)
    for lam in basis:
        for chi in gens:
            v = K.one
            for c, k in zip(chi, lam):
                v = v * c ** k
            assert v == K.one
    # index = number of distinct values of Γ's evaluation, brute-forced on a box of residues
    index = abs(sp.Matrix(basis).det())
    values = set()
    for lam in product(range(n), repeat=d):
        values.add(tuple(
            K.format(_eval(chi, lam, K)) for chi in gens))
    assert index == len(values)
    assert len(coset_representatives(hnf_rows(basis, d))) == index


def _eval(chi, lam, K):
    v = K.one
    for c, k in zip(chi, lam):
        v = v * c ** k
    return v


def test_character_exponents_rejects_non_roots():
    with pytest.raises(ValueError):
        character_exponents(Q, [[Q(2)]])


def test_reduce_mod_hnf():
    hnf = [[1, 2], [0, 3]]
    rep, q = reduce_mod_hnf([5, 7], hnf)
    recon = [rep[j] + sum(q[i] * hnf[i][j] for i in range(2)) for j in range(2)]
    assert recon == [5, 7]
    assert tuple(rep) in coset_representatives(hnf)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_integer_snf_contract(a):
    U, D, V = integer_snf(a)
    assert la.matmul(la.matmul(U, a), V) == D
    assert abs(sp.Matrix(U).det()) == 1 and abs(sp.Matrix(V).det()) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    for x, y in zip(diag, diag[1:]):
        assert (y == 0) or (x != 0 and y % x == 0)


def _check_snf(m):
    U, D, V = snf_univariate(m)
    assert (U @ m @ V).entries == D.entries
    assert is_unit(U.det()) and is_unit(V.det())
    diag = [D.entries[i][i] for i in range(min(D.rows, D.cols))]
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert not D.entries[i][j]
    for a, b in zip(diag, diag[1:]):
        if b:
            assert a and not _poly_rem(b, a)
    return D


def _poly_rem(b, a):
    x = sp.Symbol("x")
    pa = sp.Poly(_to_sympy(strip_unit(a), x), x)
    pb = sp.Poly(_to_sympy(strip_unit(b), x), x)
    return not pb.rem(pa).is_zero


def _to_sympy(f, x):
    return sum(sp.Rational(c.numerator, c.denominator) * x ** e[0] for e, c in f.terms.items())


def test_snf_examples():
    D = _check_snf(LaurentMatrix.parse(R1, [["x - 1"]]))
    assert D.entries == [[R1.parse("x - 1")]]
    D = _check_snf(LaurentMatrix.parse(R1, [["x", "1"], ["0", "x"]]))
    assert D.entries[0][0] == R1.one
    assert D.entries[1][1] == R1.parse("x^2")
    D = _check_snf(LaurentMatrix.zero(R1, 2, 2))
    assert D.is_zero()


@given(st.lists(st.lists(laurent_polys(R1), min_size=2, max_size=2), min_size=1, max_size=3))
def test_snf_contract_random(rows):
    _check_snf(LaurentMatrix(R1, rows))


@given(laurent_polys(R2), laurent_polys(R2), laurent_polys(R2))
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(laurent_polys(R2, max_terms=4))
def test_parse_format_round_trip(f):
    assert R2.parse(R2.format(f)) == f


@given(laurent_polys(R2), st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
def test_exact_division_by_products(a, shift):
    b = R2.parse("x + 2*y^-1") * R2.monomial(shift)
    assert (a * b).exact_div(b) == a


def test_evaluate_and_det():
    m = LaurentMatrix.parse(R2, [["x", "y"], ["1", "x^-1"]])
    assert m.det() == R2.parse("1 - y")
    assert R2.parse("x^-1 + y").evaluate([Fraction(2), Fraction(3)]) == Fraction(7, 2)
