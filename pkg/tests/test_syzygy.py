import random

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from laurent_duality.corpus import random_module
from laurent_duality.dualities import koszul_resolution
from laurent_duality.finmod import FinLengthModule, is_isomorphic
from laurent_duality.laurent import LaurentMatrix, LaurentRing
from laurent_duality.scalars import Field
from laurent_duality.syzygy import (
    ComplexError,
    FreeComplex,
    NotFiniteLengthError,
    PresentedModule,
    cohomology_at,
    cohomology_snf,
    groebner_basis,
    is_groebner,
    kernel_gens,
    normal_form,
)

Q = Field.rational()
R1 = LaurentRing(Q, 1, ["x"])
R2 = LaurentRing(Q, 2, ["x", "y"])

monos = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
polys = st.dictionaries(monos, st.integers(-3, 3).filter(bool), min_size=1, max_size=3)


def as_vec(p, pos=0):
    return {(pos, m): Q(c) for m, c in p.items()}


def monic_sympy(gens, syms):
    out = set()
    for g in gens:
        poly = sp.Poly(g, *syms)
        out.add(sp.Poly(poly.monic(), *syms).as_expr())
    return out


def to_expr(v, syms):
    return sum(sp.Rational(c.numerator, c.denominator) * sp.Mul(*[s ** e for s, e in zip(syms, m)])
               for (_, m), c in v.items())


@given(st.lists(polys, min_size=1, max_size=3))
def test_ideal_groebner_matches_sympy(ps):
    syms = sp.symbols("x y t")
    gb = groebner_basis([as_vec(p) for p in ps])
    assert is_groebner(gb)
    ours = monic_sympy([to_expr(g, syms) for g in gb], syms)
    theirs = sp.groebner([to_expr(as_vec(p), syms) for p in ps], *syms, order="grevlex")
    assert ours == monic_sympy(list(theirs.exprs), syms)


small = st.dictionaries(st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 1)),
                        st.integers(-2, 2).filter(bool), min_size=1, max_size=2)


@given(st.lists(st.tuples(small, small), min_size=1, max_size=3))
def test_module_groebner_reduces_generators_and_is_deterministic(pairs):
    gens = [{**as_vec(a, 0), **as_vec(b, 1)} for a, b in pairs]
    gb = groebner_basis(gens)
    assert is_groebner(gb)
    for g in gens:
        assert not normal_form(g, gb)
    assert groebner_basis(gens) == gb
    assert groebner_basis(list(reversed(gens))) == gb


def test_kernel_examples():
    assert kernel_gens(LaurentMatrix.parse(R1, [["x - 3"]])) == []
    (k,) = kernel_gens(LaurentMatrix.parse(R2, [["x - 1", "y - 1"]]))
    # the Koszul syzygy, up to a unit
    target = [R2.parse("y - 1"), R2.parse("-x + 1")]
    for a, b in zip(k, target):
        assert a and b
        assert len(a.terms) == len(b.terms)
    assert k[0] * target[1] == k[1] * target[0]
    (k0,) = kernel_gens(LaurentMatrix.zero(R1, 1, 1))
    assert k0 == [R1.one]


entries = st.sampled_from(["x - 1", "y + 2", "x*y - 1", "x^-1", "0", "y^2 - x"])


@given(st.integers(2, 3).flatmap(
    lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=1, max_size=2)))
def test_kernel_generators_are_in_the_kernel(rows):
    f = LaurentMatrix.parse(R2, rows)
    for k in kernel_gens(f):
        col = LaurentMatrix(R2, [[x] for x in k])
        assert (f @ col).is_zero()


def test_complex_validation():
    a = LaurentMatrix.parse(R1, [["1"]])
    with pytest.raises(ComplexError):
        FreeComplex(R1, 0, 2, {0: 1, 1: 1, 2: 1}, {0: a, 1: a})


def test_not_finite_length():
    with pytest.raises(NotFiniteLengthError):
        PresentedModule(R1, 1, []).standard_monomials()


def test_cokernel_of_x_minus_a():
    c = FreeComplex(R1, 0, 1, {0: 1, 1: 1}, {0: LaurentMatrix.parse(R1, [["x - 5"]])})
    h = cohomology_at(c, 1)
    assert h.dim == 1 and h.ops == [[[Q(5)]]]
    assert cohomology_at(c, 0).dim == 0
    assert is_isomorphic(h, cohomology_snf(c, 1))


def test_koszul_dual_of_trivial_d2():
    dual = koszul_resolution(FinLengthModule.character(Q, [1, 1])).dual()
    assert cohomology_at(dual, 0).dim == 0
    assert cohomology_at(dual, 1).dim == 0
    top = cohomology_at(dual, 2)
    assert top.dim == 1 and top.ops == [[[Q(1)]], [[Q(1)]]]


@given(st.integers(0, 10 ** 6), st.integers(1, 4), st.sampled_from([1, 3, 4]))
def test_groebner_and_snf_agree_for_d1(seed, dim, n):
    field = Q if n == 1 else Field.cyclotomic(n)
    m = random_module(field, 1, dim, random.Random(seed))
    dual = koszul_resolution(m).dual()
    for i in (0, 1):
        assert is_isomorphic(cohomology_at(dual, i), cohomology_snf(dual, i))


def test_koszul_complex_squares_to_zero():
    m = random_module(Q, 3, 2, random.Random(7))
    c = koszul_resolution(m)
    assert [c.rank(i) for i in range(-3, 1)] == [2, 6, 6, 2]
