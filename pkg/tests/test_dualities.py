import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from laurent_duality.corpus import CorpusConfig, d1_corpus, dn_corpus, jordan_block, random_module
from laurent_duality.dualities import gs_dual, homological_dual, koszul_resolution, verify_three_dualities
from laurent_duality.finmod import FinLengthModule, dual_module, is_isomorphic
from laurent_duality.report import PASS
from laurent_duality.scalars import Field

Q = Field.rational()


@pytest.mark.parametrize("d,dim,ranks", [(1, 1, [1, 1]), (2, 1, [1, 2, 1]), (2, 3, [3, 6, 3])])
def test_koszul_ranks(d, dim, ranks):
    m = random_module(Q, d, dim, random.Random(1))
    c = koszul_resolution(m)
    assert [c.rank(-p) for p in range(d, -1, -1)] == ranks


def test_homological_dual_of_character():
    hd = homological_dual(FinLengthModule.character(Q, [Fraction(3, 2)]))
    assert hd[0].dim == 0
    assert hd[1].ops == [[[Fraction(3, 2)]]]


def test_homological_dual_of_jordan_block_via_snf():
    j = FinLengthModule(Q, 1, [jordan_block(Q, 2, 2)])
    hd = homological_dual(j, "snf")
    assert hd[0].dim == 0 and is_isomorphic(hd[1], j)


def test_trivial_module_top_degree():
    for d in (2, 3):
        hd = homological_dual(FinLengthModule.character(Q, [1] * d))
        assert [hd[i].dim for i in range(d)] == [0] * d
        assert hd[d].dim == 1 and all(t == [[1]] for t in hd[d].ops)


def test_gs_dual_degrees():
    g = gs_dual(FinLengthModule.character(Q, [4]))
    assert g[0].ops == [[[4]]] and g[-1].dim == 0
    g2 = gs_dual(FinLengthModule.character(Q, [1, 1]))
    assert g2[0].dim == 1 and g2[-1].dim == 0 and g2[-2].dim == 0
    zero = gs_dual(FinLengthModule.zero(Q, 1))
    assert all(m.dim == 0 for m in zero.values())


def test_verify_examples():
    r = verify_three_dualities(FinLengthModule.character(Q, [7]))
    assert r.passed and len(r.assertions) == 4
    r = verify_three_dualities(FinLengthModule.character(Q, [1, 1, 1]))
    assert r.passed
    contragredient = next(a for a in r.assertions if a.id == "contragredient")
    assert contragredient.witness["intertwiner"] is not None


def test_corpus_shapes():
    items = d1_corpus(CorpusConfig())
    assert len(items) >= 30
    assert all(m.rank == 1 and m.dim <= 6 for _, m in items)
    assert {m.field.kind for _, m in items} == {"rational", "cyclotomic"}
    assert len(dn_corpus(2, 5)) == 6


@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(1, 2), st.sampled_from([1, 4]))
def test_three_dualities_on_random_modules(seed, dim, d, n):
    field = Q if n == 1 else Field.cyclotomic(n)
    m = random_module(field, d, dim, random.Random(seed))
    r = verify_three_dualities(m)
    assert all(a.status == PASS for a in r.assertions), r.to_text()


@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_top_degree_is_contragredient_not_module(seed, dim):
    # Ext^1 is M* in general; for d = 1 M* is isomorphic to M (a matrix is similar to its transpose)
    m = random_module(Q, 1, dim, random.Random(seed))
    top = homological_dual(m)[1]
    assert is_isomorphic(top, dual_module(m))
