import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laurent_duality.crossed import (
    CharacterGroup,
    Cocycle,
    CrossedError,
    as_zalg,
    build_crossed,
    center,
    check_module,
    induced_module,
    trace_fsg_certificate,
    ext_R_against_R,
)
from laurent_duality.formats import bundled, load_algebra
from laurent_duality.laurent import Lattice
from laurent_duality.scalars import Field
from laurent_duality.zalg import fsg_probe

Q = Field.rational()


def cyclic(n, d=1):
    """mu_n acting on the first coordinate of Z^d."""
    f = Q if n <= 2 else Field.cyclotomic(n)
    z = f(-1) if n == 2 else f.zeta()
    gen = [z] + [f.one] * (d - 1)
    G = CharacterGroup.generate(f, d, [gen])
    return build_crossed(Lattice(d), G, Cocycle(G))


@pytest.mark.parametrize("fname,lattice,g", [
    ("z2_cross.alg", [[2]], 2), ("z3_cross.alg", [[3]], 3), ("klein_twisted.alg", [[2, 0], [0, 2]], 4)])
def test_bundled_crossed_products(fname, lattice, g):
    lc = load_algebra(bundled(fname))
    r = lc.algebra
    assert r.g == g
    assert [list(map(int, row)) for row in r.center_basis] == lattice
    c = center(r, box=2)
    assert c.verified and c.solution_dim == c.expected_dim
    cert = trace_fsg_certificate(r)
    assert cert.rank == g * g and cert.certified
    for v in lc.modules:
        assert not check_module(r, v)
        e = ext_R_against_R(r, v, cert)
        assert e.agree
        assert {i: k for i, k in e.dims.items() if k} == {r.d: v.dim}


@given(st.integers(2, 5))
@settings(max_examples=4)
def test_cyclic_actions(n):
    r = cyclic(n)
    assert [list(map(int, row)) for row in r.center_basis] == [[n]]
    assert not r.check_associativity() and not r.check_relations()
    cert = trace_fsg_certificate(r)
    assert cert.certified and cert.rank == n * n
    assert center(r, box=2).verified


@given(st.integers(2, 4), st.integers(1, 5))
@settings(max_examples=10)
def test_induced_modules_have_ext_in_top_degree_only(n, a):
    r = cyclic(n)
    v = induced_module(r, [a])
    assert not check_module(r, v)
    e = ext_R_against_R(r, v, trace_fsg_certificate(r))
    assert e.dims == {0: 0, 1: n} and e.agree


def test_as_zalg_is_certified_symmetric_frobenius():
    for n in (2, 3):
        a = as_zalg(cyclic(n), f"mu{n}")
        assert a.rank == n * n
        v = fsg_probe(a, box=1)
        assert v.verdict == "certified-yes"


def test_invalid_inputs_rejected():
    with pytest.raises(CrossedError):
        CharacterGroup(Q, 1, [[1], [2]])  # not closed, 2 is not a root of unity
    G = CharacterGroup(Q, 2, [[1, 1], [-1, 1], [1, -1], [-1, -1]])
    with pytest.raises(CrossedError):
        Cocycle(G, [[1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 1, 2]])
    with pytest.raises(CrossedError):
        build_crossed(Lattice(1), G, Cocycle(G))
    r = cyclic(2)
    with pytest.raises(CrossedError):
        ext_R_against_R(r, induced_module(r, [1]), None)


def test_check_module_detects_bad_b():
    r = cyclic(2)
    v = induced_module(r, [3])
    v.b[1] = [[Q(1), Q(0)], [Q(0), Q(1)]]
    assert check_module(r, v)
