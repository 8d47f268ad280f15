"""Module Gröbner bases over the Laurent ring, carried as k[x1..xd, t]/(x1...xd*t - 1).

All computation happens in the polynomial carrier ring P = k[x1, ..., xd, t]
with the relation u = x1*...*xd*t - 1 adjoined to every submodule, so that a
submodule of P^n containing u*P^n is the same thing as a submodule of A^n.

Term order: position over term (a lower component index is larger), then
degree reverse lexicographic on (x1, ..., xd, t).  Buchberger's algorithm
uses the chain criterion, and the product criterion only for pairs of
single-component vectors (where it is valid for modules).

Vectors of P^n are dicts ``{(position, exponent tuple): coefficient}``.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .laurent import LaurentElt, LaurentMatrix, LaurentRing, snf_univariate_full, strip_unit, companion_matrix
from . import linalg as la

Mono = Tuple[int, ...]
Term = Tuple[int, Mono]
Vec = Dict[Term, object]


class NotFiniteLengthError(ValueError):
    """The module (or cohomology group) has infinitely many standard monomials."""


class ComplexError(ValueError):
    """Consecutive differentials do not compose to zero, or shapes disagree."""


# ---------------------------------------------------------------------------
# term order


def term_key(term: Term):
    pos, mono = term
    return (-pos, sum(mono), tuple(-e for e in reversed(mono)))


def leading(v: Vec) -> Term:
    return max(v, key=term_key)


def _divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_sub(a: Mono, b: Mono) -> Mono:
    return tuple(x - y for x, y in zip(a, b))


def _mono_add(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def _axpy(acc: Vec, c, shift: Mono, v: Vec) -> None:
    """acc += c * x^shift * v (in place)."""
    for (p, m), a in v.items():
        key = (p, _mono_add(m, shift))
        val = acc.get(key)
        prod = c * a
        if val is None:
            acc[key] = prod
        else:
            s = val + prod
            if s:
                acc[key] = s
            else:
                del acc[key]


class _Basis:
    """Working Gröbner basis with leading data indexed by position."""

    def __init__(self):
        self.vecs: List[Vec] = []
        self.lts: List[Term] = []
        self.lcs: List[object] = []
        self.by_pos: Dict[int, List[int]] = {}
        self.single: List[bool] = []
        self.alive: List[bool] = []

    def add(self, v: Vec) -> int:
        lt = leading(v)
        lc = v[lt]
        if lc != 1:
            inv = 1 / lc
            v = {k: c * inv for k, c in v.items()}
        idx = len(self.vecs)
        self.vecs.append(v)
        self.lts.append(lt)
        self.lcs.append(1)
        self.by_pos.setdefault(lt[0], []).append(idx)
        self.single.append(all(p == lt[0] for p, _ in v))
        self.alive.append(True)
        return idx

    def find_divisor(self, term: Term) -> Optional[int]:
        pos, mono = term
        for i in self.by_pos.get(pos, ()):
            if self.alive[i] and _divides(self.lts[i][1], mono):
                return i
        return None

    def reduce(self, v: Vec, full: bool = True) -> Vec:
        p = dict(v)
        r: Vec = {}
        while p:
            lt = leading(p)
            i = self.find_divisor(lt)
            if i is None:
                if not full:
                    r.update(p)
                    return r
                r[lt] = p.pop(lt)
                continue
            c = p[lt]
            shift = _mono_sub(lt[1], self.lts[i][1])
            _axpy(p, -c, shift, self.vecs[i])
            p.pop(lt, None)
        return r


def _spoly(a: Vec, lta: Term, b: Vec, ltb: Term) -> Vec:
    L = _lcm(lta[1], ltb[1])
    out: Vec = {}
    _axpy(out, 1, _mono_sub(L, lta[1]), a)
    _axpy(out, -1, _mono_sub(L, ltb[1]), b)
    return out


def groebner_basis(gens: Sequence[Vec]) -> List[Vec]:
    """Reduced Gröbner basis (monic, sorted by decreasing leading term)."""
    B = _Basis()
    pairs: List[Tuple] = []
    pending = set()
    counter = 0

    def push_pairs(j: int):
        nonlocal counter
        pos = B.lts[j][0]
        for i in B.by_pos.get(pos, ()):
            if i == j or not B.alive[i]:
                continue
            L = _lcm(B.lts[i][1], B.lts[j][1])
            heapq.heappush(pairs, (sum(L), counter, min(i, j), max(i, j)))
            pending.add((min(i, j), max(i, j)))
            counter += 1

    for g in gens:
        g = {k: c for k, c in g.items() if c}
        if not g:
            continue
        g = B.reduce(g)
        if g:
            j = B.add(g)
            push_pairs(j)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        lti, ltj = B.lts[i], B.lts[j]
        L = _lcm(lti[1], ltj[1])
        # product criterion, valid only when both vectors live in one component
        if B.single[i] and B.single[j] and all(a == 0 or b == 0 for a, b in zip(lti[1], ltj[1])):
            continue
        # chain criterion
        skip = False
        for k in B.by_pos.get(lti[0], ()):
            if k in (i, j):
                continue
            if _divides(B.lts[k][1], L):
                if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                    skip = True
                    break
        if skip:
            continue
        s = _spoly(B.vecs[i], lti, B.vecs[j], ltj)
        if not s:
            continue
        h = B.reduce(s)
        if h:
            k = B.add(h)
            push_pairs(k)

    return _interreduce(B)


def _interreduce(B: _Basis) -> List[Vec]:
    n = len(B.vecs)
    keep = []
    for i in range(n):
        lt = B.lts[i]
        redundant = False
        for j in B.by_pos.get(lt[0], ()):
            if j == i:
                continue
            ltj = B.lts[j]
            if _divides(ltj[1], lt[1]) and (ltj[1] != lt[1] or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    R = _Basis()
    for i in keep:
        R.vecs.append(B.vecs[i])
        R.lts.append(B.lts[i])
        R.lcs.append(1)
        R.by_pos.setdefault(B.lts[i][0], []).append(len(R.vecs) - 1)
        R.single.append(B.single[i])
        R.alive.append(True)
    out = []
    for idx in range(len(R.vecs)):
        v = R.vecs[idx]
        lt = R.lts[idx]
        R.alive[idx] = False
        tail = {k: c for k, c in v.items() if k != lt}
        tail = R.reduce(tail) if tail else {}
        R.alive[idx] = True
        nv = dict(tail)
        nv[lt] = 1
        R.vecs[idx] = nv
        out.append(nv)
    out.sort(key=lambda v: term_key(leading(v)), reverse=True)
    return out


def normal_form(v: Vec, basis: Sequence[Vec]) -> Vec:
    B = _Basis()
    for g in basis:
        B.vecs.append(g)
        lt = leading(g)
        B.lts.append(lt)
        B.lcs.append(g[lt])
        B.by_pos.setdefault(lt[0], []).append(len(B.vecs) - 1)
        B.single.append(True)
        B.alive.append(True)
    # basis may be non-monic if supplied externally
    p = dict(v)
    r: Vec = {}
    while p:
        lt = leading(p)
        i = B.find_divisor(lt)
        if i is None:
            r[lt] = p.pop(lt)
            continue
        c = p[lt] / B.lcs[i]
        _axpy(p, -c, _mono_sub(lt[1], B.lts[i][1]), B.vecs[i])
        p.pop(lt, None)
    return r


def is_groebner(basis: Sequence[Vec]) -> bool:
    """Buchberger's criterion: every S-vector reduces to zero."""
    lts = [leading(g) for g in basis]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if lts[i][0] != lts[j][0]:
                continue
            a = {k: c / basis[i][lts[i]] for k, c in basis[i].items()}
            b = {k: c / basis[j][lts[j]] for k, c in basis[j].items()}
            s = _spoly(a, lts[i], b, ltj := lts[j])
            if s and normal_form(s, basis):
                return False
    return True


# ---------------------------------------------------------------------------
# Laurent <-> carrier translation


class Carrier:
    """The polynomial carrier k[x1..xd, t] of a Laurent ring."""

    def __init__(self, ring: LaurentRing):
        self.ring = ring
        self.d = ring.nvars
        self.nv = ring.nvars + 1
        one = ring.field.one
        self.u_terms = {tuple([1] * self.nv): one, tuple([0] * self.nv): -one}

    def lift_mono(self, lam: Sequence[int]) -> Mono:
        k = max(0, -min(lam)) if lam else 0
        return tuple(a + k for a in lam) + (k,)

    def drop_mono(self, mono: Mono) -> Tuple[int, ...]:
        t = mono[-1]
        return tuple(a - t for a in mono[:-1])

    def lift_vector(self, entries: Sequence[LaurentElt], offset: int = 0) -> Vec:
        out: Vec = {}
        for p, f in enumerate(entries):
            for lam, c in f.terms.items():
                key = (p + offset, self.lift_mono(lam))
                out[key] = out.get(key, 0) + c
        return {k: c for k, c in out.items() if c}

    def u_vector(self, pos: int) -> Vec:
        return {(pos, m): c for m, c in self.u_terms.items()}

    def drop_vector(self, v: Vec, n: int, offset: int = 0) -> List[LaurentElt]:
        acc: List[Dict] = [dict() for _ in range(n)]
        for (p, mono), c in v.items():
            lam = self.drop_mono(mono)
            slot = acc[p - offset]
            slot[lam] = slot.get(lam, 0) + c
        return [LaurentElt(self.ring, a) for a in acc]


# ---------------------------------------------------------------------------
# presented modules


@dataclass
class PresentedModule:
    """A^n / (span of ``relations``) over a Laurent ring.

    ``relations`` are Laurent vectors of length n; the Gröbner basis lives in
    the carrier ring and is computed lazily, then cached.
    """

    ring: LaurentRing
    n: int
    relations: List[List[LaurentElt]]
    _gb: Optional[List[Vec]] = dc_field(default=None, repr=False)
    _carrier_relations: Optional[List[Vec]] = dc_field(default=None, repr=False)

    @property
    def carrier(self) -> Carrier:
        return Carrier(self.ring)

    def carrier_generators(self) -> List[Vec]:
        C = self.carrier
        gens = [C.lift_vector(r) for r in self.relations]
        if self._carrier_relations:
            gens.extend(self._carrier_relations)
        gens.extend(C.u_vector(p) for p in range(self.n))
        return gens

    def groebner_basis(self) -> List[Vec]:
        if self._gb is None:
            self._gb = groebner_basis(self.carrier_generators())
        return self._gb

    def check_buchberger(self) -> bool:
        return is_groebner(self.groebner_basis())

    def standard_monomials(self) -> List[Term]:
        return standard_monomials(self.groebner_basis(), self.n, self.carrier.nv)

    def to_finlength(self):
        from .finmod import FinLengthModule

        gb = self.groebner_basis()
        C = self.carrier
        basis = standard_monomials(gb, self.n, C.nv)
        index = {t: i for i, t in enumerate(basis)}
        dim = len(basis)
        field = self.ring.field
        ops = []
        for j in range(C.d):
            mat = [[field.zero] * dim for _ in range(dim)]
            step = tuple(int(k == j) for k in range(C.nv))
            for col, (pos, mono) in enumerate(basis):
                nf = normal_form({(pos, _mono_add(mono, step)): field.one}, gb)
                for term, c in nf.items():
                    mat[index[term]][col] = c
            ops.append(mat)
        return FinLengthModule(field, C.d, ops, dim=dim)


def standard_monomials(gb: Sequence[Vec], n: int, nv: int) -> List[Term]:
    """k-basis of P^n / <gb>; raises NotFiniteLengthError when infinite."""
    lead_by_pos: Dict[int, List[Mono]] = {}
    for g in gb:
        p, m = leading(g)
        lead_by_pos.setdefault(p, []).append(m)
    out: List[Term] = []
    for pos in range(n):
        leads = lead_by_pos.get(pos, [])
        if any(all(e == 0 for e in m) for m in leads):
            continue
        bounds = []
        for v in range(nv):
            pure = [m[v] for m in leads if all(e == 0 for k, e in enumerate(m) if k != v)]
            if not pure:
                raise NotFiniteLengthError(
                    f"component {pos}: no pure power of variable {v} among leading terms"
                )
            bounds.append(min(pure))
        monos: List[Mono] = [()]
        for b in bounds:
            monos = [m + (k,) for m in monos for k in range(b)]
        for m in monos:
            if not any(_divides(l, m) for l in leads):
                out.append((pos, m))
    out.sort(key=term_key)
    return out


# ---------------------------------------------------------------------------
# kernels


def kernel_gens(f: LaurentMatrix) -> List[List[LaurentElt]]:
    """Generators of ker(f : A^m -> A^n) as Laurent vectors of length m."""
    ring = f.ring
    n, m = f.rows, f.cols
    if m == 0:
        return []
    if n == 0 or f.is_zero():
        return [[ring.one if i == k else ring.zero for i in range(m)] for k in range(m)]
    C = Carrier(ring)
    gens: List[Vec] = []
    for k in range(m):
        col = [f.entries[i][k] for i in range(n)]
        v = C.lift_vector(col)
        v[(n + k, (0,) * C.nv)] = ring.field.one
        gens.append(v)
    for j in range(n + m):
        gens.append(C.u_vector(j))
    gb = groebner_basis(gens)
    out = []
    seen = set()
    for g in gb:
        if leading(g)[0] < n:
            continue
        vec = C.drop_vector(g, m, offset=n)
        if all(not x for x in vec):
            continue
        vec = _normalize_unit(vec)
        key = tuple(vec)
        if key in seen:
            continue
        seen.add(key)
        out.append(vec)
    return out


def _normalize_unit(vec: List[LaurentElt]) -> List[LaurentElt]:
    """Scale by a unit so the first nonzero entry has lowest term 1 * x^0."""
    lead = next(x for x in vec if x)
    lam, c = min(lead.terms.items())
    ring = lead.ring
    unit = ring.monomial([-e for e in lam], 1 / c)
    return [x * unit for x in vec]


# ---------------------------------------------------------------------------
# complexes of free modules


@dataclass
class FreeComplex:
    """Bounded cochain complex of finite free A-modules.

    ``ranks[i]`` is the rank in degree i for lo <= i <= hi; ``diffs[i]`` is the
    matrix of C^i -> C^{i+1} (shape ranks[i+1] x ranks[i]) for lo <= i < hi.
    """

    ring: LaurentRing
    lo: int
    hi: int
    ranks: Dict[int, int]
    diffs: Dict[int, LaurentMatrix]

    def __post_init__(self):
        self.validate()

    def rank(self, i: int) -> int:
        return self.ranks.get(i, 0)

    def diff(self, i: int) -> LaurentMatrix:
        if i in self.diffs:
            return self.diffs[i]
        return LaurentMatrix.zero(self.ring, self.rank(i + 1), self.rank(i))

    def validate(self) -> None:
        for i in range(self.lo, self.hi):
            d = self.diff(i)
            if (d.rows, d.cols) != (self.rank(i + 1), self.rank(i)):
                raise ComplexError(f"differential {i} has shape {d.rows}x{d.cols}")
        for i in range(self.lo, self.hi - 1):
            if not (self.diff(i + 1) @ self.diff(i)).is_zero():
                raise ComplexError(f"d^{i + 1} d^{i} != 0")

    def dual(self) -> "FreeComplex":
        """Hom_A(-, A): degree i goes to degree -i, differentials transposed."""
        ranks = {-i: r for i, r in self.ranks.items()}
        diffs = {-(i + 1): self.diff(i).transpose() for i in range(self.lo, self.hi)}
        return FreeComplex(self.ring, -self.hi, -self.lo, ranks, diffs)


def cohomology_at(c: FreeComplex, i: int):
    """H^i(c) as a FinLengthModule, via module Gröbner bases in the carrier ring."""
    from .finmod import FinLengthModule

    ring = c.ring
    ni = c.rank(i)
    if ni == 0:
        return FinLengthModule.zero(ring.field, ring.nvars)
    C = Carrier(ring)
    out_d = c.diff(i) if i < c.hi else None
    in_d = c.diff(i - 1) if i > c.lo else None
    top = out_d is None or out_d.rows == 0 or out_d.is_zero()
    if top:
        # ker = everything; H = coker(in_d)
        rel = []
        if in_d is not None:
            for l in range(in_d.cols):
                rel.append([in_d.entries[r][l] for r in range(ni)])
        pm = PresentedModule(ring, ni, rel)
        return pm.to_finlength()
    G = kernel_gens(out_d)
    s = len(G)
    if s == 0:
        return FinLengthModule.zero(ring.field, ring.nvars)
    gens: List[Vec] = []
    one = ring.field.one
    for k, g in enumerate(G):
        v = C.lift_vector(g)
        v[(ni + k, (0,) * C.nv)] = one
        gens.append(v)
    if in_d is not None:
        for l in range(in_d.cols):
            gens.append(C.lift_vector([in_d.entries[r][l] for r in range(ni)]))
    for j in range(ni + s):
        gens.append(C.u_vector(j))
    gb = groebner_basis(gens)
    rel = []
    for g in gb:
        if leading(g)[0] >= ni:
            rel.append({(p - ni, m): a for (p, m), a in g.items()})
    pm = PresentedModule(ring, s, [])
    pm._gb = groebner_basis(rel)
    return pm.to_finlength()


def cohomology_snf(c: FreeComplex, i: int):
    """H^i(c) for d = 1 via Smith normal forms over k[x^±] (independent oracle)."""
    from .finmod import FinLengthModule

    ring = c.ring
    if ring.nvars != 1:
        raise ValueError("the Smith normal form path needs d = 1")
    field = ring.field
    ni = c.rank(i)
    if ni == 0:
        return FinLengthModule.zero(field, 1)
    G = c.diff(i) if i < c.hi else LaurentMatrix.zero(ring, 0, ni)
    if G.rows == 0:
        r = 0
        Vinv = LaurentMatrix.identity(ring, ni)
    else:
        U, D, V, Uinv, Vinv = snf_univariate_full(G)
        r = sum(1 for k in range(min(D.rows, D.cols)) if D.entries[k][k])
    keep = ni - r
    if keep == 0:
        return FinLengthModule.zero(field, 1)
    if i > c.lo and c.rank(i - 1):
        F = Vinv @ c.diff(i - 1)
        Fp = LaurentMatrix(ring, F.entries[r:], keep, F.cols)
    else:
        Fp = LaurentMatrix.zero(ring, keep, 0)
    if Fp.cols == 0:
        raise NotFiniteLengthError(f"H^{i} contains a free summand")
    _, D2, _, _, _ = snf_univariate_full(Fp)
    diag = [D2.entries[k][k] for k in range(min(D2.rows, D2.cols))]
    if len([f for f in diag if f]) < keep:
        raise NotFiniteLengthError(f"H^{i} contains a free summand")
    blocks = []
    for f in diag:
        g = strip_unit(f)
        if g.is_unit():
            continue
        blocks.append(companion_matrix(g))
    if not blocks:
        return FinLengthModule.zero(field, 1)
    mat = la.block_diag(blocks)
    mat = [[field(x) for x in row] for row in mat]
    return FinLengthModule(field, 1, [mat])
