"""Twisted crossed products A ⋊_c Γ of a Laurent ring by a finite group of characters.

Basis e_λ b_χ (λ in Z^d, χ in Γ) with multiplication

    (e_λ b_χ)(e_μ b_ψ) = χ(μ) c(χ,ψ) e_{λ+μ} b_{χψ},

so b_χ e_μ = χ(μ) e_μ b_χ.  A module is a finite-length A-module (operators
T_j) together with matrices B_χ satisfying B_χ T_j B_χ^{-1} = χ_j T_j and
B_χ B_ψ = c(χ,ψ) B_{χψ}.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg as la
from .dualities import homological_dual
from .finmod import FinLengthModule
from .laurent import (
    Lattice,
    LaurentMatrix,
    LaurentRing,
    coset_representatives,
    fixed_sublattice,
    is_unit,
    reduce_mod_hnf,
)
from .scalars import Field
from .syzygy import FreeComplex, cohomology_at


class CrossedError(ValueError):
    """Invalid character group, cocycle or module data."""


# ---------------------------------------------------------------------------
# characters and cocycles


def char_value(field: Field, chi: Sequence, mu: Sequence[int]):
    v = field.one
    for c, k in zip(chi, mu):
        if k:
            v = v * (c ** k)
    return v


class CharacterGroup:
    """Finite group of characters of Z^d, each stored by its values on the standard basis."""

    def __init__(self, field: Field, rank: int, elements: Sequence[Sequence]):
        self.field = field
        self.rank = rank
        self.elements: List[Tuple] = [tuple(field(v) for v in e) for e in elements]
        errors = self._validate()
        if errors:
            raise CrossedError("; ".join(errors))
        index = {e: i for i, e in enumerate(self.elements)}
        g = len(self.elements)
        self.table = [[index[self._mul(self.elements[i], self.elements[j])] for j in range(g)] for i in range(g)]
        self.identity = index[tuple([field.one] * rank)]
        self.inverse = [next(j for j in range(g) if self.table[i][j] == self.identity) for i in range(g)]
        self._values: Dict[Tuple[int, Tuple[int, ...]], object] = {}

    @classmethod
    def generate(cls, field: Field, rank: int, generators: Sequence[Sequence]) -> "CharacterGroup":
        one = tuple([field.one] * rank)
        gens = [tuple(field(v) for v in g) for g in generators]
        # roots of unity in Q(zeta_n) have order dividing lcm(2, n)
        order = 2 if field.kind == "rational" else (field.n if field.n % 2 == 0 else 2 * field.n)
        for g in gens:
            if any(v ** order != field.one for v in g):
                raise CrossedError(f"generator {[field.format(v) for v in g]} has a value that is not a root of unity")
        elems = [one]
        seen = {one}
        frontier = [one]
        while frontier:
            nxt = []
            for e in frontier:
                for g in gens:
                    p = tuple(a * b for a, b in zip(e, g))
                    if p not in seen:
                        seen.add(p)
                        elems.append(p)
                        nxt.append(p)
            frontier = nxt
        return cls(field, rank, elems)

    def _mul(self, a, b):
        return tuple(x * y for x, y in zip(a, b))

    def _validate(self) -> List[str]:
        errs = []
        es = self.elements
        if len(set(es)) != len(es):
            errs.append("duplicate characters")
        for e in es:
            if len(e) != self.rank:
                errs.append(f"character {e} has wrong length")
                return errs
        s = set(es)
        if tuple([self.field.one] * self.rank) not in s:
            errs.append("trivial character missing")
        for a in es:
            for b in es:
                if self._mul(a, b) not in s:
                    errs.append("not closed under products")
                    return errs
        return errs

    def __len__(self):
        return len(self.elements)

    def value(self, i: int, mu: Sequence[int]):
        key = (i, tuple(mu))
        v = self._values.get(key)
        if v is None:
            v = self._values[key] = char_value(self.field, self.elements[i], mu)
        return v


class Cocycle:
    """Normalized 2-cocycle Γ x Γ -> k^x, indexed by group element positions."""

    def __init__(self, group: CharacterGroup, table: Optional[Sequence[Sequence]] = None):
        g = len(group)
        f = group.field
        self.group = group
        if table is None:
            table = [[f.one] * g for _ in range(g)]
        self.table = [[f(x) for x in row] for row in table]
        errors = self.validate()
        if errors:
            raise CrossedError("; ".join(errors))

    def __call__(self, i: int, j: int):
        return self.table[i][j]

    def validate(self) -> List[str]:
        G = self.group
        g = len(G)
        t = G.table
        errs = []
        if len(self.table) != g or any(len(r) != g for r in self.table):
            return [f"cocycle table must be {g}x{g}"]
        if any(not x for r in self.table for x in r):
            errs.append("cocycle takes the value 0")
        e = G.identity
        for i in range(g):
            if self.table[e][i] != 1 or self.table[i][e] != 1:
                errs.append("cocycle is not normalized")
                break
        for a, b, c in product(range(g), repeat=3):
            if self.table[a][b] * self.table[t[a][b]][c] != self.table[b][c] * self.table[a][t[b][c]]:
                errs.append(f"cocycle identity fails at ({a},{b},{c})")
                break
        return errs


# ---------------------------------------------------------------------------
# the algebra


Elt = Dict[Tuple[Tuple[int, ...], int], object]


@dataclass
class CrossedAlgebra:
    field: Field
    lattice: Lattice
    group: CharacterGroup
    cocycle: Cocycle
    center_basis: List[List[int]] = dc_field(default_factory=list)
    coset_reps: List[Tuple[int, ...]] = dc_field(default_factory=list)

    @property
    def d(self) -> int:
        return self.lattice.rank

    @property
    def g(self) -> int:
        return len(self.group)

    def mul(self, x: Elt, y: Elt) -> Elt:
        out: Elt = {}
        G = self.group
        for (lam, chi), a in x.items():
            for (mu, psi), b in y.items():
                coeff = a * b * G.value(chi, mu) * self.cocycle(chi, psi)
                key = (tuple(p + q for p, q in zip(lam, mu)), G.table[chi][psi])
                s = out.get(key, 0) + coeff
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return out

    def e(self, lam: Sequence[int], chi: Optional[int] = None) -> Elt:
        return {(tuple(lam), self.group.identity if chi is None else chi): self.field.one}

    def b(self, chi: int) -> Elt:
        return {(tuple([0] * self.d), chi): self.field.one}

    def generators(self) -> List[Elt]:
        gens = []
        for j in range(self.d):
            for s in (1, -1):
                gens.append(self.e([s if k == j else 0 for k in range(self.d)]))
        gens.extend(self.b(i) for i in range(self.g))
        return gens

    def check_associativity(self) -> List[str]:
        basic = [self.e([0] * self.d, chi) for chi in range(self.g)]
        for j in range(self.d):
            for s in (1, -1):
                lam = [s if k == j else 0 for k in range(self.d)]
                basic.extend(self.e(lam, chi) for chi in range(self.g))
        for x, y, z in product(basic, repeat=3):
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                return [f"associativity fails on {list(x)}, {list(y)}, {list(z)}"]
        return []

    def check_relations(self) -> List[str]:
        """e_μ b_χ = χ(μ)^{-1} b_χ e_μ for basis vectors μ and all χ."""
        errs = []
        for j in range(self.d):
            mu = [int(k == j) for k in range(self.d)]
            for chi in range(self.g):
                lhs = self.mul(self.e(mu), self.b(chi))
                rhs = self.mul(self.b(chi), self.e(mu))
                rhs = {k: v / self.group.value(chi, mu) for k, v in rhs.items()}
                if lhs != rhs:
                    errs.append(f"relation fails for mu={mu}, chi={chi}")
        return errs


def build_crossed(lattice: Lattice, group: CharacterGroup, cocycle: Cocycle) -> CrossedAlgebra:
    if group.rank != lattice.rank:
        raise CrossedError("character group and lattice have different ranks")
    if cocycle.group is not group:
        raise CrossedError("cocycle belongs to a different group")
    basis = fixed_sublattice(lattice, group.elements, group.field)
    r = CrossedAlgebra(group.field, lattice, group, cocycle, basis, coset_representatives(basis))
    errors = r.check_associativity() + r.check_relations()
    if errors:
        raise CrossedError("; ".join(errors))
    return r


# ---------------------------------------------------------------------------
# center


@dataclass
class CenterResult:
    basis: List[List[int]]
    verified: bool
    box: int
    solution_dim: int
    expected_dim: int
    messages: List[str]


def center(r: CrossedAlgebra, box: int = 2) -> CenterResult:
    """Center k[Λ0] of r, re-verified by solving commutation equations in an exponent box."""
    G, d, f = r.group, r.d, r.field
    msgs = []
    for lam in r.center_basis:
        for chi in range(r.g):
            if G.value(chi, lam) != 1:
                msgs.append(f"character {chi} is nontrivial on center vector {lam}")
    box_pts = list(product(range(-box, box + 1), repeat=d))
    unknowns = [(lam, chi) for lam in box_pts for chi in range(r.g)]
    col = {u: i for i, u in enumerate(unknowns)}
    n = len(unknowns)
    rows: Dict[tuple, list] = {}
    gens = r.generators()
    for gi, gen in enumerate(gens):
        for k, (lam, chi) in enumerate(unknowns):
            x = {(lam, chi): f.one}
            comm = r.mul(gen, x)
            for key, v in r.mul(x, gen).items():
                comm[key] = comm.get(key, 0) - v
            for key, v in comm.items():
                if v:
                    row = rows.setdefault((gi, key), [f.zero] * n)
                    row[k] = row[k] + v
    null = la.nullspace(list(rows.values()), n) if rows else la.identity(n, f.one, f.zero)
    # expected: e_λ with λ in Λ0 ∩ box, identity character
    expected = []
    for lam in box_pts:
        nu, _ = reduce_mod_hnf(lam, r.center_basis)
        if all(v == 0 for v in nu):
            vec = [f.zero] * n
            vec[col[(lam, G.identity)]] = f.one
            expected.append(vec)
    same = la.rank(null + expected) == len(expected) == len(null) if null or expected else True
    if not same:
        msgs.append(f"commutant in box has dimension {len(null)}, expected {len(expected)}")
    return CenterResult(r.center_basis, not msgs, box, len(null), len(expected), msgs)


# ---------------------------------------------------------------------------
# trace pairing over the center


def center_ring(r: CrossedAlgebra) -> LaurentRing:
    return LaurentRing(r.field, r.d, [f"y{i + 1}" for i in range(r.d)])


def z_basis(r: CrossedAlgebra) -> List[Tuple[Tuple[int, ...], int]]:
    return [(nu, chi) for nu in r.coset_reps for chi in range(r.g)]


def z_structure_constants(r: CrossedAlgebra):
    """Products of Z-basis elements: table[i][j] = (k, coefficient in Z) with b_i b_j = coeff * b_k."""
    Z = center_ring(r)
    basis = z_basis(r)
    index = {b: i for i, b in enumerate(basis)}
    G = r.group
    table = []
    for (nu, chi) in basis:
        row = []
        for (mu, psi) in basis:
            c = G.value(chi, mu) * r.cocycle(chi, psi)
            total = tuple(a + b for a, b in zip(nu, mu))
            rep, q = reduce_mod_hnf(total, r.center_basis)
            k = index[(tuple(rep), G.table[chi][psi])]
            row.append((k, Z.monomial(q, c)))
        table.append(row)
    return Z, basis, table


def left_mult_matrix(table, i: int, Z: LaurentRing) -> LaurentMatrix:
    n = len(table)
    ent = [[Z.zero] * n for _ in range(n)]
    for j in range(n):
        k, c = table[i][j]
        ent[k][j] = ent[k][j] + c
    return LaurentMatrix(Z, ent, n, n)


@dataclass
class TraceCertificate:
    rank: int
    gram: LaurentMatrix
    determinant: object
    unit: bool
    symmetric: bool

    @property
    def certified(self) -> bool:
        return self.unit and self.symmetric


def trace_fsg_certificate(r: CrossedAlgebra) -> TraceCertificate:
    """Gram matrix of the regular trace on the HNF coset basis; a unit determinant certifies FsG."""
    Z, basis, table = z_structure_constants(r)
    n = len(basis)
    traces = []
    for i in range(n):
        L = left_mult_matrix(table, i, Z)
        t = Z.zero
        for k in range(n):
            t = t + L.entries[k][k]
        traces.append(t)
    ent = [[Z.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            k, c = table[i][j]
            ent[i][j] = c * traces[k]
    gram = LaurentMatrix(Z, ent, n, n)
    det = gram.det()
    symmetric = all(ent[i][j] == ent[j][i] for i in range(n) for j in range(n))
    return TraceCertificate(n, gram, det, is_unit(det), symmetric)


# ---------------------------------------------------------------------------
# modules


@dataclass
class CrossedModule:
    """A finite-length A-module with matrices B_χ, one per group element (in group order)."""

    base: FinLengthModule
    b: List[list]
    name: str = "module"

    @property
    def dim(self) -> int:
        return self.base.dim


def check_module(r: CrossedAlgebra, v: CrossedModule) -> List[str]:
    errs = []
    m = v.base
    if m.rank != r.d or m.field != r.field:
        return ["module has the wrong rank or field"]
    n = m.dim
    if len(v.b) != r.g:
        return [f"expected {r.g} b-matrices, got {len(v.b)}"]
    one, zero = r.field.one, r.field.zero
    ident = la.identity(n, one, zero)
    if not la.equal(v.b[r.group.identity], ident):
        errs.append("b of the trivial character is not the identity")
    for chi in range(r.g):
        B = v.b[chi]
        for j in range(r.d):
            val = r.group.elements[chi][j]
            if not la.equal(la.matmul(B, m.ops[j]), la.scale(val, la.matmul(m.ops[j], B))):
                errs.append(f"B_{chi} T_{j + 1} != chi_{j + 1} T_{j + 1} B_{chi}")
        for psi in range(r.g):
            lhs = la.matmul(B, v.b[psi])
            rhs = la.scale(r.cocycle(chi, psi), v.b[r.group.table[chi][psi]])
            if not la.equal(lhs, rhs):
                errs.append(f"B_{chi} B_{psi} != c B_{r.group.table[chi][psi]}")
    return errs


def induced_module(r: CrossedAlgebra, point: Sequence, name: str = "induced") -> CrossedModule:
    """The |Γ|-dimensional module on basis v_γ with T_j v_γ = a_j γ_j^{-1} v_γ, B_χ v_γ = c(χ,γ) v_{χγ}."""
    f = r.field
    g = r.g
    G = r.group
    ops = []
    for j in range(r.d):
        t = la.zeros(g, g, f.zero)
        for gam in range(g):
            t[gam][gam] = f(point[j]) / G.elements[gam][j]
        ops.append(t)
    bs = []
    for chi in range(g):
        B = la.zeros(g, g, f.zero)
        for gam in range(g):
            B[G.table[chi][gam]][gam] = r.cocycle(chi, gam)
        bs.append(B)
    return CrossedModule(FinLengthModule(f, r.d, ops, dim=g), bs, name)


def restrict_to_center(r: CrossedAlgebra, v: CrossedModule) -> FinLengthModule:
    return v.base.restrict(r.center_basis)


# ---------------------------------------------------------------------------
# Ext over the crossed product


@dataclass
class ExtResult:
    dims: Dict[int, int]
    modules: Dict[int, FinLengthModule]
    direct_dims: Optional[Dict[int, int]] = None
    agree: Optional[bool] = None


def ext_R_against_R(r: CrossedAlgebra, v: CrossedModule, certificate: Optional[TraceCertificate] = None,
                    direct: bool = True) -> ExtResult:
    """Ext^i_R(v, R) through the center, optionally cross-checked by an R-projective resolution."""
    errs = check_module(r, v)
    if errs:
        raise CrossedError("; ".join(errs))
    if certificate is None or not certificate.certified:
        raise CrossedError("a certified trace pairing is required (run trace_fsg_certificate first)")
    vz = restrict_to_center(r, v)
    hd = homological_dual(vz)
    dims = {i: m.dim for i, m in hd.items()}
    res = ExtResult(dims, hd)
    if direct:
        res.direct_dims = direct_ext_dims(r, v)
        res.agree = res.direct_dims == dims
    return res


def _group_algebra_left(r: CrossedAlgebra, chi: int):
    """Matrix of left multiplication by b_χ on the twisted group algebra (basis b_ψ)."""
    g = r.g
    m = la.zeros(g, g, r.field.zero)
    for psi in range(g):
        m[r.group.table[chi][psi]][psi] = r.cocycle(chi, psi)
    return m


def direct_ext_dims(r: CrossedAlgebra, v: CrossedModule) -> Dict[int, int]:
    """dim Ext^i_R(v, R) from the R-projective Koszul resolution R ⊗_{kΓ} (Λ^p ⊗ v).

    Γ acts on e_I ⊗ w by (Π_{j in I} χ_j) e_I ⊗ B_χ w, which makes the Koszul
    differential R-linear.  Hom_R(R ⊗_{kΓ} W, R) = Hom_{kΓ}(W, kΓ) ⊗ A as right
    A-modules, and left multiplication by x_j on kΓ ⊗ A acts as diag(ψ_j^{-1}) ⊗ x_j.
    """
    from itertools import combinations

    f, d, g, n = r.field, r.d, r.g, v.dim
    one, zero = f.one, f.zero
    G = r.group
    subsets = [list(combinations(range(d), p)) for p in range(d + 1)]
    sizes = [len(s) * n for s in subsets]

    def rho(p, chi):
        blocks = []
        for I in subsets[p]:
            w = one
            for j in I:
                w = w * G.elements[chi][j]
            blocks.append(la.scale(w, v.b[chi]))
        return la.block_diag(blocks) if blocks else []

    left = [_group_algebra_left(r, chi) for chi in range(g)]
    # Hom_{kΓ}(W_p, kΓ): Φ (g x |W_p|) with L_χ Φ = Φ ρ(χ)
    hom_bases = []
    for p in range(d + 1):
        w = sizes[p]
        eqs = []
        for chi in range(g):
            rp = rho(p, chi)
            a = la.kron(left[chi], la.identity(w, one, zero))
            b = la.kron(la.identity(g, one, zero), la.transpose(rp)) if w else []
            eqs.extend(la.sub(a, b) if w else [])
        basis = la.nullspace(eqs, g * w) if eqs else la.identity(g * w, one, zero)
        hom_bases.append(basis)
    ring = LaurentRing(f, d)
    dmats = {}
    for p in range(d):
        src, dst = subsets[p], subsets[p + 1]
        sidx = {s: i for i, s in enumerate(src)}
        wsrc, wdst = sizes[p], sizes[p + 1]
        rows, cols = len(hom_bases[p + 1]), len(hom_bases[p])
        ent = [[ring.zero] * cols for _ in range(rows)]
        for k, vec in enumerate(hom_bases[p]):
            phi = [list(vec[a * wsrc:(a + 1) * wsrc]) for a in range(g)]
            psis = [la.zeros(g, wdst, zero) for _ in range(d + 1)]  # index d holds the constant part
            for ci, I in enumerate(dst):
                for pos, j in enumerate(I):
                    J = I[:pos] + I[pos + 1:]
                    sign = one if pos % 2 == 0 else -one
                    si = sidx[J]
                    for col in range(n):
                        tcol = [m_row[col] for m_row in v.base.ops[j]]
                        for a in range(g):
                            dj = one / G.elements[a][j]
                            val = phi[a][si * n + col]
                            if val:
                                psis[j][a][ci * n + col] = psis[j][a][ci * n + col] + sign * dj * val
                            acc = zero
                            for b_ in range(n):
                                if tcol[b_]:
                                    acc = acc + phi[a][si * n + b_] * tcol[b_]
                            if acc:
                                psis[d][a][ci * n + col] = psis[d][a][ci * n + col] - sign * acc
            for slot in range(d + 1):
                flat = [x for row in psis[slot] for x in row]
                if all(not x for x in flat):
                    continue
                coords = la.coordinates(hom_bases[p + 1], flat)
                if coords is None:
                    raise ArithmeticError("differential leaves the Hom space; module data inconsistent")
                mono = ring.gen(slot) if slot < d else ring.one
                for l, c in enumerate(coords):
                    if c:
                        ent[l][k] = ent[l][k] + mono * ring.constant(c)
        dmats[p] = LaurentMatrix(ring, ent, rows, cols)
    ranks = {p: len(hom_bases[p]) for p in range(d + 1)}
    cx = FreeComplex(ring, 0, d, ranks, dmats)
    return {i: cohomology_at(cx, i).dim for i in range(d + 1)}


def as_zalg(r: CrossedAlgebra, name: str = "crossed"):
    """The crossed product as a free algebra over its center, on the HNF coset basis."""
    from .zalg import CenterRing, build_algebra

    Z, basis, table = z_structure_constants(r)
    C = CenterRing(r.field, "laurent", r.d, Z.names)
    labels = [f"e{''.join(map(str, nu))}b{chi}" for nu, chi in basis]
    triples = [(i, j, k, C.ring.monomial(*next(iter(c.terms.items()))))
               for i, row in enumerate(table) for j, (k, c) in enumerate(row)]
    unit = basis.index((tuple([0] * r.d), r.group.identity))
    return build_algebra(C, labels, triples, unit, name=name)
