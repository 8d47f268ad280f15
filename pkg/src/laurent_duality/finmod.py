"""Finite-length modules over k[x1^±..xd^±] as tuples of commuting invertible matrices."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence

from . import linalg as la
from .scalars import Field


class ModuleError(ValueError):
    """Operators fail to commute or are not invertible."""


class FinLengthModule:
    """A k-space of dimension ``dim`` with d commuting invertible operators."""

    __slots__ = ("field", "rank", "dim", "ops")

    def __init__(self, field: Field, rank: int, ops: Sequence[Sequence[Sequence]], dim: Optional[int] = None,
                 check: bool = True):
        self.field = field
        self.rank = rank
        if len(ops) != rank:
            raise ModuleError(f"expected {rank} operators, got {len(ops)}")
        self.ops = [[[field(x) for x in row] for row in op] for op in ops]
        if dim is None:
            dim = len(self.ops[0]) if self.ops else 0
        self.dim = dim
        if check:
            self.validate()

    @classmethod
    def zero(cls, field: Field, rank: int) -> "FinLengthModule":
        return cls(field, rank, [[] for _ in range(rank)], dim=0, check=False)

    @classmethod
    def character(cls, field: Field, values: Sequence) -> "FinLengthModule":
        """One-dimensional module k_a with x_j acting by values[j]."""
        return cls(field, len(values), [[[v]] for v in values])

    def is_zero(self) -> bool:
        return self.dim == 0

    def validate(self) -> None:
        n = self.dim
        for j, t in enumerate(self.ops):
            if len(t) != n or any(len(r) != n for r in t):
                raise ModuleError(f"operator {j} is not {n}x{n}")
        for i, j in combinations(range(self.rank), 2):
            a, b = self.ops[i], self.ops[j]
            if not la.equal(la.matmul(a, b), la.matmul(b, a)):
                raise ModuleError(f"operators x{i + 1} and x{j + 1} do not commute")
        for j, t in enumerate(self.ops):
            if n and not la.det(t):
                raise ModuleError(f"operator x{j + 1} is not invertible")

    def op_power(self, j: int, k: int):
        t = self.ops[j] if k >= 0 else la.inverse(self.ops[j])
        out = la.identity(self.dim, self.field.one, self.field.zero)
        for _ in range(abs(k)):
            out = la.matmul(out, t)
        return out

    def monomial_action(self, lam: Sequence[int]):
        """Matrix of x^lam."""
        out = la.identity(self.dim, self.field.one, self.field.zero)
        for j, k in enumerate(lam):
            if k:
                out = la.matmul(out, self.op_power(j, k))
        return out

    def restrict(self, basis: Sequence[Sequence[int]]) -> "FinLengthModule":
        """Restriction to k[Λ0] where Λ0 has the given basis (rows of exponents)."""
        return FinLengthModule(self.field, len(basis), [self.monomial_action(b) for b in basis], dim=self.dim)

    def direct_sum(self, other: "FinLengthModule") -> "FinLengthModule":
        ops = [la.block_diag([a, b]) for a, b in zip(self.ops, other.ops)]
        return FinLengthModule(self.field, self.rank, ops, dim=self.dim + other.dim)

    def __repr__(self):
        return f"FinLengthModule(field={self.field}, rank={self.rank}, dim={self.dim})"

    def to_dict(self) -> dict:
        return {
            "field": str(self.field),
            "rank": self.rank,
            "dim": self.dim,
            "operators": [[[self.field.format(x) for x in row] for row in t] for t in self.ops],
        }

    @classmethod
    def from_dict(cls, doc: dict, field: Optional[Field] = None) -> "FinLengthModule":
        f = field or Field.from_string(doc["field"])
        ops = [[[f.parse(x) for x in row] for row in t] for t in doc["operators"]]
        return cls(f, int(doc["rank"]), ops, dim=int(doc["dim"]))


def dual_module(m: FinLengthModule) -> FinLengthModule:
    """Contragredient Hom_k(m, k): the transposed operators."""
    return FinLengthModule(m.field, m.rank, [la.transpose(t) for t in m.ops], dim=m.dim, check=False)


# ---------------------------------------------------------------------------
# Hom spaces and Ext


def _mat_to_vec(p):
    return [x for row in p for x in row]


def _vec_to_mat(v, rows, cols):
    return [list(v[r * cols:(r + 1) * cols]) for r in range(rows)]


def intertwiner_space(m: FinLengthModule, n: FinLengthModule) -> List[list]:
    """Basis of Hom_A(m, n) = {P : P T^m_j = T^n_j P} as n.dim x m.dim matrices."""
    _check_compatible(m, n)
    rows, cols = n.dim, m.dim
    if rows == 0 or cols == 0:
        return []
    one, zero = m.field.one, m.field.zero
    eqs = []
    for tm, tn in zip(m.ops, n.ops):
        block = la.sub(la.kron(la.identity(rows, one, zero), la.transpose(tm)),
                       la.kron(tn, la.identity(cols, one, zero)))
        eqs.extend(block)
    if not eqs:
        basis = la.identity(rows * cols, one, zero)
    else:
        basis = la.nullspace(eqs, rows * cols)
    return [_vec_to_mat([m.field(x) for x in v], rows, cols) for v in basis]


def _check_compatible(m: FinLengthModule, n: FinLengthModule) -> None:
    if m.rank != n.rank:
        raise ValueError(f"lattice ranks differ: {m.rank} vs {n.rank}")
    if m.field != n.field:
        raise ValueError(f"fields differ: {m.field} vs {n.field}")


def quotient_action(kernel: Sequence[list], image: Sequence[list], ops, field: Field) -> FinLengthModule:
    """The module ker/im with operators induced from linear maps on the ambient space.

    ``kernel`` and ``image`` are spanning sets of subspaces (image inside kernel);
    ``ops`` are callables mapping ambient vectors to ambient vectors, preserving both.
    """
    width = len(kernel[0]) if kernel else (len(image[0]) if image else 0)
    im_basis = la.row_space_basis([list(v) for v in image], width) if image else []
    comp = la.extend_to_complement(im_basis, kernel, width)
    q = len(comp)
    if q == 0:
        return FinLengthModule.zero(field, len(ops))
    full = comp + im_basis
    mats = []
    for op in ops:
        cols = []
        for v in comp:
            w = op(v)
            c = la.coordinates(full, w)
            if c is None:
                raise ArithmeticError("operator does not preserve the kernel")
            cols.append([field(x) for x in c[:q]])
        mats.append(la.transpose(cols))
    return FinLengthModule(field, len(ops), mats, dim=q)


def koszul_cochain_complex(m: FinLengthModule, n: FinLengthModule):
    """Hom_A(K(m), n) as a list of (subsets, matrix of delta^p) with C^p = Hom_k(m,n) ⊗ Λ^p."""
    d = m.rank
    h = m.dim * n.dim
    one, zero = m.field.one, m.field.zero
    psi = [la.sub(la.kron(tn, la.identity(m.dim, one, zero)),
                  la.kron(la.identity(n.dim, one, zero), la.transpose(tm)))
           for tm, tn in zip(m.ops, n.ops)]
    subsets = [list(combinations(range(d), p)) for p in range(d + 1)]
    deltas = []
    for p in range(d):
        src, dst = subsets[p], subsets[p + 1]
        sidx = {s: i for i, s in enumerate(src)}
        mat = la.zeros(len(dst) * h, len(src) * h, zero)
        for r, big in enumerate(dst):
            for pos, j in enumerate(big):
                small = big[:pos] + big[pos + 1:]
                c = sidx[small]
                sign = one if pos % 2 == 0 else -one
                for a in range(h):
                    row = psi[j][a]
                    for b in range(h):
                        if row[b]:
                            mat[r * h + a][c * h + b] = mat[r * h + a][c * h + b] + sign * row[b]
        deltas.append(mat)
    return subsets, deltas, h


def ext_finite(m: FinLengthModule, n: FinLengthModule) -> List[FinLengthModule]:
    """Ext^i_A(m, n) for i = 0..d with the residual A-action (post-composition by T^n)."""
    _check_compatible(m, n)
    d = m.rank
    field = m.field
    subsets, deltas, h = koszul_cochain_complex(m, n)
    one, zero = field.one, field.zero
    post = [la.kron(tn, la.identity(m.dim, one, zero)) for tn in n.ops]
    out = []
    for p in range(d + 1):
        width = len(subsets[p]) * h
        if width == 0:
            out.append(FinLengthModule.zero(field, d))
            continue
        if p < d:
            ker = la.nullspace(deltas[p], width)
        else:
            ker = la.identity(width, one, zero)
        if p > 0:
            img = la.transpose(deltas[p - 1])  # columns of delta^{p-1} as rows
        else:
            img = []
        if not ker:
            out.append(FinLengthModule.zero(field, d))
            continue

        def make_op(t, blocks=len(subsets[p])):
            def op(v):
                res = []
                for b in range(blocks):
                    res.extend(la.matvec(t, v[b * h:(b + 1) * h]))
                return res
            return op

        out.append(quotient_action(ker, img, [make_op(t) for t in post], field))
    return out


# ---------------------------------------------------------------------------
# isomorphism


@dataclass
class IsoResult:
    isomorphic: bool
    witness: Optional[list] = None
    certificate: str = ""

    def __bool__(self):
        return self.isomorphic


def _combine(basis, coeffs, rows, cols, field):
    out = la.zeros(rows, cols, field.zero)
    for c, b in zip(coeffs, basis):
        if c:
            for i in range(rows):
                for j in range(cols):
                    if b[i][j]:
                        out[i][j] = out[i][j] + c * b[i][j]
    return out


def find_nonsingular(basis: Sequence[list], field: Field, seed: int = 0, tries: int = 12,
                     symbolic_cap: int = 400):
    """Find an invertible element of span(basis) (square matrices), or prove none exists.

    Returns (matrix or None, how) where ``how`` explains the verdict.  Deterministic
    points are tried first; otherwise the determinant of the generic element is
    computed exactly as a polynomial and, if nonzero, a grid point avoiding its
    zero set is located.
    """
    if not basis:
        return None, "empty space"
    n = len(basis[0])
    if n == 0:
        return [], "zero-dimensional"
    s = len(basis)
    rng = random.Random(seed)
    candidates = [[field.one] * s]
    for b in range(s):
        candidates.append([field.one if i == b else field.zero for i in range(s)])
    for _ in range(tries):
        candidates.append([field(rng.randint(-n - 1, n + 1)) for _ in range(s)])
    for coeffs in candidates:
        p = _combine(basis, coeffs, n, n, field)
        if la.det(p):
            return p, "deterministic point"
    if s <= symbolic_cap:
        from .laurent import LaurentMatrix, LaurentRing

        ring = LaurentRing(field, s, [f"y{i + 1}" for i in range(s)])
        gens = ring.gens()
        ent = [[ring.zero] * n for _ in range(n)]
        for c, b in enumerate(basis):
            for i in range(n):
                for j in range(n):
                    if b[i][j]:
                        ent[i][j] = ent[i][j] + gens[c] * ring.constant(b[i][j])
        det = LaurentMatrix(ring, ent, n, n).det()
        if not det:
            return None, "determinant of the generic element vanishes identically"
        # a nonzero polynomial of degree <= n cannot vanish on all of {0..n}^s
        for coeffs in _grid(s, n + 1):
            if det.evaluate([field(c) for c in coeffs]):
                return _combine(basis, [field(c) for c in coeffs], n, n, field), "grid point"
    raise RuntimeError("intertwiner space too large for an exact decision")


def _grid(s: int, size: int):
    # enumerate by increasing max-norm so small points come first
    from itertools import product

    for top in range(size):
        for pt in product(range(top + 1), repeat=s):
            if max(pt) == top:
                yield pt


def is_isomorphic(m: FinLengthModule, n: FinLengthModule) -> IsoResult:
    _check_compatible(m, n)
    if m.dim != n.dim:
        return IsoResult(False, certificate=f"dimension mismatch {m.dim} != {n.dim}")
    if m.dim == 0:
        return IsoResult(True, witness=[], certificate="both zero")
    hom = intertwiner_space(m, n)
    if not hom:
        return IsoResult(False, certificate="no nonzero intertwiner")
    dmm = len(intertwiner_space(m, m))
    dnn = len(intertwiner_space(n, n))
    if not (len(hom) == dmm == dnn):
        return IsoResult(False, certificate=f"Hom dimensions differ: Hom(m,n)={len(hom)}, "
                                            f"End(m)={dmm}, End(n)={dnn}")
    p, how = find_nonsingular(hom, m.field)
    if p is None:
        return IsoResult(False, certificate=f"intertwiner space contains no invertible element ({how})")
    return IsoResult(True, witness=p, certificate=how)


def hom_dimension(m: FinLengthModule, n: FinLengthModule) -> int:
    return len(intertwiner_space(m, n))
