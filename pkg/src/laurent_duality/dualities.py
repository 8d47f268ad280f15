"""Homological, Grothendieck-Serre and contragredient duality on finite-length modules."""
from __future__ import annotations

from itertools import combinations
from typing import Dict

from .finmod import FinLengthModule, dual_module, is_isomorphic
from .laurent import LaurentMatrix, LaurentRing
from .report import Report
from .syzygy import FreeComplex, cohomology_at, cohomology_snf


def laurent_ring_for(m: FinLengthModule) -> LaurentRing:
    return LaurentRing(m.field, m.rank)


def koszul_resolution(m: FinLengthModule) -> FreeComplex:
    """Free resolution of m in cohomological degrees -d..0.

    Degree -p has basis e_I ⊗ v_b for |I| = p, and
    ∂(e_I ⊗ v) = Σ_s (-1)^s e_{I minus i_s} ⊗ (x_{i_s} - T_{i_s}) v.
    """
    ring = laurent_ring_for(m)
    d, n = m.rank, m.dim
    subsets = [list(combinations(range(d), p)) for p in range(d + 1)]
    ranks = {-p: n * len(subsets[p]) for p in range(d + 1)}
    diffs = {}
    for p in range(1, d + 1):
        tgt = {s: i for i, s in enumerate(subsets[p - 1])}
        rows, cols = ranks[-(p - 1)], ranks[-p]
        ent = [[ring.zero] * cols for _ in range(rows)]
        for ci, big in enumerate(subsets[p]):
            for pos, j in enumerate(big):
                small = big[:pos] + big[pos + 1:]
                ri = tgt[small]
                sign = 1 if pos % 2 == 0 else -1
                t = m.ops[j]
                for b in range(n):
                    col = ci * n + b
                    for a in range(n):
                        val = -t[a][b]
                        if a == b:
                            e = ring.gen(j) + ring.constant(val)
                        elif val:
                            e = ring.constant(val)
                        else:
                            continue
                        ent[ri * n + a][col] = ent[ri * n + a][col] + e * sign
        diffs[-p] = LaurentMatrix(ring, ent, rows, cols)
    return FreeComplex(ring, -d, 0, ranks, diffs)


def homological_dual(m: FinLengthModule, method: str = "groebner") -> Dict[int, FinLengthModule]:
    """Ext^i_A(m, A) for i = 0..d, as cohomology of Hom_A(K(m), A)."""
    dual = koszul_resolution(m).dual()
    if method == "groebner":
        h = cohomology_at
    elif method == "snf":
        h = cohomology_snf
    else:
        raise ValueError(f"unknown method {method!r}")
    return {i: h(dual, i) for i in range(0, m.rank + 1)}


def gs_dual(m: FinLengthModule, method: str = "groebner") -> Dict[int, FinLengthModule]:
    """RHom_A(m, A[d]): the homological dual moved down by d."""
    hd = homological_dual(m, method)
    d = m.rank
    return {i - d: mod for i, mod in hd.items()}


def verify_three_dualities(m: FinLengthModule, method: str = "groebner", name: str = "module",
                           involution: bool = True) -> Report:
    """Concentration, contragredient identification and (optionally) involution for one module."""
    rep = Report(f"dualities:{name}")
    d = m.rank
    hd = homological_dual(m, method)
    nonzero = {i: mod.dim for i, mod in hd.items() if i != d and mod.dim}
    rep.add("concentration", "Ext_A^i(M,A) = 0 for i != d", not nonzero,
            {"dims": [hd[i].dim for i in range(d + 1)], "offending": nonzero})
    top = hd[d]
    rep.add("dimension", "dim Ext_A^d(M,A) = dim M", top.dim == m.dim, {"dim_ext": top.dim, "dim_m": m.dim})
    iso = is_isomorphic(top, dual_module(m)) if top.dim == m.dim else None
    rep.add("contragredient", "Ext_A^d(M,A) isomorphic to M*", bool(iso),
            {"certificate": iso.certificate if iso else "dimension mismatch",
             "intertwiner": _fmt_matrix(m, iso.witness) if iso else None})
    if not involution:
        return rep
    hd2 = homological_dual(top, method) if top.dim else {i: FinLengthModule.zero(m.field, d) for i in range(d + 1)}
    back = hd2[d]
    rest = {i: mod.dim for i, mod in hd2.items() if i != d and mod.dim}
    iso2 = is_isomorphic(back, m)
    rep.add("involution", "D_h D_h M isomorphic to M, total shift 0", bool(iso2) and not rest,
            {"certificate": iso2.certificate, "offending": rest})
    return rep


def _fmt_matrix(m: FinLengthModule, p):
    if p is None:
        return None
    return [[m.field.format(x) for x in row] for row in p]
