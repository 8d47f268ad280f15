"""The acceptance corpus: nine criteria, each producing a Report and a wall-clock time."""
from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from . import checks
from .corpus import CorpusConfig, d1_corpus, dn_corpus, random_pairs
from .crossed import as_zalg, center, ext_R_against_R, trace_fsg_certificate
from .dualities import homological_dual, koszul_resolution, verify_three_dualities
from .finmod import dual_module, ext_finite, is_isomorphic
from .formats import LoadedCrossed, bundled, load_algebra
from .report import PASS, UNDETERMINED, Report
from .syzygy import cohomology_at, cohomology_snf
from .zalg import fsg_probe


@dataclass
class SuiteConfig:
    corpus: CorpusConfig = field(default_factory=CorpusConfig)
    d2_count: int = 6
    d3_count: int = 2
    pairs: int = 100
    bound: int = 6
    box: int = 2
    threads: int = 1

    @classmethod
    def from_env(cls, **kw) -> "SuiteConfig":
        threads = int(os.environ.get("LAURENT_DUALITY_THREADS", "1") or 1)
        return cls(threads=max(1, threads), **kw)


@dataclass
class Criterion:
    number: int
    title: str
    run: Callable[[SuiteConfig], Report]
    time_limit: Optional[float] = None


def _c1(cfg: SuiteConfig) -> Report:
    rep = Report("c1")
    items = d1_corpus(cfg.corpus)
    rep.add("size", "corpus of at least 30 finite-length modules, d = 1", len(items) >= 30, {"size": len(items)})
    for name, m in items:
        r = verify_three_dualities(m, "groebner", name, involution=False)
        rep.extend(r, prefix=f"{name}.")
    return rep


def _c2(cfg: SuiteConfig) -> Report:
    rep = Report("c2")
    for name, m in d1_corpus(cfg.corpus):
        dual = koszul_resolution(m).dual()
        for i in (0, 1):
            g, s = cohomology_at(dual, i), cohomology_snf(dual, i)
            iso = is_isomorphic(g, s)
            rep.add(f"{name}.h{i}", "Groebner cohomology isomorphic to the Smith normal form oracle", bool(iso),
                    {"dim": g.dim, "certificate": iso.certificate})
    return rep


def _c3(cfg: SuiteConfig) -> Report:
    rep = Report("c3")
    items = dn_corpus(2, cfg.d2_count, cfg.corpus) + dn_corpus(3, cfg.d3_count, cfg.corpus)
    for name, m in items:
        d = m.rank
        hd = homological_dual(m)
        low = {i: hd[i].dim for i in range(d) if hd[i].dim}
        rep.add(f"{name}.vanishing", "Ext_A^i(M,A) = 0 for i < d", not low, {"d": d, "offending": low})
        iso = is_isomorphic(hd[d], dual_module(m))
        rep.add(f"{name}.top", "Ext_A^d(M,A) isomorphic to M*", bool(iso), {"dim": hd[d].dim,
                                                                            "certificate": iso.certificate})
    return rep


def _c4(cfg: SuiteConfig) -> Report:
    rep = Report("c4")
    items = d1_corpus(cfg.corpus) + dn_corpus(2, cfg.d2_count, cfg.corpus)
    for name, m in items:
        r = verify_three_dualities(m, "groebner", name)
        a = next(x for x in r.assertions if x.id == "involution")
        rep.add(f"{name}.involution", a.anchor, a.status, a.witness)
    return rep


def _c5(cfg: SuiteConfig) -> Report:
    rep = Report("c5")
    for fname in ("z2_cross.alg", "z3_cross.alg"):
        lc = load_algebra(bundled(fname))
        r, tag = lc.algebra, lc.name
        c = center(r, cfg.box)
        rep.add(f"{tag}.center", "center equals k[Lambda_0]", c.verified,
                {"lattice": [list(map(int, row)) for row in c.basis]})
        cert = trace_fsg_certificate(r)
        Z = cert.gram.ring
        rep.add(f"{tag}.gram", "trace Gram determinant is a unit of the center", cert.certified,
                {"determinant": Z.format(cert.determinant)})
        for v in lc.modules:
            e = ext_R_against_R(r, v, cert, direct=True)
            stray = {i: k for i, k in e.dims.items() if i != r.d and k}
            rep.add(f"{tag}.{v.name}.vanishing", "Ext_R^i(V,R) = 0 for i != d", not stray, {"dims": e.dims})
            rep.add(f"{tag}.{v.name}.top", "dim Ext_R^d(V,R) = dim V", e.dims.get(r.d) == v.dim,
                    {"dim_ext": e.dims.get(r.d), "dim_v": v.dim, "direct_agrees": e.agree})
    return rep


def _c6(cfg: SuiteConfig) -> Report:
    rep = Report("c6")
    for fname in ("group_z2.alg", "ut2.alg"):
        lz = load_algebra(bundled(fname))
        rep.extend(checks.serre_report(lz, cfg.bound), prefix=f"{lz.algebra.name}.")
    return rep


def _c7(cfg: SuiteConfig) -> Report:
    rep = Report("c7")
    expected = [("ut2.alg", "certified-no"), ("group_z2.alg", "certified-yes"), ("m2.alg", "certified-yes"),
                ("z2_cross.alg", "certified-yes"), ("z3_cross.alg", "certified-yes")]
    for fname, want in expected:
        loaded = load_algebra(bundled(fname))
        if isinstance(loaded, LoadedCrossed):
            a = as_zalg(loaded.algebra, loaded.name)
        else:
            a = loaded.algebra
        v = fsg_probe(a, box=cfg.box)
        rep.add(f"{a.name}.fsg", "symmetric form with unit Gram determinant", v.verdict == want,
                {"verdict": v.verdict, "expected": want, "functional": v.functional, "note": v.note})
    return rep


def _c8(cfg: SuiteConfig) -> Report:
    rep = Report("c8")
    lz = load_algebra(bundled("hecke_a1.alg"))
    inner = checks.hom_center_report(lz, cfg.box)
    for a in inner.assertions:
        status = a.status
        if a.id == "bimodule_iso" and status == UNDETERMINED:
            # an open question is reported as open; that is the expected outcome
            status = PASS
            a.witness = dict(a.witness, recorded="undetermined")
        rep.add(f"hecke_a1.{a.id}", a.anchor, status, a.witness)
    rep.add("hecke_a1.rank4", "rank over the declared center", lz.algebra.rank == 4, {"rank": lz.algebra.rank})
    return rep


def _c9(cfg: SuiteConfig) -> Report:
    rep = Report("c9")
    pairs = random_pairs(cfg.pairs, cfg.corpus)
    rep.add("size", "at least 100 randomized pairs", len(pairs) >= 100, {"size": len(pairs)})
    for name, m, n in pairs:
        dims = [e.dim for e in ext_finite(m, n)]
        chi = sum((-1) ** i * k for i, k in enumerate(dims))
        rep.add(f"{name}.euler", "sum (-1)^i dim Ext^i(M,N) = 0", chi == 0, {"dims": dims, "d": m.rank})
    return rep


CRITERIA: List[Criterion] = [
    Criterion(1, "concentration and contragredient, d = 1 corpus", _c1, 5.0),
    Criterion(2, "Groebner engine against the SNF oracle", _c2, 30.0),
    Criterion(3, "concentration for d = 2 and d = 3", _c3, 120.0),
    Criterion(4, "homological duality is an involution", _c4),
    Criterion(5, "crossed-product pipeline", _c5, 30.0),
    Criterion(6, "Serre pairing on k[Z/2] and the A2 path algebra", _c6),
    Criterion(7, "fsg_probe verdicts, including the negative control", _c7),
    Criterion(8, "Iwahori-Hecke A1 probe", _c8, 120.0),
    Criterion(9, "Euler characteristic of Ext vanishes", _c9),
]


def run_criterion(c: Criterion, cfg: SuiteConfig) -> Tuple[Report, float]:
    t0 = time.perf_counter()
    rep = c.run(cfg)
    elapsed = time.perf_counter() - t0
    if c.time_limit is not None:
        rep.add("runtime", f"completes within {c.time_limit:g} s", elapsed < c.time_limit,
                {"limit_s": c.time_limit})
    rep.timing["total"] = elapsed
    return rep, elapsed


def run_suite(cfg: Optional[SuiteConfig] = None, only: Optional[List[int]] = None) -> Tuple[Report, Dict[int, Tuple[Report, float]]]:
    """Run the selected criteria (all by default); merge order is by criterion number."""
    cfg = cfg or SuiteConfig.from_env()
    chosen = [c for c in CRITERIA if only is None or c.number in only]
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        results = list(pool.map(lambda c: run_criterion(c, cfg), chosen))
    per = {c.number: res for c, res in zip(chosen, results)}
    total = Report("acceptance")
    for num in sorted(per):
        rep, elapsed = per[num]
        total.extend(rep, prefix=f"c{num}.")
        total.timing[f"c{num}"] = elapsed
    return total, per


def summary_lines(per: Dict[int, Tuple[Report, float]]) -> List[str]:
    lines = []
    for c in CRITERIA:
        if c.number not in per:
            continue
        rep, elapsed = per[c.number]
        counts = rep.counts()
        status = "PASS" if rep.passed else "FAIL"
        lines.append(f"criterion {c.number}: {status}  {c.title}  "
                     f"({counts[PASS]}/{len(rep.assertions)} assertions, {elapsed:.2f}s)")
    return lines
