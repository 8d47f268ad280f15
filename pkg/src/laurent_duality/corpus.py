"""Deterministic corpora of finite-length modules used by tests, scripts and the suite."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from . import linalg as la
from .finmod import FinLengthModule
from .scalars import Field


@dataclass
class CorpusConfig:
    seed: int = 20240601
    max_dim: int = 6
    eigenvalues: Tuple[int, ...] = (1, -1, 2, 3, -2)


def jordan_block(field: Field, a, size: int):
    m = la.zeros(size, size, field.zero)
    for i in range(size):
        m[i][i] = field(a)
        if i + 1 < size:
            m[i][i + 1] = field.one
    return m


def _unimodular(field: Field, n: int, rng: random.Random, steps: int = 6):
    """Random integer matrix of determinant ±1 with small entries."""
    p = la.identity(n, field.one, field.zero)
    if n < 2:
        return p
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-1, 1])
        for col in range(n):
            p[i][col] = p[i][col] + c * p[j][col]
    return p


def _poly_of(field: Field, b, coeffs):
    n = len(b)
    out = la.zeros(n, n, field.zero)
    power = la.identity(n, field.one, field.zero)
    for c in coeffs:
        if c:
            out = la.add(out, la.scale(field(c), power))
        power = la.matmul(power, b)
    return out


def eigenvalue_pool(field: Field, base: Sequence[int]) -> list:
    pool = [field(x) for x in base]
    if field.kind == "cyclotomic" and field.n > 2:
        pool += [field.zeta(1), field.zeta(2) if field.n > 3 else -field.zeta(1), field.zeta(1) + 1]
    return [x for x in pool if x]


def random_module(field: Field, d: int, dim: int, rng: random.Random, pool=None) -> FinLengthModule:
    """Commuting invertible operators as polynomials in one conjugated Jordan matrix."""
    pool = pool or eigenvalue_pool(field, CorpusConfig.eigenvalues)
    while True:
        blocks, left = [], dim
        while left:
            size = rng.randint(1, left)
            blocks.append(jordan_block(field, rng.choice(pool), size))
            left -= size
        j = la.block_diag(blocks) if blocks else []
        j = [[field(x) for x in row] for row in j]
        p = _unimodular(field, dim, rng)
        b = la.matmul(la.matmul(p, j), la.inverse(p))
        ops = [b]
        for _ in range(1, d):
            ops.append(_poly_of(field, b, [rng.randint(-2, 2) for _ in range(3)]))
        if dim == 0 or all(la.det(t) for t in ops):
            return FinLengthModule(field, d, ops, dim=dim)


def d1_corpus(config: CorpusConfig = CorpusConfig()) -> List[Tuple[str, FinLengthModule]]:
    """At least 30 modules over k[x^±], dimension <= max_dim, rational and cyclotomic."""
    rng = random.Random(config.seed)
    Q = Field.rational()
    items: List[Tuple[str, FinLengthModule]] = []
    for a in (1, -1, 2, Fraction(1, 3)):
        items.append((f"char_{a}", FinLengthModule.character(Q, [a])))
    for a, n in ((1, 2), (2, 2), (-1, 3), (3, 4)):
        items.append((f"jordan_{a}_{n}", FinLengthModule(Q, 1, [jordan_block(Q, a, n)])))
    items.append(("companion_x2_plus_1", FinLengthModule(Q, 1, [[[0, -1], [1, 0]]])))
    items.append(("companion_x3_minus_2", FinLengthModule(Q, 1, [[[0, 0, 2], [1, 0, 0], [0, 1, 0]]])))
    for i in range(12):
        dim = 1 + i % config.max_dim
        items.append((f"random_q_{i}", random_module(Q, 1, dim, rng)))
    for n in (3, 4, 5):
        K = Field.cyclotomic(n)
        items.append((f"char_zeta{n}", FinLengthModule.character(K, [K.zeta(1)])))
        items.append((f"jordan_zeta{n}_2", FinLengthModule(K, 1, [jordan_block(K, K.zeta(1), 2)])))
        for i in range(2):
            dim = 2 + (i + n) % 3
            items.append((f"random_zeta{n}_{i}", random_module(K, 1, dim, rng)))
    return items


def dn_corpus(d: int, count: int, config: CorpusConfig = CorpusConfig(), dims=(2, 3)) -> List[Tuple[str, FinLengthModule]]:
    rng = random.Random(config.seed + 97 * d)
    Q = Field.rational()
    items = [(f"trivial_d{d}", FinLengthModule.character(Q, [1] * d))]
    for i in range(count):
        items.append((f"random_d{d}_{i}", random_module(Q, d, dims[i % len(dims)], rng)))
    return items


def random_pairs(count: int, config: CorpusConfig = CorpusConfig()) -> List[Tuple[str, FinLengthModule, FinLengthModule]]:
    """Pairs over a shared field and rank with overlapping eigenvalues (so Ext is often nonzero)."""
    rng = random.Random(config.seed + 7)
    out = []
    fields = [Field.rational(), Field.rational(), Field.cyclotomic(3)]
    for i in range(count):
        field = fields[i % len(fields)]
        d = 1 + i % 3
        pool = eigenvalue_pool(field, (1, -1, 2))
        m = random_module(field, d, rng.randint(1, 3), rng, pool)
        n = random_module(field, d, rng.randint(1, 3), rng, pool)
        out.append((f"pair_{i}", m, n))
    return out
