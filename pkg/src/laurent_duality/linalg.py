"""Dense exact linear algebra over any field whose elements support + - * /.

Matrices are lists of row lists.  Entries may be ints, Fractions or
Cyclotomic values; nothing here ever rounds.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Matrix = List[list]


def zeros(rows: int, cols: int, zero=Fraction(0)) -> Matrix:
    return [[zero] * cols for _ in range(rows)]


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> Matrix:
    m = zeros(n, n, zero)
    for i in range(n):
        m[i][i] = one
    return m


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for k in range(inner):
            r = row[k]
            if r:
                bk = b[k]
                for j in range(cols):
                    v = bk[j]
                    if v:
                        acc[j] = acc[j] + r * v
        out.append(acc)
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in a:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def add(a, b) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a, b) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c, a) -> Matrix:
    return [[c * x for x in row] for row in a]


def is_zero(a) -> bool:
    return all(not x for row in a for x in row)


def equal(a, b) -> bool:
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def rref(a: Sequence[Sequence], ncols: Optional[int] = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = ncols if ncols is not None else (len(m[0]) if m else 0)
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = None
        for i in range(r, rows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv if x else x for x in m[r]]
        pr = m[r]
        for i in range(rows):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for j in range(c, cols):
                        if pr[j]:
                            row[j] = row[j] - f * pr[j]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a: Sequence[Sequence], ncols: Optional[int] = None) -> List[list]:
    """Basis of {x : a x = 0} as a list of vectors."""
    cols = ncols if ncols is not None else (len(a[0]) if a else 0)
    if not a:
        return [[Fraction(int(i == j)) for j in range(cols)] for i in range(cols)]
    r, pivots = rref(a, cols)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            if r[i][f]:
                v[p] = -r[i][f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence, ncols: Optional[int] = None) -> Optional[list]:
    """One solution x of a x = b, or None when inconsistent."""
    cols = ncols if ncols is not None else (len(a[0]) if a else 0)
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    r, pivots = rref(aug, cols + 1)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for i, p in enumerate(pivots):
        x[p] = r[i][cols]
    return x


def solve_matrix(a, b) -> Optional[Matrix]:
    """X with a X = b (column by column), or None."""
    cols = len(a[0]) if a else 0
    bt = transpose(b) if b and b[0] else []
    out = []
    for col in bt:
        x = solve(a, col, cols)
        if x is None:
            return None
        out.append(x)
    return transpose(out) if out else [[] for _ in range(cols)]


def det(a: Sequence[Sequence]):
    n = len(a)
    if n == 0:
        return Fraction(1)
    m = [list(row) for row in a]
    result = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        p = m[c][c]
        result = result * p
        inv = 1 / p
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                f = f * inv
                row, pr = m[i], m[c]
                for j in range(c, n):
                    if pr[j]:
                        row[j] = row[j] - f * pr[j]
    return result


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    r, pivots = rref(aug, 2 * n)
    if n and (len(pivots) < n or pivots[n - 1] != n - 1):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r[:n]]


def row_space_basis(vectors: Sequence[Sequence], ncols: int) -> List[list]:
    if not vectors:
        return []
    r, pivots = rref(vectors, ncols)
    return [r[i] for i in range(len(pivots))]


def extend_to_complement(sub_basis: Sequence[Sequence], space_basis: Sequence[Sequence], ncols: int):
    """Pick vectors of ``space_basis`` completing ``sub_basis`` to a basis of their span.

    Returns the chosen complement vectors (a basis of space/sub when sub is
    contained in space).
    """
    chosen = []
    current = [list(v) for v in sub_basis]
    r = rank(current) if current else 0
    for v in space_basis:
        trial = current + [list(v)]
        rt = rank(trial)
        if rt > r:
            current = trial
            chosen.append(list(v))
            r = rt
    return chosen


def coordinates(basis: Sequence[Sequence], v: Sequence) -> Optional[list]:
    """Coefficients c with sum c_i basis_i = v, or None if v is outside the span."""
    if not basis:
        return [] if all(not x for x in v) else None
    return solve(transpose(basis), list(v), len(basis))


def kron(a, b) -> Matrix:
    out = []
    for ra in a:
        for rb in b:
            out.append([x * y for x in ra for y in rb])
    return out


def block_diag(blocks: Sequence[Sequence[Sequence]]) -> Matrix:
    n = sum(len(b) for b in blocks)
    m = zeros(n, n)
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                m[off + i][off + j] = x
        off += len(b)
    return m
