"""Laurent polynomial rings k[x1^±, ..., xd^±] and the lattice tools around them.

Contents:

* :class:`Lattice`, :class:`LaurentRing`, :class:`LaurentElt`, :class:`LaurentMatrix`
* integer Smith and Hermite normal forms, used for sublattices of Z^d
* :func:`fixed_sublattice` -- the sublattice on which a finite group of
  characters is trivial
* :func:`snf_univariate` -- Smith form over the PID k[x^±] (d = 1 only)
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .scalars import Field, parse_polynomial, _fmt_rational

Exp = Tuple[int, ...]

EXPONENT_LIMIT = 2**31


@dataclass(frozen=True)
class Lattice:
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("lattice rank must be non-negative")


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentElt:
    """Finitely supported map Z^d -> k with no stored zero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: "LaurentRing", terms: Dict[Exp, object]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def sorted_terms(self) -> List[Tuple[Exp, object]]:
        return sorted(self.terms.items())

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def min_exponents(self) -> Exp:
        d = self.ring.nvars
        if not self.terms:
            return (0,) * d
        return tuple(min(e[i] for e in self.terms) for i in range(d))

    # arithmetic
    def _lift(self, other) -> "LaurentElt":
        if isinstance(other, LaurentElt):
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            out[e] = c if v is None else v + c
        return LaurentElt(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentElt(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentElt):
            if not other:
                return self.ring.zero
            return LaurentElt(self.ring, {e: c * other for e, c in self.terms.items()})
        out: Dict[Exp, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                p = c1 * c2
                out[e] = p if v is None else v + p
        return LaurentElt(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "LaurentElt":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit of the Laurent ring")
        (e, c), = self.terms.items()
        return LaurentElt(self.ring, {tuple(-a for a in e): 1 / c})

    def shift(self, exps: Exp) -> "LaurentElt":
        return LaurentElt(self.ring, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()})

    def exact_div(self, other: "LaurentElt") -> "LaurentElt":
        """Quotient q with q * other == self; raises ArithmeticError otherwise."""
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self:
            return self.ring.zero
        if other.is_unit():
            return self * other.inverse()
        # normalise both to polynomials without monomial factors, then divide
        # by lex-leading terms; a quotient of such polynomials has none either
        fs = tuple(-a for a in self.min_exponents())
        gs = tuple(-a for a in other.min_exponents())
        f = self.shift(fs)
        g = other.shift(gs)
        lead_e, lead_c = max(g.terms.items())
        quot: Dict[Exp, object] = {}
        rem = f
        while rem:
            e, c = max(rem.terms.items())
            qe = tuple(a - b for a, b in zip(e, lead_e))
            if any(a < 0 for a in qe):
                raise ArithmeticError("inexact Laurent division")
            qc = c / lead_c
            quot[qe] = qc
            rem = rem - g * LaurentElt(self.ring, {qe: qc})
        q = LaurentElt(self.ring, quot)
        return q.shift(tuple(b - a for a, b in zip(fs, gs)))

    def evaluate(self, point: Sequence) -> object:
        acc = self.ring.field.zero
        for e, c in self.terms.items():
            t = c
            for v, k in zip(point, e):
                if k:
                    t = t * (v**k)
            acc = acc + t
        return acc

    def substitute_monomials(self, target: "LaurentRing", images: Sequence[Exp]) -> "LaurentElt":
        """Ring map x_i -> x^{images[i]} into ``target`` (monomial change of variables)."""
        out: Dict[Exp, object] = {}
        for e, c in self.terms.items():
            img = [0] * target.nvars
            for k, a in enumerate(e):
                if a:
                    for j, b in enumerate(images[k]):
                        img[j] += a * b
            key = tuple(img)
            out[key] = out.get(key, 0) + c
        return LaurentElt(target, out)

    # comparison
    def __eq__(self, other):
        if isinstance(other, LaurentElt):
            return self.terms == other.terms
        if other == 0 or isinstance(other, (int, Fraction)) or hasattr(other, "coeffs"):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        return self.ring.format(self)

    def __repr__(self):
        return f"LaurentElt({self.ring.format(self)!r})"


class LaurentRing:
    """k[x1^±, ..., xd^±] over an exact field."""

    def __init__(self, field: Field, nvars: int, names: Optional[Sequence[str]] = None):
        self.field = field
        self.nvars = nvars
        self.names = list(names) if names else [f"x{i + 1}" for i in range(nvars)]
        self.lattice = Lattice(nvars)

    def __eq__(self, other):
        return isinstance(other, LaurentRing) and (self.field, self.nvars) == (other.field, other.nvars)

    def __hash__(self):
        return hash((self.field, self.nvars))

    def __repr__(self):
        return f"LaurentRing({self.field}, {self.nvars})"

    @property
    def zero(self) -> LaurentElt:
        return LaurentElt(self, {})

    @property
    def one(self) -> LaurentElt:
        return self.constant(1)

    def constant(self, c) -> LaurentElt:
        return LaurentElt(self, {(0,) * self.nvars: self.field(c)})

    def monomial(self, exps: Sequence[int], c=1) -> LaurentElt:
        exps = tuple(int(e) for e in exps)
        if any(abs(e) >= EXPONENT_LIMIT for e in exps):
            raise OverflowError("exponent out of range")
        return LaurentElt(self, {exps: self.field(c)})

    def gen(self, i: int) -> LaurentElt:
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(e)

    def gens(self) -> List[LaurentElt]:
        return [self.gen(i) for i in range(self.nvars)]

    def parse(self, text) -> LaurentElt:
        if isinstance(text, LaurentElt):
            return text
        if isinstance(text, (int, Fraction)):
            return self.constant(text)
        s = str(text).strip()
        names = ["z"] + self.names
        raw = parse_polynomial(s, names)
        out: Dict[Exp, object] = {}
        for e, c in raw.items():
            key = tuple(e[1:])
            val = self.field.parse(f"{c}*z^{e[0]}") if e[0] else self.field(c)
            out[key] = out.get(key, self.field.zero) + val
        return LaurentElt(self, out)

    def format(self, f: LaurentElt) -> str:
        if not f.terms:
            return "0"
        parts = []
        for e, c in sorted(f.terms.items(), reverse=True):
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.names, e) if k
            )
            cs = self.field.format(c)
            composite = " " in cs.strip("-") or ("z" in cs and mono)
            if composite:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def is_unit(f: LaurentElt) -> bool:
    """True iff f = c * x^lambda with c != 0."""
    return f.is_unit()


# ---------------------------------------------------------------------------
# matrices over the Laurent ring


class LaurentMatrix:
    """rows x cols grid of LaurentElt sharing one ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: LaurentRing, entries: Sequence[Sequence[LaurentElt]], rows=None, cols=None):
        self.ring = ring
        self.entries = [list(r) for r in entries]
        self.rows = len(self.entries) if rows is None else rows
        self.cols = (len(self.entries[0]) if self.entries else 0) if cols is None else cols
        for r in self.entries:
            if len(r) != self.cols:
                raise ValueError("ragged Laurent matrix")
            for x in r:
                if not isinstance(x, LaurentElt) or x.ring != ring:
                    raise ValueError("matrix entries must share one Laurent ring")

    @classmethod
    def zero(cls, ring, rows, cols):
        return cls(ring, [[ring.zero] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, ring, n):
        m = cls.zero(ring, n, n)
        for i in range(n):
            m.entries[i][i] = ring.one
        return m

    @classmethod
    def from_scalars(cls, ring, mat, rows=None, cols=None):
        return cls(ring, [[ring.constant(x) for x in row] for row in mat], rows, cols)

    @classmethod
    def parse(cls, ring, rows_text):
        return cls(ring, [[ring.parse(x) for x in row] for row in rows_text])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = self.ring.zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(self.ring, out, self.rows, other.cols)

    def __add__(self, other):
        return LaurentMatrix(
            self.ring,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.rows,
            self.cols,
        )

    def __sub__(self, other):
        return LaurentMatrix(
            self.ring,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.rows,
            self.cols,
        )

    def scale(self, c) -> "LaurentMatrix":
        return LaurentMatrix(self.ring, [[c * a for a in r] for r in self.entries], self.rows, self.cols)

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(
            self.ring, [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)], self.cols, self.rows
        )

    T = property(transpose)

    def is_zero(self) -> bool:
        return all(not x for r in self.entries for x in r)

    def __eq__(self, other):
        return (
            isinstance(other, LaurentMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and all(a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2))
        )

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.entries)
        return f"LaurentMatrix({self.rows}x{self.cols}: [{body}])"

    def det(self) -> LaurentElt:
        """Determinant by fraction-free (Bareiss) elimination with exact division."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return self.ring.one
        m = [list(r) for r in self.entries]
        sign = 1
        prev = self.ring.one
        for k in range(n - 1):
            if not m[k][k]:
                swap = next((i for i in range(k + 1, n) if m[i][k]), None)
                if swap is None:
                    return self.ring.zero
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                    m[i][j] = num.exact_div(prev) if num else num
                m[i][k] = self.ring.zero
            prev = m[k][k]
        d = m[n - 1][n - 1]
        return d if sign > 0 else -d

    def evaluate(self, point) -> List[list]:
        return [[x.evaluate(point) for x in r] for r in self.entries]


def block_matrix(ring, blocks: Sequence[Sequence[LaurentMatrix]]) -> LaurentMatrix:
    rows = []
    for brow in blocks:
        height = brow[0].rows
        for i in range(height):
            row = []
            for b in brow:
                row.extend(b.entries[i])
            rows.append(row)
    return LaurentMatrix(ring, rows)


# ---------------------------------------------------------------------------
# integer normal forms


def _int_identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def integer_snf(a: Sequence[Sequence[int]]):
    """Smith normal form over Z: returns (U, D, V) with U a V = D, U, V unimodular."""
    m = len(a)
    n = len(a[0]) if m else 0
    D = [list(map(int, r)) for r in a]
    U = _int_identity(m)
    V = _int_identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row_dst += q * row_src
        D[dst] = [x + q * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for r in D:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                # divisibility: the pivot must divide every remaining entry
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]),
                    None,
                )
                if bad is not None:
                    add_row(bad[0], t, 1)
                    done = False
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, D, V


def hnf_rows(vectors: Sequence[Sequence[int]], dim: int) -> List[List[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Rows are upper-echelon with positive pivots and entries above each pivot
    reduced into [0, pivot).  Zero rows are dropped.
    """
    rows = [list(map(int, v)) for v in vectors if any(v)]
    out: List[List[int]] = []
    col = 0
    while rows and col < dim:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        while len([r for r in rows if r[col]]) > 1:
            nz = sorted((r for r in rows if r[col]), key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                for k in range(dim):
                    r[k] -= q * p[k]
            rows = [r for r in rows if any(r)]
        p = next(r for r in rows if r[col])
        rows = [r for r in rows if r is not p]
        if p[col] < 0:
            p = [-x for x in p]
        out.append(p)
        col += 1
    # reduce entries above pivots
    pivcols = []
    for r in out:
        pivcols.append(next(k for k in range(dim) if r[k]))
    for i in range(len(out)):
        for j in range(i):
            c = pivcols[i]
            q = out[j][c] // out[i][c]
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], out[i])]
    return out


def integer_kernel(a: Sequence[Sequence[int]], ncols: int) -> List[List[int]]:
    """Z-basis of {v in Z^ncols : a v = 0}, via integer SNF."""
    if not a:
        return _int_identity(ncols)
    U, D, V = integer_snf(a)
    r = sum(1 for i in range(min(len(D), ncols)) if D[i][i])
    return [[V[i][j] for i in range(ncols)] for j in range(r, ncols)]


# ---------------------------------------------------------------------------
# fixed sublattice of a character group


class NotRootOfUnityError(ValueError):
    pass


def character_exponents(field: Field, characters: Sequence[Sequence]) -> Tuple[List[List[int]], int]:
    """Write every character value as w^k for one fixed primitive N-th root w.

    Returns (exponent rows, N).
    """
    rows = []
    N = None
    for chi in characters:
        row = []
        for v in chi:
            try:
                k, n = field.root_of_unity_exponent(v)
            except ValueError as exc:
                raise NotRootOfUnityError(str(exc)) from None
            if N is None:
                N = n
            row.append(k)
        rows.append(row)
    return rows, (N or 1)


def fixed_sublattice(lattice: Lattice, characters: Sequence[Sequence], field: Field) -> List[List[int]]:
    """HNF basis (rows) of {lambda in Z^d : chi(lambda) = 1 for every chi}."""
    d = lattice.rank
    if not characters:
        return _int_identity(d)
    K, N = character_exponents(field, characters)
    g = len(K)
    # K lambda + N mu = 0 over Z, then project to lambda
    big = [K[i] + [N if j == i else 0 for j in range(g)] for i in range(g)]
    ker = integer_kernel(big, d + g)
    gens = [v[:d] for v in ker]
    basis = hnf_rows(gens, d)
    if len(basis) != d:
        raise ArithmeticError("fixed sublattice is not of full rank")
    return basis


def reduce_mod_hnf(vec: Sequence[int], hnf: Sequence[Sequence[int]]) -> Tuple[List[int], List[int]]:
    """Split vec = nu + sum q_i hnf_i with 0 <= nu_i < hnf_ii (square full-rank HNF).

    Returns (nu, q).
    """
    nu = list(vec)
    q = []
    for i, row in enumerate(hnf):
        c = nu[i] // row[i]
        q.append(c)
        if c:
            nu = [a - c * b for a, b in zip(nu, row)]
    return nu, q


def coset_representatives(hnf: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Representatives of Z^d / L for a square HNF basis, in lexicographic order."""
    reps: List[Tuple[int, ...]] = [()]
    for i, row in enumerate(hnf):
        reps = [r + (k,) for r in reps for k in range(row[i])]
    return reps


# ---------------------------------------------------------------------------
# univariate polynomials over k (coefficient lists, lowest degree first)


def _ptrim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _pdeg(p):
    return len(p) - 1 if p else -1


def _padd(p, q):
    n = max(len(p), len(q))
    return _ptrim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def _pscale(p, c):
    return _ptrim([c * x for x in p]) if c else []


def _pmul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] = out[i + j] + a * b
    return _ptrim(out)


def _pdivmod(p, q):
    p = list(p)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    dq = _pdeg(q)
    lead = q[-1]
    quot = [0] * max(len(p) - dq, 1)
    while p and _pdeg(p) >= dq:
        k = _pdeg(p) - dq
        c = p[-1] / lead
        quot[k] = c
        for i, b in enumerate(q):
            if b:
                p[i + k] = p[i + k] - c * b
        _ptrim(p)
    return _ptrim(quot), p


def _to_poly(f: LaurentElt, shift: int) -> list:
    """Coefficient list of x^shift * f (shift clears negative exponents)."""
    if not f.terms:
        return []
    top = max(e[0] for e in f.terms) + shift
    out = [f.ring.field.zero] * (top + 1)
    for e, c in f.terms.items():
        out[e[0] + shift] = c
    return _ptrim(out)


def _from_poly(ring: LaurentRing, p: list, shift: int = 0) -> LaurentElt:
    return LaurentElt(ring, {(i - shift,): c for i, c in enumerate(p) if c})


def _snf_poly(ring: LaurentRing, m: LaurentMatrix):
    """Core univariate SNF; returns (U, D, V, Uinv, Vinv) as LaurentMatrix values."""
    if ring.nvars != 1:
        raise ValueError("snf_univariate requires d = 1")
    rows, cols = m.rows, m.cols
    zero, one = ring.field.zero, ring.field.one
    # clear negative exponents row by row with unit monomials x^s_i
    shifts = []
    for i in range(rows):
        lo = min((min(e[0] for e in x.terms) for x in m.entries[i] if x.terms), default=0)
        shifts.append(max(0, -lo))
    D = [[_to_poly(m.entries[i][j], shifts[i]) for j in range(cols)] for i in range(rows)]

    def ident(n):
        return [[[one] if i == j else [] for j in range(n)] for i in range(n)]

    V = ident(cols)
    Vinv = ident(cols)
    # U = Up * diag(x^shift); Up collects the row operations over k[x]
    Up = ident(rows)
    Upinv = ident(rows)

    def row_op(dst, src, q):  # row dst += q * row src
        for j in range(cols):
            if D[src][j]:
                D[dst][j] = _padd(D[dst][j], _pmul(q, D[src][j]))
        for j in range(rows):
            if Up[src][j]:
                Up[dst][j] = _padd(Up[dst][j], _pmul(q, Up[src][j]))
        # inverse: column src -= q * column dst
        negq = _pscale(q, -one)
        for i in range(rows):
            if Upinv[i][dst]:
                Upinv[i][src] = _padd(Upinv[i][src], _pmul(negq, Upinv[i][dst]))

    def row_swap(a, b):
        D[a], D[b] = D[b], D[a]
        Up[a], Up[b] = Up[b], Up[a]
        for r in Upinv:
            r[a], r[b] = r[b], r[a]

    def row_scale(a, c):
        D[a] = [_pscale(x, c) for x in D[a]]
        Up[a] = [_pscale(x, c) for x in Up[a]]
        ci = 1 / c
        for r in Upinv:
            r[a] = _pscale(r[a], ci)

    def col_op(dst, src, q):  # col dst += q * col src
        for i in range(rows):
            if D[i][src]:
                D[i][dst] = _padd(D[i][dst], _pmul(q, D[i][src]))
        for i in range(cols):
            if V[i][src]:
                V[i][dst] = _padd(V[i][dst], _pmul(q, V[i][src]))
        negq = _pscale(q, -one)
        for j in range(cols):
            if Vinv[dst][j]:
                Vinv[src][j] = _padd(Vinv[src][j], _pmul(negq, Vinv[dst][j]))

    def col_swap(a, b):
        for r in D:
            r[a], r[b] = r[b], r[a]
        for r in V:
            r[a], r[b] = r[b], r[a]
        Vinv[a], Vinv[b] = Vinv[b], Vinv[a]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if D[i][j] and (best is None or _pdeg(D[i][j]) < _pdeg(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            row_swap(t, best[0])
        if best[1] != t:
            col_swap(t, best[1])
        while True:
            changed = False
            for i in range(t + 1, rows):
                if D[i][t]:
                    q, r = _pdivmod(D[i][t], D[t][t])
                    row_op(i, t, _pscale(q, -one))
                    if r:
                        row_swap(t, i)
                        changed = True
            for j in range(t + 1, cols):
                if D[t][j]:
                    q, r = _pdivmod(D[t][j], D[t][t])
                    col_op(j, t, _pscale(q, -one))
                    if r:
                        col_swap(t, j)
                        changed = True
            if changed:
                continue
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if D[i][j] and _pdivmod(D[i][j], D[t][t])[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(t, bad, [one])
        lead = D[t][t][-1]
        if lead != one:
            row_scale(t, 1 / lead)
        t += 1

    def to_lm(P, n_rows, n_cols):
        ents = []
        for i in range(n_rows):
            row = []
            for j in range(n_cols):
                row.append(_from_poly(ring, P[i][j]))
            ents.append(row)
        return LaurentMatrix(ring, ents, n_rows, n_cols)

    Dm = to_lm(D, rows, cols)
    Upm = to_lm(Up, rows, rows)
    Upinvm = to_lm(Upinv, rows, rows)
    S = LaurentMatrix.identity(ring, rows)
    Sinv = LaurentMatrix.identity(ring, rows)
    for i, s in enumerate(shifts):
        S.entries[i][i] = ring.monomial((s,))
        Sinv.entries[i][i] = ring.monomial((-s,))
    Um = Upm @ S
    Uinvm = Sinv @ Upinvm
    return Um, Dm, to_lm(V, cols, cols), Uinvm, to_lm(Vinv, cols, cols)


def snf_univariate(m: LaurentMatrix):
    """Smith normal form over k[x^±]: (U, D, V) with U m V = D.

    Negative exponents are first cleared by multiplying rows with unit
    monomials (recorded in U); the reduction then runs over k[x].  Diagonal
    entries of D are monic polynomials, each dividing the next.
    """
    U, D, V, _, _ = _snf_poly(m.ring, m)
    return U, D, V


def snf_univariate_full(m: LaurentMatrix):
    """As :func:`snf_univariate` but also returns U^-1 and V^-1."""
    return _snf_poly(m.ring, m)


def strip_unit(f: LaurentElt) -> LaurentElt:
    """Associate of a univariate f normalised to a monic polynomial with f(0) != 0."""
    if not f:
        return f
    lo = min(e[0] for e in f.terms)
    g = f.shift((-lo,))
    lead = g.terms[max(g.terms)]
    return g * (1 / lead)


def companion_matrix(f: LaurentElt) -> List[list]:
    """Companion matrix of a monic polynomial f (in x) with nonzero constant term."""
    p = _to_poly(f, 0)
    n = len(p) - 1
    field = f.ring.field
    m = [[field.zero] * n for _ in range(n)]
    for i in range(1, n):
        m[i][i - 1] = field.one
    for i in range(n):
        m[i][n - 1] = -p[i]
    return m
