"""Exact scalars: the rationals and cyclotomic fields Q(zeta_n).

Rational scalars are plain :class:`fractions.Fraction` values.  Elements of
Q(zeta_n) are :class:`Cyclotomic` instances holding phi(n) rational
coefficients of a polynomial in zeta_n reduced modulo the n-th cyclotomic
polynomial, so equality is representational.  Python ints and Fractions are
accepted wherever a cyclotomic operand is expected (Q sits canonically inside
every Q(zeta_n)); two cyclotomic operands of different orders must be
embedded explicitly with :meth:`Field.embed`.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Sequence, Tuple, Union


class FieldMismatchError(ValueError):
    """Operands live in different cyclotomic fields."""


class ParseError(ValueError):
    """A scalar or polynomial literal could not be parsed."""


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first: x^n - 1 divided by Phi_d for d | n, d < n."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            div = cyclotomic_polynomial(d)
            # exact division by a monic polynomial, from the top coefficient down
            quot = [0] * (len(num) - len(div) + 1)
            for k in range(len(quot) - 1, -1, -1):
                c = num[k + len(div) - 1]
                quot[k] = c
                for j, b in enumerate(div):
                    num[k + j] -= c * b
            num = quot
    return tuple(num)


@lru_cache(maxsize=None)
def _power_table(n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Row e holds the reduction of x^e modulo Phi_n, for 0 <= e < max(n, 2*phi)."""
    phi = euler_phi(n)
    poly = cyclotomic_polynomial(n)
    size = max(n, 2 * phi)
    rows = []
    cur = [Fraction(0)] * phi
    cur[0] = Fraction(1)
    for _ in range(size):
        rows.append(tuple(cur))
        # multiply by x and reduce using x^phi = -sum poly[k] x^k
        top = cur[-1]
        nxt = [Fraction(0)] + cur[:-1]
        if top:
            for k in range(phi):
                nxt[k] -= top * poly[k]
        cur = nxt
    return tuple(rows)


Rational = Union[int, Fraction]


class Cyclotomic:
    """An element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi-1)."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, n: int, coeffs: Sequence[Rational]):
        phi = euler_phi(n)
        if len(coeffs) != phi:
            raise ValueError(f"Q(zeta_{n}) needs {phi} coefficients, got {len(coeffs)}")
        self.n = n
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        self._hash = None

    # construction helpers -------------------------------------------------
    @classmethod
    def from_rational(cls, n: int, value: Rational) -> "Cyclotomic":
        c = [Fraction(0)] * euler_phi(n)
        c[0] = Fraction(value)
        return cls(n, c)

    @classmethod
    def from_exponents(cls, n: int, terms: Dict[int, Rational]) -> "Cyclotomic":
        """sum of c * zeta_n^e for e -> c in ``terms`` (any integer e)."""
        table = _power_table(n)
        phi = euler_phi(n)
        acc = [Fraction(0)] * phi
        for e, c in terms.items():
            if not c:
                continue
            row = table[e % n]
            for k in range(phi):
                if row[k]:
                    acc[k] += c * row[k]
        return cls(n, acc)

    @classmethod
    def zeta(cls, n: int, power: int = 1) -> "Cyclotomic":
        return cls.from_exponents(n, {power: 1})

    # predicates -----------------------------------------------------------
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self) -> bool:
        return any(self.coeffs)

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.n != self.n:
                raise FieldMismatchError(
                    f"cannot combine Q(zeta_{self.n}) with Q(zeta_{other.n}); embed first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.n, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.n, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.n, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.n, [a * other for a in self.coeffs])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        phi = len(self.coeffs)
        prod = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        table = _power_table(self.n)
        acc = list(prod[:phi])
        for e in range(phi, 2 * phi - 1):
            c = prod[e]
            if c:
                row = table[e]
                for k in range(phi):
                    if row[k]:
                        acc[k] += c * row[k]
        return Cyclotomic(self.n, acc)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return Cyclotomic.from_rational(self.n, 1 / self.coeffs[0])
        # solve (multiplication-by-self matrix) * y = e_0
        phi = len(self.coeffs)
        cols = []
        basis = Cyclotomic.from_rational(self.n, 1)
        zeta = Cyclotomic.zeta(self.n)
        for _ in range(phi):
            cols.append((self * basis).coeffs)
            basis = basis * zeta
        mat = [[cols[j][i] for j in range(phi)] for i in range(phi)]
        rhs = [Fraction(1)] + [Fraction(0)] * (phi - 1)
        sol = _solve_rational(mat, rhs)
        return Cyclotomic(self.n, sol)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic(self.n, [a / other for a in self.coeffs])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.from_rational(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.n == other.n and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.n, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"Cyclotomic({self.n}, {format_poly_z(self.coeffs)!r})"

    def __str__(self):
        return format_poly_z(self.coeffs)


def _solve_rational(mat, rhs):
    n = len(mat)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly_z(coeffs: Sequence[Fraction], var: str = "z") -> str:
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        if e == 0:
            mono = ""
        elif e == 1:
            mono = var
        else:
            mono = f"{var}^{e}"
        if mono and abs(c) == 1:
            body = mono
        elif mono:
            body = f"{_fmt_rational(abs(c))}*{mono}"
        else:
            body = _fmt_rational(abs(c))
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# polynomial literal parsing (shared with the Laurent module)

_TERM_SPLIT = re.compile(r"(?<![\^*/])\s*([+-])\s*")
_FACTOR = re.compile(r"^([A-Za-z]\w*)(?:\^\(?(-?\d+)\)?)?$")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def _number(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}") from None


def parse_polynomial(text: str, variables: Sequence[str]) -> Dict[Tuple[int, ...], Fraction]:
    """Parse ``"2*x1^-3*x2 + 1/2"`` style strings into {exponents: coefficient}.

    Negative exponents are allowed; unknown variable names raise ParseError.
    """
    index = {v: i for i, v in enumerate(variables)}
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial literal")
    if s[0] not in "+-":
        s = "+" + s
    pieces = _TERM_SPLIT.split(s)
    # pieces = ['', sign, term, sign, term, ...]
    if pieces[0].strip():
        raise ParseError(f"cannot parse {text!r}")
    out: Dict[Tuple[int, ...], Fraction] = {}
    for sign, term in zip(pieces[1::2], pieces[2::2]):
        term = term.strip()
        if not term:
            raise ParseError(f"dangling sign in {text!r}")
        coeff = Fraction(1)
        exps = [0] * len(variables)
        for factor in term.split("*"):
            factor = factor.strip()
            if _NUMBER.match(factor):
                coeff *= _number(factor)
                continue
            m = _FACTOR.match(factor)
            if not m or m.group(1) not in index:
                raise ParseError(f"bad factor {factor!r} in {text!r}")
            exps[index[m.group(1)]] += int(m.group(2)) if m.group(2) else 1
        if sign == "-":
            coeff = -coeff
        key = tuple(exps)
        out[key] = out.get(key, Fraction(0)) + coeff
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# field contexts


class Field:
    """A field context: ``Field.rational()`` or ``Field.cyclotomic(n)``."""

    __slots__ = ("kind", "n")

    def __init__(self, kind: str, n: int = 1):
        if kind not in ("rational", "cyclotomic"):
            raise ValueError(f"unknown field kind {kind!r}")
        if n < 1:
            raise ValueError("cyclotomic order must be positive")
        self.kind = kind
        self.n = n if kind == "cyclotomic" else 1

    @classmethod
    def rational(cls) -> "Field":
        return cls("rational")

    @classmethod
    def cyclotomic(cls, n: int) -> "Field":
        return cls("cyclotomic", n)

    @classmethod
    def from_string(cls, text: str) -> "Field":
        t = text.strip()
        if t in ("Q", "QQ", "ℚ", "rational"):
            return cls.rational()
        m = re.match(r"^(?:cyclotomic|Q\(zeta_?)[:]?\s*(\d+)\)?$", t)
        if not m:
            raise ParseError(f"unknown field declaration {text!r}")
        return cls.cyclotomic(int(m.group(1)))

    def __eq__(self, other):
        return isinstance(other, Field) and (self.kind, self.n) == (other.kind, other.n)

    def __hash__(self):
        return hash((self.kind, self.n))

    def __repr__(self):
        return "Field.rational()" if self.kind == "rational" else f"Field.cyclotomic({self.n})"

    def __str__(self):
        return "Q" if self.kind == "rational" else f"cyclotomic:{self.n}"

    @property
    def degree(self) -> int:
        return 1 if self.kind == "rational" else euler_phi(self.n)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def zeta(self, power: int = 1):
        if self.kind == "rational":
            if power % 2 == 0:
                return Fraction(1)
            raise ValueError("Q has no primitive root of unity beyond -1; use cyclotomic:2")
        return Cyclotomic.zeta(self.n, power)

    def __call__(self, value):
        """Coerce an int, Fraction or same-field element into this field."""
        if self.kind == "rational":
            if isinstance(value, Cyclotomic):
                if value.is_rational():
                    return value.coeffs[0]
                raise FieldMismatchError("irrational cyclotomic value in Q")
            return Fraction(value)
        if isinstance(value, Cyclotomic):
            if value.n != self.n:
                raise FieldMismatchError(f"value in Q(zeta_{value.n}), expected Q(zeta_{self.n})")
            return value
        return Cyclotomic.from_rational(self.n, value)

    def contains(self, value) -> bool:
        if self.kind == "rational":
            return isinstance(value, (int, Fraction))
        return isinstance(value, Cyclotomic) and value.n == self.n

    def embeds_into(self, target: "Field") -> bool:
        if self.kind == "rational" or self.n <= 2:
            return True
        return target.kind == "cyclotomic" and target.n % self.n == 0

    def embed(self, value, target: "Field"):
        """Image of ``value`` (in self) under the canonical embedding into ``target``."""
        if self.kind == "rational" or (isinstance(value, Cyclotomic) and value.is_rational()):
            q = value.coeffs[0] if isinstance(value, Cyclotomic) else Fraction(value)
            return target(q)
        if not isinstance(value, Cyclotomic) or value.n != self.n:
            raise FieldMismatchError("value does not belong to the source field")
        m = self.n
        if target.kind == "rational":
            if m <= 2:
                return value.coeffs[0]
            raise FieldMismatchError(f"Q(zeta_{m}) does not embed in Q")
        n = target.n
        if m <= 2:
            # Q(zeta_1) = Q(zeta_2) = Q
            return target(value.coeffs[0])
        if n % m:
            raise FieldMismatchError(f"no canonical embedding Q(zeta_{m}) -> Q(zeta_{n})")
        step = n // m
        return Cyclotomic.from_exponents(n, {k * step: c for k, c in enumerate(value.coeffs)})

    def parse(self, text: str):
        """Parse a scalar literal: ``"p/q"`` or a polynomial in ``z`` = zeta_n."""
        if isinstance(text, (int, Fraction)):
            return self(text)
        s = str(text).strip()
        if _NUMBER.match(s.lstrip("-")) and s.count("-") <= 1:
            return self(_number(s))
        terms = parse_polynomial(s, ["z"])
        if self.kind == "rational":
            if any(e != (0,) for e in terms):
                raise ParseError(f"symbol z not allowed in a rational literal: {text!r}")
            return Fraction(terms.get((0,), 0))
        return Cyclotomic.from_exponents(self.n, {e[0]: c for e, c in terms.items()})

    def format(self, value) -> str:
        if isinstance(value, Cyclotomic):
            return str(value)
        return _fmt_rational(Fraction(value))

    def root_of_unity_exponent(self, value) -> Tuple[int, int]:
        """Return (k, N) with value = w^k where w is the fixed primitive N-th root.

        N = n for even n and 2n for odd n (w = -zeta_n then); for Q, N = 2, w = -1.
        Raises ValueError if ``value`` is not a root of unity of this field.
        """
        if self.kind == "rational" or self.n <= 2:
            v = value.coeffs[0] if isinstance(value, Cyclotomic) else Fraction(value)
            if v == 1:
                return 0, 2
            if v == -1:
                return 1, 2
            raise ValueError(f"{value} is not a root of unity")
        n = self.n
        if n % 2 == 0:
            N, w = n, Cyclotomic.zeta(n)
        else:
            N, w = 2 * n, -Cyclotomic.zeta(n)
        cur = Cyclotomic.from_rational(n, 1)
        for k in range(N):
            if cur == value:
                return k, N
            cur = cur * w
        raise ValueError(f"{value} is not a root of unity in Q(zeta_{n})")


def common_field(fields: Sequence[Field]) -> Field:
    """Smallest field of the family Q(zeta_lcm) containing every input field."""
    orders = [f.n for f in fields if f.kind == "cyclotomic" and f.n > 2]
    if not orders:
        if any(f.kind == "cyclotomic" for f in fields):
            return Field.cyclotomic(max(f.n for f in fields if f.kind == "cyclotomic"))
        return Field.rational()
    return Field.cyclotomic(math.lcm(*orders))


def arithmetic(a, b, op: str):
    """Field arithmetic dispatcher: op in add | sub | mul | div | inv | eq."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b
    if op == "inv":
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return a.inverse() if isinstance(a, Cyclotomic) else 1 / Fraction(a)
    if op == "eq":
        return a == b
    raise ValueError(f"unknown op {op!r}")
