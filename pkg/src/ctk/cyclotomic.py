"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in a fixed basis of Q(zeta_n) made of selected powers of
zeta_n, always at the smallest possible n.  Write n as a product of prime
powers Q_p and, for an exponent e, let r_p(e) = e * (n/Q_p)^-1 mod Q_p be its
p-coordinate.  The exponent e is a basis exponent when, for every odd p, the
leading base-p digit of r_p(e) is nonzero and, for p = 2, r_2(e) < Q_2/2.
Those exponents number phi(n), and the relations

    sum_{i<p} zeta_n^(e + i*n/p) = 0   (p odd),   zeta_n^(e + n/2) = -zeta_n^e

rewrite any other power in terms of them.  The coordinates are stable under
the embedding Q(zeta_(n/p)) -> Q(zeta_n), which is what makes reduction to the
conductor a purely combinatorial test.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]

__all__ = [
    "Cyclotomic",
    "CycParseError",
    "ValueClass",
    "root_of_unity",
    "galois_conjugate",
    "complex_conjugate",
    "galois_mean",
    "conductor",
    "is_root_of_unity",
    "parse_cyc",
    "render_cyc",
]


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n as ((p, Q_p), ...) with Q_p the full prime power."""
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            q = 1
            while m % p == 0:
                m //= p
                q *= p
            out.append((p, q))
        p += 1
    if m > 1:
        out.append((m, m))
    return tuple(out)


@lru_cache(maxsize=None)
def _coordinate_multipliers(n: int) -> tuple[tuple[int, int, int], ...]:
    # (p, Q_p, (n/Q_p)^-1 mod Q_p)
    return tuple((p, q, pow(n // q, -1, q) if q > 1 else 0) for p, q in _factor(n))


def _halve_order(n: int, coeffs: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]]:
    # n = 2m with m odd: zeta_n = -zeta_m^((m+1)/2)
    m = n // 2
    h = (m + 1) // 2
    out: dict[int, Fraction] = {}
    for e, c in coeffs.items():
        f = (e * h) % m
        out[f] = out.get(f, 0) + (-c if e % 2 else c)
    return m, out


def _to_basis(n: int, coeffs: dict[int, Fraction]) -> dict[int, Fraction]:
    """Rewrite a raw sum of powers of zeta_n (n not 2 mod 4) in the basis."""
    cur = {e % n: c for e, c in coeffs.items() if c}
    for p, q, inv in _coordinate_multipliers(n):
        step = n // p
        block = q // p
        nxt: dict[int, Fraction] = {}
        for e, c in cur.items():
            r = (e * inv) % q
            if p == 2:
                bad = r >= block
            else:
                bad = r < block
            if not bad:
                nxt[e] = nxt.get(e, 0) + c
            elif p == 2:
                f = (e + step) % n
                nxt[f] = nxt.get(f, 0) - c
            else:
                for i in range(1, p):
                    f = (e + i * step) % n
                    nxt[f] = nxt.get(f, 0) - c
        cur = {e: c for e, c in nxt.items() if c}
    return cur


def _descend(n: int, coeffs: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]] | None:
    """Try to rewrite a basis expansion in Q(zeta_(n/p)) for some prime p."""
    for p, q in _factor(n):
        if q > p:
            if all(e % p == 0 for e in coeffs):
                return n // p, {e // p: c for e, c in coeffs.items()}
            continue
        if p == 2:
            continue
        # p exactly divides n: each fiber {e0 + i*n/p} must carry one constant
        m = n // p
        fibers: dict[int, dict[int, Fraction]] = {}
        for e, c in coeffs.items():
            fibers.setdefault(e % m, {})[e] = c
        ok = True
        out: dict[int, Fraction] = {}
        for base, members in fibers.items():
            vals = set(members.values())
            if len(members) != p - 1 or len(vals) != 1:
                ok = False
                break
            e0 = next(e for e in (base + i * m for i in range(p)) if e % p == 0)
            out[e0 // p] = -vals.pop()
        if ok:
            return m, out
    return None


def _canonical(n: int, coeffs: Mapping[int, Number]) -> tuple[int, dict[int, Fraction]]:
    cur = {e % n: Fraction(c) for e, c in coeffs.items() if c}
    if not cur:
        return 1, {}
    while True:
        if n % 4 == 2:
            n, cur = _halve_order(n, cur)
        cur = _to_basis(n, cur)
        if not cur:
            return 1, {}
        if n == 1:
            return 1, cur
        down = _descend(n, cur)
        if down is None:
            return n, cur
        n, cur = down


class Cyclotomic:
    """An exact element of a cyclotomic field, kept at its conductor.

    Construct values with :func:`root_of_unity`, from rationals, or from a raw
    mapping ``{exponent: coefficient}`` meaning ``sum c * zeta_order**e``.
    """

    __slots__ = ("_order", "_coeffs", "_hash")

    def __init__(self, value: Number | Cyclotomic = 0, order: int | None = None,
                 coeffs: Mapping[int, Number] | None = None):
        if isinstance(value, Cyclotomic):
            n, c = value._order, dict(value._coeffs)
        elif coeffs is not None:
            if order is None or order <= 0:
                raise ValueError("cyclotomic order must be a positive integer")
            n, c = _canonical(order, coeffs)
        else:
            if order is not None and order <= 0:
                raise ValueError("cyclotomic order must be a positive integer")
            n, c = _canonical(1, {0: Fraction(value)})
        self._order = n
        self._coeffs = c
        self._hash = None

    @classmethod
    def _raw(cls, n: int, coeffs: dict[int, Fraction]) -> Cyclotomic:
        obj = cls.__new__(cls)
        obj._order, obj._coeffs = _canonical(n, coeffs)
        obj._hash = None
        return obj

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def terms(self) -> list[tuple[int, Fraction]]:
        return sorted(self._coeffs.items())

    # --- coercion helpers -------------------------------------------------
    @staticmethod
    def _lift(x) -> Cyclotomic | None:
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic(x)
        return None

    def _embedded(self, n: int) -> dict[int, Fraction]:
        k = n // self._order
        return {e * k: c for e, c in self._coeffs.items()}

    # --- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._coeffs

    def is_rational(self) -> bool:
        return self._order == 1

    def is_integer(self) -> bool:
        return self._order == 1 and (not self._coeffs or self._coeffs[0].denominator == 1)

    def to_fraction(self) -> Fraction:
        if self._order != 1:
            raise ValueError(f"{self} is not rational")
        return self._coeffs.get(0, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    # --- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = math.lcm(self._order, o._order)
        acc = self._embedded(n)
        for e, c in o._embedded(n).items():
            acc[e] = acc.get(e, 0) + c
        return Cyclotomic._raw(n, acc)

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        obj = Cyclotomic.__new__(Cyclotomic)
        obj._order = self._order
        obj._coeffs = {e: -c for e, c in self._coeffs.items()}
        obj._hash = None
        return obj

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o._order == 1:
            s = o._coeffs.get(0, 0)
            return Cyclotomic._raw(self._order, {e: c * s for e, c in self._coeffs.items()})
        if self._order == 1:
            return o * self
        n = math.lcm(self._order, o._order)
        a, b = self._embedded(n), o._embedded(n)
        acc: dict[int, Fraction] = {}
        for e, c in a.items():
            for f, d in b.items():
                g = (e + f) % n
                acc[g] = acc.get(g, 0) + c * d
        return Cyclotomic._raw(n, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> Cyclotomic:
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = Cyclotomic(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # --- comparison / hashing ---------------------------------------------
    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._order == o._order and self._coeffs == o._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            if self._order == 1:
                self._hash = hash(self._coeffs.get(0, Fraction(0)))
            else:
                self._hash = hash((self._order, frozenset(self._coeffs.items())))
        return self._hash

    # --- numeric embedding ------------------------------------------------
    def __complex__(self) -> complex:
        n = self._order
        return sum((float(c) * cmath.exp(2j * math.pi * e / n) for e, c in self._coeffs.items()),
                   0j)

    def __repr__(self) -> str:
        return f"Cyclotomic({render_cyc(self)!r})"

    def __str__(self) -> str:
        return render_cyc(self)


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """Return zeta_n ** k in canonical form."""
    if n <= 0:
        raise ValueError(f"root_of_unity: order must be positive, got {n}")
    return Cyclotomic._raw(n, {k % n: Fraction(1)})


def galois_conjugate(a: Cyclotomic, k: int) -> Cyclotomic:
    """Apply the automorphism zeta_n -> zeta_n**k, n = a.order."""
    n = a.order
    if math.gcd(k, n) != 1:
        raise ValueError(f"galois_conjugate: {k} is not coprime to order {n}")
    if n == 1:
        return a
    return Cyclotomic._raw(n, {(e * k) % n: c for e, c in a._coeffs.items()})


def complex_conjugate(a: Cyclotomic) -> Cyclotomic:
    return galois_conjugate(a, -1)


def galois_mean(a: Cyclotomic) -> Fraction:
    """Mean of |sigma(a)|**2 over the Galois group of Q(zeta_n), as a rational.

    Averages sigma_k(a * conj(a)) over all k coprime to n; the sum is a trace
    and therefore rational.
    """
    n = a.order
    b = a * complex_conjugate(a)
    if b.order == 1:
        return b.to_fraction()
    units = [k for k in range(1, n) if math.gcd(k, n) == 1]
    total = Cyclotomic(0)
    for k in units:
        total = total + galois_conjugate(b, k)
    if not total.is_rational():
        raise ArithmeticError(f"trace of {b} is not rational")
    return total.to_fraction() / len(units)


def conductor(a: Cyclotomic) -> int:
    """Least k with a in Q(zeta_k), never 2 mod 4."""
    return a.order


def is_root_of_unity(a: Cyclotomic) -> bool:
    if a.is_zero():
        return False
    return a ** math.lcm(2, a.order) == 1


@dataclass(frozen=True)
class ValueClass:
    """Classification of a character value: Zero, RootOfUnity or Other."""

    kind: str
    mean: Fraction

    ZERO = "Zero"
    ROOT = "RootOfUnity"
    OTHER = "Other"

    @property
    def root_or_zero(self) -> bool:
        return self.kind != self.OTHER


# --- literal grammar --------------------------------------------------------

class CycParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.pos = pos
        self.text = text


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        raise CycParseError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def signed_integer(self) -> int:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        return sign * self.integer()

    def rational(self) -> Fraction:
        num = self.integer()
        if self.peek() == "/":
            self.pos += 1
            at = self.pos
            den = self.integer()
            if den == 0:
                self.error("zero denominator", at)
            return Fraction(num, den)
        return Fraction(num)

    def atom(self) -> Cyclotomic:
        self.skip()
        if self.text.startswith("E(", self.pos):
            self.pos += 2
            at = self.pos
            n = self.integer()
            if n == 0:
                self.error("order 0 is not allowed", at)
            self.take(")")
            k = 1
            if self.peek() == "^":
                self.pos += 1
                k = self.signed_integer()
            return root_of_unity(n, k)
        if self.peek().isdigit():
            return Cyclotomic(self.rational())
        self.error("expected E(n) or a rational")

    def term(self) -> Cyclotomic:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        self.skip()
        if self.peek().isdigit():
            r = self.rational()
            if self.peek() == "*":
                self.pos += 1
                return self.atom() * (sign * r)
            return Cyclotomic(sign * r)
        return self.atom() * sign

    def expr(self) -> Cyclotomic:
        if not self.peek():
            self.error("empty expression")
        total = self.term()
        while True:
            ch = self.peek()
            if not ch:
                return total
            if ch not in "+-":
                self.error(f"unexpected {ch!r}")
            sign = -1 if ch == "-" else 1
            self.pos += 1
            if self.peek() in ("+", "-"):
                self.error("doubled sign")
            total = total + self.term() * sign


def parse_cyc(text: str) -> Cyclotomic:
    """Parse a literal such as ``-3/2*E(8)^3`` or ``E(5)+E(5)^4``."""
    return _Parser(text).expr()


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_cyc(a: Cyclotomic) -> str:
    if a.is_zero():
        return "0"
    n = a.order
    parts = []
    for e, c in a.terms():
        neg = c < 0
        mag = -c if neg else c
        if n == 1 or e == 0:
            body = _fmt_coeff(mag)
        else:
            atom = f"E({n})" if e == 1 else f"E({n})^{e}"
            body = atom if mag == 1 else f"{_fmt_coeff(mag)}*{atom}"
        if parts:
            parts.append(("-" if neg else "+") + body)
        else:
            parts.append(("-" if neg else "") + body)
    return "".join(parts)


def cyclotomic_sum(values: Iterable[Cyclotomic]) -> Cyclotomic:
    """Sum many values in one canonicalization pass."""
    vals = list(values)
    if not vals:
        return Cyclotomic(0)
    n = math.lcm(*(v.order for v in vals))
    acc: dict[int, Fraction] = {}
    for v in vals:
        for e, c in v._embedded(n).items():
            acc[e] = acc.get(e, 0) + c
    return Cyclotomic._raw(n, acc)


def hermitian_dot(xs: Iterable[Cyclotomic], ys: Iterable[Cyclotomic],
                  weights: Iterable[int] | None = None) -> Cyclotomic:
    """sum_i w_i * x_i * conj(y_i), reduced to canonical form once at the end."""
    xs, ys = list(xs), list(ys)
    ws = [1] * len(xs) if weights is None else list(weights)
    n = math.lcm(*(v.order for v in xs + ys)) if xs else 1
    acc: dict[int, Fraction] = {}
    for x, y, w in zip(xs, ys, ws):
        if not x._coeffs or not y._coeffs:
            continue
        kx, ky = n // x._order, n // y._order
        for e, c in x._coeffs.items():
            ee = e * kx
            cw = c * w
            for f, d in y._coeffs.items():
                g = (ee - f * ky) % n
                acc[g] = acc.get(g, 0) + cw * d
    return Cyclotomic._raw(n, acc)
