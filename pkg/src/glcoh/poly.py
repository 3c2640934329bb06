"""Exact polynomials over GF(p) or QQ with a fixed monomial order."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field GF(p), or the rationals when ``p == 0``."""

    p: int = 101

    def __post_init__(self):
        if self.p != 0 and not (_is_prime(self.p) and self.p < 2**31):
            raise ValueError(f"GF({self.p}): characteristic must be a prime < 2^31")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @property
    def kind(self) -> str:
        return "rationals" if self.p == 0 else "prime-field"

    def __call__(self, c):
        if self.p:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, self.p) % self.p
            return int(c) % self.p
        return Fraction(c)

    def inv(self, c):
        if self.p:
            return pow(c, -1, self.p)
        return 1 / Fraction(c)

    def signed(self, c):
        """Representative used for printing: symmetric range for GF(p)."""
        if self.p and c > self.p // 2:
            return c - self.p
        return c

    def __str__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"


# A monomial is a tuple of exponents.

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, d: int) -> tuple:
    """All exponent vectors of total degree ``d`` in ``n`` variables."""
    if d < 0:
        return ()
    if n == 0:
        return ((),) if d == 0 else ()
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return tuple(out)


_ORDER_KINDS = ("grevlex", "lex", "graded-lex")


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind not in _ORDER_KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}")

    @property
    def graded(self) -> bool:
        return self.kind != "lex"

    def key(self, e):
        """Flat integer tuple; larger means bigger in the order."""
        if self.kind == "grevlex":
            return (sum(e),) + tuple(-x for x in reversed(e))
        if self.kind == "lex":
            return tuple(e)
        return (sum(e),) + tuple(e)

    def __str__(self):
        return self.kind


@dataclass(frozen=True, eq=False)
class PolynomialRing:
    """The ambient polynomial ring k[x_1..x_n] (all variables of degree 1)."""

    field: FieldSpec
    names: tuple
    order: MonomialOrder = field(default_factory=MonomialOrder)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing) and self.field == other.field
                and self.names == other.names and self.order == other.order)

    def __hash__(self):
        return hash((self.field, self.names, self.order))

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def zero_exp(self):
        return (0,) * self.nvars

    @property
    def gens(self):
        n = self.nvars
        return tuple(
            Polynomial(self, {tuple(int(i == j) for j in range(n)): 1}) for i in range(n))

    def var(self, name: str) -> "Polynomial":
        return self.gens[self.names.index(name)]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {self.zero_exp: c} if c else {})

    def monomial(self, e, c=1) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {tuple(e): c} if c else {})

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring != self:
                raise ValueError("polynomial from a different ring")
            return x
        if isinstance(x, str):
            from .lang import parse_polynomial
            return parse_polynomial(x, self)
        return self.const(x)

    def __repr__(self):
        return f"PolynomialRing({self.field}, [{', '.join(self.names)}], {self.order})"


class Polynomial:
    """Immutable sparse polynomial: ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = F(t.get(e, 0) + c)
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                v = F(t.get(e, 0) + c1 * c2)
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return Polynomial(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        """Terms in strictly decreasing order."""
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = self.ring.order.key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    @property
    def leading_monomial(self):
        return self.leading_term()[0]

    @property
    def leading_coefficient(self):
        return self.leading_term()[1]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coefficient(self):
        return self.terms.get(self.ring.zero_exp, 0)

    def monic(self) -> "Polynomial":
        lc = self.leading_coefficient
        inv = self.ring.field.inv(lc)
        F = self.ring.field
        return Polynomial(self.ring, {e: F(c * inv) for e, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.ring.field
        names = self.ring.names
        parts = []
        for e, c in self.sorted_terms():
            c = F.signed(c)
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append(("-" if neg else "+", body))
        s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Polynomial({self})"
