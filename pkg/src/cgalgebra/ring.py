"""Exact scalar arithmetic.

Two layers: :class:`GaussianRational` (elements of Q(i), stored as a pair of
``fractions.Fraction``) and :class:`Coefficient` (Laurent polynomials in the
formal deformation parameter ``g`` and ordinary polynomials in the formal
frequency ``w``, with Gaussian-rational weights).  Every symbolic module in
the package works over this ring; nothing here ever rounds.

Canonical text form, used in golden files and reports::

    (3/2) + (-2+1i)*g^-1*w^2
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Union

from .errors import SingularLimit, ZeroSubstitution

RationalLike = Union[int, Fraction]


def _frac(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class GaussianRational:
    """Element re + i*im of Q(i); all arithmetic is exact."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    # -- constructors -------------------------------------------------
    @staticmethod
    def of(value: "GaussianLike") -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(_frac(value))
        if isinstance(value, tuple) and len(value) == 2:
            return GaussianRational(_frac(value[0]), _frac(value[1]))
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    # -- predicates ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other) -> "GaussianRational":
        try:
            other = GaussianRational.of(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other) -> "GaussianRational":
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other) -> "GaussianRational":
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other) -> "GaussianRational":
        try:
            other = GaussianRational.of(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussianRational":
        other = GaussianRational.of(other)
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other) -> "GaussianRational":
        return GaussianRational.of(other) / self

    def __pow__(self, k: int) -> "GaussianRational":
        if k < 0:
            return (QONE / self) ** (-k)
        out = QONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    # -- text ------------------------------------------------------------
    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        if self.re:
            parts.append(str(self.re))
        if self.im:
            sign = "-" if self.im < 0 else ("+" if parts else "")
            mag = -self.im if self.im < 0 else self.im
            parts.append(f"{sign}{mag}i")
        return "".join(parts)

    @staticmethod
    def parse(text: str) -> "GaussianRational":
        s = text.strip()
        if not s:
            raise ValueError("empty Gaussian rational")
        if s == "0":
            return QZERO
        if s.endswith("i"):
            body = s[:-1]
            # split a trailing rational off the real part, e.g. "1/2-3i"
            m = re.match(r"^([+-]?\d+(?:/\d+)?)([+-]\d+(?:/\d+)?)$", body)
            if m:
                return GaussianRational(Fraction(m.group(1)), Fraction(m.group(2)))
            if body in ("", "+"):
                return GaussianRational(0, 1)
            if body == "-":
                return GaussianRational(0, -1)
            return GaussianRational(0, Fraction(body))
        return GaussianRational(Fraction(s))


GaussianLike = Union[GaussianRational, int, Fraction, tuple]

QZERO = GaussianRational()
QONE = GaussianRational(Fraction(1))
QI = GaussianRational(Fraction(0), Fraction(1))


def _canon_terms(d: Mapping[tuple, GaussianRational]) -> tuple:
    items = [(k, v) for k, v in d.items() if not v.is_zero()]
    items.sort(key=lambda kv: kv[0])
    return tuple(items)


@dataclass(frozen=True)
class Coefficient:
    """Finite sum  sum_{(a,b)} q_{a,b} * g^a * w^b  with q in Q(i).

    ``a`` may be negative (the operator catalogs contain 1/g and 1/g^2);
    ``b`` is never negative.  Zero-valued entries are never stored.
    """

    terms: tuple = ()

    def __post_init__(self):
        for (a, b), _ in self.terms:
            if b < 0:
                raise ValueError("negative w exponent is not part of the ring")

    # -- constructors ---------------------------------------------------
    @staticmethod
    def from_dict(d: Mapping[tuple, GaussianRational]) -> "Coefficient":
        return Coefficient(_canon_terms(d))

    @staticmethod
    def of(value: "CoefficientLike") -> "Coefficient":
        if isinstance(value, Coefficient):
            return value
        q = GaussianRational.of(value)
        return Coefficient.from_dict({(0, 0): q})

    @staticmethod
    def monomial(q: GaussianLike, g_exp: int = 0, w_exp: int = 0) -> "Coefficient":
        return Coefficient.from_dict({(g_exp, w_exp): GaussianRational.of(q)})

    # -- views ------------------------------------------------------------
    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_scalar(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == (0, 0))

    def scalar_value(self) -> GaussianRational:
        if self.is_zero():
            return QZERO
        if not self.is_scalar():
            raise ValueError(f"not a scalar: {self}")
        return self.terms[0][1]

    def gamma_exponents(self) -> tuple:
        if not self.terms:
            return (0, 0)
        exps = [a for (a, _), _ in self.terms]
        return (min(exps), max(exps))

    def omega_degree(self) -> int:
        return max((b for (_, b), _ in self.terms), default=0)

    # -- ring operations ---------------------------------------------------
    def __add__(self, other) -> "Coefficient":
        try:
            other = Coefficient.of(other)
        except TypeError:
            return NotImplemented
        d = dict(self.terms)
        for k, v in other.terms:
            s = d.get(k, QZERO) + v
            if s.is_zero():
                d.pop(k, None)
            else:
                d[k] = s
        return Coefficient(_canon_terms(d))

    __radd__ = __add__

    def __neg__(self) -> "Coefficient":
        return Coefficient(tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other) -> "Coefficient":
        return self + (-Coefficient.of(other))

    def __rsub__(self, other) -> "Coefficient":
        return Coefficient.of(other) + (-self)

    def __mul__(self, other) -> "Coefficient":
        try:
            other = Coefficient.of(other)
        except TypeError:
            return NotImplemented
        d: dict = {}
        for (a1, b1), v1 in self.terms:
            for (a2, b2), v2 in other.terms:
                k = (a1 + a2, b1 + b2)
                s = d.get(k, QZERO) + v1 * v2
                if s.is_zero():
                    d.pop(k, None)
                else:
                    d[k] = s
        return Coefficient(_canon_terms(d))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Coefficient":
        if k < 0:
            raise ValueError("negative Coefficient power; invert explicitly")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "Coefficient":
        """i -> -i; the formal parameters g, w stay untouched."""
        return Coefficient(tuple((k, v.conj()) for k, v in self.terms))

    # -- division -----------------------------------------------------------
    def divide_exact(self, other: "Coefficient") -> "Coefficient":
        """Exact division; raises ``ValueError`` when not a ring multiple.

        Laurent g-factors are normalized away first, then ordinary
        leading-term division in (g, w) with lexicographic order.
        """
        other = Coefficient.of(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero coefficient")
        if self.is_zero():
            return ZERO
        shift = min(self.gamma_exponents()[0], other.gamma_exponents()[0])
        num = dict(((a - shift, b), v) for (a, b), v in self.terms)
        den = dict(((a - shift, b), v) for (a, b), v in other.terms)
        den_lead = max(den)
        den_lv = den[den_lead]
        quo: dict = {}
        while num:
            lead = max(num)
            lv = num[lead]
            qa, qb = lead[0] - den_lead[0], lead[1] - den_lead[1]
            if qb < 0:
                raise ValueError(f"({self}) is not divisible by ({other})")
            qv = lv / den_lv
            quo_key = (qa, qb)
            quo[quo_key] = quo.get(quo_key, QZERO) + qv
            for k, v in den.items():
                kk = (k[0] + qa, k[1] + qb)
                s = num.get(kk, QZERO) - qv * v
                if s.is_zero():
                    num.pop(kk, None)
                else:
                    num[kk] = s
        return Coefficient(_canon_terms(quo))

    # -- evaluation ----------------------------------------------------------
    def substitute(self, gamma: GaussianLike = None, omega: GaussianLike = None) -> "Coefficient":
        """Partial substitution; ``None`` leaves a parameter formal."""
        if gamma is None and omega is None:
            return self
        gq = None if gamma is None else GaussianRational.of(gamma)
        wq = None if omega is None else GaussianRational.of(omega)
        d: dict = {}
        for (a, b), v in self.terms:
            key_a, key_b = a, b
            if gq is not None:
                if gq.is_zero() and a < 0:
                    raise ZeroSubstitution("gamma=0 hits a gamma pole")
                v = v * gq ** a
                key_a = 0
            if wq is not None:
                v = v * wq ** b
                key_b = 0
            if v.is_zero():
                continue
            k = (key_a, key_b)
            s = d.get(k, QZERO) + v
            if s.is_zero():
                d.pop(k, None)
            else:
                d[k] = s
        return Coefficient(_canon_terms(d))

    def eval(self, gamma: GaussianLike, omega: GaussianLike) -> GaussianRational:
        return self.substitute(gamma, omega).scalar_value()

    def gamma_limit(self) -> "Coefficient":
        """Drop every g^a term with a > 0; error on a < 0 (pole at g=0)."""
        d: dict = {}
        for (a, b), v in self.terms:
            if a < 0:
                raise SingularLimit(f"gamma -> 0 limit of ({self}) does not exist")
            if a == 0:
                d[(0, b)] = v
        return Coefficient(_canon_terms(d))

    # -- normalization helpers -----------------------------------------------
    def rational_content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer parts."""
        nums: list[int] = []
        dens: list[int] = []
        for _, v in self.terms:
            for f in (v.re, v.im):
                if f:
                    nums.append(abs(f.numerator))
                    dens.append(f.denominator)
        if not nums:
            return Fraction(1)
        n = 0
        for x in nums:
            n = gcd(n, x)
        d = 1
        for x in dens:
            d = d * x // gcd(d, x)
        return Fraction(n, d)

    def leading(self) -> tuple:
        """(key, value) of the lexicographically largest (g, w) term."""
        if not self.terms:
            raise ValueError("zero coefficient has no leading term")
        return self.terms[-1]

    # -- text -------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for (a, b), v in reversed(self.terms):
            s = f"({v})"
            if a:
                s += f"*g^{a}"
            if b:
                s += f"*w^{b}"
            chunks.append(s)
        return " + ".join(chunks)

    _TERM_RX = re.compile(
        r"^\(([^()]*)\)(?:\*g\^(-?\d+))?(?:\*w\^(\d+))?$"
    )

    @staticmethod
    def parse(text: str) -> "Coefficient":
        s = text.strip()
        if s == "0":
            return ZERO
        d: dict = {}
        for chunk in s.split(" + "):
            m = Coefficient._TERM_RX.match(chunk.strip())
            if not m:
                raise ValueError(f"bad coefficient term: {chunk!r}")
            q = GaussianRational.parse(m.group(1))
            a = int(m.group(2)) if m.group(2) else 0
            b = int(m.group(3)) if m.group(3) else 0
            k = (a, b)
            d[k] = d.get(k, QZERO) + q
        return Coefficient(_canon_terms(d))


CoefficientLike = Union[Coefficient, GaussianRational, int, Fraction, tuple]

ZERO = Coefficient()
ONE = Coefficient.of(1)
I = Coefficient.of(QI)
GAMMA = Coefficient.monomial(QONE, 1, 0)
GAMMA_INV = Coefficient.monomial(QONE, -1, 0)
OMEGA = Coefficient.monomial(QONE, 0, 1)


def coeff_eval(c: Coefficient, gamma_value: GaussianLike, omega_value: GaussianLike) -> GaussianRational:
    """Exact substitution of both parameters; errors on gamma=0 at a pole."""
    return c.eval(gamma_value, omega_value)


def coeff_gamma_limit(c: Coefficient) -> Coefficient:
    """gamma -> 0 limit; raises :class:`SingularLimit` on a pole."""
    return c.gamma_limit()
