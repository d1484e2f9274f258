"""Exact scalars in Q and in real quadratic fields Q(sqrt(d)).

An exact scalar is stored as (p + q*sqrt(d)) / r with integers p, q, r and
a squarefree radicand d.  Canonical form: r > 0, gcd(p, q, r) = 1, d
squarefree, and q = 0 if and only if d = 0.  Rationals therefore always
have d = 0 and compare equal regardless of how they were produced.

Mixed-radicand sums (sqrt(2) + sqrt(3)) are refused rather than modelled:
no construction in this package needs a field tower.  A float fallback
mode exists for matrices whose levels are only known numerically; any
arithmetic touching a float scalar yields a float scalar.

Tolerances used across the package are defined once, here.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

# Absolute tolerance for float-mode verification (Gram residuals, radius).
VERIFY_TOL = 1e-9
# Tolerance for root refinement and float boundary comparisons.
REFINE_TOL = 1e-12

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class IncompatibleRadicands(ArithmeticError):
    """Raised when exact arithmetic would mix sqrt(d1) and sqrt(d2)."""


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n >= 0 as s*s*d with d squarefree; return (s, d)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n in (0, 1):
        return (1, n)
    s, d = 1, 1
    m = n
    for p in _SMALL_PRIMES:
        while m % (p * p) == 0:
            m //= p * p
            s *= p
        if m % p == 0:
            m //= p
            d *= p
    f = 49
    while f * f <= m:
        while m % (f * f) == 0:
            m //= f * f
            s *= f
        if m % f == 0:
            m //= f
            d *= f
        f += 2
    # remaining m is 1 or a prime
    return (s, d * m)


class Scalar:
    """A number that is either exact ((p + q*sqrt(d))/r) or a float.

    Exact scalars support field operations as long as radicands agree;
    floats poison every operation they take part in.
    """

    __slots__ = ("p", "q", "r", "d", "f")

    def __init__(self, p: int, q: int = 0, d: int = 0, r: int = 1):
        if r == 0:
            raise ZeroDivisionError("zero denominator")
        if d < 0:
            raise ValueError("negative radicand")
        if d == 0 or q == 0:
            q, d = 0, 0
        else:
            s, d = squarefree_decompose(d)
            q *= s
            if d == 1:
                p, q, d = p + q, 0, 0
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(math.gcd(abs(p), abs(q)), r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        if p == 0 and q == 0:
            r, d = 1, 0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "f", None)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_float(cls, x: float) -> "Scalar":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "p", 0)
        object.__setattr__(obj, "q", 0)
        object.__setattr__(obj, "d", 0)
        object.__setattr__(obj, "r", 1)
        object.__setattr__(obj, "f", float(x))
        return obj

    @classmethod
    def from_fraction(cls, fr: Fraction) -> "Scalar":
        return cls(fr.numerator, 0, 0, fr.denominator)

    @classmethod
    def sqrt_fraction(cls, fr) -> "Scalar":
        """Exact square root of a non-negative rational."""
        fr = Fraction(fr)
        if fr < 0:
            raise ValueError("negative radicand")
        # sqrt(a/b) = sqrt(a*b)/b
        s, d = squarefree_decompose(fr.numerator * fr.denominator)
        return cls(0, s, d, fr.denominator)

    # -- predicates --------------------------------------------------------

    @property
    def is_float(self) -> bool:
        return self.f is not None

    @property
    def is_rational(self) -> bool:
        return self.f is None and self.q == 0

    def is_zero(self) -> bool:
        if self.is_float:
            return self.f == 0.0
        return self.p == 0 and self.q == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not an exact rational: %r" % (self,))
        return Fraction(self.p, self.r)

    def to_float(self) -> float:
        if self.is_float:
            return self.f
        return (self.p + self.q * math.sqrt(self.d)) / self.r

    def sign(self) -> int:
        """Exact sign (-1, 0, 1); floats fall back to IEEE comparison."""
        if self.is_float:
            return (self.f > 0) - (self.f < 0)
        p, q = self.p, self.q
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return 1 if q > 0 else -1
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        # opposite signs: compare p^2 against q^2 d
        t = p * p - q * q * self.d
        big = (t > 0) - (t < 0)
        return big if p > 0 else -big

    def abs_le_one(self) -> bool:
        """Whether |x| <= 1, exactly when possible."""
        if self.is_float:
            return abs(self.f) <= 1.0 + REFINE_TOL
        return (_ONE - self).sign() >= 0 and (_ONE + self).sign() >= 0

    def conjugate(self) -> "Scalar":
        """Galois conjugate: sqrt(d) -> -sqrt(d).  Floats are unchanged."""
        if self.is_float:
            return self
        return Scalar(self.p, -self.q, self.d, self.r)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, int):
            return Scalar(x)
        if isinstance(x, Fraction):
            return Scalar.from_fraction(x)
        if isinstance(x, float):
            return Scalar.from_float(x)
        return NotImplemented

    def _common_radicand(self, other: "Scalar") -> int:
        if self.q == 0:
            return other.d
        if other.q == 0:
            return self.d
        if self.d != other.d:
            raise IncompatibleRadicands(
                "sqrt(%d) and sqrt(%d) do not mix" % (self.d, other.d)
            )
        return self.d

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_float or other.is_float:
            return Scalar.from_float(self.to_float() + other.to_float())
        d = self._common_radicand(other)
        return Scalar(
            self.p * other.r + other.p * self.r,
            self.q * other.r + other.q * self.r,
            d,
            self.r * other.r,
        )

    __radd__ = __add__

    def __neg__(self):
        if self.is_float:
            return Scalar.from_float(-self.f)
        return Scalar(-self.p, -self.q, self.d, self.r)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_float or other.is_float:
            return Scalar.from_float(self.to_float() * other.to_float())
        d = self._common_radicand(other)
        p = self.p * other.p + self.q * other.q * d
        q = self.p * other.q + self.q * other.p
        return Scalar(p, q, d, self.r * other.r)

    __rmul__ = __mul__

    def _inverse(self) -> "Scalar":
        if self.is_float:
            return Scalar.from_float(1.0 / self.f)
        if self.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        # 1/((p+q sqrt d)/r) = r (p - q sqrt d) / (p^2 - q^2 d)
        norm = self.p * self.p - self.q * self.q * self.d
        return Scalar(self.p * self.r, -self.q * self.r, self.d, norm)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_float or self.is_float:
            return Scalar.from_float(self.to_float() / other.to_float())
        return self * other._inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self._inverse()

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- comparison and hashing -------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_float or other.is_float:
            return self.to_float() == other.to_float()
        return (self.p, self.q, self.d, self.r) == (
            other.p,
            other.q,
            other.d,
            other.r,
        )

    def __hash__(self):
        if self.is_float:
            return hash(self.f)
        if self.q == 0:
            # match hash(Fraction) so rational scalars hash like numbers
            return hash(Fraction(self.p, self.r))
        return hash((self.p, self.q, self.d, self.r))

    def _cmp_sign(self, other) -> int:
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError("cannot compare Scalar with that type")
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp_sign(other) < 0

    def __le__(self, other):
        return self._cmp_sign(other) <= 0

    def __gt__(self, other):
        return self._cmp_sign(other) > 0

    def __ge__(self, other):
        return self._cmp_sign(other) >= 0

    def __repr__(self):
        return "Scalar(%s)" % format_scalar(self)

    def __str__(self):
        return format_scalar(self)


_ONE = Scalar(1)
ZERO = Scalar(0)
ONE = _ONE


# -- text grammar -----------------------------------------------------------
#
#   INT   := ['-'] digits
#   RAT   := INT '/' digits
#   QUAD  := '(' INT ('+'|'-') digits '*sqrt(' digits ')' ')/' digits
#   FLOAT := 'f' decimal-literal

_QUAD_RE = re.compile(
    r"^\((-?\d+)([+-])(\d+)\*sqrt\((\d+)\)\)/(\d+)$"
)
_RAT_RE = re.compile(r"^(-?\d+)/(\d+)$")
_INT_RE = re.compile(r"^-?\d+$")


def format_scalar(x: Scalar) -> str:
    """Render a scalar in the one-token text grammar used by matrix files."""
    if x.is_float:
        return "f" + repr(x.f)
    if x.q == 0:
        return str(x.p) if x.r == 1 else "%d/%d" % (x.p, x.r)
    sgn = "+" if x.q > 0 else "-"
    return "(%d%s%d*sqrt(%d))/%d" % (x.p, sgn, abs(x.q), x.d, x.r)


def parse_scalar(text: str) -> Scalar:
    """Inverse of format_scalar.  Raises ValueError on malformed tokens."""
    text = text.strip()
    if text.startswith("f"):
        return Scalar.from_float(float(text[1:]))
    m = _QUAD_RE.match(text)
    if m:
        p, sgn, q, d, r = m.groups()
        qv = int(q) if sgn == "+" else -int(q)
        return Scalar(int(p), qv, int(d), int(r))
    m = _RAT_RE.match(text)
    if m:
        return Scalar(int(m.group(1)), 0, 0, int(m.group(2)))
    if _INT_RE.match(text):
        return Scalar(int(text))
    raise ValueError("malformed scalar token: %r" % text)


# -- polynomials and quadratics ----------------------------------------------


class ScalarPoly:
    """Polynomial with Scalar coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Scalar._coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, x) -> Scalar:
        x = Scalar._coerce(x)
        acc = Scalar(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, ScalarPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        return "ScalarPoly(%s)" % (list(map(str, self.coeffs)),)


def solve_quadratic(c0, c1, c2) -> list[Scalar]:
    """Real roots of c0 + c1*x + c2*x^2 = 0, exact, ascending.

    Coefficients must be exact rationals.  Returns [] when there is no
    real root (or the equation is a nonzero constant); raises ValueError
    when all three coefficients vanish.
    """
    a0, a1, a2 = (Scalar._coerce(c).as_fraction() for c in (c0, c1, c2))
    if a0 == a1 == a2 == 0:
        raise ValueError("all coefficients are zero")
    if a2 == 0:
        if a1 == 0:
            return []
        return [Scalar.from_fraction(-a0 / a1)]
    disc = a1 * a1 - 4 * a0 * a2
    if disc < 0:
        return []
    root = Scalar.sqrt_fraction(disc)
    two_a2 = Scalar.from_fraction(2 * a2)
    lo = (-Scalar.from_fraction(a1) - root) / two_a2
    hi = (-Scalar.from_fraction(a1) + root) / two_a2
    if lo == hi:
        return [lo]
    return [lo, hi] if lo < hi else [hi, lo]
