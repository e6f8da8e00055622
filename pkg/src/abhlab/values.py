"""Exact scalar arithmetic in a fixed real quadratic field Q(sqrt(D)).

Every quantity the library orders (weights, thresholds, valuation values)
lives in one such field, so comparisons are decided by exact sign analysis
on rationals.  No floating point is used anywhere in this module.

A value is stored as ``q0 + q1*sqrt(D)`` with ``q0, q1`` rational and ``D``
a square-free positive integer; ``D = 1`` encodes the plain rationals.
The sign of ``q0 + q1*sqrt(D)`` is decided by case analysis on the signs of
``q0`` and ``q1``, falling back to the comparison of ``q0**2`` with
``q1**2 * D`` when they disagree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


def _square_free(n: int) -> bool:
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ambient field Q(sqrt(D)); D = 1 means the rational field."""

    D: int

    def __post_init__(self):
        if not isinstance(self.D, int) or self.D < 1:
            raise ValueError(f"radicand must be a positive integer, got {self.D!r}")
        if not _square_free(self.D):
            raise ValueError(f"radicand must be square-free, got {self.D}")


_RAT = r"-?\d+(?:/\d+)?"
# Full grammar: rat | rat ("+"|"-") rat "*sqrt(" uint ")".  The bare form
# "1*sqrt(2)" (no leading rational) is accepted as a convenience shorthand.
_VALUE_RE = re.compile(rf"^({_RAT})(?:([+-])({_RAT})\*sqrt\((\d+)\))?$")
_SQRT_ONLY_RE = re.compile(rf"^({_RAT})\*sqrt\((\d+)\)$")


def _parse_rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {text!r}") from exc


@dataclass(frozen=True)
class Value:
    """An element q0 + q1*sqrt(D) of the field given by ``spec``.

    Canonical form is maintained at construction: Fractions are already in
    lowest terms with positive denominator, and when D = 1 the sqrt part is
    folded into the rational part so that equality is structural.
    """

    q0: Fraction
    q1: Fraction
    spec: FieldSpec

    def __post_init__(self):
        q0 = Fraction(self.q0)
        q1 = Fraction(self.q1)
        if self.spec.D == 1 and q1 != 0:
            q0, q1 = q0 + q1, Fraction(0)
        object.__setattr__(self, "q0", q0)
        object.__setattr__(self, "q1", q1)

    # -- construction ------------------------------------------------------

    @classmethod
    def of(cls, q, spec: FieldSpec) -> "Value":
        return cls(Fraction(q), Fraction(0), spec)

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Value":
        return cls.of(0, spec)

    @classmethod
    def parse(cls, text: str, spec: FieldSpec) -> "Value":
        s = re.sub(r"\s+", "", text)
        m = _VALUE_RE.match(s)
        if m is None:
            m2 = _SQRT_ONLY_RE.match(s)
            if m2 is None:
                raise ValueError(f"bad value literal {text!r}")
            q1 = _parse_rat(m2.group(1))
            d = int(m2.group(2))
            if d != spec.D:
                raise ValueError(f"sqrt({d}) does not live in Q(sqrt({spec.D}))")
            return cls(Fraction(0), q1, spec)
        q0 = _parse_rat(m.group(1))
        if m.group(2) is None:
            return cls(q0, Fraction(0), spec)
        q1 = _parse_rat(m.group(3))
        if m.group(2) == "-":
            q1 = -q1
        d = int(m.group(4))
        if d != spec.D:
            raise ValueError(f"sqrt({d}) does not live in Q(sqrt({spec.D}))")
        return cls(q0, q1, spec)

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        if self.q1 == 0:
            return str(self.q0)
        op = "+" if self.q1 > 0 else "-"
        return f"{self.q0}{op}{abs(self.q1)}*sqrt({self.spec.D})"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Value({self.render()!r})"

    # -- sign and order ----------------------------------------------------

    def sign(self) -> int:
        """Exact sign of q0 + q1*sqrt(D) as a real number."""
        q0, q1 = self.q0, self.q1
        if q1 == 0:
            return (q0 > 0) - (q0 < 0)
        if q0 == 0:
            return (q1 > 0) - (q1 < 0)
        if q0 > 0 and q1 > 0:
            return 1
        if q0 < 0 and q1 < 0:
            return -1
        # opposite signs: |q0| vs |q1|*sqrt(D), squared
        lhs = q0 * q0
        rhs = q1 * q1 * self.spec.D
        if q0 > 0:
            return (lhs > rhs) - (lhs < rhs)
        return (rhs > lhs) - (rhs < lhs)

    def is_zero(self) -> bool:
        return self.q0 == 0 and self.q1 == 0

    def _check(self, other: "Value") -> None:
        if not isinstance(other, Value):
            raise TypeError(f"expected Value, got {type(other).__name__}")
        if other.spec != self.spec:
            raise ValueError(
                f"mixed fields: sqrt({self.spec.D}) vs sqrt({other.spec.D})"
            )

    def __lt__(self, other: "Value") -> bool:
        self._check(other)
        return (self - other).sign() < 0

    def __le__(self, other: "Value") -> bool:
        self._check(other)
        return (self - other).sign() <= 0

    def __gt__(self, other: "Value") -> bool:
        self._check(other)
        return (self - other).sign() > 0

    def __ge__(self, other: "Value") -> bool:
        self._check(other)
        return (self - other).sign() >= 0

    # -- field arithmetic ----------------------------------------------------

    def __add__(self, other: "Value") -> "Value":
        self._check(other)
        return Value(self.q0 + other.q0, self.q1 + other.q1, self.spec)

    def __sub__(self, other: "Value") -> "Value":
        self._check(other)
        return Value(self.q0 - other.q0, self.q1 - other.q1, self.spec)

    def __neg__(self) -> "Value":
        return Value(-self.q0, -self.q1, self.spec)

    def __mul__(self, other: "Value") -> "Value":
        self._check(other)
        d = self.spec.D
        return Value(
            self.q0 * other.q0 + self.q1 * other.q1 * d,
            self.q0 * other.q1 + self.q1 * other.q0,
            self.spec,
        )

    def __truediv__(self, other: "Value") -> "Value":
        self._check(other)
        norm = other.q0 * other.q0 - other.q1 * other.q1 * other.spec.D
        if norm == 0:
            raise ZeroDivisionError("division by zero field element")
        conj = Value(other.q0, -other.q1, other.spec)
        num = self * conj
        return Value(num.q0 / norm, num.q1 / norm, self.spec)

    def scale(self, r) -> "Value":
        """Multiply by a plain rational (or int)."""
        r = Fraction(r)
        return Value(self.q0 * r, self.q1 * r, self.spec)


def value_parse(text: str, spec: FieldSpec) -> Value:
    return Value.parse(text, spec)


def value_cmp(a: Value, b: Value) -> int:
    """-1, 0 or 1 according to the exact real ordering of a and b."""
    a._check(b)
    return (a - b).sign()


def value_add(a: Value, b: Value) -> Value:
    return a + b


def value_neg(a: Value) -> Value:
    return -a


def value_scale(a: Value, r) -> Value:
    return a.scale(r)


def int_pair_sign(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d) for plain integers (hot-path variant)."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    lhs = a * a
    rhs = b * b * d
    if a > 0:
        return (lhs > rhs) - (lhs < rhs)
    return (rhs > lhs) - (rhs < lhs)


def ceil_ratio(m: Value, w: Value) -> int:
    """Least non-negative integer n with n*w >= m, by exact bisection.

    Used as the per-coordinate bounding box in ideal enumerations.  Requires
    w > 0; m <= 0 gives 0.
    """
    m._check(w)
    if w.sign() <= 0:
        raise ValueError(f"denominator weight must be positive, got {w}")
    if m.sign() <= 0:
        return 0
    hi = 1
    while w.scale(hi) < m:
        hi *= 2
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if w.scale(mid) < m:
            lo = mid + 1
        else:
            hi = mid
    return lo
