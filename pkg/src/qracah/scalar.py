"""Scalar backends and the deformation base q = p**2.

All formulas in this package are generic over three scalar backends:

* ``exact``   -- arbitrary-precision rationals (:class:`fractions.Fraction`),
* ``float``   -- double-precision reals,
* ``complex`` -- double-precision complex numbers.

The deformation parameter is stored as a rational ``p`` with ``q = p**2``,
so every half-integer power ``q**(m/2) = p**m`` is an exact rational in the
exact backend.  Parameters that enter exponents (``s``, ``t``, ``u``, ``v``)
must be half-integers in the exact backend; arbitrary reals (or a complex
``v``) are allowed in the floating backends.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .errors import ExactnessError

MODES = ("exact", "float", "complex")


class HalfInt:
    """An element of (1/2)Z, stored as twice its value.

    Closed under addition, subtraction, negation and multiplication by
    integers; integer-valued iff ``twice`` is even.
    """

    __slots__ = ("twice",)

    def __init__(self, value):
        if isinstance(value, HalfInt):
            self.twice = value.twice
        else:
            fr = Fraction(value)
            if fr.denominator > 2:
                raise ExactnessError(f"{value!r} is not a half-integer")
            self.twice = fr.numerator * (2 // fr.denominator)

    @classmethod
    def from_twice(cls, twice: int) -> "HalfInt":
        h = cls.__new__(cls)
        h.twice = int(twice)
        return h

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __add__(self, other):
        if isinstance(other, HalfInt):
            return HalfInt.from_twice(self.twice + other.twice)
        if isinstance(other, int):
            return HalfInt.from_twice(self.twice + 2 * other)
        return self.as_fraction() + other

    __radd__ = __add__

    def __neg__(self):
        return HalfInt.from_twice(-self.twice)

    def __sub__(self, other):
        return self + (-other if isinstance(other, (HalfInt, int)) else -1 * other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return HalfInt.from_twice(self.twice * other)
        return self.as_fraction() * other

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, HalfInt):
            return self.twice == other.twice
        return self.as_fraction() == other

    def __hash__(self):
        return hash(self.as_fraction())

    def __lt__(self, other):
        return self.as_fraction() < (other.as_fraction() if isinstance(other, HalfInt) else other)

    def __le__(self, other):
        return self.as_fraction() <= (other.as_fraction() if isinstance(other, HalfInt) else other)

    def __float__(self):
        return self.twice / 2.0

    def __repr__(self):
        if self.twice % 2 == 0:
            return f"HalfInt({self.twice // 2})"
        return f"HalfInt({self.twice}/2)"


def as_exponent(x):
    """Normalize a parameter for use in an exponent of q.

    HalfInt, int and Fraction become Fraction; float/complex pass through
    (allowed only in the floating backends).
    """
    if isinstance(x, HalfInt):
        return x.as_fraction()
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return x


class QBase:
    """The base q = p**2 with a fixed scalar backend.

    ``p`` must be a positive rational different from 1 (so q > 0, q != 1).
    In the exact backend every half-integer power of q is the exact rational
    p**m; the floating backends evaluate powers with math/cmath.
    """

    __slots__ = ("p", "mode", "_q", "_pf")

    def __init__(self, p, mode: str = "exact"):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        if isinstance(p, float) and mode == "exact":
            raise ExactnessError("exact mode requires a rational p")
        self.p = Fraction(p) if not isinstance(p, float) else p
        pf = float(self.p)
        if not pf > 0 or pf == 1.0:
            raise ValueError("p must be positive and different from 1")
        self._pf = pf
        self._q = self.p * self.p if mode == "exact" else pf * pf

    # -- scalar constructors -------------------------------------------------

    def scalar(self, x):
        """Cast an exact number into this backend's scalar type."""
        if self.mode == "exact":
            if isinstance(x, float):
                raise ExactnessError(f"cannot use float {x!r} in exact mode")
            return Fraction(x) if not isinstance(x, Fraction) else x
        if self.mode == "complex":
            return complex(x)
        return float(x)

    def one(self):
        return self.scalar(1)

    def zero(self):
        return self.scalar(0)

    @property
    def q(self):
        return self._q

    @property
    def is_exact(self) -> bool:
        return self.mode == "exact"

    # -- powers ---------------------------------------------------------------

    def qpow(self, e):
        """q**e.  Exact iff 2e is an integer (then q**e = p**(2e))."""
        e = as_exponent(e)
        if self.mode == "exact":
            te = 2 * e
            if not isinstance(te, Fraction) or te.denominator != 1:
                raise ExactnessError(f"exponent {e} is not a half-integer")
            return self.p ** int(te)
        logq = 2.0 * math.log(self._pf)
        if isinstance(e, complex):
            if self.mode != "complex":
                raise ExactnessError("complex exponent requires the complex backend")
            return cmath.exp(e * logq)
        val = math.exp(float(e) * logq)
        return complex(val) if self.mode == "complex" else val

    def inverse(self) -> "QBase":
        """The base with p replaced by 1/p (hence q by 1/q)."""
        return QBase(1 / self.p, self.mode)

    # -- backend-dependent scalar operations ----------------------------------

    def conj(self, z):
        """Complex conjugation; the identity on exact and real scalars."""
        if self.mode == "complex":
            return z.conjugate() if isinstance(z, complex) else z
        return z

    # -- the two q-number brackets --------------------------------------------

    def bracket(self, t):
        """[t]_q = (q**t - q**-t) / (q - 1/q)."""
        return (self.qpow(t) - self.qpow(-1 * as_exponent(t))) / (self._q - 1 / self._q)

    def brace(self, t):
        """{t}_q = (q**t + q**-t) / (q + 1/q)."""
        return (self.qpow(t) + self.qpow(-1 * as_exponent(t))) / (self._q + 1 / self._q)

    @property
    def bracket_brace_ratio(self):
        """(q - 1/q) / (q + 1/q), the scale relating the two brackets."""
        return (self._q - 1 / self._q) / (self._q + 1 / self._q)

    def __eq__(self, other):
        return isinstance(other, QBase) and self.p == other.p and self.mode == other.mode

    def __hash__(self):
        return hash((self.p, self.mode))

    def __repr__(self):
        return f"QBase(p={self.p}, mode={self.mode!r})"


def qpow(qb: QBase, e):
    """q**e in the backend of ``qb``."""
    return qb.qpow(e)


def qbracket(qb: QBase, t):
    """The symmetric q-number [t]_q = (q**t - q**-t)/(q - 1/q)."""
    return qb.bracket(t)


def qbrace(qb: QBase, t):
    """The companion q-number {t}_q = (q**t + q**-t)/(q + 1/q)."""
    return qb.brace(t)
