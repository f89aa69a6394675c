"""Precision contexts and the high-precision real scalar type.

Every numeric quantity in the package is an :class:`HPReal` bound to a
:class:`PrecisionContext`. A context owns a private mpmath context whose
working precision is ``digits + guard`` decimal digits; results are only
rounded down to ``digits`` when rendered as text. Mixing values from two
different contexts raises ``ContextMismatchError`` instead of silently
computing at whichever precision happens to win.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

import mpmath
from mpmath.ctx_mp import MPContext

from .errors import ContextMismatchError, DomainError

Real = Union["HPReal", int, float, str, Fraction]


class PrecisionContext:
    """Working-precision policy: output digits, guard digits, loop caps, tolerance.

    digits    -- requested output decimal digits (>= 10)
    guard     -- extra working digits used internally (>= 5, default 10)
    max_terms -- hard cap on any single summation loop (default 10**8)
    tol       -- target absolute tolerance (default 10**-digits)
    """

    __slots__ = ("digits", "guard", "max_terms", "_mp", "tol", "_tol_repr")

    def __init__(self, digits: int = 30, guard: int = 10,
                 max_terms: int = 10 ** 8, tol=None):
        if digits < 10:
            raise DomainError(f"digits must be >= 10, got {digits}")
        if guard < 5:
            raise DomainError(f"guard must be >= 5, got {guard}")
        if max_terms < 10 ** 3:
            raise DomainError(f"max_terms must be >= 10^3, got {max_terms}")
        self.digits = int(digits)
        self.guard = int(guard)
        self.max_terms = int(max_terms)
        mp = MPContext()
        mp.dps = self.digits + self.guard
        self._mp = mp
        if tol is None:
            self.tol = mp.mpf(10) ** (-self.digits)
            self._tol_repr = f"1e-{self.digits}"
        else:
            self.tol = mp.mpf(tol if not isinstance(tol, Fraction)
                              else tol.numerator) / (1 if not isinstance(tol, Fraction)
                                                     else tol.denominator)
            if self.tol <= 0:
                raise DomainError(f"tol must be positive, got {tol}")
            self._tol_repr = str(tol)

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard

    @property
    def mp(self) -> MPContext:
        """The private mpmath context (working precision)."""
        return self._mp

    def real(self, x: Real) -> "HPReal":
        """Coerce a number into this context.

        Strings are parsed as exact decimals before rounding; floats are
        taken at their exact binary value.
        """
        if isinstance(x, HPReal):
            if x.ctx is not self:
                raise ContextMismatchError("value belongs to a different PrecisionContext")
            return x
        mp = self._mp
        if isinstance(x, Fraction):
            v = mp.mpf(x.numerator) / x.denominator
        else:
            v = mp.mpf(x)
        return HPReal(v, self)

    def zero(self) -> "HPReal":
        return HPReal(self._mp.mpf(0), self)

    def one(self) -> "HPReal":
        return HPReal(self._mp.mpf(1), self)

    def __repr__(self):
        return (f"PrecisionContext(digits={self.digits}, guard={self.guard}, "
                f"max_terms={self.max_terms}, tol={self._tol_repr})")


def _decimal_string(mp, x, sig: int) -> str:
    """Fixed-point decimal rendering with `sig` significant digits.

    Plain decimal notation for |x| < 10**6 (no exponent form, as required
    for diffable reports); falls back to mpmath's string form above that.
    """
    if mp.isnan(x) or mp.isinf(x):
        return str(x)
    if x == 0:
        return "0." + "0" * (sig - 1)
    sign, man, exp, _ = x._mpf_
    # exact binary rational man * 2**exp
    num, den = man, 1
    if exp >= 0:
        num = man << exp
    else:
        den = 1 << (-exp)
    # decimal magnitude d10: 10^d10 <= |x| < 10^(d10+1)
    d10 = int(mp.floor(mp.log10(abs(x))))
    # round-half-even integer of |x| * 10^(sig-1-d10)
    shift = sig - 1 - d10
    if shift >= 0:
        num *= 10 ** shift
    else:
        den *= 10 ** (-shift)
    q, r = divmod(num, den)
    if 2 * r > den or (2 * r == den and q % 2 == 1):
        q += 1
    digits = str(q)
    if len(digits) != sig:  # rounding bumped the magnitude (e.g. 9.99 -> 10.0)
        d10 += len(digits) - sig
        digits = digits[:sig]
    if d10 >= 6:
        return mp.nstr(x, sig)
    body: str
    if d10 >= 0:
        if d10 + 1 >= len(digits):
            body = digits + "0" * (d10 + 1 - len(digits))
        else:
            body = digits[:d10 + 1] + "." + digits[d10 + 1:]
    else:
        body = "0." + "0" * (-d10 - 1) + digits
    return ("-" if sign else "") + body


class HPReal:
    """An arbitrary-precision real tied to a PrecisionContext.

    Arithmetic is correct to within one unit in the last working digit
    (mpmath round-to-nearest at the context's working precision).
    """

    __slots__ = ("_v", "ctx")

    def __init__(self, value, ctx: PrecisionContext):
        self._v = value
        self.ctx = ctx

    @property
    def mpf(self):
        """The underlying mpmath value at working precision."""
        return self._v

    def _coerce(self, other) -> "HPReal":
        if isinstance(other, HPReal):
            if other.ctx is not self.ctx:
                raise ContextMismatchError(
                    "cannot combine HPReal values from different contexts")
            return other
        return self.ctx.real(other)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        return HPReal(self._v + self._coerce(other)._v, self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        return HPReal(self._v - self._coerce(other)._v, self.ctx)

    def __rsub__(self, other):
        return HPReal(self._coerce(other)._v - self._v, self.ctx)

    def __mul__(self, other):
        return HPReal(self._v * self._coerce(other)._v, self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return HPReal(self._v / self._coerce(other)._v, self.ctx)

    def __rtruediv__(self, other):
        return HPReal(self._coerce(other)._v / self._v, self.ctx)

    def __pow__(self, other):
        return HPReal(self.ctx.mp.power(self._v, self._coerce(other)._v), self.ctx)

    def __rpow__(self, other):
        return HPReal(self.ctx.mp.power(self._coerce(other)._v, self._v), self.ctx)

    def __neg__(self):
        return HPReal(-self._v, self.ctx)

    def __abs__(self):
        return HPReal(abs(self._v), self.ctx)

    def ln(self) -> "HPReal":
        if self._v <= 0:
            raise DomainError("ln requires a positive argument")
        return HPReal(self.ctx.mp.ln(self._v), self.ctx)

    def exp(self) -> "HPReal":
        return HPReal(self.ctx.mp.exp(self._v), self.ctx)

    def sqrt(self) -> "HPReal":
        if self._v < 0:
            raise DomainError("sqrt requires a non-negative argument")
        return HPReal(self.ctx.mp.sqrt(self._v), self.ctx)

    # -- comparisons --------------------------------------------------------
    def _cmp_value(self, other):
        return self._coerce(other)._v

    def __eq__(self, other):
        try:
            return self._v == self._cmp_value(other)
        except ContextMismatchError:
            raise
        except (TypeError, ValueError):
            return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __lt__(self, other):
        return self._v < self._cmp_value(other)

    def __le__(self, other):
        return self._v <= self._cmp_value(other)

    def __gt__(self, other):
        return self._v > self._cmp_value(other)

    def __ge__(self, other):
        return self._v >= self._cmp_value(other)

    def __hash__(self):
        return hash((self._v, id(self.ctx)))

    # -- conversions --------------------------------------------------------
    def __float__(self):
        return float(self._v)

    def decimal(self, digits: int | None = None) -> str:
        """Decimal string rounded to the context's output digits."""
        return _decimal_string(self.ctx.mp, self._v, digits or self.ctx.digits)

    def __repr__(self):
        return f"HPReal({self.decimal()})"

    def __str__(self):
        return self.decimal()
