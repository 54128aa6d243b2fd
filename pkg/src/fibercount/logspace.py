"""Counts stored as natural logarithms.

Fiber sizes for graphs with a few thousand vertices are of order
``e^40000``, far outside floating range, so every count in the package is
carried as a :class:`LogCount`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

LN10 = math.log(10.0)


@dataclass(frozen=True)
class LogCount:
    """A nonnegative count held as its natural log.

    ``is_zero`` marks the count 0; ``ln_value`` is then meaningless and
    ignored by every operation.
    """

    ln_value: float = 0.0
    is_zero: bool = False

    @classmethod
    def zero(cls) -> LogCount:
        return cls(0.0, True)

    @classmethod
    def one(cls) -> LogCount:
        return cls(0.0, False)

    @classmethod
    def from_int(cls, value: int) -> LogCount:
        if value < 0:
            raise ValueError("counts are nonnegative")
        if value == 0:
            return cls.zero()
        return cls(math.log(value))

    @property
    def log10(self) -> float:
        if self.is_zero:
            return -math.inf
        return self.ln_value / LN10

    def __mul__(self, other: LogCount) -> LogCount:
        return log_mul(self, other)

    def __truediv__(self, other: LogCount) -> LogCount:
        if other.is_zero:
            raise ZeroDivisionError("division by a zero count")
        if self.is_zero:
            return self
        return LogCount(self.ln_value - other.ln_value)

    def to_float(self) -> float:
        """Plain value; overflows to ``inf`` for huge counts."""
        if self.is_zero:
            return 0.0
        try:
            return math.exp(self.ln_value)
        except OverflowError:
            return math.inf

    def scientific(self, digits: int = 3) -> str:
        """Render as ``m.mme+X`` even when the value overflows a float."""
        if self.is_zero:
            return "0"
        l10 = self.log10
        exponent = math.floor(l10)
        mantissa = 10 ** (l10 - exponent)
        if round(mantissa, digits - 1) >= 10:
            mantissa /= 10
            exponent += 1
        return f"{mantissa:.{digits - 1}f}e{exponent}"


def log_mul(a: LogCount, b: LogCount) -> LogCount:
    if a.is_zero or b.is_zero:
        return LogCount.zero()
    return LogCount(a.ln_value + b.ln_value)


def log_prod(factors: Iterable[LogCount]) -> LogCount:
    """Product of many counts, summing logs with ``math.fsum``."""
    terms = []
    for f in factors:
        if f.is_zero:
            return LogCount.zero()
        terms.append(f.ln_value)
    return LogCount(math.fsum(terms))


def log_factorial(n: int) -> LogCount:
    if n < 0:
        raise ValueError("factorial of a negative number")
    return LogCount(math.lgamma(n + 1))


def log_binomial(n: int, k: int) -> LogCount:
    """``ln C(n, k)``; the zero count when ``k`` lies outside ``[0, n]``."""
    if k < 0 or k > n or n < 0:
        return LogCount.zero()
    if k == 0 or k == n:
        return LogCount.one()
    # summing the two small terms first keeps C(n,k) and C(n,n-k) bit-identical
    return LogCount(math.lgamma(n + 1) - (math.lgamma(k + 1) + math.lgamma(n - k + 1)))


def ln_binomial(n: int, k: int) -> float:
    """Float shortcut for ``log_binomial`` that raises on a zero count."""
    c = log_binomial(n, k)
    if c.is_zero:
        raise ValueError(f"C({n}, {k}) is zero")
    return c.ln_value


def log_sum_exp(a: LogCount, b: LogCount) -> LogCount:
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    hi, lo = max(a.ln_value, b.ln_value), min(a.ln_value, b.ln_value)
    return LogCount(hi + math.log1p(math.exp(lo - hi)))
