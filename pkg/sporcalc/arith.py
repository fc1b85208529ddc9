# -*- coding: utf-8 -*-

from fractions import Fraction
from functools import total_ordering
from typing import Optional


class ExtendedNat(object):
    """A value in [0, inf], with 1/inf = 0."""

    __slots__ = ("value",)

    def __init__(self, value: Optional[int]):
        if value is not None and value < 0:
            raise ValueError(f"ExtendedNat {value} is negative")
        self.value = value

    @classmethod
    def infinity(cls):
        return cls(None)

    @property
    def is_infinite(self):
        return self.value is None

    def reciprocal(self):
        if self.value is None:
            return Fraction(0)
        if self.value == 0:
            raise ZeroDivisionError("1/0 is not an ExtendedNat reciprocal")
        return Fraction(1, self.value)

    def __eq__(self, other):
        if isinstance(other, ExtendedNat):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def to_json(self):
        return "inf" if self.value is None else self.value

    def __str__(self):
        return "∞" if self.value is None else str(self.value)

    def __repr__(self):
        return f"<ExtendedNat {self}>"


@total_ordering
class ExtRational(object):
    """An exact rational, or +inf / -inf."""

    __slots__ = ("value", "infinity")

    def __init__(self, value=0, infinity=0):
        self.value = Fraction(value) if infinity == 0 else None
        self.infinity = infinity

    @classmethod
    def coerce(cls, other):
        if isinstance(other, ExtRational):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other)
        return None

    @property
    def is_finite(self):
        return self.infinity == 0

    def __add__(self, other):
        other = self.coerce(other)
        if other is None:
            return NotImplemented
        if self.is_finite and other.is_finite:
            return ExtRational(self.value + other.value)
        if self.infinity and other.infinity and self.infinity != other.infinity:
            raise ArithmeticError("inf - inf is undefined")
        return ExtRational(infinity=self.infinity or other.infinity)

    __radd__ = __add__

    def __neg__(self):
        if self.is_finite:
            return ExtRational(-self.value)
        return ExtRational(infinity=-self.infinity)

    def __sub__(self, other):
        other = self.coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if self.is_finite:
            return ExtRational(self.value * other)
        if other == 0:
            raise ArithmeticError("0 * inf is undefined")
        return ExtRational(infinity=self.infinity * (1 if other > 0 else -1))

    __rmul__ = __mul__

    def _rank(self):
        return (self.infinity, self.value if self.is_finite else 0)

    def __eq__(self, other):
        other = self.coerce(other)
        if other is None:
            return NotImplemented
        return self._rank() == other._rank()

    def __lt__(self, other):
        other = self.coerce(other)
        if other is None:
            return NotImplemented
        return self._rank() < other._rank()

    def __hash__(self):
        return hash(self._rank())

    def to_json(self):
        if self.infinity:
            return "inf" if self.infinity > 0 else "-inf"
        return str(self.value)

    def to_number(self):
        """Integers as int, everything else as its JSON string."""
        if self.is_finite and self.value.denominator == 1:
            return self.value.numerator
        return self.to_json()

    def __str__(self):
        return self.to_json()

    def __repr__(self):
        return f"<ExtRational {self}>"


def ext_max(a, b):
    return a if a >= b else b
