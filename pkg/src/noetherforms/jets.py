"""First-order jets ``a + b*t`` with ``t*t = 0`` over Scalars.

Jets are a drop-in coefficient type for :class:`~noetherforms.forms.DForm`
and :class:`~noetherforms.geometry.FrameGeometry`: evaluating anything over
jets and reading off the ``t`` part gives its exact directional derivative.
This is the independent linearization route used to check the variational
machinery.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero
from .scalars import Scalar


class Jet:
    __slots__ = ("value", "slope")

    def __init__(self, value: Scalar, slope: Scalar):
        self.value = value
        self.slope = slope

    def _other(self, other):
        if type(other) is Jet:
            return other
        if isinstance(other, Scalar):
            return Jet(other, other.ring.zero)
        if isinstance(other, (int, Fraction)):
            r = self.value.ring
            return Jet(r.const(other), r.zero)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Jet(self.value + o.value, self.slope + o.slope)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.value, -self.slope)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Jet(self.value - o.value, self.slope - o.slope)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return Jet(self.value * other, self.slope * other)
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Jet(self.value * o.value, self.value * o.slope + self.slope * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.value.is_zero():
            raise DivisionByZero("jet with vanishing value part is not invertible")
        inv = o.value.inverse()
        return Jet(self.value * inv, (self.slope * o.value - self.value * o.slope) * inv * inv)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o / self

    def diff(self, mu: int) -> "Jet":
        return Jet(self.value.diff(mu), self.slope.diff(mu))

    def is_zero(self) -> bool:
        return self.value.is_zero() and self.slope.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def invertible(self) -> bool:
        return not self.value.is_zero()

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.value == o.value and self.slope == o.slope

    __hash__ = None

    def monomial_count(self) -> int:
        return self.value.monomial_count() + self.slope.monomial_count()

    def __repr__(self):
        return f"Jet({self.value}, {self.slope})"


def jet(value: Scalar, slope: Scalar | None = None) -> Jet:
    return Jet(value, value.ring.zero if slope is None else slope)
