"""Exact rational functions of the chart coordinates ``x0 .. x(n-1)``.

A :class:`Scalar` is a quotient ``num/den`` of multivariate polynomials with
rational coefficients.  Polynomial arithmetic is delegated to FLINT
(``python-flint``); this module owns the fraction-field layer and the
canonical form:

* ``gcd(num, den) == 1``;
* ``den`` is monic under graded lexicographic order with ``x0 < x1 < ...``;
* a constant denominator is folded into the numerator, and a denominator of
  ``1`` is stored as ``None`` (the polynomial fast path).

Scalars are immutable.  Each dimension ``n`` has one :class:`ScalarRing`,
obtained from :func:`ring`.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache

import flint

from .errors import BadIndex, DimensionMismatch, DivisionByZero, ParseError

__all__ = ["Scalar", "ScalarRing", "ring", "to_fmpq"]


def to_fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, int):
        return flint.fmpq(c)
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def _fraction(c: flint.fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


@lru_cache(maxsize=None)
def ring(n: int) -> "ScalarRing":
    """The coefficient ring for an ``n``-dimensional chart (cached)."""
    if n < 1:
        raise DimensionMismatch(f"dimension must be positive, got {n}")
    return ScalarRing(n)


class ScalarRing:
    """Factory for Scalars in a fixed number of coordinates."""

    def __init__(self, n: int):
        self.n = n
        # FLINT variable k is x_(n-1-k); with deglex this orders x0 < x1 < ...
        self.ctx = flint.fmpq_mpoly_ctx.get(
            tuple(f"x{n - 1 - k}" for k in range(n)), "deglex"
        )
        self.zero = Scalar(self, self.ctx.from_dict({}), None)
        self.one = Scalar(self, self.ctx.from_dict({(0,) * n: 1}), None)
        self._gens = tuple(
            Scalar(self, self.ctx.gens()[n - 1 - i], None) for i in range(n)
        )

    def __repr__(self):
        return f"ScalarRing(n={self.n})"

    def __reduce__(self):
        return (ring, (self.n,))

    def var(self, i: int) -> "Scalar":
        if not 0 <= i < self.n:
            raise BadIndex(f"coordinate index {i} out of range for n={self.n}")
        return self._gens[i]

    @property
    def gens(self):
        return self._gens

    def const(self, c) -> "Scalar":
        c = to_fmpq(c)
        if c == 0:
            return self.zero
        return Scalar(self, self.ctx.from_dict({(0,) * self.n: c}), None)

    def coerce(self, x) -> "Scalar":
        if isinstance(x, Scalar):
            if x.ring is not self:
                raise DimensionMismatch(
                    f"Scalar over n={x.ring.n} used where n={self.n} expected"
                )
            return x
        return self.const(x)

    def monomial(self, exponents, coeff=1) -> "Scalar":
        """Build ``coeff * x0^e0 * x1^e1 ...`` from exponents in coordinate order."""
        if len(exponents) != self.n:
            raise DimensionMismatch("exponent vector length differs from n")
        if coeff == 0:
            return self.zero
        key = tuple(reversed(tuple(exponents)))
        return Scalar(self, self.ctx.from_dict({key: to_fmpq(coeff)}), None)

    def from_terms(self, terms) -> "Scalar":
        """Build a polynomial from ``{exponents (coordinate order): coefficient}``."""
        d = {}
        for exps, c in terms.items():
            if c:
                d[tuple(reversed(tuple(exps)))] = to_fmpq(c)
        return Scalar(self, self.ctx.from_dict(d), None)

    def fraction(self, num: "Scalar", den: "Scalar") -> "Scalar":
        return self.coerce(num) / self.coerce(den)

    def parse(self, text: str) -> "Scalar":
        """Parse ``3*x0^2*x1 - 1/2`` style text (``^`` or ``**`` for powers)."""
        src = text.strip()
        if not src:
            raise ParseError("empty scalar expression")
        try:
            tree = ast.parse(src.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise ParseError(f"bad scalar syntax: {text!r}", exc.lineno, exc.offset) from None
        return self._eval_ast(tree.body, text)

    def _eval_ast(self, node, text):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return self.const(node.value)
        if isinstance(node, ast.Name):
            name = node.id
            if name.startswith("x") and name[1:].isdigit():
                return self.var(int(name[1:]))
            raise ParseError(f"unknown symbol {name!r} in {text!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self._eval_ast(node.operand, text)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise ParseError(f"exponent must be a non-negative integer in {text!r}")
                return self._eval_ast(node.left, text) ** exp.value
            left = self._eval_ast(node.left, text)
            right = self._eval_ast(node.right, text)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
        raise ParseError(f"unsupported construct in scalar expression {text!r}")


def _canonical(r: ScalarRing, num, den) -> "Scalar":
    if den.is_zero():
        raise DivisionByZero("Scalar division by zero")
    if num.is_zero():
        return r.zero
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
    if den.is_constant():
        return Scalar(r, num * (1 / den.leading_coefficient()), None)
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num = num * inv
        den = den * inv
    return Scalar(r, num, den)


class Scalar:
    """Exact rational function; see the module docstring for the canonical form."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring_, num, den):
        self.ring = ring_
        self.num = num
        self.den = den

    # -- coercion --------------------------------------------------------
    def _other(self, other):
        if type(other) is Scalar:
            if other.ring is not self.ring:
                raise DimensionMismatch(
                    f"Scalars over n={self.ring.n} and n={other.ring.n} mixed"
                )
            return other
        if isinstance(other, (int, Fraction, flint.fmpq)):
            return self.ring.const(other)
        return None

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.den is None and o.den is None:
            return Scalar(self.ring, self.num + o.num, None)
        if self.den is None:
            return _canonical(self.ring, self.num * o.den + o.num, o.den)
        if o.den is None:
            return _canonical(self.ring, self.num + o.num * self.den, self.den)
        return _canonical(
            self.ring, self.num * o.den + o.num * self.den, self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.ring, -self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int) and self.den is None:
            return Scalar(self.ring, self.num * other, None)
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.den is None and o.den is None:
            return Scalar(self.ring, self.num * o.num, None)
        if self.den is None:
            return _canonical(self.ring, self.num * o.num, o.den)
        if o.den is None:
            return _canonical(self.ring, self.num * o.num, self.den)
        return _canonical(self.ring, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.num.is_zero():
            raise DivisionByZero("Scalar division by zero")
        den = self.den if self.den is not None else self.ring.one.num
        return _canonical(self.ring, den, self.num)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise DivisionByZero("Scalar division by zero")
        if o.den is None and o.num.is_constant():
            return Scalar(self.ring, self.num * (1 / o.num.leading_coefficient()), self.den)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if self.den is None:
            return Scalar(self.ring, self.num**k, None)
        return Scalar(self.ring, self.num**k, self.den**k)

    # -- calculus --------------------------------------------------------
    def diff(self, mu: int) -> "Scalar":
        """Exact partial derivative with respect to ``x_mu``."""
        n = self.ring.n
        if not 0 <= mu < n:
            raise BadIndex(f"coordinate index {mu} out of range for n={n}")
        k = n - 1 - mu
        if self.den is None:
            return Scalar(self.ring, self.num.derivative(k), None)
        num = self.num.derivative(k) * self.den - self.num * self.den.derivative(k)
        return _canonical(self.ring, num, self.den * self.den)

    # -- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den is None

    def is_constant(self) -> bool:
        return self.den is None and self.num.is_constant()

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.den is None and o.den is None:
            return self.num == o.num
        a = self.num * (o.den if o.den is not None else 1)
        b = o.num * (self.den if self.den is not None else 1)
        return a == b

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    # -- inspection ------------------------------------------------------
    def monomial_count(self) -> int:
        """Number of terms in numerator and denominator (0 iff zero)."""
        if self.num.is_zero():
            return 0
        return len(self.num) + (len(self.den) if self.den is not None else 0)

    def total_degree(self) -> int:
        return -1 if self.num.is_zero() else int(self.num.total_degree())

    def terms(self):
        """Numerator terms as ``[(exponents in coordinate order, Fraction)]``, leading first."""
        return [
            (tuple(reversed(m)), _fraction(c)) for m, c in self.num.terms()
        ]

    def denominator_terms(self):
        if self.den is None:
            return [((0,) * self.ring.n, Fraction(1))]
        return [(tuple(reversed(m)), _fraction(c)) for m, c in self.den.terms()]

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("Scalar is not constant")
        if self.num.is_zero():
            return Fraction(0)
        return _fraction(self.num.leading_coefficient())

    def __reduce__(self):
        return (_rebuild, (self.ring.n, str(self)))

    # -- text ------------------------------------------------------------
    @staticmethod
    def _poly_text(terms) -> str:
        parts = []
        for exps, c in terms:
            mono = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts) if parts else "0"

    def __str__(self):
        num = self._poly_text(self.terms())
        if self.den is None:
            return num
        return f"({num})/({self._poly_text(self.denominator_terms())})"

    def __repr__(self):
        return f"Scalar({str(self)!r}, n={self.ring.n})"


def _rebuild(n, text):
    return ring(n).parse(text)
