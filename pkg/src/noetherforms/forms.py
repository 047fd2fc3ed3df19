"""Graded exterior algebra on an ``n``-dimensional chart.

A :class:`DForm` stores its coefficients in the coordinate basis, keyed by
strictly increasing index tuples, together with a parity flag (``odd`` for
twisted forms).  Coefficients are :class:`~noetherforms.scalars.Scalar` or
any type with the same arithmetic protocol (``+ - *``, ``diff``, truthiness),
notably :class:`~noetherforms.jets.Jet`.

Conventions:

* wedge of degrees ``p + q > n`` is the zero ``n``-form;
* ``d`` of an ``n``-form is the zero ``n``-form;
* interior product with a 0-form is the zero 0-form.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations

from .errors import BadIndex, DimensionMismatch, ParseError
from .scalars import Scalar, ring

__all__ = [
    "DForm",
    "VectorField",
    "basis",
    "complement",
    "dx",
    "wedge",
    "exterior_derivative",
    "interior_product",
    "lie_derivative",
    "permutation_sign",
]


@lru_cache(maxsize=None)
def basis(n: int, p: int) -> tuple:
    """Increasing index tuples of length ``p`` in ``range(n)``."""
    return tuple(combinations(range(n), p))


@lru_cache(maxsize=None)
def complement(n: int, idx: tuple) -> tuple:
    return tuple(i for i in range(n) if i not in idx)


def permutation_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (0 if it has repeats)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@lru_cache(maxsize=None)
def _merge(a: tuple, b: tuple):
    """``dx^a ^ dx^b = sign * dx^key``; ``None`` when they overlap."""
    if set(a) & set(b):
        return None
    inversions = sum(1 for i in a for j in b if i > j)
    return tuple(sorted(a + b)), (-1 if inversions % 2 else 1)


def _is_zero(c) -> bool:
    return not c


class DForm:
    """A differential form with coordinate-basis coefficients."""

    __slots__ = ("n", "degree", "odd", "coeffs")

    def __init__(self, n: int, degree: int, coeffs=None, odd: bool = False):
        if not 0 <= degree <= n:
            raise DimensionMismatch(f"degree {degree} outside [0, {n}]")
        self.n = n
        self.degree = degree
        self.odd = bool(odd)
        self.coeffs = {} if coeffs is None else coeffs

    # -- construction ----------------------------------------------------
    @classmethod
    def zero(cls, n: int, degree: int, odd: bool = False) -> "DForm":
        return cls(n, min(max(degree, 0), n), {}, odd)

    @classmethod
    def from_dict(cls, n: int, degree: int, coeffs: dict, odd: bool = False) -> "DForm":
        """Build from ``{index tuple: coefficient}``; unsorted keys are reordered with sign."""
        r = ring(n)
        out = {}
        for key, c in coeffs.items():
            key = tuple(key)
            if len(key) != degree or any(not 0 <= i < n for i in key):
                raise DimensionMismatch(f"bad basis key {key} for a {degree}-form in n={n}")
            s = permutation_sign(key)
            if s == 0:
                continue
            c = r.coerce(c) if not hasattr(c, "diff") else c
            skey = tuple(sorted(key))
            _accumulate(out, skey, c if s > 0 else -c)
        return cls(n, degree, out, odd)

    @classmethod
    def function(cls, f, n: int | None = None, odd: bool = False) -> "DForm":
        """A 0-form."""
        if n is None:
            n = f.ring.n if isinstance(f, Scalar) else f.value.ring.n
        f = ring(n).coerce(f) if not hasattr(f, "diff") else f
        return cls(n, 0, {(): f} if f else {}, odd)

    # -- structure -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def with_parity(self, odd: bool) -> "DForm":
        return DForm(self.n, self.degree, self.coeffs, odd)

    def twisted(self) -> "DForm":
        return self.with_parity(not self.odd)

    def __getitem__(self, key):
        key = tuple(key)
        if (len(key) != self.degree or not all(isinstance(i, int) and 0 <= i < self.n for i in key)
                or list(key) != sorted(set(key))):
            raise BadIndex(f"{key!r} is not an increasing {self.degree}-index below {self.n}")
        c = self.coeffs.get(key)
        return ring(self.n).zero if c is None else c

    def top(self):
        """The single coefficient of an ``n``-form."""
        return self[tuple(range(self.n))]

    def map_coeffs(self, fn) -> "DForm":
        out = {}
        for k, c in self.coeffs.items():
            v = fn(c)
            if v:
                out[k] = v
        return DForm(self.n, self.degree, out, self.odd)

    def monomial_count(self) -> int:
        return sum(c.monomial_count() for c in self.coeffs.values())

    def _check(self, other: "DForm"):
        if not isinstance(other, DForm):
            raise TypeError(f"expected DForm, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatch(f"forms on n={self.n} and n={other.n} mixed")

    # -- linear structure ------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, DForm):
            return NotImplemented
        self._check(other)
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        if other.degree != self.degree:
            raise DimensionMismatch(
                f"cannot add a {self.degree}-form and a {other.degree}-form"
            )
        if other.odd != self.odd:
            raise DimensionMismatch("cannot add even and odd forms")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            _accumulate(out, k, c)
        return DForm(self.n, self.degree, out, self.odd)

    def __neg__(self):
        return DForm(self.n, self.degree, {k: -c for k, c in self.coeffs.items()}, self.odd)

    def __sub__(self, other):
        if not isinstance(other, DForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, DForm):
            return NotImplemented
        if isinstance(c, int) and c == 1:
            return self
        out = {}
        for k, v in self.coeffs.items():
            w = v * c
            if w:
                out[k] = w
        return DForm(self.n, self.degree, out, self.odd)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DForm):
            return NotImplemented
        if other.n != self.n:
            return False
        if not self.coeffs and not other.coeffs:
            return True
        return (
            self.degree == other.degree
            and self.odd == other.odd
            and (self - other).is_zero()
        )

    __hash__ = None

    # -- exterior calculus -----------------------------------------------
    def wedge(self, other: "DForm") -> "DForm":
        return wedge(self, other)

    def d(self) -> "DForm":
        return exterior_derivative(self)

    def interior(self, X: "VectorField") -> "DForm":
        return interior_product(X, self)

    def lie(self, X: "VectorField") -> "DForm":
        return lie_derivative(X, self)

    # -- text ------------------------------------------------------------
    def __str__(self):
        if not self.coeffs:
            text = "0"
        else:
            parts = []
            for key in sorted(self.coeffs):
                c = self.coeffs[key]
                basis_text = "^".join(f"dx{i}" for i in key)
                if basis_text and c == 1:
                    parts.append(basis_text)
                elif basis_text:
                    parts.append(f"({c}) {basis_text}")
                else:
                    parts.append(f"({c})")
            text = " + ".join(parts)
        return text + (" !odd" if self.odd else "")

    def __repr__(self):
        return f"DForm(n={self.n}, degree={self.degree}, {str(self)!r})"

    @classmethod
    def parse(cls, text: str, n: int, degree: int | None = None) -> "DForm":
        """Inverse of ``str``; ``degree`` is required only for the zero form."""
        src = text.strip()
        odd = False
        if src.endswith("!odd"):
            odd = True
            src = src[: -len("!odd")].strip()
        r = ring(n)
        terms = _split_top_level(src)
        coeffs = {}
        deg = degree
        for term in terms:
            term = term.strip()
            if term == "0":
                continue
            m = re.fullmatch(r"(-)?\s*(?:\((.*)\))?\s*((?:dx\d+)(?:\s*\^\s*dx\d+)*)?", term, re.S)
            if m is None or (m.group(2) is None and m.group(3) is None):
                raise ParseError(f"bad form term {term!r}")
            coef = r.parse(m.group(2)) if m.group(2) is not None else r.one
            if m.group(1):
                coef = -coef
            key = tuple(int(t) for t in re.findall(r"dx(\d+)", m.group(3) or ""))
            if deg is None:
                deg = len(key)
            elif deg != len(key):
                raise ParseError(f"mixed degrees in form text {text!r}")
            coeffs[key] = coeffs.get(key, r.zero) + coef
        if deg is None:
            raise ParseError("degree of the zero form must be given")
        return cls.from_dict(n, deg, coeffs, odd)


def _split_top_level(src: str):
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(src):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "+" and depth == 0:
            parts.append(src[start:i])
            start = i + 1
    parts.append(src[start:])
    if any(not p.strip() for p in parts):
        raise ParseError(f"empty term in form text {src!r}")
    return parts


def _accumulate(out: dict, key, c):
    prev = out.get(key)
    if prev is None:
        if c:
            out[key] = c
        return
    s = prev + c
    if s:
        out[key] = s
    else:
        del out[key]


def dx(n: int, *indices: int, coeff=1) -> DForm:
    """Basis form ``coeff * dx^i ^ dx^j ^ ...`` (indices in any order)."""
    return DForm.from_dict(n, len(indices), {tuple(indices): coeff})


def wedge(alpha: DForm, beta: DForm) -> DForm:
    alpha._check(beta)
    p = alpha.degree + beta.degree
    odd = alpha.odd != beta.odd
    n = alpha.n
    if p > n:
        return DForm.zero(n, n, odd)
    out = {}
    for ka, ca in alpha.coeffs.items():
        for kb, cb in beta.coeffs.items():
            merged = _merge(ka, kb)
            if merged is None:
                continue
            key, sign = merged
            prod = ca * cb
            _accumulate(out, key, prod if sign > 0 else -prod)
    return DForm(n, p, out, odd)


def exterior_derivative(alpha: DForm) -> DForm:
    n = alpha.n
    if alpha.degree >= n:
        return DForm.zero(n, n, alpha.odd)
    out = {}
    for key, c in alpha.coeffs.items():
        for mu in range(n):
            if mu in key:
                continue
            dc = c.diff(mu)
            if not dc:
                continue
            newkey, sign = _merge((mu,), key)
            _accumulate(out, newkey, dc if sign > 0 else -dc)
    return DForm(n, alpha.degree + 1, out, alpha.odd)


class VectorField:
    """Vector field ``X = X^mu d/dx^mu`` by coordinate components."""

    __slots__ = ("n", "components")

    def __init__(self, components):
        comps = tuple(components)
        if not comps:
            raise DimensionMismatch("a vector field needs at least one component")
        n = None
        for c in comps:
            if isinstance(c, Scalar):
                n = c.ring.n
                break
            if hasattr(c, "value"):
                n = c.value.ring.n
                break
        n = len(comps) if n is None else n
        if n != len(comps):
            raise DimensionMismatch(f"{len(comps)} components for n={n}")
        r = ring(n)
        self.n = n
        self.components = tuple(c if hasattr(c, "diff") else r.const(c) for c in comps)

    @classmethod
    def coordinate(cls, n: int, mu: int) -> "VectorField":
        r = ring(n)
        return cls(r.one if i == mu else r.zero for i in range(n))

    @classmethod
    def zero(cls, n: int) -> "VectorField":
        return cls(ring(n).zero for _ in range(n))

    def __getitem__(self, mu):
        return self.components[mu]

    def __add__(self, other):
        return VectorField(a + b for a, b in zip(self.components, other.components))

    def __mul__(self, f):
        return VectorField(c * f for c in self.components)

    __rmul__ = __mul__

    def __neg__(self):
        return VectorField(-c for c in self.components)

    def apply(self, f):
        """Directional derivative ``X(f)`` of a coefficient."""
        total = ring(self.n).zero
        for mu, c in enumerate(self.components):
            if c:
                total = total + c * f.diff(mu)
        return total

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.n == other.n and all(a == b for a, b in zip(self.components, other.components))

    __hash__ = None

    def __repr__(self):
        return "VectorField(" + ", ".join(str(c) for c in self.components) + ")"


def interior_product(X: VectorField, alpha: DForm) -> DForm:
    if X.n != alpha.n:
        raise DimensionMismatch(f"vector on n={X.n}, form on n={alpha.n}")
    n = alpha.n
    if alpha.degree == 0:
        return DForm.zero(n, 0, alpha.odd)
    comps = X.components
    out = {}
    for key, c in alpha.coeffs.items():
        for pos, mu in enumerate(key):
            xm = comps[mu]
            if not xm:
                continue
            term = xm * c
            newkey = key[:pos] + key[pos + 1:]
            _accumulate(out, newkey, -term if pos % 2 else term)
    return DForm(n, alpha.degree - 1, out, alpha.odd)


def lie_derivative(X: VectorField, alpha: DForm) -> DForm:
    """Cartan formula ``L_X a = d(X _| a) + X _| d a``."""
    if X.n != alpha.n:
        raise DimensionMismatch(f"vector on n={X.n}, form on n={alpha.n}")
    first = exterior_derivative(interior_product(X, alpha)) if alpha.degree else DForm.zero(alpha.n, alpha.degree, alpha.odd)
    second = interior_product(X, exterior_derivative(alpha)) if alpha.degree < alpha.n else DForm.zero(alpha.n, alpha.degree, alpha.odd)
    if first.degree != alpha.degree:
        first = DForm(alpha.n, alpha.degree, first.coeffs, alpha.odd)
    return first + second
