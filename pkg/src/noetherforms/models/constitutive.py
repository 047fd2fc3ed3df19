"""Constant constitutive tensors of linear premetric electrodynamics (n = 4).

``chi[a][b][c][d]`` is antisymmetric in ``(ab)`` and in ``(cd)``.  The map
``kappa`` sends an even 2-form ``F = 1/2 F_ab vartheta^ab`` to the odd
2-form ``H = 1/4 F_ab chi^{mnab} eps_mn`` with ``eps_mn = e_m _| e_n _| eps``
and ``eps`` the volume form of the geometry.

The 6x6 matrix form uses the index-pair order 01, 02, 03, 23, 31, 12.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

import flint

from ..errors import BadShape, BadTensor, DimensionMismatch
from ..forms import DForm, complement, permutation_sign

PAIRS = ((0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2))
N = 4


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


class ConstitutiveTensor:
    __slots__ = ("chi",)

    def __init__(self, components):
        chi = tuple(
            tuple(tuple(tuple(_frac(components[a][b][c][d]) for d in range(N)) for c in range(N))
                  for b in range(N))
            for a in range(N)
        )
        for a, b, c, d in product(range(N), repeat=4):
            v = chi[a][b][c][d]
            if v != -chi[b][a][c][d] or v != -chi[a][b][d][c]:
                raise BadTensor(f"chi is not antisymmetric in its index pairs at {(a, b, c, d)}")
        self.chi = chi

    # -- construction ------------------------------------------------------------
    @classmethod
    def from_function(cls, fn) -> "ConstitutiveTensor":
        return cls([[[[fn(a, b, c, d) for d in range(N)] for c in range(N)] for b in range(N)]
                    for a in range(N)])

    @classmethod
    def zero(cls) -> "ConstitutiveTensor":
        return cls.from_function(lambda *_: 0)

    @classmethod
    def from_matrix(cls, matrix) -> "ConstitutiveTensor":
        """From the 6x6 block ``M[I][J] = chi^{I J}`` over :data:`PAIRS`."""
        if len(matrix) != 6 or any(len(row) != 6 for row in matrix):
            raise BadShape("constitutive matrix must be 6x6")
        comps = [[[[Fraction(0)] * N for _ in range(N)] for _ in range(N)] for _ in range(N)]
        for I, (a, b) in enumerate(PAIRS):
            for J, (c, d) in enumerate(PAIRS):
                v = _frac(matrix[I][J])
                comps[a][b][c][d] = v
                comps[b][a][c][d] = -v
                comps[a][b][d][c] = -v
                comps[b][a][d][c] = v
        return cls(comps)

    def to_matrix(self) -> list:
        return [[self.chi[a][b][c][d] for (c, d) in PAIRS] for (a, b) in PAIRS]

    @classmethod
    def vacuum(cls, signature=(-1, 1, 1, 1)) -> "ConstitutiveTensor":
        """``eta^ad eta^bc - eta^ac eta^bd``, the tensor for which ``kappa`` is the Hodge star.

        The overall sign is fixed by the volume-form convention: with the
        opposite sign ``kappa`` would equal ``-*``.
        """
        eta = tuple(signature)
        if len(eta) != N:
            raise DimensionMismatch("vacuum tensor needs a 4-entry signature")

        def fn(a, b, c, d):
            return (eta[a] if a == d else 0) * (eta[b] if b == c else 0) - (
                eta[a] if a == c else 0) * (eta[b] if b == d else 0)

        return cls.from_function(fn)

    @classmethod
    def axion(cls, alpha=1) -> "ConstitutiveTensor":
        """``alpha * eps^{abcd}`` with ``eps^{0123} = +1``."""
        alpha = _frac(alpha)
        return cls.from_function(lambda a, b, c, d: alpha * permutation_sign((a, b, c, d)))

    # -- algebra -------------------------------------------------------------------
    def __add__(self, other):
        return ConstitutiveTensor.from_function(
            lambda a, b, c, d: self.chi[a][b][c][d] + other.chi[a][b][c][d])

    def __sub__(self, other):
        return ConstitutiveTensor.from_function(
            lambda a, b, c, d: self.chi[a][b][c][d] - other.chi[a][b][c][d])

    def __mul__(self, k):
        k = _frac(k)
        return ConstitutiveTensor.from_function(lambda a, b, c, d: k * self.chi[a][b][c][d])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ConstitutiveTensor):
            return NotImplemented
        return self.chi == other.chi

    __hash__ = None

    def is_zero(self) -> bool:
        return all(v == 0 for v in _flat(self.chi))

    def __repr__(self):
        return f"ConstitutiveTensor({self.to_matrix()!r})"

    # -- the kappa map -------------------------------------------------------------
    def apply(self, geometry, F: DForm) -> DForm:
        """``H = kappa(F)``, an odd 2-form."""
        return constitutive_map(self, F, geometry)


def _flat(chi):
    for a, b, c, d in product(range(N), repeat=4):
        yield chi[a][b][c][d]


def epsilon_pair(m: int, n: int, eta_sign: int):
    """``e_m _| e_n _| eps`` in frame components: ``(coefficient, (c, d))``."""
    if m == n:
        return 0, None
    cd = complement(N, tuple(sorted((m, n))))
    return eta_sign * permutation_sign((n, m) + cd), cd


def constitutive_map(chi: ConstitutiveTensor, F: DForm, geometry) -> DForm:
    """``H^{mn} = 1/2 chi^{mnab} F_ab`` assembled on the odd basis ``eps_mn``."""
    if F.n != N or geometry.n != N:
        raise DimensionMismatch("the constitutive map lives in dimension 4")
    if F.degree != 2:
        raise DimensionMismatch(f"kappa acts on 2-forms, got a {F.degree}-form")
    comps = geometry.frame_components(F)  # F_ab for a < b
    if not comps:
        return DForm.zero(N, 2, not F.odd)
    out = {}
    for (m, n) in _increasing_pairs():
        h = None
        for (a, b), f in comps.items():
            c = chi.chi[m][n][a][b]
            if c:
                t = f * c
                h = t if h is None else h + t
        if h is None or not h:
            continue
        # H = sum_{m<n} H^{mn} eps_mn with H^{mn} = sum_{a<b} chi^{mnab} F_ab
        coef, cd = epsilon_pair(m, n, geometry.eta_sign)
        prev = out.get(cd)
        val = h * coef
        out[cd] = val if prev is None else prev + val
    out = {k: v for k, v in out.items() if v}
    return geometry.from_frame_components(2, out, not F.odd)


def _increasing_pairs():
    return [(m, n) for m in range(N) for n in range(m + 1, N)]


def chi_decompose(chi: ConstitutiveTensor):
    """Principal, skewon and axion pieces ``(chi1, chi2, chi3)``."""
    c = chi.chi
    perms = [(p, permutation_sign(p)) for p in permutations(range(4))]

    def axion(a, b, cc, d):
        idx = (a, b, cc, d)
        return sum(Fraction(s) * c[idx[p[0]]][idx[p[1]]][idx[p[2]]][idx[p[3]]] for p, s in perms) / 24

    chi3 = ConstitutiveTensor.from_function(axion)
    chi2 = ConstitutiveTensor.from_function(lambda a, b, cc, d: (c[a][b][cc][d] - c[cc][d][a][b]) / 2)
    chi1 = chi - chi2 - chi3
    return chi1, chi2, chi3


def _basis_tensors():
    for I in range(6):
        for J in range(6):
            m = [[0] * 6 for _ in range(6)]
            m[I][J] = 1
            yield ConstitutiveTensor.from_matrix(m)


def projector_ranks() -> tuple:
    """Ranks of the three projections on the 36-dimensional space of tensors."""
    columns = ([], [], [])
    for t in _basis_tensors():
        for k, piece in enumerate(chi_decompose(t)):
            columns[k].append([x for row in piece.to_matrix() for x in row])
    ranks = []
    for cols in columns:
        mat = flint.fmpq_mat(36, 36, [flint.fmpq(v.numerator, v.denominator)
                                      for i in range(36) for v in (cols[j][i] for j in range(36))])
        ranks.append(mat.rank())
    return tuple(ranks)


def lagrangian_componentwise(chi: ConstitutiveTensor, F: DForm, geometry) -> DForm:
    """``1/8 F_ab F_cd chi^{abcd} eps`` summed over all index values."""
    comps = geometry.frame_components(F)
    total = None
    for (a, b), fab in comps.items():
        for (c, d), fcd in comps.items():
            x = chi.chi[a][b][c][d]
            if x:
                # each unordered pair stands for two ordered ones
                t = fab * fcd * (x * 4)
                total = t if total is None else total + t
    if total is None:
        return DForm.zero(N, N, True)
    return geometry.volume * (total * Fraction(1, 8))


def lorentz_force(F: DForm, J: DForm, geometry) -> tuple:
    """``f_a = (e_a _| F) ^ J`` for each frame leg."""
    if J.degree != 3:
        raise DimensionMismatch("the current must be a 3-form")
    return tuple(F.interior(e).wedge(J) for e in geometry.frame)
