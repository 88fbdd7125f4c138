"""Walk model: step sets, weights, lattice and chamber geometry.

A model is fully described by three data: the atomic kind (axis or
diagonal), the dimension k, and the weight list (w_0, ..., w_d) where w_m
weights every composite step made of m atomic steps.  The composite step
generating function is then S(z) = P(A(z)) with P(x) = sum_m w_m x^m and
A(z) the atomic step generating function.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence


class AtomicKind(Enum):
    """The two admissible atomic step sets."""

    AXIS = "axis"          # {+-e_1, ..., +-e_k}
    DIAGONAL = "diagonal"  # {sum_j eps_j e_j : eps_j in {-1, +1}}


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"weight must be int, Fraction or 'p/q' string, got {type(x).__name__}")


@dataclass(frozen=True)
class CompositeSpec:
    """A composite step model: atomic kind, dimension, weight polynomial.

    ``weights[m]`` is the weight of each composite step consisting of m
    atomic steps.  At least one weight with m >= 1 must be positive,
    otherwise the walker never moves.
    """

    kind: AtomicKind
    k: int
    weights: tuple[Fraction, ...]

    def __init__(self, kind: AtomicKind, k: int, weights: Iterable) -> None:
        if k < 1:
            raise ValueError("dimension k must be positive")
        ws = [_as_fraction(w) for w in weights]
        if any(w < 0 for w in ws):
            raise ValueError("weights must be nonnegative")
        while len(ws) > 1 and ws[-1] == 0:
            ws.pop()
        if not any(w > 0 for w in ws[1:]):
            raise ValueError("at least one moving weight w_m > 0 with m >= 1 is required")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "weights", tuple(ws))

    @property
    def degree(self) -> int:
        """Largest atomic length d with w_d > 0."""
        return len(self.weights) - 1

    @property
    def integer_weights(self) -> bool:
        return all(w.denominator == 1 for w in self.weights)

    # -- weight polynomial -------------------------------------------------

    def poly(self, x: Fraction) -> Fraction:
        """P(x) = sum_m w_m x^m, evaluated exactly."""
        acc = Fraction(0)
        for w in reversed(self.weights):
            acc = acc * x + w
        return acc

    def poly_deriv(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for m in range(self.degree, 0, -1):
            acc = acc * x + m * self.weights[m]
        return acc

    def poly_deriv2(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for m in range(self.degree, 1, -1):
            acc = acc * x + m * (m - 1) * self.weights[m]
        return acc

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "k": self.k,
            "weights": [_format_rational(w) for w in self.weights],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CompositeSpec":
        return cls(AtomicKind(obj["kind"]), int(obj["k"]), [Fraction(w) for w in obj["weights"]])


def _format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class GaussianExpansion:
    """Second and fourth order constants of log|S| at the all-ones point.

    ``lam`` is the curvature constant S''(1,...,1)/S(1,...,1) used by the
    asymptotic formulas.  ``omega`` and ``psi`` are higher-order constants;
    in the diagonal case they are returned as printed in the source
    formulas but flagged unvalidated (``omega_psi_validated`` False), see
    the numeric oracle in the tests.
    """

    lam: Fraction
    omega: Fraction
    psi: Fraction
    omega_psi_validated: bool


@dataclass(frozen=True)
class MaximalPointSet:
    """Sign vectors where |S| attains its torus maximum S(1, ..., 1).

    The sign vector eps stands for the angle vector with phi_j = 0 when
    eps_j = +1 and phi_j = pi when eps_j = -1.
    """

    points: frozenset[tuple[int, ...]]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(sorted(self.points, reverse=True))

    def angles(self) -> list[tuple[float, ...]]:
        return [tuple(0.0 if e > 0 else math.pi for e in eps) for eps in self]


# ---------------------------------------------------------------------------
# generating function values


def atomic_gf_value(kind: AtomicKind, z: Sequence[Fraction]) -> Fraction:
    """A(z): sum of z_j + 1/z_j for axis steps, product for diagonal steps."""
    if any(zj == 0 for zj in z):
        raise ValueError("coordinates of z must be nonzero")
    terms = [Fraction(zj) + 1 / Fraction(zj) for zj in z]
    if kind is AtomicKind.AXIS:
        return sum(terms, Fraction(0))
    prod = Fraction(1)
    for t in terms:
        prod *= t
    return prod


def composite_gf_value(spec: CompositeSpec, z: Sequence[Fraction]) -> Fraction:
    """S(z) = P(A(z)), exact rational arithmetic."""
    if len(z) != spec.k:
        raise ValueError(f"expected {spec.k} coordinates, got {len(z)}")
    return spec.poly(atomic_gf_value(spec.kind, z))


def s_one(spec: CompositeSpec) -> Fraction:
    """S(1, ..., 1); equals P(2k) for axis steps and P(2^k) for diagonal."""
    if spec.kind is AtomicKind.AXIS:
        return spec.poly(Fraction(2 * spec.k))
    return spec.poly(Fraction(2 ** spec.k))


def s_second_derivative_one(spec: CompositeSpec) -> Fraction:
    """S''(1,...,1): second derivative in any single variable at the all-ones point.

    d^2 A / dz_1^2 at z=1 equals 2 for axis steps and 2^k for diagonal
    steps, while dA/dz_1 vanishes there, so S'' = P'(A(1)) * A''(1).
    """
    if spec.kind is AtomicKind.AXIS:
        return 2 * spec.poly_deriv(Fraction(2 * spec.k))
    return (2 ** spec.k) * spec.poly_deriv(Fraction(2 ** spec.k))


def gaussian_expansion(spec: CompositeSpec) -> GaussianExpansion:
    """Expansion constants of log|S(e^{i phi})| around phi = 0."""
    if spec.kind is AtomicKind.AXIS:
        x = Fraction(2 * spec.k)
        p, dp, ddp = spec.poly(x), spec.poly_deriv(x), spec.poly_deriv2(x)
        lam = 2 * dp / p
        omega = 4 * ddp / p ** 2 - lam ** 2
        # internal consistency: lam must equal S''(1,..,1)/S(1,..,1)
        assert lam == s_second_derivative_one(spec) / s_one(spec)
        return GaussianExpansion(lam=lam, omega=omega, psi=lam, omega_psi_validated=True)
    xk = Fraction(2 ** spec.k)
    p, dp = spec.poly(xk), spec.poly_deriv(xk)
    lam = xk * dp / p
    # printed formulas mix arguments 2k and 2^k; kept as printed, unvalidated
    x2k = Fraction(2 * spec.k)
    p2k, ddp2k = spec.poly(x2k), spec.poly_deriv2(x2k)
    omega = (4 ** spec.k) * ddp2k / p2k ** 2 - lam ** 2 + lam if p2k != 0 else Fraction(0)
    return GaussianExpansion(lam=lam, omega=omega, psi=-2 * lam, omega_psi_validated=False)


def log_s_quartic_fit(spec: CompositeSpec) -> tuple[float, float]:
    """Numeric oracle for the expansion of log|S| along one coordinate.

    Fits log|S(e^{it}, 1, ..., 1)| - log S(1, ..., 1) = c2 t^2 + c4 t^4
    + O(t^6) and returns (c2, c4).  Against the symbolic expansion the
    coefficients collapse to c2 = -lam/2 and c4 = omega/2 + psi/24, which
    is how the printed higher-order constants can be probed numerically.
    """
    if spec.kind is AtomicKind.AXIS:
        a = lambda t: 2 * math.cos(t) + 2 * (spec.k - 1)
    else:
        a = lambda t: 2 * math.cos(t) * 2 ** (spec.k - 1)
    s1 = float(s_one(spec))
    f = lambda t: math.log(abs(float(spec.poly(Fraction(a(t)))))) - math.log(s1)
    ts = (0.04, 0.02, 0.01)
    ys = [f(t) for t in ts]
    # solve the 3x3 Vandermonde-like system in t^2, t^4, t^6
    rows = [[t ** 2, t ** 4, t ** 6] for t in ts]
    c2, c4, _ = _solve3(rows, ys)
    return c2, c4


def _solve3(a: list[list[float]], b: list[float]) -> list[float]:
    m = [row[:] + [bi] for row, bi in zip(a, b)]
    for col in range(3):
        piv = max(range(col, 3), key=lambda r: abs(m[r][col]))
        m[col], m[piv] = m[piv], m[col]
        for r in range(3):
            if r != col:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][3] / m[r][r] for r in range(3)]


def maximal_points(spec: CompositeSpec) -> MaximalPointSet:
    """All sign vectors eps with |S(eps)| = S(1, ..., 1).

    S is real at sign vectors, so this is carried out entirely in exact
    rational arithmetic.
    """
    top = s_one(spec)
    pts = set()
    for eps in itertools.product((1, -1), repeat=spec.k):
        val = composite_gf_value(spec, [Fraction(e) for e in eps])
        if abs(val) == top:
            pts.add(eps)
    return MaximalPointSet(points=frozenset(pts))


# ---------------------------------------------------------------------------
# lattice and chamber predicates


def lattice_contains(spec: CompositeSpec, coords: Sequence[int]) -> bool:
    """Membership in the Z-lattice spanned by the atomic step set.

    Diagonal steps span the sublattice of points with all coordinates of
    equal parity; axis steps span all of Z^k.
    """
    if len(coords) != spec.k:
        raise ValueError(f"expected {spec.k} coordinates, got {len(coords)}")
    if spec.kind is AtomicKind.AXIS:
        return True
    parity = coords[0] % 2
    return all(c % 2 == parity for c in coords)


def in_chamber(coords: Sequence[int]) -> bool:
    """True iff 0 < x_1 < x_2 < ... < x_k strictly."""
    prev = 0
    for c in coords:
        if c <= prev:
            return False
        prev = c
    return True


def check_chamber_point(spec: CompositeSpec, coords: Sequence[int]) -> tuple[int, ...]:
    """Validate a chamber point against the spec; returns it as a tuple."""
    pt = tuple(int(c) for c in coords)
    if len(pt) != spec.k:
        raise ValueError(f"expected {spec.k} coordinates, got {len(pt)}")
    if not in_chamber(pt):
        raise ValueError(f"{pt} is not strictly inside the chamber")
    if not lattice_contains(spec, pt):
        raise ValueError(f"{pt} is not on the walk lattice")
    return pt
