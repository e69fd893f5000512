"""Polynomial confining potentials V(x) = sum_k c_k x^k.

The three named traps are the harmonic well, a symmetric double well
with minima at x = +-1/sqrt(a), and a triple well with an extra minimum
at the origin. Both multi-well traps share the barrier height 2/(27 a).
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ._validation import check_positive
from .exceptions import ConfigurationError

NAMED_TRAPS = ("harmonic", "double_well", "triple_well")


@dataclass(frozen=True)
class PotentialSpec:
    """Confining polynomial potential, immutable.

    ``coefficients[k]`` multiplies ``x**k``. The highest nonzero
    coefficient must sit at an even power and be positive.
    """

    coefficients: tuple
    name: Optional[str] = None
    a: Optional[float] = None

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        if not coeffs or not all(np.isfinite(coeffs)):
            raise ConfigurationError("potential needs finite coefficients")
        while len(coeffs) > 1 and coeffs[-1] == 0.0:
            coeffs = coeffs[:-1]
        degree = len(coeffs) - 1
        if degree == 0 or degree % 2 or coeffs[-1] <= 0:
            raise ConfigurationError(
                "potential must have even degree >= 2 with a positive leading "
                f"coefficient, got coefficients {coeffs}")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self):
        return len(self.coefficients) - 1

    @property
    def is_even(self):
        return all(c == 0.0 for c in self.coefficients[1::2])

    def __call__(self, x):
        return evaluate(self, x)

    def stationary_points(self):
        """Real roots of V'(x), sorted."""
        dcoef = np.polynomial.polynomial.polyder(self.coefficients)
        roots = np.polynomial.polynomial.polyroots(dcoef)
        real = roots[np.abs(roots.imag) <= 1e-9 * np.maximum(1.0, np.abs(roots.real))].real
        return np.unique(np.round(real, 12))

    def minima(self):
        pts = self.stationary_points()
        d2 = np.polynomial.polynomial.polyder(self.coefficients, 2)
        curv = np.polynomial.polynomial.polyval(pts, d2)
        return pts[curv > 0]

    def outermost_minimum(self):
        """Largest |x| among local minima (0 for a single well at the origin)."""
        mins = self.minima()
        return float(np.max(np.abs(mins))) if mins.size else 0.0

    def to_config(self):
        if self.name in NAMED_TRAPS:
            cfg = {"potential": self.name}
            if self.a is not None:
                cfg["a"] = self.a
            return cfg
        return {"potential": "custom", "coefficients": list(self.coefficients)}


def evaluate(potential, x):
    """Horner evaluation of V at scalar or array ``x``."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for c in reversed(potential.coefficients):
        out = out * x + c
    return out if out.ndim else float(out)


def make_harmonic():
    return PotentialSpec((0.0, 0.0, 0.5), name="harmonic")


def make_double_well(a):
    """(2/(27a)) (1 - a x^2)^2 expanded into monomials."""
    a = check_positive(a, "a")
    # expand with exact rationals in the prefactor, then scale by a
    pre = Fraction(2, 27)
    coeffs = (float(pre / Fraction(a)), 0.0, float(-2 * pre), 0.0, float(pre) * a)
    return PotentialSpec(coeffs, name="double_well", a=a)


def make_triple_well(a):
    """x^2/2 - a x^4 + a^2 x^6 / 2, i.e. (x^2/2)(1 - a x^2)^2."""
    a = check_positive(a, "a")
    return PotentialSpec((0.0, 0.0, 0.5, 0.0, -a, 0.0, 0.5 * a * a),
                         name="triple_well", a=a)


def from_config(name, a=None, coefficients: Optional[Sequence[float]] = None):
    """Build a potential from a name + parameter pair or an explicit coefficient list."""
    if name == "harmonic":
        return make_harmonic()
    if name in ("double_well", "triple_well"):
        if a is None:
            raise ConfigurationError(f"{name} requires the shape parameter a")
        return (make_double_well if name == "double_well" else make_triple_well)(a)
    if name == "custom":
        if not coefficients:
            raise ConfigurationError("custom potential requires a coefficient list")
        return PotentialSpec(tuple(coefficients), name="custom")
    raise ConfigurationError(f"unknown potential {name!r}; expected one of "
                             f"{NAMED_TRAPS + ('custom',)}")
