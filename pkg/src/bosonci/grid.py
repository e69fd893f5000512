"""Uniform symmetric real-space grids."""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._validation import check_int, check_positive
from .exceptions import ConfigurationError


@dataclass(frozen=True)
class Grid:
    """Grid on [-L, L] with an odd number of points so that x = 0 is a node."""

    half_width: float
    n_points: int

    def __post_init__(self):
        check_positive(self.half_width, "half_width")
        check_int(self.n_points, "n_points", minimum=3)
        if self.n_points % 2 == 0:
            raise ConfigurationError(f"n_points must be odd, got {self.n_points}")

    @property
    def spacing(self):
        return 2.0 * self.half_width / (self.n_points - 1)

    @cached_property
    def x(self):
        x = np.linspace(-self.half_width, self.half_width, self.n_points)
        x[self.n_points // 2] = 0.0
        return x

    def refined(self):
        """Same extent, half the spacing."""
        return Grid(self.half_width, 2 * self.n_points - 1)

    def integrate(self, values):
        """Trapezoid rule along the last axis."""
        return np.trapezoid(values, dx=self.spacing, axis=-1)

    def integrate2d(self, values):
        return self.integrate(self.integrate(values))
