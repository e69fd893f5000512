"""Natural orbitals, occupancies and densities of a CI state."""
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._validation import check_index
from .exceptions import ConfigurationError
from .grid import Grid
from .ho_basis import BasisSet, ho_functions

NORMALIZATION_TOLERANCE = 1e-8
COARSE_GRID_TOLERANCE = 1e-3
DEFAULT_GRID_POINTS = 401


@dataclass(frozen=True)
class SchmidtDecomposition:
    """phi(x1, x2) = sum_l k_l v_l(x1) v_l(x2), v_l = sum_n p[n, l] phi_n.

    Columns of ``orbitals`` are the unit vectors p^(l), ordered by
    descending occupancy.
    """

    k: np.ndarray
    orbitals: np.ndarray
    omega: float

    @property
    def occupancies(self):
        return self.k ** 2

    @property
    def K(self):
        return len(self.k)

    @property
    def basis(self):
        return BasisSet(self.omega, self.K)


@dataclass(frozen=True)
class DensityField:
    grid: Grid
    values: np.ndarray
    kind: str
    norm: float
    warning: Optional[str] = None


def a_matrix(coefficients):
    """A_nn = a_nn, A_mn = a_mn / sqrt(2) for m != n."""
    a = np.asarray(coefficients, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ConfigurationError(f"coefficient matrix must be square, got shape {a.shape}")
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-14):
        raise ConfigurationError("coefficient matrix must be symmetric (a_ij = a_ji)")
    out = a / math.sqrt(2.0)
    np.fill_diagonal(out, np.diag(a))
    norm = float(np.sum(out * out))
    if abs(norm - 1.0) > NORMALIZATION_TOLERANCE:
        raise ConfigurationError(
            f"CI coefficients are not normalized: sum over pairs of a_ij^2 = {norm:.12g}")
    return out


def basis_extent(basis):
    """Half-width past the classical turning point of the highest basis function."""
    return (math.sqrt(2 * basis.size + 1) + 3.0) / math.sqrt(basis.omega)


def _sign_grid(basis):
    return Grid(basis_extent(basis), DEFAULT_GRID_POINTS)


def schmidt(state):
    """Eigendecomposition of the A matrix of ``state`` (a :class:`~bosonci.solver.CIState`)."""
    amat = a_matrix(state.coefficients)
    k, p = np.linalg.eigh(amat)
    order = np.lexsort((-k, -(k * k)))
    k, p = k[order], p[:, order]
    # orient each orbital: positive at the leftmost sample where it is non-negligible
    basis = BasisSet(state.omega, len(k))
    values = p.T @ ho_functions(basis, _sign_grid(basis).x)
    for col in range(p.shape[1]):
        big = np.flatnonzero(np.abs(values[col]) > 1e-6)
        if big.size and values[col, big[0]] < 0:
            p[:, col] *= -1.0
    return SchmidtDecomposition(k, p, state.omega)


def orbital_eval(decomp, l, x):
    """v_l(x)."""
    check_index(l, decomp.K, "l")
    vals = decomp.orbitals[:, l] @ ho_functions(decomp.basis, np.asarray(x, dtype=float))
    return vals if np.ndim(vals) else float(vals)


def default_grid(potential, omega, n_points=DEFAULT_GRID_POINTS, K=None):
    """Symmetric grid spanning the wells; widened to the basis extent when ``K`` is given."""
    half = 4.0 * (potential.outermost_minimum() + 1.0 / math.sqrt(omega))
    if K is not None:
        half = max(half, basis_extent(BasisSet(omega, K)))
    return Grid(half, n_points)


def _field(grid, values, kind, norm):
    warning = None
    if abs(norm - 1.0) > COARSE_GRID_TOLERANCE:
        warning = f"{kind} integrates to {norm:.6g} on this grid; grid too coarse or narrow"
        warnings.warn(warning, RuntimeWarning, stacklevel=3)
    return DensityField(grid, values, kind, float(norm), warning)


def one_body_density(decomp, grid, full=False):
    """rho(x, x) = sum_l lambda_l v_l(x)^2, or the full rho(x, x') when ``full``."""
    v = decomp.orbitals.T @ ho_functions(decomp.basis, grid.x)
    lam = decomp.occupancies
    diag = np.einsum("l,lx->x", lam, v * v)
    norm = grid.integrate(diag)
    values = (v.T * lam) @ v if full else diag
    return _field(grid, values, "one_body_density", norm)


def wavefunction_on_grid(state, grid):
    """phi(x1, x2) = sum_mn A_mn phi_m(x1) phi_n(x2) sampled on ``grid`` x ``grid``."""
    b = ho_functions(BasisSet(state.omega, state.K), grid.x)
    return b.T @ a_matrix(state.coefficients) @ b


def pair_density(state, grid):
    """|phi(x1, x2)|^2 on the tensor grid; rows index x1."""
    phi = wavefunction_on_grid(state, grid)
    dens = phi * phi
    dens = 0.5 * (dens + dens.T)
    return _field(grid, dens, "pair_density", grid.integrate2d(dens))


def same_well_fraction(density, split=0.0):
    """Probability mass with both particles on the same side of ``split``."""
    x = density.grid.x
    w = np.full(x.shape, density.grid.spacing)
    w[0] = w[-1] = 0.5 * density.grid.spacing
    # split the weight of a node lying exactly on the boundary evenly
    left = np.where(x < split, 1.0, np.where(x == split, 0.5, 0.0))
    right = 1.0 - left
    wl, wr = w * left, w * right
    vals = density.values
    same = wl @ vals @ wl + wr @ vals @ wr
    return float(same / density.norm)


def entanglement_entropy(decomp):
    """von Neumann entropy -sum lambda ln lambda of the occupancies."""
    lam = np.asarray(decomp.occupancies if hasattr(decomp, "occupancies") else decomp, float)
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log(lam)))
