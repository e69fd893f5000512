"""Independent brute-force references on uniform grids.

None of these routines touch the oscillator basis; they exist to check
the CI pipeline from the outside.
"""
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.sparse as sps
from scipy.interpolate import CubicSpline
from scipy.linalg import eigh, eigh_tridiagonal
from scipy.optimize import brentq
from scipy.sparse.linalg import ArpackNoConvergence, eigsh
from scipy.special import rgamma

from ._validation import check_finite, check_int
from .exceptions import ConfigurationError, NumericalError, UnsupportedError
from .grid import Grid
from .potentials import evaluate

EDGE_TOLERANCE = 1e-6
KERNEL_NORM_TOLERANCE = 1e-3
HARMONIC_DEFAULT_GRID = Grid(8.0, 801)


@dataclass(frozen=True)
class GridWavefunction2D:
    """Swap-symmetric phi(x_a, x_b) normalized so that h^2 sum phi^2 = 1."""

    values: np.ndarray
    grid: Grid

    @property
    def norm(self):
        return float(self.grid.spacing ** 2 * np.sum(self.values ** 2))


class SingleParticleStates(NamedTuple):
    energies: np.ndarray
    orbitals: np.ndarray  # n_states x M, h * sum u^2 = 1


class GridTwoParticle(NamedTuple):
    energies: np.ndarray
    states: list
    residuals: np.ndarray


class HarmonicReference(NamedTuple):
    energies: np.ndarray  # Richardson-extrapolated totals
    ground: GridWavefunction2D
    raw: np.ndarray  # totals at spacing h, h/2 (rows) before extrapolation


class Occupancies(NamedTuple):
    occupancies: np.ndarray
    k: np.ndarray


def _orient(u):
    # positive at the first node where the amplitude is non-negligible
    for row in u:
        big = np.flatnonzero(np.abs(row) > 1e-6 * np.abs(row).max())
        if big.size and row[big[0]] < 0:
            row *= -1.0
    return u


def grid_single_particle(potential, grid, n_states=2):
    """Lowest eigenpairs of -(1/2) D2 + V with Dirichlet walls (3-point stencil)."""
    n_states = check_int(n_states, "n_states", minimum=1)
    h = grid.spacing
    diag = 1.0 / h ** 2 + evaluate(potential, grid.x)
    off = np.full(grid.n_points - 1, -0.5 / h ** 2)
    e, v = eigh_tridiagonal(diag, off, select="i", select_range=(0, n_states - 1))
    u = _orient(v.T / math.sqrt(h))
    edge = np.max(np.abs(u[:, [1, -2]]))
    if edge > EDGE_TOLERANCE:
        warnings.warn(f"orbital amplitude {edge:.2e} near the grid edge; enlarge the grid",
                      RuntimeWarning, stacklevel=2)
    return SingleParticleStates(e, u)


def _relative_levels(g, grid, n_levels):
    """Even levels of -(1/2) d2/dr2 + r^2/2 + (g/sqrt2) delta(r) on the half line.

    Even parity is imposed by folding the mirror node onto r >= 0; the
    delta is a weight g/(sqrt2 h) on the r = 0 node. The folded matrix is
    made symmetric with the r = 0 node rescaled by sqrt(2).
    """
    h = grid.spacing
    r = grid.x[grid.n_points // 2:]
    n = r.size
    diag = 1.0 / h ** 2 + 0.5 * r * r
    diag[0] += g / math.sqrt(2.0) / h
    off = np.full(n - 1, -0.5 / h ** 2)
    off[0] *= math.sqrt(2.0)
    e, v = eigh_tridiagonal(diag, off, select="i", select_range=(0, n_levels - 1))
    v[0] *= math.sqrt(2.0)
    return e, r, v


def richardson(coarse, fine, order=2):
    """Extrapolate from spacings h and h/2 assuming error ~ h^order."""
    f = 2.0 ** order
    return (f * np.asarray(fine) - np.asarray(coarse)) / (f - 1.0)


def harmonic_relative_energy(g, level=0):
    """Exact even relative-motion level from the parabolic-cylinder matching condition.

    The even solution D_nu(sqrt2 |r|) satisfies the contact cusp when
    2 / Gamma(-nu/2) + (g/sqrt2) / Gamma((1-nu)/2) = 0, with E = nu + 1/2
    and nu in [2 level, 2 level + 1] for g >= 0.
    """
    g = check_finite(g, "g")
    if g < 0:
        raise UnsupportedError("closed-form relative levels implemented for g >= 0 only")
    lo, hi = 2.0 * level, 2.0 * level + 1.0
    if g == 0:
        return lo + 0.5
    gr = g / math.sqrt(2.0)
    f = lambda nu: 2.0 * rgamma(-0.5 * nu) + gr * rgamma(0.5 * (1.0 - nu))  # noqa: E731
    if f(hi) == 0.0:
        return hi + 0.5
    return brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps) + 0.5


def _check_harmonic(potential):
    if potential is not None and tuple(potential.coefficients) != (0.0, 0.0, 0.5):
        raise UnsupportedError("the exact-separation oracle requires the harmonic trap x^2/2")


def harmonic_exact_ground(g, grid=HARMONIC_DEFAULT_GRID, n_states=1, potential=None):
    """Two bosons in x^2/2 via centre-of-mass / relative separation.

    Centre of mass R = (x1+x2)/sqrt2 is a unit oscillator. The relative
    problem is solved on ``grid`` and its refinement and
    Richardson-extrapolated (the on-node contact weight is consistent to
    second order). Returns the lowest ``n_states`` total bosonic energies
    and the ground-state wavefunction on ``grid``.
    """
    _check_harmonic(potential)
    g = check_finite(g, "g")
    n_states = check_int(n_states, "n_states", minimum=1)
    raw = []
    for gr in (grid, grid.refined()):
        e_rel, r, v = _relative_levels(g, gr, n_states)
        com = np.arange(n_states) + 0.5
        totals = np.sort((com[:, None] + e_rel[None, :]).ravel())[:n_states]
        raw.append(totals)
    raw = np.array(raw)
    energies = richardson(raw[0], raw[1])

    # ground state on the requested grid from the refined relative solution
    chi = v[:, 0] / math.sqrt(2.0 * gr.spacing * np.sum(v[:, 0] ** 2) - gr.spacing * v[0, 0] ** 2)
    spline = CubicSpline(r, chi)
    xa, xb = np.meshgrid(grid.x, grid.x, indexing="ij")
    big_r = (xa + xb) / math.sqrt(2.0)
    rel = np.abs(xb - xa) / math.sqrt(2.0)
    inside = rel <= r[-1]
    chi_vals = np.zeros_like(rel)
    chi_vals[inside] = spline(rel[inside])
    phi = math.pi ** -0.25 * np.exp(-0.5 * big_r ** 2) * chi_vals
    phi = 0.5 * (phi + phi.T)
    phi /= math.sqrt(grid.spacing ** 2 * np.sum(phi ** 2))
    return HarmonicReference(energies, GridWavefunction2D(phi, grid), raw)


def tg_ground(potential, grid):
    """Tonks-Girardeau ground state |u0(a)u1(b) - u1(a)u0(b)| / sqrt2."""
    _, u = grid_single_particle(potential, grid, 2)
    phi = np.abs(np.outer(u[0], u[1]) - np.outer(u[1], u[0])) / math.sqrt(2.0)
    phi /= math.sqrt(grid.spacing ** 2 * np.sum(phi ** 2))
    return GridWavefunction2D(phi, grid)


def kernel_occupancies(psi, n=None):
    """Eigenvalues k of the discretized integral kernel h * phi; lambda = k^2 descending."""
    norm = psi.norm
    if abs(norm - 1.0) > KERNEL_NORM_TOLERANCE:
        raise ConfigurationError(f"wavefunction norm {norm:.6g} is not 1 within "
                                 f"{KERNEL_NORM_TOLERANCE:g}")
    kernel = psi.grid.spacing * psi.values
    k = eigh(0.5 * (kernel + kernel.T), eigvals_only=True)
    order = np.lexsort((-k, -(k * k)))
    k = k[order][:n]
    return Occupancies(k * k, k)


def _symmetric_projector(m):
    """Orthonormal columns spanning swap-symmetric vectors on an m x m grid."""
    a, b = np.triu_indices(m)
    cols = np.arange(a.size)
    diag = a == b
    rows = np.concatenate([a * m + b, (b * m + a)[~diag]])
    cc = np.concatenate([cols, cols[~diag]])
    vals = np.concatenate([np.where(diag, 1.0, 1.0 / math.sqrt(2.0)),
                           np.full((~diag).sum(), 1.0 / math.sqrt(2.0))])
    return sps.csr_matrix((vals, (rows, cc)), shape=(m * m, a.size))


def grid_two_particle(potential, g, grid, n_states=1):
    """Bosonic eigenstates of the full two-particle finite-difference Hamiltonian.

    Five-point Laplacian, V(x_a) + V(x_b) on the diagonal and g/h on the
    coincidence nodes x_a = x_b. The operator is restricted exactly to the
    swap-symmetric subspace and the lowest states come from shift-invert
    Lanczos about a lower bound of the spectrum.
    """
    g = check_finite(g, "g")
    n_states = check_int(n_states, "n_states", minimum=1)
    m, h = grid.n_points, grid.spacing
    if m > 401:
        raise ConfigurationError(f"grid_two_particle limited to <= 401 points per axis, got {m}")
    lap = sps.diags([np.full(m - 1, 1.0), np.full(m, -2.0), np.full(m - 1, 1.0)],
                    [-1, 0, 1]) / h ** 2
    one = -0.5 * lap + sps.diags(evaluate(potential, grid.x))
    eye = sps.identity(m)
    ham = sps.kron(one, eye) + sps.kron(eye, one)
    ham = ham + sps.diags((g / h) * np.eye(m).ravel())
    proj = _symmetric_projector(m)
    hs = (proj.T @ ham @ proj).tocsc()
    hs = 0.5 * (hs + hs.T)
    vmin = float(np.min(evaluate(potential, grid.x)))
    sigma = 2.0 * vmin - 1.0 - (abs(g) / h if g < 0 else 0.0)
    v0 = np.ones(hs.shape[0])
    try:
        e, vec = eigsh(hs, k=n_states, sigma=sigma, which="LM", v0=v0, tol=1e-12)
    except ArpackNoConvergence as exc:
        raise NumericalError(f"Lanczos did not converge: {exc}") from exc
    order = np.argsort(e)
    e, vec = e[order], vec[:, order]
    resid = np.linalg.norm(hs @ vec - vec * e, axis=0)
    if np.any(resid > 1e-6 * max(1.0, np.max(np.abs(e)))):
        raise NumericalError(f"grid eigenpair residuals too large: {resid}")
    states = []
    for col in range(n_states):
        phi = (proj @ vec[:, col]).reshape(m, m) / h
        phi = 0.5 * (phi + phi.T)
        if phi.sum() < 0:
            phi = -phi
        phi /= math.sqrt(h ** 2 * np.sum(phi ** 2))
        states.append(GridWavefunction2D(phi, grid))
    return GridTwoParticle(e, states, resid)
