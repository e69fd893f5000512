"""Optimized Rayleigh-Ritz solve: pick omega, diagonalize, package the spectrum."""
import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
from scipy.linalg import LinAlgError, eigh
from scipy.optimize import minimize_scalar

from ._validation import check_int, check_positive
from .exceptions import BracketError, ConfigurationError, NumericalError
from .hamiltonian import PairBasis, assemble, trace_of_truncation

log = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-9


@dataclass(frozen=True)
class OmegaSearchConfig:
    lower: float = 1e-3
    upper: float = 1e3
    rtol: float = 1e-8
    max_iter: int = 500
    n_scan: int = 41

    def __post_init__(self):
        check_positive(self.lower, "lower")
        check_positive(self.upper, "upper")
        check_positive(self.rtol, "rtol")
        check_int(self.max_iter, "max_iter", minimum=1)
        check_int(self.n_scan, "n_scan", minimum=3)
        if not self.lower < self.upper:
            raise ConfigurationError(
                f"omega bracket must satisfy lower < upper, got [{self.lower}, {self.upper}]")


class OmegaOptimum(NamedTuple):
    omega: float
    trace: float
    iterations: int


@dataclass(frozen=True)
class CIState:
    """One CI eigenstate: symmetric coefficient matrix a_ij on a basis of frequency omega."""

    coefficients: np.ndarray
    omega: float
    energy: float = float("nan")

    @property
    def K(self):
        return self.coefficients.shape[0]


@dataclass
class SpectrumResult:
    omega: float
    energies: np.ndarray
    vectors: np.ndarray  # D x n_states, pair-basis eigenvectors
    K: int
    metadata: dict = field(default_factory=dict)

    @property
    def D(self):
        return self.K * (self.K + 1) // 2

    @property
    def n_states(self):
        return len(self.energies)

    @property
    def coefficients(self):
        """a^(s)_ij for every retained state, shape (n_states, K, K)."""
        pairs = PairBasis(self.K)
        out = np.zeros((self.n_states, self.K, self.K))
        out[:, pairs.first, pairs.second] = self.vectors.T
        out[:, pairs.second, pairs.first] = self.vectors.T
        return out

    def state(self, s=0):
        return CIState(self.coefficients[s], self.omega, float(self.energies[s]))


def optimize_omega(problem, config=None):
    """Frequency at which the truncated trace is stationary (a minimum).

    A coarse log-spaced scan locates the basin, then bounded Brent
    minimization in log(omega) refines it to ``config.rtol``.
    """
    config = config or OmegaSearchConfig()
    grid = np.linspace(math.log(config.lower), math.log(config.upper), config.n_scan)
    samples = [(math.exp(s), trace_of_truncation(problem, math.exp(s))) for s in grid]
    values = np.array([v for _, v in samples])
    if not np.all(np.isfinite(values)):
        raise NumericalError("non-finite trace encountered during omega scan")
    best = int(np.argmin(values))
    if best in (0, len(grid) - 1):
        raise BracketError(
            f"trace has no interior minimum in [{config.lower}, {config.upper}] "
            f"(smallest sample at omega={samples[best][0]:.6g})", samples)
    res = minimize_scalar(lambda s: trace_of_truncation(problem, math.exp(s)),
                          bounds=(grid[best - 1], grid[best + 1]), method="bounded",
                          options={"xatol": config.rtol, "maxiter": config.max_iter})
    if not res.success:
        raise NumericalError(f"omega minimization did not converge: {res.message}")
    omega = math.exp(res.x)
    log.debug("optimized omega=%.12g trace=%.12g after %d evaluations", omega, res.fun, res.nfev)
    return OmegaOptimum(omega, float(res.fun), int(res.nfev) + config.n_scan)


def _fix_signs(vectors):
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def diagonalize(problem, omega, n_states=1):
    """Lowest ``n_states`` eigenpairs of the assembled Hamiltonian at ``omega``."""
    omega = check_positive(omega, "omega")
    dim = problem.K * (problem.K + 1) // 2
    n_states = check_int(n_states, "n_states", minimum=1)
    if n_states > dim:
        raise ConfigurationError(f"n_states={n_states} exceeds pair dimension D={dim}")
    h = assemble(problem, omega)
    try:
        energies, vectors = eigh(h, subset_by_index=[0, n_states - 1], driver="evr")
    except (LinAlgError, ValueError) as exc:
        raise NumericalError(f"eigensolver failed on {dim}x{dim} matrix "
                             f"(max |H|={np.max(np.abs(h)):.3e}): {exc}") from exc
    vectors = _fix_signs(vectors)
    norm = np.max(np.sum(np.abs(h), axis=1))
    resid = np.max(np.abs(h @ vectors - vectors * energies), axis=0)
    if np.any(resid > RESIDUAL_TOLERANCE * norm):
        raise NumericalError(f"eigenpair residuals {resid.max():.3e} exceed "
                             f"{RESIDUAL_TOLERANCE:g} * ||H||_inf = {RESIDUAL_TOLERANCE * norm:.3e}")
    return SpectrumResult(omega, energies, vectors, problem.K,
                          {"max_residual": float(resid.max()), "norm_inf": float(norm)})


def solve(problem, n_states=1, config=None, omega: Optional[float] = None):
    """Optimize omega (unless ``omega`` is given) and diagonalize."""
    if omega is None:
        opt = optimize_omega(problem, config)
        result = diagonalize(problem, opt.omega, n_states)
        result.metadata.update(omega_mode="auto", trace=opt.trace, iterations=opt.iterations)
    else:
        result = diagonalize(problem, omega, n_states)
        result.metadata.update(omega_mode="fixed", trace=trace_of_truncation(problem, omega),
                               iterations=0)
    return result
