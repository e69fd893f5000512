"""Interaction-strength sweeps and fragmentation-crossover search."""
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Optional

import numpy as np

from .exceptions import BosonCIError, BracketError, ConfigurationError
from .hamiltonian import ProblemSpec
from .orbitals import entanglement_entropy, schmidt
from .solver import OmegaSearchConfig, solve

N_REPORTED_OCCUPANCIES = 3


@dataclass(frozen=True)
class PointResult:
    g: float
    energies: np.ndarray
    occupancies: np.ndarray
    k: np.ndarray
    entropy: float
    omega: float
    K: int
    status: str = "ok"
    metadata: dict = field(default_factory=dict)

    @property
    def D(self):
        return self.K * (self.K + 1) // 2

    @property
    def gap(self):
        """lambda_0 - lambda_1 of the ground state."""
        return float(self.occupancies[0] - self.occupancies[1]) if self.K > 1 else 1.0


def solve_point(potential, g, K, n_states=1, omega=None, config=None):
    """Ground-state observables at one interaction strength."""
    problem = ProblemSpec(potential, g, K)
    n_states = min(n_states, problem.K * (problem.K + 1) // 2)
    spec = solve(problem, n_states, config, omega)
    decomp = schmidt(spec.state(0))
    return PointResult(float(g), spec.energies, decomp.occupancies, decomp.k,
                       entanglement_entropy(decomp), spec.omega, K,
                       metadata=dict(spec.metadata))


def _safe_point(g, potential, K, n_states, omega, config):
    try:
        return solve_point(potential, g, K, n_states, omega, config)
    except BosonCIError as exc:
        nan = np.full(n_states, np.nan)
        return PointResult(float(g), nan, np.full(max(K, 3), np.nan), np.full(max(K, 3), np.nan),
                           float("nan"), float("nan"), K,
                           status=f"error: {type(exc).__name__}: {exc}".replace(",", ";"))


def g_values(g_min, g_max, n_points, spacing="linear"):
    """Ascending grid of interaction strengths; log spacing may start at 0."""
    if n_points < 1:
        raise ConfigurationError("g-range needs at least one point")
    if g_max < g_min:
        raise ConfigurationError(f"empty g-range [{g_min}, {g_max}]")
    if n_points == 1:
        return np.array([float(g_min)])
    if spacing == "linear":
        return np.linspace(g_min, g_max, n_points)
    if spacing == "log":
        if g_max <= 0:
            raise ConfigurationError("log spacing needs g_max > 0")
        if g_min > 0:
            return np.geomspace(g_min, g_max, n_points)
        # keep g = 0 as the first point and log-space the rest
        return np.concatenate([[0.0], np.geomspace(g_max * 1e-6, g_max, n_points - 1)])
    raise ConfigurationError(f"unknown spacing {spacing!r}")


def sweep(potential, gs, K, n_states=1, omega=None, config=None, workers=1):
    """One :class:`PointResult` per g, in ascending-g order.

    Points are independent; with ``workers > 1`` they run in separate
    processes and are collected in input order, so output is identical to
    a serial run.
    """
    gs = np.sort(np.asarray(gs, dtype=float))
    job = partial(_safe_point, potential=potential, K=K, n_states=n_states,
                  omega=omega, config=config)
    if workers and workers > 1 and len(gs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(job, gs))
    return [job(g) for g in gs]


@dataclass(frozen=True)
class Crossover:
    g_cr: float
    g_lo: float
    g_hi: float
    gap_lo: float
    gap_hi: float
    threshold: float
    iterations: int


def find_crossover(potential, K, g_lo, g_hi, threshold=0.05, log_scale=None,
                   rtol=1e-4, max_iter=60, omega=None,
                   config: Optional[OmegaSearchConfig] = None, samples=None):
    """Bisection for lambda_0(g) - lambda_1(g) = threshold inside [g_lo, g_hi].

    The gap must exceed ``threshold`` at ``g_lo`` and fall below it at
    ``g_hi``. Bisection runs in log g when ``log_scale`` (default: when
    g_lo > 0 and the bracket spans more than a decade).
    """
    if not 0 <= g_lo < g_hi:
        raise ConfigurationError(f"crossover bracket must satisfy 0 <= g_lo < g_hi, got "
                                 f"[{g_lo}, {g_hi}]")
    if log_scale is None:
        log_scale = g_lo > 0 and g_hi / g_lo > 10
    if log_scale and g_lo <= 0:
        raise ConfigurationError("log-scale bisection needs g_lo > 0")

    def gap(g):
        return solve_point(potential, g, K, 1, omega, config).gap

    f_lo, f_hi = gap(g_lo), gap(g_hi)
    trail = list(samples or []) + [(g_lo, f_lo), (g_hi, f_hi)]
    if not (f_lo > threshold > f_hi):
        raise BracketError(f"lambda_0 - lambda_1 does not cross {threshold} in "
                           f"[{g_lo:.6g}, {g_hi:.6g}] (gaps {f_lo:.6g}, {f_hi:.6g})", trail)
    it = 0
    while it < max_iter and (g_hi - g_lo) > rtol * g_hi:
        g_mid = math.sqrt(g_lo * g_hi) if log_scale else 0.5 * (g_lo + g_hi)
        f_mid = gap(g_mid)
        if f_mid > threshold:
            g_lo, f_lo = g_mid, f_mid
        else:
            g_hi, f_hi = g_mid, f_mid
        it += 1
    # linear interpolation of the gap inside the final bracket
    t = (f_lo - threshold) / (f_lo - f_hi)
    return Crossover(g_lo + t * (g_hi - g_lo), g_lo, g_hi, f_lo, f_hi, threshold, it)


def crossover_from_sweep(potential, gs, K, threshold=0.05, **kwargs):
    """Bracket the crossover on a coarse g grid, then bisect."""
    gs = np.sort(np.asarray(gs, dtype=float))
    rows = [(g, solve_point(potential, g, K, 1, kwargs.get("omega"), kwargs.get("config")).gap)
            for g in gs]
    for (g0, f0), (g1, f1) in zip(rows, rows[1:]):
        if f0 > threshold >= f1:
            log_scale = kwargs.pop("log_scale", None)
            if log_scale is None:
                log_scale = g0 > 0 and g1 / g0 > 1.5
            return find_crossover(potential, K, g0, g1, threshold, log_scale=log_scale,
                                  samples=rows, **kwargs)
    raise BracketError(f"lambda_0 - lambda_1 never drops below {threshold} on the sweep grid",
                       rows)
