"""scikit-learn compatible front end.

:class:`OptimizedCI` is a transformer whose input is a column of
interaction strengths and whose output is the per-g feature row
(energies, leading occupancies, entropy, omega). ``fit`` solves the
reference problem at ``g`` and exposes the usual fitted attributes.
"""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .exceptions import ConfigurationError
from .hamiltonian import ProblemSpec
from .orbitals import entanglement_entropy, schmidt
from .potentials import from_config
from .solver import OmegaSearchConfig, solve
from .sweep import N_REPORTED_OCCUPANCIES, sweep


class OptimizedCI(TransformerMixin, BaseEstimator):
    """Two bosons with contact interaction in a polynomial trap.

    Parameters
    ----------
    potential : str, default="harmonic"
        One of ``"harmonic"``, ``"double_well"``, ``"triple_well"`` or
        ``"custom"``.
    a : float, optional
        Shape parameter of the multi-well traps.
    coefficients : sequence of float, optional
        Polynomial coefficients c_0, c_1, ... for ``potential="custom"``.
    g : float, default=0.0
        Interaction strength used by :meth:`fit`.
    K : int, default=20
        Number of one-particle oscillator functions.
    n_states : int, default=3
        Number of eigenstates retained.
    omega : "auto" or float, default="auto"
        Basis frequency; ``"auto"`` makes the truncated trace stationary.
    omega_bracket : tuple of float, default=(1e-3, 1e3)
        Search interval for the automatic frequency.
    tol : float, default=1e-8
        Relative tolerance on the optimized frequency.
    n_jobs : int, default=1
        Worker processes used by :meth:`transform`.

    Attributes
    ----------
    spectrum_ : SpectrumResult
    omega_ : float
    energies_ : ndarray of shape (n_states,)
    occupancies_ : ndarray of shape (K,)
        Ground-state natural-orbital occupancies, descending.
    schmidt_ : SchmidtDecomposition
    entropy_ : float
    """

    def __init__(self, potential="harmonic", a=None, coefficients=None, g=0.0, K=20,
                 n_states=3, omega="auto", omega_bracket=(1e-3, 1e3), tol=1e-8, n_jobs=1):
        self.potential = potential
        self.a = a
        self.coefficients = coefficients
        self.g = g
        self.K = K
        self.n_states = n_states
        self.omega = omega
        self.omega_bracket = omega_bracket
        self.tol = tol
        self.n_jobs = n_jobs

    def _potential(self):
        return from_config(self.potential, self.a, self.coefficients)

    def _omega(self):
        if isinstance(self.omega, str):
            if self.omega != "auto":
                raise ConfigurationError(f"omega must be 'auto' or a positive number, "
                                         f"got {self.omega!r}")
            return None
        return float(self.omega)

    def _search(self):
        lo, hi = self.omega_bracket
        return OmegaSearchConfig(lower=lo, upper=hi, rtol=self.tol)

    def fit(self, X=None, y=None):
        """Solve at ``self.g``. ``X`` is accepted for pipeline compatibility."""
        if X is not None:
            self._check_g_column(X, reset=True)
        problem = ProblemSpec(self._potential(), self.g, self.K)
        self.spectrum_ = solve(problem, self.n_states, self._search(), self._omega())
        self.omega_ = self.spectrum_.omega
        self.energies_ = self.spectrum_.energies
        self.schmidt_ = schmidt(self.spectrum_.state(0))
        self.occupancies_ = self.schmidt_.occupancies
        self.entropy_ = entanglement_entropy(self.schmidt_)
        return self

    def _check_g_column(self, X, reset=False):
        X = check_array(X, ensure_2d=True, dtype=np.float64)
        if X.shape[1] != 1:
            raise ValueError(f"X must hold a single column of interaction strengths, "
                             f"got {X.shape[1]} columns")
        if reset:
            self.n_features_in_ = 1
        return X[:, 0]

    def transform(self, X):
        """Feature row per interaction strength in ``X`` (shape (n, 1))."""
        check_is_fitted(self, "spectrum_")
        gs = self._check_g_column(X)
        order = np.argsort(gs, kind="stable")
        points = sweep(self._potential(), gs[order], self.K, self.n_states,
                       self._omega(), self._search(), workers=self.n_jobs)
        out = np.empty((len(gs), len(self.get_feature_names_out())))
        for idx, p in zip(order, points):
            occ = np.full(N_REPORTED_OCCUPANCIES, 0.0)
            occ[:min(len(p.occupancies), N_REPORTED_OCCUPANCIES)] = \
                p.occupancies[:N_REPORTED_OCCUPANCIES]
            out[idx] = np.concatenate([p.energies, occ, [p.entropy, p.omega]])
        return out

    def predict(self, X):
        """Ground-state energy for each interaction strength in ``X``."""
        return self.transform(X)[:, 0]

    def get_feature_names_out(self, input_features=None):
        n = min(self.n_states, self.K * (self.K + 1) // 2)
        return np.array([f"E_{s}" for s in range(n)]
                        + [f"lambda_{l}" for l in range(N_REPORTED_OCCUPANCIES)]
                        + ["entropy", "omega"], dtype=object)
