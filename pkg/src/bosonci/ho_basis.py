"""Harmonic-oscillator basis of adjustable frequency.

phi_i(x) = (sqrt(omega) / (sqrt(pi) 2^i i!))^(1/2) H_i(sqrt(omega) x) exp(-omega x^2 / 2)

Matrix elements are built from ladder-operator algebra; quadrature is
Gauss-Hermite from the Golub-Welsch eigenproblem.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

from ._validation import check_index, check_int, check_positive
from .exceptions import ConfigurationError

#: Largest polynomial degree accepted by :func:`potential_matrix`.
MAX_POTENTIAL_DEGREE = 16


@dataclass(frozen=True)
class BasisSet:
    """One-particle basis phi_0 .. phi_{size-1} with frequency ``omega``."""

    omega: float
    size: int

    def __post_init__(self):
        object.__setattr__(self, "omega", check_positive(self.omega, "omega"))
        check_int(self.size, "size", minimum=1)

    @property
    def length_scale(self):
        return 1.0 / math.sqrt(self.omega)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Hermite rule for the weight exp(-t^2).

    ``scaled_weights`` are ``weights * exp(nodes**2)``; they stay O(1) for
    every node and are what integrands already carrying their Gaussian
    factor should be paired with.
    """

    nodes: np.ndarray
    weights: np.ndarray
    scaled_weights: np.ndarray

    def __len__(self):
        return len(self.nodes)


def hermite_values(n_max, t):
    """Physicists' Hermite polynomials H_0(t) .. H_{n_max}(t).

    Works elementwise on array ``t``; the leading axis indexes the degree.
    """
    check_int(n_max, "n_max")
    t = np.asarray(t, dtype=float)
    out = np.empty((n_max + 1,) + t.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2.0 * t
    for n in range(1, n_max):
        out[n + 1] = 2.0 * t * out[n] - 2.0 * n * out[n - 1]
    return out


def hermite_functions(n, y):
    """Orthonormal Hermite functions psi_0(y) .. psi_{n-1}(y) (unit frequency).

    The normalized three-term recurrence never forms H_i or i! explicitly,
    so it is overflow-free for any degree.
    """
    y = np.asarray(y, dtype=float)
    out = np.empty((n,) + y.shape)
    out[0] = math.pi ** -0.25 * np.exp(-0.5 * y * y)
    if n > 1:
        out[1] = math.sqrt(2.0) * y * out[0]
    for k in range(1, n - 1):
        out[k + 1] = (math.sqrt(2.0 / (k + 1)) * y * out[k]
                      - math.sqrt(k / (k + 1)) * out[k - 1])
    return out


def ho_functions(basis, x):
    """All basis functions sampled at ``x``; shape ``(basis.size,) + x.shape``."""
    x = np.asarray(x, dtype=float)
    root = math.sqrt(basis.omega)
    return math.sqrt(root) * hermite_functions(basis.size, root * x)


def ho_eval(basis, i, x):
    """phi_i(x) with the normalization taken in log space.

    Direct evaluation of the closed form; :func:`ho_functions` is the
    vectorized path used internally.
    """
    check_index(i, basis.size, "i")
    x = np.asarray(x, dtype=float)
    y = math.sqrt(basis.omega) * x
    log_norm = 0.5 * (0.5 * math.log(basis.omega) - 0.5 * math.log(math.pi)
                      - i * math.log(2.0) - gammaln(i + 1))
    with np.errstate(over="ignore", invalid="ignore"):
        h = hermite_values(i, y)[i]
        # split the Gaussian across the polynomial to delay overflow
        val = (h * np.exp(log_norm - 0.25 * y * y)) * np.exp(-0.25 * y * y)
    if not np.all(np.isfinite(val)):
        val = np.where(np.isfinite(val), val, ho_functions(basis, x)[i])
    return val if val.ndim else float(val)


def gauss_hermite(n_nodes):
    """M-point Gauss-Hermite rule by Golub-Welsch.

    Nodes are eigenvalues of the Jacobi matrix with off-diagonal
    sqrt(k/2). Weights come from the Christoffel function evaluated with
    the normalized recurrence, which keeps full relative accuracy for the
    outermost nodes where eigenvector components underflow.
    """
    m = check_int(n_nodes, "n_nodes", minimum=1)
    if m == 1:
        return QuadratureRule(np.zeros(1), np.array([math.sqrt(math.pi)]),
                              np.array([math.sqrt(math.pi)]))
    off = np.sqrt(np.arange(1, m) / 2.0)
    nodes = eigh_tridiagonal(np.zeros(m), off, eigvals_only=True)
    nodes = 0.5 * (nodes - nodes[::-1])  # exact symmetry
    psi = hermite_functions(m, nodes)
    scaled = 1.0 / np.sum(psi * psi, axis=0)
    weights = scaled * np.exp(-nodes * nodes)
    return QuadratureRule(nodes, weights, scaled)


def position_matrix(omega, size):
    """Tridiagonal x operator: X_{i,i+1} = sqrt((i+1) / (2 omega))."""
    off = np.sqrt(np.arange(1, size) / (2.0 * omega))
    return np.diag(off, 1) + np.diag(off, -1)


def kinetic_matrix(basis):
    """-(1/2) d^2/dx^2 in the basis: pentadiagonal with stride-2 couplings."""
    k, om = basis.size, basis.omega
    n = np.arange(k)
    t = np.diag(om * (2 * n + 1) / 4.0)
    if k > 2:
        j = np.arange(k - 2)
        off = -om / 4.0 * np.sqrt((j + 1.0) * (j + 2.0))
        t[j, j + 2] = off
        t[j + 2, j] = off
    return t


def potential_matrix(basis, potential):
    """Exact <phi_i|V|phi_j> via powers of a padded position matrix.

    x^k only couples indices differing by at most k, so computing the
    powers in a basis padded by the polynomial degree and truncating back
    leaves no truncation error.
    """
    p = potential.degree
    if p > MAX_POTENTIAL_DEGREE:
        raise ConfigurationError(
            f"potential degree {p} exceeds the supported maximum {MAX_POTENTIAL_DEGREE}")
    n = basis.size + p
    x = position_matrix(basis.omega, n)
    acc = np.zeros((n, n))
    power = np.eye(n)
    for k, c in enumerate(potential.coefficients):
        if k:
            power = power @ x
        if c:
            acc += c * power
    v = acc[:basis.size, :basis.size]
    return 0.5 * (v + v.T)


def one_body_matrix(basis, potential):
    """Single-particle Hamiltonian T + V."""
    return kinetic_matrix(basis) + potential_matrix(basis, potential)


class QuadratureCache:
    """Memoizes Gauss-Hermite rules by node count (rules are immutable)."""

    def __init__(self):
        self._rules = {}

    def __call__(self, n_nodes):
        rule = self._rules.get(n_nodes)
        if rule is None:
            rule = self._rules[n_nodes] = gauss_hermite(n_nodes)
        return rule


quadrature = QuadratureCache()
