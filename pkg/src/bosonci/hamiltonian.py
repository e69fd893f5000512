"""Two-boson Hamiltonian in the symmetrized oscillator pair basis.

Pair states are psi_ij = b_ij [phi_i(x1) phi_j(x2) + phi_j(x1) phi_i(x2)]
with b_ii = 1/2 and b_ij = 1/sqrt(2) otherwise, for 0 <= i <= j < K.
"""
import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_finite, check_index, check_int
from .ho_basis import BasisSet, hermite_functions, one_body_matrix, quadrature
from .exceptions import ConfigurationError

#: Above this cutoff the dense four-index tensor is refused; use the
#: on-the-fly accessors of :class:`InteractionTensor` instead.
DENSE_TENSOR_MAX_SIZE = 80


@dataclass(frozen=True)
class ProblemSpec:
    potential: object
    g: float
    K: int

    def __post_init__(self):
        object.__setattr__(self, "g", check_finite(self.g, "g"))
        check_int(self.K, "K", minimum=1)

    def basis(self, omega):
        return BasisSet(omega, self.K)


class PairBasis:
    """Lexicographic enumeration of pairs (i, j), i <= j < K."""

    def __init__(self, K):
        self.K = check_int(K, "K", minimum=1)
        self.first, self.second = np.triu_indices(self.K)
        self.norms = np.where(self.first == self.second, 0.5, 1.0 / math.sqrt(2.0))

    @property
    def dimension(self):
        return self.K * (self.K + 1) // 2

    def __len__(self):
        return self.dimension

    def pairs(self):
        return list(zip(self.first.tolist(), self.second.tolist()))

    def index(self, i, j):
        i = check_index(i, self.K, "i")
        j = check_index(j, self.K, "j")
        if i > j:
            i, j = j, i
        # rows 0..i-1 of the upper triangle hold K + (K-1) + ... entries
        return i * self.K - i * (i - 1) // 2 + (j - i)


def pair_index(basis, i, j):
    return basis.index(i, j)


class InteractionTensor:
    """W_ijmn = integral of phi_i phi_j phi_m phi_n over x.

    The quartic product carries the Gaussian exp(-2 omega x^2); after
    substituting t = sqrt(2 omega) x the rest is a polynomial of degree
    <= 4(K-1), integrated exactly by Gauss-Hermite with enough nodes.
    Only the basis sampled at the nodes is stored (K x M), so every
    permutation of indices is served from the same data; the dense
    four-index array is materialized on request.
    """

    def __init__(self, basis, n_nodes=None):
        self.basis = basis
        k = basis.size
        m = 2 * k + 2 if n_nodes is None else check_int(n_nodes, "n_nodes", minimum=1)
        if m < 2 * k + 1:
            raise ConfigurationError(
                f"interaction quadrature needs at least {2 * k + 1} nodes for K={k}, got {m}")
        rule = quadrature(m)
        self.n_nodes = m
        # unit-frequency Hermite functions at y = t / sqrt(2)
        self._samples = hermite_functions(k, rule.nodes / math.sqrt(2.0))
        self._weights = rule.scaled_weights * math.sqrt(basis.omega / 2.0)

    def element(self, i, j, m, n):
        if (i + j + m + n) % 2:
            return 0.0
        s = self._samples
        return float(np.sum(self._weights * s[i] * s[j] * s[m] * s[n]))

    def __getitem__(self, idx):
        return self.element(*idx)

    def full(self):
        k = self.basis.size
        if k > DENSE_TENSOR_MAX_SIZE:
            raise ConfigurationError(
                f"dense interaction tensor refused for K={k} > {DENSE_TENSOR_MAX_SIZE}; "
                "use pair_matrix() or element()")
        prod = (self._samples[:, None, :] * self._samples[None, :, :]).reshape(k * k, -1)
        out = ((prod * self._weights) @ prod.T).reshape(k, k, k, k)
        i, j, m, n = np.ogrid[:k, :k, :k, :k]
        out[(i + j + m + n) % 2 == 1] = 0.0
        return out

    def pair_matrix(self, pairs):
        """W_{(n,m),(i,j)} over all pairs of ``pairs`` (a :class:`PairBasis`)."""
        prod = self._samples[pairs.first] * self._samples[pairs.second]
        out = (prod * self._weights) @ prod.T
        par = (pairs.first + pairs.second) % 2
        out[par[:, None] != par[None, :]] = 0.0  # odd integrands vanish exactly
        return 0.5 * (out + out.T)

    def density_overlaps(self):
        """K x K matrix of W_nnmm = integral of phi_n^2 phi_m^2."""
        sq = self._samples ** 2
        return (sq * self._weights) @ sq.T


def interaction_tensor(basis, n_nodes=None):
    return InteractionTensor(basis, n_nodes)


def one_body_part(problem, omega, pairs=None):
    """Pair-basis matrix of h(x1) + h(x2).

    <psi_nm|h1+h2|psi_ij> = 2 b_nm b_ij (h_ni d_mj + h_mj d_ni + h_nj d_mi + h_mi d_nj)
    """
    pairs = pairs or PairBasis(problem.K)
    h = one_body_matrix(problem.basis(omega), problem.potential)
    n, m = pairs.first, pairs.second
    eq = lambda u, v: u[:, None] == v[None, :]  # noqa: E731
    out = (h[np.ix_(n, n)] * eq(m, m) + h[np.ix_(m, m)] * eq(n, n)
           + h[np.ix_(n, m)] * eq(m, n) + h[np.ix_(m, n)] * eq(n, m))
    out *= 2.0 * np.outer(pairs.norms, pairs.norms)
    return 0.5 * (out + out.T)


def interaction_part(problem, omega, pairs=None, tensor=None):
    """Pair-basis matrix of delta(x2 - x1): 4 b_nm b_ij W_nmij."""
    pairs = pairs or PairBasis(problem.K)
    tensor = tensor or InteractionTensor(problem.basis(omega))
    return 4.0 * np.outer(pairs.norms, pairs.norms) * tensor.pair_matrix(pairs)


def assemble(problem, omega):
    """Dense, exactly symmetric D x D Hamiltonian at frequency ``omega``."""
    pairs = PairBasis(problem.K)
    h = one_body_part(problem, omega, pairs)
    if problem.g != 0.0:
        h = h + problem.g * interaction_part(problem, omega, pairs)
    # both parts are symmetrized; enforce bitwise symmetry of the sum too
    upper = np.triu(h)
    return upper + np.triu(h, 1).T


def trace_of_truncation(problem, omega):
    """Trace of the truncated pair-basis Hamiltonian in O(K^2).

    Diagonal one-body entries are h_nn + h_mm for every pair, so the
    one-body sum is (K + 1) tr(h). Diagonal contact entries are W_nnnn for
    n = m and 2 W_nnmm otherwise, which sums to the full K x K sum of W_nnmm.
    """
    basis = problem.basis(omega)
    h = one_body_matrix(basis, problem.potential)
    total = (problem.K + 1) * float(np.trace(h))
    if problem.g != 0.0:
        total += problem.g * float(InteractionTensor(basis).density_overlaps().sum())
    return total
