"""Model assembly: disorder draws, the interaction Hamiltonian, the pairwise
swap kick, and the one-period Floquet operator U = exp(-iK) exp(-iH).

The interaction part is a disordered long-range chain with open boundaries,

    H = -J * sum_k (XX+YY)_k,k+1 + sum_{k<q} V_kq z_k z_q + sum_k h_k z_k,

with V_kq = Vraw_kq / (N_{L,alpha} |k-q|^alpha) and Kac constant N_{L,alpha}.
The kick rotates every pair (2p, 2p+1) by the swap angle pi/4 + epsilon
(s=1/2) or pi/2 + epsilon (s=1); at epsilon = 0 it is an exact pairwise swap
up to a global phase, which is kept rather than stripped.
"""

import math
from dataclasses import dataclass

import numpy as np

from .basis import hopping_matrix, pair_swap_permutation


@dataclass(frozen=True)
class ModelParams:
    """Chain and drive parameters; V and h default to the strong-disorder values."""

    L: int
    s: float = 0.5
    J: float = 0.0
    V: float = 3.0
    h: float = 16.0
    alpha: float = 0.5
    epsilon: float = 0.0

    def __post_init__(self):
        if self.L <= 0 or self.L % 2:
            raise ValueError(f"L must be even and positive, got {self.L}")
        if self.s not in (0.5, 1.0):
            raise ValueError(f"local spin must be 0.5 or 1, got {self.s}")
        if self.J < 0 or self.V < 0 or self.h < 0:
            raise ValueError("J, V and h must be nonnegative")
        if self.alpha < 0:
            raise ValueError(f"alpha must be nonnegative, got {self.alpha}")

    @property
    def d(self):
        """Local Hilbert-space dimension."""
        return int(2 * self.s + 1)

    @property
    def kick_angle(self):
        """Per-pair kick angle: pi/4 + epsilon for s=1/2, pi/2 + epsilon for s=1."""
        base = math.pi / 4 if self.s == 0.5 else math.pi / 2
        return base + self.epsilon


@dataclass(frozen=True, eq=False)
class DisorderRealization:
    """One draw of couplings and fields.

    `couplings` is strictly upper triangular and already carries the Kac
    and power-law distance factors; `seed` reproduces the draw exactly.
    """

    couplings: np.ndarray
    fields: np.ndarray
    seed: int

    @property
    def L(self):
        return self.fields.size


def kac_constant(L, alpha):
    """Kac normalization keeping the coupling energy extensive for alpha <= 1."""
    if L < 2:
        raise ValueError(f"need L >= 2, got {L}")
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    if alpha > 1:
        return 1.0
    if alpha == 1:
        return math.log(L)
    return float(L) ** (1.0 - alpha)


def draw_disorder(params, seed):
    """Sample raw couplings from [V/2, 3V/2] and fields from [-h, h].

    Deterministic in `seed`: couplings are drawn first, in row-major upper
    triangular order, then the fields.  The returned couplings are the raw
    values divided by N_{L,alpha} |k-q|^alpha.
    """
    L = params.L
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    rows, cols = np.triu_indices(L, k=1)
    raw = rng.uniform(params.V / 2, 3 * params.V / 2, size=rows.size)
    fields = rng.uniform(-params.h, params.h, size=L)
    decay = (cols - rows).astype(np.float64) ** params.alpha
    couplings = np.zeros((L, L))
    couplings[rows, cols] = raw / (kac_constant(L, params.alpha) * decay)
    return DisorderRealization(couplings=couplings, fields=fields, seed=int(seed))


def _check_match(params, basis):
    if basis.L != params.L or basis.s != params.s:
        raise ValueError(
            f"basis (L={basis.L}, s={basis.s}) does not match params (L={params.L}, s={params.s})"
        )


def diagonal_energies(params, realization, basis):
    """Classical energies sum_{k<q} V_kq z_k z_q + sum_k h_k z_k per basis state."""
    _check_match(params, basis)
    if realization.L != params.L:
        raise ValueError(f"realization has L={realization.L}, params have L={params.L}")
    z = basis.configs.astype(np.float64)
    return np.einsum("nk,kq,nq->n", z, realization.couplings, z) + z @ realization.fields


def build_h_int(params, realization, basis):
    """Dense Hermitian interaction Hamiltonian in the sector basis.

    The ZZ and field parts are diagonal; the -J*(XX+YY) exchange connects
    configurations differing by one neighbor move.  Real symmetric.
    """
    H = np.diag(diagonal_energies(params, realization, basis))
    if params.J != 0.0:
        for bond in range(params.L - 1):
            H -= params.J * hopping_matrix(basis, bond)
    return H


def _kick_coefficients(params):
    """Scalars (a, b) of the per-pair kick factor a*1 + b*P, P the pair swap."""
    if params.s == 0.5:
        theta = params.kick_angle
        a = np.exp(1j * theta) * np.cos(2 * theta)
        b = -1j * np.exp(1j * theta) * np.sin(2 * theta)
    else:
        phi = params.kick_angle
        a = np.exp(-1j * phi) * np.cos(phi)
        b = -1j * np.exp(-1j * phi) * np.sin(phi)
    return a, b


def apply_kick(params, basis, matrix):
    """Left-multiply `matrix` by the kick unitary, one analytic pair factor at a time.

    Each factor costs O(dim^2) as a row permutation plus an axpy; the
    factors commute (disjoint pair supports) so application order is free.
    """
    _check_match(params, basis)
    a, b = _kick_coefficients(params)
    out = np.asarray(matrix, dtype=np.complex128)
    for pair in range(basis.n_pairs):
        perm = pair_swap_permutation(basis, pair)
        out = a * out + b * out[perm, :]
    return out


def build_kick_unitary(params, basis):
    """Dense kick unitary exp(-iK) from the analytic per-pair closed form."""
    return apply_kick(params, basis, np.eye(basis.dim, dtype=np.complex128))


def kick_global_phase(params):
    """Phase angle g with exp(-iK) = exp(-ig) * (global pairwise swap), epsilon = 0 only."""
    if params.epsilon != 0.0:
        raise ValueError("the kick is a pure phase times a swap only at epsilon = 0")
    per_pair = math.pi / 4 if params.s == 0.5 else math.pi
    return (params.L // 2) * per_pair


@dataclass(frozen=True, eq=False)
class FloquetOperator:
    """One-period propagator with the inputs that produced it."""

    matrix: np.ndarray
    params: ModelParams
    realization: DisorderRealization
    basis: object

    @property
    def dim(self):
        return self.matrix.shape[0]


def build_floquet(params, realization, basis):
    """Assemble U = exp(-iK) exp(-iH) in the sector basis.

    exp(-iH) comes from the Hermitian eigendecomposition of H (unitary to
    solver precision); the kick is applied factor by factor, never built
    as a separate dense matrix product.
    """
    H = build_h_int(params, realization, basis)
    if params.J == 0.0:
        expH = np.zeros((basis.dim, basis.dim), dtype=np.complex128)
        np.fill_diagonal(expH, np.exp(-1j * np.diag(H)))
    else:
        try:
            evals, evecs = np.linalg.eigh(H)
        except np.linalg.LinAlgError as err:
            raise RuntimeError(
                f"eigensolver failed on the interaction Hamiltonian (dim {basis.dim})"
            ) from err
        expH = (evecs * np.exp(-1j * evals)) @ evecs.T
    return FloquetOperator(
        matrix=apply_kick(params, basis, expH),
        params=params,
        realization=realization,
        basis=basis,
    )
