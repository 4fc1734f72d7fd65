"""Closed-form ground truth at the exact swap point (J = epsilon = 0).

There the Floquet operator maps every classical configuration to its
pairwise-swapped partner times a phase, so eigenstates are cat states
built on swap orbits, quasienergies are half-sums of the two classical
energies (pi-split within each orbit), and correlation quantifiers have
exact expressions in the local imbalance.  These formulas anchor the
numerical modules in tests and in the `validate` command.
"""

import math
from dataclasses import dataclass

import numpy as np

from .basis import local_values, swapped_config
from .imbalance import local_imbalance
from .model import kick_global_phase
from .spectral import fold_phase


def classical_energy(config, realization):
    """Energy sum_{k<q} V_kq z_k z_q + sum_k h_k z_k of a classical configuration."""
    c = np.asarray(config, dtype=np.float64)
    if c.size != realization.L:
        raise ValueError(f"configuration length {c.size} != realization length {realization.L}")
    return float(c @ realization.couplings @ c + realization.fields @ c)


@dataclass(frozen=True, eq=False)
class CatPair:
    """Floquet eigendata of one swap orbit at the solvable point.

    Paired orbits carry the two cat states on (config, swapped) with
    quasienergies exactly pi apart; swap-invariant configurations are
    themselves eigenstates with the single quasienergy mu_plus.
    All quasienergies include the kick's global phase, matching the
    numerically built Floquet operator rather than the stripped-phase
    convention.
    """

    config: np.ndarray
    swapped: np.ndarray
    e_config: float
    e_swap: float
    mu_plus: float
    mu_minus: float | None
    paired: bool

    def state_vectors(self, basis):
        """Eigenvectors in `basis`: (psi_plus, psi_minus), psi_minus None if unpaired.

        Cat components carry the relative phases exp(iE/2), so these are
        eigenvectors exactly, not merely up to phase.
        """
        i = basis.index_of(self.config)
        psi_plus = np.zeros(basis.dim, dtype=np.complex128)
        if not self.paired:
            psi_plus[i] = 1.0
            return psi_plus, None
        j = basis.index_of(self.swapped)
        amp_i = np.exp(0.5j * self.e_config) / math.sqrt(2)
        amp_j = np.exp(0.5j * self.e_swap) / math.sqrt(2)
        psi_plus[i] = amp_i
        psi_plus[j] = amp_j
        psi_minus = np.zeros(basis.dim, dtype=np.complex128)
        psi_minus[i] = amp_i
        psi_minus[j] = -amp_j
        return psi_plus, psi_minus


def cat_pair(params, config, realization):
    """Closed-form eigendata of the swap orbit containing `config`.

    Requires J = epsilon = 0; quasienergies are folded to (-pi, pi] and
    include the kick's global phase.
    """
    if params.J != 0.0 or params.epsilon != 0.0:
        raise ValueError("cat pairs exist only at the solvable point J = epsilon = 0")
    config = np.asarray(config, dtype=np.int8)
    partner = swapped_config(config).astype(np.int8)
    e_config = classical_energy(config, realization)
    e_swap = classical_energy(partner, realization)
    phase = kick_global_phase(params)
    paired = bool(np.any(config != partner))
    if paired:
        mu_plus = float(fold_phase(0.5 * (e_config + e_swap) + phase))
        mu_minus = float(fold_phase(mu_plus + math.pi))
    else:
        mu_plus = float(fold_phase(e_config + phase))
        mu_minus = None
    return CatPair(
        config=config,
        swapped=partner,
        e_config=e_config,
        e_swap=e_swap,
        mu_plus=mu_plus,
        mu_minus=mu_minus,
        paired=paired,
    )


def solvable_cat_pairs(params, realization, basis):
    """One CatPair per swap orbit of the sector, enumerated in basis order."""
    seen = set()
    pairs = []
    for n in range(basis.dim):
        if n in seen:
            continue
        cfg = basis.configs[n]
        seen.add(basis.index_of(swapped_config(cfg)))
        pairs.append(cat_pair(params, cfg, realization))
    return pairs


def solvable_quasienergies(params, realization, basis):
    """The full quasienergy multiset of the sector at the solvable point, sorted."""
    values = []
    for p in solvable_cat_pairs(params, realization, basis):
        values.append(p.mu_plus)
        if p.paired:
            values.append(p.mu_minus)
    return np.sort(np.array(values))


def exact_correlation_sum(config):
    """Closed-form correlation sum I(I*L - 1)/2 of the cat state on a spin-1/2 config.

    Valid for s=1/2 only; the mutual-information form covers general s.
    """
    c = np.asarray(config)
    if not set(np.unique(c)) <= {-1, 1}:
        raise ValueError("closed-form correlation sum holds for spin-1/2 (values +-1) only")
    imb = local_imbalance(c)
    return imb * (imb * c.size - 1.0) / 2.0


def exact_mutual_information_sum(config):
    """Closed-form mutual-information sum I(I*L - 1)/2 * ln 2 of a cat state, any s.

    Exact except for the single-unaligned-pair special case I = 2/L, where
    the two cat components coincide after tracing down to the unaligned
    pair itself.
    """
    c = np.asarray(config)
    allowed = set(local_values(0.5)) | set(local_values(1))
    if not set(np.unique(c)) <= allowed:
        raise ValueError("configuration values must be local z eigenvalues")
    imb = local_imbalance(c)
    return imb * (imb * c.size - 1.0) / 2.0 * math.log(2.0)
