"""Stroboscopic dynamics from classical product states.

States evolve by spectral propagation |psi(t)> = sum_b R_b e^{-i mu_b t}
|psi_b>, so any integer time costs O(dim^2) regardless of how far it is.
This module provides the initial-state presets, the pair-staggered order
parameter Z(t), decay-time extraction from strided traces, and the
three-term split of an observable trace by quasienergy-pair structure.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .basis import magnetization


def neel_config(L):
    """Alternating +1, -1 on every site."""
    cfg = np.empty(L, dtype=np.int8)
    cfg[0::2] = 1
    cfg[1::2] = -1
    return cfg


def half_neel_config(L):
    """Alternating +1, -1 on the first 2*floor(L/4) sites, +1 on the rest."""
    cfg = np.ones(L, dtype=np.int8)
    l_af = 2 * (L // 4)
    cfg[1:l_af:2] = -1
    return cfg


def up_zero_config(L):
    """Alternating +1, 0 on every site (spin-1 chains only)."""
    cfg = np.zeros(L, dtype=np.int8)
    cfg[0::2] = 1
    return cfg


_PRESETS = {
    "neel": neel_config,
    "half-neel": half_neel_config,
    "up-zero": up_zero_config,
}


def initial_config(name, L, s):
    """Expand a named preset into a classical configuration."""
    try:
        build = _PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown initial state {name!r}; choose from {sorted(_PRESETS)}") from None
    if name == "up-zero" and s != 1:
        raise ValueError("the up-zero preset requires local spin 1")
    return build(L)


def initial_sector(name, L, s):
    """Total magnetization of a named preset state."""
    return magnetization(initial_config(name, L, s), s)


def pair_signs(config):
    """sign(z_{2p} - z_{2p+1}) per swap pair; aligned pairs get 0."""
    c = np.asarray(config, dtype=np.float64)
    return np.sign(c[0::2] - c[1::2])


def z_order_parameter(magnetizations, signs):
    """Pair-staggered order parameter from per-site expectations.

    Z = (2/L) sum_p signs[p] * (<z_{2p}> - <z_{2p+1}>), with the signs
    fixed from the initial state (zero for initially aligned pairs, which
    therefore never contribute).  Accepts one time row or a (nt, L) stack.
    """
    m = np.atleast_2d(np.asarray(magnetizations, dtype=np.float64))
    L = m.shape[1]
    diff = m[:, 0::2] - m[:, 1::2]
    z = (2.0 / L) * diff @ np.asarray(signs, dtype=np.float64)
    return z if z.size > 1 else float(z[0])


@dataclass(frozen=True, eq=False)
class ObservableTrace:
    """Per-site magnetizations, Z, and state norms on a strictly increasing integer grid."""

    times: np.ndarray
    z: np.ndarray
    magnetization: np.ndarray
    norm: np.ndarray


def _check_times(times):
    times = np.asarray(times)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a nonempty 1-D array")
    if not np.issubdtype(times.dtype, np.integer):
        if not np.all(times == np.round(times)):
            raise ValueError("stroboscopic times must be integers")
        times = times.astype(np.int64)
    if times[0] != 0:
        raise ValueError("the schedule must start at t=0 (Z sign factors are fixed there)")
    if np.any(np.diff(times) <= 0):
        raise ValueError("times must be strictly increasing")
    return times.astype(np.int64)


def evolve(spectrum, config, times, chunk=2048):
    """Evolve a classical configuration and record magnetizations and Z.

    `spectrum` must carry eigenstates and its basis; `config` must lie in
    that sector.  Time chunks bound the memory of the phase matrix.
    """
    if spectrum.states is None:
        raise ValueError("evolve needs a spectrum with eigenstates (compute_states=True)")
    basis = spectrum.basis
    if basis is None:
        raise ValueError("spectrum carries no basis reference")
    times = _check_times(times)
    try:
        start = basis.index_of(config)
    except KeyError:
        raise ValueError(
            f"initial configuration {list(np.asarray(config))} is outside the "
            f"spectrum's sz={basis.sz} sector"
        ) from None
    V = spectrum.states
    overlaps = V[start, :].conj()
    zvals = basis.configs.astype(np.float64).T
    mags = np.empty((times.size, basis.L))
    norms = np.empty(times.size)
    for lo in range(0, times.size, chunk):
        t = times[lo : lo + chunk]
        phases = np.exp(-1j * np.outer(spectrum.quasienergies, t.astype(np.float64)))
        psi = V @ (overlaps[:, None] * phases)
        probs = psi.real**2 + psi.imag**2
        mags[lo : lo + chunk] = (zvals @ probs).T
        norms[lo : lo + chunk] = np.sqrt(probs.sum(axis=0))
    signs = pair_signs(basis.configs[start])
    z = np.atleast_1d(z_order_parameter(mags, signs))
    return ObservableTrace(times=times, z=z, magnetization=mags, norm=norms)


@dataclass(frozen=True)
class DecayTime:
    """First sampled time where strided sign alternation of Z fails."""

    tau: int
    stride: int
    censored: bool


def decay_time(times, z, horizon=None):
    """Detect the first alternation failure on a uniformly strided trace.

    With stride n, period doubling predicts sign Z(t) = (-1)^n sign Z(t-n);
    the decay time is the first sampled t with (-1)^n Z(t-n) Z(t) < 0.
    A trace that never violates the test is censored at `horizon`
    (default: the last sampled time).
    """
    times = _check_times(times)
    z = np.asarray(z, dtype=np.float64)
    if z.shape != times.shape:
        raise ValueError("times and z must have matching shapes")
    if times.size < 2:
        raise ValueError("need at least two samples to test alternation")
    strides = np.diff(times)
    stride = int(strides[0])
    if np.any(strides != stride):
        raise ValueError("decay detection requires a uniform stride")
    if horizon is None:
        horizon = int(times[-1])
    if stride > horizon:
        raise ValueError(f"stride {stride} exceeds the horizon {horizon}")
    parity = 1.0 if stride % 2 == 0 else -1.0
    test = parity * z[:-1] * z[1:]
    violations = np.nonzero(test < 0)[0]
    if violations.size:
        return DecayTime(tau=int(times[violations[0] + 1]), stride=stride, censored=False)
    return DecayTime(tau=int(horizon), stride=stride, censored=True)


@dataclass(frozen=True, eq=False)
class ObservableSplit:
    """Time-independent pieces of <O(t)> grouped by quasienergy-pair structure.

    evaluate(t) returns (diagonal, pair_term, offdiag_term); their sum
    reconstructs <O(t)> for the initial state the split was built from.
    The pair term collects the partner-map matrix elements, whose phases
    e^{i(mu_b - mu_partner(b)) t} alternate sign when partners sit pi apart.
    """

    diagonal: float
    pair_amplitudes: np.ndarray
    pair_phases: np.ndarray
    partner: np.ndarray
    offdiag_amplitudes: np.ndarray
    quasienergies: np.ndarray
    partner_involutive: bool

    def evaluate(self, t):
        # per-level phases keep the pair term bit-compatible with spectral evolution
        u = np.exp(1j * self.quasienergies * float(t))
        pair = np.real(np.sum(self.pair_amplitudes * u * u[self.partner].conj()))
        off = np.real(u @ self.offdiag_amplitudes @ u.conj())
        return self.diagonal, float(pair), float(off)


def decompose_observable(spectrum, config, observable, gaps):
    """Split <O(t)> into diagonal, partner-pair, and remaining off-diagonal terms.

    `observable` is a diagonal vector or a dense Hermitian matrix in the
    sector basis; `gaps` supplies the pi-partner map.  The sum of the
    three terms reconstructs <O(t)> for any partner map, but the pair
    term only means "period-doubling amplitude" when the map is an
    involution (each level its partner's partner).  A non-involutive map
    (level repulsion delocalizes some pi-partners) is kept as given and
    reported through a warning and the partner_involutive flag.
    """
    if spectrum.states is None:
        raise ValueError("decomposition needs a spectrum with eigenstates")
    basis = spectrum.basis
    if basis is None:
        raise ValueError("spectrum carries no basis reference")
    partner = np.asarray(gaps.partner)
    n = spectrum.dim
    if partner.shape != (n,):
        raise ValueError("partner map size does not match the spectrum")
    if np.any(partner < 0) or np.any(partner >= n):
        raise ValueError("partner indices out of range")
    involutive = bool(np.array_equal(partner[partner], np.arange(n)))
    if not involutive:
        warnings.warn(
            "pairing partner map is not an involution; keeping it as given",
            RuntimeWarning,
            stacklevel=2,
        )
    obs = np.asarray(observable)
    V = spectrum.states
    if obs.ndim == 1:
        if obs.size != n:
            raise ValueError("diagonal observable length does not match the spectrum")
        M = V.conj().T @ (obs[:, None] * V)
    elif obs.shape == (n, n):
        M = V.conj().T @ obs @ V
    else:
        raise ValueError(f"observable shape {obs.shape} does not match dim {n}")
    start = basis.index_of(config)
    overlaps = V[start, :].conj()
    weights = np.outer(overlaps.conj(), overlaps) * M
    cols = np.arange(n)
    diagonal = float(np.real(np.trace(weights)))
    pair_amp = weights[cols, partner].copy()
    pair_amp[partner == cols] = 0.0
    mu = spectrum.quasienergies
    off = weights.copy()
    off[cols, cols] = 0.0
    off[cols, partner] = 0.0
    return ObservableSplit(
        diagonal=diagonal,
        pair_amplitudes=pair_amp,
        pair_phases=mu - mu[partner],
        partner=partner,
        offdiag_amplitudes=off,
        quasienergies=mu,
        partner_involutive=involutive,
    )
