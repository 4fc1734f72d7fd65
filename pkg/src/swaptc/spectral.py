"""Floquet spectra and spectral diagnostics.

Quasienergies are defined by U|psi> = exp(-i mu)|psi> and folded to the
zone (-pi, pi].  Diagnostics: the consecutive-gap ratio statistic, the
pi-pairing gaps (distance from mu + pi to the nearest level), and the
log-average pairing parameter built from them.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg


def fold_phase(x):
    """Wrap angles to the zone (-pi, pi]; the boundary maps to +pi."""
    x = np.asarray(x, dtype=np.float64)
    return np.pi - np.mod(np.pi - x, 2 * np.pi)


@dataclass(frozen=True, eq=False)
class FloquetSpectrum:
    """Sorted quasienergies and (optionally) the matching eigenvector columns."""

    quasienergies: np.ndarray
    states: np.ndarray | None
    basis: object = None

    @property
    def dim(self):
        return self.quasienergies.size


def diagonalize(op, compute_states=True, unitarity_tol=1e-9):
    """Eigen-decompose a Floquet operator (FloquetOperator or plain unitary matrix).

    With compute_states the eigenbasis comes from a complex Schur
    decomposition: for a unitary input the Schur form is diagonal to
    machine precision and the Schur vectors are exactly orthonormal, which
    keeps long-time spectral propagation norm-preserving even through
    near-degenerate clusters.  Without it, only eigenvalues are computed
    (about half the cost).
    """
    basis = getattr(op, "basis", None)
    U = np.asarray(getattr(op, "matrix", op), dtype=np.complex128)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {U.shape}")
    defect = np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0])))
    if defect > unitarity_tol:
        raise ValueError(f"input is not unitary: max |U^dag U - 1| = {defect:.3e}")
    if compute_states:
        try:
            T, Q = scipy.linalg.schur(U, output="complex")
        except (scipy.linalg.LinAlgError, ValueError) as err:
            raise RuntimeError(f"Schur decomposition failed (dim {U.shape[0]})") from err
        lam = np.diag(T).copy()
        offdiag = np.max(np.abs(T - np.diag(lam)))
        if offdiag > 1e-8:
            raise RuntimeError(
                f"Schur form of a unitary input is not numerically diagonal "
                f"(off-diagonal norm {offdiag:.3e}); eigenvectors would be unreliable"
            )
        mu = fold_phase(-np.angle(lam))
        order = np.argsort(mu, kind="stable")
        return FloquetSpectrum(quasienergies=mu[order], states=Q[:, order], basis=basis)
    lam = np.linalg.eigvals(U)
    mu = np.sort(fold_phase(-np.angle(lam)))
    return FloquetSpectrum(quasienergies=mu, states=None, basis=basis)


def _quasienergies(spectrum):
    mu = np.asarray(getattr(spectrum, "quasienergies", spectrum), dtype=np.float64)
    return np.sort(mu)


def level_spacing_ratio(spectrum):
    """Mean over the spectrum of min/max of consecutive quasienergy gaps.

    Normalized by the number of summed ratios (dim - 2).  Exactly
    degenerate neighbors give a zero gap and a zero ratio; two equal gaps
    (including two zero gaps) give ratio 1.
    """
    mu = _quasienergies(spectrum)
    if mu.size < 3:
        raise ValueError(f"need at least 3 levels for the gap ratio, got {mu.size}")
    gaps = np.diff(mu)
    lo = np.minimum(gaps[:-1], gaps[1:])
    hi = np.maximum(gaps[:-1], gaps[1:])
    r = np.divide(lo, hi, out=np.ones_like(lo), where=hi > 0)
    return float(r.mean())


@dataclass(frozen=True, eq=False)
class PairingGaps:
    """Consecutive gaps, pi-shifted gaps, and the pi-partner index per level."""

    delta0: np.ndarray
    delta_pi: np.ndarray
    partner: np.ndarray


def pairing_gaps(spectrum):
    """Gap vectors of a sorted spectrum.

    delta0[b] = mu[b+1] - mu[b] (length dim-1).  delta_pi[b] is the circle
    distance from mu[b] + pi to the nearest quasienergy, minimized over
    all levels including b itself (mu[b] + pi never equals mu[b] on the
    circle); partner[b] records the argmin.  All delta_pi lie in [0, pi].
    """
    mu = _quasienergies(spectrum)
    n = mu.size
    if n < 2:
        raise ValueError(f"need at least 2 levels for pairing gaps, got {n}")
    delta0 = np.diff(mu)
    shifted = fold_phase(mu + np.pi)
    pos = np.searchsorted(mu, shifted)
    cand = np.stack(((pos - 1) % n, pos % n))
    dist = np.abs(fold_phase(mu[cand] - shifted[None, :]))
    pick = np.argmin(dist, axis=0)
    cols = np.arange(n)
    return PairingGaps(
        delta0=delta0,
        delta_pi=dist[pick, cols],
        partner=cand[pick, cols].astype(np.intp),
    )


def pairing_parameter(gaps, floor=1e-14):
    """Pairing parameter: mean log10 of pi-gaps minus mean log10 of consecutive gaps.

    `gaps` is one PairingGaps or an iterable of them (a disorder
    ensemble); the two logarithmic means run over every level of every
    spectrum.  Gaps below `floor` are floored first, so exact pairing
    shows up as a large negative value instead of -inf.
    """
    if isinstance(gaps, PairingGaps):
        gaps = [gaps]
    gaps = list(gaps)
    if not gaps:
        raise ValueError("empty gap ensemble")
    d0 = np.concatenate([g.delta0 for g in gaps])
    dpi = np.concatenate([g.delta_pi for g in gaps])
    if not np.any(d0 > 0):
        raise ValueError("all consecutive gaps vanish: fully degenerate spectrum")
    mlog_pi = np.log10(np.maximum(dpi, floor)).mean()
    mlog_0 = np.log10(np.maximum(d0, floor)).mean()
    return float(mlog_pi - mlog_0)
