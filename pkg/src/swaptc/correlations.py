"""Two-point correlations of sector states.

Connected ZZ correlators and their per-site sum, one- and two-site
reduced density matrices, von Neumann entropies (natural log), and the
mutual-information variant of the correlation sum.  All observables here
are diagonal in the configuration basis, so correlators reduce to
weighted sums over |amplitude|^2; entropic quantities need the actual
reduced matrices, built by grouping basis states on their traced-out
remainder.
"""

import numpy as np

EIGENVALUE_CLIP = 1e-14  # reduced-density eigenvalues below this count as exact zeros


def _as_states(states, basis):
    psi = np.asarray(states, dtype=np.complex128)
    single = psi.ndim == 1
    if single:
        psi = psi[:, None]
    if psi.shape[0] != basis.dim:
        raise ValueError(f"state length {psi.shape[0]} does not match basis dim {basis.dim}")
    return psi, single


def _check_sites(basis, *sites):
    for site in sites:
        if not 0 <= site < basis.L:
            raise ValueError(f"site {site} out of range for L={basis.L}")


def connected_correlator(state, basis, i, j):
    """Connected ZZ correlator <z_i z_j> - <z_i><z_j> of a normalized state."""
    _check_sites(basis, i, j)
    if i == j:
        raise ValueError("connected correlator needs two distinct sites")
    psi, _ = _as_states(state, basis)
    probs = (psi.real**2 + psi.imag**2)[:, 0]
    zi = basis.configs[:, i].astype(np.float64)
    zj = basis.configs[:, j].astype(np.float64)
    return float((zi * zj) @ probs - (zi @ probs) * (zj @ probs))


def correlation_sum(states, basis):
    """Per-site sum of |connected ZZ correlators| over ordered site pairs.

    (1/L) sum_{i<j} |C(i,j)| for one state vector, or per column of a
    (dim, n) stack of states (one pass over the probability matrix).
    """
    psi, single = _as_states(states, basis)
    probs = psi.real**2 + psi.imag**2
    z = basis.configs.astype(np.float64)
    means = z.T @ probs
    total = np.zeros(psi.shape[1])
    for i in range(basis.L - 1):
        zi = z[:, i]
        for j in range(i + 1, basis.L):
            second = (zi * z[:, j]) @ probs
            total += np.abs(second - means[i] * means[j])
    total /= basis.L
    return float(total[0]) if single else total


def _local_codes(basis, sites):
    """Row codes 0..d^k-1 of the site values, descending value order per site."""
    loc = (1 - basis.configs[:, list(sites)].astype(np.int64)) // (2 if basis.s == 0.5 else 1)
    code = loc[:, 0]
    for col in range(1, loc.shape[1]):
        code = code * basis.d + loc[:, col]
    return code


def _grouped_reduced(states, basis, sites):
    """Reduced density matrices over `sites` for every state column: (n, D, D)."""
    psi, _ = _as_states(states, basis)
    keep = list(sites)
    rest = [k for k in range(basis.L) if k not in keep]
    code = _local_codes(basis, keep)
    _, group = np.unique(basis.configs[:, rest], axis=0, return_inverse=True)
    order = np.argsort(group, kind="stable")
    bounds = np.searchsorted(group[order], np.arange(group.max() + 2))
    D = basis.d ** len(keep)
    n = psi.shape[1]
    rho = np.zeros((n, D, D), dtype=np.complex128)
    for g in range(bounds.size - 1):
        members = order[bounds[g] : bounds[g + 1]]
        if members.size == 0:
            continue
        amps = psi[members, :]
        block = np.einsum("is,js->sij", amps, amps.conj())
        rho[:, code[members][:, None], code[members][None, :]] += block
    return rho


def reduced_density(state, basis, sites):
    """Density matrix of one or two sites, tracing out the rest of the chain."""
    sites = tuple(int(k) for k in np.atleast_1d(sites))
    if not 1 <= len(sites) <= 2:
        raise ValueError(f"reduced densities cover 1 or 2 sites, got {len(sites)}")
    if len(sites) != len(set(sites)):
        raise ValueError("sites must be distinct")
    _check_sites(basis, *sites)
    return _grouped_reduced(state, basis, sites)[0]


def _entropies(rho_stack):
    evals = np.linalg.eigvalsh(rho_stack)
    evals = np.where(evals > EIGENVALUE_CLIP, evals, 1.0)  # 0*log0 = 0, clip solver noise
    return -np.sum(evals * np.log(evals), axis=-1)


def entanglement_entropy(state, basis, sites):
    """Von Neumann entropy (natural log) of the reduced state on 1 or 2 sites."""
    return float(_entropies(reduced_density(state, basis, sites)[None, ...])[0])


def mutual_information(state, basis, i, j):
    """Two-site mutual information S_i + S_j - S_ij, natural log."""
    _check_sites(basis, i, j)
    if i == j:
        raise ValueError("mutual information needs two distinct sites")
    s_i = _entropies(_grouped_reduced(state, basis, (i,)))
    s_j = _entropies(_grouped_reduced(state, basis, (j,)))
    s_ij = _entropies(_grouped_reduced(state, basis, (i, j)))
    value = s_i + s_j - s_ij
    return float(value[0]) if np.asarray(value).size == 1 else value


def mutual_information_sum(states, basis):
    """Per-site sum of two-site mutual informations over ordered pairs.

    (1/L) sum_{i<j} I(i,j) for one state or per column of a state stack.
    Groupings are computed once per site pair and reused across states.
    """
    psi, single = _as_states(states, basis)
    n = psi.shape[1]
    singles = np.stack([_entropies(_grouped_reduced(psi, basis, (i,))) for i in range(basis.L)])
    total = np.zeros(n)
    for i in range(basis.L - 1):
        for j in range(i + 1, basis.L):
            s_ij = _entropies(_grouped_reduced(psi, basis, (i, j)))
            total += singles[i] + singles[j] - s_ij
    total /= basis.L
    return float(total[0]) if single else total
