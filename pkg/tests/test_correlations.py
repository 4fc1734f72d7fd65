import numpy as np
import pytest

import brute
from swaptc import basis as sb
from swaptc import correlations as corr


def _basis_state(basis, config):
    psi = np.zeros(basis.dim, dtype=complex)
    psi[basis.index_of(config)] = 1.0
    return psi


def _random_state(basis, seed):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=basis.dim) + 1j * rng.normal(size=basis.dim)
    return psi / np.linalg.norm(psi)


def test_connected_correlator_reference_states():
    b = sb.enumerate_sector(2, 0.5, 0)
    product = _basis_state(b, [1, -1])
    assert corr.connected_correlator(product, b, 0, 1) == pytest.approx(0.0)
    cat = (_basis_state(b, [1, -1]) + _basis_state(b, [-1, 1])) / np.sqrt(2)
    assert corr.connected_correlator(cat, b, 0, 1) == pytest.approx(-1.0)

    b4 = sb.enumerate_sector(4, 0.5, 0)
    ghz = (_basis_state(b4, [1, 1, -1, -1]) + _basis_state(b4, [-1, -1, 1, 1])) / np.sqrt(2)
    assert corr.connected_correlator(ghz, b4, 0, 1) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        corr.connected_correlator(ghz, b4, 2, 2)
    with pytest.raises(ValueError):
        corr.connected_correlator(ghz, b4, 0, 4)


def test_correlation_sum_matches_pair_loop():
    for L, s, seed in ((6, 0.5, 1), (4, 1, 2)):
        b = sb.enumerate_sector(L, s, 0)
        psi = _random_state(b, seed)
        total = 0.0
        for i in range(L):
            for j in range(i + 1, L):
                total += abs(corr.connected_correlator(psi, b, i, j))
        assert corr.correlation_sum(psi, b) == pytest.approx(total / L, abs=1e-12)


def test_correlation_sum_accepts_stacks():
    b = sb.enumerate_sector(6, 0.5, 0)
    cols = np.stack([_random_state(b, k) for k in range(4)], axis=1)
    stacked = corr.correlation_sum(cols, b)
    assert stacked.shape == (4,)
    for k in range(4):
        assert stacked[k] == pytest.approx(corr.correlation_sum(cols[:, k], b), abs=1e-13)


def test_classical_config_has_no_correlations():
    b = sb.enumerate_sector(8, 0.5, 0)
    psi = _basis_state(b, [1, -1, 1, 1, -1, -1, 1, -1])
    assert corr.correlation_sum(psi, b) == pytest.approx(0.0, abs=1e-14)
    assert corr.mutual_information_sum(psi, b) == pytest.approx(0.0, abs=1e-12)


def test_reduced_density_basic_properties():
    for L, s in ((6, 0.5), (4, 1)):
        b = sb.enumerate_sector(L, s, 0)
        psi = _random_state(b, 7)
        for sites in ((0,), (2,), (0, 1), (1, 3)):
            rho = corr.reduced_density(psi, b, sites)
            d = b.d ** len(sites)
            assert rho.shape == (d, d)
            assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
            assert np.allclose(rho, rho.conj().T, atol=1e-13)
            evals = np.linalg.eigvalsh(rho)
            assert np.all(evals > -1e-13)


def test_reduced_density_matches_partial_trace():
    for L, s in ((6, 0.5), (4, 1)):
        d = 2 if s == 0.5 else 3
        b = sb.enumerate_sector(L, s, 0)
        pos = brute.sector_positions(L, s, 0)
        psi = _random_state(b, 11)
        full = brute.embed_sector_state(psi, pos, d**L)
        for sites in ((0,), (3,), (0, 1), (1, 2), (0, L - 1)):
            rho = corr.reduced_density(psi, b, sites)
            oracle = brute.partial_trace(full, L, d, sites)
            assert np.max(np.abs(rho - oracle)) < 1e-13


def test_reduced_density_site_validation():
    b = sb.enumerate_sector(4, 0.5, 0)
    psi = _random_state(b, 0)
    with pytest.raises(ValueError):
        corr.reduced_density(psi, b, (0, 0))
    with pytest.raises(ValueError):
        corr.reduced_density(psi, b, (0, 1, 2))
    with pytest.raises(ValueError):
        corr.reduced_density(psi, b, (4,))


def test_entropy_reference_states():
    b = sb.enumerate_sector(4, 0.5, 0)
    product = _basis_state(b, [1, -1, 1, -1])
    assert corr.entanglement_entropy(product, b, (0,)) == pytest.approx(0.0, abs=1e-14)
    assert corr.entanglement_entropy(product, b, (0, 1)) == pytest.approx(0.0, abs=1e-14)
    cat = (_basis_state(b, [1, -1, 1, -1]) + _basis_state(b, [-1, 1, -1, 1])) / np.sqrt(2)
    for site in range(4):
        assert corr.entanglement_entropy(cat, b, (site,)) == pytest.approx(np.log(2), abs=1e-12)
    # two sites from different pairs still hold one bit jointly
    assert corr.entanglement_entropy(cat, b, (0, 2)) == pytest.approx(np.log(2), abs=1e-12)


def test_mutual_information_reference_states():
    b = sb.enumerate_sector(4, 0.5, 0)
    product = _basis_state(b, [1, 1, -1, -1])
    assert corr.mutual_information(product, b, 0, 2) == pytest.approx(0.0, abs=1e-13)
    cat = (_basis_state(b, [1, -1, 1, -1]) + _basis_state(b, [-1, 1, -1, 1])) / np.sqrt(2)
    assert corr.mutual_information(cat, b, 0, 2) == pytest.approx(np.log(2), abs=1e-12)
    ghz2 = (_basis_state(b, [1, 1, -1, -1]) + _basis_state(b, [-1, -1, 1, 1])) / np.sqrt(2)
    assert corr.mutual_information(ghz2, b, 0, 1) == pytest.approx(np.log(2), abs=1e-12)
    # two-site cat: the whole state is pure, so the pair shares two bits
    b2 = sb.enumerate_sector(2, 0.5, 0)
    cat2 = (_basis_state(b2, [1, -1]) + _basis_state(b2, [-1, 1])) / np.sqrt(2)
    assert corr.mutual_information(cat2, b2, 0, 1) == pytest.approx(2 * np.log(2), abs=1e-12)


def test_mutual_information_symmetry_and_bounds():
    for L, s, seed in ((6, 0.5, 3), (4, 1, 4)):
        b = sb.enumerate_sector(L, s, 0)
        psi = _random_state(b, seed)
        for i, j in ((0, 1), (1, 4 if L > 4 else 3), (0, L - 1)):
            mij = corr.mutual_information(psi, b, i, j)
            mji = corr.mutual_information(psi, b, j, i)
            assert mij == pytest.approx(mji, abs=1e-12)
            assert -1e-12 <= mij <= 2 * np.log(b.d) + 1e-12


def test_mutual_information_sum_matches_pair_loop():
    for L, s, seed in ((6, 0.5, 5), (4, 1, 6)):
        b = sb.enumerate_sector(L, s, 0)
        psi = _random_state(b, seed)
        total = 0.0
        for i in range(L):
            for j in range(i + 1, L):
                total += corr.mutual_information(psi, b, i, j)
        assert corr.mutual_information_sum(psi, b) == pytest.approx(total / L, abs=1e-11)


def test_mutual_information_sum_stack_consistency():
    b = sb.enumerate_sector(6, 0.5, 0)
    cols = np.stack([_random_state(b, 20 + k) for k in range(3)], axis=1)
    stacked = corr.mutual_information_sum(cols, b)
    assert stacked.shape == (3,)
    for k in range(3):
        assert stacked[k] == pytest.approx(
            corr.mutual_information_sum(cols[:, k], b), abs=1e-12
        )
