import numpy as np
import pytest

import brute
from swaptc import basis as sb


def test_local_values_descending():
    assert sb.local_values(0.5) == (1, -1)
    assert sb.local_values(1) == (1, 0, -1)
    with pytest.raises(ValueError):
        sb.local_values(1.5)


def test_magnetization_convention():
    # spin-1/2 counts half the signed sum, spin-1 the plain sum
    assert sb.magnetization([1, -1, 1, 1], 0.5) == 1.0
    assert sb.magnetization([1, 0, -1, 1], 1) == 1.0


def test_swapped_config_exchanges_within_pairs():
    assert list(sb.swapped_config([1, -1, 1, 1])) == [-1, 1, 1, 1]
    assert list(sb.swapped_config([1, 0, -1, 1, 0, 0])) == [0, 1, 1, -1, 0, 0]


def test_two_site_sector():
    b = sb.enumerate_sector(2, 0.5, 0)
    assert b.dim == 2
    assert b.configs.tolist() == [[1, -1], [-1, 1]]


def test_sector_dimensions_match_binomials():
    import math

    for L in (2, 4, 6, 8, 10, 12):
        for n_up in range(L + 1):
            sz = n_up - L / 2
            assert sb.sector_dimension(L, 0.5, sz) == math.comb(L, n_up)
    assert sb.sector_dimension(12, 0.5, 0) == 924


def test_sector_dimensions_partition_full_space():
    for L, s in ((4, 0.5), (6, 0.5), (4, 1), (6, 1)):
        d = 2 if s == 0.5 else 3
        szs = np.arange(-s * L, s * L + 1, 1.0)
        total = sum(sb.sector_dimension(L, s, sz) for sz in szs)
        assert total == d**L


def test_enumerate_sector_spin1():
    b = sb.enumerate_sector(4, 1, 0)
    assert b.dim == 19
    assert b.d == 3


def test_enumeration_is_descending_lexicographic():
    for L, s, sz in ((6, 0.5, 0), (4, 1, 1)):
        b = sb.enumerate_sector(L, s, sz)
        rows = [tuple(c) for c in b.configs]
        assert rows == sorted(rows, reverse=True)
        mags = np.array([sb.magnetization(c, s) for c in b.configs])
        assert np.all(mags == sz)


def test_enumeration_matches_filtered_full_space():
    for L, s, sz in ((4, 0.5, 0), (6, 0.5, 1), (4, 1, 0), (4, 1, -2)):
        b = sb.enumerate_sector(L, s, sz)
        pos = brute.sector_positions(L, s, sz)
        expected = brute.full_configs(L, s)[pos]
        assert np.array_equal(b.configs, expected)


def test_enumerate_sector_rejects_bad_input():
    with pytest.raises(ValueError):
        sb.enumerate_sector(5, 0.5, 0.5)
    with pytest.raises(ValueError):
        sb.enumerate_sector(4, 0.5, 3)
    with pytest.raises(ValueError):
        sb.enumerate_sector(4, 0.5, 0.5)


def test_index_of_roundtrip_and_miss():
    b = sb.enumerate_sector(6, 0.5, 0)
    for n in range(b.dim):
        assert b.index_of(b.configs[n]) == n
    with pytest.raises(KeyError):
        b.index_of([1, 1, 1, 1, 1, -1])


def test_z_diagonal():
    b = sb.enumerate_sector(2, 0.5, 0)
    assert sb.z_diagonal(b, 0).tolist() == [1, -1]
    assert sb.z_diagonal(b, 1).tolist() == [-1, 1]
    with pytest.raises(ValueError):
        sb.z_diagonal(b, 2)


def test_hopping_two_site_example():
    b = sb.enumerate_sector(2, 0.5, 0)
    hop = sb.hopping_matrix(b, 0)
    assert np.array_equal(hop, [[0.0, 2.0], [2.0, 0.0]])


def test_hopping_vanishes_on_aligned_sector():
    b = sb.enumerate_sector(2, 0.5, 1)
    assert not sb.hopping_matrix(b, 0).any()


def test_hopping_is_symmetric():
    for L, s, sz in ((6, 0.5, 0), (4, 1, 0)):
        b = sb.enumerate_sector(L, s, sz)
        for bond in range(L - 1):
            hop = sb.hopping_matrix(b, bond)
            assert np.array_equal(hop, hop.T)


def test_hopping_matches_full_space():
    for L, s in ((4, 0.5), (6, 0.5), (4, 1)):
        for sz in (0, 1):
            b = sb.enumerate_sector(L, s, sz)
            pos = brute.sector_positions(L, s, sz)
            for bond in range(L - 1):
                full = brute.restrict(brute.hopping_full(L, s, bond), pos)
                assert np.max(np.abs(full.imag)) == 0.0
                assert np.allclose(sb.hopping_matrix(b, bond), full.real, atol=1e-13)


def test_hopping_bond_range():
    b = sb.enumerate_sector(4, 0.5, 0)
    with pytest.raises(ValueError):
        sb.hopping_matrix(b, 3)


def test_pair_swap_permutation_is_involution():
    for L, s in ((6, 0.5), (4, 1)):
        b = sb.enumerate_sector(L, s, 0)
        for pair in range(L // 2):
            perm = sb.pair_swap_permutation(b, pair)
            assert np.array_equal(perm[perm], np.arange(b.dim))


def test_pair_swap_matrix_matches_full_space():
    for L, s in ((4, 0.5), (6, 0.5), (4, 1)):
        d = 2 if s == 0.5 else 3
        b = sb.enumerate_sector(L, s, 0)
        pos = brute.sector_positions(L, s, 0)
        for pair in range(L // 2):
            full = brute.restrict(brute.swap_full(L, d, pair), pos)
            assert np.array_equal(sb.pair_swap_matrix(b, pair), full)


def test_global_swap_composition():
    # the full swap is the composition of all pair swaps, in any order
    for L, s in ((8, 0.5), (4, 1)):
        b = sb.enumerate_sector(L, s, 0)
        perm = np.arange(b.dim)
        for pair in range(L // 2):
            perm = sb.pair_swap_permutation(b, pair)[perm]
        assert np.array_equal(sb.swap_permutation(b), perm)
        for n in range(b.dim):
            assert np.array_equal(
                b.configs[sb.swap_permutation(b)[n]], sb.swapped_config(b.configs[n])
            )
