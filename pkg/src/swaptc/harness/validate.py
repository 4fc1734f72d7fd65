"""Self-checks against closed-form results at the exact swap point.

Runs the numerical pipeline at J = epsilon = 0, where every quantity
has an exact expression, and compares: kick action, quasienergy multisets,
pi-splitting of paired levels, swap-invariant counts, and strict
period-two alternation of the order parameter.
"""

import numpy as np

from ..basis import enumerate_sector, swapped_config, swap_permutation
from ..dynamics import evolve, initial_config, initial_sector
from ..model import ModelParams, build_floquet, build_kick_unitary, draw_disorder, kick_global_phase
from ..solvable import solvable_cat_pairs, solvable_quasienergies
from ..spectral import diagonalize, fold_phase

CASES = ((0.5, 4), (0.5, 6), (0.5, 8), (1.0, 4), (1.0, 6))
TOL = 1e-10


def _sz_values(L, s):
    if s == 0.5:
        return [float(m) for m in range(-L // 2, L // 2 + 1)]
    return [float(m) for m in range(-L, L + 1)]


def _check_kick_is_swap(params, basis):
    kick = build_kick_unitary(params, basis)
    perm = swap_permutation(basis)
    target = np.zeros((basis.dim, basis.dim), dtype=np.complex128)
    target[perm, np.arange(basis.dim)] = np.exp(-1j * kick_global_phase(params))
    return float(np.abs(kick - target).max())


def _check_spectrum(params, realization, basis):
    op = build_floquet(params, realization, basis)
    numeric = np.sort(diagonalize(op, compute_states=False).quasienergies)
    exact = np.sort(solvable_quasienergies(params, realization, basis))
    if numeric.size != exact.size:
        return float("inf")
    return float(np.abs(numeric - exact).max())


def _check_pi_split(params, realization, basis):
    worst = 0.0
    for pair in solvable_cat_pairs(params, realization, basis):
        if pair.paired:
            split = abs(fold_phase(pair.mu_minus - pair.mu_plus))
            worst = max(worst, abs(split - np.pi))
    return worst


def _count_unpaired(params, realization, L, s):
    count = 0
    for sz in _sz_values(L, s):
        basis = enumerate_sector(L, s, sz)
        for pair in solvable_cat_pairs(params, realization, basis):
            if not pair.paired:
                count += 1
    return count


def _check_alternation(params, realization, s, L, periods=1000):
    name = "neel"
    basis = enumerate_sector(L, s, initial_sector(name, L, s))
    op = build_floquet(params, realization, basis)
    spectrum = diagonalize(op)
    config = initial_config(name, L, s)
    times = np.arange(0, periods + 1)
    trace = evolve(spectrum, config, times)
    signs = np.where(times % 2 == 0, 1.0, -1.0)
    return float(np.abs(trace.z * signs - trace.z[0]).max())


def run_validation(seed=2718, stream=None):
    """Run all solvable-point checks; returns the number of failures."""

    def emit(line):
        if stream is not None:
            print(line, file=stream)

    failures = 0
    for case_index, (s, L) in enumerate(CASES):
        params = ModelParams(L=L, s=s, J=0.0, V=3.0, h=16.0, alpha=0.5, epsilon=0.0)
        realization = draw_disorder(params, seed + case_index)
        basis = enumerate_sector(L, s, 0.0)
        d = 2 if s == 0.5 else 3

        checks = [
            ("kick acts as pairwise swap", _check_kick_is_swap(params, basis), TOL),
            ("quasienergy multiset matches closed form", _check_spectrum(params, realization, basis), TOL),
            ("paired levels split by pi", _check_pi_split(params, realization, basis), TOL),
            ("order parameter alternates for 1000 periods", _check_alternation(params, realization, s, L), TOL),
        ]
        for label, worst, tol in checks:
            ok = worst <= tol
            failures += 0 if ok else 1
            emit(f"[{'ok' if ok else 'FAIL'}] s={s} L={L}: {label} (max dev {worst:.3e})")

        unpaired = _count_unpaired(params, realization, L, s)
        expected = d ** (L // 2)
        ok = unpaired == expected
        failures += 0 if ok else 1
        emit(f"[{'ok' if ok else 'FAIL'}] s={s} L={L}: swap-invariant count {unpaired} == {expected}")
    return failures
