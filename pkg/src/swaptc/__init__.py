"""Exact diagonalization of swap-kicked disordered spin chains.

Core objects: magnetization-sector bases, disordered Hamiltonians and the
analytic swap kick, Floquet spectra with pairing diagnostics, stroboscopic
dynamics of the pair-staggered order parameter, correlation quantifiers,
imbalance combinatorics, and the closed-form solvable point used as ground
truth.  The experiment layer lives in `swaptc.harness`; the command line
entry point is `swaptc.cli`.
"""

from .basis import (
    SectorBasis,
    enumerate_sector,
    hopping_matrix,
    local_values,
    magnetization,
    pair_swap_matrix,
    pair_swap_permutation,
    sector_dimension,
    swap_permutation,
    swapped_config,
    z_diagonal,
)
from .correlations import (
    connected_correlator,
    correlation_sum,
    entanglement_entropy,
    mutual_information,
    mutual_information_sum,
    reduced_density,
)
from .dynamics import (
    DecayTime,
    ObservableSplit,
    ObservableTrace,
    decay_time,
    decompose_observable,
    evolve,
    half_neel_config,
    initial_config,
    initial_sector,
    neel_config,
    pair_signs,
    up_zero_config,
    z_order_parameter,
)
from .imbalance import (
    ImbalanceDistribution,
    imbalance_degeneracy,
    imbalance_expectation,
    imbalance_operator_diagonal,
    imbalance_pmf,
    local_imbalance,
    normal_approximation,
)
from .model import (
    DisorderRealization,
    FloquetOperator,
    ModelParams,
    apply_kick,
    build_floquet,
    build_h_int,
    build_kick_unitary,
    diagonal_energies,
    draw_disorder,
    kac_constant,
    kick_global_phase,
)
from .solvable import (
    CatPair,
    cat_pair,
    classical_energy,
    exact_correlation_sum,
    exact_mutual_information_sum,
    solvable_cat_pairs,
    solvable_quasienergies,
)
from .spectral import (
    FloquetSpectrum,
    PairingGaps,
    diagonalize,
    fold_phase,
    level_spacing_ratio,
    pairing_gaps,
    pairing_parameter,
)

__version__ = "0.1.0"
