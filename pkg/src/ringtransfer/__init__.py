"""Perfect transfer of oscillator states around a ring of s coupled modes."""

from .beamsplitter import BSParams, TwoModeOnePhoton, bs_apply, cascade, perfect_transfer_condition
from .charfun import (
    CharFunction,
    GSeries,
    coherent_char,
    fock_char,
    g_function,
    laguerre,
    reduced_coherent_char,
    reduced_fock_char,
    sweep_g,
)
from .fock import (
    FockBasis,
    FockVector,
    build_sector_hamiltonian,
    entangled_transfer_check,
    evolve,
    fidelity,
    single_excitation_consistency,
)
from .lattice import (
    NetworkSpec,
    PermutationMatrix,
    cyclic_shift_matrix,
    dft_matrix,
    mode_frequencies,
    ring_diagonalizer,
    shift_eigenphases,
)
from .propagator import Propagator, check_transfer_conditions, mu_closed_form, mu_exponential_oracle, mu_spectral
from .synthesis import (
    TwoModeForm,
    diagonal_element,
    synthesize_couplings,
    synthesize_for_permutation,
    two_mode_closed_form,
    validate_bogoliubov,
)

__version__ = "0.1.0"
