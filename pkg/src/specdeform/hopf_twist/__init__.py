"""Finite-dimensional Hopf *-algebra engine: dual 2-cocycles, twists,
smash products, Galois objects, and the literal finite deformation of
equivariant triples."""

from .algebra import (
    Check, ComoduleAlgebra, FiniteHopfAlgebra, Report, StarAlgebra,
    algebra_invariants, cyclic_group_algebra, function_algebra,
)
from .cocycle import (
    DualCocycle, UVFunctionals, bicharacter_cocycle, check_dual_cocycle,
    convolution_inverse, grouplike_irreps, omega_check, omega_from_sigma,
    pi_sigma, sigma_from_omega, smash_left, smash_right, trivial_cocycle,
    twist_comodule_algebra, twist_hopf, uv_functionals,
)
from .galois import (
    CotensorAlgebra, DeformationResult, FiniteEquivariantTriple,
    GaloisObjectFinite, GnsData, box_tensor_hilbert, box_tensor_kernel,
    check_r_twisted_volume_finite, check_spectral_decomposition, cotensor,
    cotensor_chain_supergroup, deform_triple_finite, gns,
    hopf_surjection_report, reconstruct_hopf, round_trip_triple,
    spectral_subspaces, verify_cocycle_equivalence,
)

__all__ = [name for name in dir() if not name.startswith("_")]
