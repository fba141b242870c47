"""Exact symbolic model of O(SU_q(2)) at fixed rational q: PBW arithmetic,
the Haar state by invariance solve, Peter-Weyl bases, and the truncated
spinor triple over the Podles sphere."""

from .haar import HaarState
from .pbw import ALPHA, ALPHA_STAR, GAMMA, GAMMA_STAR, SUq2
from .peterweyl import (PeterWeylBasis, canonical_matrix, canonical_scales,
                        fundamental_matrix, spin_one_matrix,
                        verify_corep_matrix)
from .podles import (PodlesData, PodlesRelationError, TruncatedPodlesTriple,
                     podles_generators, relation_residuals_symbolic,
                     rho_variant_generators, truncated_podles_triple)

__all__ = [name for name in dir() if not name.startswith("_")]
