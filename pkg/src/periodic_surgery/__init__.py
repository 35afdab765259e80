"""Exact tools for surgery presentations of periodic 3-manifolds.

Lift quotient diagrams to p-periodic links, read off their block-circulant
linking matrices, compute H_1 over Z and Z_p, and run the homological
obstructions to Z_p actions with a circle of fixed points.
"""

from .circulant import (
    BlockCirculantMatrix,
    CirculantMatrix,
    SymmetricCirculantMatrix,
    assemble_block_circulant,
    det_mod_n_formula,
    enumerate_symmetric_circulants,
    expand,
    verify_nullity_lemma,
)
from .diagram import (
    LiftedDiagram,
    SeamTangle,
    is_orbitally_separated,
    is_strongly_periodic,
    lift,
    linking_matrix,
    trace_quotient,
    validate,
)
from .homology import (
    AbelianGroupDecomposition,
    FramedLinkPresentation,
    ObstructionVerdict,
    Verdict,
    first_homology,
    involution_obstruction,
    involution_rank_check,
    mod_p_rank,
    odd_prime_obstruction,
    separated_nullity_check,
    two_by_two_group,
)
from .linalg import IntMatrix, SmithDecomposition, determinant, nullity_mod_p, rank_mod_p, smith_normal_form

__version__ = "0.1.0"
