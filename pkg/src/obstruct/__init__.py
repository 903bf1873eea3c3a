"""Obstruction theory for lifting problems in chain complexes of free modules.

Exact arithmetic over Z, Q and Z/p.  The main entry points are
:func:`obstruction` (the class of a lifting square), :func:`find_lift`
(an explicit lift when the class vanishes) and :func:`brute_lift` (the
independent global-solve oracle).
"""

from .chain import (ChainComplex, ChainMap, HomologyGroup, cone, compose, hom_complex, homology,
                    identity_map, is_acyclic, is_chain_map, null_homotopy, shift, validate,
                    zero_map)
from .linalg import GF, QQ, ZZ, Matrix, Ring, kernel, rank, snf, solve
from .model import (Factorization, cofibre, factor_acyclic_cof_then_fib,
                    factor_cof_then_acyclic_fib, fibre, hofib, is_cofibration, is_fibration,
                    is_weak_equivalence, suspend, suspend_map)
from .obstruction import (Lift, LiftingSquare, ObstructionClass, SquareError, cobase_change,
                          extract_lift, find_lift, obstruction, obstruction_vanishes, pushforward,
                          retract_transport, rigid_obstruction, rigid_theory, square_basis,
                          weak_equivalence_transport)
from .oracle import brute_homotopy_zero, brute_lift
from .simplicial import (boundary_chain, disk, generating_cofibration, rlp_equivalence_check,
                         simplex_chain, sphere)

__all__ = [
    "ChainComplex", "ChainMap", "HomologyGroup", "cone", "compose", "hom_complex", "homology",
    "identity_map", "is_acyclic", "is_chain_map", "null_homotopy", "shift", "validate",
    "zero_map", "GF", "QQ", "ZZ", "Matrix", "Ring", "kernel", "rank", "snf", "solve",
    "Factorization", "cofibre", "factor_acyclic_cof_then_fib", "factor_cof_then_acyclic_fib",
    "fibre", "hofib", "is_cofibration", "is_fibration", "is_weak_equivalence", "suspend",
    "suspend_map", "Lift", "LiftingSquare", "ObstructionClass", "SquareError", "cobase_change",
    "extract_lift", "find_lift", "obstruction", "obstruction_vanishes", "pushforward",
    "retract_transport", "rigid_obstruction", "rigid_theory", "square_basis",
    "weak_equivalence_transport", "brute_homotopy_zero", "brute_lift", "boundary_chain", "disk",
    "generating_cofibration", "rlp_equivalence_check", "simplex_chain", "sphere",
]
