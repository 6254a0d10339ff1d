"""Total Milnor invariants of links, computed from clasp-word data.

The package works with surface systems: per-component clasp words plus a
signed triple-point table.  From these it computes the triple counts ``m``
and ``t``, the quotient ``M`` of the alternating module by the indeterminacy
lattice, and the class of ``m - t`` in ``M``.
"""

from .invariant import (IncomparableError, MilnorClass, TotalMilnorQuotient, classical_mu,
                        invariants_equal, quotient_for, quotient_structure, realize_family,
                        total_invariant)
from .lattice import (HermiteBasis, IntMatrix, SmithDecomposition, cokernel_structure, hnf,
                      lattice_solve, reduce_mod_lattice, snf)
from .linkfile import ParseError, parse_link_file, serialize_link, serialize_link_file
from .nilpotent import (FreeWord, MagnusSeries, check_longitude_identity, emit_presentation, e_ij_of_word,
                        f3_equal, longitude_word, magnus_mul, magnus_of_word)
from .system import (CComplexData, Clasp, ClaspEndpoint, Move, SurfaceSystemData,
                     ValidationError, finger_move, linking_matrix, m_vector, ordered_form,
                     rotate_word, t_vector, to_surface_system, torus_sum, tube_move,
                     validate_ccomplex, validate_system)
from .wedge import WedgeVector, indeterminacy_vector, wedge_coefficient
from .words import CyclicWord, Letter, LinearWord, signed_count, signed_pair_count

__all__ = [
    "CComplexData",
    "Clasp",
    "ClaspEndpoint",
    "CyclicWord",
    "FreeWord",
    "HermiteBasis",
    "IncomparableError",
    "IntMatrix",
    "Letter",
    "LinearWord",
    "MagnusSeries",
    "MilnorClass",
    "Move",
    "ParseError",
    "SmithDecomposition",
    "SurfaceSystemData",
    "TotalMilnorQuotient",
    "ValidationError",
    "WedgeVector",
    "check_longitude_identity",
    "classical_mu",
    "cokernel_structure",
    "e_ij_of_word",
    "emit_presentation",
    "f3_equal",
    "finger_move",
    "hnf",
    "indeterminacy_vector",
    "invariants_equal",
    "lattice_solve",
    "linking_matrix",
    "longitude_word",
    "m_vector",
    "magnus_mul",
    "magnus_of_word",
    "ordered_form",
    "parse_link_file",
    "quotient_for",
    "quotient_structure",
    "realize_family",
    "reduce_mod_lattice",
    "rotate_word",
    "serialize_link",
    "serialize_link_file",
    "signed_count",
    "signed_pair_count",
    "snf",
    "t_vector",
    "to_surface_system",
    "torus_sum",
    "total_invariant",
    "tube_move",
    "validate_ccomplex",
    "validate_system",
    "wedge_coefficient",
]
