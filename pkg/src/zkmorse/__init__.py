"""Discrete Morse theory on n-sphere moment-angle complexes Z_K(D^n, S^{n-1}).

The package builds the coordinate-by-coordinate acyclic matching on the
product-cell model, lists its critical cells, and compares their counts with
cellular homology and with a Hochster-type wedge formula.
"""

__version__ = "0.1.0"

from .chains import BettiTable, ChainComplex
from .complex import (
    Graph,
    SimplicialComplex,
    alexander_dual,
    all_faces,
    boundary_of_simplex,
    deletion,
    flag_of_graph,
    from_facets,
    full_simplex,
    is_chordal,
    is_flag,
    is_shifted,
    join,
    link,
    link_face,
    minimal_nonfaces,
    one_skeleton,
    random_complex,
    restriction,
    shifted_random,
    skeleton_complex,
    star,
)
from .cw import betti_moment_angle, moment_angle_chain_complex, simplicial_betti, wedge_formula
from .errors import BudgetExceeded, HypothesisError, HypothesisNotMet, TheoremViolation
from .io import dump_complex, load_complex
from .morse import (
    pivot_plus,
    build_matching,
    critical_direct,
    critical_recursive,
    morse_betti,
    nonface_certificate,
    shedding_split,
    tilde,
    verify_acyclic,
)
from .vertex_decomp import (
    is_shedding_vertex,
    is_vertex_decomposable,
    shedding_sequence,
    verify_shedding_sequence,
)

__all__ = [name for name in dir() if not name.startswith("_")]
