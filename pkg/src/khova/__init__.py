"""Exact Khovanov homology and Jones superpolynomials from link diagrams."""

from .diagram import (Crossing, DiagramError, KnotDiagram, emit_pd,
                      parse_braid_word, parse_pd_code, validate)
from .gradedalg import IntMatrix, LaurentPoly1, LaurentPoly2
from .hypercube import (Hypercube, build_hypercube, extended_jones,
                        reduced_jones, state_sum_jones)
from .complexes import (ChainComplex, build_complex, build_differentials,
                        chain_groups, check_nilpotent)
from .homology import (HomologyTable, Superpolynomial, correction_term,
                       euler_check, homology_dims, superpolynomial)

__version__ = "0.1.0"

__all__ = [
    "Crossing", "DiagramError", "KnotDiagram", "emit_pd", "parse_braid_word",
    "parse_pd_code", "validate", "IntMatrix", "LaurentPoly1", "LaurentPoly2",
    "Hypercube", "build_hypercube", "extended_jones", "reduced_jones",
    "state_sum_jones", "ChainComplex", "build_complex", "build_differentials",
    "chain_groups", "check_nilpotent", "HomologyTable", "Superpolynomial",
    "correction_term", "euler_check", "homology_dims", "superpolynomial",
]
