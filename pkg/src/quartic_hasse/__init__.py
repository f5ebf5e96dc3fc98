"""Exact construction and certification of quartic Thue equations that are
everywhere locally soluble but globally insoluble."""

from .forms import (BinaryQuarticForm, IntegerMatrix2x2, InvariantData,
                    apply_matrix, invariant_pair_admissible, invariants,
                    is_irreducible, is_maximal, realize_invariants,
                    stabilizer_is_trivial)
from .modp import INF, SplitData, splits_completely
from .descent import GFamily, build_family, descend_at
from .local import LocalCertificate, LocalReport, local_everywhere, soluble_over_Zp
from .search import SolutionSet, count_bound, primitive_solutions_in_box
from .density import DensityInterval, brute_force_density, mu_lower_bound
from .witness import WitnessReport, construct_witness, verify_theorem

__version__ = "0.1.0"

__all__ = [
    "BinaryQuarticForm", "IntegerMatrix2x2", "InvariantData", "apply_matrix",
    "invariant_pair_admissible", "invariants", "is_irreducible", "is_maximal",
    "realize_invariants", "stabilizer_is_trivial", "INF", "SplitData",
    "splits_completely", "GFamily", "build_family", "descend_at",
    "LocalCertificate", "LocalReport", "local_everywhere", "soluble_over_Zp",
    "SolutionSet", "count_bound", "primitive_solutions_in_box",
    "DensityInterval", "brute_force_density", "mu_lower_bound",
    "WitnessReport", "construct_witness", "verify_theorem",
]
