"""Trapping redundancy of binary linear codes: bounds, scanners and constructions."""

from .bounds import (
    BoundReport,
    RankDistribution,
    corollary2_check,
    expected_rank_deficiency,
    expected_repair_mass,
    gaussian_binomial,
    gv_check,
    lll_bound,
    rank_distribution,
    theorem1_bound,
)
from .codecs import catalog, emit_alist, parse_alist, parse_dense, read_matrix
from .construct import ConstructionResult, estimate_Z, las_vegas_minimal, sample_and_repair
from .gf2core import (
    BinaryMatrix,
    LinearCode,
    enumerate_rowspace,
    minimum_distance,
    nullspace_basis,
    rank,
    sample_codeword,
)
from .oracle import OracleResult, exact_collective, exact_plain
from .trapscan import TrapProfile, TrapReport, check_oa, odd_row_count, scan

__version__ = "0.1.0"
