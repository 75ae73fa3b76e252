"""Decide uniqueness and simplicity for C*-algebras of finite topological correspondences."""
from .conditions import (
    ConditionFlag,
    is_strongly_topologically_free_on,
    is_topologically_aperiodic_on,
    is_topologically_free_on,
    is_weakly_topologically_aperiodic_on,
)
from .corr import FinCorr, TPair, image_ideal, is_j_acyclic, jx, ker_phi, preimage_ideal, t_pairs
from .digraph import MultiDigraph, MultivaluedMap, Path, graph_of_map, no_entrance_cycles
from .errors import BudgetExceeded, CpUniqError, InternalInconsistency, InvalidInput, MultiplicityOverflow
from .fintop import FinTopSpace, all_topologies, discrete_space, indiscrete_space, make_space
from .oracles import oracle_condition
from .verdict import (
    AnalysisReport,
    EndoSystem,
    FinQuiver,
    simplicity_verdict,
    toeplitz_verdict,
    uniqueness_verdict,
)

__version__ = "0.1.0"
