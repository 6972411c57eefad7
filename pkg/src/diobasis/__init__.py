"""Minimal-solution bases of homogeneous linear Diophantine equations.

Four solvers (lexicographic enumeration, completion, graph, slopes) compute
the same canonical basis; a brute-force oracle cross-checks them, an ACU
module turns bases into unifiers, and a benchmark harness compares solver
timings over a seeded class grid.
"""

__version__ = "0.1.0"

from .core import (
    COEFFICIENT_LIMIT,
    DEFAULT_ORACLE_CAP,
    BasisList,
    Bounds,
    CoefficientRangeError,
    DiobasisError,
    Equation,
    EquationFormatError,
    OracleBoxError,
    ResourceLimitError,
    Solution,
    TimeLimitError,
    WeightVector,
    bounds,
    build_weights,
    defect,
    dominates,
    ext_gcd,
    format_basis,
    insert_minimal,
    normalize_zero_weights,
    oracle_basis,
    pareto_min,
    parse_equation,
    shared_weights,
    solve_normalized,
)
from .lex import (
    ALL_VARIANTS,
    BoundKind,
    LexVariant,
    TailKind,
    lex_solve,
    lex_solve_weights,
    tail_solve_one,
    tail_solve_two,
)
from .completion import (
    CompletionStats,
    Proposal,
    completion_solve,
    completion_solve_weights,
    completion_step,
)
from .graph import (
    DefectGraph,
    build_defect_graph,
    graph_solve,
    graph_solve_weights,
    render_adjacency,
)
from .slopes import (
    slopes3,
    slopes_solve,
    slopes_solve_weights,
    solve3_general,
)
from .acu import (
    TopMostProblem,
    Unifier,
    basis_to_unifier,
    equation_to_problem,
    format_unifier,
    problem_to_equation,
    verify_unifier,
)

__all__ = [name for name in dir() if not name.startswith("_")]
