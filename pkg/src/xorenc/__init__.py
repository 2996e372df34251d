"""CNF encodings of parity with guess variables: construction, checking, search."""

from .boolfn import ArityError, Assignment, BoolFn, eval_fn, is_fully_sensitive, parity_fn
from .cnf import (
    ClauseError,
    Cnf,
    Encoding,
    computes,
    encodes,
    eval_cnf,
    flip_variable_signs,
    literal_profile,
    make_clause,
    normalize_clause,
    reduce_pure_nondet,
    resolve_out,
    restrict,
)
from .generators import XorCircuit, block_parity_encoding, canonical_cnf, chain_circuit, tseitin
from .sigma3 import (
    Sigma3Circuit,
    Sigma3Formula,
    circuit_to_encoding,
    expand_circuit,
    expand_formula,
    formula_to_encoding,
)
from .analysis import (
    BoundsReport,
    WeightReport,
    bounds_report,
    check_isolated_bound,
    check_weight_bound,
    critical_clause,
    critical_clause_enc,
    implied_sigma3_bound,
    isolated_satisfying,
    partition_heavy_light,
    weight_report,
)
from .search import SearchConfig, SearchResult, find_encoding, min_clauses
from .dimacs import DimacsDocument, parse_dimacs, write_dimacs
from .solver import solve_external

__version__ = "0.1.0"
