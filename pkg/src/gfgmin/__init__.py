"""Good-for-games parity automata: simulation games, vertex-cover
reductions, and bounded minimization.

The package decides simulation-based language inclusion and equivalence
between nondeterministic parity automata, builds the cover automata that tie
automaton size to vertex covers of a graph, verifies the structural facts
behind that tie, and searches size-bounded candidate spaces for small
equivalent automata.
"""

from .automata import (
    Alphabet,
    Kind,
    LassoWord,
    ParityAutomaton,
    Sink,
    StateRef,
    Target,
    default_sink_priorities,
    format_ref,
    ref_sort_key,
    states_with_nonempty_language,
)
from .formats import (
    ParseError,
    RunReport,
    file_digest,
    normalize_symbol,
    parse_automaton,
    parse_graph,
    parse_lasso,
    parse_report,
    report_from_json,
    serialize_automaton,
    serialize_graph,
    serialize_lasso,
)
from .gfg import gfg_equivalent, includes, is_gfg_with_reference
from .minimize import (
    Budget,
    Measure,
    MinimizeOutcome,
    SearchSpec,
    SearchStatus,
    Truncation,
    enumerate_candidates,
    measure_of,
    minimize,
)
from .reduction import (
    STOP_SYMBOL,
    ItemResult,
    NiceGraph,
    StateClassification,
    StructureMode,
    StructureReport,
    adjusted_contains,
    build_cover_automaton,
    characteristic_contains,
    check_core_structure,
    classify_states,
    cover_state_labels,
    extract_cover,
    graph_alphabet,
    is_vertex_cover,
    make_graph,
    min_vertex_cover_bruteforce,
    validate_nice,
    vertex_symbol,
)
from .simulation import (
    Choice,
    PositionalStrategy,
    Response,
    SimulationArena,
    SolveResult,
    build_arena,
    check_positional_strategy,
    dump_arena,
    solve_verifier,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "Budget",
    "Choice",
    "ItemResult",
    "Kind",
    "LassoWord",
    "Measure",
    "MinimizeOutcome",
    "NiceGraph",
    "ParityAutomaton",
    "ParseError",
    "PositionalStrategy",
    "Response",
    "RunReport",
    "STOP_SYMBOL",
    "SearchSpec",
    "SearchStatus",
    "SimulationArena",
    "Sink",
    "SolveResult",
    "StateClassification",
    "StateRef",
    "StructureMode",
    "StructureReport",
    "Target",
    "Truncation",
    "adjusted_contains",
    "build_arena",
    "build_cover_automaton",
    "characteristic_contains",
    "check_core_structure",
    "check_positional_strategy",
    "classify_states",
    "cover_state_labels",
    "default_sink_priorities",
    "dump_arena",
    "enumerate_candidates",
    "extract_cover",
    "file_digest",
    "format_ref",
    "gfg_equivalent",
    "graph_alphabet",
    "includes",
    "is_gfg_with_reference",
    "is_vertex_cover",
    "make_graph",
    "measure_of",
    "min_vertex_cover_bruteforce",
    "minimize",
    "normalize_symbol",
    "parse_automaton",
    "parse_graph",
    "parse_lasso",
    "parse_report",
    "ref_sort_key",
    "report_from_json",
    "serialize_automaton",
    "serialize_graph",
    "serialize_lasso",
    "solve_verifier",
    "states_with_nonempty_language",
    "validate_nice",
    "vertex_symbol",
    "__version__",
]
