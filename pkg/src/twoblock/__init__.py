"""Two-block oriented paths in oriented graphs of large minimum semidegree."""

from .digraph import (
    DegreeSummary,
    OrientedGraph,
    build_graph,
    degree_summary,
    from_dict,
    from_json,
    induced_subgraph,
    load_graph,
    min_semidegree,
    reverse_graph,
    save_graph,
    to_dict,
    to_dot,
    to_json,
)
from .embedder import (
    CASES,
    ProofTrace,
    check_trace,
    dispatch,
    embed_two_block,
    is_small_ell,
    meets_threshold,
    normalize_spec,
    required_semidegree,
    threshold,
)
from .errors import (
    BudgetExhausted,
    CaseAnalysisExhausted,
    GraphError,
    PathError,
    SpecOutOfRange,
    ThresholdNotMet,
    TwoBlockError,
)
from .generators import (
    GeneratorSpec,
    blowup,
    circulant,
    directed_triangle,
    generate,
    random_with_min_semidegree,
    regular_tournament,
)
from .longest import SearchBudget, greedy_maximal_path, longest_directed_path, maximal_extension
from .oracle import OracleReport, contains_all_orientations, contains_two_block, find_pattern_embedding
from .paths import (
    Embedding,
    HostPath,
    Orientation,
    PathPattern,
    TwoBlockSpec,
    TwoBlockWalk,
    concat_reverse,
    extract_two_block,
    verify_embedding,
)

__version__ = "0.1.0"
