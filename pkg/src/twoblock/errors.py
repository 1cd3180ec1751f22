"""Exception hierarchy.

Every exception carries a stable ``code`` string so the CLI and the JSON
readers can report failures in a machine-readable way.
"""


class TwoBlockError(Exception):
    code = "error"


class GraphError(TwoBlockError, ValueError):
    code = "invalid_graph"


class LoopArc(GraphError):
    code = "loop_arc"


class TwoCycle(GraphError):
    code = "two_cycle"


class DuplicateArc(GraphError):
    code = "duplicate_arc"


class VertexOutOfRange(GraphError):
    code = "vertex_out_of_range"


class PathError(TwoBlockError, ValueError):
    code = "invalid_path"


class SharedInterior(PathError):
    code = "shared_interior"


class DifferentStart(PathError):
    code = "different_start"


class InsufficientBlocks(PathError):
    code = "insufficient_blocks"


class SpecOutOfRange(TwoBlockError, ValueError):
    code = "spec_out_of_range"


class BudgetExhausted(TwoBlockError):
    """Search stopped on its node or time limit.

    ``partial`` holds whatever the search had at that point (a lower bound
    for path searches, ``None`` for embedding searches).
    """

    code = "budget_exhausted"

    def __init__(self, message, partial=None, nodes=0):
        super().__init__(message)
        self.partial = partial
        self.nodes = nodes


class ThresholdNotMet(TwoBlockError):
    code = "threshold_not_met"


class CaseAnalysisExhausted(TwoBlockError):
    """No case of the dispatch fired although the degree threshold holds.

    This cannot happen for a correct implementation; ``state`` carries
    everything needed to reproduce it.
    """

    code = "theorem_violation"

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state or {}


class GeneratorError(TwoBlockError, ValueError):
    code = "generator_error"


class EvenOrder(GeneratorError):
    code = "even_order"


class Unsatisfiable(GeneratorError):
    code = "unsatisfiable"


class AttemptsExhausted(GeneratorError):
    code = "attempts_exhausted"
