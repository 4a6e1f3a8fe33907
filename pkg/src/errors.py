"""Exception hierarchy shared by every metric-dim module."""


class MetricDimError(Exception):
    """Root of all errors raised by this package."""


class ConfigError(MetricDimError, ValueError):
    """Configuration file or environment override is unusable."""


# --- graphs -----------------------------------------------------------------

class GraphError(MetricDimError, ValueError):
    """Invalid graph input."""


class OutOfRangeError(GraphError):
    """A vertex id is outside 0..num_vertices-1."""


class SelfLoopError(GraphError):
    """An edge joins a vertex to itself."""


class DuplicateEdgeError(GraphError):
    """The same undirected edge was given twice."""


class EdgeWithinOnePartError(GraphError):
    """An edge joins two vertices of the same side of the bipartition."""


class DisconnectedGraphError(GraphError):
    """Operation needs finite distances but the graph is disconnected."""


class Graph6Error(GraphError):
    """graph6 bytes could not be decoded."""


class MalformedHeaderError(Graph6Error):
    """The graph6 size prefix or character range is invalid."""


class TruncatedPayloadError(Graph6Error):
    """The graph6 payload length does not match the vertex count."""


# --- families ---------------------------------------------------------------

class FamilyError(MetricDimError, ValueError):
    """Invalid family specification."""


class NTooSmallError(FamilyError):
    """Crown graphs need n >= 3."""


class MTooSmallError(FamilyError):
    """Hamiltonian-cycle complements need m >= 4 (m >= 5 for gap counting)."""


class BadPartitionError(FamilyError):
    """Cycle partition has a part below 2 or does not sum to a valid n."""


class DisconnectedFamilyError(FamilyError):
    """The requested family instance would be disconnected."""


class SpecOutOfClosedFormRangeError(FamilyError):
    """Closed-form distances do not apply (diameter exceeds 3)."""


class SpecParseError(FamilyError):
    """A family spec string could not be parsed."""


class NotAComplementFamilyError(FamilyError):
    """Gap calculus needs a removed-cycle layout; crown graphs have none."""


class FormulaNeedsFamilySpecError(MetricDimError, ValueError):
    """Formula mode was asked for a graph that is not a family instance."""


# --- solving ----------------------------------------------------------------

class SolverError(MetricDimError):
    """Exact search could not finish."""


class BudgetExceededError(SolverError):
    """Node-expansion cap hit before the search completed."""

    def __init__(self, nodes, budget):
        super().__init__(f"search expanded {nodes} nodes, budget is {budget}")
        self.nodes = nodes
        self.budget = budget


# --- gaps and constructions -------------------------------------------------

class GapError(MetricDimError, ValueError):
    """Gap decomposition is undefined for the given landmarks."""


class TooFewLandmarksOnCycleError(GapError):
    """A removed cycle carries fewer than two landmarks."""


class ConstructionError(MetricDimError):
    """A theorem-backed construction could not be produced."""


class InvalidCombinationError(ConstructionError, ValueError):
    """Component size and host size do not describe a connected host."""


class AssemblyFailedError(ConstructionError):
    """An assembled landmark set failed post-verification."""
