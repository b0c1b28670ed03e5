"""Exception types shared across the package."""


class FeederError(Exception):
    """Base class for all feederplace errors."""


class FeederFormatError(FeederError):
    """A feeder or placement document is malformed."""


class NotATree(FeederFormatError):
    """Edge set contains a cycle, a disconnected part, or a repeated edge."""


class DuplicateId(FeederFormatError):
    """A node id is declared more than once."""


class RootHasZeroInjection(FeederFormatError):
    """The root (source) node may not be marked zero-injection."""


class NegativeCost(FeederFormatError):
    """Sensor costs must be nonnegative."""


class DanglingEdge(FeederFormatError):
    """An edge references a node that was never declared."""


class MissingCost(FeederFormatError):
    """A node or edge has no cost entry."""


class UnknownNode(FeederError):
    """A node id does not exist in the tree."""


class UnknownEdge(FeederError):
    """A (parent, child) pair is not an edge of the tree."""


class InvalidParameter(FeederError):
    """A generator or query parameter is out of range."""


class RootHasNoParentEdge(FeederError):
    """Asked for the parent edge of the root node."""


class EmptyList(FeederError):
    """A nonempty candidate list was required."""


class NodeNotCritical(FeederError):
    """placement_step was invoked on a node outside the critical set."""


class MismatchedMeasuredSets(FeederError):
    """Two signatures cover different measured edges or nodes."""


class CombinatorialLimit(FeederError):
    """Hypothesis enumeration exceeded the configured cap."""


class InstanceTooLarge(FeederError):
    """Instance exceeds the brute-force node cap."""
