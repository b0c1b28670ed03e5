"""Minimum-cost sensor placement with outage-identifiability guarantees for
radial distribution feeders.

The package has four parts: the feeder model (`model`), the placement
algorithm and its feasibility constraints (`placement`), independent
identifiability and optimality oracles (`oracle`), and a command-line front
end (`cli`).  A small bundled corpus lives in `corpus`.
"""

from .errors import (
    CombinatorialLimit,
    DanglingEdge,
    DuplicateId,
    EmptyList,
    FeederError,
    FeederFormatError,
    InstanceTooLarge,
    InvalidParameter,
    MismatchedMeasuredSets,
    MissingCost,
    NegativeCost,
    NodeNotCritical,
    NotATree,
    RootHasNoParentEdge,
    RootHasZeroInjection,
    UnknownEdge,
    UnknownNode,
)
from .model import (
    CostModel,
    Edge,
    RadialTree,
    Violation,
    export_dot,
    format_cost,
    parse_cost,
    parse_feeder,
    random_radial_tree,
    serialize_feeder,
    validate,
)
from .oracle import (
    DEFAULT_HYPOTHESIS_CAP,
    Hypothesis,
    MeasuredSets,
    MeasurementSignature,
    OutageForest,
    OutageOracle,
    distinguishable_generic,
    distinguishable_worst_case,
    enumerate_hypotheses,
    exhaustive_min_cost,
    flow_closure,
    indistinguishable_loads,
    is_outage_identifiable,
    is_subset_placement,
    measured_sets,
    outage_forest,
    signature,
    witness_report,
)
from .cli import BenchRecord, bench_suite
from .placement import (
    ConstraintReport,
    DpIteration,
    DpStep,
    DpTrace,
    Placement,
    check_constraints,
    critical_set,
    dp_place,
    find_max,
    no_sensor_child,
    placement_cost,
    placement_from_doc,
    placement_step,
    placement_to_doc,
    tie_cost,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
