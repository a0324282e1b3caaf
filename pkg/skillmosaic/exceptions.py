"""Custom exceptions raised throughout skillmosaic."""


class InputError(ValueError):
    """Raised when a caller hands over ids, states or conditions that do not
    fit the scenario (unknown object ids, mismatched object sets, a goal
    predicate where an equality condition is required)."""

    pass


class ScenarioError(InputError):
    """Raised when a scenario document is malformed or describes an invalid
    world (overlapping table and bin, invalid start state)."""

    pass


class ParameterError(ValueError):
    """Raised when a skill parameter lies outside its admissible range."""

    pass


class PreconditionError(ValueError):
    """Raised when a skill is invoked on a state violating its precondition,
    e.g. pushing a heavy object or pushing with a closed grip."""

    pass


class CapabilityError(ValueError):
    """Raised when a skill is used in a role it cannot play, or an operation
    is applied to an object that does not support it."""

    pass


class UndefinedCostError(ValueError):
    """Raised when the cost of an outcome without any valid rollout is
    requested."""

    pass


class GraphValidationError(ValueError):
    """Raised when a node or edge would break the mosaic graph invariants."""

    pass


class PathNotFoundError(LookupError):
    """Raised when no start-to-goal path exists in a mosaic graph."""

    pass


class SnapshotParseError(ValueError):
    """Raised when a graph or plan snapshot cannot be parsed."""

    pass


class PlannerError(ValueError):
    """Raised when a planner is misconfigured and cannot run at all."""

    pass


class ConfigItemValidationError(ValueError):
    """Raised when a config item value is invalid."""

    pass


class ConfigGroupValidationError(ValueError):
    """Raised when a config group as a whole is invalid."""

    pass
