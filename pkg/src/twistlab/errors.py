"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Two operators of different site counts were combined."""


class ContractViolation(ValueError):
    """A precondition (e.g. Hermiticity of an operator) was violated."""


class CapacityError(ValueError):
    """Dense simulation was requested beyond the supported qubit count."""


class LatticeError(ValueError):
    """A lattice spec is malformed (bad defect, non-commuting result, ...)."""


class PathError(ValueError):
    """A string path is malformed or cannot be routed."""


class CompileError(RuntimeError):
    """Ground-state compilation failed (no representative, conflicts, ...)."""


class PlanError(ValueError):
    """A code-deformation plan step is invalid for the current graph."""
