"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: structural / capacity /
domain problems are usage errors (exit 2), while a CertificationError means
a mathematical claim that the construction relies on failed to verify
(exit 1).
"""


class OrbitQuantError(Exception):
    """Base class for all package-specific errors."""


class StructuralError(OrbitQuantError):
    """Mismatched variable lists, shapes, or algebra contexts."""


class DomainError(OrbitQuantError):
    """Input outside the mathematical domain of an operation.

    Examples: a singular matrix where an invertible one is required, a
    dual point whose symmetric block is not positive definite, a
    non-regular orbit passed to a constructor that needs regularity.
    """


class CapacityError(OrbitQuantError):
    """A resource guard (degree, term count, basis size) was exceeded.

    Raised instead of ever returning a truncated or partial answer.
    """


class CertificationError(OrbitQuantError):
    """An internally verified identity failed.

    This is a primary diagnostic: it signals either a bug or a genuine
    failure of a hypothesis the quantization construction depends on
    (e.g. a commutator that is not a scalar multiple of its generator).
    """
