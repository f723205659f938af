"""Exception types raised across the toolkit."""


class PosmapError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatchError(PosmapError, ValueError):
    """Operands have incompatible shapes or declared dimensions."""


class NotSquareError(DimensionMismatchError):
    """A square matrix was required."""


class NotHermitianError(PosmapError, ValueError):
    """Hermitian symmetry tolerance exceeded."""


class NotPsdError(PosmapError, ValueError):
    """A positive semidefinite matrix was required."""


class SingularForNegativePowerError(PosmapError, ValueError):
    """Negative matrix power requested for a numerically singular matrix."""


class RankOutOfRangeError(PosmapError, ValueError):
    """Projection rank outside 1..dim."""


class KOutOfRangeError(PosmapError, ValueError):
    """Positivity order k outside its admissible range."""


class ComponentNotKPositiveError(PosmapError, ValueError):
    """First summand of a claimed decomposition violates k-positivity."""


class ComponentNotKCopositiveError(PosmapError, ValueError):
    """Second summand of a claimed decomposition violates k-copositivity."""


class BetaOutOfRangeError(PosmapError, ValueError):
    """Cone exponent outside [0, 1/2]."""


class NotFaithfulError(PosmapError, ValueError):
    """State is too close to singular to define the modular data."""


class NotAStateError(PosmapError, ValueError):
    """Matrix is not a density matrix (Hermitian, PSD, unit trace)."""


class InconsistentSystemError(PosmapError, ValueError):
    """Linear system for the balance-adjoint map has no solution in tolerance."""


class NotInNaturalConeError(PosmapError, ValueError):
    """Vector fails natural-cone membership required by the operation."""


class NotInIntersectionError(PosmapError, ValueError):
    """Vector is not in the intersection of the cone and its transposed cone."""


class NotInPError(PosmapError, ValueError):
    """Vector is not in the bipartite positive cone."""


class ParseError(PosmapError, ValueError):
    """Malformed input document; message carries the offending key path."""


class StaleWitnessError(PosmapError):
    """A stored witness no longer re-evaluates to its recorded value."""
