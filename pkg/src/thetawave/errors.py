"""Exception hierarchy.

Two broad families matter to callers: configuration/validation problems
(bad inputs, rejected parameters) and numerical failures (quadrature not
converging, degenerate periods, truncation caps).  The CLI maps the former
to exit code 2 and the latter to exit code 3.
"""


class ThetawaveError(Exception):
    """Base class for all package errors."""


class ValidationError(ThetawaveError):
    """Invalid user input or parameter set."""


class NumericalError(ThetawaveError):
    """A numerical procedure failed or produced an inconsistent result."""


# -- curve parameter validation ------------------------------------------

class NonFinite(ValidationError):
    """An input value is NaN or infinite."""


class NonPositiveModulus(ValidationError):
    """Modulus a must satisfy a > 0."""


class ModulusOrder(ValidationError):
    """Moduli must satisfy a < b."""


class AngleRange(ValidationError):
    """Angle phi outside the accepted open interval."""


# -- quadrature ------------------------------------------------------------

class BranchPointProximity(NumericalError):
    """Integration path violates the clearance to a branch point."""


class InvalidSheetSeed(NumericalError):
    """Square-root seed does not satisfy the curve equation at the path start."""


class ToleranceNotMet(NumericalError):
    """Adaptive refinement exhausted without reaching the requested tolerance."""


class TailNotConverged(NumericalError):
    """Improper tail of an Abelian integral failed its convergence check."""


# -- periods ---------------------------------------------------------------

class DegeneratePeriods(NumericalError):
    """A reduction-constant denominator vanished (degenerate cycle integrals)."""


class NonRealWaveNumber(NumericalError):
    """A wave number came out with a non-negligible imaginary part."""


class SingularUVW(NumericalError):
    """The wave-vector matrix is numerically singular."""


# -- theta functions --------------------------------------------------------

class NomeOutOfRange(ValidationError):
    """Jacobi theta nome must lie in [0, 1)."""


class NotPositiveDefinite(NumericalError):
    """Imaginary part of the period matrix is not positive definite."""


class TruncationOverflow(NumericalError):
    """Theta-series ellipsoid would need more lattice points than the cap allows."""


# -- solution assembly -------------------------------------------------------

class NonRealDelta(NumericalError):
    """Reduced offset vector has a non-negligible imaginary part."""


class NonConstantScale(NumericalError):
    """Pointwise amplitude-scale fit did not come out constant across probes."""


class NegativeScale(NumericalError):
    """Fitted amplitude scale is not positive."""


class DenominatorUnderflow(NumericalError):
    """Theta denominator fell below the configured floor."""


# -- verification ------------------------------------------------------------

class GridTooSmall(ValidationError):
    """Grid interior cannot accommodate the widest finite-difference stencil."""


class RoundoffFloor(NumericalError):
    """Residuals are below the roundoff floor; order estimate is meaningless."""


class FlatField(NumericalError):
    """Cross-correlation peak is not unique; no well-defined drift."""
