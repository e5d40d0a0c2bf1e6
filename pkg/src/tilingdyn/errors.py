"""Exception hierarchy shared by all subsystems."""


class TilingDynError(Exception):
    """Base class for all toolkit errors."""


# -- algebra ---------------------------------------------------------------

class ReduciblePolynomial(TilingDynError):
    pass


class NoRealRootAboveOne(TilingDynError):
    pass


class NotPrimitive(TilingDynError):
    pass


# -- substitutions ---------------------------------------------------------

class EmptyRule(TilingDynError):
    pass


class NotExpanding(TilingDynError):
    pass


class PeriodicTilingSpace(TilingDynError):
    pass


class NotConstantLength(TilingDynError):
    pass


# -- windows and metrics ---------------------------------------------------

class RadiusExceedsWindow(TilingDynError):
    pass


class WindowTooSmall(TilingDynError):
    pass


class ResourceBudget(TilingDynError):
    pass


# -- cut-and-project -------------------------------------------------------

class ProjectionNotInjective(TilingDynError):
    pass


class DegenerateWindow(TilingDynError):
    pass


class DensityUndecided(TilingDynError):
    pass


class RegionTooLarge(TilingDynError):
    pass


class NoCalibrationFound(TilingDynError):
    pass


# -- proximality engine ----------------------------------------------------

class NodeBudgetExceeded(TilingDynError):
    """Raised when the pair-overlap graph outgrows its node budget.

    Carries the partial graph so callers can dump it for diagnosis instead of
    reporting a verdict.
    """

    def __init__(self, message, partial_graph=None):
        super().__init__(message)
        self.partial_graph = partial_graph


class Undecided(TilingDynError):
    """A semi-decision procedure ran out of budget without a certificate."""


# -- input files -----------------------------------------------------------

class SpecFileError(TilingDynError):
    pass
