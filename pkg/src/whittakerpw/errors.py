"""Exception hierarchy shared by every module of the package."""


class WhittakerPWError(Exception):
    """Base class; the CLI maps any subclass to exit status 2."""


class DivisionByZero(WhittakerPWError, ZeroDivisionError):
    pass


class IrrationalPole(WhittakerPWError):
    """A denominator has a factor without rational roots."""


class PoleOnContour(WhittakerPWError):
    pass


class NoSolution(WhittakerPWError):
    pass


class Underdetermined(WhittakerPWError):
    """The linear system is consistent but has a positive-dimensional solution set.

    ``particular`` is one solution (free variables set to zero) and ``nullity``
    the dimension of the solution space.
    """

    def __init__(self, particular, nullity):
        super().__init__(f"solution space has dimension {nullity}")
        self.particular = particular
        self.nullity = nullity


class GuardExceeded(WhittakerPWError):
    pass


class ProbeVanishes(WhittakerPWError):
    pass


class InconsistentRatio(WhittakerPWError):
    pass


class NoExpansion(WhittakerPWError):
    pass


class NoSolutionUpToDegree(WhittakerPWError):
    def __init__(self, max_degree):
        super().__init__(f"no polynomial solution of degree <= {max_degree}")
        self.max_degree = max_degree


class NotProportional(WhittakerPWError):
    pass


class InconsistentCalibration(WhittakerPWError):
    pass


class NotCompactlySupported(WhittakerPWError):
    """A wave packet would not have finite support on the torus lattice."""


class SupportNotCertified(WhittakerPWError):
    pass


class NotVeryRegular(WhittakerPWError):
    """Phi times a constant-term coefficient is not a Laurent polynomial."""


class InputParse(WhittakerPWError):
    pass
