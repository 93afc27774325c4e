"""Exception hierarchy shared by every projtri module."""


class ProjtriError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class DegenerateJoin(ProjtriError):
    """Two equivalent points do not span a line."""


class DegenerateMeet(ProjtriError):
    """Two equivalent lines do not meet in a single point."""


class DegenerateTriangle(ProjtriError):
    """Triangle vertices are collinear (or representatives dependent)."""


class AllAtInfinity(ProjtriError):
    """Triangle and query all lie on the plane-aligned line at infinity."""


class NotInterior(ProjtriError):
    pass


class NotOnEdge(ProjtriError):
    pass


class NotFlippable(ProjtriError):
    """Raised by edge flips; ``reason`` is ``"non-simple"`` or ``"geometry"``."""

    def __init__(self, reason, message=""):
        super().__init__(message or reason)
        self.reason = reason


class NotPseudo(ProjtriError):
    pass


class NotInRegion(ProjtriError):
    pass


class WalkStuck(ProjtriError):
    """Point location gave up after exhausting its restart budget."""


class DegenerateQuad(ProjtriError):
    """Three of the four quadrangulation points are collinear."""


class NoSeed(ProjtriError):
    exit_code = 2

    def __init__(self, message=None):
        super().__init__(
            message
            or "no six points in general position were found; no complete "
            "method for finding such a set is known, so the input may still "
            "admit one the implemented strategies missed"
        )


class CollinearObstruction(ProjtriError):
    exit_code = 3

    def __init__(self, message=None):
        super().__init__(
            message
            or "neither candidate diagonal of the remaining pseudo-point region "
            "can be flipped: the two extra points are collinear with the "
            "quadrangulation"
        )


class ParseError(ProjtriError):
    exit_code = 4


class ValidationFailed(ProjtriError):
    exit_code = 5


class SingularFrame(ProjtriError):
    pass


class BudgetExceeded(ProjtriError):
    pass
