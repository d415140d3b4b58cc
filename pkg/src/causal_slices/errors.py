"""Exception hierarchy shared by all modules."""


class CausalSliceError(Exception):
    """Base class for every error raised by this package."""


class ParseError(CausalSliceError):
    """Malformed midsection/slice file."""


# 2D cell complexes

class SurfaceError(CausalSliceError):
    pass


class MalformedCell(SurfaceError):
    pass


class EdgeColourConflict(SurfaceError):
    pass


class EdgeInTooManyCells(SurfaceError):
    pass


class CellsShareTwoEdges(SurfaceError):
    pass


class NonSurfaceLink(SurfaceError):
    pass


class Disconnected(CausalSliceError):
    pass


class NotADisc(CausalSliceError):
    pass


class NotASphere(CausalSliceError):
    pass


class NoArcs(CausalSliceError):
    """Disc boundary is monochromatic, so it has no alternating arcs."""


class BudgetExceeded(CausalSliceError):
    pass


# 3D complexes

class Complex3Error(CausalSliceError):
    pass


class MonochromeTetra(Complex3Error):
    pass


class NonPseudomanifold(Complex3Error):
    pass


class DuplicateTetra(Complex3Error):
    pass


class EmptyBoundary(Complex3Error):
    pass


class SideNotCylinder(Complex3Error):
    pass


class MonochromePartNotDisc(Complex3Error):
    pass


class MonochromePartNotSphere(Complex3Error):
    pass


class InterfaceMismatch(Complex3Error):
    pass


class MembershipFailed(CausalSliceError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
