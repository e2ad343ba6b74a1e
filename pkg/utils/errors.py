"""Exception types raised by tfan

Every error raised by the geometry and divisor code derives from TFanError,
so the tools layer can turn any of them into an error report.
"""

from typing import List, Optional, Tuple


class TFanError(ValueError):
    """Base class of all tfan errors"""


class LatticeError(TFanError):
    """Invalid input to a lattice computation (zero or non-primitive vectors)"""


class GeometryError(TFanError):
    """Malformed polyhedron, cone or divisor"""


class RegularityError(TFanError):
    """Regularity asked for a cone that is not pointed"""


class DowngradeFormError(TFanError):
    """A divisor is not of the form D_0*y_0 + D_inf*y_inf + sum (v_y + sigma)*y"""


class PropernessError(TFanError):
    """A test that needs a p-divisor was given an improper divisor"""


class SliceRuleError(TFanError):
    """A slice does not single out the polyhedron asked for"""


class FanError(TFanError):
    """Invalid fan: mismatched ranks, overlapping cones or an incomplete toric fan"""


class PreconditionError(TFanError):
    """The A-covering construction was started on an unsuitable fan"""

    def __init__(self, message: str, findings: Optional[List[Tuple[str, str, str]]] = None):
        super().__init__(message)
        self.findings = findings or []


class ACoverError(TFanError):
    """A chart could not be built or certified"""


class DocumentError(TFanError):
    """A fan, toric fan or covering document could not be parsed"""

    def __init__(self, message: str, position: str = ""):
        super().__init__(f"{position}: {message}" if position else message)
        self.position = position
