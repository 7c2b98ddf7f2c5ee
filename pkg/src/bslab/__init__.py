"""Briançon-Skoda exponents, Milnor numbers and minimal exponents at the origin."""
from bslab.errors import (
    BSLabError,
    InternalInconsistencyError,
    NonsingularError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    RingMismatchError,
)
from bslab.exact_poly import (
    GLOBAL,
    LOCAL,
    MonomialOrder,
    Polynomial,
    PolyRing,
    parse_polynomial,
    partial_derivatives,
    weighted_degree,
)

__version__ = "0.1.0"
