"""Motivic entropy toolkit: Witt vectors, motivic zeta functions and information loss."""
from .errors import (
    ClassSyntaxError,
    CountingError,
    EnumerationCapError,
    MotentError,
    PreconditionError,
    RingMismatchError,
)
from .series import Poly, TruncatedSeries
from .witt import WittElement, adams, ghost, ghost_inv, teichmuller
from .logring import LogSeries, entropy_op
from .classes import (
    EulerChar,
    KClass,
    PointCount,
    Poincare,
    kapranov_zeta,
    measure_eval,
    motivic_entropy,
    mutual_information,
    parse_class,
)

__version__ = "0.1.0"

__all__ = [
    "ClassSyntaxError",
    "CountingError",
    "EnumerationCapError",
    "EulerChar",
    "KClass",
    "LogSeries",
    "MotentError",
    "PointCount",
    "Poincare",
    "Poly",
    "PreconditionError",
    "RingMismatchError",
    "TruncatedSeries",
    "WittElement",
    "adams",
    "entropy_op",
    "ghost",
    "ghost_inv",
    "kapranov_zeta",
    "measure_eval",
    "motivic_entropy",
    "mutual_information",
    "parse_class",
    "teichmuller",
]
