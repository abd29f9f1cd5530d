"""Exact arithmetic for quadratic fields: forms, class groups, units, S-unit modules."""

from .field import (
    DEFAULT_DISC_BOUND,
    DiscriminantBoundError,
    FundamentalUnit,
    QElement,
    QuadraticError,
    QuadraticField,
    class_number,
    fundamental_unit,
    ideal_class_order,
    narrow_class_number,
    splitting,
)
from .units import GeneratorNotFoundError, UnitModuleDescription, s_class_number, unit_module

__all__ = [
    "DEFAULT_DISC_BOUND", "DiscriminantBoundError", "FundamentalUnit", "GeneratorNotFoundError", "QElement",
    "QuadraticError", "QuadraticField", "UnitModuleDescription", "class_number", "fundamental_unit",
    "ideal_class_order", "narrow_class_number", "s_class_number", "splitting", "unit_module",
]
