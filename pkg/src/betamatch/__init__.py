"""Exact simulation of matching for generalised beta-transformations x -> beta*x + alpha (mod 1)."""

from .numberfield import (
    FieldElement,
    NumberField,
    SlopeClass,
    classify,
    fe_arith,
    fe_inverse,
    fe_sign,
    field_from_minpoly,
    load_field,
    make_field,
    to_decimal,
)

__version__ = "0.1.0"
