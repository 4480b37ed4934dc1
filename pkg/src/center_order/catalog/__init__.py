from .core import (
    PSEUDO_CENTERS,
    REFERENCE_SIDES,
    AreaContext,
    Catalog,
    CatalogError,
    CenterDef,
    Sides,
    UnknownCenter,
    ValidationReport,
    area_poly,
    default_catalog,
    eval_center,
    eval_center_family,
    eval_center_numeric,
    eval_center_squares,
    iso_family_coords,
    key_of,
    label,
    load_catalog,
    parse_catalog_text,
    symbolic_coords,
    validate_catalog,
)
from .parser import ParseError, parse_center_expr

__all__ = [
    "PSEUDO_CENTERS",
    "REFERENCE_SIDES",
    "AreaContext",
    "Catalog",
    "CatalogError",
    "CenterDef",
    "ParseError",
    "Sides",
    "UnknownCenter",
    "ValidationReport",
    "area_poly",
    "default_catalog",
    "eval_center",
    "eval_center_family",
    "eval_center_numeric",
    "eval_center_squares",
    "iso_family_coords",
    "key_of",
    "label",
    "load_catalog",
    "parse_catalog_text",
    "parse_center_expr",
    "symbolic_coords",
    "validate_catalog",
]
