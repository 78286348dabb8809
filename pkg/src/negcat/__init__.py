"""Negative cluster categories of type A, simple-minded systems and torsion triples."""

from .orbit import Arc, ArcModel, CatParams, build_arc_model, is_sms, make_params, parse_arcs
from .abelian import AbelianModel
from .torsion3 import check_setup, compute_esets, filter_object, verify_triple

__version__ = "0.1.0"

__all__ = [
    "AbelianModel",
    "Arc",
    "ArcModel",
    "CatParams",
    "build_arc_model",
    "check_setup",
    "compute_esets",
    "filter_object",
    "is_sms",
    "make_params",
    "parse_arcs",
    "verify_triple",
]
