"""Sublocales of finite frames, the smooth sublocale lattice S_b(L), the
locally closed semilattice LC(L), its admissible-upper-set completion, and
decision procedures for lifting frame maps."""

from .bruns_lakser import JoinHom, JoinSemilattice, enumerate_AU, is_admissible_morphism, lift_AU
from .catalog import boolean, chain, named_frame, product
from .correspondence import build_iso, correspondence, iso_table
from .lc import LcPair, lc_elements, lc_meet, nu_supp_formula
from .lifts import FrameMorphism, build_sb_lift, check_WDb, is_locally_exact_morphism
from .order import FiniteFrame, FinitePoset, build_frame
from .sublocales import enumerate_sublocales, smooth_sublocales

__all__ = [
    "FinitePoset",
    "FiniteFrame",
    "build_frame",
    "chain",
    "boolean",
    "product",
    "named_frame",
    "enumerate_sublocales",
    "smooth_sublocales",
    "LcPair",
    "lc_elements",
    "lc_meet",
    "nu_supp_formula",
    "JoinSemilattice",
    "JoinHom",
    "enumerate_AU",
    "is_admissible_morphism",
    "lift_AU",
    "correspondence",
    "build_iso",
    "iso_table",
    "FrameMorphism",
    "check_WDb",
    "is_locally_exact_morphism",
    "build_sb_lift",
]
