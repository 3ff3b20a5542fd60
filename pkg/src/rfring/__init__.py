"""Reduced representation rings of amalgams of finite groups, computed exactly."""

__version__ = "0.1.0"

from .amalgam import Amalgam, make_amalgam, n_p, n_torsion, oracle_conjugacy, torsion_classes
from .characters import character_table, inner_product, restrict
from .cyclotomic import CyclotomicNumber, root_of_unity
from .groups import (FiniteGroup, conjugacy_classes, direct_product, element_order,
                     from_permutations, hom, make_cyclic)
from .kbook import GLRankInput, gl_rank_check, k_ranks
from .presentations import build_model, certify_isomorphism, parse_presentation
from .repring import element_eval, pullback_lattice, rf_ring, rf_ring_p

__all__ = [
    "Amalgam", "CyclotomicNumber", "FiniteGroup", "GLRankInput", "build_model",
    "certify_isomorphism", "character_table", "conjugacy_classes", "direct_product",
    "element_eval", "element_order", "from_permutations", "gl_rank_check", "hom",
    "inner_product", "k_ranks", "make_amalgam", "make_cyclic", "n_p", "n_torsion",
    "oracle_conjugacy", "parse_presentation", "pullback_lattice", "restrict",
    "rf_ring", "rf_ring_p", "root_of_unity", "torsion_classes",
]
