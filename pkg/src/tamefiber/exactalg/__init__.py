"""Exact coefficient arithmetic and matrix algebra kernel."""

from .rings import ZZ, QQ, Zmod, Rme, ResidueRing, prime_power, valuation
from .finitefield import GF, FFElem, FiniteField, embed, field_with_order_m_roots
from .cyclotomic import CycNum, CyclotomicField, cyclotomic_polynomial
from .artin import (ArtinElem, ArtinLocalRing, zl_mod, zl_t, fl_t, unramified,
                    residue_matrix, section_matrix)
from .matrix import Mat, jordan_block, diag
from .poly import Poly, hensel_factor_lift, poly_gcd, poly_xgcd, roots_in_field

__all__ = [
    "ZZ", "QQ", "Zmod", "Rme", "ResidueRing", "prime_power", "valuation",
    "GF", "FFElem", "FiniteField", "embed", "field_with_order_m_roots",
    "CycNum", "CyclotomicField", "cyclotomic_polynomial",
    "ArtinElem", "ArtinLocalRing", "zl_mod", "zl_t", "fl_t", "unramified",
    "residue_matrix", "section_matrix",
    "Mat", "jordan_block", "diag",
    "Poly", "hensel_factor_lift", "poly_gcd", "poly_xgcd", "roots_in_field",
]
