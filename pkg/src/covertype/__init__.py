"""Covering-type bounds, good-cover verification and explicit good covers of small complexes."""
from .bounds import bouquet_ct, combined_lower_bound, surface_ct_bounds
from .complex import SimplicialComplex, make_complex
from .covers import Cover, contractibility, nerve, verify_good_cover
from .homology import betti_numbers, cup_product_h1

__all__ = [
    "Cover", "SimplicialComplex", "betti_numbers", "bouquet_ct", "combined_lower_bound",
    "contractibility", "cup_product_h1", "make_complex", "nerve", "surface_ct_bounds", "verify_good_cover",
]
