"""Exact character tables and root-of-unity statistics for small finite groups."""

from .analysis import analyze, theta, theta_prime
from .chartab import CharacterTable, direct_product, parse_table, render_table, validate
from .cyclotomic import Cyclotomic, galois_mean, parse_cyc, root_of_unity
from .dixon import character_table
from .permgroup import enumerate_group, is_nilpotent, parse_gens

__all__ = [
    "CharacterTable",
    "Cyclotomic",
    "analyze",
    "character_table",
    "direct_product",
    "enumerate_group",
    "galois_mean",
    "is_nilpotent",
    "parse_cyc",
    "parse_gens",
    "parse_table",
    "render_table",
    "root_of_unity",
    "theta",
    "theta_prime",
    "validate",
]
