"""Combinatorics of string algebras: bands, bridges and Ziegler spectrum ranks."""
from .bands import BandClass, BandCensus, NonDomesticError, analyse_bands, canonical_band, enumerate_bands, is_domestic
from .bridge import ALL, ASCENDING, DESCENDING, band_factorise, band_free_strings, bridge_quiver, bridges, indent
from .homoracle import build_module, graph_map_count, hom_dim_oracle
from .presentation import (Presentation, PresentationError, load_preset, opposite_presentation,
                           parse_presentation, validate_string_algebra)
from .spectrum import (Adic, Bounds, FiniteBand, FiniteString, Generic, InfString, NOT_COVERED, Prufer,
                       cb_rank, dual_point, enumerate_points, in_basic_nbhd, kg_dimension, mdim_string,
                       parse_point)
from .words import (InfiniteWord, Letter, Word, classify_ends, compare_to_band_power, factor_occurrences,
                    h_assignment, h_compare, image_occurrences, invert, is_string, parse_word)

__version__ = "0.1.0"
