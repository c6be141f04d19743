"""Diagrams: PD codes, sliced Morse words, slicing, cutting and singular diagrams."""

from .braids import braid_closure_pd, braid_closure_sliced, parse_braid
from .corpus import double_unknot_framing_corpus, link, move_equivalence_corpus
from .pd import PDLink, PDParseError, format_pd, parse_pd
from .singular import FormalTangleSum, make_singular_representative, resolve_singularities
from .sliced import SlicedTangle, TangleError, closure, cut
from .slicing import slice_link

__all__ = [
    "braid_closure_pd", "braid_closure_sliced", "parse_braid", "double_unknot_framing_corpus",
    "link", "move_equivalence_corpus", "PDLink", "PDParseError", "format_pd", "parse_pd",
    "FormalTangleSum", "make_singular_representative", "resolve_singularities", "SlicedTangle",
    "TangleError", "closure", "cut", "slice_link",
]
