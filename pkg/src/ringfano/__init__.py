"""Ring 3-graphs, the co-degree Fano pipeline and extremal constructions."""

from .errors import (
    DeskScaleCapError,
    FormatError,
    IntegrityError,
    InvalidInputError,
    InvalidLabelingError,
    RingFanoError,
    UnsupportedError,
)
from .hypergraph import (
    KGraph,
    TripleGraph,
    blow_up,
    co_neighborhood,
    degree,
    edge_density,
    induced,
    min_l_degree,
    rank_triple,
    unrank_triple,
)
from .embedding import Embedding, find_embedding
from .extremal import TuranResult, brute_ex, brute_ex2, has_lm_property
from .fanofinder import FanoResult, find_fano
from .ringsearch import find_ring_blowup, find_ring_star

__version__ = "0.1.0"

__all__ = [
    "DeskScaleCapError",
    "FormatError",
    "IntegrityError",
    "InvalidInputError",
    "InvalidLabelingError",
    "RingFanoError",
    "UnsupportedError",
    "KGraph",
    "TripleGraph",
    "blow_up",
    "co_neighborhood",
    "degree",
    "edge_density",
    "induced",
    "min_l_degree",
    "rank_triple",
    "unrank_triple",
    "Embedding",
    "find_embedding",
    "TuranResult",
    "brute_ex",
    "brute_ex2",
    "has_lm_property",
    "FanoResult",
    "find_fano",
    "find_ring_blowup",
    "find_ring_star",
]
