"""WordNet 3.0 parsing, lookups, and query expansion."""

from .bundled import bundled_dict_dir, resolve_dict_dir
from .db import Pointer, Pos, PosStats, Synset, WordNetDb, iter_lemmas, morphy
from .expansion import ExpansionConfig, SemanticVector, TermExpansion, expand_query
from .wndb import load_db, parse_data_line, parse_index_line, parse_wndb

__all__ = [
    "ExpansionConfig",
    "Pointer",
    "Pos",
    "PosStats",
    "SemanticVector",
    "Synset",
    "TermExpansion",
    "WordNetDb",
    "bundled_dict_dir",
    "expand_query",
    "iter_lemmas",
    "load_db",
    "morphy",
    "parse_data_line",
    "parse_index_line",
    "parse_wndb",
    "resolve_dict_dir",
]
