"""Reconstruction of elided predicates in gapping constructions over Universal Dependencies."""

from importlib import resources

from .aligner import Alignment, align, brute_force_align
from .composite import enhance_sentence_composite, segment_conjuncts
from .conllu import (
    Document,
    NodeId,
    Sentence,
    Token,
    join_label,
    parse_document,
    read_conllu,
    serialize_document,
    split_label,
    validate,
    write_conllu,
)
from .convert import enhanced_to_basic_orphan, enhanced_to_composite
from .embeddings import EmbeddingTable, SimilarityParams, load_table, phrase_vector, sim
from .evaluate import corpus_stats, score_enhanced, score_remnant_attachment
from .orphan import EnhanceStats, enhance_sentence_orphan

__version__ = "0.1.0"


def data_path(name: str):
    """Path to a bundled data file (gold fixtures, toy embedding tables)."""
    return resources.files(__name__).joinpath("data", name)
