"""Word-vector tables, phrase vectors and the argument similarity score."""

from __future__ import annotations

import gzip
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np


class EmbeddingFormatError(ValueError):
    pass


class EmbeddingTable:
    """Immutable word -> vector map with an optional lowercase fallback on lookup."""

    def __init__(self, vectors: dict[str, np.ndarray], dim: int, lowercase_fallback: bool = True):
        for word, vec in vectors.items():
            if vec.shape != (dim,):
                raise EmbeddingFormatError(f"vector for {word!r} has shape {vec.shape}, expected ({dim},)")
            vec.setflags(write=False)
        self._vectors = vectors
        self.dim = dim
        self.lowercase_fallback = lowercase_fallback

    def __len__(self):
        return len(self._vectors)

    def __contains__(self, word):
        return self.lookup(word) is not None

    def lookup(self, word: str) -> np.ndarray | None:
        vec = self._vectors.get(word)
        if vec is None and self.lowercase_fallback:
            vec = self._vectors.get(word.lower())
        return vec

    def words(self) -> list[str]:
        return list(self._vectors)


def _open_text(path: Path):
    if path.suffix == ".gz":
        return gzip.open(path, "rt", encoding="utf-8")
    return open(path, encoding="utf-8")


def load_table(path, lowercase_fallback: bool = True) -> EmbeddingTable:
    """Load GloVe-style text vectors; a word2vec ``count dim`` header line is auto-detected.

    Duplicate words keep their first vector.
    """
    path = Path(path)
    vectors: dict[str, np.ndarray] = {}
    dim = None
    with _open_text(path) as f:
        for lineno, line in enumerate(f, 1):
            fields = line.rstrip("\n").split()
            if not fields:
                continue
            if lineno == 1 and len(fields) == 2 and all(x.isdigit() for x in fields):
                dim = int(fields[1])
                continue
            word, values = fields[0], fields[1:]
            if dim is None:
                dim = len(values)
            if len(values) != dim or dim == 0:
                raise EmbeddingFormatError(
                    f"{path}:{lineno}: expected {dim} components for {word!r}, found {len(values)}")
            if word in vectors:
                continue
            try:
                vectors[word] = np.array(values, dtype=np.float64)
            except ValueError:
                raise EmbeddingFormatError(f"{path}:{lineno}: non-numeric component") from None
    if dim is None:
        raise EmbeddingFormatError(f"{path}: no vectors found")
    return EmbeddingTable(vectors, dim, lowercase_fallback)


def phrase_vector(tokens: Iterable, table: EmbeddingTable) -> np.ndarray:
    """Mean vector of the in-vocabulary tokens; zero vector when none are known.

    ``tokens`` may be :class:`~gapping.conllu.Token` objects or plain strings.
    """
    found = []
    for tok in tokens:
        vec = table.lookup(getattr(tok, "form", tok))
        if vec is not None:
            found.append(vec)
    if not found:
        return np.zeros(table.dim)
    return np.mean(found, axis=0)


@dataclass(frozen=True)
class SimilarityParams:
    pos_mismatch_penalty: float = -2.0
    gap_penalty: float = -4.0
    lowercase_fallback: bool = True
    # apply the POS term when tags are equal instead of when they differ
    literal_indicator: bool = False
    # drop the embedding distance term (POS-only scoring)
    pos_only: bool = False

    def __post_init__(self):
        if self.pos_mismatch_penalty > 0:
            raise ValueError("pos_mismatch_penalty must be <= 0")
        if self.gap_penalty > 0:
            raise ValueError("gap_penalty must be <= 0")


def sim(g, f, params: SimilarityParams = SimilarityParams()) -> float:
    """Similarity of two arguments: negative embedding distance plus the POS penalty.

    ``g`` and ``f`` need ``vector`` and ``head_upos`` attributes.
    """
    vg = np.asarray(g.vector, dtype=np.float64)
    vf = np.asarray(f.vector, dtype=np.float64)
    if vg.shape != vf.shape:
        raise ValueError(f"phrase vectors differ in shape: {vg.shape} vs {vf.shape}")
    score = 0.0 if params.pos_only else -float(np.linalg.norm(vg - vf))
    tags_differ = g.head_upos != f.head_upos
    if tags_differ != params.literal_indicator:
        score += params.pos_mismatch_penalty
    return score
