import gzip
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from gapping.embeddings import (
    EmbeddingFormatError,
    SimilarityParams,
    load_table,
    phrase_vector,
    sim,
)

TOY = "cat 1 0 0 0\ndog 0 1 0 0\nHouse 0 0 2 4\n"


def arg(vec, tag):
    return SimpleNamespace(vector=np.asarray(vec, dtype=float), head_upos=tag)


@pytest.fixture
def toy(tmp_path):
    p = tmp_path / "toy.txt"
    p.write_text(TOY)
    return load_table(p)


def test_load_glove(toy):
    assert toy.dim == 4 and len(toy) == 3


def test_load_word2vec_header(tmp_path, toy):
    p = tmp_path / "w2v.txt"
    p.write_text("3 4\n" + TOY)
    table = load_table(p)
    assert table.dim == 4 and len(table) == 3
    for w in toy.words():
        np.testing.assert_array_equal(table.lookup(w), toy.lookup(w))


def test_load_gzip(tmp_path):
    p = tmp_path / "toy.txt.gz"
    with gzip.open(p, "wt") as f:
        f.write(TOY)
    assert load_table(p).dim == 4


def test_duplicate_keeps_first(tmp_path):
    p = tmp_path / "dup.txt"
    p.write_text("a 1 2\na 3 4\n")
    np.testing.assert_array_equal(load_table(p).lookup("a"), [1, 2])


def test_inconsistent_dim_names_line(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("a 1 2\nb 1 2 3\n")
    with pytest.raises(EmbeddingFormatError, match=":2:"):
        load_table(p)


def test_lookup_miss_and_fallback(toy, tmp_path):
    assert toy.lookup("zebra") is None
    np.testing.assert_array_equal(toy.lookup("CAT"), [1, 0, 0, 0])
    p = tmp_path / "t.txt"
    p.write_text(TOY)
    strict = load_table(p, lowercase_fallback=False)
    assert strict.lookup("CAT") is None and strict.lookup("House") is not None


def test_excerpt_of_bundled_table(table_en):
    assert len(table_en) >= 50
    assert table_en.lookup("xylophone") is None


def test_phrase_vector_single(toy):
    np.testing.assert_array_equal(phrase_vector(["dog"], toy), [0, 1, 0, 0])


def test_phrase_vector_mean(toy):
    # (cat + House) / 2 = ((1+0)/2, 0, (0+2)/2, (0+4)/2)
    np.testing.assert_allclose(phrase_vector(["cat", "House"], toy), [0.5, 0.0, 1.0, 2.0])


def test_phrase_vector_skips_oov(toy):
    np.testing.assert_array_equal(phrase_vector(["zebra", "cat"], toy), [1, 0, 0, 0])


def test_phrase_vector_all_oov(toy):
    np.testing.assert_array_equal(phrase_vector(["zebra", "gnu"], toy), np.zeros(4))


def test_phrase_vector_accepts_tokens(toy):
    tok = SimpleNamespace(form="cat")
    np.testing.assert_array_equal(phrase_vector([tok], toy), [1, 0, 0, 0])


def test_sim_identical_is_zero():
    a = arg([0.3, -1.2], "NOUN")
    assert sim(a, a) == pytest.approx(0.0, abs=1e-9)


def test_sim_tag_mismatch_only():
    assert sim(arg([1, 2], "NOUN"), arg([1, 2], "VERB")) == pytest.approx(-2.0, abs=1e-9)


def test_sim_hand_computed_distance():
    assert sim(arg([1, 0], "NOUN"), arg([0, 0], "NOUN")) == pytest.approx(-1.0, abs=1e-9)


def test_sim_literal_indicator():
    p = SimilarityParams(literal_indicator=True)
    assert sim(arg([1, 0], "NOUN"), arg([0, 0], "NOUN"), p) == pytest.approx(-3.0)
    assert sim(arg([1, 0], "NOUN"), arg([0, 0], "VERB"), p) == pytest.approx(-1.0)


def test_sim_pos_only():
    p = SimilarityParams(pos_only=True)
    assert sim(arg([5, 0], "NOUN"), arg([0, 0], "NOUN"), p) == 0.0
    assert sim(arg([5, 0], "NOUN"), arg([0, 0], "ADJ"), p) == -2.0


def test_sim_dimension_mismatch():
    with pytest.raises(ValueError):
        sim(arg([1, 0], "X"), arg([1, 0, 0], "X"))


def test_params_reject_positive_penalties():
    with pytest.raises(ValueError):
        SimilarityParams(pos_mismatch_penalty=1)
    with pytest.raises(ValueError):
        SimilarityParams(gap_penalty=0.5)


vecs = arrays(np.float64, 5, elements=st.floats(-50, 50))
tags = st.sampled_from(["NOUN", "VERB", "PROPN"])


@given(vecs, vecs, vecs, tags, tags)
def test_sim_properties(u, w, offset, tu, tw):
    a, b = arg(u, tu), arg(w, tw)
    s = sim(a, b)
    assert s <= 0
    assert s == pytest.approx(sim(b, a), abs=1e-9)
    assert sim(a, a) == pytest.approx(0.0, abs=1e-12)
    shifted = sim(arg(u + offset, tu), arg(w + offset, tw))
    assert shifted == pytest.approx(s, abs=1e-6)


@given(vecs, vecs, tags)
def test_tag_flip_shifts_by_penalty(u, w, t):
    other = "X" if t != "X" else "Y"
    same = sim(arg(u, t), arg(w, t))
    diff = sim(arg(u, t), arg(w, other))
    assert same - diff == pytest.approx(2.0, abs=1e-9)
