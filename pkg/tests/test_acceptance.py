"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` (lines show with or
without ``-s``) or ``python tests/test_acceptance.py``.  Set
``GAPPING_EXTERNAL_CONLLU`` to a UD file to include it in the fidelity check.
"""

import os
import random
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from gapping import (
    Document,
    NodeId,
    align,
    brute_force_align,
    data_path,
    load_table,
    parse_document,
    read_conllu,
    score_enhanced,
    serialize_document,
)
from gapping.composite import enhance_sentence_composite
from gapping.convert import enhanced_to_basic_orphan, enhanced_to_composite
from gapping.embeddings import SimilarityParams, sim
from gapping.orphan import EnhanceStats, enhance_sentence_orphan
from gapping.relations import copy_source, is_function

N = NodeId.parse


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def check(number, title):
        ok = False
        try:
            yield
            ok = True
        finally:
            with capsys.disabled():
                print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}")
    return check


def fixture_sentences():
    return list(read_conllu(data_path("gold_en.conllu"))) + list(read_conllu(data_path("gold_sv.conllu")))


def same_upos_correspondents(gold) -> bool:
    """Every remnant has an argument of the copied predicate with its relation and UPOS."""
    for c in gold.empty_nodes:
        src = copy_source(c)
        for d, rel in gold.enhanced_children(c.id):
            tok = gold[d]
            if d.is_empty or is_function(rel) or any(not h.is_empty for h, _ in tok.deps):
                continue
            if not any(k.deprel == rel and k.upos == tok.upos for k in gold.children(src)):
                return False
    return True


def serialize(sent) -> str:
    return serialize_document(Document([sent]))


def test_c1_orphan_round_trip(criterion):
    with criterion(1, "orphan oracle round trip"):
        start = time.perf_counter()
        golds = fixture_sentences()
        tables = {"en": load_table(data_path("toy_en.txt")), "sv": load_table(data_path("toy_sv.txt"))}
        systems = []
        for g in golds:
            table = tables["sv" if g.sent_id.startswith("sv") else "en"]
            systems.append(enhance_sentence_orphan(enhanced_to_basic_orphan(g), table))
        elapsed = time.perf_counter() - start

        kinds = {(g.misc_dict().get("GapType")) for s in golds for g in s.tokens} - {None}
        assert kinds == {"SinglePredicate", "ContiguousPredArg", "NonContiguousPredArg", "VerbCluster"}
        assert len(golds) >= 20

        everything = score_enhanced(Document(systems), Document(golds))
        assert (everything.up, everything.ur) == (100, 100)
        pairs = [(s, g) for s, g in zip(systems, golds) if same_upos_correspondents(g)]
        assert pairs
        subset = score_enhanced(Document([s for s, _ in pairs]), Document([g for _, g in pairs]))
        assert (subset.lp, subset.lr) == (100, 100)
        assert elapsed < 5.0


def test_c2_composite_round_trip(criterion):
    with criterion(2, "composite oracle round trip"):
        golds = fixture_sentences()
        single = [g for g in golds if g.sent_id != "single-05"]
        for g in single:
            comp = enhanced_to_composite(g)
            out = enhance_sentence_composite(comp)
            # the enhanced graph comes back byte for byte; HEAD/DEPREL keep the composite tree
            for a, b in zip(g.tokens, out.tokens):
                keep = lambda t: t.to_line().split("\t")  # noqa: E731
                fa, fb = keep(a), keep(b)
                assert fa[:6] + fa[8:] == fb[:6] + fb[8:], g.sent_id
            assert len(g.tokens) == len(out.tokens)
            assert serialize(enhanced_to_composite(out)) == serialize(comp), g.sent_id

        two = next(g for g in golds if g.sent_id == "single-05")
        stats = EnhanceStats()
        out = enhance_sentence_composite(enhanced_to_composite(two), stats)
        chains = [c for c in out.empty_nodes if not c.deps[0][0].is_empty]
        assert stats.gaps_resolved == 2 and len(chains) == 2


def test_c3_alignment_oracle(criterion):
    with criterion(3, "alignment vs brute force on 200+ instances"):
        rng = random.Random(7)
        start = time.perf_counter()
        for k in range(240):
            n, m = rng.randint(0, 5), rng.randint(0, 5)
            if k % 2:
                mat = [[-rng.uniform(0, 8) for _ in range(m)] for _ in range(n)]
                gap = -rng.uniform(0.1, 5)
            else:
                mat = [[rng.randint(-5, 0) for _ in range(m)] for _ in range(n)]
                gap = rng.randint(-3, 0)
            score = lambda g, f: mat[g][f]  # noqa: E731
            fast = align(list(range(n)), list(range(m)), score, gap)
            slow = brute_force_align(list(range(n)), list(range(m)), score, gap)
            assert abs(fast.score - slow.score) < 1e-9
            assert fast.pairs == slow.pairs
        assert time.perf_counter() - start < 1.0


class _Arg:
    def __init__(self, vec, tag):
        self.vector, self.head_upos = np.asarray(vec, dtype=float), tag


def test_c4_similarity_identities(criterion):
    with criterion(4, "similarity identities"):
        p = SimilarityParams()
        a = _Arg([0.25, -3.5, 7.0], "NOUN")
        assert abs(sim(a, a, p)) <= 1e-9
        flipped = _Arg(a.vector, "VERB")
        assert abs(sim(a, flipped, p) - p.pos_mismatch_penalty) <= 1e-9
        assert abs(sim(_Arg([1, 0], "NOUN"), _Arg([0, 0], "NOUN"), p) - (-1.0)) <= 1e-9


def by_id(sid):
    return next(s for s in fixture_sentences() if s.sent_id == sid)


def test_c5_shared_argument_edges(criterion):
    with criterion(5, "shared-argument edge and partial copy"):
        table = load_table(data_path("toy_en.txt"))
        az = enhance_sentence_orphan(enhanced_to_basic_orphan(by_id("noncontiguous-01")), table)
        copy = az.empty_nodes[0]
        senator = next(t for t in az.words if t.form == "Senator")
        assert (copy.id, "xcomp") in senator.deps

        ww = enhance_sentence_orphan(enhanced_to_basic_orphan(by_id("cluster-05")), table)
        sources = {az_t.form: az_t for az_t in ww.words}
        assert {(c.form, copy_source(c)) for c in ww.empty_nodes} == {
            ("wants", sources["wants"].id), ("write", sources["write"].id)}
        write_copy = next(c for c in ww.empty_nodes if c.form == "write")
        book = next(t for t in ww.words if t.form == "book")
        a = next(t for t in ww.words if t.form == "a" and t.head == book.id)
        assert book.deps == [(write_copy.id, "obj")]
        assert a.deps == [(book.id, "det")]


def test_c6_verb_cluster_chain(criterion):
    with criterion(6, "verb cluster chain of four copies"):
        table = load_table(data_path("toy_en.txt"))
        out = enhance_sentence_orphan(enhanced_to_basic_orphan(by_id("cluster-01")), table)
        chain = sorted(out.empty_nodes, key=lambda t: t.id)
        assert [t.form for t in chain] == ["wanted", "try", "begin", "write"]
        for prev, nxt in zip(chain, chain[1:]):
            assert nxt.deps == [(prev.id, "xcomp")]


LEE = "\n".join([
    "1\tKim\tKim\tPROPN\t_\t_\t2\tnsubj\t2:nsubj\t_",
    "2\tsang\tsing\tVERB\t_\t_\t0\troot\t0:root\t_",
    "3\tand\tand\tCCONJ\t_\t_\t4\tcc\t{cc}\t_",
    "4\tLee\tLee\tPROPN\t_\t_\t2\tconj\t{lee}\t_",
]) + "\n"


def test_c7_metric_self_consistency(criterion):
    with criterion(7, "metric self-consistency and corrupted cases"):
        golds = Document(fixture_sentences())
        assert score_enhanced(golds, golds).metrics() == {
            "UP": 100, "UR": 100, "LP": 100, "LR": 100, "SAcc": 100}

        gold = parse_document(LEE.format(cc="4.1:cc", lee="4.1:nsubj")
                              + "4.1\tsang\tsing\tVERB\t_\t_\t_\t_\t2:conj\tCopyOf=2\n\n")
        missed = parse_document(LEE.format(cc="4:cc", lee="2:conj") + "\n")
        r = score_enhanced(missed, gold)
        assert r.counts["gold_edges"] == 2
        assert (r.ur, r.lr, r.sentence_accuracy, r.up, r.lp) == (0, 0, 0, 100, 100) and r.flags

        az = by_id("noncontiguous-01")
        bad = az.copy()
        schweiker = next(t for t in bad.words if t.form == "Schweiker")
        schweiker.deps = [(schweiker.deps[0][0], "iobj")]
        r = score_enhanced(Document([bad]), Document([az]))
        assert r.counts["gold_edges"] == 4
        assert (r.up, r.ur, r.lp, r.lr, r.sentence_accuracy) == (100, 100, 75, 75, 0)


def test_c8_conllu_fidelity(criterion):
    with criterion(8, "CoNLL-U byte fidelity"):
        paths = [data_path("gold_en.conllu"), data_path("gold_sv.conllu")]
        if os.environ.get("GAPPING_EXTERNAL_CONLLU"):
            paths.append(os.environ["GAPPING_EXTERNAL_CONLLU"])
        for path in paths:
            with open(path, encoding="utf-8", newline="") as f:
                text = f.read()
            assert serialize_document(parse_document(text)) == text, str(path)


def test_c9_swedish_smoke(criterion):
    with criterion(9, "Swedish fragment with unmodified pipeline"):
        gold = by_id("sv-01")
        table = load_table(data_path("toy_sv.txt"))
        out = enhance_sentence_orphan(enhanced_to_basic_orphan(gold), table)
        assert serialize(out) == serialize(gold)
        forms = sorted((c.form, str(c.deps[0][1])) for c in out.empty_nodes)
        assert forms == [("tänks", "conj"), ("tänks", "conj"), ("öka", "xcomp"), ("öka", "xcomp")]
        rels = {r for _, _, r in out.enhanced_edges()}
        assert {"nsubj:pass", "xcomp", "obl"} <= rels


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
