"""Scoring reconstructed graphs against gold, and treebank statistics.

Only edges touching a copy node are scored (dependents labelled ``punct`` or
``cc`` excluded).  Copy nodes of the two graphs are matched by the token they
copy, their depth in the copy chain and their order among copies sharing
both; this needs no labels and no surface position.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .conllu import Document, NodeId, Sentence, base_relation, is_composite
from .relations import copy_source

EXCLUDED = frozenset({"punct", "cc"})
GAP_TYPE_KEY = "GapType"


class EvalInputError(ValueError):
    """System and gold files do not describe the same tokens."""


def _check_parallel(system: Document, gold: Document) -> None:
    if len(system) != len(gold):
        raise EvalInputError(f"{len(system)} system sentences vs {len(gold)} gold sentences")
    for i, (s, g) in enumerate(zip(system, gold), 1):
        sf = [t.form for t in s.words]
        gf = [t.form for t in g.words]
        if sf != gf:
            raise EvalInputError(f"sentence {i} ({g.sent_id or '?'}): token sequences differ")


def _copy_depth(sent: Sentence, nid: NodeId) -> int:
    depth, seen = 0, {nid}
    while True:
        parents = sorted(h for h, _ in sent[nid].deps if h.is_empty)
        if not parents or parents[0] in seen:
            return depth
        nid = parents[0]
        seen.add(nid)
        depth += 1


def copy_keys(sent: Sentence) -> dict[NodeId, tuple]:
    """Label-independent key for every copy node: (source, chain depth, occurrence)."""
    raw = {}
    for tok in sent.empty_nodes:
        src = copy_source(tok)
        if src is None:
            same = [w.id for w in sent.words if w.form == tok.form]
            src = same[0] if same else tok.form
        raw[tok.id] = (str(src), _copy_depth(sent, tok.id))
    seen: Counter = Counter()
    keys = {}
    for nid in sorted(raw):
        keys[nid] = ("copy",) + raw[nid] + (seen[raw[nid]],)
        seen[raw[nid]] += 1
    return keys


def scored_edges(sent: Sentence) -> Counter:
    """Multiset of ``(head_key, dep_key, relation)`` for copy-node edges."""
    keys = copy_keys(sent)
    key = lambda n: keys.get(n, ("word", n.major))  # noqa: E731
    edges = Counter()
    for h, d, r in sent.enhanced_edges():
        if not (h.is_empty or d.is_empty) or base_relation(r) in EXCLUDED:
            continue
        edges[(key(h), key(d), r)] += 1
    return edges


def _unlabeled(edges: Counter) -> Counter:
    out = Counter()
    for (h, d, _), n in edges.items():
        out[(h, d)] += n
    return out


def _overlap(a: Counter, b: Counter) -> int:
    return sum((a & b).values())


def _pct(num: int, den: int, name: str, flags: list[str]) -> float:
    if den == 0:
        flags.append(f"{name}: zero denominator, reported as 100")
        return 100.0
    return 100.0 * num / den


@dataclass
class EvalReport:
    up: float
    ur: float
    lp: float
    lr: float
    sentence_accuracy: float
    counts: dict[str, int]
    # per sentence: True/False for sentences gapped in gold, None otherwise
    sentence_correct: list[bool | None] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    def metrics(self) -> dict[str, float]:
        return {"UP": self.up, "UR": self.ur, "LP": self.lp, "LR": self.lr,
                "SAcc": self.sentence_accuracy}

    def as_table(self) -> str:
        m = self.metrics()
        head = "  ".join(f"{k:>7}" for k in m)
        row = "  ".join(f"{v:7.2f}" for v in m.values())
        return f"{head}\n{row}"

    def as_keyvalue(self) -> str:
        lines = [f"{k}={v:.2f}" for k, v in self.metrics().items()]
        lines += [f"{k}={v}" for k, v in self.counts.items()]
        lines += [f"flag={f}" for f in self.flags]
        return "\n".join(lines)


def score_enhanced(system: Document, gold: Document) -> EvalReport:
    _check_parallel(system, gold)
    sys_total = gold_total = matched_u = matched_l = 0
    gapped = correct = 0
    per_sentence = []
    for s, g in zip(system, gold):
        se, ge = scored_edges(s), scored_edges(g)
        mu, ml = _overlap(_unlabeled(se), _unlabeled(ge)), _overlap(se, ge)
        ns, ng = sum(se.values()), sum(ge.values())
        sys_total, gold_total = sys_total + ns, gold_total + ng
        matched_u, matched_l = matched_u + mu, matched_l + ml
        if g.empty_nodes:
            gapped += 1
            ok = ml == ng == ns
            correct += ok
            per_sentence.append(ok)
        else:
            per_sentence.append(None)
    flags: list[str] = []
    report = EvalReport(
        up=_pct(matched_u, sys_total, "UP", flags),
        ur=_pct(matched_u, gold_total, "UR", flags),
        lp=_pct(matched_l, sys_total, "LP", flags),
        lr=_pct(matched_l, gold_total, "LR", flags),
        sentence_accuracy=_pct(correct, gapped, "SAcc", flags),
        counts={"system_edges": sys_total, "gold_edges": gold_total,
                "matched_unlabeled": matched_u, "matched_labeled": matched_l,
                "gapped_sentences": gapped, "correct_sentences": correct},
        sentence_correct=per_sentence,
        flags=flags,
    )
    return report


def remnant_heads(sent: Sentence) -> list[NodeId]:
    """Orphan dependents and the promoted conjunct heads they hang from."""
    out = set()
    for t in sent.words:
        if base_relation(t.deprel) == "orphan":
            out.add(t.id)
            out.add(t.head)
    return sorted(n for n in out if not n.is_root and sent[n].upos != "PUNCT")


def score_remnant_attachment(system: Document, gold: Document) -> tuple[float, float]:
    """UAS and LAS of the system's basic trees over gold remnant heads."""
    _check_parallel(system, gold)
    total = uas = las = 0
    for s, g in zip(system, gold):
        for nid in remnant_heads(g):
            gt, st = g[nid], s[nid]
            total += 1
            if st.head == gt.head:
                uas += 1
                las += st.deprel == gt.deprel
    if total == 0:
        return 100.0, 100.0
    return 100.0 * uas / total, 100.0 * las / total


@dataclass
class CorpusStats:
    sentences: int = 0
    tokens: int = 0
    gapped_sentences: int = 0
    orphan_sentences: int = 0
    composite_sentences: int = 0
    copy_sentences: int = 0
    copy_nodes: int = 0
    composite_labels: list[str] = field(default_factory=list)
    gap_types: dict[str, int] | None = None

    @property
    def unique_composite(self) -> int:
        return len(self.composite_labels)

    def as_dict(self) -> dict:
        d = {
            "sentences": self.sentences,
            "tokens": self.tokens,
            "gapped_sentences": self.gapped_sentences,
            "orphan_sentences": self.orphan_sentences,
            "composite_sentences": self.composite_sentences,
            "copy_sentences": self.copy_sentences,
            "copy_nodes": self.copy_nodes,
            "unique_composite": self.unique_composite,
        }
        if self.gap_types is not None:
            d.update({f"gap_type.{k}": v for k, v in sorted(self.gap_types.items())})
        return d

    def as_keyvalue(self) -> str:
        return "\n".join(f"{k}={v}" for k, v in self.as_dict().items())

    def as_table(self) -> str:
        d = self.as_dict()
        width = max(map(len, d))
        return "\n".join(f"{k:<{width}}  {v:>8}" for k, v in d.items())


def corpus_stats(doc: Document) -> CorpusStats:
    stats = CorpusStats()
    labels = set()
    gap_types: Counter = Counter()
    for sent in doc:
        words = sent.words
        stats.sentences += 1
        stats.tokens += len(words)
        has_orphan = any(base_relation(t.deprel) == "orphan" for t in words)
        composite = [t.deprel for t in words if is_composite(t.deprel)]
        n_copies = len(sent.empty_nodes)
        labels.update(composite)
        stats.orphan_sentences += has_orphan
        stats.composite_sentences += bool(composite)
        stats.copy_sentences += bool(n_copies)
        stats.gapped_sentences += bool(has_orphan or composite or n_copies)
        stats.copy_nodes += n_copies
        for t in sent.tokens:
            kind = t.misc_dict().get(GAP_TYPE_KEY)
            if kind:
                gap_types[kind] += 1
    stats.composite_labels = sorted(labels)
    stats.gap_types = dict(gap_types) if gap_types else None
    return stats
