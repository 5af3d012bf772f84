"""Gap resolution from basic trees that mark remnants with ``orphan``.

For every gapped conjunct the arguments of the gapped clause are aligned to
the arguments of the full clause (optionally descending into ``xcomp``
chains), the full-clause predicate(s) are copied as empty nodes, and the
remnants are re-attached to the copies with their correspondents' relations.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .aligner import EPS, Alignment, align
from .conllu import ROOT, NodeId, Sentence, base_relation
from .embeddings import EmbeddingTable, SimilarityParams, phrase_vector, sim
from .relations import (
    copy_source,
    copy_token,
    free_minor_ids,
    is_argument,
    is_function,
    shared_argument_edges,
)

log = logging.getLogger(__name__)

ORPHAN = "orphan"
UNALIGNED = "dep"
MAX_CHAIN_DEPTH = 5


@dataclass
class ArgumentSpan:
    head: NodeId
    relation: str
    span: tuple[NodeId, ...]
    head_upos: str
    vector: np.ndarray
    # predicate the argument depends on (None for gapped-conjunct arguments)
    governor: NodeId | None = None

    @property
    def start(self) -> NodeId:
        return self.span[0]


@dataclass
class CandidateArgumentList:
    args: list[ArgumentSpan]
    copy_chain: list[NodeId] = field(default_factory=list)


@dataclass
class GapResolution:
    conjunct_head: NodeId
    copies: list[tuple[NodeId, NodeId]]
    # re-attachments replacing the dependent's lifted basic edge
    attachments: list[tuple[NodeId, NodeId, str]]
    # extra edges from copies to arguments shared with the full conjunct
    shared: list[tuple[NodeId, NodeId, str]] = field(default_factory=list)
    alignment: Alignment | None = None
    candidate: CandidateArgumentList | None = None


@dataclass
class EnhanceStats:
    """Corpus-level counters and diagnostics collected while enhancing."""

    gaps_found: int = 0
    gaps_resolved: int = 0
    copies: int = 0
    messages: list[str] = field(default_factory=list)

    def note(self, sent: Sentence, message: str) -> None:
        where = sent.sent_id or sent.text[:40]
        self.messages.append(f"[{where}] {message}")
        log.warning("%s: %s", where, message)


def _span_vector(sent: Sentence, ids, table: EmbeddingTable | None) -> np.ndarray:
    if table is None:
        return np.zeros(0)
    toks = [sent[i] for i in ids if sent[i].upos != "PUNCT"]
    return phrase_vector(toks or [sent[i] for i in ids], table)


def _make_span(sent, head, relation, ids, table, governor=None) -> ArgumentSpan:
    ids = tuple(sorted(ids))
    return ArgumentSpan(head, relation, ids, sent[head].upos, _span_vector(sent, ids, table), governor)


def _orphans_of(sent: Sentence, nid: NodeId) -> list[NodeId]:
    return [t.id for t in sent.children(nid) if base_relation(t.deprel) == ORPHAN]


def find_gapped_conjuncts(sent: Sentence, stats: EnhanceStats | None = None):
    """``(full_head, gapped_head, orphans)`` for every node with ``orphan`` dependents."""
    out = []
    gapped = {t.id for t in sent.words if _orphans_of(sent, t.id)}
    for gid in sorted(gapped):
        head_tok = sent[gid]
        full = head_tok.head
        # conj chains threaded through earlier gapped heads resolve to the original predicate
        seen = {gid}
        while full in gapped and full not in seen:
            seen.add(full)
            full = sent[full].head
        if full is None or full == ROOT:
            if stats is not None:
                stats.note(sent, f"orphans of {gid} have no full conjunct to copy; left unresolved")
            continue
        out.append((full, gid, _orphans_of(sent, gid)))
    return out


def extract_full_arguments(sent: Sentence, full_head: NodeId, table=None) -> CandidateArgumentList:
    args = []
    for child in sent.children(full_head):
        if is_argument(child.deprel):
            ids = sent.subtree(child.id)
            args.append(_make_span(sent, child.id, child.deprel, ids, table, governor=full_head))
    args.sort(key=lambda a: a.start)
    return CandidateArgumentList(args, [])


def expand_partial_arguments(sent: Sentence, F: CandidateArgumentList, table=None,
                             max_depth: int = MAX_CHAIN_DEPTH) -> list[CandidateArgumentList]:
    """Candidate argument lists where xcomp arguments are replaced by their own arguments.

    Candidate 0 is always ``F`` itself.  Each further candidate descends one
    more ``xcomp`` edge; predicates without arguments of their own are not
    expanded, since dropping them would only delete an argument.
    """
    out = [F]

    def descend(cand: CandidateArgumentList, governor: NodeId, depth: int):
        if depth >= max_depth:
            return
        for arg in cand.args:
            if arg.governor != governor or base_relation(arg.relation) != "xcomp":
                continue
            inner = extract_full_arguments(sent, arg.head, table).args
            if not inner:
                continue
            rest = [a for a in cand.args if a is not arg]
            new = CandidateArgumentList(sorted(rest + inner, key=lambda a: a.start),
                                        cand.copy_chain + [arg.head])
            out.append(new)
            descend(new, arg.head, depth + 1)

    descend(F, F.args[0].governor if F.args else None, 0)
    return out


def _gapped_arguments(sent, gapped_head, orphans, table) -> list[ArgumentSpan]:
    others = {t.id for t in sent.words if _orphans_of(sent, t.id)} - {gapped_head}
    pruned = set(orphans) | others
    pruned |= {c.id for c in sent.children(gapped_head) if is_function(c.deprel)}
    G = [_make_span(sent, gapped_head, sent[gapped_head].deprel,
                    sent.subtree(gapped_head, exclude=pruned), table)]
    for o in orphans:
        G.append(_make_span(sent, o, ORPHAN, sent.subtree(o), table))
    G.sort(key=lambda a: a.start)
    return G


def resolve_gap(sent: Sentence, full_head: NodeId, gapped_head: NodeId, orphans,
                table: EmbeddingTable | None, params: SimilarityParams = SimilarityParams(),
                reserved=()) -> GapResolution:
    G = _gapped_arguments(sent, gapped_head, orphans, table)
    top = extract_full_arguments(sent, full_head, table)
    scorer = lambda g, f: sim(g, f, params)  # noqa: E731

    best = None
    for cand in expand_partial_arguments(sent, top, table):
        al = align(G, cand.args, scorer, params.gap_penalty)
        if best is None or al.score > best[0].score + EPS or (
                al.score > best[0].score - EPS and len(cand.copy_chain) < len(best[1].copy_chain)):
            best = (al, cand)
    alignment, cand = best

    sources = [full_head] + cand.copy_chain
    new_ids = free_minor_ids(sent, gapped_head.major, len(sources), reserved)
    copies = list(zip(sources, new_ids))
    copy_of = dict(copies)
    first = new_ids[0]

    attachments = [(full_head, first, sent[gapped_head].deprel)]
    for (_, prev), (src, new) in zip(copies, copies[1:]):
        attachments.append((prev, new, sent[src].deprel))
    for c in sent.children(gapped_head):
        if is_function(c.deprel):
            attachments.append((first, c.id, c.deprel))
    matched = alignment.aligned_g()
    for gi, g in enumerate(G):
        if gi in matched:
            f = cand.args[matched[gi]]
            attachments.append((copy_of[f.governor], g.head, f.relation))
        else:
            attachments.append((first, g.head, UNALIGNED))

    covered: dict[NodeId, set[str]] = {}
    for h, _, r in attachments:
        covered.setdefault(h, set()).add(r)
    shared = shared_argument_edges(sent, copies, covered)
    return GapResolution(gapped_head, copies, attachments, shared, alignment, cand)


def apply_resolution(sent: Sentence, res: GapResolution) -> None:
    for src, new in res.copies:
        sent.add_empty_node(copy_token(sent[src], new))
    for h, d, r in res.attachments:
        tok = sent[d]
        if tok.is_empty:
            tok.deps.append((h, r))
        else:
            tok.deps = [(h, r)]
    for h, d, r in res.shared:
        if (h, r) not in sent[d].deps:
            sent[d].deps.append((h, r))


def _already_enhanced(sent: Sentence) -> bool:
    copies = [t for t in sent.empty_nodes if copy_source(t) is not None]
    if not copies:
        return False
    return all(base_relation(r) != ORPHAN for _, _, r in sent.enhanced_edges())


def enhance_sentence_orphan(sent: Sentence, table: EmbeddingTable | None = None,
                            params: SimilarityParams = SimilarityParams(),
                            stats: EnhanceStats | None = None) -> Sentence:
    """Return a copy of ``sent`` whose DEPS column holds the reconstructed graph.

    The enhanced graph is rebuilt from the basic tree: earlier empty nodes are
    dropped and every basic edge is lifted, then each gapped conjunct is
    resolved.  Output that already carries copy nodes and no ``orphan`` edge
    is returned unchanged.  ``table=None`` scores arguments by POS tags only.
    """
    out = sent.copy()
    if _already_enhanced(out):
        return out
    for t in out.empty_nodes:
        out.remove_empty_node(t.id)
    out.lift_basic()
    stats = stats if stats is not None else EnhanceStats()
    gaps = find_gapped_conjuncts(out, stats)
    stats.gaps_found += len({g for _, g, _ in gaps}) + _count_unresolvable(out, gaps)
    for full, gapped, orphans in gaps:
        res = resolve_gap(out, full, gapped, orphans, table, params)
        apply_resolution(out, res)
        stats.gaps_resolved += 1
        stats.copies += len(res.copies)
    return out


def _count_unresolvable(sent: Sentence, gaps) -> int:
    found = {g for _, g, _ in gaps}
    return sum(1 for t in sent.words if _orphans_of(sent, t.id) and t.id not in found)
