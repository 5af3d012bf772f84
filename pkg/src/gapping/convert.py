"""Enhanced graphs with copy nodes back to basic trees (composite or ``orphan`` style).

These produce training and evaluation input for the two enhancers from gold
enhanced annotation.  Converted sentences carry no empty nodes and an empty
DEPS column; sentences without copy nodes pass through unchanged.
"""

from __future__ import annotations

import logging

from .conllu import NodeId, Sentence, join_label
from .relations import is_function, pick_promoted

log = logging.getLogger(__name__)

ORPHAN = "orphan"


def _tree_parent(sent: Sentence, tok) -> tuple[NodeId, str] | None:
    """The copy-node edge a surface token hangs from, if it has no surface parent.

    Tokens with any surface (or root) parent keep their basic attachment;
    their edges from copies are shared-argument edges.
    """
    if any(not h.is_empty for h, _ in tok.deps):
        return None
    from_copies = sorted(p for p in tok.deps if p[0].is_empty)
    return from_copies[0] if from_copies else None


def _copy_parent(sent: Sentence, nid: NodeId) -> tuple[NodeId, str]:
    deps = sent[nid].deps
    if not deps:
        raise ValueError(f"copy node {nid} has no incoming edge")
    return min(deps)


def _clear_enhanced(sent: Sentence) -> None:
    for t in sent.empty_nodes:
        sent.tokens.remove(t)
    for t in sent.tokens:
        t.deps = []


def enhanced_to_composite(sent: Sentence) -> Sentence:
    """Collapse every path through copy nodes into a single composite-labelled basic edge."""
    out = sent.copy()
    if not out.empty_nodes:
        return out
    for tok in out.words:
        parent = _tree_parent(out, tok)
        if parent is None:
            continue
        head, rel = parent
        labels = [rel]
        seen = set()
        while head.is_empty:
            if head in seen:
                raise ValueError(f"cycle through copy node {head}")
            seen.add(head)
            head, rel = _copy_parent(out, head)
            labels.insert(0, rel)
        tok.head, tok.deprel = head, join_label(labels)
    _clear_enhanced(out)
    return out


def _chains(sent: Sentence) -> list[tuple[NodeId, str, set[NodeId]]]:
    """Copy chains as ``(full_head, incoming relation, member copy ids)``."""
    out = []
    for tok in sent.empty_nodes:
        head, rel = _copy_parent(sent, tok.id)
        if head.is_empty:
            continue
        members, stack = {tok.id}, [tok.id]
        while stack:
            cur = stack.pop()
            for child, _ in sent.enhanced_children(cur):
                if child.is_empty and child not in members:
                    members.add(child)
                    stack.append(child)
        out.append((head, rel, members))
    return out


def enhanced_to_basic_orphan(sent: Sentence) -> Sentence:
    """Rebuild the basic UD analysis of each gapped conjunct with ``orphan`` edges.

    The remnant highest in the promotion order (ties: leftmost) heads the
    conjunct; other remnants attach to it as ``orphan`` and clause-level
    function words (cc, punct, ...) keep their relation under it.
    """
    out = sent.copy()
    if not out.empty_nodes:
        return out
    parents = {t.id: _tree_parent(out, t) for t in out.words}
    for full_head, rel, members in _chains(out):
        deps = [(nid, p[1]) for nid, p in sorted(parents.items()) if p and p[0] in members]
        remnants = [(nid, r) for nid, r in deps if not is_function(r)]
        if not remnants:
            log.warning("copy chain under %s has no remnants; left as is", full_head)
            continue
        promoted = pick_promoted(remnants)[0]
        ptok = out[promoted]
        ptok.head, ptok.deprel = full_head, rel
        for nid, r in deps:
            if nid == promoted:
                continue
            tok = out[nid]
            tok.head = promoted
            tok.deprel = r if is_function(r) else ORPHAN
    _clear_enhanced(out)
    return out
