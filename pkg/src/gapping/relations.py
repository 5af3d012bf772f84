"""Relation classes and copy-node helpers shared by the enhancers and converters."""

from __future__ import annotations

from .conllu import NodeId, Sentence, Token, UNSET, base_relation, split_label

CORE_RELATIONS = frozenset({"nsubj", "obj", "iobj", "csubj", "ccomp", "xcomp"})
# dependents of a predicate that count as arguments for alignment
ARGUMENT_RELATIONS = CORE_RELATIONS | {
    "obl", "advcl", "advmod", "dislocated", "vocative", "expl",
}
# clause-level function words that follow the conjunct head rather than a remnant
FUNCTION_RELATIONS = frozenset({"cc", "punct", "mark", "discourse"})
# which remnant becomes the basic-tree head of a gapped conjunct
PROMOTION_ORDER = ("nsubj", "obj", "iobj", "csubj", "ccomp", "xcomp", "obl", "advmod", "advcl")

COPY_MARKER = "CopyOf"


def first_base(label: str) -> str:
    return base_relation(split_label(label)[0])


def is_argument(label: str) -> bool:
    return first_base(label) in ARGUMENT_RELATIONS


def is_core(label: str) -> bool:
    return first_base(label) in CORE_RELATIONS


def is_function(label: str) -> bool:
    return first_base(label) in FUNCTION_RELATIONS


def promotion_rank(label: str) -> int:
    base = first_base(label)
    return PROMOTION_ORDER.index(base) if base in PROMOTION_ORDER else len(PROMOTION_ORDER)


def pick_promoted(candidates):
    """Pick the remnant to promote from ``(node_id, relation)`` pairs: best rank, then leftmost."""
    return min(candidates, key=lambda c: (promotion_rank(c[1]), c[0]))


def copy_token(source: Token, new_id: NodeId) -> Token:
    return Token(
        new_id, source.form, source.lemma, source.upos, source.xpos, source.feats,
        None, UNSET, [], f"{COPY_MARKER}={source.id}",
    )


def copy_source(tok: Token) -> NodeId | None:
    """Source id recorded on a copy node, or None."""
    value = tok.misc_dict().get(COPY_MARKER)
    if not value:
        return None
    try:
        return NodeId.parse(value)
    except ValueError:
        return None


def free_minor_ids(sent: Sentence, anchor: int, count: int, reserved=()) -> list[NodeId]:
    taken = {t.id.minor for t in sent.tokens if t.id.major == anchor}
    taken |= {nid.minor for nid in reserved if nid.major == anchor}
    out, minor = [], 1
    while len(out) < count:
        if minor not in taken:
            out.append(NodeId(anchor, minor))
        minor += 1
    return out


def shared_argument_edges(sent: Sentence, copies, covered) -> list[tuple[NodeId, NodeId, str]]:
    """Edges from each copy to core arguments of its source that no remnant stands in for.

    ``copies`` is a list of ``(source_id, copy_id)``; ``covered`` maps a copy id to
    the set of relation labels already leaving that copy.
    """
    edges = []
    for source, new in copies:
        have = covered.get(new, set())
        for child in sent.children(source):
            if is_core(child.deprel) and child.deprel not in have:
                edges.append((new, child.id, child.deprel))
    return edges
