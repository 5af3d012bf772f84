"""Enhanced graphs from trees whose gap dependents carry composite labels (``conj>nsubj``).

Labels are split into atomic relations and a copy node is inserted at every
split point.  The tree does not mark where one gapped conjunct ends and the
next begins, so dependents sharing a head are first segmented greedily.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .conllu import NodeId, Sentence, is_composite, split_label
from .orphan import EnhanceStats
from .relations import (
    copy_token,
    free_minor_ids,
    is_function,
    pick_promoted,
    shared_argument_edges,
)

UNWALKABLE = "dep"


@dataclass
class ConjunctGroup:
    prefix: str
    dependents: list[tuple[NodeId, list[str]]] = field(default_factory=list)

    def final_relations(self) -> set[str]:
        return {path[-1] for _, path in self.dependents}

    def has_content(self) -> bool:
        return any(not is_function(path[-1]) for _, path in self.dependents)


def segment_conjuncts(head: NodeId, composite_deps) -> list[ConjunctGroup]:
    """Greedy left-to-right split of one head's composite dependents into conjuncts.

    ``composite_deps`` holds ``(node, label)`` or ``(node, parts)`` pairs.  A
    new group starts when a dependent's final relation already occurs in the
    current group, or at a ``cc`` once the current group holds a content
    dependent.  Dependents with different first relations never share a group.
    """
    groups: list[ConjunctGroup] = []
    current: dict[str, ConjunctGroup] = {}
    for node, label in sorted(composite_deps, key=lambda d: d[0]):
        path = split_label(label) if isinstance(label, str) else list(label)
        group = current.get(path[0])
        boundary = group is not None and (
            path[-1] in group.final_relations()
            or (path[-1] == "cc" and len(path) == 2 and group.has_content())
        )
        if group is None or boundary:
            group = ConjunctGroup(path[0])
            groups.append(group)
            current[path[0]] = group
        group.dependents.append((node, path))
    return groups


def _walk(sent: Sentence, start: NodeId, rel: str) -> NodeId | None:
    for child in sent.children(start):
        if child.deprel == rel:
            return child.id
    return None


def _resolve_group(sent: Sentence, head: NodeId, group: ConjunctGroup, stats: EnhanceStats,
                   reserved: list[NodeId]):
    prefixes: list[tuple[str, ...]] = []
    for _, path in group.dependents:
        for k in range(1, len(path)):
            p = tuple(path[:k])
            if p not in prefixes:
                prefixes.append(p)
    prefixes.sort(key=len)

    sources: dict[tuple, NodeId] = {}
    for p in prefixes:
        if len(p) == 1:
            sources[p] = head
            continue
        parent = sources.get(p[:-1])
        found = _walk(sent, parent, p[-1]) if parent is not None else None
        if found is None:
            stats.note(sent, f"composite path {'>'.join(p)} under {head} not found in the full conjunct")
        else:
            sources[p] = found
    walkable = [p for p in prefixes if p in sources]

    content = [(n, path[-1]) for n, path in group.dependents if not is_function(path[-1])]
    anchor = pick_promoted(content)[0] if content else group.dependents[0][0]
    new_ids = free_minor_ids(sent, anchor.major, len(walkable), reserved)
    reserved.extend(new_ids)
    copy_of = dict(zip(walkable, new_ids))
    copies = [(sources[p], copy_of[p]) for p in walkable]

    attachments = []
    for p in walkable:
        parent = head if len(p) == 1 else copy_of[p[:-1]]
        attachments.append((parent, copy_of[p], p[-1]))
    for node, path in group.dependents:
        target = tuple(path[:-1])
        if target in copy_of:
            attachments.append((copy_of[target], node, path[-1]))
            continue
        while target and target not in copy_of:
            target = target[:-1]
        attachments.append((copy_of[target] if target else head, node, UNWALKABLE))
    covered: dict[NodeId, set[str]] = {}
    for h, _, r in attachments:
        covered.setdefault(h, set()).add(r)
    return copies, attachments, shared_argument_edges(sent, copies, covered)


def enhance_sentence_composite(sent: Sentence, stats: EnhanceStats | None = None) -> Sentence:
    """Return a copy of ``sent`` with composite labels expanded into copy nodes in DEPS."""
    stats = stats if stats is not None else EnhanceStats()
    out = sent.copy()
    for t in out.empty_nodes:
        out.remove_empty_node(t.id)
    out.lift_basic()

    by_head: dict[NodeId, list[tuple[NodeId, str]]] = {}
    for t in out.words:
        if is_composite(t.deprel):
            by_head.setdefault(t.head, []).append((t.id, t.deprel))

    reserved: list[NodeId] = []
    for head in sorted(by_head):
        if head.is_root:
            stats.note(out, "composite labels on root dependents have no predicate to copy")
            continue
        for group in segment_conjuncts(head, by_head[head]):
            stats.gaps_found += 1
            copies, attachments, shared = _resolve_group(out, head, group, stats, reserved)
            for src, new in copies:
                out.add_empty_node(copy_token(out[src], new))
            for h, d, r in attachments:
                tok = out[d]
                if tok.is_empty:
                    tok.deps.append((h, r))
                else:
                    tok.deps = [(h, r)]
            for h, d, r in shared:
                if (h, r) not in out[d].deps:
                    out[d].deps.append((h, r))
            stats.gaps_resolved += 1
            stats.copies += len(copies)
    return out
