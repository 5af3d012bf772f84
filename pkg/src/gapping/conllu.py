"""CoNLL-U reading and writing, with empty (copy) nodes and composite labels.

The in-memory model keeps every column verbatim so that an unmodified
document serializes back to exactly the bytes it was read from.  The
enhanced graph lives denormalized in each token's ``deps`` list, as in the
file format; adjacency views are derived on demand.
"""

from __future__ import annotations

import copy
import functools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

UNSET = "_"
COMPOSITE_SEP = ">"


class ConlluError(ValueError):
    """Malformed CoNLL-U input."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConlluValidationError(ConlluError):
    """Well-formed lines that do not make a consistent sentence."""


@functools.total_ordering
@dataclass(frozen=True)
class NodeId:
    """Token id: ``major`` is the surface index, ``minor`` > 0 marks an empty node."""

    major: int
    minor: int = 0

    def __post_init__(self):
        if self.major < 0 or self.minor < 0:
            raise ValueError(f"negative node id {self.major}.{self.minor}")

    @classmethod
    def parse(cls, text: str) -> "NodeId":
        major, dot, minor = text.partition(".")
        if not major.isdigit() or (dot and not minor.isdigit()):
            raise ValueError(f"unparsable node id {text!r}")
        nid = cls(int(major), int(minor) if dot else 0)
        if dot and nid.minor == 0:
            raise ValueError(f"empty node id needs a positive minor part: {text!r}")
        return nid

    @property
    def is_empty(self) -> bool:
        return self.minor > 0

    @property
    def is_root(self) -> bool:
        return self.major == 0 and self.minor == 0

    def __lt__(self, other):
        if not isinstance(other, NodeId):
            return NotImplemented
        return (self.major, self.minor) < (other.major, other.minor)

    def __str__(self):
        return f"{self.major}.{self.minor}" if self.minor else str(self.major)

    def __repr__(self):
        return f"NodeId({self})"


ROOT = NodeId(0)


def split_label(label: str) -> list[str]:
    """Split a (possibly composite) relation label into its atomic relations.

    >>> split_label("conj>xcomp>obj")
    ['conj', 'xcomp', 'obj']
    """
    if not label:
        raise ConlluError("empty relation label")
    parts = label.split(COMPOSITE_SEP)
    if any(not p for p in parts):
        raise ConlluError(f"empty part in relation label {label!r}")
    return parts


def join_label(parts: Iterable[str]) -> str:
    parts = list(parts)
    if not parts or any(not p or COMPOSITE_SEP in p for p in parts):
        raise ConlluError(f"cannot join relation parts {parts!r}")
    return COMPOSITE_SEP.join(parts)


def is_composite(label: str) -> bool:
    return COMPOSITE_SEP in label


def base_relation(label: str) -> str:
    """Universal relation of an atomic label, without subtype (``nsubj:pass`` -> ``nsubj``)."""
    return label.split(":", 1)[0]


@dataclass
class Token:
    id: NodeId
    form: str = UNSET
    lemma: str = UNSET
    upos: str = UNSET
    xpos: str = UNSET
    feats: str = UNSET
    head: NodeId | None = None
    deprel: str = UNSET
    deps: list[tuple[NodeId, str]] = field(default_factory=list)
    misc: str = UNSET
    # original DEPS text and the pairs it parsed to; reused verbatim while deps is unchanged
    _raw_deps: tuple[str, tuple] | None = field(default=None, repr=False, compare=False)

    @property
    def is_empty(self) -> bool:
        return self.id.is_empty

    def misc_dict(self) -> dict[str, str]:
        if self.misc == UNSET:
            return {}
        out = {}
        for item in self.misc.split("|"):
            key, _, value = item.partition("=")
            out.setdefault(key, value)
        return out

    def deps_text(self) -> str:
        if self._raw_deps is not None and self._raw_deps[1] == tuple(self.deps):
            return self._raw_deps[0]
        if not self.deps:
            return UNSET
        return "|".join(f"{h}:{r}" for h, r in sorted(self.deps, key=lambda p: (p[0], p[1])))

    def to_line(self) -> str:
        cols = [
            str(self.id), self.form, self.lemma, self.upos, self.xpos, self.feats,
            UNSET if self.head is None else str(self.head),
            self.deprel, self.deps_text(), self.misc,
        ]
        return "\t".join(cols)


@dataclass
class Sentence:
    """One CoNLL-U sentence: comments, tokens (surface and empty) and opaque multiword lines."""

    tokens: list[Token] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)
    # raw ``i-j`` lines, keyed by the first surface id they span
    multiword: dict[int, str] = field(default_factory=dict)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def __len__(self):
        return len(self.tokens)

    @property
    def words(self) -> list[Token]:
        return [t for t in self.tokens if not t.is_empty]

    @property
    def empty_nodes(self) -> list[Token]:
        return [t for t in self.tokens if t.is_empty]

    @property
    def sent_id(self) -> str | None:
        for c in self.comments:
            key, _, value = c.lstrip("#").partition("=")
            if key.strip() == "sent_id":
                return value.strip()
        return None

    @property
    def text(self) -> str:
        """The ``# text`` comment, else forms joined according to SpaceAfter."""
        for c in self.comments:
            if c.startswith("# text ="):
                return c.split("=", 1)[1].strip()
        parts = []
        for t in self.words:
            parts.append(t.form)
            if t.misc_dict().get("SpaceAfter") != "No":
                parts.append(" ")
        return "".join(parts).rstrip()

    def copy(self) -> "Sentence":
        return copy.deepcopy(self)

    def get(self, nid: NodeId) -> Token | None:
        for t in self.tokens:
            if t.id == nid:
                return t
        return None

    def __getitem__(self, nid) -> Token:
        if isinstance(nid, int):
            nid = NodeId(nid)
        tok = self.get(nid)
        if tok is None:
            raise KeyError(str(nid))
        return tok

    def ids(self) -> set[NodeId]:
        return {t.id for t in self.tokens}

    # basic tree ------------------------------------------------------------

    def children(self, nid: NodeId) -> list[Token]:
        """Basic-tree dependents of ``nid`` in surface order."""
        return [t for t in self.words if t.head == nid]

    def subtree(self, nid: NodeId, exclude: Iterable[NodeId] = ()) -> list[NodeId]:
        """Surface ids dominated by ``nid`` in the basic tree (inclusive), pruning ``exclude``."""
        blocked = set(exclude)
        kids: dict[NodeId, list[NodeId]] = {}
        for t in self.words:
            if t.head is not None:
                kids.setdefault(t.head, []).append(t.id)
        out, stack = [], [nid]
        while stack:
            cur = stack.pop()
            out.append(cur)
            stack.extend(k for k in kids.get(cur, ()) if k not in blocked)
        return sorted(out)

    # enhanced graph --------------------------------------------------------

    def has_enhanced(self) -> bool:
        return any(t.deps for t in self.tokens)

    def enhanced_edges(self) -> list[tuple[NodeId, NodeId, str]]:
        """All enhanced edges as ``(head, dependent, relation)``."""
        return [(h, t.id, r) for t in self.tokens for h, r in t.deps]

    def enhanced_children(self, nid: NodeId) -> list[tuple[NodeId, str]]:
        return [(t.id, r) for t in self.tokens for h, r in t.deps if h == nid]

    def lift_basic(self) -> None:
        """Overwrite every surface token's deps with its basic head and relation."""
        for t in self.words:
            t.deps = [] if t.head is None else [(t.head, t.deprel)]

    # empty nodes -----------------------------------------------------------

    def next_empty_id(self, anchor: int) -> NodeId:
        used = [t.id.minor for t in self.tokens if t.id.major == anchor and t.is_empty]
        return NodeId(anchor, max(used, default=0) + 1)

    def add_empty_node(self, token: Token) -> Token:
        if not token.is_empty:
            raise ValueError(f"{token.id} is not an empty-node id")
        if self.get(token.id) is not None:
            raise ValueError(f"node {token.id} already exists")
        token.head, token.deprel = None, UNSET
        self.tokens.append(token)
        self.tokens.sort(key=lambda t: t.id)
        return token

    def remove_empty_node(self, nid: NodeId) -> Token:
        tok = self[nid]
        if not tok.is_empty:
            raise ValueError(f"{nid} is a surface token")
        self.tokens.remove(tok)
        for t in self.tokens:
            t.deps = [(h, r) for h, r in t.deps if h != nid]
        return tok

    def to_lines(self) -> list[str]:
        lines = list(self.comments)
        for t in self.tokens:
            if not t.is_empty and t.id.major in self.multiword:
                lines.append(self.multiword[t.id.major])
            lines.append(t.to_line())
        return lines


@dataclass
class Document:
    sentences: list[Sentence] = field(default_factory=list)

    def __iter__(self) -> Iterator[Sentence]:
        return iter(self.sentences)

    def __len__(self):
        return len(self.sentences)

    def __getitem__(self, i) -> Sentence:
        return self.sentences[i]

    def copy(self) -> "Document":
        return copy.deepcopy(self)


# parsing ---------------------------------------------------------------------


def _parse_deps(text: str, lineno: int) -> list[tuple[NodeId, str]]:
    if text == UNSET:
        return []
    pairs = []
    for item in text.split("|"):
        head, sep, rel = item.partition(":")
        if not sep or not rel:
            raise ConlluError(f"bad DEPS item {item!r}", lineno)
        try:
            pairs.append((NodeId.parse(head), rel))
        except ValueError as e:
            raise ConlluError(str(e), lineno) from None
    return pairs


def _parse_token(line: str, lineno: int) -> Token:
    cols = line.split("\t")
    if len(cols) != 10:
        raise ConlluError(f"expected 10 tab-separated columns, found {len(cols)}", lineno)
    try:
        nid = NodeId.parse(cols[0])
        head = None if cols[6] == UNSET else NodeId.parse(cols[6])
    except ValueError as e:
        raise ConlluError(str(e), lineno) from None
    if nid.is_root:
        raise ConlluError("token id 0 is reserved for the root", lineno)
    deps = _parse_deps(cols[8], lineno)
    if nid.is_empty and (head is not None or cols[7] != UNSET):
        raise ConlluError(f"empty node {nid} must leave HEAD and DEPREL unset", lineno)
    if not nid.is_empty and head is None:
        raise ConlluError(f"token {nid} has no HEAD", lineno)
    tok = Token(nid, cols[1], cols[2], cols[3], cols[4], cols[5], head, cols[7], deps, cols[9])
    tok._raw_deps = (cols[8], tuple(deps))
    return tok


def _check_block(sent: Sentence, linenos: dict[NodeId, int], first_line: int) -> None:
    words = sent.words
    for i, t in enumerate(words, 1):
        if t.id.major != i:
            raise ConlluError(f"surface ids must run 1..n in order; found {t.id} at position {i}",
                              linenos[t.id])
    n = len(words)
    prev = None
    for t in sent.tokens:
        if prev is not None and not prev < t.id:
            raise ConlluError(f"node {t.id} out of order after {prev}", linenos[t.id])
        if t.is_empty and t.id.major > n:
            raise ConlluError(f"empty node {t.id} anchored past the last token", linenos[t.id])
        prev = t.id
    for t in words:
        if t.head.is_empty or t.head.major > n:
            raise ConlluError(f"HEAD {t.head} of token {t.id} does not exist", linenos[t.id])
    cycle = find_cycle(sent)
    if cycle:
        raise ConlluError("cyclic basic tree through " + " ".join(map(str, cycle)),
                          linenos[cycle[0]])
    known = sent.ids() | {ROOT}
    for t in sent.tokens:
        for h, _ in t.deps:
            if h not in known:
                raise ConlluValidationError(f"DEPS of {t.id} refers to missing node {h}",
                                            linenos[t.id])


def find_cycle(sent: Sentence) -> list[NodeId]:
    """A cycle in the basic tree as a list of ids, or ``[]``."""
    heads = {t.id: t.head for t in sent.words}
    done: set[NodeId] = set()
    for start in heads:
        path, seen = [], set()
        cur = start
        while cur in heads and cur not in done:
            if cur in seen:
                return path[path.index(cur):]
            seen.add(cur)
            path.append(cur)
            cur = heads[cur]
        done.update(path)
    return []


def parse_sentence(lines: list[str], first_line: int = 1) -> Sentence:
    sent = Sentence()
    linenos: dict[NodeId, int] = {}
    for offset, line in enumerate(lines):
        lineno = first_line + offset
        if line.startswith("#"):
            if sent.tokens or sent.multiword:
                raise ConlluError("comment after token lines", lineno)
            sent.comments.append(line)
            continue
        first = line.split("\t", 1)[0]
        if "-" in first:
            lo, _, hi = first.partition("-")
            if not (lo.isdigit() and hi.isdigit()) or line.count("\t") != 9:
                raise ConlluError(f"bad multiword token line {first!r}", lineno)
            sent.multiword[int(lo)] = line
            continue
        tok = _parse_token(line, lineno)
        if tok.id in linenos:
            raise ConlluError(f"duplicate id {tok.id}", lineno)
        linenos[tok.id] = lineno
        sent.tokens.append(tok)
    if not sent.words:
        raise ConlluError("sentence without tokens", first_line)
    _check_block(sent, linenos, first_line)
    return sent


def parse_document(text: str) -> Document:
    """Parse CoNLL-U text.  Raises :class:`ConlluError` naming the offending line."""
    doc = Document()
    block: list[str] = []
    start = 1
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for i, line in enumerate(lines, 1):
        line = line.rstrip("\r")
        if line.strip() == "":
            if block:
                doc.sentences.append(parse_sentence(block, start))
                block = []
            continue
        if not block:
            start = i
        block.append(line)
    if block:
        doc.sentences.append(parse_sentence(block, start))
    return doc


def serialize_document(doc: Document) -> str:
    return "".join("\n".join(s.to_lines()) + "\n\n" for s in doc.sentences)


def read_conllu(path) -> Document:
    with open(path, encoding="utf-8") as f:
        return parse_document(f.read())


def write_conllu(doc: Document, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(serialize_document(doc))


# validation ------------------------------------------------------------------


def validate(sent: Sentence) -> list[str]:
    """Return a list of human-readable violations; empty means the sentence is valid."""
    problems = []
    words = sent.words
    ids = sent.ids()
    for i, t in enumerate(words, 1):
        if t.id.major != i:
            problems.append(f"surface token {t.id} out of sequence")
    prev = None
    for t in sent.tokens:
        if prev is not None and not prev < t.id:
            problems.append(f"node {t.id} out of order")
        prev = t.id
        if t.is_empty:
            if t.head is not None or t.deprel != UNSET:
                problems.append(f"empty node {t.id} has basic HEAD/DEPREL")
            if t.id.major > len(words):
                problems.append(f"empty node {t.id} anchored past the last token")

    roots = [t.id for t in words if t.head == ROOT]
    if not roots:
        problems.append("no root")
    elif len(roots) > 1:
        problems.append("multiple roots: " + " ".join(map(str, roots)))
    for t in words:
        if t.head is None or (t.head != ROOT and t.head not in ids) or (t.head and t.head.is_empty):
            problems.append(f"token {t.id} has unresolvable head {t.head}")
    cycle = find_cycle(sent)
    if cycle:
        problems.append("cycle: " + " ".join(map(str, cycle)))

    if not sent.has_enhanced():
        return problems
    known = ids | {ROOT}
    for h, d, r in sent.enhanced_edges():
        if h not in known:
            problems.append(f"enhanced edge {h}->{d} refers to missing node {h}")
        if is_composite(r):
            problems.append(f"composite label {r} in DEPS of {d}")
    reachable = _reachable_from_root(sent)
    for t in sent.tokens:
        if t.id in reachable:
            continue
        if t.upos == "PUNCT" and not t.deps:
            continue
        problems.append(f"disconnected node {t.id}")
    return problems


def _reachable_from_root(sent: Sentence) -> set[NodeId]:
    out_edges: dict[NodeId, list[NodeId]] = {}
    for h, d, _ in sent.enhanced_edges():
        out_edges.setdefault(h, []).append(d)
    seen = {ROOT}
    stack = [ROOT]
    while stack:
        for d in out_edges.get(stack.pop(), ()):
            if d not in seen:
                seen.add(d)
                stack.append(d)
    seen.discard(ROOT)
    return seen
