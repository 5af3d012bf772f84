"""Monotonic global alignment of two argument lists.

Scores are ``sum(scorer(g, f))`` over aligned pairs plus ``gap_penalty`` for
every element of either list left unaligned.  Among optimal alignments the
one with more pairs wins, then the lexicographically smallest pair list.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

# scores closer than this are treated as ties
EPS = 1e-9
BRUTE_FORCE_LIMIT = 8


@dataclass(frozen=True)
class Alignment:
    pairs: tuple[tuple[int, int], ...] = ()
    score: float = 0.0

    def aligned_g(self) -> dict[int, int]:
        return dict(self.pairs)


@dataclass(order=False)
class _Partial:
    score: float
    pairs: tuple = field(default=())


def _better(a: _Partial, b: _Partial) -> bool:
    """True if ``a`` beats ``b`` under score, then pair count, then lexicographic order."""
    if a.score > b.score + EPS:
        return True
    if b.score > a.score + EPS:
        return False
    if len(a.pairs) != len(b.pairs):
        return len(a.pairs) > len(b.pairs)
    return a.pairs < b.pairs


def align(G: Sequence, F: Sequence, scorer: Callable, gap_penalty: float) -> Alignment:
    n, m = len(G), len(F)
    sims = [[scorer(g, f) for f in F] for g in G]
    # best[i][j]: optimal alignment of the suffixes G[i:], F[j:]
    best = [[None] * (m + 1) for _ in range(n + 1)]
    for i in range(n, -1, -1):
        for j in range(m, -1, -1):
            if i == n or j == m:
                best[i][j] = _Partial(gap_penalty * ((n - i) + (m - j)))
                continue
            nxt = best[i + 1][j + 1]
            cand = _Partial(sims[i][j] + nxt.score, ((i, j),) + nxt.pairs)
            for skip in (best[i + 1][j], best[i][j + 1]):
                alt = _Partial(skip.score + gap_penalty, skip.pairs)
                if _better(alt, cand):
                    cand = alt
            best[i][j] = cand
    top = best[0][0]
    return Alignment(top.pairs, _pair_score(top.pairs, sims, n, m, gap_penalty))


def _pair_score(pairs, sims, n, m, gap_penalty) -> float:
    total = sum(sims[i][j] for i, j in pairs)
    return total + gap_penalty * (n + m - 2 * len(pairs))


def brute_force_align(G: Sequence, F: Sequence, scorer: Callable, gap_penalty: float) -> Alignment:
    """Exhaustive search over all monotonic partial matchings (test oracle)."""
    n, m = len(G), len(F)
    if n > BRUTE_FORCE_LIMIT or m > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_LIMIT} elements per side")
    sims = [[scorer(g, f) for f in F] for g in G]
    best = None
    for k in range(min(n, m) + 1):
        for gs in itertools.combinations(range(n), k):
            for fs in itertools.combinations(range(m), k):
                pairs = tuple(zip(gs, fs))
                cand = _Partial(_pair_score(pairs, sims, n, m, gap_penalty), pairs)
                if best is None or _better(cand, best):
                    best = cand
    return Alignment(best.pairs, best.score)
