"""Log-likelihood association scores for term candidates.

Counts are adjacent lemma bigrams inside candidate spans; genitive *no*
tokens are skipped, so a phrase ``A no B`` contributes the pair ``(A, B)``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, NamedTuple

from .corpus import CanonicalTag, Token
from .matcher import Candidate
from .termbank import TermBank, TermEntry


@dataclass
class PairCounts:
    pairs: Counter = field(default_factory=Counter)
    left: Counter = field(default_factory=Counter)
    right: Counter = field(default_factory=Counter)
    total: int = 0

    def add(self, w1: str, w2: str, n: int = 1) -> None:
        self.pairs[(w1, w2)] += n
        self.left[w1] += n
        self.right[w2] += n
        self.total += n

    def merge(self, other: "PairCounts") -> "PairCounts":
        return PairCounts(
            self.pairs + other.pairs, self.left + other.left,
            self.right + other.right, self.total + other.total,
        )


def _content_lemmas(tokens: Iterable[Token]) -> list[str]:
    return [t.lemma for t in tokens if t.tag is not CanonicalTag.NO]


def count_pairs(candidates: Iterable[Candidate]) -> PairCounts:
    pc = PairCounts()
    for c in candidates:
        lemmas = _content_lemmas(c.tokens)
        for w1, w2 in zip(lemmas, lemmas[1:]):
            pc.add(w1, w2)
    return pc


class ContingencyTable(NamedTuple):
    a: int  # w1 followed by w2
    b: int  # w1 followed by something else
    c: int  # something else followed by w2
    d: int  # neither

    @property
    def n(self) -> int:
        return self.a + self.b + self.c + self.d


def contingency(w1: str, w2: str, pc: PairCounts) -> ContingencyTable:
    if pc.total < 1:
        raise ValueError("contingency table needs at least one counted pair")
    a = pc.pairs.get((w1, w2), 0)
    b = pc.left.get(w1, 0) - a
    c = pc.right.get(w2, 0) - a
    return ContingencyTable(a, b, c, pc.total - a - b - c)


def _xlogx_ratio(k: int, expected: float) -> float:
    return 0.0 if k == 0 else k * math.log(k / expected)


def log_likelihood(table: ContingencyTable | tuple[int, int, int, int]) -> float:
    """Dunning's -2 log lambda for a 2x2 table ``(a, b, c, d)``."""
    a, b, c, d = table
    if min(a, b, c, d) < 0:
        raise ValueError(f"negative cell in {tuple(table)}")
    n = a + b + c + d
    if n == 0:
        raise ValueError("log likelihood of an all-zero table is undefined")
    r1, r2 = a + b, c + d
    c1, c2 = a + c, b + d
    g = (
        _xlogx_ratio(a, r1 * c1 / n)
        + _xlogx_ratio(b, r1 * c2 / n)
        + _xlogx_ratio(c, r2 * c1 / n)
        + _xlogx_ratio(d, r2 * c2 / n)
    )
    return max(2.0 * g, 0.0)


def head_pair(entry: TermEntry) -> tuple[str, str] | None:
    """(modifier, head) lemmas: the last two content tokens."""
    lemmas = _content_lemmas(entry.tokens)
    if len(lemmas) < 2:
        return None
    return lemmas[-2], lemmas[-1]


def score_bank(bank: TermBank, pc: PairCounts) -> TermBank:
    """Score each entry by the LLR of its linked basic term's modifier/head pair."""
    out = {}
    for key, entry in bank.entries.items():
        score = None
        if entry.basic_key is not None and entry.basic_key in bank and pc.total > 0:
            pair = head_pair(bank[entry.basic_key])
            if pair is not None:
                score = log_likelihood(contingency(*pair, pc))
        out[key] = replace(entry, score=score)
    return TermBank(out, bank.total)


def rank_and_filter(
    bank: TermBank, min_llr: float | None = None, include_synthetic: bool = False
) -> list[TermEntry]:
    """Entries sorted by (score desc, frequency desc, key asc).

    With ``min_llr`` None (or -inf) nothing is filtered and unscored entries
    sort last; otherwise only entries scoring at least ``min_llr`` remain.
    """
    filtering = min_llr is not None and min_llr != -math.inf
    kept = []
    for e in bank:
        if e.synthetic and not include_synthetic:
            continue
        if filtering and (e.score is None or e.score < min_llr):
            continue
        kept.append(e)
    return sorted(
        kept,
        key=lambda e: (e.score is None, -(e.score or 0.0), -e.frequency, e.key),
    )
