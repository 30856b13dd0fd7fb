"""Leftmost-longest, non-overlapping candidate scanning."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .automaton import CompiledPattern
from .corpus import CanonicalTag, Corpus, Token
from .grammar import Grammar


@dataclass(frozen=True)
class Candidate:
    doc_id: str
    sentence_index: int
    start: int
    length: int
    pattern_name: str
    tokens: tuple[Token, ...]

    @property
    def end(self) -> int:
        return self.start + self.length


def _tags(seq: Sequence[Token] | Sequence[CanonicalTag]) -> list[CanonicalTag]:
    return [x if isinstance(x, CanonicalTag) else x.tag for x in seq]


def match_at(
    pattern: CompiledPattern, tokens: Sequence[Token] | Sequence[CanonicalTag], start: int
) -> int | None:
    """Longest span length the pattern accepts at ``start``, or None."""
    if not 0 <= start <= len(tokens):
        raise IndexError(start)
    return pattern.match_at(_tags(tokens), start)


def best_match(grammar: Grammar, tags: Sequence[CanonicalTag], start: int) -> tuple[int, str] | None:
    """Longest match over all patterns at ``start``; ties go to the earlier pattern."""
    best: tuple[int, str] | None = None
    for cp in grammar.compiled():
        length = cp.match_at(tags, start)
        if length is not None and (best is None or length > best[0]):
            best = (length, cp.pattern.name)
    return best


def scan_sentence(
    grammar: Grammar, sentence: Sequence[Token], doc_id: str = "", sentence_index: int = 0
) -> list[Candidate]:
    tags = _tags(sentence)
    out = []
    i = 0
    while i < len(tags):
        hit = best_match(grammar, tags, i)
        if hit is None:
            i += 1
            continue
        length, name = hit
        out.append(Candidate(doc_id, sentence_index, i, length, name, tuple(sentence[i:i + length])))
        i += length
    return out


def accepts(grammar: Grammar, tokens: Sequence[Token] | Sequence[CanonicalTag]) -> str | None:
    """Name of the first pattern (by priority) accepting the whole sequence."""
    tags = _tags(tokens)
    for cp in grammar.compiled():
        if cp.accepts(tags):
            return cp.pattern.name
    return None


def extract_corpus(grammar: Grammar, corpus: Corpus, jobs: int = 1) -> list[Candidate]:
    """Candidates of every sentence, in corpus order regardless of ``jobs``."""
    work = list(corpus.sentences())
    if jobs <= 1:
        per_sentence = [scan_sentence(grammar, s, d, i) for d, i, s in work]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            per_sentence = list(pool.map(lambda w: scan_sentence(grammar, w[2], w[0], w[1]), work))
    return [c for cands in per_sentence for c in cands]
