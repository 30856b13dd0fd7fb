"""Coverage and extraction metrics against gold term lists.

Coverage runs every gold term through whole-sequence acceptance. Extraction
compares extracted term keys with gold keys; the "hit rates" are recall-like
but not recall, since the full domain terminology is unknown.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import asdict, dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Sequence

from .corpus import KEY_SEPARATOR, CanonicalTag, Corpus, Token
from .grammar import Grammar
from .matcher import accepts
from .termbank import TermKey, term_key


def ratio(num: int, den: int) -> float | None:
    return None if den == 0 else num / den


def percent(num: int, den: int) -> Decimal | None:
    """``num/den`` as a percentage rounded half-up to one decimal."""
    if den == 0:
        return None
    return (Decimal(num) * 100 / Decimal(den)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP)


def format_fraction(num: int, den: int) -> str:
    pct = percent(num, den)
    return f"{num}/{den} ({'-' if pct is None else pct})"


@dataclass(frozen=True)
class CoverageReport:
    total_terms: int
    one_word_terms: int
    phrasal_terms: int
    accepted_terms: int
    per_pattern: dict[str, int] = field(default_factory=dict)

    @property
    def one_word_rate(self) -> float:
        return self.one_word_terms / self.total_terms

    @property
    def phrasal_rate(self) -> float:
        return self.phrasal_terms / self.total_terms

    @property
    def coverage_rate(self) -> float:
        return self.accepted_terms / self.total_terms

    def rows(self) -> list[tuple[str, str]]:
        n = self.total_terms
        out = [
            ("total terms", str(n)),
            ("one word terms", format_fraction(self.one_word_terms, n)),
            ("phrasal terms", format_fraction(self.phrasal_terms, n)),
            ("accepted terms", str(self.accepted_terms)),
            ("coverage", format_fraction(self.accepted_terms, n)),
        ]
        out += [(f"pattern {name}", str(k)) for name, k in self.per_pattern.items()]
        return out

    def as_dict(self) -> dict:
        d = asdict(self)
        d.update(
            one_word_rate=self.one_word_rate,
            phrasal_rate=self.phrasal_rate,
            coverage_rate=self.coverage_rate,
        )
        return d


@dataclass(frozen=True)
class ExtractionReport:
    extracted_count: int
    gold_total: int
    gold_in_text: int
    gold_one_word: int
    correct_count: int

    @property
    def upper_bound(self) -> int:
        return self.gold_in_text - self.gold_one_word

    @property
    def precision(self) -> float | None:
        return ratio(self.correct_count, self.extracted_count)

    @property
    def hit_rate_all(self) -> float | None:
        return ratio(self.correct_count, self.gold_total)

    @property
    def hit_rate_upper(self) -> float | None:
        return ratio(self.correct_count, self.upper_bound)

    def rows(self) -> list[tuple[str, str]]:
        return [
            ("contained in text", format_fraction(self.gold_in_text, self.gold_total)),
            ("one word key", format_fraction(self.gold_one_word, self.gold_in_text)),
            ("upper bound", format_fraction(self.upper_bound, self.gold_total)),
            ("precision", format_fraction(self.correct_count, self.extracted_count)),
            ("hit rate to all keys", format_fraction(self.correct_count, self.gold_total)),
            ("hit rate to upper bound", format_fraction(self.correct_count, self.upper_bound)),
        ]

    def as_dict(self) -> dict:
        d = asdict(self)
        d.update(
            upper_bound=self.upper_bound,
            precision=self.precision,
            hit_rate_all=self.hit_rate_all,
            hit_rate_upper=self.hit_rate_upper,
        )
        return d


def is_phrasal(term: Sequence[Token]) -> bool:
    return any(t.tag is CanonicalTag.NO for t in term)


def coverage_eval(grammar: Grammar, gold: Iterable[Sequence[Token]]) -> CoverageReport:
    gold = list(gold)
    if not gold:
        raise ValueError("coverage needs at least one gold term")
    one_word = sum(len(t) == 1 for t in gold)
    phrasal = sum(is_phrasal(t) for t in gold)
    hits = Counter(name for name in (accepts(grammar, t) for t in gold) if name is not None)
    per_pattern = {p.name: hits[p.name] for p in grammar.patterns if hits[p.name]}
    return CoverageReport(len(gold), one_word, phrasal, sum(hits.values()), per_pattern)


def _occurs_at(parts: Sequence[str], sentence: Sequence[Token], start: int) -> bool:
    # NO tokens in the text may be skipped, or matched by an equal key part.
    m = len(parts)
    states = {0}
    for tok in sentence[start:]:
        nxt = set()
        for k in states:
            if k < m and tok.lemma == parts[k]:
                nxt.add(k + 1)
            if tok.tag is CanonicalTag.NO and k > 0:
                nxt.add(k)
        if m in nxt:
            return True
        if not nxt:
            return False
        states = nxt
    return False


def _lemma_index(corpus: Corpus) -> dict[str, list[tuple[Sequence[Token], int]]]:
    index: dict[str, list[tuple[Sequence[Token], int]]] = defaultdict(list)
    for _, _, sent in corpus.sentences():
        for i, tok in enumerate(sent):
            index[tok.lemma].append((sent, i))
    return index


def _contained(key: TermKey, index: dict[str, list[tuple[Sequence[Token], int]]]) -> bool:
    parts = key.split(KEY_SEPARATOR)
    return any(_occurs_at(parts, sent, i) for sent, i in index.get(parts[0], ()))


def contained_in_text(key: TermKey, corpus: Corpus) -> bool:
    return _contained(key, _lemma_index(corpus))


def extraction_eval(
    extracted: Iterable[TermKey], gold: Iterable[Sequence[Token]], corpus: Corpus
) -> ExtractionReport:
    gold = list(gold)
    if not gold:
        raise ValueError("extraction evaluation needs at least one gold term")
    extracted_keys = set(extracted)
    index = _lemma_index(corpus)
    in_text = [t for t in gold if _contained(term_key(t), index)]
    gold_keys = {term_key(t) for t in gold}
    return ExtractionReport(
        extracted_count=len(extracted_keys),
        gold_total=len(gold),
        gold_in_text=len(in_text),
        gold_one_word=sum(len(t) == 1 for t in in_text),
        correct_count=len(extracted_keys & gold_keys),
    )
