"""Aggregate candidates into term entries and link variants to basic terms."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .corpus import KEY_SEPARATOR, CanonicalTag, Token
from .grammar import Grammar, Kind
from .matcher import Candidate

TermKey = str


def term_key(tokens: Sequence[Token]) -> TermKey:
    return KEY_SEPARATOR.join(t.lemma for t in tokens)


def normalize_key(candidate: Candidate) -> TermKey:
    return term_key(candidate.tokens)


def render_surface(tokens: Sequence[Token]) -> str:
    return " ".join(t.surface for t in tokens)


@dataclass
class TermEntry:
    key: TermKey
    pattern_name: str
    frequency: int
    surfaces: dict[str, int]
    tokens: tuple[Token, ...]  # representative occurrence
    basic_key: TermKey | None = None
    variant_keys: frozenset[TermKey] = frozenset()
    score: float | None = None
    synthetic: bool = False

    @property
    def surface(self) -> str:
        """Most frequent surface rendering (ties: lexicographically first)."""
        return min(self.surfaces.items(), key=lambda kv: (-kv[1], kv[0]))[0]


@dataclass
class TermBank:
    entries: dict[TermKey, TermEntry] = field(default_factory=dict)
    total: int = 0

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.values())

    def __getitem__(self, key: TermKey) -> TermEntry:
        return self.entries[key]

    def __contains__(self, key: object) -> bool:
        return key in self.entries


def _majority(counts: Counter, grammar: Grammar | None) -> str:
    def rank(name: str) -> tuple:
        prio = grammar[name].priority if grammar is not None and name in grammar else len(counts)
        return (-counts[name], prio, name)

    return min(counts, key=rank)


def _build(groups: dict[TermKey, list[Candidate]], total: int, grammar: Grammar | None) -> TermBank:
    entries = {}
    for key in sorted(groups):
        cands = groups[key]
        pattern = _majority(Counter(c.pattern_name for c in cands), grammar)
        rep = min(
            (c for c in cands if c.pattern_name == pattern),
            key=lambda c: (render_surface(c.tokens), [t.tag.value for t in c.tokens]),
        )
        surfaces = Counter(render_surface(c.tokens) for c in cands)
        entries[key] = TermEntry(key, pattern, len(cands), dict(sorted(surfaces.items())), rep.tokens)
    return TermBank(entries, total)


def aggregate(candidates: Iterable[Candidate], grammar: Grammar | None = None) -> TermBank:
    """One entry per distinct key; order-insensitive in ``candidates``."""
    groups: dict[TermKey, list[Candidate]] = {}
    n = 0
    for c in candidates:
        groups.setdefault(normalize_key(c), []).append(c)
        n += 1
    return _build(groups, n, grammar)


def merge_banks(a: TermBank, b: TermBank, grammar: Grammar | None = None) -> TermBank:
    """Combine two unlinked banks built from disjoint candidate lists."""
    out: dict[TermKey, TermEntry] = {}
    for key in sorted(set(a.entries) | set(b.entries)):
        ea, eb = a.entries.get(key), b.entries.get(key)
        if ea is None or eb is None:
            out[key] = replace(ea or eb)
            continue
        pattern_votes = Counter({ea.pattern_name: 0, eb.pattern_name: 0})
        pattern_votes[ea.pattern_name] += ea.frequency
        pattern_votes[eb.pattern_name] += eb.frequency
        pattern = _majority(pattern_votes, grammar)
        reps = [e.tokens for e in (ea, eb) if e.pattern_name == pattern]
        rep = min(reps, key=lambda ts: (render_surface(ts), [t.tag.value for t in ts]))
        surfaces = Counter(ea.surfaces) + Counter(eb.surfaces)
        out[key] = TermEntry(
            key, pattern, ea.frequency + eb.frequency, dict(sorted(surfaces.items())), rep
        )
    return TermBank(out, a.total + b.total)


def _basic_window(entry: TermEntry, grammar: Grammar, bank: dict[TermKey, TermEntry]):
    """Head-final window of ``entry`` accepted by a BASIC pattern, longest first."""
    tokens = entry.tokens
    region = tokens
    if grammar[entry.pattern_name].kind is Kind.PHRASE:
        nos = [i for i, t in enumerate(tokens) if t.tag is CanonicalTag.NO]
        if nos:
            region = tokens[nos[-1] + 1:]
    basics = [cp for cp in grammar.compiled() if cp.pattern.kind is Kind.BASIC]
    longest = max((cp.pattern.max_tokens for cp in basics), default=0)
    for size in range(min(longest, len(region), len(tokens) - 1), 1, -1):
        window = region[-size:]
        tags = [t.tag for t in window]
        for cp in basics:
            if not cp.accepts(tags):
                continue
            key = term_key(window)
            existing = bank.get(key)
            if existing is not None and grammar[existing.pattern_name].kind is not Kind.BASIC:
                continue
            return key, cp.pattern.name, window
    return None


def link_variants(bank: TermBank, grammar: Grammar) -> TermBank:
    """Attach every complex term to the basic term at its head-final edge.

    Basic entries link to themselves. Missing basic terms are added as
    synthetic entries with frequency 0. Linking an already linked bank gives
    the same bank.
    """
    entries = {
        k: replace(e, basic_key=None, variant_keys=frozenset())
        for k, e in bank.entries.items()
        if not e.synthetic
    }
    min_basic = min((p.min_tokens for p in grammar.of_kind(Kind.BASIC)), default=2)
    linkable = {Kind.COMPOUND, Kind.VARIANT, Kind.PHRASE}
    synthetic: dict[TermKey, TermEntry] = {}
    for key in sorted(entries):
        entry = entries[key]
        if entry.pattern_name not in grammar:
            continue
        kind = grammar[entry.pattern_name].kind
        if kind is Kind.BASIC:
            entry.basic_key = key
            continue
        if kind not in linkable or len(entry.tokens) <= min_basic:
            continue
        found = _basic_window(entry, grammar, entries)
        if found is None:
            continue
        bkey, bpattern, window = found
        entry.basic_key = bkey
        if bkey not in entries and bkey not in synthetic:
            synthetic[bkey] = TermEntry(
                bkey, bpattern, 0, {render_surface(window): 0}, tuple(window),
                basic_key=bkey, synthetic=True,
            )
    entries.update(synthetic)
    variants: dict[TermKey, set[TermKey]] = {}
    for key, entry in entries.items():
        if entry.basic_key is not None and entry.basic_key != key:
            variants.setdefault(entry.basic_key, set()).add(key)
    for key, vs in variants.items():
        entries[key].variant_keys = frozenset(vs)
    return TermBank({k: entries[k] for k in sorted(entries)}, bank.total)
