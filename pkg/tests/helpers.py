"""Shared builders for tests."""
from __future__ import annotations

import json
import random

from jaterm import CanonicalTag as T, Corpus, Document, Token, data_path

INFLECTED = {T.V_INF, T.A_INF}


def tok(tag: T, lemma: str | None = None, surface: str | None = None, infl: str = "") -> Token:
    lemma = lemma or tag.value.lower()
    if tag in INFLECTED and not infl:
        infl = "i"
    return Token(surface or lemma, lemma, tag, infl)


def toks(*tags: T, lemmas: list[str] | None = None) -> tuple[Token, ...]:
    lemmas = lemmas or [f"w{i}" for i in range(len(tags))]
    return tuple(tok(t, l) for t, l in zip(tags, lemmas))


def corpus_of(*sentences, doc_id: str = "d") -> Corpus:
    return Corpus((Document(doc_id, tuple(tuple(s) for s in sentences)),))


def worked_example_patterns() -> dict[str, str]:
    return json.loads(data_path("worked_examples_patterns.json").read_text())


def random_sentence(rng: random.Random, length: int, alphabet, vocab: int = 6) -> tuple[Token, ...]:
    out = []
    for _ in range(length):
        tag = rng.choice(alphabet)
        lemma = "no" if tag is T.NO else f"{tag.value.lower()}{rng.randrange(vocab)}"
        out.append(tok(tag, lemma))
    return tuple(out)


def planted_corpus(seed: int = 7, n_tokens: int = 1000, n_planted: int = 8, planted_freq: int = 12,
                   noise_vocab: int = 20):
    """Sentences ``OTHER N N OTHER``: planted noun pairs that always co-occur,
    plus noise pairs drawn at random from a shared noun vocabulary.

    Returns (corpus, gold_terms) where gold are the planted pairs.
    """
    rng = random.Random(seed)
    planted = [(f"p{i}", f"q{i}") for i in range(n_planted)]
    nouns = [f"n{i}" for i in range(noise_vocab)]
    n_sent = n_tokens // 4
    pairs = [p for p in planted for _ in range(planted_freq)]
    while len(pairs) < n_sent:
        a, b = rng.sample(nouns, 2)
        pairs.append((a, b))
    rng.shuffle(pairs)
    sentences = [
        (tok(T.OTHER, "wa"), tok(T.N, a), tok(T.N, b), tok(T.OTHER, "desu")) for a, b in pairs
    ]
    gold = [(tok(T.N, a), tok(T.N, b)) for a, b in planted]
    return corpus_of(*sentences), gold
