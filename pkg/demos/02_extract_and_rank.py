# coding: utf-8

# # Extraction and ranking
#
# A toy corpus: a few noun pairs recur as fixed terms, and everything else is
# noun noise. Log-likelihood over adjacent lemmas should push the fixed pairs
# to the top.

# In[1]:

import random

from jaterm import CanonicalTag, Corpus, Document, Token

rng = random.Random(3)
fixed = [("densi", "kaigi"), ("jouhou", "kensaku"), ("gengo", "shori")]
noise = [f"w{i}" for i in range(25)]

def noun(lemma):
    return Token(lemma, lemma, CanonicalTag.N)

def gap():
    return Token("wa", "wa", CanonicalTag.OTHER)

sentences = []
for _ in range(120):
    pair = rng.choice(fixed) if rng.random() < 0.3 else tuple(rng.sample(noise, 2))
    sentences.append((gap(), noun(pair[0]), noun(pair[1]), gap()))
corpus = Corpus((Document("toy", tuple(sentences)),))
print(corpus.token_count(), "tokens")


# `run_pipeline` is the same path the `extract` subcommand takes: scan, build
# the term bank, link variants, count pairs, score, rank.

# In[2]:

from jaterm import builtin_japanese_grammar
from jaterm.cli import run_pipeline

grammar = builtin_japanese_grammar()
ranked = run_pipeline(grammar, corpus, min_llr=None)
for e in ranked[:8]:
    print(f"{e.score:8.2f} {e.frequency:3d} {e.key}")


# A threshold drops the noise. Where to put it depends on the corpus; here the
# gap between the fixed pairs and the rest is wide.

# In[3]:

kept = run_pipeline(grammar, corpus, min_llr=15.0)
print([e.key for e in kept])


# The contingency table behind one score, for the curious.

# In[4]:

from jaterm import contingency, count_pairs, extract_corpus, log_likelihood

pc = count_pairs(extract_corpus(grammar, corpus))
table = contingency("densi", "kaigi", pc)
print(table, round(log_likelihood(table), 3))
