# coding: utf-8

# # Evaluation
#
# Two questions: how many gold terms can the grammar describe at all
# (coverage), and how many gold terms does the ranked list actually find
# (precision and hit rates).

# In[1]:

from jaterm import builtin_japanese_grammar, coverage_eval, data_path, parse_tagged_stream, term_list

grammar = builtin_japanese_grammar()
corpus = parse_tagged_stream(data_path("worked_examples.tsv").read_text(encoding="utf-8"))
gold = term_list(corpus)
cov = coverage_eval(grammar, gold)
for label, value in cov.rows():
    print(f"{label:24} {value}")


# Extraction is judged against gold keys that actually occur in the text.
# One-word gold terms can never be extracted, so they come off the upper bound.

# In[2]:

from jaterm import extraction_eval
from jaterm.cli import run_pipeline

ranked = run_pipeline(grammar, corpus, min_llr=None)
report = extraction_eval([e.key for e in ranked], gold, corpus)
for label, value in report.rows():
    print(f"{label:24} {value}")


# Percentages are rounded half-up to one decimal, so published counts can be
# checked directly.

# In[3]:

from jaterm.evaluation import ExtractionReport

published = ExtractionReport(extracted_count=23494, gold_total=4206, gold_in_text=2890,
                             gold_one_word=582, correct_count=1639)
for label, value in published.rows():
    print(f"{label:24} {value}")
