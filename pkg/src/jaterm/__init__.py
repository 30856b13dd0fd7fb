"""Pattern-based extraction of Japanese multiword terms.

Pipeline: tagged corpus -> pattern scan -> term bank with basic/variant
links -> log-likelihood ranking -> optional evaluation against gold terms.
"""
from importlib import resources

from .assoc import (
    ContingencyTable, PairCounts, contingency, count_pairs, log_likelihood,
    rank_and_filter, score_bank,
)
from .automaton import CompiledPattern, compile_pattern
from .corpus import (
    KEY_SEPARATOR, CanonicalTag, Corpus, Document, Origin, TagMap, Token,
    map_tag, parse_tagged_stream, serialize_corpus, term_list,
)
from .errors import CorpusParseError, GrammarError, JatermError, TagMapError
from .evaluation import (
    CoverageReport, ExtractionReport, contained_in_text, coverage_eval,
    extraction_eval, percent,
)
from .grammar import (
    Grammar, Kind, Pattern, builtin_japanese_grammar, dump_grammar, load_grammar,
    with_max_len,
)
from .matcher import Candidate, accepts, extract_corpus, match_at, scan_sentence
from .termbank import TermBank, TermEntry, aggregate, link_variants, normalize_key


def data_path(name: str):
    """Path to a bundled data file (``worked_examples.tsv``, ``chasen.tagmap``)."""
    return resources.files(__name__) / "data" / name
