"""Command-line interface: ``jaterm {extract,coverage,evaluate,grammar-dump}``.

Exit status is 0 on success, 1 for invalid input (parse, tag-mapping or
grammar errors) and 2 for I/O failures.

Structured output (``--format structured``) is JSON with these fields:

extract
    list of objects ``rank, key, surface, pattern, frequency, llr,
    basic_key, variant_keys``
coverage
    ``total_terms, one_word_terms, phrasal_terms, accepted_terms,
    per_pattern, one_word_rate, phrasal_rate, coverage_rate``
evaluate
    ``extracted_count, gold_total, gold_in_text, gold_one_word,
    correct_count, upper_bound, precision, hit_rate_all, hit_rate_upper``
grammar-dump
    the grammar file text under ``grammar``
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence, TextIO

from .assoc import count_pairs, rank_and_filter, score_bank
from .corpus import Corpus, TagMap, parse_tagged_stream, term_list
from .errors import JatermError
from .evaluation import coverage_eval, extraction_eval
from .grammar import Grammar, builtin_japanese_grammar, dump_grammar, load_grammar, with_max_len
from .matcher import extract_corpus
from .termbank import TermEntry, aggregate, link_variants

EXTRACT_COLUMNS = ("rank", "key", "surface", "pattern", "frequency", "llr", "basic_key")


@dataclass(frozen=True)
class RunConfig:
    grammar: str = "builtin"
    tagmap: str | None = None
    min_llr: float | None = None
    max_len: int | None = None
    fmt: str = "tsv"
    strict_tags: bool = False
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.max_len is not None and self.max_len < 2:
            raise JatermError("--max-len must be at least 2")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_run_grammar(config: RunConfig) -> Grammar:
    grammar = builtin_japanese_grammar() if config.grammar == "builtin" else load_grammar(_read(config.grammar))
    if config.max_len is not None:
        grammar = with_max_len(grammar, config.max_len)
    return grammar


def _load_corpus(path: str, config: RunConfig) -> Corpus:
    tagmap = TagMap.parse(_read(config.tagmap)) if config.tagmap else TagMap.identity()
    return parse_tagged_stream(_read(path), tagmap, config.strict_tags)


def run_pipeline(grammar: Grammar, corpus: Corpus, min_llr: float | None, jobs: int = 1) -> list[TermEntry]:
    candidates = extract_corpus(grammar, corpus, jobs)
    bank = link_variants(aggregate(candidates, grammar), grammar)
    bank = score_bank(bank, count_pairs(candidates))
    return rank_and_filter(bank, min_llr)


def _fmt_llr(score: float | None) -> str:
    return "" if score is None else f"{score:.6f}"


def _print_rows(rows: Sequence[tuple[str, str]], out: TextIO) -> None:
    for name, value in rows:
        out.write(f"{name}\t{value}\n")


def _print_json(obj, out: TextIO) -> None:
    out.write(json.dumps(obj, ensure_ascii=False, indent=2) + "\n")


def cmd_extract(config: RunConfig, corpus_path: str, out: TextIO) -> int:
    grammar = load_run_grammar(config)
    ranked = run_pipeline(grammar, _load_corpus(corpus_path, config), config.min_llr, config.jobs)
    if config.fmt == "structured":
        _print_json([
            {
                "rank": i, "key": e.key, "surface": e.surface, "pattern": e.pattern_name,
                "frequency": e.frequency, "llr": e.score, "basic_key": e.basic_key,
                "variant_keys": sorted(e.variant_keys),
            }
            for i, e in enumerate(ranked, start=1)
        ], out)
        return 0
    out.write("\t".join(EXTRACT_COLUMNS) + "\n")
    for i, e in enumerate(ranked, start=1):
        row = (str(i), e.key, e.surface, e.pattern_name, str(e.frequency), _fmt_llr(e.score), e.basic_key or "")
        out.write("\t".join(row) + "\n")
    return 0


def cmd_coverage(config: RunConfig, gold_path: str, out: TextIO) -> int:
    grammar = load_run_grammar(config)
    report = coverage_eval(grammar, term_list(_load_corpus(gold_path, config)))
    if config.fmt == "structured":
        _print_json(report.as_dict(), out)
    else:
        _print_rows(report.rows(), out)
    return 0


def cmd_evaluate(config: RunConfig, corpus_path: str, gold_path: str, out: TextIO) -> int:
    grammar = load_run_grammar(config)
    corpus = _load_corpus(corpus_path, config)
    gold = term_list(_load_corpus(gold_path, config))
    ranked = run_pipeline(grammar, corpus, config.min_llr, config.jobs)
    report = extraction_eval([e.key for e in ranked], gold, corpus)
    if config.fmt == "structured":
        _print_json(report.as_dict(), out)
    else:
        _print_rows([("extracted terms", str(report.extracted_count))] + report.rows(), out)
    return 0


def cmd_grammar_dump(config: RunConfig, out: TextIO) -> int:
    text = dump_grammar(load_run_grammar(config))
    if config.fmt == "structured":
        _print_json({"grammar": text}, out)
    else:
        out.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grammar", default="builtin", help="grammar file, or 'builtin'")
    common.add_argument("--tagmap", help="tag map file (default: canonical tag names)")
    common.add_argument("--min-llr", type=float, help="drop terms scoring below this LLR")
    common.add_argument("--max-len", type=int, help="token cap for compound patterns")
    common.add_argument("--format", dest="fmt", choices=("tsv", "structured"), default="tsv")
    common.add_argument("--strict-tags", action="store_true", help="fail on unmapped raw tags")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for scanning")

    parser = argparse.ArgumentParser(prog="jaterm", description="Pattern-based Japanese term extraction")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("extract", parents=[common], help="extract and rank term candidates")
    p.add_argument("corpus", help="tagged corpus file, '-' for stdin")
    p = sub.add_parser("coverage", parents=[common], help="pattern coverage of a gold term list")
    p.add_argument("gold")
    p = sub.add_parser("evaluate", parents=[common], help="precision and hit rates against gold keys")
    p.add_argument("corpus")
    p.add_argument("gold")
    sub.add_parser("grammar-dump", parents=[common], help="print the grammar in file syntax")
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            args.grammar, args.tagmap, args.min_llr, args.max_len, args.fmt, args.strict_tags, args.jobs
        )
        if args.command == "extract":
            return cmd_extract(config, args.corpus, out)
        if args.command == "coverage":
            return cmd_coverage(config, args.gold, out)
        if args.command == "evaluate":
            return cmd_evaluate(config, args.corpus, args.gold, out)
        return cmd_grammar_dump(config, out)
    except OSError as exc:
        print(f"jaterm: error: {exc}", file=sys.stderr)
        return 2
    except (JatermError, ValueError) as exc:
        print(f"jaterm: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
