"""Exit criteria for the package, one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines are printed even when
output capture is on) or directly with ``python tests/test_acceptance.py``.
"""
import io
import json
import itertools
import math
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import planted_corpus, random_sentence, toks, worked_example_patterns  # noqa: E402
from jaterm import (  # noqa: E402
    CanonicalTag as T, Corpus, Document, Kind, Token, accepts, aggregate, builtin_japanese_grammar,
    data_path, dump_grammar, extract_corpus, link_variants, load_grammar, log_likelihood,
    parse_tagged_stream, scan_sentence, serialize_corpus, term_list,
)
from jaterm.cli import main  # noqa: E402
from jaterm.evaluation import coverage_eval, extraction_eval, percent  # noqa: E402

WORKED = str(data_path("worked_examples.tsv"))
LLR_TOL = 1e-9
PLANTED_MIN_LLR = 20.0


@pytest.fixture
def report(capsys):
    def _report(number: int, title: str, ok: bool, detail: str = "") -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, f"criterion {number} failed: {detail}"
    return _report


def run_cli(*argv: str) -> tuple[int, str]:
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


# 1 -------------------------------------------------------------------------

def test_criterion_1_worked_examples(report):
    t0 = time.perf_counter()
    g = builtin_japanese_grammar()
    expected = worked_example_patterns()
    terms = term_list(parse_tagged_stream(data_path("worked_examples.tsv").read_text()))
    got = {" ".join(t.surface for t in term): accepts(g, term) for term in terms}
    surfaces = {k.replace("naga-sa", "naga sa").replace("fuka-sa", "fuka sa"): v for k, v in expected.items()}
    code, out = run_cli("coverage", WORKED)
    elapsed = time.perf_counter() - t0
    mismatched = {k: (got.get(k), v) for k, v in surfaces.items() if got.get(k) != v}
    ok = (
        len(terms) == len(expected) == 19
        and not mismatched
        and code == 0
        and "coverage\t19/19 (100.0)" in out
        and elapsed < 1.0
    )
    report(1, "worked examples accepted with their patterns, coverage 100.0%", ok,
           f"{19 - len(mismatched)}/19 matched, {elapsed:.3f}s")


# 2 -------------------------------------------------------------------------

def test_criterion_2_longest_first(report):
    g = builtin_japanese_grammar()
    bt4 = [(c.length, c.pattern_name) for c in scan_sentence(g, toks(T.N, T.SFX_STEM, T.N))]
    ten = scan_sentence(g, toks(*[T.N] * 10))
    rng = random.Random(20240)
    alphabet = list(T)
    violations = 0
    for _ in range(10_000):
        tags = [rng.choice(alphabet) for _ in range(rng.randint(0, 15))]
        cands = scan_sentence(g, toks(*tags))
        end = 0
        for c in cands:
            if c.start < end or not 2 <= c.length <= g[c.pattern_name].max_tokens:
                violations += 1
            end = c.end
    ok = bt4 == [(3, "BT4")] and ten[0].length <= 9 and violations == 0
    report(2, "longest-first scan, 9-token cap, no overlaps over 10,000 random sequences", ok,
           f"BT4 scan {bt4}, first of ten nouns {ten[0].length}, violations {violations}")


# 3 -------------------------------------------------------------------------

def _llr_bruteforce(a, b, c, d):
    n = a + b + c + d
    total = 0.0
    for obs, row, col in ((a, a + b, a + c), (b, a + b, b + d), (c, c + d, a + c), (d, c + d, b + d)):
        if obs:
            total += obs * math.log(obs * n / (row * col))
    return 2 * total


def test_criterion_3_llr(report):
    worst = 0.0
    negative = 0
    for cells in itertools.product(range(21), repeat=4):
        if not any(cells):
            continue
        score = log_likelihood(cells)
        worst = max(worst, abs(score - _llr_bruteforce(*cells)))
        negative += score < -LLR_TOL
    indep = 0.0
    for p, q, m in itertools.product(range(1, 6), range(1, 6), range(1, 4)):
        indep = max(indep, abs(log_likelihood((p * p * m, p * q * m, q * p * m, q * q * m))))
    perfect = abs(log_likelihood((10, 0, 0, 10)) - 40 * math.log(2))
    ok = worst <= LLR_TOL and negative == 0 and indep <= LLR_TOL and perfect <= LLR_TOL
    report(3, "LLR matches brute force on all tables with cells <= 20", ok,
           f"max diff {worst:.2e}, independence max {indep:.2e}, (10,0,0,10) err {perfect:.2e}")


# 4 -------------------------------------------------------------------------

def _extraction_inputs(extracted: int, gold_total: int, in_text: int, one_word: int, correct: int):
    """Keys, gold terms and corpus whose evaluation yields exactly these counts."""
    def n(lemma: str) -> Token:
        return Token(lemma, lemma, T.N)

    one = [(n(f"u{i}"),) for i in range(one_word)]
    multi = [(n(f"a{i}"), n(f"b{i}")) for i in range(in_text - one_word)]
    absent = [(n(f"x{i}"), n(f"y{i}")) for i in range(gold_total - in_text)]
    corpus = Corpus((Document("d", tuple(one + multi)),))
    keys = ["‖".join(t.lemma for t in term) for term in multi[:correct]]
    keys += [f"noise{i}‖z" for i in range(extracted - correct)]
    return keys, one + multi + absent, corpus


def _coverage_gold(total: int, one_word: int, phrasal: int):
    return (
        [toks(T.N)] * one_word
        + [toks(T.N, T.NO, T.N)] * phrasal
        + [toks(T.N, T.N)] * (total - one_word - phrasal)
    )


def test_criterion_4_metric_arithmetic(report):
    g = builtin_japanese_grammar()
    ext = extraction_eval(*_extraction_inputs(23494, 4206, 2890, 582, 1639))
    extraction = [v.split("(")[1].rstrip(")") for _, v in ext.rows()]
    coverage = []
    for total, one, phr in ((16275, 2207, 409), (38785, 4480, 2366), (4206, 658, 231)):
        r = coverage_eval(g, _coverage_gold(total, one, phr))
        coverage.append((str(percent(r.one_word_terms, r.total_terms)), str(percent(r.phrasal_terms, r.total_terms))))
    ok = (
        (ext.extracted_count, ext.gold_total, ext.gold_in_text, ext.gold_one_word, ext.correct_count)
        == (23494, 4206, 2890, 582, 1639)
        and extraction == ["68.7", "20.1", "54.9", "7.0", "39.0", "71.0"]
        and coverage == [("13.6", "2.5"), ("11.6", "6.1"), ("15.6", "5.5")]
    )
    report(4, "published ratio pairs render exactly at one decimal", ok,
           f"extraction {extraction}, coverage {coverage}")


# 5 -------------------------------------------------------------------------

def test_criterion_5_filtering_direction(report, tmp_path):
    corpus, gold = planted_corpus()
    cpath, gpath = tmp_path / "planted.tsv", tmp_path / "gold.tsv"
    cpath.write_text(serialize_corpus(corpus), encoding="utf-8")
    gpath.write_text(serialize_corpus(Corpus((Document("gold", tuple(gold)),))), encoding="utf-8")
    _, off = run_cli("evaluate", "--format", "structured", str(cpath), str(gpath))
    _, on = run_cli("evaluate", "--format", "structured", "--min-llr", str(PLANTED_MIN_LLR), str(cpath), str(gpath))
    off, on = json.loads(off), json.loads(on)
    ok = (
        corpus.token_count() == 1000
        and on["precision"] > off["precision"]
        and on["hit_rate_upper"] <= off["hit_rate_upper"]
    )
    report(5, "LLR threshold raises precision without raising hit rate to upper bound", ok,
           f"precision {off['precision']:.3f} -> {on['precision']:.3f}, "
           f"hit rate upper {off['hit_rate_upper']:.3f} -> {on['hit_rate_upper']:.3f}")


# 6 -------------------------------------------------------------------------

def _random_corpus(rng: random.Random) -> Corpus:
    docs = []
    for d in range(rng.randint(0, 3)):
        sents = []
        for _ in range(rng.randint(0, 4)):
            sent = []
            for _ in range(rng.randint(1, 6)):
                tag = rng.choice(list(T))
                infl = rng.choice(["", "ta", "i"]) if tag in (T.V_INF, T.A_INF) else ""
                sent.append(Token(f"s{rng.randrange(50)}", f"l{rng.randrange(20)}", tag, infl))
            sents.append(tuple(sent))
        docs.append(Document(f"doc{d}", tuple(sents)))
    return Corpus(tuple(docs))


def test_criterion_6_determinism_and_round_trips(report):
    rng = random.Random(6)
    corpus_ok = all(
        parse_tagged_stream(serialize_corpus(c)) == c for c in (_random_corpus(rng) for _ in range(500))
    )
    g = builtin_japanese_grammar()
    grammar_ok = load_grammar(dump_grammar(g)) == g
    outputs = {run_cli("extract", "--jobs", str(j), WORKED) for j in (1, 1, 2, 4, 8)}
    ok = corpus_ok and grammar_ok and len(outputs) == 1
    report(6, "corpus and grammar round-trips, byte-identical extract output", ok,
           f"corpus {corpus_ok}, grammar {grammar_ok}, distinct outputs {len(outputs)}")


# 7 -------------------------------------------------------------------------

def test_criterion_7_variant_linking(report):
    g = builtin_japanese_grammar()
    corpus = parse_tagged_stream(data_path("worked_examples.tsv").read_text())
    bank = link_variants(aggregate(extract_corpus(g, corpus), g), g)
    worked_ok = (
        bank["hi‖douki‖shiki"].basic_key == "douki‖shiki"
        and bank["moji‖no‖daishou‖jynjyo"].basic_key == "daishou‖jynjyo"
        and all(e.basic_key == e.key for e in bank if g[e.pattern_name].kind is Kind.BASIC)
    )
    rng = random.Random(7)
    alphabet = [T.N, T.VN, T.AN, T.PFX, T.SFX, T.SFX_STEM, T.SFX_NOM, T.NO, T.V_INF, T.A_INF,
                T.ADJ, T.NUM, T.OTHER]
    failures = 0
    for _ in range(1000):
        sents = [random_sentence(rng, rng.randint(2, 12), alphabet, vocab=3) for _ in range(rng.randint(1, 15))]
        cands = extract_corpus(g, Corpus((Document("d", tuple(sents)),)))
        linked = link_variants(aggregate(cands, g), g)
        if link_variants(linked, g) != linked:
            failures += 1
            continue
        for key, e in linked.entries.items():
            back = {k for k, x in linked.entries.items() if x.basic_key == key and k != key}
            if back != set(e.variant_keys):
                failures += 1
                break
            if e.basic_key is not None and (
                e.basic_key not in linked or g[linked[e.basic_key].pattern_name].kind is not Kind.BASIC
            ):
                failures += 1
                break
    ok = worked_ok and failures == 0
    report(7, "variant links on worked examples; idempotent and inverse-consistent on 1,000 banks", ok,
           f"worked {worked_ok}, fuzz failures {failures}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
