import json
import random
from pathlib import Path

import numpy as np
import pytest
from oracles import all_ternary_words, brute_force_survivors, naive_parikh_set

from wordlab import SearchConfig, SuiteBounds, default_corpus, run_lemma_suite, search_rho_bounded
from wordlab.catalog import catalog_spec
from wordlab.errors import InvalidParameter, ResourceBound
from wordlab.harness import CorpusEntry, WindowSets, corrupt
from wordlab.words import generate

FIXTURE = Path(__file__).parent / "fixtures" / "lemma_suite_default.json"


def as_strings(rows):
    return ["".join("123"[x] for x in row) for row in rows]


def test_search_small_examples():
    assert search_rho_bounded(SearchConfig(1)).counts_by_length == {1: 3}
    rep = search_rho_bounded(SearchConfig(3, require_all_letters=True, collect_all=True))
    assert rep.counts_by_length[3] == 6
    assert rep.all_survivors == ["123", "132", "213", "231", "312", "321"]


@pytest.mark.parametrize("L", range(1, 10))
def test_search_matches_brute_force(L):
    rep = search_rho_bounded(SearchConfig(L, collect_all=True, report_top=0))
    for k in range(1, L + 1):
        assert rep.counts_by_length[k] == len(brute_force_survivors(k, 3))
    assert rep.all_survivors == as_strings(brute_force_survivors(L, 3))


def test_search_other_bounds_match_brute_force():
    for bound in (1, 2, 4):
        rep = search_rho_bounded(SearchConfig(8, rho_bound=bound, collect_all=True, report_top=0))
        assert rep.all_survivors == as_strings(brute_force_survivors(8, bound))


def test_symmetry_divides_by_three():
    full = search_rho_bounded(SearchConfig(9))
    sym = search_rho_bounded(SearchConfig(9, symmetry=True))
    assert all(full.counts_by_length[k] == 3 * sym.counts_by_length[k] for k in full.counts_by_length)
    assert sym.as_dict()["symmetry_factor"] == 3


def test_window_sets_match_recomputation():
    rng = random.Random(5)
    ws = WindowSets(3, 40)
    word = []
    for _ in range(1000):
        if word and (len(word) == 40 or rng.random() < 0.35):
            ws.pop()
            word.pop()
        else:
            a = rng.randrange(3)
            ws.push(a)
            word.append(a)
        s = "".join("123"[x] for x in word)
        expected = [naive_parikh_set(s, n, "123") for n in range(1, len(s) + 1)]
        assert ws.parikh_sets() == expected


def test_survivor_report_fields():
    rep = search_rho_bounded(SearchConfig(12, report_top=3))
    doc = json.loads(rep.to_json())
    assert set(doc) >= {"config", "counts_by_length", "survivors", "disclaimer"}
    assert [s["word"] for s in doc["survivors"]] == sorted(s["word"] for s in doc["survivors"])
    for s in rep.survivors:
        assert all((f * 12).denominator == 1 for f in s.frequencies)
        assert s.relation is not None
    assert all(s["relation_note"] == "trivially expected at finite length" for s in doc["survivors"])


def test_node_budget_raises_with_partial_result():
    with pytest.raises(ResourceBound) as exc:
        search_rho_bounded(SearchConfig(12, node_budget=500))
    partial = exc.value.partial
    assert partial.partial and partial.nodes == 501


def test_search_config_validation():
    with pytest.raises(InvalidParameter):
        SearchConfig(0)
    with pytest.raises(InvalidParameter):
        SearchConfig(5, rho_bound=0)


def test_lemma_suite_matches_committed_report():
    report = run_lemma_suite(default_corpus(10_000), SuiteBounds())
    assert report.ok
    assert json.loads(report.to_json()) == json.loads(FIXTURE.read_text())


def test_lemma_suite_skips_inapplicable_checks():
    report = run_lemma_suite([catalog_spec("fibonacci", 2000)], SuiteBounds(n_max=50))
    row = report.matrix()["fibonacci"]
    assert row["lemma19"] == "skipped" and row["lemma22"] == "skipped"
    assert "fail" not in row.values()


def test_lemma_suite_flags_corrupted_word():
    spec = catalog_spec("periodic12", 1000)
    bad = corrupt(generate(spec), 500)
    report = run_lemma_suite([CorpusEntry(spec, bad, "periodic12-corrupted")], SuiteBounds(n_max=50))
    assert not report.ok
    failed = {r.check for r in report.failures()}
    assert failed & {"eq4", "periodicity"}
    detail = next(r.detail for r in report.failures() if r.check == "periodicity")
    assert "counterexample" in detail


def test_lemma_suite_rejects_unknown_suite():
    with pytest.raises(InvalidParameter):
        run_lemma_suite([catalog_spec("fibonacci", 100)], SuiteBounds(), ["bogus"])
