"""Reduced-size runs of the verification suites."""

import random

import pytest

from verification import (
    CORPUS,
    GLOBAL_CORPUS,
    SUITES,
    TWIST_BASES,
    corpus_characters,
    random_witt,
    run_suite,
    run_suites,
)
from witt import ord_w


def test_corpus_shape():
    assert len(CORPUS) >= 50
    assert sum(1 for p, _ in CORPUS if p == 2) >= 16
    assert any(len(components) == 2 for _, components in CORPUS)
    assert all(index < len(CORPUS) for index in TWIST_BASES)


def test_corpus_parses():
    assert len(corpus_characters()) == len(CORPUS)


def test_random_witt_depth():
    rng = random.Random(7)
    for _ in range(20):
        a = random_witt(rng, 3, 2, 4)
        assert ord_w(a) >= -4


def test_qpolys_suite():
    result = run_suite("qpolys", seed=0, cases=2)
    assert result.passed, result.failures
    assert not result.vacuous
    assert result.checks["q_identity"]["passed"] > 0


def test_qpolys_sample_count():
    # ten (p, s) pairs, half the samples with components in F_p(x)(t)
    result = run_suite("qpolys", seed=5, cases=4)
    assert result.passed, result.failures
    assert sum(result.checks["q_identity"].values()) == 4 * 10


def test_lemmas_suite():
    result = run_suite("lemmas", seed=1, cases=10)
    assert result.passed, result.failures
    assert result.checks["floor_identities"] == {"passed": 1, "failed": 0}
    assert result.checks["fil_prime_closed"] == {"passed": 10, "failed": 0}
    assert result.checks["fil_dprime_closed"] == {"passed": 10, "failed": 0}


def test_crosscheck_suite():
    result = run_suite("crosscheck", seed=0, cases=1, corpus_limit=20)
    assert result.passed, result.failures
    assert result.checks["cform_matches_geometric"]["failed"] == 0
    assert result.checks["divisor_swan"]["passed"] == 1
    assert result.checks["boundary_order"]["failed"] == 0
    assert result.checks["boundary_order"]["passed"] > 0
    assert result.checks["divisor_support"] == {"passed": len(GLOBAL_CORPUS), "failed": 0}
    assert result.checks["divisor_bounds"] == {"passed": len(GLOBAL_CORPUS), "failed": 0}


def test_same_seed_same_result():
    first = run_suite("lemmas", seed=3, cases=5).to_dict()
    second = run_suite("lemmas", seed=3, cases=5).to_dict()
    assert first == second


def test_zero_cases_run_nothing():
    results = run_suites(SUITES, seed=0, cases=0)
    assert all(r.vacuous and r.passed for r in results)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("everything")
