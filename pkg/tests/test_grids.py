"""Sweep engine regression pins at reduced scale.

Full-scale runs live in the acceptance module; here each sweep re-runs on
a smaller grid with its default seed and must land on byte-identical
tallies. A drift in any number means either the arithmetic, the grid
enumeration, or the rng stream changed, and each of those is a bug or a
deliberate, ledgered decision.
"""

import math

import pytest

from cppforge import REGISTRY, SweepReport, norm_lift_pairs, tower_grid
from cppforge.grids import (
    DEFAULT_SEED,
    sweep_kernel_binomials,
    sweep_monomial_norm,
    sweep_norm_lift,
    sweep_quadratic_monomials,
    sweep_trace_binomial,
    sweep_trace_general,
    sweep_trace_simple,
)


def test_registry_tokens():
    assert set(REGISTRY) == {
        "thm2.2",
        "cor2.3",
        "cor2.5",
        "thm3.2",
        "thm3.3",
        "thm3.7",
        "lemma3.4",
    }


def test_tower_grid_bounds_and_dedup():
    towers = tower_grid(4096)
    assert len(towers) == 57
    seen = set()
    for t in towers:
        assert t.order <= 4096 and t.n >= 2
        key = (t.p, t.base.r, t.n)
        assert key not in seen
        seen.add(key)
    # shrinking the cap can only shrink the grid
    assert len(tower_grid(256)) < 57


def test_norm_lift_pairs_requires_coprimality():
    pairs = norm_lift_pairs(4096)
    assert len(pairs) == 27
    assert all(math.gcd(n, q - 1) == 1 for q, n in pairs)
    assert (4, 3) not in pairs  # gcd(3, 3) = 3
    assert pairs == sorted(pairs)


def test_sweep_report_bookkeeping():
    rep = SweepReport("demo")
    rep.note(True, True)
    rep.note(True, False)
    assert rep.clean and rep.cases == 2 and rep.true_outcomes == 1
    rep.note(False, False, {"why": "x"})
    assert not rep.clean
    assert rep.counterexamples == [{"why": "x"}]
    j = rep.to_json()
    assert j["token"] == "demo" and j["cases"] == 3 and j["agreements"] == 2


def test_norm_lift_sweep_small_scale():
    rep = sweep_norm_lift(max_order=256, random_h=20)
    assert rep.clean
    assert (rep.cases, rep.true_outcomes) == (5237, 60)
    assert rep.extras["fiber_cases"] == rep.cases
    assert rep.extras["fiber_agreements"] == rep.cases
    assert rep.extras["builder_crosschecks"] == 88


def test_monomial_norm_sweep_small_scale():
    rep = sweep_monomial_norm(max_order=256)
    assert rep.clean
    assert (rep.cases, rep.true_outcomes) == (323, 39)


def test_quadratic_monomial_sweep_small_scale():
    rep = sweep_quadratic_monomials(max_order=256)
    assert rep.clean
    assert (rep.cases, rep.true_outcomes, rep.skipped) == (20, 20, 10)


def test_trace_simple_sweep_small_scale():
    rep = sweep_trace_simple(max_order=256)
    assert rep.clean
    assert (rep.cases, rep.true_outcomes) == (8010, 80)


def test_trace_general_sweep_small_scale():
    rep = sweep_trace_general(max_order=64)
    assert rep.clean
    assert (rep.cases, rep.true_outcomes, rep.skipped) == (46, 3, 296)
    assert rep.extras["hypothesis_failures"] == 296


def test_trace_binomial_sweep_small_scale():
    rep = sweep_trace_binomial(max_order=64)
    assert rep.clean
    assert (rep.cases, rep.true_outcomes) == (420, 12)
    assert rep.extras["identity_failures"] == 0


def test_kernel_binomial_sweep_small_scale():
    rep = sweep_kernel_binomials(max_order=256)
    assert rep.clean
    assert (rep.cases, rep.skipped) == (138, 123)
    assert rep.true_outcomes == rep.cases  # applied cases always predict True
    assert rep.extras["no_case_exhaustive_true"] == 0


def test_sweeps_are_deterministic_modulo_timing():
    a = sweep_trace_binomial(max_order=64, seed=DEFAULT_SEED).to_json()
    b = sweep_trace_binomial(max_order=64, seed=DEFAULT_SEED).to_json()
    a.pop("elapsed_seconds")
    b.pop("elapsed_seconds")
    assert a == b


def test_seed_changes_random_draws_but_not_cleanliness():
    rep = sweep_norm_lift(max_order=64, random_h=5, seed=1)
    assert rep.clean
    other = sweep_norm_lift(max_order=64, random_h=5, seed=2)
    assert other.clean
    # same exhaustive portion, possibly different random tails; case counts
    # stay equal because the draw count per pair is fixed
    assert rep.cases == other.cases
