"""Unit tests for the closed-form bound catalog."""

import math

import numpy as np
import pytest

import primespan.bounds as bounds
from primespan import (RULES, CeilingAmbiguityError, IntervalRule, LogBase,
                       Margin, RuleName, ThresholdError, f_of_k, f_of_k_array,
                       firoozbakht_rhs, gap_lower_heuristic, gap_upper_bound,
                       lemma1_margin, lemma2_margin, lemma3_margin,
                       mps_upper_bound, nth_prime_bounds, rule_g, s_index)

from oracles import naive_sieve, oracle_f, primes_from_flags


def test_f_of_k_fixtures():
    for k, v in [(1, 2), (2, 2), (3, 3), (4, 3), (5, 3), (6, 3), (7, 4),
                 (10, 4), (16, 5), (37, 5), (38, 6), (240, 8), (10**6, 17)]:
        assert f_of_k(k) == v, k
    with pytest.raises(ValueError):
        f_of_k(0)


def test_f_of_k_matches_high_precision_oracle():
    for k in range(1, 2001):
        assert f_of_k(k) == oracle_f(k), k
    for k in (10**4, 10**5, 10**6, 10**9):
        assert f_of_k(k) == oracle_f(k), k


def test_f_of_k_nondecreasing():
    vals = [f_of_k(k) for k in range(1, 2001)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_f_of_k_array_matches_scalar():
    ks = np.arange(1, 5001, dtype=np.int64)
    got = f_of_k_array(ks)
    assert got.tolist() == [f_of_k(int(k)) for k in ks]
    with pytest.raises(ValueError):
        f_of_k_array(np.array([0]))


def test_f_of_k_ambiguity_recheck(monkeypatch):
    # widen the guard so every k looks ambiguous; recheck must still decide
    monkeypatch.setattr(bounds, "CEIL_GUARD", 1.0)
    for k in (1, 2, 7, 240):
        assert f_of_k(k) == oracle_f(k)
    with pytest.raises(CeilingAmbiguityError):
        f_of_k(7, recheck=False)
    vals = f_of_k_array(np.arange(1, 300, dtype=np.int64))
    assert vals.tolist() == [oracle_f(k) for k in range(1, 300)]


def test_s_index():
    assert s_index(2) == 1
    assert s_index(240) == 7
    with pytest.raises(ValueError):
        s_index(1)


def test_mps_upper_bound():
    assert mps_upper_bound(10, 3) == pytest.approx(3 * 10 / 9 + 9)
    assert mps_upper_bound(1, 2) == pytest.approx(2 / 9 + 4)
    with pytest.raises(ValueError):
        mps_upper_bound(0, 2)
    with pytest.raises(ValueError):
        mps_upper_bound(10, 1)


def test_nth_prime_bounds_bracket():
    primes = primes_from_flags(naive_sieve(30000))
    for n in range(6, 3001):
        lo, hi = nth_prime_bounds(n)
        assert lo < primes[n - 1] < hi, n
    with pytest.raises(ValueError):
        nth_prime_bounds(5)


def test_nth_prime_bounds_values():
    lo, hi = nth_prime_bounds(10)
    assert hi - lo == pytest.approx(10.0, rel=1e-12)
    assert lo == pytest.approx(10 * (math.log(10 * math.log(10)) - 1), rel=1e-12)


def test_firoozbakht_rhs():
    assert firoozbakht_rhs(11, 5) == pytest.approx(17.769337, abs=1e-5)
    assert firoozbakht_rhs(2, 1) == pytest.approx(4.0, rel=1e-12)
    with pytest.raises(ValueError):
        firoozbakht_rhs(1, 1)
    with pytest.raises(ValueError):
        firoozbakht_rhs(11, 0)


def test_gap_upper_bound_values():
    assert gap_upper_bound(11) == pytest.approx(3.352007, abs=1e-5)
    assert gap_upper_bound(13) == pytest.approx(4.014017, abs=1e-5)
    assert gap_upper_bound(101) == pytest.approx(16.684217, abs=1e-5)
    with pytest.raises(ValueError):
        gap_upper_bound(7)


def test_gap_lower_heuristic():
    want = (2.0 - 1.0) / math.exp(0.5772156649015329) * math.log(11) ** 2
    assert gap_lower_heuristic(11, 1.0) == pytest.approx(want, rel=1e-9)
    assert gap_lower_heuristic(11, 2.0) == 0.0
    with pytest.raises(ValueError):
        gap_lower_heuristic(11, 0.0)
    with pytest.raises(ValueError):
        gap_lower_heuristic(11, 2.5)
    with pytest.raises(ValueError):
        gap_lower_heuristic(1, 1.0)


def test_margin_of():
    m = Margin.of(3.0, 5.0, LogBase.NAT)
    assert m.slack == 2.0 and m.holds and m.base is LogBase.NAT
    m = Margin.of(5.0, 5.0, LogBase.TEN)
    assert not m.holds and m.slack == 0.0


def test_lemma1_margin():
    m = lemma1_margin(5)
    assert m.rhs == 13.0
    assert m.lhs == pytest.approx(3.352007, abs=1e-5)
    assert m.holds and m.base is LogBase.NAT
    with pytest.raises(ValueError):
        lemma1_margin(4)


def test_lemma1_equals_lemma2_at_shared_index():
    # k=10 in the first family and (k=7, r=0) in the second both hit m=11
    a = lemma1_margin(10)
    b = lemma2_margin(7, 0)
    assert a.lhs == b.lhs and a.rhs == b.rhs == 24.0


def test_lemma2_margin():
    m = lemma2_margin(5, -2)
    assert m.rhs == 15.0
    assert m.lhs == pytest.approx(4.014017, abs=1e-5)
    # the second family is falsified at some points; margins stay honest
    m = lemma2_margin(5, 11)
    assert m.rhs == 13.0 and not m.holds
    assert m.lhs == pytest.approx(13.474745, abs=1e-5)
    with pytest.raises(ValueError):
        lemma2_margin(4, 0)
    with pytest.raises(ValueError):
        lemma2_margin(5, -3)


def test_lemma2_base10_variant():
    m = lemma2_margin(5, 11, LogBase.TEN)
    assert m.base is LogBase.TEN
    lg = math.log10(67)
    assert m.lhs == pytest.approx(abs(lg * lg - lg), rel=1e-12)


def test_lemma3_margin():
    m = lemma3_margin(5)
    assert m.base is LogBase.TEN
    assert m.lhs == 5.0
    assert m.slack == pytest.approx(0.298259, abs=1e-5)
    assert m.holds
    with pytest.raises(ValueError):
        lemma3_margin(4)


def test_lemma_margins_accept_precomputed_primes():
    primes = primes_from_flags(naive_sieve(1000))
    assert lemma1_margin(5, primes=primes) == lemma1_margin(5)
    assert lemma2_margin(7, 0, primes=primes) == lemma2_margin(7, 0)


def test_rules_registry():
    assert set(RULES) == set(RuleName)
    assert RULES[RuleName.BERTRAND].n_min == 1
    assert RULES[RuleName.NAGURA].n_min == 25
    assert RULES[RuleName.SCHOENFELD].n_min == 2010760
    assert RULES[RuleName.DUSART1998].n_min == 3275
    assert RULES[RuleName.DUSART2010].n_min == 396738
    assert RULES[RuleName.DUSART2016].n_min == 468991632
    assert RULES[RuleName.PAPERGAP].n_min == 2


def test_rule_g_values():
    assert rule_g(RULES[RuleName.BERTRAND], 240) == 480.0
    assert rule_g(RULES[RuleName.NAGURA], 240) == pytest.approx(288.0)
    assert rule_g(RULES[RuleName.PAPERGAP], 240) == pytest.approx(270.0)
    n = 2010760
    assert rule_g(RULES[RuleName.SCHOENFELD], n) == pytest.approx(n * (1 + 1 / 16597))
    n = 3275
    assert rule_g(RULES[RuleName.DUSART1998], n) == pytest.approx(
        n * (1 + 1 / (2 * math.log(n) ** 2)))
    n = 396738
    assert rule_g(RULES[RuleName.DUSART2010], n) == pytest.approx(
        n * (1 + 1 / (25 * math.log(n) ** 2)))
    n = 468991632
    assert rule_g(RULES[RuleName.DUSART2016], n) == pytest.approx(
        n * (1 + 1 / (5000 * math.log(n) ** 2)))


def test_rule_g_threshold():
    for name, rule in RULES.items():
        if rule.n_min > 1:
            with pytest.raises(ThresholdError):
                rule_g(rule, rule.n_min - 1)
        assert rule_g(rule, rule.n_min) > rule.n_min


def test_rule_ordering_from_38():
    # papergap < nagura < bertrand strictly for n >= 38; tie at n = 37
    pg, na, be = (RULES[RuleName.PAPERGAP], RULES[RuleName.NAGURA],
                  RULES[RuleName.BERTRAND])
    assert rule_g(pg, 37) == pytest.approx(rule_g(na, 37))
    for n in range(38, 2001):
        assert rule_g(pg, n) < rule_g(na, n) < rule_g(be, n), n


def test_interval_rule_frozen():
    rule = RULES[RuleName.BERTRAND]
    assert isinstance(rule, IntervalRule)
    with pytest.raises(AttributeError):
        rule.n_min = 5
