"""Closed-form evaluators: the threshold function f, prime and gap bounds,
lemma margins, and the catalog of prime-interval rules.

All functions are pure apart from read-only nth-prime lookups, so they are
safe for unrestricted parallel use.  Inequality margins can be evaluated
under either natural or base-10 logarithms; every Margin records the base
that produced it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import mpmath
import numpy as np

from .errors import CeilingAmbiguityError, ThresholdError
from .sieve import nth_prime

# exp(gamma) for the heuristic gap coefficient (gamma itself is 0.5772...)
EXP_EULER_GAMMA = 1.78107241799
CEIL_GUARD = 1e-9
_MP_PREC = 113


class LogBase(str, Enum):
    """Logarithm base for inequality margins."""

    NAT = "ln"
    TEN = "log10"

    def fn(self):
        return math.log if self is LogBase.NAT else math.log10


@dataclass(frozen=True)
class Margin:
    """Two sides of an inequality lhs < rhs, with slack = rhs - lhs."""

    lhs: float
    rhs: float
    slack: float
    holds: bool
    base: LogBase

    @classmethod
    def of(cls, lhs: float, rhs: float, base: LogBase) -> "Margin":
        lhs = float(lhs)
        rhs = float(rhs)
        return cls(lhs=lhs, rhs=rhs, slack=rhs - lhs, holds=lhs < rhs, base=base)


def f_of_k(k: int, *, recheck: bool = True) -> int:
    """ceil(1.1 * ln(2.5k)), guarded against near-integer double rounding.

    When 1.1*ln(2.5k) lands within 1e-9 of an integer the value is
    recomputed at 113-bit precision before taking the ceiling; with
    recheck disabled that case raises CeilingAmbiguityError instead.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    x = 1.1 * math.log(2.5 * k)
    if abs(x - round(x)) < CEIL_GUARD:
        if not recheck:
            raise CeilingAmbiguityError(
                f"1.1*ln(2.5*{k}) is within {CEIL_GUARD} of an integer "
                "and the extended-precision recheck is disabled")
        with mpmath.workprec(_MP_PREC):
            xm = mpmath.mpf(11) / 10 * mpmath.log(mpmath.mpf(5 * k) / 2)
            if abs(xm - mpmath.nint(xm)) < mpmath.mpf("1e-25"):
                raise CeilingAmbiguityError(
                    f"1.1*ln(2.5*{k}) is ambiguous even at {_MP_PREC}-bit precision")
            return int(mpmath.ceil(xm))
    return math.ceil(x)


def f_of_k_array(k) -> np.ndarray:
    """Vectorized f_of_k over an int array; near-integer cases take the scalar path."""
    k = np.asarray(k, dtype=np.int64)
    if k.size and int(k.min()) < 1:
        raise ValueError("k must be >= 1")
    x = 1.1 * np.log(2.5 * k)
    out = np.ceil(x).astype(np.int64)
    near = np.abs(x - np.round(x)) < CEIL_GUARD
    if near.any():
        for i in np.flatnonzero(near).tolist():
            out[i] = f_of_k(int(k[i]))
    return out


def s_index(k: int) -> int:
    """Index i of the set S_i = {k : f(k) = i + 1} containing k."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    return f_of_k(k) - 1


def mps_upper_bound(n: int, k: int) -> float:
    """Upper bound kn/9 + k^2 on the prime count between n and kn."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    return k * n / 9 + k * k


def nth_prime_bounds(n: int) -> tuple[float, float]:
    """Bracket n*ln(n*ln(n)/e) < p_n < n*ln(n*ln(n)), valid from n = 6."""
    if n < 6:
        raise ValueError(f"n must be >= 6, got {n}")
    u = math.log(n * math.log(n))
    return n * (u - 1.0), n * u


def firoozbakht_rhs(p_n: int, n: int) -> float:
    """p_n^(1 + 1/n), the strict upper bound on p_{n+1}."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if p_n < 2:
        raise ValueError(f"p_n must be >= 2, got {p_n}")
    return math.exp((1.0 + 1.0 / n) * math.log(p_n))


def gap_upper_bound(p_n: int) -> float:
    """(ln p_n)^2 - ln p_n, the gap bound for indices n > 4 (p_n >= 11)."""
    if p_n < 11:
        raise ValueError(f"p_n must be >= 11 (index n > 4), got {p_n}")
    ln = math.log(p_n)
    return ln * ln - ln


def gap_lower_heuristic(p_n: int, eps: float) -> float:
    """Heuristic lower bound (2 - eps)/e^gamma * (ln p_n)^2 on maximal gaps."""
    if not 0 < eps <= 2:
        raise ValueError(f"eps must lie in (0, 2], got {eps}")
    if p_n < 2:
        raise ValueError(f"p_n must be >= 2, got {p_n}")
    ln = math.log(p_n)
    return (2.0 - eps) / EXP_EULER_GAMMA * ln * ln


class RuleName(str, Enum):
    BERTRAND = "bertrand"
    NAGURA = "nagura"
    SCHOENFELD = "schoenfeld"
    DUSART1998 = "dusart1998"
    DUSART2010 = "dusart2010"
    DUSART2016 = "dusart2016"
    PAPERGAP = "papergap"


@dataclass(frozen=True)
class IntervalRule:
    """Named rule guaranteeing a prime in (n, g(n)) for all n >= n_min."""

    name: RuleName
    n_min: int
    description: str


RULES: dict[RuleName, IntervalRule] = {
    RuleName.BERTRAND: IntervalRule(RuleName.BERTRAND, 1, "g(n) = 2n"),
    RuleName.NAGURA: IntervalRule(RuleName.NAGURA, 25, "g(n) = 6n/5"),
    RuleName.SCHOENFELD: IntervalRule(RuleName.SCHOENFELD, 2010760,
                                      "g(n) = n(1 + 1/16597)"),
    RuleName.DUSART1998: IntervalRule(RuleName.DUSART1998, 3275,
                                      "g(n) = n(1 + 1/(2 ln^2 n))"),
    RuleName.DUSART2010: IntervalRule(RuleName.DUSART2010, 396738,
                                      "g(n) = n(1 + 1/(25 ln^2 n))"),
    RuleName.DUSART2016: IntervalRule(RuleName.DUSART2016, 468991632,
                                      "g(n) = n(1 + 1/(5000 ln^2 n))"),
    RuleName.PAPERGAP: IntervalRule(RuleName.PAPERGAP, 2,
                                    "g(n) = n + n/f(n), stated for n >= 2 "
                                    "but falsified at some small n"),
}


def rule_g(rule: IntervalRule, n: int) -> float:
    """Right endpoint g(n) of the rule's prime interval."""
    if n < rule.n_min:
        raise ThresholdError(
            f"rule {rule.name.value} requires n >= {rule.n_min}, got {n}")
    name = rule.name
    if name is RuleName.BERTRAND:
        return float(2 * n)
    if name is RuleName.NAGURA:
        return 6 * n / 5
    if name is RuleName.SCHOENFELD:
        return n * (1 + 1 / 16597)
    if name is RuleName.PAPERGAP:
        return n + n / f_of_k(n)
    ln2 = math.log(n) ** 2
    if name is RuleName.DUSART1998:
        return n * (1 + 1 / (2 * ln2))
    if name is RuleName.DUSART2010:
        return n * (1 + 1 / (25 * ln2))
    if name is RuleName.DUSART2016:
        return n * (1 + 1 / (5000 * ln2))
    raise ValueError(f"unknown rule {rule.name!r}")


def _nth(m: int, primes) -> int:
    if primes is None:
        return nth_prime(m)
    return int(primes[m - 1])


def lemma1_margin(k: int, base: LogBase = LogBase.NAT, *, primes=None) -> Margin:
    """|L(p_m)^2 - L(p_m)| < (k+1)(f(k)+1) - p_m with m = f(k) + k - 3, for k >= 5.

    primes, when given, is an indexable of the prime sequence (primes[i-1]
    is the i-th prime) used instead of per-call nth_prime lookups.
    """
    if k < 5:
        raise ValueError(f"k must be >= 5, got {k}")
    fk = f_of_k(k)
    p = _nth(fk + k - 3, primes)
    lv = base.fn()(p)
    return Margin.of(abs(lv * lv - lv), float((k + 1) * (fk + 1) - p), base)


def lemma2_margin(k: int, r: int, base: LogBase = LogBase.NAT, *, primes=None) -> Margin:
    """|L(p_m)^2 - L(p_m)| < (k+4+r)(f(k)+1) - p_m with m = f(k) + k + r, r >= -2."""
    if k < 5:
        raise ValueError(f"k must be >= 5, got {k}")
    if r < -2:
        raise ValueError(f"r must be >= -2, got {r}")
    fk = f_of_k(k)
    p = _nth(fk + k + r, primes)
    lv = base.fn()(p)
    return Margin.of(abs(lv * lv - lv), float((k + 4 + r) * (fk + 1) - p), base)


def lemma3_margin(n: int, base: LogBase = LogBase.TEN) -> Margin:
    """n < (2n/9 + 4) * L(n*ln(n*ln n))^2 for n >= 5, base-10 log by default."""
    if n < 5:
        raise ValueError(f"n must be >= 5, got {n}")
    upper = n * math.log(n * math.log(n))
    lv = base.fn()(upper)
    return Margin.of(float(n), (2 * n / 9 + 4) * lv * lv, base)


__all__ = [
    "LogBase", "Margin", "RuleName", "IntervalRule", "RULES",
    "EXP_EULER_GAMMA", "CEIL_GUARD",
    "f_of_k", "f_of_k_array", "s_index", "mps_upper_bound", "nth_prime_bounds",
    "firoozbakht_rhs", "gap_upper_bound", "gap_lower_heuristic", "rule_g",
    "lemma1_margin", "lemma2_margin", "lemma3_margin",
]
