"""Exhaustive range verification of every cataloged claim.

Each checker scans its full parameter range, collects violations as data
(never as errors), and reports the minimum slack with the parameters that
achieve it.  Claims that overstate their range are falsified honestly:
violations found there are first-class results.

Parameter spaces are split into fixed contiguous chunks whose boundaries
depend only on the range, never on the worker count, and chunk results
are merged in chunk order, so every report is byte-identical across
reruns, worker counts, and segment sizes.
"""

from __future__ import annotations

import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from time import perf_counter

import mpmath
import numpy as np

from .bounds import (LogBase, IntervalRule, RuleName, RULES, f_of_k,
                     f_of_k_array, rule_g)
from .errors import ThresholdError
from .sieve import DEFAULT_SEGMENT_SIZE, iter_prime_blocks, sieve_range

VIOLATION_CAP = 1000
_CHUNK_POINTS = 1 << 16
_LN4 = math.log(4.0)


class ClaimId(str, Enum):
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    GAP_INTERVAL = "GapInterval"
    FIROOZBAKHT = "Firoozbakht"
    GAP_UPPER = "GapUpper"
    PROP4 = "Prop4"
    PROP6 = "Prop6"
    NTH_PRIME_BOUNDS = "NthPrimeBounds"
    L1 = "L1"
    L2 = "L2"
    L3 = "L3"


@dataclass(frozen=True)
class Violation:
    """One falsified parameter point: what was observed vs what was required."""

    param: str
    observed: float | int
    required: float | int | str


@dataclass(frozen=True)
class ClaimReport:
    """Outcome of one exhaustive scan.

    violations holds at most the configured cap; violations_total is the
    full count.  min_slack is the distance to violation at the tightest
    scanned point: rhs - lhs for real inequalities, and
    observed - required + 1 for integer counting claims.  elapsed is wall
    time and is excluded from canonical serialized output.
    """

    claim_id: ClaimId
    range: str
    violations: tuple[Violation, ...]
    violations_total: int
    min_slack: float | int | None
    min_slack_at: str | None
    scanned: int
    elapsed: float
    holds: bool
    notes: tuple[str, ...] = ()


def _check_boundary(boundary: str) -> None:
    if boundary not in ("open", "closed"):
        raise ValueError(f"boundary must be 'open' or 'closed', got {boundary!r}")


def _chunk_ranges(lo: int, hi: int, points_per_unit: int = 1) -> list[tuple[int, int]]:
    """Contiguous inclusive unit ranges covering [lo, hi], >= 2^16 points each."""
    if lo > hi:
        return []
    units = max(1, _CHUNK_POINTS // max(points_per_unit, 1))
    out = []
    a = lo
    while a <= hi:
        b = min(a + units - 1, hi)
        out.append((a, b))
        a = b + 1
    return out


class _Progress:
    """Chunk-level progress and ETA on stderr; stdout stays machine-parseable."""

    def __init__(self, label: str, total: int, enabled: bool | None):
        self.label = label
        self.total = max(total, 1)
        self.enabled = sys.stderr.isatty() if enabled is None else enabled
        self.t0 = perf_counter()
        self.last = 0.0

    def update(self, done: int) -> None:
        if not self.enabled:
            return
        now = perf_counter()
        if done < self.total and now - self.last < 0.2:
            return
        self.last = now
        elapsed = now - self.t0
        eta = elapsed * (self.total - done) / done if done else 0.0
        sys.stderr.write(f"\r{self.label}: chunk {done}/{self.total} "
                         f"({100 * done // self.total}%) eta {eta:.0f}s")
        if done >= self.total:
            sys.stderr.write("\n")
        sys.stderr.flush()


def _run_ordered(fn, args_list, workers: int, progress: _Progress | None = None):
    """Apply fn over args_list with results in argument order for any worker count."""
    results = []
    if workers <= 1 or len(args_list) <= 1:
        for i, a in enumerate(args_list):
            results.append(fn(a))
            if progress:
                progress.update(i + 1)
        return results
    with ThreadPoolExecutor(max_workers=workers) as ex:
        for i, res in enumerate(ex.map(fn, args_list)):
            results.append(res)
            if progress:
                progress.update(i + 1)
    return results


def _merge(results, cap: int):
    """Combine per-chunk (violations, best, scanned); first chunk wins slack ties."""
    violations: list[Violation] = []
    total = 0
    best = None
    scanned = 0
    for v, b, s in results:
        total += len(v)
        take = min(len(v), cap - len(violations))
        if take > 0:
            violations.extend(v[:take])
        if b is not None and (best is None or b[0] < best[0]):
            best = b
        scanned += s
    return tuple(violations), total, best, scanned


def _report(claim_id, range_desc, merged, elapsed, notes=()):
    violations, total, best, scanned = merged
    return ClaimReport(
        claim_id=claim_id,
        range=range_desc,
        violations=violations,
        violations_total=total,
        min_slack=None if best is None else best[0],
        min_slack_at=None if best is None else best[1],
        scanned=scanned,
        elapsed=elapsed,
        holds=total == 0,
        notes=tuple(notes),
    )


def verify_theorem1(k_max: int, n_max: int, boundary: str = "open", *,
                    workers: int = 1, segment_size: int = DEFAULT_SEGMENT_SIZE,
                    cap: int = VIOLATION_CAP, allow_large: bool = False,
                    progress: bool | None = None) -> ClaimReport:
    """At least k - 1 primes between n and kn for every n >= f(k)."""
    _check_boundary(boundary)
    if k_max < 2:
        raise ValueError(f"k_max must be >= 2, got {k_max}")
    if n_max < f_of_k(k_max):
        raise ValueError(f"n_max must be >= f(k_max) = {f_of_k(k_max)}, got {n_max}")
    t0 = perf_counter()
    table = sieve_range(0, k_max * n_max, segment_size, workers=workers,
                        allow_large=allow_large)
    primes = table.primes()
    fks = f_of_k_array(np.arange(2, k_max + 1, dtype=np.int64))
    lo_side, hi_side = ("right", "left") if boundary == "open" else ("left", "right")

    def work(kr):
        ka, kb = kr
        v = []
        best = None
        scanned = 0
        for k in range(ka, kb + 1):
            fk = int(fks[k - 2])
            ns = np.arange(fk, n_max + 1, dtype=np.int64)
            cnt = (np.searchsorted(primes, k * ns, side=hi_side)
                   - np.searchsorted(primes, ns, side=lo_side))
            req = k - 1
            slack = cnt - req + 1
            i = int(np.argmin(slack))
            s = int(slack[i])
            if best is None or s < best[0]:
                best = (s, f"k={k};n={int(ns[i])}")
            for j in np.flatnonzero(cnt < req).tolist():
                v.append(Violation(f"k={k};n={int(ns[j])}", int(cnt[j]), req))
            scanned += int(ns.size)
        return v, best, scanned

    chunks = _chunk_ranges(2, k_max, points_per_unit=n_max)
    prog = _Progress("T1", len(chunks), progress)
    merged = _merge(_run_ordered(work, chunks, workers, prog), cap)
    notes = (f"boundary={boundary}-{boundary}"
             + ("; the strictest convention, so a pass implies every laxer one"
                if boundary == "open" else ""),)
    return _report(ClaimId.T1, f"2<=k<={k_max}; f(k)<=n<={n_max}; boundary={boundary}",
                   merged, perf_counter() - t0, notes)


def verify_theorem2(k_max: int, n_max: int, *, workers: int = 1,
                    segment_size: int = DEFAULT_SEGMENT_SIZE,
                    cap: int = VIOLATION_CAP, allow_large: bool = False,
                    progress: bool | None = None) -> ClaimReport:
    """At most kn/9 + k^2 primes in [n, kn], checked closed-closed."""
    if k_max < 2:
        raise ValueError(f"k_max must be >= 2, got {k_max}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    t0 = perf_counter()
    table = sieve_range(0, k_max * n_max, segment_size, workers=workers,
                        allow_large=allow_large)
    primes = table.primes()

    def work(kr):
        ka, kb = kr
        v = []
        best = None
        scanned = 0
        for k in range(ka, kb + 1):
            ns = np.arange(1, n_max + 1, dtype=np.int64)
            cnt = (np.searchsorted(primes, k * ns, side="right")
                   - np.searchsorted(primes, ns, side="left"))
            rhs = k * ns / 9.0 + float(k * k)
            slack = rhs - cnt
            i = int(np.argmin(slack))
            s = float(slack[i])
            if best is None or s < best[0]:
                best = (s, f"k={k};n={int(ns[i])}")
            for j in np.flatnonzero(cnt > rhs).tolist():
                v.append(Violation(f"k={k};n={int(ns[j])}", int(cnt[j]), float(rhs[j])))
            scanned += int(ns.size)
        return v, best, scanned

    chunks = _chunk_ranges(2, k_max, points_per_unit=n_max)
    prog = _Progress("T2", len(chunks), progress)
    merged = _merge(_run_ordered(work, chunks, workers, prog), cap)
    notes = ("boundary=closed-closed; the adversarial convention for an upper bound",)
    return _report(ClaimId.T2, f"2<=k<={k_max}; 1<=n<={n_max}; boundary=closed",
                   merged, perf_counter() - t0, notes)


def verify_theorem3(k_max: int, *, workers: int = 1,
                    segment_size: int = DEFAULT_SEGMENT_SIZE,
                    cap: int = VIOLATION_CAP, allow_large: bool = False,
                    progress: bool | None = None) -> ClaimReport:
    """A prime strictly between k*f(k) and k*(f(k)+1) for every k >= 2."""
    if k_max < 2:
        raise ValueError(f"k_max must be >= 2, got {k_max}")
    t0 = perf_counter()
    fks = f_of_k_array(np.arange(2, k_max + 1, dtype=np.int64))
    hi = k_max * (int(fks[-1]) + 1)
    table = sieve_range(0, hi, segment_size, workers=workers, allow_large=allow_large)
    primes = table.primes()

    def work(kr):
        ka, kb = kr
        ks = np.arange(ka, kb + 1, dtype=np.int64)
        f = fks[ka - 2 : kb - 1]
        cnt = (np.searchsorted(primes, ks * (f + 1), side="left")
               - np.searchsorted(primes, ks * f, side="right"))
        i = int(np.argmin(cnt))
        best = (int(cnt[i]), f"k={int(ks[i])}")
        v = [Violation(f"k={int(ks[j])}", int(cnt[j]), 1)
             for j in np.flatnonzero(cnt < 1).tolist()]
        return v, best, int(ks.size)

    chunks = _chunk_ranges(2, k_max)
    prog = _Progress("T3", len(chunks), progress)
    merged = _merge(_run_ordered(work, chunks, workers, prog), cap)
    return _report(ClaimId.T3, f"2<=k<={k_max}; open interval k*f(k) .. k*(f(k)+1)",
                   merged, perf_counter() - t0)


def _gap_interval_counts(primes: np.ndarray, ns: np.ndarray, boundary: str) -> np.ndarray:
    """Primes in (n, n + n/f(n)) per n; p < n + n/f iff f*p <= n(f+1) - 1, exactly."""
    f = f_of_k_array(ns)
    if boundary == "open":
        hi_int = (ns * (f + 1) - 1) // f
        return (np.searchsorted(primes, hi_int, side="right")
                - np.searchsorted(primes, ns, side="right"))
    hi_int = (ns * (f + 1)) // f
    return (np.searchsorted(primes, hi_int, side="right")
            - np.searchsorted(primes, ns - 1, side="right"))


def verify_gap_interval(n_max: int, boundary: str = "open", *, workers: int = 1,
                        segment_size: int = DEFAULT_SEGMENT_SIZE,
                        cap: int = VIOLATION_CAP, allow_large: bool = False,
                        progress: bool | None = None) -> ClaimReport:
    """A prime in (n, n + n/f(n)) for every n >= 2, as stated.

    The blanket claim is expected to fail at some small n; those
    violations are honest findings, not errors.  The report also checks
    the lattice points n = k*f(k), where no violation occurs.
    """
    _check_boundary(boundary)
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    t0 = perf_counter()
    # g(n) <= 1.5n since f >= 2, so primes to 1.5*n_max + 2 suffice
    table = sieve_range(0, n_max + n_max // 2 + 2, segment_size, workers=workers,
                        allow_large=allow_large)
    primes = table.primes()

    def work(nr):
        a, b = nr
        ns = np.arange(a, b + 1, dtype=np.int64)
        cnt = _gap_interval_counts(primes, ns, boundary)
        i = int(np.argmin(cnt))
        best = (int(cnt[i]), f"n={int(ns[i])}")
        v = [Violation(f"n={int(ns[j])}", int(cnt[j]), 1)
             for j in np.flatnonzero(cnt < 1).tolist()]
        return v, best, int(ns.size)

    chunks = _chunk_ranges(2, n_max)
    prog = _Progress("GapInterval", len(chunks), progress)
    merged = _merge(_run_ordered(work, chunks, workers, prog), cap)

    # lattice points n = k*f(k) <= n_max (k >= 2); f >= 2 bounds k by n_max/2
    lattice_total = 0
    lattice_bad = 0
    if n_max >= 4:
        ks = np.arange(2, n_max // 2 + 1, dtype=np.int64)
        lat = ks * f_of_k_array(ks)
        lat = np.unique(lat[lat <= n_max])
        lattice_total = int(lat.size)
        if lattice_total:
            lattice_bad = int(np.count_nonzero(
                _gap_interval_counts(primes, lat, boundary) < 1))
    notes = (
        "the blanket claim is expected to fail at small n; the violations "
        "listed are genuine findings",
        f"lattice cross-check: {lattice_total} points n=k*f(k) in range, "
        f"{lattice_bad} violations among them",
        f"boundary={boundary}-{boundary}",
    )
    return _report(ClaimId.GAP_INTERVAL,
                   f"2<=n<={n_max}; interval n .. n + n/f(n); boundary={boundary}",
                   merged, perf_counter() - t0, notes)


def _firoozbakht_exact_slack(n: int, p: int, q: int) -> float:
    """(1 + 1/n) ln p - ln q at 200-bit precision, for near-tie rechecks."""
    with mpmath.workprec(200):
        return float((1 + mpmath.mpf(1) / n) * mpmath.log(p) - mpmath.log(q))


def verify_firoozbakht(limit: int, *, workers: int = 1,
                       segment_size: int = DEFAULT_SEGMENT_SIZE,
                       cap: int = VIOLATION_CAP, allow_large: bool = False,
                       progress: bool | None = None) -> ClaimReport:
    """p_{n+1} < p_n^(1 + 1/n) for every pair with p_{n+1} <= limit.

    Compared in log space; slacks within 1e-12 relative are recomputed at
    200-bit precision before being judged.
    """
    if limit < 3:
        raise ValueError(f"limit must be >= 3, got {limit}")
    t0 = perf_counter()
    violations: list[Violation] = []
    total = 0
    best = None
    scanned = 0
    rechecked = 0
    carry_p = None
    carry_log = 0.0
    idx = 0
    for block in iter_prime_blocks(0, limit, segment_size=segment_size,
                                   workers=workers, allow_large=allow_large):
        if block.size == 0:
            continue
        logs = np.log(block.astype(np.float64))
        if carry_p is None:
            pv, lg, i0 = block, logs, 1
        else:
            pv = np.concatenate((np.array([carry_p], dtype=np.int64), block))
            lg = np.concatenate((np.array([carry_log]), logs))
            i0 = idx
        if pv.size >= 2:
            lp, lq = lg[:-1], lg[1:]
            nn = np.arange(i0, i0 + pv.size - 1, dtype=np.int64)
            rhs = (1.0 + 1.0 / nn.astype(np.float64)) * lp
            slack = rhs - lq
            i = int(np.argmin(slack))
            s = float(slack[i])
            if best is None or s < best[0]:
                best = (s, f"n={int(nn[i])};p_n={int(pv[i])}")
            for j in np.flatnonzero(slack <= 1e-12 * np.abs(rhs)).tolist():
                n_j, p_j, q_j = int(nn[j]), int(pv[j]), int(pv[j + 1])
                rechecked += 1
                if _firoozbakht_exact_slack(n_j, p_j, q_j) <= 0:
                    total += 1
                    if len(violations) < cap:
                        violations.append(Violation(
                            f"n={n_j};p_n={p_j}", q_j,
                            math.exp((1.0 + 1.0 / n_j) * math.log(p_j))))
            scanned += int(pv.size) - 1
        idx = i0 + int(pv.size) - 1
        carry_p = int(block[-1])
        carry_log = float(logs[-1])
    notes = (f"log-space comparison with 1e-12 relative guard; "
             f"{rechecked} near-ties rechecked at 200-bit precision",)
    merged = (tuple(violations), total, best, scanned)
    return _report(ClaimId.FIROOZBAKHT, f"pairs with p_next<={limit}",
                   merged, perf_counter() - t0, notes)


def verify_gap_upper(limit: int, *, workers: int = 1,
                     segment_size: int = DEFAULT_SEGMENT_SIZE,
                     cap: int = VIOLATION_CAP, allow_large: bool = False,
                     progress: bool | None = None) -> ClaimReport:
    """g_n < (ln p_n)^2 - ln p_n for every n > 4 with p_next <= limit."""
    if limit < 13:
        raise ValueError(f"limit must be >= 13, got {limit}")
    t0 = perf_counter()
    violations: list[Violation] = []
    total = 0
    best = None
    scanned = 0
    carry_p = None
    carry_log = 0.0
    idx = 0
    for block in iter_prime_blocks(0, limit, segment_size=segment_size,
                                   workers=workers, allow_large=allow_large):
        if block.size == 0:
            continue
        logs = np.log(block.astype(np.float64))
        if carry_p is None:
            pv, lg, i0 = block, logs, 1
        else:
            pv = np.concatenate((np.array([carry_p], dtype=np.int64), block))
            lg = np.concatenate((np.array([carry_log]), logs))
            i0 = idx
        if pv.size >= 2:
            nn = np.arange(i0, i0 + pv.size - 1, dtype=np.int64)
            keep = nn > 4
            if keep.any():
                pk = pv[:-1][keep]
                lp = lg[:-1][keep]
                g = (pv[1:][keep] - pk).astype(np.float64)
                bound = lp * lp - lp
                slack = bound - g
                nk = nn[keep]
                i = int(np.argmin(slack))
                s = float(slack[i])
                if best is None or s < best[0]:
                    best = (s, f"n={int(nk[i])};p_n={int(pk[i])};g_n={int(g[i])}")
                for j in np.flatnonzero(slack <= 0).tolist():
                    total += 1
                    if len(violations) < cap:
                        violations.append(Violation(
                            f"n={int(nk[j])};p_n={int(pk[j])}",
                            int(g[j]), float(bound[j])))
                scanned += int(np.count_nonzero(keep))
        idx = i0 + int(pv.size) - 1
        carry_p = int(block[-1])
        carry_log = float(logs[-1])
    merged = (tuple(violations), total, best, scanned)
    return _report(ClaimId.GAP_UPPER,
                   f"indices n>4 with p_next<={limit}; natural log",
                   merged, perf_counter() - t0)


def _primes_for_indices(n_index: int, *, segment_size: int, workers: int,
                        allow_large: bool) -> np.ndarray:
    """The first n_index primes (and any extras below the sizing bound)."""
    if n_index < 6:
        bound = 14
    else:
        # p_n < n(ln n + ln ln n) for n >= 6
        ln = math.log(n_index)
        bound = int(n_index * (ln + math.log(ln))) + 2
    blocks = list(iter_prime_blocks(0, bound, segment_size=segment_size,
                                    workers=workers, allow_large=allow_large))
    primes = np.concatenate(blocks)
    if primes.size < n_index:
        raise RuntimeError(f"prime bound {bound} too small for index {n_index}")
    return primes


def verify_basic_props(limit: int, *, workers: int = 1,
                       segment_size: int = DEFAULT_SEGMENT_SIZE,
                       cap: int = VIOLATION_CAP, allow_large: bool = False,
                       progress: bool | None = None) -> tuple[ClaimReport, ...]:
    """Three reports: n+1 <= p_n; theta(n) <= n*ln 4; the p_n bracket from n = 6.

    limit plays both roles: the largest prime index for the first and
    third checks and the largest primorial argument for the second.
    """
    if limit < 6:
        raise ValueError(f"limit must be >= 6, got {limit}")
    primes = _primes_for_indices(limit, segment_size=segment_size,
                                 workers=workers, allow_large=allow_large)
    reports = []

    # n + 1 <= p_n over 1 <= n <= limit; slack p_n - n is the distance to violation
    t0 = perf_counter()
    pn = primes[:limit]
    ns = np.arange(1, limit + 1, dtype=np.int64)
    slack = pn - ns
    i = int(np.argmin(slack))
    best = (int(slack[i]), f"n={int(ns[i])}")
    bad = np.flatnonzero(pn < ns + 1).tolist()
    v = [Violation(f"n={int(ns[j])}", int(pn[j]), int(ns[j] + 1)) for j in bad[:cap]]
    reports.append(_report(ClaimId.PROP4, f"1<=n<={limit}",
                           (tuple(v), len(bad), best, limit), perf_counter() - t0))

    # theta(n) <= n*ln4 over 2 <= n <= limit; theta only jumps at primes and
    # n*ln4 grows between jumps, so the margin is smallest at the jump points
    t0 = perf_counter()
    q = primes[: int(np.searchsorted(primes, limit, side="right"))]
    qf = q.astype(np.float64)
    qlogs = np.log(qf)
    theta = np.cumsum(qlogs)
    fsum_check = math.fsum(qlogs.tolist())
    if abs(float(theta[-1]) - fsum_check) > 1e-6 * max(1.0, abs(fsum_check)):
        raise RuntimeError("cumulative log-primorial drifted from compensated sum")
    slack = qf * _LN4 - theta
    i = int(np.argmin(slack))
    best = (float(slack[i]), f"n={int(q[i])}")
    bad = np.flatnonzero(slack <= 0).tolist()
    v = [Violation(f"n={int(q[j])}", float(theta[j]), float(qf[j] * _LN4))
         for j in bad[:cap]]
    notes = ("checked at every prime jump point, where the margin over the "
             "whole range is smallest",)
    reports.append(_report(ClaimId.PROP6, f"2<=n<={limit}",
                           (tuple(v), len(bad), best, limit - 1),
                           perf_counter() - t0, notes))

    # n ln(n ln n / e) < p_n < n ln(n ln n) over 6 <= n <= limit
    t0 = perf_counter()
    ns = np.arange(6, limit + 1, dtype=np.int64)
    nf = ns.astype(np.float64)
    u = np.log(nf * np.log(nf))
    lower = nf * (u - 1.0)
    upper = nf * u
    p = primes[5:limit].astype(np.float64)
    slack = np.minimum(p - lower, upper - p)
    i = int(np.argmin(slack))
    best = (float(slack[i]), f"n={int(ns[i])}")
    bad = np.flatnonzero((p <= lower) | (p >= upper)).tolist()
    v = [Violation(f"n={int(ns[j])}", float(p[j]),
                   f"({float(lower[j])!r}; {float(upper[j])!r})")
         for j in bad[:cap]]
    reports.append(_report(ClaimId.NTH_PRIME_BOUNDS, f"6<=n<={limit}",
                           (tuple(v), len(bad), best, limit - 5),
                           perf_counter() - t0))
    return tuple(reports)


def _base_note(tag: str, violations: int, slack, at: str) -> str:
    return f"base={tag}: violations={violations}; min_slack={slack!r}; at={at}"


def _lemma_sweep(claim_id, range_desc, p_float, rhs, default_base, param_fmt,
                 cap, t0):
    """Judge |L(p)^2 - L(p)| < rhs under both log bases; the default decides."""
    per_base = {}
    for tag, lv in (("ln", np.log(p_float)), ("log10", np.log10(p_float))):
        lhs = np.abs(lv * lv - lv)
        slack = rhs - lhs
        i = int(np.argmin(slack))
        bad = np.flatnonzero(lhs >= rhs)
        per_base[tag] = (lhs, float(slack[i]), param_fmt(i), bad)
    tag = default_base.value
    lhs, s_min, s_at, bad = per_base[tag]
    v = [Violation(param_fmt(j), float(lhs[j]), float(rhs[j]))
         for j in bad.tolist()[:cap]]
    notes = tuple(
        _base_note(t, int(per_base[t][3].size), per_base[t][1], per_base[t][2])
        for t in ("ln", "log10"))
    notes += (f"default base={tag} decides holds; both bases recorded",)
    return _report(claim_id, range_desc,
                   (tuple(v), int(bad.size), (s_min, s_at), int(rhs.size)),
                   perf_counter() - t0, notes)


def verify_lemmas(k_max: int, r_max: int, n_max: int, *, workers: int = 1,
                  segment_size: int = DEFAULT_SEGMENT_SIZE,
                  cap: int = VIOLATION_CAP, allow_large: bool = False,
                  progress: bool | None = None) -> tuple[ClaimReport, ...]:
    """Three reports sweeping the margin inequalities over their grids.

    The first two default to natural log, the third to base 10; every
    report records the outcome under both bases in its notes.
    """
    if k_max < 5:
        raise ValueError(f"k_max must be >= 5, got {k_max}")
    if r_max < -2:
        raise ValueError(f"r_max must be >= -2, got {r_max}")
    if n_max < 5:
        raise ValueError(f"n_max must be >= 5, got {n_max}")
    m_max = f_of_k(k_max) + k_max + r_max
    primes = _primes_for_indices(max(m_max, 6), segment_size=segment_size,
                                 workers=workers, allow_large=allow_large)
    reports = []

    # |L(p_m)^2 - L(p_m)| < (k+1)(f(k)+1) - p_m, m = f(k)+k-3, k in [5, k_max]
    t0 = perf_counter()
    ks = np.arange(5, k_max + 1, dtype=np.int64)
    fk = f_of_k_array(ks)
    p1 = primes[fk + ks - 4]
    rhs1 = ((ks + 1) * (fk + 1) - p1).astype(np.float64)
    kl = ks.tolist()
    reports.append(_lemma_sweep(
        ClaimId.L1, f"5<=k<={k_max}", p1.astype(np.float64), rhs1,
        LogBase.NAT, lambda i: f"k={kl[i]}", cap, t0))

    # |L(p_m)^2 - L(p_m)| < (k+4+r)(f(k)+1) - p_m, m = f(k)+k+r, r in [-2, r_max]
    t0 = perf_counter()
    rs = np.arange(-2, r_max + 1, dtype=np.int64)
    kk, ff, rr = ks[:, None], fk[:, None], rs[None, :]
    m = ff + kk + rr
    p2 = primes[(m - 1).ravel()]
    rhs2 = (((kk + 4 + rr) * (ff + 1)).ravel() - p2).astype(np.float64)
    n_r = int(rs.size)
    r0 = int(rs[0])

    def l2_param(i):
        return f"k={kl[i // n_r]};r={r0 + i % n_r}"

    reports.append(_lemma_sweep(
        ClaimId.L2, f"5<=k<={k_max}; -2<=r<={r_max}", p2.astype(np.float64),
        rhs2, LogBase.NAT, l2_param, cap, t0))

    # n < (2n/9 + 4) * L(n*ln(n*ln n))^2, n in [5, n_max], base-10 default
    t0 = perf_counter()

    def l3_work(nr):
        a, b = nr
        ns = np.arange(a, b + 1, dtype=np.int64)
        nf = ns.astype(np.float64)
        upper = nf * np.log(nf * np.log(nf))
        factor = 2.0 * nf / 9.0 + 4.0
        out = {}
        for tag, lv in (("ln", np.log(upper)), ("log10", np.log10(upper))):
            rhs = factor * lv * lv
            slack = rhs - nf
            i = int(np.argmin(slack))
            bad = np.flatnonzero(nf >= rhs)
            viols = [Violation(f"n={int(ns[j])}", float(nf[j]), float(rhs[j]))
                     for j in bad.tolist()]
            out[tag] = (viols, (float(slack[i]), f"n={int(ns[i])}"), int(ns.size))
        return out

    chunks = _chunk_ranges(5, n_max)
    prog = _Progress("L3", len(chunks), progress)
    per_chunk = _run_ordered(l3_work, chunks, workers, prog)
    per_base = {tag: _merge([c[tag] for c in per_chunk], cap)
                for tag in ("ln", "log10")}
    violations, total, best, scanned = per_base["log10"]
    notes = tuple(
        _base_note(tag, per_base[tag][1], per_base[tag][2][0], per_base[tag][2][1])
        for tag in ("ln", "log10"))
    notes += ("default base=log10 decides holds; both bases recorded",)
    reports.append(_report(ClaimId.L3, f"5<=n<={n_max}",
                           (violations, total, best, scanned),
                           perf_counter() - t0, notes))
    return tuple(reports)


@dataclass(frozen=True)
class CompareRow:
    n: int
    values: tuple[float, ...]
    next_prime: int


@dataclass(frozen=True)
class CompareTable:
    rule_names: tuple[str, ...]
    rows: tuple[CompareRow, ...]
    notes: tuple[str, ...] = ()


def compare_rules(n_lo: int, n_hi: int, rules: list[IntervalRule] | None = None, *,
                  segment_size: int = DEFAULT_SEGMENT_SIZE, workers: int = 1,
                  allow_large: bool = False) -> CompareTable:
    """One row per n in [n_lo, n_hi]: g(n) under each rule plus the next prime."""
    if rules is None:
        rules = [RULES[RuleName.BERTRAND], RULES[RuleName.NAGURA],
                 RULES[RuleName.PAPERGAP]]
    if not rules:
        raise ValueError("at least one rule is required")
    if n_lo < 1 or n_lo > n_hi:
        raise ValueError(f"need 1 <= n_lo <= n_hi, got n_lo={n_lo} n_hi={n_hi}")
    for rule in rules:
        if n_lo < rule.n_min:
            raise ThresholdError(
                f"rule {rule.name.value} requires n >= {rule.n_min}, got n_lo={n_lo}")
    # the next prime after any n <= n_hi lies within 2*n_hi by the 2n rule
    table = sieve_range(0, 2 * n_hi + 2, segment_size, workers=workers,
                        allow_large=allow_large)
    primes = table.primes()
    ns = np.arange(n_lo, n_hi + 1, dtype=np.int64)
    nxt = primes[np.searchsorted(primes, ns, side="right")]
    rows = tuple(
        CompareRow(int(n), tuple(rule_g(rule, int(n)) for rule in rules), int(q))
        for n, q in zip(ns.tolist(), nxt.tolist()))
    notes = ()
    if any(r.name is RuleName.PAPERGAP for r in rules) and n_lo <= 240 <= n_hi:
        notes = ("papergap(240) = 270 = 240 + 240/8; the value 280 sometimes "
                 "quoted for n=240 does not follow from n + n/f(n)",)
    return CompareTable(tuple(r.name.value for r in rules), rows, notes)


__all__ = [
    "ClaimId", "Violation", "ClaimReport", "CompareRow", "CompareTable",
    "VIOLATION_CAP",
    "verify_theorem1", "verify_theorem2", "verify_theorem3",
    "verify_gap_interval", "verify_firoozbakht", "verify_gap_upper",
    "verify_basic_props", "verify_lemmas", "compare_rules",
]
