"""Segmented, bit-packed sieve of Eratosthenes and derived prime primitives.

Only odd numbers are stored: bit j of a table whose first odd slot is s
covers the integer 2*(s+j)+1, and the prime 2 is reconstructed from the
range bounds.  Segments are aligned to multiples of 8 odd slots so the
packed bitmap is byte-identical for every segment size and worker count.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import CapacityError

MIN_SEGMENT_SIZE = 1024
DEFAULT_SEGMENT_SIZE = 1 << 21
DEFAULT_RANGE_LIMIT = 10**9
HARD_RANGE_LIMIT = 2**63 - 1
MEM_LIMIT_ENV = "PRIMESPAN_MEM_LIMIT"

# popcount of each byte value, for counting set bits in packed bitmaps
_BYTE_POP = np.unpackbits(np.arange(256, dtype=np.uint8)[:, None], axis=1).sum(axis=1)


def _mem_limit() -> int | None:
    raw = os.environ.get(MEM_LIMIT_ENV)
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{MEM_LIMIT_ENV} must be an integer byte count, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{MEM_LIMIT_ENV} must be positive, got {value}")
    return value


def _check_mem(estimate: int) -> None:
    limit = _mem_limit()
    if limit is not None and estimate > limit:
        raise CapacityError(
            f"sieve needs about {estimate} bytes, above {MEM_LIMIT_ENV}={limit}")


def _validate_range(lo: int, hi: int, allow_large: bool) -> None:
    if lo < 0:
        raise ValueError(f"lo must be >= 0, got {lo}")
    if lo > hi:
        raise ValueError(f"lo must be <= hi, got lo={lo} hi={hi}")
    if hi > HARD_RANGE_LIMIT:
        raise CapacityError(f"ranges above 2**63 - 1 are rejected, got hi={hi}")
    if hi - lo > DEFAULT_RANGE_LIMIT and not allow_large:
        raise CapacityError(
            f"range width {hi - lo} exceeds the default limit {DEFAULT_RANGE_LIMIT}; "
            "set allow_large (CLI flag --allow-large) to override")


def _base_primes(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """Odd primes up to limit and their squares, as int64 arrays."""
    if limit < 3:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    n_slots = (limit + 1) // 2
    flags = np.ones(n_slots, dtype=bool)
    flags[0] = False
    for i in range(1, math.isqrt(limit) // 2 + 1):
        if flags[i]:
            p = 2 * i + 1
            flags[(p * p) // 2 :: p] = False
    odd = (np.flatnonzero(flags).astype(np.int64) << 1) + 1
    return odd, odd * odd


def _segment_flags(i_start: int, i_stop: int,
                   odd_primes: np.ndarray, odd_primes_sq: np.ndarray) -> np.ndarray:
    """Primality flags for global odd slots [i_start, i_stop); slot i is 2*i+1."""
    size = i_stop - i_start
    buf = np.ones(size, dtype=bool)
    if size <= 0:
        return buf
    if i_start == 0:
        buf[0] = False
    lo_num = 2 * i_start + 1
    hi_num = 2 * i_stop - 1
    n_app = int(np.searchsorted(odd_primes_sq, hi_num, side="right"))
    if n_app == 0:
        return buf
    p = odd_primes[:n_app]
    # First odd multiple of p at or above max(p*p, lo_num), as an offset
    # from lo_num.  Offsets stay below the segment span plus 2p, so the
    # arithmetic cannot overflow int64 even at the top of the range.
    off = (p - lo_num % p) % p
    off = np.where(p * p > lo_num, p * p - lo_num, off)
    off = off + np.where(off & 1, p, 0)
    starts = (off >> 1).tolist()
    steps = p.tolist()
    for j, q in zip(starts, steps):
        if j < size:
            buf[j::q] = False
    return buf


def _plan(lo: int, hi: int, segment_size: int) -> tuple[int, int, list[tuple[int, int]]]:
    """First slot, slot count, and byte-aligned chunk slot ranges for [lo, hi]."""
    i0 = (lo | 1) >> 1
    if hi < 1:
        return i0, 0, []
    last_odd = hi if hi & 1 else hi - 1
    if last_odd < (lo | 1):
        return i0, 0, []
    n_slots = (last_odd >> 1) - i0 + 1
    seg_slots = max(8, ((segment_size // 2) // 8) * 8)
    chunks = [(a, min(a + seg_slots, n_slots)) for a in range(0, n_slots, seg_slots)]
    return i0, n_slots, chunks


def _iter_flag_chunks(lo: int, hi: int, *, segment_size: int, workers: int,
                      allow_large: bool, extra_mem: int = 0) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (global slot of buf[0], flags) covering the odd slots of [lo, hi] in order."""
    _validate_range(lo, hi, allow_large)
    if segment_size < MIN_SEGMENT_SIZE:
        raise ValueError(f"segment_size must be >= {MIN_SEGMENT_SIZE}, got {segment_size}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    i0, n_slots, chunks = _plan(lo, hi, segment_size)
    if not chunks:
        return
    root = math.isqrt(hi)
    seg_cap = max(b - a for a, b in chunks)
    _check_mem(3 * ((root + 1) >> 1) + workers * seg_cap + extra_mem)
    bp, bpsq = _base_primes(root)

    def make(chunk: tuple[int, int]) -> tuple[int, np.ndarray]:
        a, b = chunk
        return i0 + a, _segment_flags(i0 + a, i0 + b, bp, bpsq)

    if workers == 1 or len(chunks) <= 1:
        for ch in chunks:
            yield make(ch)
        return
    with ThreadPoolExecutor(max_workers=workers) as ex:
        pending: deque = deque()
        it = iter(chunks)
        for ch in itertools.islice(it, workers + 2):
            pending.append(ex.submit(make, ch))
        while pending:
            out = pending.popleft().result()
            nxt = next(it, None)
            if nxt is not None:
                pending.append(ex.submit(make, nxt))
            yield out


@dataclass(frozen=True)
class PrimeTable:
    """Bit-packed primality flags over [base, hi], odd numbers only."""

    base: int
    hi: int
    bitmap: np.ndarray

    def __post_init__(self) -> None:
        if not 0 <= self.base <= self.hi:
            raise ValueError(f"need 0 <= base <= hi, got base={self.base} hi={self.hi}")

    @property
    def _first_slot(self) -> int:
        return (self.base | 1) >> 1

    def _n_slots(self) -> int:
        if self.hi < 1:
            return 0
        last_odd = self.hi if self.hi & 1 else self.hi - 1
        if last_odd < (self.base | 1):
            return 0
        return (last_odd >> 1) - self._first_slot + 1

    def is_prime(self, x: int) -> bool:
        if x < self.base or x > self.hi:
            raise ValueError(f"{x} is outside the table range [{self.base}, {self.hi}]")
        if x == 2:
            return True
        if x < 2 or x % 2 == 0:
            return False
        j = (x >> 1) - self._first_slot
        return bool((int(self.bitmap[j >> 3]) >> (7 - (j & 7))) & 1)

    def primes(self) -> np.ndarray:
        """All primes in [base, hi] as a sorted int64 array."""
        n = self._n_slots()
        if n:
            bits = np.unpackbits(self.bitmap, count=n)
            odd = (np.flatnonzero(bits).astype(np.int64) + self._first_slot) * 2 + 1
        else:
            odd = np.empty(0, dtype=np.int64)
        if self.base <= 2 <= self.hi:
            return np.concatenate((np.array([2], dtype=np.int64), odd))
        return odd

    def count(self) -> int:
        """Number of primes in [base, hi]."""
        two = 1 if self.base <= 2 <= self.hi else 0
        if self.bitmap.size == 0:
            return two
        return int(_BYTE_POP[self.bitmap].sum()) + two


@dataclass(frozen=True)
class Interval:
    """Integer interval with an explicit open or closed mode per endpoint."""

    lo: int
    hi: int
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self) -> None:
        if self.lo < 0 or self.lo > self.hi:
            raise ValueError(f"need 0 <= lo <= hi, got lo={self.lo} hi={self.hi}")

    def closed_bounds(self) -> tuple[int, int]:
        """Equivalent closed integer endpoints; the interval is empty iff lo' > hi'."""
        return self.lo + (1 if self.lo_open else 0), self.hi - (1 if self.hi_open else 0)

    def is_empty(self) -> bool:
        a, b = self.closed_bounds()
        return a > b


@dataclass(frozen=True)
class GapRecord:
    """Consecutive prime pair: 1-based index n, p_n, p_next, and g_n = p_next - p_n."""

    n: int
    p_n: int
    p_next: int
    g_n: int

    def __post_init__(self) -> None:
        if self.g_n != self.p_next - self.p_n:
            raise ValueError("g_n must equal p_next - p_n")


def sieve_range(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT_SIZE, *,
                workers: int = 1, allow_large: bool = False) -> PrimeTable:
    """Sieve [lo, hi] into a queryable PrimeTable.

    The result is byte-identical for every valid segment_size and worker
    count.  Raises CapacityError when the range is wider than the default
    limit (without allow_large) or the memory budget is exceeded.
    """
    _validate_range(lo, hi, allow_large)
    if segment_size < MIN_SEGMENT_SIZE:
        raise ValueError(f"segment_size must be >= {MIN_SEGMENT_SIZE}, got {segment_size}")
    i0, n_slots, _ = _plan(lo, hi, segment_size)
    nbytes = (n_slots + 7) // 8
    bitmap = np.zeros(nbytes, dtype=np.uint8)
    for slot_start, buf in _iter_flag_chunks(lo, hi, segment_size=segment_size,
                                             workers=workers, allow_large=allow_large,
                                             extra_mem=nbytes):
        a = slot_start - i0
        packed = np.packbits(buf)
        bitmap[a >> 3 : (a >> 3) + packed.size] = packed
    return PrimeTable(base=int(lo), hi=int(hi), bitmap=bitmap)


def iter_prime_blocks(lo: int, hi: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE,
                      workers: int = 1, allow_large: bool = False) -> Iterator[np.ndarray]:
    """Stream non-empty sorted int64 prime arrays covering [lo, hi] in order."""
    pending_two = lo <= 2 <= hi
    for slot_start, buf in _iter_flag_chunks(lo, hi, segment_size=segment_size,
                                             workers=workers, allow_large=allow_large):
        vals = (np.flatnonzero(buf).astype(np.int64) + slot_start) * 2 + 1
        if pending_two:
            vals = np.concatenate((np.array([2], dtype=np.int64), vals))
            pending_two = False
        if vals.size:
            yield vals
    if pending_two:
        yield np.array([2], dtype=np.int64)


def prime_count(x: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE,
                workers: int = 1, allow_large: bool = False) -> int:
    """pi(x): the number of primes <= x."""
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    total = 1 if x >= 2 else 0
    for _, buf in _iter_flag_chunks(0, x, segment_size=segment_size,
                                    workers=workers, allow_large=allow_large):
        total += int(np.count_nonzero(buf))
    return total


def nth_prime(n: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE,
              workers: int = 1, allow_large: bool = False) -> int:
    """The n-th prime, 1-based with p_1 = 2."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return 2
    if n < 6:
        bound = 12
    else:
        # p_n < n(ln n + ln ln n) for n >= 6
        ln = math.log(n)
        bound = int(n * (ln + math.log(ln))) + 2
    target = n - 1  # odd primes to skip past
    seen = 0
    for slot_start, buf in _iter_flag_chunks(0, bound, segment_size=segment_size,
                                             workers=workers, allow_large=allow_large):
        c = int(np.count_nonzero(buf))
        if seen + c >= target:
            idx = int(np.flatnonzero(buf)[target - seen - 1])
            return (slot_start + idx) * 2 + 1
        seen += c
    raise RuntimeError(f"prime bound {bound} too small for n={n}")


def count_primes_in(iv: Interval, *, segment_size: int = DEFAULT_SEGMENT_SIZE,
                    workers: int = 1, allow_large: bool = False) -> int:
    """Exact prime count of an interval, honoring its boundary modes."""
    a, b = iv.closed_bounds()
    if a > b:
        return 0
    total = 1 if a <= 2 <= b else 0
    for _, buf in _iter_flag_chunks(a, b, segment_size=segment_size,
                                    workers=workers, allow_large=allow_large):
        total += int(np.count_nonzero(buf))
    return total


def iterate_gaps(limit: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE,
                 workers: int = 1, allow_large: bool = False) -> Iterator[GapRecord]:
    """Stream GapRecords for all consecutive prime pairs with p_next <= limit."""
    if limit < 3:
        raise ValueError(f"limit must be >= 3, got {limit}")
    prev = None
    n = 0
    for block in iter_prime_blocks(0, limit, segment_size=segment_size,
                                   workers=workers, allow_large=allow_large):
        for p in block.tolist():
            if prev is not None:
                n += 1
                yield GapRecord(n, prev, p, p - prev)
            prev = p


def max_gap_up_to(limit: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE,
                  workers: int = 1, allow_large: bool = False) -> GapRecord:
    """The maximal gap among records with p_next <= limit; ties go to the smallest n."""
    if limit < 3:
        raise ValueError(f"limit must be >= 3, got {limit}")
    best = None  # (g, n, p, p_next)
    carry = None
    count_before = 0
    for block in iter_prime_blocks(0, limit, segment_size=segment_size,
                                   workers=workers, allow_large=allow_large):
        if block.size == 0:
            continue
        if carry is None:
            arr = block
            idx0 = 1
        else:
            arr = np.concatenate((np.array([carry], dtype=np.int64), block))
            idx0 = count_before
        d = np.diff(arr)
        if d.size:
            i = int(np.argmax(d))  # first occurrence keeps the smallest n
            g = int(d[i])
            if best is None or g > best[0]:
                best = (g, idx0 + i, int(arr[i]), int(arr[i + 1]))
        count_before += int(block.size)
        carry = int(block[-1])
    if best is None:
        raise RuntimeError(f"no prime pair below {limit}")
    g, n, p, q = best
    return GapRecord(n, p, q, g)


def log_primorial(n: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE,
                  workers: int = 1, allow_large: bool = False) -> float:
    """Sum of ln p over primes p <= n, with compensated summation."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    parts = []
    for block in iter_prime_blocks(0, n, segment_size=segment_size,
                                   workers=workers, allow_large=allow_large):
        if block.size:
            parts.append(math.fsum(np.log(block.astype(np.float64)).tolist()))
    return math.fsum(parts)


__all__ = [
    "PrimeTable", "Interval", "GapRecord",
    "sieve_range", "iter_prime_blocks", "prime_count", "nth_prime",
    "count_primes_in", "iterate_gaps", "max_gap_up_to", "log_primorial",
    "MIN_SEGMENT_SIZE", "DEFAULT_SEGMENT_SIZE", "DEFAULT_RANGE_LIMIT",
    "HARD_RANGE_LIMIT", "MEM_LIMIT_ENV",
]
