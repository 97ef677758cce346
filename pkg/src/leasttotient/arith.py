"""Integer substrate: totient sieves, prime intervals, primality, factorization.

Everything here is deterministic.  Arrays handed out by the sieves are
marked read-only so tables can be shared freely.
"""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np

from .errors import ArgumentError, ResourceError

INT64_MAX = 2**63 - 1

#: Largest table ``sieve_totients`` materializes in one array.
MAX_TABLE_LIMIT = 10**8
#: Above this, callers should stream segments instead of building a table.
SEGMENT_THRESHOLD = 10**8
DEFAULT_SEGMENT_SIZE = 1 << 22
#: Widest (lo, hi] span ``primes_in`` will sieve.
MAX_PRIME_SPAN = 10**8

# first 13 primes as Miller-Rabin bases: deterministic below 3.317e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981

CACHE_MAGIC = b"PHIS"
CACHE_VERSION = 1
_CACHE_HEADER = struct.Struct("<4sIQQQQ")


@dataclass(frozen=True)
class TotientTable:
    """phi(n) for 0 <= n <= limit (entry 0 is a 0 placeholder)."""

    limit: int
    values: np.ndarray = field(repr=False)

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return self.limit


@dataclass(frozen=True)
class PrimeInterval:
    """The primes p with lo < p <= hi."""

    lo: int
    hi: int
    primes: tuple[int, ...]

    def __len__(self):
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)

    def disjoint_from(self, other: "PrimeInterval") -> bool:
        return not set(self.primes) & set(other.primes)


@dataclass(frozen=True)
class Modulus:
    q: int
    g: int


def small_primes(limit: int) -> np.ndarray:
    """All primes <= limit, as an int64 array."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def _phi_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """phi(n) for lo <= n < hi; ``base`` must hold every prime <= sqrt(hi - 1)."""
    n = np.arange(lo, hi, dtype=np.int64)
    phi = n.copy()
    rest = n.copy()
    for p in base.tolist():
        if p * p >= hi:
            break
        s = (-lo) % p
        phi[s::p] -= phi[s::p] // p
        pe = p
        while pe < hi:
            rest[(-lo) % pe :: pe] //= p
            pe *= p
    # at most one prime factor > sqrt(n) survives
    big = rest > 1
    phi[big] -= phi[big] // rest[big]
    return phi


def _cache_path(cache_dir, limit, index):
    return Path(cache_dir) / f"phi-{limit}-{index:06d}.bin"


def _read_cached_segment(path, limit, index, lo, count):
    try:
        raw = Path(path).read_bytes()
        magic, version, c_limit, c_index, c_lo, c_count = _CACHE_HEADER.unpack_from(raw)
    except (OSError, struct.error):
        return None
    if (magic, version, c_limit, c_index, c_lo, c_count) != (
        CACHE_MAGIC, CACHE_VERSION, limit, index, lo, count
    ):
        return None
    body = raw[_CACHE_HEADER.size :]
    if len(body) != 8 * count:
        return None
    return np.frombuffer(body, dtype="<i8").astype(np.int64)


def _write_cached_segment(path, limit, index, lo, values):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = _CACHE_HEADER.pack(CACHE_MAGIC, CACHE_VERSION, limit, index, lo, len(values))
    tmp = path.with_suffix(f".tmp{os.getpid()}")
    tmp.write_bytes(header + values.astype("<i8").tobytes())
    os.replace(tmp, path)


def totient_segments(
    limit: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    cache_dir=None,
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(start, phi[start:start+len])`` blocks covering 1..limit in order.

    With ``cache_dir`` set, each block is read from / written to
    ``phi-<limit>-<index>.bin``: a little-endian header
    ``(b"PHIS", version:u32, limit:u64, index:u64, start:u64, count:u64)``
    followed by ``count`` little-endian int64 values.  Unreadable or
    mismatched files are recomputed.
    """
    if limit < 1:
        raise ArgumentError("limit must be >= 1")
    if segment_size < 1:
        raise ArgumentError("segment_size must be >= 1")
    base = small_primes(math.isqrt(limit))
    for index, lo in enumerate(range(1, limit + 1, segment_size)):
        hi = min(lo + segment_size, limit + 1)
        block = None
        if cache_dir is not None:
            path = _cache_path(cache_dir, limit, index)
            block = _read_cached_segment(path, limit, index, lo, hi - lo)
        if block is None:
            block = _phi_segment(lo, hi, base)
            if cache_dir is not None:
                _write_cached_segment(path, limit, index, lo, block)
        block.flags.writeable = False
        yield lo, block


def sieve_totients(limit: int, max_limit: int = MAX_TABLE_LIMIT, cache_dir=None) -> TotientTable:
    """Euler's phi for every n <= limit."""
    if limit < 1:
        raise ArgumentError("limit must be >= 1")
    if limit > max_limit:
        raise ResourceError(
            f"totient table limit {limit} exceeds cap {max_limit}; use totient_segments",
            cap=max_limit,
        )
    values = np.zeros(limit + 1, dtype=np.int64)
    seg = limit if cache_dir is None else DEFAULT_SEGMENT_SIZE
    for lo, block in totient_segments(limit, segment_size=seg, cache_dir=cache_dir):
        values[lo : lo + len(block)] = block
    values.flags.writeable = False
    return TotientTable(limit, values)


def primes_in(lo: int, hi: int, max_span: int = MAX_PRIME_SPAN) -> PrimeInterval:
    """Primes in the half-open interval (lo, hi]."""
    lo, hi = int(lo), int(hi)
    if lo < 0 or hi < lo:
        raise ArgumentError(f"need 0 <= lo <= hi, got ({lo}, {hi}]")
    if hi - lo > max_span:
        raise ResourceError(f"prime interval span {hi - lo} exceeds cap {max_span}", cap=max_span)
    start = max(lo + 1, 2)
    if hi < start:
        return PrimeInterval(lo, hi, ())
    flags = np.ones(hi - start + 1, dtype=bool)
    for p in small_primes(math.isqrt(hi)).tolist():
        first = max(p * p, -(-start // p) * p)
        flags[first - start :: p] = False
    found = np.flatnonzero(flags) + start
    return PrimeInterval(lo, hi, tuple(found.tolist()))


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    n = int(n)
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= MR_DETERMINISTIC_BOUND:
        raise ResourceError(f"{n} is beyond the deterministic Miller-Rabin range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        f = lambda v: (v * v + c) % n  # noqa: E731
        while g == 1:
            x = y
            for _ in range(r):
                y = f(y)
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = f(y)
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = f(ys)
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"no factor found for {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization as ``{prime: exponent}``; ``factorize(1) == {}``."""
    n = int(n)
    if n < 1:
        raise ArgumentError("factorize needs n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    # wheel mod 30 up to a modest bound, Pollard-Brent beyond it
    steps = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d < 10**5:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += steps[i]
        i = (i + 1) % 8
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        f = _pollard_brent(m)
        stack += [f, m // f]
    return dict(sorted(out.items()))


def phi_from_factorization(factors: dict[int, int]) -> int:
    out = 1
    for p, e in factors.items():
        out *= p ** (e - 1) * (p - 1)
    return out


def euler_phi(n: int) -> int:
    return phi_from_factorization(factorize(n))


def multiplicative_order(g: int, q: int, factors_of_order=None) -> int:
    """Order of g in (Z/qZ)^*, q prime."""
    order = q - 1
    for r in factors_of_order or factorize(q - 1):
        while order % r == 0 and pow(g, order // r, q) == 1:
            order //= r
    return order


def primitive_root(q: int) -> int:
    """Smallest primitive root of the odd prime q."""
    q = int(q)
    if q < 3 or not is_prime(q):
        raise ArgumentError(f"primitive_root needs an odd prime, got {q}")
    rs = list(factorize(q - 1))
    g = 2
    while any(pow(g, (q - 1) // r, q) == 1 for r in rs):
        g += 1
    return g


def make_modulus(q: int) -> Modulus:
    return Modulus(int(q), primitive_root(q))


def checked_product(factors) -> int:
    """Product of non-negative ints, refusing anything past the int64 range."""
    out = 1
    for f in factors:
        f = int(f)
        if f and out > INT64_MAX // f:
            raise ResourceError(f"product exceeds 64-bit range at factor {f}", cap=INT64_MAX)
        out *= f
    return out
