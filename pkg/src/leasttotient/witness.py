"""Least totients of residue classes and witnesses n with phi(n) = a (mod q)."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .arith import (
    DEFAULT_SEGMENT_SIZE,
    PrimeInterval,
    TotientTable,
    checked_product,
    factorize,
    is_prime,
    phi_from_factorization,
    primes_in,
    totient_segments,
)
from .errors import ArgumentError

KINDS = ("exact-minimum", "prime-progression", "q-itself", "q-squared", "product-form")
DEFAULT_SLACK = 4


@dataclass(frozen=True)
class Witness:
    n: int
    q: int
    factorization: dict = field(compare=False)
    residue: int
    kind: str

    def verify(self) -> bool:
        f = self.factorization
        if math.prod(p**e for p, e in f.items()) != self.n:
            return False
        if not all(is_prime(p) for p in f):
            return False
        if phi_from_factorization(f) % self.q != self.residue:
            return False
        if self.kind == "product-form" and any(e != 1 for e in f.values()):
            return False
        return True

    @property
    def phi(self) -> int:
        return phi_from_factorization(self.factorization)

    def to_dict(self):
        return {
            "q": self.q,
            "n": self.n,
            "phi_n": self.phi,
            "residue": self.residue,
            "kind": self.kind,
            "factorization": [[p, e] for p, e in self.factorization.items()],
        }


def make_witness(q: int, n: int, kind: str, factorization=None) -> Witness:
    if kind not in KINDS:
        raise ArgumentError(f"unknown witness kind {kind!r}")
    f = factorize(n) if factorization is None else dict(sorted(factorization.items()))
    return Witness(int(n), int(q), f, phi_from_factorization(f) % q, kind)


def _check_prime_modulus(q):
    if not is_prime(q):
        raise ArgumentError(f"q must be prime, got {q}")


def _segment_size(q, limit):
    return min(limit, max(1 << 16, min(DEFAULT_SEGMENT_SIZE, 64 * q)))


def _phi_blocks(limit, q, phi: TotientTable | None, segment_size, cache_dir):
    if phi is not None:
        if phi.limit < limit:
            raise ArgumentError(f"supplied totient table stops at {phi.limit} < {limit}")
        yield 1, phi.values[1 : limit + 1]
        return
    seg = segment_size or _segment_size(q, limit)
    yield from totient_segments(limit, seg, cache_dir)


def least_totient_exact(q, a, limit, *, phi=None, segment_size=None, cache_dir=None):
    """Smallest n <= limit with phi(n) = a (mod q), or None if there is none."""
    _check_prime_modulus(q)
    if not 0 <= a < q:
        raise ArgumentError(f"need 0 <= a < q, got a={a}")
    if limit < 1:
        raise ArgumentError("limit must be >= 1")
    for lo, block in _phi_blocks(limit, q, phi, segment_size, cache_dir):
        hit = np.flatnonzero(block % q == a)
        if len(hit):
            return make_witness(q, lo + int(hit[0]), "exact-minimum")
    return None


@dataclass
class LeastTotientTable:
    q: int
    limit: int
    entries: dict  # a -> Witness, or None when unresolved below limit

    @property
    def unresolved(self) -> list[int]:
        return [a for a, w in self.entries.items() if w is None]

    @property
    def max_n(self) -> int | None:
        ns = [w.n for w in self.entries.values() if w is not None]
        return max(ns) if ns else None

    @property
    def exponent(self) -> float | None:
        """log(max_a N(q, a)) / log q."""
        m = self.max_n
        return math.log(m) / math.log(self.q) if m else None

    def rows(self):
        for a in range(self.q):
            w = self.entries[a]
            if w is None:
                yield {"q": self.q, "a": a, "n": "", "phi_n": "", "kind": "unresolved", "limit": self.limit}
            else:
                yield {"q": self.q, "a": a, "n": w.n, "phi_n": w.phi, "kind": w.kind, "limit": self.limit}


def least_totient_table(
    q, limit=None, *, slack=DEFAULT_SLACK, phi=None, segment_size=None, cache_dir=None
) -> LeastTotientTable:
    """N(q, a) for every residue a, from one pass over phi(1..limit).

    ``limit`` defaults to ``slack * q**2``.  Residues not reached below the
    limit stay ``None``.
    """
    _check_prime_modulus(q)
    if limit is None:
        limit = slack * q * q
    if limit < 1:
        raise ArgumentError("limit must be >= 1")
    first = np.zeros(q, dtype=np.int64)  # 0 = not yet seen
    left = q
    for lo, block in _phi_blocks(limit, q, phi, segment_size, cache_dir):
        # growing sub-chunks: most residues appear within the first few q values
        step = max(4 * q, 1024)
        pos = 0
        while pos < len(block) and left:
            res = block[pos : pos + step] % q
            fresh = np.flatnonzero(first[res] == 0)
            if len(fresh):
                r, i = np.unique(res[fresh], return_index=True)
                first[r] = lo + pos + fresh[i]
                left -= len(r)
            pos += step
            step *= 2
        if not left:
            break
    entries = {
        a: (make_witness(q, int(first[a]), "exact-minimum") if first[a] else None)
        for a in range(q)
    }
    return LeastTotientTable(q, limit, entries)


def trivial_witness(q, a, prime_search_limit=None) -> Witness | None:
    """n = q for a = -1, n = q^2 for a = 0, else the least prime p = a + 1 (mod q)."""
    _check_prime_modulus(q)
    a %= q
    if a == q - 1:
        return make_witness(q, q, "q-itself")
    if a == 0:
        return make_witness(q, q * q, "q-squared")
    if prime_search_limit is None:
        prime_search_limit = max(DEFAULT_SLACK * q * q, 100)
    p = a + 1
    if p < 2:
        p += q
    while p <= prime_search_limit:
        if is_prime(p):
            return make_witness(q, p, "prime-progression", {p: 1})
        p += q
    return None


def _validate_intervals(q, a, intervals):
    if math.gcd(a, q) != 1:
        raise ArgumentError(f"a={a} must be coprime to q={q}")
    if len(intervals) < 2:
        raise ArgumentError("product search needs at least two intervals")
    seen = set()
    for iv in intervals:
        ps = set(iv.primes)
        if ps & seen:
            raise ArgumentError("intervals must be pairwise disjoint")
        seen |= ps


def _split_point(sizes):
    """Contiguous split balancing the tuple counts of the two halves."""
    best, best_cost = 1, None
    for s in range(1, len(sizes)):
        cost = max(math.prod(sizes[:s]), math.prod(sizes[s:]))
        if best_cost is None or cost < best_cost:
            best, best_cost = s, cost
    return best


def _usable(q, iv):
    # p = 1 mod q makes the product 0, never a unit
    return [p for p in iv.primes if (p - 1) % q]


def _best_by_residue(q, lists):
    """residue -> smallest product of primes over all tuples from ``lists``."""
    best = {}
    for tup in itertools.product(*lists):
        r = math.prod(p - 1 for p in tup) % q
        n = checked_product(tup)
        if r not in best or n < best[r][0]:
            best[r] = (n, tup)
    return best


def product_search(q, a, intervals, mode="meet-in-middle") -> Witness | None:
    """Distinct primes p_j in I_j with prod(p_j - 1) = a (mod q), minimizing prod p_j."""
    _check_prime_modulus(q)
    a %= q
    intervals = list(intervals)
    _validate_intervals(q, a, intervals)
    lists = [_usable(q, iv) for iv in intervals]
    if any(not x for x in lists):
        return None
    if mode == "exhaustive":
        hit = _best_by_residue(q, lists).get(a)
        best = hit[1] if hit else None
    elif mode == "meet-in-middle":
        s = _split_point([len(x) for x in lists])
        left = _best_by_residue(q, lists[:s])
        best, best_n = None, None
        for tup in itertools.product(*lists[s:]):
            r = math.prod(p - 1 for p in tup) % q
            hit = left.get(a * pow(r, -1, q) % q)
            if hit is None:
                continue
            n = checked_product((hit[0], checked_product(tup)))
            if best_n is None or n < best_n:
                best, best_n = hit[1] + tup, n
    else:
        raise ArgumentError(f"unknown search mode {mode!r}")
    if best is None:
        return None
    n = checked_product(best)
    return make_witness(q, n, "product-form", {p: 1 for p in best})


@dataclass
class SearchParameters:
    q: int
    epsilon: float
    k: int
    N: float
    N1: float
    intervals: list[PrimeInterval]  # intervals[0] is I_1, then I_2 .. I_{6k+1}

    @property
    def empty(self) -> list[int]:
        """1-based labels j of the empty I_j."""
        return [j + 1 for j, iv in enumerate(self.intervals) if not len(iv)]

    @property
    def product_exponent(self) -> float:
        """log_q of the largest possible prod p_j: 6k/(4k-1) + 1/2 + 0.1 eps."""
        return 6 * self.k / (4 * self.k - 1) + 0.5 + 0.1 * self.epsilon

    def to_dict(self):
        return {
            "q": self.q,
            "epsilon": self.epsilon,
            "k": self.k,
            "N": self.N,
            "N1": self.N1,
            "intervals": [
                {"j": j + 1, "lo": iv.lo, "hi": iv.hi, "size": len(iv)}
                for j, iv in enumerate(self.intervals)
            ],
            "empty": self.empty,
        }


def construction_parameters(q, epsilon) -> SearchParameters:
    """k = floor(1/eps), N = q^(1/(4k-1)), N1 = q^(1/2 + eps/10) and the prime sets I_j."""
    if not 0 < epsilon <= 0.1:
        raise ArgumentError(f"epsilon must lie in (0, 0.1], got {epsilon}")
    k = math.floor(1 / epsilon)
    N = q ** (1 / (4 * k - 1))
    N1 = q ** (0.5 + 0.1 * epsilon)
    intervals = [primes_in(math.floor(N1 / 2), math.floor(N1))]
    for j in range(2, 6 * k + 2):
        intervals.append(primes_in(math.floor(N / 2**j), math.floor(N / 2 ** (j - 1))))
    return SearchParameters(int(q), epsilon, k, N, N1, intervals)


def find_witness(q, a, strategy="trivial", *, intervals=None, limit=None, mode="meet-in-middle"):
    """Dispatch to one witness strategy: ``trivial``, ``product`` or ``exact``.

    Under ``product`` the classes a = 0 and a = q - 1 go to :func:`trivial_witness`.
    """
    a %= q
    if strategy == "trivial":
        return trivial_witness(q, a, limit)
    if strategy == "exact":
        return least_totient_exact(q, a, limit or DEFAULT_SLACK * q * q)
    if strategy == "product":
        if a in (0, q - 1):
            return trivial_witness(q, a, limit)
        if not intervals:
            raise ArgumentError("product strategy needs intervals")
        return product_search(q, a, intervals, mode)
    raise ArgumentError(f"unknown strategy {strategy!r}")
