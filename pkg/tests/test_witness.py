import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leasttotient.arith import PrimeInterval, primes_in, sieve_totients
from leasttotient.errors import ArgumentError
from leasttotient.witness import (
    construction_parameters,
    find_witness,
    least_totient_exact,
    least_totient_table,
    make_witness,
    product_search,
    trivial_witness,
)
from oracles import brute_product_witness, naive_least_totient, small_odd_primes, trial_is_prime


def iv(*ps):
    return PrimeInterval(min(ps) - 1, max(ps), tuple(sorted(ps)))


@pytest.mark.parametrize("a, n", [(1, 1), (4, 5), (3, 15), (0, 11), (2, 3)])
def test_least_totient_exact_q5(a, n):
    w = least_totient_exact(5, a, 25)
    assert w.n == n and w.kind == "exact-minimum" and w.verify()


def test_least_totient_exact_unresolved():
    assert least_totient_exact(5, 3, 14) is None


def test_exact_minimality_small_q():
    for q in [2] + small_odd_primes(50):
        for a in range(q):
            w = least_totient_exact(q, a, 4 * q * q)
            assert w.n == naive_least_totient(q, a, 4 * q * q)


def test_exact_segment_sizes_agree():
    for seg in (1, 10, 333):
        assert least_totient_exact(13, 0, 700, segment_size=seg).n == naive_least_totient(13, 0, 700)


@pytest.mark.parametrize(
    "q, limit, expected",
    [(5, 25, {0: 11, 1: 1, 2: 3, 3: 15, 4: 5}), (3, 10, {0: 7, 1: 1, 2: 3})],
)
def test_table_examples(q, limit, expected):
    t = least_totient_table(q, limit)
    assert {a: w.n for a, w in t.entries.items()} == expected
    assert t.unresolved == []


def test_table_matches_exact_for_q_up_to_100():
    phi = sieve_totients(4 * 97 * 97)
    for q in [p for p in range(2, 101) if trial_is_prime(p)]:
        t = least_totient_table(q)
        t2 = least_totient_table(q, phi=phi)
        for a in range(q):
            e = least_totient_exact(q, a, 4 * q * q, phi=phi)
            assert t.entries[a].n == t2.entries[a].n == e.n
        # a = q - 1 is reached by n = q at the latest
        assert t.entries[q - 1].n <= q


def test_table_reports_unresolved():
    t = least_totient_table(5, 14)
    assert t.unresolved == [3]
    assert t.entries[3] is None
    rows = list(t.rows())
    assert rows[3]["kind"] == "unresolved" and rows[3]["n"] == ""


def test_table_exponent():
    t = least_totient_table(5)
    assert t.max_n == 15
    assert t.exponent == pytest.approx(math.log(15) / math.log(5))
    assert t.exponent == pytest.approx(1.683, abs=5e-4)
    assert least_totient_table(3).exponent == pytest.approx(1.771, abs=5e-4)


def test_table_rejects_composite():
    with pytest.raises(ArgumentError):
        least_totient_table(9)


def test_trivial_witness_examples():
    w = trivial_witness(5, 4)
    assert (w.n, w.kind) == (5, "q-itself")
    w = trivial_witness(5, 0)
    assert (w.n, w.kind, w.phi) == (25, "q-squared", 20)
    w = trivial_witness(7, 1)
    assert (w.n, w.kind) == (2, "prime-progression")
    assert trivial_witness(7, 6).n == 7


def test_trivial_witness_progression_scan():
    for q in small_odd_primes(60):
        for a in range(1, q - 1):
            w = trivial_witness(q, a)
            assert w.verify() and w.residue == a
            p = next(p for p in range(2, 10**5) if trial_is_prime(p) and p % q == (a + 1) % q)
            assert w.n == p


def test_trivial_witness_unresolved():
    assert trivial_witness(101, 50, prime_search_limit=40) is None


def test_product_search_examples():
    w = product_search(7, 1, [iv(2), iv(3), iv(5)])
    assert w.n == 30 and w.kind == "product-form" and w.verify()
    for mode in ("exhaustive", "meet-in-middle"):
        w = product_search(5, 2, [iv(2, 3), iv(7, 11, 13)], mode)
        assert w.n == brute_product_witness(5, 2, [[2, 3], [7, 11, 13]])


def test_product_search_constant_residue():
    # every p - 1 = 1 mod 5
    ints = [iv(2), iv(7), iv(17)]
    assert product_search(5, 1, ints).n == 2 * 7 * 17
    for a in (2, 3, 4):
        assert product_search(5, a, ints) is None


def test_product_search_errors():
    with pytest.raises(ArgumentError):
        product_search(7, 0, [iv(2), iv(3)])
    with pytest.raises(ArgumentError):
        product_search(7, 1, [iv(2, 3), iv(3, 5)])
    with pytest.raises(ArgumentError):
        product_search(7, 1, [iv(2, 3)])
    with pytest.raises(ArgumentError):
        product_search(7, 1, [iv(2), iv(3)], mode="fast")


def random_instance(rng, max_tuples):
    q = rng.choice(small_odd_primes(200))
    m = rng.randint(2, 4)
    cuts = sorted(rng.sample(range(2, 400), m + 1))
    ints = [primes_in(lo, hi) for lo, hi in zip(cuts, cuts[1:])]
    while math.prod(len(i) for i in ints) > max_tuples:
        ints = [primes_in(i.lo, (i.lo + i.hi) // 2) for i in ints]
    a = rng.randint(1, q - 1)
    return q, a, ints


def test_mode_equivalence_random():
    rng = random.Random(11)
    for _ in range(60):
        q, a, ints = random_instance(rng, 5000)
        ex = product_search(q, a, ints, "exhaustive")
        mim = product_search(q, a, ints, "meet-in-middle")
        brute = brute_product_witness(q, a, [list(i.primes) for i in ints])
        assert (ex and ex.n) == (mim and mim.n) == brute
        if mim:
            assert mim.verify() and mim.residue == a


def test_construction_parameters_examples():
    p = construction_parameters(10**6 + 3, 0.1)
    assert p.k == 10
    assert p.N == pytest.approx((10**6 + 3) ** (1 / 39))
    assert p.N == pytest.approx(1.425, abs=1e-3)
    assert p.N1 == pytest.approx((10**6 + 3) ** 0.51)
    assert len(p.intervals) == 61
    assert set(range(2, 62)) <= set(p.empty)
    p = construction_parameters(101, 0.05)
    assert p.k == 20 and len(p.intervals) == 121


def test_construction_parameters_structure():
    p = construction_parameters(10**12 + 39, 0.09)
    assert p.k == 11
    seen = set()
    for j, interval in enumerate(p.intervals, start=1):
        assert not seen & set(interval.primes)
        seen |= set(interval.primes)
        if j >= 2:
            assert interval.lo == math.floor(p.N / 2**j)
            assert interval.hi == math.floor(p.N / 2 ** (j - 1))
    assert p.intervals[0].hi == math.floor(p.N1)
    assert p.product_exponent == pytest.approx(66 / 43 + 0.5 + 0.009)


@pytest.mark.parametrize("eps", [0, -0.1, 0.2, 1.0])
def test_construction_parameters_range(eps):
    with pytest.raises(ArgumentError):
        construction_parameters(101, eps)


def test_find_witness_routes_trivial_classes():
    assert find_witness(7, 6, "product").kind == "q-itself"
    assert find_witness(7, 0, "product").kind == "q-squared"
    assert find_witness(7, 1, "product", intervals=[iv(2), iv(3), iv(5)]).n == 30
    assert find_witness(7, 3, "exact").n == 11
    with pytest.raises(ArgumentError):
        find_witness(7, 3, "product")


@given(st.sampled_from(small_odd_primes(300)), st.integers(2, 10**7))
@settings(max_examples=200, deadline=None)
def test_witness_verify_detects_mismatch(q, n):
    w = make_witness(q, n, "exact-minimum")
    assert w.verify()
    bad = make_witness(q, n, "exact-minimum")
    object.__setattr__(bad, "residue", (w.residue + 1) % q)
    assert not bad.verify()
