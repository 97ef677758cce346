import random

import pytest

from leasttotient.arith import primes_in
from leasttotient.audit import default_half_order, proof_audit
from leasttotient.errors import ArgumentError, ResourceError
from oracles import brute_equal_products, brute_tuple_count, small_odd_primes


def residues(q, iv):
    return [(p - 1) % q for p in iv.primes if (p - 1) % q]


def test_toy_instance_q11():
    rep = proof_audit(11, primes_in(2, 6), primes_in(6, 10), 3, m=3)
    assert rep.exact_ok
    assert rep.count == rep.enumerated_count == brute_tuple_count(11, [[6], [2, 4], [2, 4], [2, 4]], 3)
    d = rep.to_dict()
    assert d["all_exact_hold"] is True
    names = {i["name"] for i in d["inequalities"]}
    assert {"principal_separation", "level_decomposition", "rv_8k_minus_2", "rv1_4", "error_th1"} <= names


def test_counts_match_brute_force():
    rng = random.Random(5)
    for _ in range(30):
        q = rng.choice(small_odd_primes(100))
        lo = rng.randint(1, 30)
        I = primes_in(lo, lo + rng.randint(2, 25))
        lo1 = rng.randint(30, 80)
        I1 = primes_in(lo1, lo1 + rng.randint(5, 60))
        m = rng.randint(1, 3)
        a = rng.randint(1, q - 1)
        rep = proof_audit(q, I, I1, a, m=m)
        brute = brute_tuple_count(q, [residues(q, I1)] + [residues(q, I)] * m, a)
        assert rep.count == brute
        assert rep.exact_ok
        h = rep.h
        assert rep.observations["congruence_solutions_I"] == brute_equal_products(q, residues(q, I), h)


def test_chebyshev_every_level():
    rep = proof_audit(97, primes_in(10, 60), primes_in(60, 200), 5, m=3)
    cheb = [i for i in rep.inequalities if i.name.startswith("chebyshev")]
    assert len(cheb) == 2 * len(rep.levels)
    assert all(i.holds for i in cheb)


def test_empty_intervals():
    rep = proof_audit(101, primes_in(24, 28), primes_in(90, 96), 7, m=2)
    assert rep.sizes == {"I": 0, "I1": 0}
    assert rep.count == 0 and rep.enumerated_count == 0
    assert rep.levels == [] and rep.max_level is None
    assert rep.exact_ok


def test_half_order_mapping():
    for k in (1, 2, 5, 10):
        assert default_half_order(6 * k) == 4 * k - 1
    assert default_half_order(1) == 1


def test_audit_errors():
    with pytest.raises(ArgumentError):
        proof_audit(11, primes_in(2, 6), primes_in(6, 10), 22)
    with pytest.raises(ResourceError):
        proof_audit(1009, primes_in(0, 1000), primes_in(0, 1000), 3, m=3)


def test_non_exact_entries_are_not_judged():
    rep = proof_audit(11, primes_in(2, 6), primes_in(6, 10), 3, m=3)
    for ineq in rep.inequalities:
        if not ineq.exact:
            assert ineq.holds is None
