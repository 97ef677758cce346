"""Slow, independent reference implementations used as test oracles.

Nothing here imports the package; each routine follows the textbook
definition as directly as possible.
"""

import cmath
import itertools
import math
from collections import Counter


def trial_phi(n):
    """phi(n) by trial-division factorization."""
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def gcd_count_phi(n):
    """phi(n) straight from the definition."""
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def trial_is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def trial_primes(lo, hi):
    return [p for p in range(lo + 1, hi + 1) if trial_is_prime(p)]


def naive_least_totient(q, a, limit):
    for n in range(1, limit + 1):
        if trial_phi(n) % q == a:
            return n
    return None


def naive_order(g, q):
    x, k = g % q, 1
    while x != 1:
        x = x * g % q
        k += 1
    return k


def naive_primitive_root(q):
    return next(g for g in range(2, q) if naive_order(g, q) == q - 1)


def naive_dlog(q, g):
    """{n: ind(n)} by repeated multiplication."""
    out, x = {}, 1
    for t in range(q - 1):
        out[x] = t
        x = x * g % q
    return out


def naive_character_sums(q, support, coeffs):
    """sum_n a_n chi_j(n) for each j, one exp() per term."""
    g = naive_primitive_root(q)
    ind = naive_dlog(q, g)
    return [
        sum(a * cmath.exp(2j * math.pi * j * ind[n % q] / (q - 1)) for n, a in zip(support, coeffs))
        for j in range(q - 1)
    ]


def brute_tuple_count(q, lists, a):
    """#{tuples in lists[0] x ... : prod = a mod q}, one tuple at a time."""
    return sum(1 for t in itertools.product(*lists) if math.prod(t) % q == a % q)


def brute_equal_products(q, values, m):
    """#{(x, y) in values^m x values^m : prod x = prod y mod q}.

    Every m-tuple is listed; pairs are counted through class multiplicities.
    """
    classes = Counter(math.prod(t) % q for t in itertools.product(values, repeat=m))
    return sum(c * c for c in classes.values())


def brute_product_witness(q, a, prime_lists):
    """Smallest prod p_j over tuples with prod(p_j - 1) = a mod q."""
    best = None
    for t in itertools.product(*prime_lists):
        if math.prod(p - 1 for p in t) % q == a % q:
            n = math.prod(t)
            best = n if best is None or n < best else best
    return best


def small_odd_primes(limit):
    return [p for p in range(3, limit + 1) if trial_is_prime(p)]
