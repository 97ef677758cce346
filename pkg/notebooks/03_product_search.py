"""
Product-form witnesses
======================

Pick primes from disjoint intervals so that prod (p_j - 1) = a (mod q);
then n = prod p_j has phi(n) = a (mod q).  Meet-in-the-middle indexes one
half of the intervals by residue and probes with a / residue.
"""

# %%
import time

from leasttotient import construction_parameters, primes_in, product_search

q, a = 1009, 123
intervals = [primes_in(30, 60), primes_in(60, 120), primes_in(120, 240)]
for mode in ("exhaustive", "meet-in-middle"):
    t0 = time.perf_counter()
    w = product_search(q, a, intervals, mode)
    print(f"{mode:15s} n={w.n} factors={list(w.factorization)} {time.perf_counter() - t0:.3f}s")
print("verified:", w.verify())

# %%
# The interval family of the q^2 construction.  At desk scale N is tiny,
# so nearly every I_j is empty.
params = construction_parameters(10**6 + 3, 0.1)
print(f"k={params.k} N={params.N:.4f} N1={params.N1:.1f}")
print(f"|I_1|={len(params.intervals[0])}, empty I_j: {len(params.empty)} of {len(params.intervals)}")
print(f"product size exponent {params.product_exponent:.4f}")
