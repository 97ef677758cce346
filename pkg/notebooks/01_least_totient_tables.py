"""
Least totients of residue classes
=================================

For a prime q and a class a, N(q, a) is the smallest n with
phi(n) = a (mod q).  One streamed totient sieve fills every class.
"""

# %%
from leasttotient import least_totient_table, primes_in, trivial_witness

t = least_totient_table(11)
for a, w in t.entries.items():
    print(f"a={a:2d}  N={w.n:4d}  phi={w.phi}  factors={w.factorization}")

# %%
# The growth exponent log(max_a N(q, a)) / log q stays well below 2 at this scale.
for q in primes_in(100, 200).primes[:8]:
    t = least_totient_table(q)
    print(q, t.max_n, round(t.exponent, 3))

# %%
# The constructive witnesses are far from minimal but always available.
q = 101
for a in (0, 1, 37, 100):
    w = trivial_witness(q, a)
    print(a, w.kind, w.n, "vs least", least_totient_table(q).entries[a].n)

# %%
# A wider sweep, the same data the acceptance suite archives.
exps = [least_totient_table(q).exponent for q in primes_in(2, 1000).primes]
print(f"max exponent over q < 1000: {max(exps):.4f}, mean {sum(exps) / len(exps):.4f}")
