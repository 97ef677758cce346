"""
Character sums over shifted primes
==================================

All q - 1 sums  S(chi) = sum_{p in I} chi(p - 1)  come from one FFT of
length q - 1 over discrete-log classes.  The dyadic census counts how
many characters land in each band V <= |S| < 2V.
"""

# %%
import numpy as np

from leasttotient import (
    all_character_sums,
    build_basis,
    census,
    huxley_ratio,
    moment,
    primes_in,
    shifted_primes,
)

q = 1009
basis = build_basis(q)
interval = primes_in(q // 2, q)  # a long window, L/2 < p <= L
vec, skipped = shifted_primes(q, interval, -1)
prof = all_character_sums(basis, vec)
mags = prof.magnitudes
print(f"{len(interval)} primes, principal sum {prof.sums[0].real:.0f}")
print(f"largest nonprincipal |S| = {mags[1:].max():.2f}")
print(f"empirical exponent log|S|/log L = {np.log(mags[1:].max()) / np.log(q):.3f}")

# %%
cen = census(prof)
for V, R in cen.levels:
    print(f"{V:8.3f} <= |S| < {2 * V:8.3f}: {R}")

# %%
# Moments over all characters equal (q - 1) times a congruence count.
for order in (2, 4):
    print(order, moment(prof, order) / (q - 1))

# %%
# Observed R(V) against N^2/V^2 + q N^4/V^6 for a short window.
N = q**0.6
short = primes_in(int(N), int(2 * N))
sprof = all_character_sums(basis, shifted_primes(q, short, -1)[0])
for V in (2.0, 4.0, 8.0):
    if V <= N:
        rep = huxley_ratio(sprof, V, N)
        print(f"V={V}: R={rep.R} bound={rep.bound:.1f} ratio={rep.ratio:.3g}")
