"""
Auditing the level-set argument
===============================

On a toy instance the number of solutions of
(p1 - 1)(x_1 - 1)...(x_m - 1) = a (mod q) is computed by enumeration and
by the character formula, then each inequality of the argument is
evaluated.  Exact ones must hold; asymptotic ones are only reported.
"""

# %%
from leasttotient import primes_in, proof_audit

rep = proof_audit(1009, primes_in(10, 40), primes_in(300, 700), a=5, m=3)
print("solutions:", rep.count, "enumerated:", rep.enumerated_count, "residual:", rep.residual)
print("dominant level (V, V1, R):", rep.max_level)

# %%
for ineq in rep.inequalities[:9]:
    tag = "exact" if ineq.exact else "asymptotic"
    print(f"{ineq.name:22s} {tag:10s} lhs={ineq.lhs:12.4g} rhs={ineq.rhs:12.4g} holds={ineq.holds}")

# %%
print(rep.identities)
print(rep.observations)
