"""Numerical audit of the character-sum inequalities behind the q^2 bound.

Toy instance: one interval I used m times plus a long interval I1, target
class a.  The congruence

    (p1 - 1)(x_1 - 1)...(x_m - 1) = a (mod q),  p1 in I1, x_j in I

is counted exactly, the joint dyadic level sets of (|S_I(chi)|, |S_I1(chi)|)
are formed, and each inequality is reported as its two sides.  Entries
with ``exact=True`` must hold for every input; the others are asymptotic
statements whose ratio is only recorded.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .arith import PrimeInterval
from .charlab import (
    SCHEMA_VERSION,
    CharacterBasis,
    all_character_sums,
    build_basis,
    coefficient_vector,
    congruence_count,
    dyadic_exponents,
    interval_residues,
    moment,
    zero_threshold,
)
from .errors import ArgumentError, ResourceError

MAX_AUDIT_TUPLES = 10**7
_SLACK = 1e-9


@dataclass
class Inequality:
    name: str
    lhs: float
    rhs: float
    exact: bool

    @property
    def ratio(self) -> float | None:
        return self.lhs / self.rhs if self.rhs else None

    @property
    def holds(self) -> bool | None:
        """Checked only for exact inequalities; asymptotic ones give None."""
        if not self.exact:
            return None
        return self.lhs <= self.rhs * (1 + _SLACK) + _SLACK

    def to_dict(self):
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "exact": self.exact,
            "holds": self.holds,
        }


@dataclass
class AuditReport:
    q: int
    a: int
    m: int
    h: int
    sizes: dict
    count: int
    character_count: complex
    enumerated_count: int
    residual: float
    levels: list  # [(V, V1, R)]
    max_level: tuple | None
    inequalities: list[Inequality] = field(default_factory=list)
    identities: dict = field(default_factory=dict)
    observations: dict = field(default_factory=dict)

    @property
    def exact_ok(self) -> bool:
        return all(self.identities.values()) and all(
            i.holds for i in self.inequalities if i.exact
        )

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "q": self.q,
            "a": self.a,
            "m": self.m,
            "h": self.h,
            "sizes": self.sizes,
            "count": {
                "enumerated": self.enumerated_count,
                "character": [self.character_count.real, self.character_count.imag],
                "residual": self.residual,
            },
            "levels": [{"V": v, "V1": v1, "R": r} for v, v1, r in self.levels],
            "max_level": (
                None
                if self.max_level is None
                else dict(zip(("V", "V1", "R"), self.max_level))
            ),
            "inequalities": [i.to_dict() for i in self.inequalities],
            "identities": self.identities,
            "observations": self.observations,
            "all_exact_hold": self.exact_ok,
        }


def default_half_order(m: int) -> int:
    """h with 2h playing the role of 8k - 2 when m plays 6k (h = 2m/3 - 1)."""
    return max(1, (2 * m) // 3 - 1)


def _tuple_histogram(q, residues, h):
    """Number of h-tuples from ``residues`` per product class mod q."""
    hist = np.zeros(q, dtype=np.int64)
    hist[1] = 1
    idx = np.arange(q, dtype=np.int64)
    for _ in range(h):
        nxt = np.zeros(q, dtype=np.int64)
        for r in residues.tolist():
            nxt[idx * r % q] += hist
        hist = nxt
    return hist


def _integer_equal_count(values, h):
    """#{(x, y) in values^h x values^h : prod x == prod y} over the integers."""
    dist = Counter({1: 1})
    for _ in range(h):
        nxt = Counter()
        for prod, c in dist.items():
            for v in values:
                nxt[prod * v] += c
        dist = nxt
    return sum(c * c for c in dist.values())


def _joint_levels(s_i, s_1, thr_i, thr_1):
    mi, m1 = np.abs(s_i[1:]), np.abs(s_1[1:])
    keep = (mi > thr_i) & (m1 > thr_1)
    if not keep.any():
        return []
    pairs = Counter(zip(dyadic_exponents(mi[keep]).tolist(), dyadic_exponents(m1[keep]).tolist()))
    return sorted((math.ldexp(1.0, e), math.ldexp(1.0, e1), r) for (e, e1), r in pairs.items())


def proof_audit(
    q: int,
    interval: PrimeInterval,
    long_interval: PrimeInterval,
    a: int,
    m: int = 3,
    h: int | None = None,
    basis: CharacterBasis | None = None,
    max_tuples: int = MAX_AUDIT_TUPLES,
) -> AuditReport:
    """Audit the level-set argument on (I repeated m times, I1, a) modulo q."""
    if m < 1:
        raise ArgumentError("m must be >= 1")
    basis = basis or build_basis(q)
    if math.gcd(a, basis.q) != 1:
        raise ArgumentError(f"a={a} must be coprime to q={q}")
    a %= q
    h = h or default_half_order(m)
    res_i = interval_residues(q, interval)
    res_1 = interval_residues(q, long_interval)
    n_i, n_1 = len(res_i), len(res_1)
    if n_1 * n_i**m > max_tuples or n_i**h > max_tuples or n_1**2 > max_tuples:
        raise ResourceError(
            f"audit instance too large for exact enumeration (cap {max_tuples})", cap=max_tuples
        )

    cc = congruence_count(basis, [long_interval] + [interval] * m, a, max_enumeration=max_tuples)
    prof_i = all_character_sums(basis, coefficient_vector(q, res_i))
    prof_1 = all_character_sums(basis, coefficient_vector(q, res_1))
    s_i, s_1 = prof_i.sums, prof_1.sums
    mag_i, mag_1 = np.abs(s_i), np.abs(s_1)

    levels = _joint_levels(s_i, s_1, zero_threshold(prof_i), zero_threshold(prof_1))
    max_level = max(levels, key=lambda t: t[2] * t[0] ** m * t[1]) if levels else None
    R, V, V1 = (max_level[2], max_level[0], max_level[1]) if max_level else (0, 0.0, 0.0)

    N = float(interval.hi)
    N1 = float(long_interval.hi)
    off_principal = float(np.sum(mag_i[1:] ** m * mag_1[1:]))
    mom_i = moment(prof_i, 2 * h)
    mom_1 = moment(prof_1, 4)

    ineqs = [
        # principal term separated: |main - (q-1) count| <= sum over chi != chi0
        Inequality(
            "principal_separation",
            abs(n_1 * n_i**m - (q - 1) * cc.count),
            off_principal,
            True,
        ),
        Inequality(
            "level_decomposition",
            off_principal,
            sum(r * (2 * v) ** m * (2 * v1) for v, v1, r in levels),
            True,
        ),
        Inequality("rv_8k_minus_2", R * V ** (2 * h), mom_i, True),
        Inequality("moment_8k_minus_2", mom_i, q * N**h, False),
        Inequality("rv1_4", R * V1**4, mom_1, True),
        Inequality("moment_4_long", mom_1, N1**4, False),
    ]
    if max_level:
        ineqs += [
            Inequality("error_th1", N**m * N1, R * V**m * V1, False),
            Inequality("large_values", R, (N / V) ** m + q * N ** (2 * m) / V ** (3 * m), False),
            Inequality("rv_18k", R * V ** (3 * m), q * N ** (2 * m), False),
        ]
    # Chebyshev at every joint level, for both sums
    for v, v1, r in levels:
        ineqs.append(Inequality(f"chebyshev_I[V={v:g},V1={v1:g}]", r * v ** (2 * h), mom_i, True))
        ineqs.append(Inequality(f"chebyshev_I1[V={v:g},V1={v1:g}]", r * v1**4, mom_1, True))

    hist_i = _tuple_histogram(q, res_i, h)
    hist_1 = _tuple_histogram(q, res_1, 2)
    cong_i = int(np.dot(hist_i, hist_i))
    cong_1 = int(np.dot(hist_1, hist_1))
    eq_i = _integer_equal_count([int(p) - 1 for p in interval.primes], h)

    identities = {
        "count_character_vs_enumeration": cc.agrees,
        "moment_2h_vs_congruence_count": abs(mom_i - (q - 1) * cong_i) <= 1e-9 * max(1.0, mom_i),
        "moment_4_long_vs_congruence_count": abs(mom_1 - (q - 1) * cong_1)
        <= 1e-9 * max(1.0, mom_1),
    }
    observations = {
        "congruence_solutions_I": cong_i,
        "equality_solutions_I": eq_i,
        "equality_over_N^h": eq_i / N**h if N else None,
        "congruence_solutions_I1_4": cong_1,
        "congruence_I1_over_N1^4/q": cong_1 / (N1**4 / q) if N1 else None,
        "N": N,
        "N1": N1,
    }
    return AuditReport(
        q=q,
        a=a,
        m=m,
        h=h,
        sizes={"I": n_i, "I1": n_1},
        count=cc.count,
        character_count=cc.character_value,
        enumerated_count=cc.enumerated,
        residual=cc.residual,
        levels=levels,
        max_level=max_level,
        inequalities=ineqs,
        identities=identities,
        observations=observations,
    )
