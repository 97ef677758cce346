"""Dirichlet characters modulo a prime, evaluated all at once.

Characters are indexed by j in [0, q-2] through the discrete logarithm
to the smallest primitive root g::

    chi_j(n) = exp(2*pi*i * j * ind(n) / (q - 1))

so the q-1 sums ``sum_n a_n chi_j(n)`` are one length-(q-1) DFT of the
coefficients folded onto index classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import Modulus, PrimeInterval, is_prime, make_modulus
from .errors import ArgumentError, ResourceError

MAX_BASIS_Q = 10**6
#: Tuple-space size up to which congruence counts are also enumerated directly.
MAX_ENUMERATION = 10**7
SCHEMA_VERSION = 1

REL_TOL = 1e-9
INT_RESIDUAL = 1e-6


@dataclass(frozen=True, eq=False)
class CharacterBasis:
    modulus: Modulus
    index: np.ndarray = field(repr=False)  # index[0] == -1 (undefined)
    roots: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.modulus.q

    @property
    def order(self) -> int:
        return self.modulus.q - 1

    def chi(self, j: int, n) -> np.ndarray:
        """chi_j(n) for n coprime to q (scalar or array)."""
        ind = self.index[np.asarray(n) % self.q]
        return self.roots[(j * ind) % self.order]


def build_basis(q: int, max_q: int = MAX_BASIS_Q) -> CharacterBasis:
    q = int(q)
    if q < 3 or not is_prime(q):
        raise ArgumentError(f"modulus must be an odd prime, got {q}")
    if q > max_q:
        raise ResourceError(f"q={q} exceeds the index-table cap {max_q}", cap=max_q)
    mod = make_modulus(q)
    index = np.full(q, -1, dtype=np.int64)
    x = 1
    for t in range(q - 1):
        index[x] = t
        x = x * mod.g % q
    roots = np.exp(2j * np.pi * np.arange(q - 1) / (q - 1))
    index.flags.writeable = False
    roots.flags.writeable = False
    return CharacterBasis(mod, index, roots)


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    q: int
    support: np.ndarray
    coeffs: np.ndarray
    cap: float

    def __post_init__(self):
        if len(self.support) != len(self.coeffs):
            raise ArgumentError("support and coefficients differ in length")
        if np.any(self.support % self.q == 0):
            raise ArgumentError("support contains a multiple of q")
        if len(self.coeffs) and np.abs(self.coeffs).max() > self.cap:
            raise ArgumentError("declared cap is below max |a_n|")

    @property
    def window(self) -> tuple[int, int]:
        if not len(self.support):
            return (0, 0)
        return int(self.support.min()), int(self.support.max())


def coefficient_vector(q, support, coeffs=None, cap=None) -> CoefficientVector:
    support = np.asarray(support, dtype=np.int64).reshape(-1)
    if coeffs is None:
        coeffs = np.ones(len(support), dtype=complex)
    coeffs = np.asarray(coeffs, dtype=complex).reshape(-1)
    if cap is None:
        cap = float(np.abs(coeffs).max()) if len(coeffs) else 1.0
    return CoefficientVector(int(q), support, coeffs, float(cap))


def shifted_primes(q: int, interval: PrimeInterval, shift: int) -> tuple[CoefficientVector, int]:
    """Indicator of {p + shift : p in interval}, skipping p + shift = 0 mod q.

    Returns the vector and the number of skipped primes.
    """
    vals = np.asarray(interval.primes, dtype=np.int64) + int(shift)
    keep = vals % q != 0
    return coefficient_vector(q, vals[keep], cap=1.0), int((~keep).sum())


@dataclass(frozen=True, eq=False)
class SumProfile:
    basis: CharacterBasis
    sums: np.ndarray
    cap: float = 1.0
    window: tuple[int, int] = (0, 0)
    l1: float = 0.0  # sum of |a_n|, scale for the zero threshold

    @property
    def magnitudes(self) -> np.ndarray:
        return np.abs(self.sums)

    @property
    def q(self) -> int:
        return self.basis.q


def fold(basis: CharacterBasis, coeffs: CoefficientVector) -> np.ndarray:
    """b_t = sum of a_n over n with ind(n) = t."""
    t = basis.index[coeffs.support % basis.q]
    re = np.bincount(t, weights=coeffs.coeffs.real, minlength=basis.order)
    im = np.bincount(t, weights=coeffs.coeffs.imag, minlength=basis.order)
    return re + 1j * im


def all_character_sums(basis: CharacterBasis, coeffs: CoefficientVector) -> SumProfile:
    if coeffs.q != basis.q:
        raise ArgumentError(f"coefficients are mod {coeffs.q}, basis is mod {basis.q}")
    b = fold(basis, coeffs)
    sums = basis.order * np.fft.ifft(b)
    sums[0] = coeffs.coeffs.sum()
    return SumProfile(
        basis, sums, coeffs.cap, coeffs.window, float(np.abs(coeffs.coeffs).sum())
    )


def shifted_prime_sum(basis: CharacterBasis, j: int, interval: PrimeInterval, shift: int):
    """``(sum over p in interval of chi_j(p + shift), skipped)``."""
    if not 0 <= j < basis.order:
        raise ArgumentError(f"character index {j} outside [0, {basis.order - 1}]")
    if math.gcd(int(shift), basis.q) != 1:
        raise ArgumentError(f"shift {shift} is not coprime to q={basis.q}")
    vec, skipped = shifted_primes(basis.q, interval, shift)
    value = complex(basis.chi(j, vec.support).sum()) if len(vec.support) else 0j
    return value, skipped


def large_value_count(profile: SumProfile, V: float) -> int:
    """Number of nonprincipal characters with |sum| >= V."""
    if V <= 0:
        raise ArgumentError("V must be positive")
    return int((profile.magnitudes[1:] >= V).sum())


@dataclass
class LevelSetCensus:
    levels: list[tuple[float, int]]  # (V, #{chi != chi0 : V <= |S| < 2V})
    at_least: list[tuple[float, int]]  # (V, #{chi != chi0 : |S| >= V})
    zero_count: int
    nonprincipal: int

    def to_dict(self):
        return {
            "levels": [{"V": v, "R": r} for v, r in self.levels],
            "at_least": [{"V": v, "R": r} for v, r in self.at_least],
            "zero_count": self.zero_count,
        }


def zero_threshold(profile: SumProfile, rel_tol: float = REL_TOL) -> float:
    """Magnitudes at or below this count as exact zeros."""
    return rel_tol * max(1.0, profile.l1)


def dyadic_exponents(mags: np.ndarray) -> np.ndarray:
    """floor(log2 x) for positive x, exact via the binary exponent."""
    _, e = np.frexp(mags)
    return e.astype(np.int64) - 1


def census(profile: SumProfile, rel_tol: float = REL_TOL) -> LevelSetCensus:
    """Dyadic level sets V <= |S(chi)| < 2V of the nonprincipal characters."""
    mags = profile.magnitudes[1:]
    nz = mags > zero_threshold(profile, rel_tol)
    zero = int((~nz).sum())
    if not nz.any():
        return LevelSetCensus([], [], zero, len(mags))
    e = dyadic_exponents(mags[nz])
    lo, hi = int(e.min()), int(e.max())
    counts = np.bincount(e - lo, minlength=hi - lo + 1)
    tail = np.cumsum(counts[::-1])[::-1]
    levels = [(math.ldexp(1.0, lo + i), int(c)) for i, c in enumerate(counts)]
    at_least = [(math.ldexp(1.0, lo + i), int(c)) for i, c in enumerate(tail)]
    return LevelSetCensus(levels, at_least, zero, len(mags))


@dataclass
class HuxleyReport:
    V: float
    N: float
    ell: int
    R: int
    bound: float
    ratio: float
    nontrivial: bool  # V > N^(3/4) and N < q
    long_window: bool  # N >= q

    def to_dict(self):
        return dict(self.__dict__)


def huxley_ratio(profile: SumProfile, V: float, N: float, ell: int = 1, cap_slack: float = 1.0):
    """Observed R(V) over N^(2l)/V^(2l) + q N^(4l)/V^(6l)."""
    if not 0 < V <= N:
        raise ArgumentError(f"need 0 < V <= N, got V={V}, N={N}")
    if ell < 1:
        raise ArgumentError("moment index ell must be >= 1")
    if profile.cap > cap_slack * (1 + 1e-12):
        raise ArgumentError(f"coefficient cap {profile.cap} exceeds {cap_slack}")
    R = large_value_count(profile, V)
    x = N / V
    bound = x ** (2 * ell) + profile.q * N ** (4 * ell) / V ** (6 * ell)
    q = profile.q
    return HuxleyReport(V, N, ell, R, bound, R / bound, V > N**0.75 and N < q, N >= q)


def moment(profile: SumProfile, order: int) -> float:
    """Sum over all q-1 characters (principal included) of |S|^order."""
    if order < 2 or order % 2:
        raise ArgumentError(f"moment order must be even and >= 2, got {order}")
    m = profile.magnitudes
    return float(np.sum((m * m) ** (order // 2)))


@dataclass
class CongruenceCount:
    count: int
    character_value: complex
    residual: float
    enumerated: int | None
    tol: float = INT_RESIDUAL

    @property
    def agrees(self) -> bool:
        return self.residual < self.tol and (
            self.enumerated is None or self.enumerated == self.count
        )


def interval_residues(q: int, interval: PrimeInterval) -> np.ndarray:
    """p - 1 mod q for p in interval, dropping p = 1 mod q."""
    r = (np.asarray(interval.primes, dtype=np.int64) - 1) % q
    return r[r != 0]


def enumerate_count(q: int, residue_lists, a: int) -> int:
    """Count tuples with product = a mod q by listing every tuple's residue."""
    acc = np.ones(1, dtype=np.int64)
    for r in residue_lists:
        acc = (acc[:, None] * np.asarray(r, dtype=np.int64)[None, :] % q).reshape(-1)
    return int((acc == a % q).sum())


def character_count(basis: CharacterBasis, residue_lists, a: int) -> complex:
    """(1/(q-1)) sum_j conj(chi_j(a)) prod_i S_i(chi_j)."""
    prod = np.ones(basis.order, dtype=complex)
    for r in residue_lists:
        prod *= all_character_sums(basis, coefficient_vector(basis.q, r)).sums
    weights = np.conj(basis.chi(np.arange(basis.order), a))
    return complex(np.dot(weights, prod) / basis.order)


def congruence_count(
    basis: CharacterBasis,
    intervals,
    a: int,
    max_enumeration: int = MAX_ENUMERATION,
    residual_tol: float = INT_RESIDUAL,
) -> CongruenceCount:
    """Tuples (p_1..p_m) in I_1 x ... x I_m with prod (p_j - 1) = a mod q."""
    q = basis.q
    if a % q == 0:
        raise ArgumentError(f"a={a} must be coprime to q={q}")
    lists = [interval_residues(q, iv) for iv in intervals]
    value = character_count(basis, lists, a)
    count = round(value.real)
    residual = max(abs(value.real - count), abs(value.imag))
    size = math.prod(len(r) for r in lists)
    enumerated = enumerate_count(q, lists, a) if size <= max_enumeration else None
    return CongruenceCount(int(count), value, residual, enumerated, residual_tol)


def profile_record(profile: SumProfile, cen: LevelSetCensus | None = None, moments=None, **extra):
    """JSON-ready dict: {schema_version, q, support_window, levels, moments, ...}."""
    cen = cen if cen is not None else census(profile)
    rec = {
        "schema_version": SCHEMA_VERSION,
        "q": profile.q,
        "support_window": list(profile.window),
        "levels": [{"V": v, "R": r} for v, r in cen.levels],
        "moments": {str(k): v for k, v in (moments or {}).items()},
    }
    rec.update(extra)
    return rec
