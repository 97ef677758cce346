"""Least totients of residue classes modulo a prime, with character-sum diagnostics."""

__version__ = "0.1.0"

from .arith import (  # noqa: E402
    Modulus,
    PrimeInterval,
    TotientTable,
    euler_phi,
    factorize,
    is_prime,
    primes_in,
    primitive_root,
    sieve_totients,
    totient_segments,
)
from .audit import AuditReport, proof_audit  # noqa: E402
from .charlab import (  # noqa: E402
    CharacterBasis,
    CoefficientVector,
    LevelSetCensus,
    SumProfile,
    all_character_sums,
    build_basis,
    census,
    coefficient_vector,
    congruence_count,
    huxley_ratio,
    large_value_count,
    moment,
    shifted_prime_sum,
    shifted_primes,
)
from .errors import ArgumentError, ResourceError  # noqa: E402
from .witness import (  # noqa: E402
    LeastTotientTable,
    SearchParameters,
    Witness,
    construction_parameters,
    find_witness,
    least_totient_exact,
    least_totient_table,
    product_search,
    trivial_witness,
)
