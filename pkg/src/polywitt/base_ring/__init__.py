"""Finite fields F_q and truncated Witt rings W_n(F_q)."""
from .fields import FiniteField, SUPPORTED_PRIMES, check_prime, prime_field
from .polynomials import MAX_LENGTH, Poly, UniversalWittPolynomials, compute_witt_polynomials, ghost
from .scalars import (
    WittScalar,
    from_zpn,
    scalar_add,
    scalar_frobenius,
    scalar_mul,
    scalar_restrict,
    scalar_verschiebung,
    teichmuller_scalar,
    teichmuller_zpn,
    to_zpn,
)


def scalar_from_dict(data: dict, modulus=None) -> WittScalar:
    from ..errors import SchemaError

    try:
        p, n, q, coords = data["p"], data["n"], data["q"], data["coords"]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad WittScalar object: {exc}") from exc
    field = FiniteField(p, data.get("modulus", modulus))
    if field.q != q or len(coords) != n:
        raise SchemaError("WittScalar fields inconsistent")
    return WittScalar.make(field, coords)


__all__ = [
    "FiniteField", "SUPPORTED_PRIMES", "check_prime", "prime_field",
    "MAX_LENGTH", "Poly", "UniversalWittPolynomials", "compute_witt_polynomials", "ghost",
    "WittScalar", "from_zpn", "to_zpn", "teichmuller_zpn", "scalar_add", "scalar_mul",
    "scalar_frobenius", "scalar_verschiebung", "scalar_restrict", "teichmuller_scalar",
    "scalar_from_dict",
]
