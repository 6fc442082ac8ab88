"""Small finite fields F_q, q = p^d with d <= 2.

Elements are plain ints in ``range(q)``.  For d = 2 the int ``c0 + c1*p``
stands for ``c0 + c1*t`` modulo the user-supplied irreducible polynomial.
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from ..errors import RangeError

SUPPORTED_PRIMES = (2, 3, 5)
MAX_DEGREE = 2


def check_prime(p: int) -> int:
    if p not in SUPPORTED_PRIMES:
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise RangeError(f"{p} is not a prime")
        raise RangeError(f"p={p} unsupported; choose one of {SUPPORTED_PRIMES}")
    return p


class FiniteField:
    """The field F_p[t]/(modulus).

    ``modulus`` lists the coefficients of a monic polynomial from the constant
    term upwards, e.g. ``(1, 1, 1)`` for t^2 + t + 1.  Omit it for F_p.
    """

    def __init__(self, p: int, modulus: Sequence[int] | None = None):
        self.p = check_prime(p)
        if modulus is None or len(modulus) <= 2:
            # degree <= 1 moduli give the prime field
            modulus = (0, 1)
        modulus = tuple(int(c) % p for c in modulus)
        if modulus[-1] != 1:
            raise RangeError("modulus must be monic")
        self.modulus = modulus
        self.d = len(modulus) - 1
        if self.d > MAX_DEGREE:
            raise RangeError(f"extension degree {self.d} > {MAX_DEGREE} unsupported")
        if self.d == 2 and any(self._eval_modulus(x) == 0 for x in range(p)):
            raise RangeError(f"modulus {modulus} is reducible over F_{p}")
        self.q = p**self.d
        self._add, self._mul = self._build_tables()
        self._neg = [self._find(lambda y, x=x: self._add[x][y] == 0) for x in range(self.q)]
        self._inv = [0] + [self._find(lambda y, x=x: self._mul[x][y] == 1) for x in range(1, self.q)]

    def _eval_modulus(self, x: int) -> int:
        return sum(c * x**k for k, c in enumerate(self.modulus)) % self.p

    def _find(self, pred) -> int:
        return next(y for y in range(self.q) if pred(y))

    def _build_tables(self):
        p, d, q = self.p, self.d, self.q
        vecs = [self.to_coeffs(x) for x in range(q)]
        add = [[self.from_coeffs([(a + b) % p for a, b in zip(vecs[x], vecs[y])])
                for y in range(q)] for x in range(q)]
        mul = [[0] * q for _ in range(q)]
        for x in range(q):
            for y in range(q):
                prod = [0] * (2 * d - 1)
                for i, a in enumerate(vecs[x]):
                    for j, b in enumerate(vecs[y]):
                        prod[i + j] += a * b
                mul[x][y] = self.from_coeffs(_reduce(prod, self.modulus, p))
        return add, mul

    # -- encoding --------------------------------------------------------
    def to_coeffs(self, x: int) -> list[int]:
        out = []
        for _ in range(self.d):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def from_coeffs(self, coeffs: Iterable[int]) -> int:
        x = 0
        for k, c in enumerate(coeffs):
            x += (int(c) % self.p) * self.p**k
        return x

    def element(self, value) -> int:
        """Coerce an int (d = 1) or a coefficient list (any d)."""
        if isinstance(value, (list, tuple)):
            if len(value) > self.d:
                raise RangeError(f"too many coefficients for F_{self.q}")
            return self.from_coeffs(value)
        if self.d == 1:
            return int(value) % self.p
        value = int(value)
        if not 0 <= value < self.q:
            raise RangeError(f"{value} is not a code for an element of F_{self.q}")
        return value

    def serialize(self, x: int):
        return x if self.d == 1 else self.to_coeffs(x)

    # -- arithmetic ------------------------------------------------------
    def add(self, x: int, y: int) -> int:
        return self._add[x][y]

    def sub(self, x: int, y: int) -> int:
        return self._add[x][self._neg[y]]

    def neg(self, x: int) -> int:
        return self._neg[x]

    def mul(self, x: int, y: int) -> int:
        return self._mul[x][y]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[x]

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv(x), -e
        result, base = 1, x
        while e:
            if e & 1:
                result = self._mul[result][base]
            base = self._mul[base][base]
            e >>= 1
        return result

    def frobenius(self, x: int, times: int = 1) -> int:
        """x -> x^(p^times); negative ``times`` inverts the Frobenius."""
        times %= self.d
        return self._frob_table[times][x]

    @cached_property
    def _frob_table(self):
        tables = [list(range(self.q))]
        for _ in range(1, self.d):
            prev = tables[-1]
            tables.append([self._pow_plain(prev[x], self.p) for x in range(self.q)])
        return tables

    def _pow_plain(self, x: int, e: int) -> int:
        result = 1
        for _ in range(e):
            result = self._mul[result][x]
        return result

    def elements(self) -> range:
        return range(self.q)

    # -- identity --------------------------------------------------------
    def _key(self):
        return (self.p, self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        if self.d == 1:
            return f"FiniteField({self.p})"
        return f"FiniteField({self.p}, modulus={list(self.modulus)})"

    def to_dict(self) -> dict:
        out = {"p": self.p, "q": self.q}
        if self.d > 1:
            out["modulus"] = list(self.modulus)
        return out


def _reduce(coeffs: list[int], modulus: tuple[int, ...], p: int) -> list[int]:
    d = len(modulus) - 1
    coeffs = [c % p for c in coeffs]
    for k in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[k]
        if c:
            for j in range(d + 1):
                coeffs[k - d + j] = (coeffs[k - d + j] - c * modulus[j]) % p
    return (coeffs + [0] * d)[:d]


def prime_field(p: int) -> FiniteField:
    return FiniteField(p)
