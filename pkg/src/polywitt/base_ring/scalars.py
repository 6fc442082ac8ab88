"""Truncated Witt vectors W_n(F_q) in Witt coordinates.

Sums and products are the universal polynomials S_i, P_i evaluated at the
given coordinates.  Rather than expanding S_i and P_i (which explode for
p = 5, n >= 4) the evaluation runs the same ghost recursion that defines
them, on integer lifts of the coordinates in (Z/p^n)[t]/(f), and reduces
mod p at the end.  Results are memoized per operand pair.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..errors import DivisibilityError, ParameterMismatch, RangeError
from .fields import FiniteField
from .polynomials import MAX_LENGTH

Coords = tuple[int, ...]


# -- lifted coefficient ring (Z/p^N)[t]/(modulus) -------------------------------
# elements are tuples of d ints; d = 1 is the plain ring Z/p^N

def _lmul(a, b, field: FiniteField, mod: int):
    d = field.d
    if d == 1:
        return ((a[0] * b[0]) % mod,)
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    f = field.modulus
    for k in range(2 * d - 2, d - 1, -1):
        c = prod[k]
        if c:
            for j in range(d):
                prod[k - d + j] -= c * f[j]
    return tuple(c % mod for c in prod[:d])


def _lpow(a, e: int, field: FiniteField, mod: int):
    result = (1,) + (0,) * (field.d - 1)
    while e:
        if e & 1:
            result = _lmul(result, a, field, mod)
        e >>= 1
        if e:
            a = _lmul(a, a, field, mod)
    return result


def _ladd(a, b, mod: int):
    return tuple((x + y) % mod for x, y in zip(a, b))


def _lsub(a, b, mod: int):
    return tuple((x - y) % mod for x, y in zip(a, b))


def _ghost_vector(xs, field, mod):
    p = field.p
    out = []
    for i in range(len(xs)):
        w = (0,) * field.d
        for j in range(i + 1):
            t = _lpow(xs[j], p ** (i - j), field, mod)
            w = _ladd(w, tuple(p**j * c for c in t), mod)
        out.append(w)
    return out


def _solve_ghost(targets, field, mod):
    p = field.p
    out = []
    for i, t in enumerate(targets):
        rest = t
        for j in range(i):
            term = _lpow(out[j], p ** (i - j), field, mod)
            rest = _lsub(rest, tuple(p**j * c for c in term), mod)
        if any(c % p**i for c in rest):
            raise DivisibilityError(f"ghost recursion not divisible by p^{i}")
        out.append(tuple(c // p**i for c in rest))
    return out


def _lift(field: FiniteField, coords: Coords):
    return [tuple(field.to_coeffs(c)) for c in coords]


def _reduce(field: FiniteField, values) -> Coords:
    return tuple(field.from_coeffs(v) for v in values)


@lru_cache(maxsize=None)
def _add_coords(field: FiniteField, a: Coords, b: Coords) -> Coords:
    mod = field.p ** len(a)
    xs, ys = _lift(field, a), _lift(field, b)
    wx, wy = _ghost_vector(xs, field, mod), _ghost_vector(ys, field, mod)
    return _reduce(field, _solve_ghost([_ladd(u, v, mod) for u, v in zip(wx, wy)], field, mod))


@lru_cache(maxsize=None)
def _mul_coords(field: FiniteField, a: Coords, b: Coords) -> Coords:
    mod = field.p ** len(a)
    xs, ys = _lift(field, a), _lift(field, b)
    wx, wy = _ghost_vector(xs, field, mod), _ghost_vector(ys, field, mod)
    return _reduce(field, _solve_ghost([_lmul(u, v, field, mod) for u, v in zip(wx, wy)],
                                       field, mod))


@lru_cache(maxsize=None)
def _neg_coords(field: FiniteField, a: Coords) -> Coords:
    out = [0] * len(a)
    for i in range(len(a)):
        s = _add_coords(field, a, tuple(out))
        out[i] = field.neg(s[i])
    return tuple(out)


# -- public type ----------------------------------------------------------------

@dataclass(frozen=True)
class WittScalar:
    """An element of W_n(F_q); ``n = len(coords)`` and n = 0 is the zero ring."""

    field: FiniteField
    coords: Coords

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return len(self.coords)

    def _check(self, other: "WittScalar") -> None:
        if not isinstance(other, WittScalar):
            raise TypeError(f"expected WittScalar, got {type(other).__name__}")
        if self.field != other.field or self.n != other.n:
            raise ParameterMismatch(
                f"W_{self.n}(F_{self.q}) vs W_{other.n}(F_{other.q})")

    def __add__(self, other):
        if isinstance(other, int):
            other = WittScalar.from_int(self.field, self.n, other)
        self._check(other)
        if not self.n:
            return self
        return WittScalar(self.field, _add_coords(self.field, self.coords, other.coords))

    __radd__ = __add__

    def __neg__(self):
        if not self.n:
            return self
        return WittScalar(self.field, _neg_coords(self.field, self.coords))

    def __sub__(self, other):
        if isinstance(other, int):
            other = WittScalar.from_int(self.field, self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = WittScalar.from_int(self.field, self.n, other)
        self._check(other)
        if not self.n:
            return self
        return WittScalar(self.field, _mul_coords(self.field, self.coords, other.coords))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "WittScalar":
        result = WittScalar.one(self.field, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_unit(self) -> bool:
        return self.n > 0 and self.coords[0] != 0

    def valuation(self) -> int:
        """Index of the first nonzero coordinate (n for zero).

        For perfect k this is the p-adic valuation.
        """
        return next((i for i, c in enumerate(self.coords) if c), self.n)

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, field: FiniteField, n: int) -> "WittScalar":
        return cls(field, (0,) * n)

    @classmethod
    def one(cls, field: FiniteField, n: int) -> "WittScalar":
        return cls(field, (1,) + (0,) * (n - 1)) if n else cls(field, ())

    @classmethod
    def from_int(cls, field: FiniteField, n: int, k: int) -> "WittScalar":
        """The image of the integer k under Z -> W_n(F_q)."""
        result = cls.zero(field, n)
        base = cls.one(field, n)
        neg = k < 0
        k = abs(k)
        while k:
            if k & 1:
                result = result + base
            k >>= 1
            if k:
                base = base + base
        return -result if neg else result

    @classmethod
    def make(cls, field: FiniteField, coords) -> "WittScalar":
        coords = tuple(field.element(c) for c in coords)
        if len(coords) > MAX_LENGTH + 1:
            raise RangeError(f"length {len(coords)} > {MAX_LENGTH}")
        return cls(field, coords)

    # -- truncation and padding -------------------------------------------
    def restrict(self, n: int | None = None) -> "WittScalar":
        """Drop trailing coordinates down to length n (default n - 1)."""
        n = self.n - 1 if n is None else n
        if n < 0 or n > self.n:
            raise RangeError(f"cannot restrict length {self.n} to {n}")
        return WittScalar(self.field, self.coords[:n])

    def pad(self, n: int) -> "WittScalar":
        """Set-theoretic lift to length n >= self.n by appending zeros."""
        if n < self.n:
            raise RangeError(f"cannot pad length {self.n} to {n}")
        return WittScalar(self.field, self.coords + (0,) * (n - self.n))

    def resize(self, n: int) -> "WittScalar":
        return self.restrict(n) if n <= self.n else self.pad(n)

    def frobenius(self, times: int = 1) -> "WittScalar":
        if self.field.d == 1 or times % self.field.d == 0:
            return self
        return WittScalar(self.field, tuple(self.field.frobenius(c, times) for c in self.coords))

    def to_dict(self) -> dict:
        out = {"p": self.p, "n": self.n, "q": self.q,
               "coords": [self.field.serialize(c) for c in self.coords]}
        if self.field.d > 1:
            out["modulus"] = list(self.field.modulus)
        return out

    def __repr__(self) -> str:
        return f"W{self.n}({', '.join(map(str, self.coords))})"


# -- named operations -----------------------------------------------------------

def scalar_add(a: WittScalar, b: WittScalar) -> WittScalar:
    return a + b


def scalar_mul(a: WittScalar, b: WittScalar) -> WittScalar:
    return a * b


def scalar_frobenius(a: WittScalar) -> WittScalar:
    """Coordinatewise a_i -> a_i^p; the identity when q = p."""
    return a.frobenius(1)


def scalar_verschiebung(a: WittScalar) -> WittScalar:
    """(a_0, ..., a_{n-1}) -> (0, a_0, ..., a_{n-1}), raising the length by one."""
    return WittScalar(a.field, (0,) + a.coords)


def scalar_restrict(a: WittScalar) -> WittScalar:
    if a.n < 1:
        raise RangeError("W_0 has no restriction")
    return a.restrict()


def teichmuller_scalar(field: FiniteField, c: int, n: int) -> WittScalar:
    return WittScalar(field, ((field.element(c),) + (0,) * (n - 1)) if n else ())


def _require_prime_field(a_field: FiniteField) -> None:
    if a_field.d != 1:
        raise ParameterMismatch("Z/p^n comparison needs q = p")


def teichmuller_zpn(p: int, n: int, c: int) -> int:
    """omega(c) = c^(p^(n-1)) mod p^n."""
    return pow(c, p ** (n - 1), p**n) if n else 0


def to_zpn(a: WittScalar) -> int:
    """The isomorphism W_n(F_p) -> Z/p^n, a -> sum p^i omega(a_i)."""
    _require_prime_field(a.field)
    p, n = a.p, a.n
    return sum(p**i * teichmuller_zpn(p, n, c) for i, c in enumerate(a.coords)) % p**n


def from_zpn(field: FiniteField, n: int, x: int) -> WittScalar:
    _require_prime_field(field)
    p = field.p
    coords = []
    x %= p**n
    for i in range(n):
        mod = p ** (n - i)
        c = x % p
        coords.append(c)
        rest = (x - teichmuller_zpn(p, n - i, c)) % mod
        assert rest % p == 0
        x = rest // p
    return WittScalar(field, tuple(coords))
