"""Universal Witt addition and multiplication polynomials over the integers.

Polynomials are sparse dicts mapping exponent tuples to Python ints, in the
variables X_0..X_{n-1}, Y_0..Y_{n-1} (in that order).  They are produced by
the ghost-component recursion with every division by p^i checked for
exactness.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Mapping

from ..errors import DivisibilityError, RangeError
from .fields import check_prime

MAX_LENGTH = 5

Monomial = tuple[int, ...]


class Poly:
    """Sparse multivariate polynomial with integer coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, int] | None = None):
        self.nvars = nvars
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, nvars: int, k: int) -> "Poly":
        mono = [0] * nvars
        mono[k] = 1
        return cls(nvars, {tuple(mono): 1})

    @classmethod
    def const(cls, nvars: int, c: int) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            return Poly(self.nvars, {m: c * other for m, c in self.terms.items()})
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        result = Poly.const(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def exact_div(self, d: int) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            q, r = divmod(c, d)
            if r:
                raise DivisibilityError(f"coefficient {c} of {m} not divisible by {d}")
            out[m] = q
        return Poly(self.nvars, out)

    def evaluate(self, values, zero, one, add: Callable, mul: Callable, scale: Callable):
        """Evaluate in an arbitrary commutative ring given by callbacks.

        ``scale(c, x)`` multiplies a ring element by the integer ``c``.
        """
        total = zero
        for mono, c in self.terms.items():
            term = one
            for v, e in zip(values, mono):
                for _ in range(e):
                    term = mul(term, v)
            total = add(total, scale(c, term))
        return total

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"Poly({len(self.terms)} terms)"


def ghost(p: int, coords: list) -> list:
    """Ghost components w_i = sum_{j<=i} p^j x_j^(p^(i-j)) of a list of polys."""
    out = []
    for i in range(len(coords)):
        w = coords[0] ** (p**i)
        for j in range(1, i + 1):
            w = w + (coords[j] ** (p ** (i - j))) * (p**j)
        out.append(w)
    return out


@dataclass(frozen=True)
class UniversalWittPolynomials:
    p: int
    n: int
    sum_polys: tuple[Poly, ...]
    prod_polys: tuple[Poly, ...]

    def variables(self) -> tuple[list[Poly], list[Poly]]:
        nv = 2 * self.n
        xs = [Poly.var(nv, k) for k in range(self.n)]
        ys = [Poly.var(nv, self.n + k) for k in range(self.n)]
        return xs, ys

    def check_ghost_identities(self) -> list[str]:
        """Return a description of every ghost identity that fails."""
        xs, ys = self.variables()
        wx, wy = ghost(self.p, xs), ghost(self.p, ys)
        ws, wp = ghost(self.p, list(self.sum_polys)), ghost(self.p, list(self.prod_polys))
        bad = []
        for i in range(self.n):
            if ws[i] != wx[i] + wy[i]:
                bad.append(f"w_{i}(S) != w_{i}(X) + w_{i}(Y)")
            if wp[i] != wx[i] * wy[i]:
                bad.append(f"w_{i}(P) != w_{i}(X) * w_{i}(Y)")
        return bad


def _solve_ghost(p: int, target: list[Poly]) -> list[Poly]:
    out: list[Poly] = []
    for i, t in enumerate(target):
        rest = t
        for j in range(i):
            rest = rest - (out[j] ** (p ** (i - j))) * (p**j)
        out.append(rest.exact_div(p**i))
    return out


_cache: dict[tuple[int, int], UniversalWittPolynomials] = {}
_lock = threading.Lock()


def compute_witt_polynomials(p: int, n: int) -> UniversalWittPolynomials:
    """S_0..S_{n-1} and P_0..P_{n-1}, memoized per (p, n)."""
    check_prime(p)
    if not 1 <= n <= MAX_LENGTH:
        raise RangeError(f"length {n} outside 1..{MAX_LENGTH}")
    key = (p, n)
    with _lock:
        if key not in _cache:
            nv = 2 * n
            xs = [Poly.var(nv, k) for k in range(n)]
            ys = [Poly.var(nv, n + k) for k in range(n)]
            wx, wy = ghost(p, xs), ghost(p, ys)
            sums = _solve_ghost(p, [a + b for a, b in zip(wx, wy)])
            prods = _solve_ghost(p, [a * b for a, b in zip(wx, wy)])
            _cache[key] = UniversalWittPolynomials(p, n, tuple(sums), tuple(prods))
        return _cache[key]
