"""Universal cocycles c_i and the addition law of W_m(E) in Teichmüller terms.

The integral tensor algebra on two letters s0, s1 is modelled by dicts from
words to integers.  The c_i solve

    (s0 + s1)^(⊗p^n) = s0^(⊗p^n) + s1^(⊗p^n) + sum_{i=1..n} sum_{j<p^i} σ^j(c_i^(⊗p^(n-i)))

one orbit at a time, with support on least rotations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DivisibilityError, ParameterMismatch, SchemaError, WittError
from .orbits import Word, check_cap, least_rotation, period_exponent, rotate
from .witt_functor import BasedSpace, WittElement, teichmuller, witt_zero
from .witt_structure import iterate, verschiebung

Tensor = dict[Word, int]


class CocycleMismatch(WittError):
    """The two computations of the addition defect disagree."""


@dataclass(frozen=True)
class UniversalCocycle:
    p: int
    i: int
    terms: tuple[tuple[Word, int], ...]

    @classmethod
    def make(cls, p: int, i: int, terms: Mapping[Word, int]) -> "UniversalCocycle":
        clean = tuple(sorted((tuple(w), c) for w, c in terms.items() if c))
        for w, _ in clean:
            if len(w) != p**i or any(s not in (0, 1) for s in w):
                raise SchemaError(f"bad cocycle word {w}")
        return cls(p, i, clean)

    def as_tensor(self) -> Tensor:
        return dict(self.terms)

    def to_dict(self) -> dict:
        return {"p": self.p, "i": self.i,
                "terms": [{"word": list(w), "coeff": c} for w, c in self.terms]}

    @classmethod
    def from_dict(cls, data: dict) -> "UniversalCocycle":
        try:
            terms = {tuple(int(s) for s in t["word"]): int(t["coeff"]) for t in data["terms"]}
            return cls.make(int(data["p"]), int(data["i"]), terms)
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad UniversalCocycle object: {exc}") from exc


# -- integral tensor algebra ------------------------------------------------------------

def _add_into(acc: Tensor, t: Mapping[Word, int], k: int = 1) -> None:
    for w, c in t.items():
        v = acc.get(w, 0) + k * c
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


def tensor_power(t: Mapping[Word, int], e: int) -> Tensor:
    out: Tensor = {(): 1}
    for _ in range(e):
        nxt: Tensor = {}
        for u, a in out.items():
            for w, c in t.items():
                nxt[u + w] = nxt.get(u + w, 0) + a * c
        out = nxt
    return {w: c for w, c in out.items() if c}


def rotation_sum(t: Mapping[Word, int], count: int) -> Tensor:
    """sum_{j<count} σ^j(t)."""
    out: Tensor = {}
    for j in range(count):
        _add_into(out, {rotate(w, j): c for w, c in t.items()})
    return out


def binomial_defect(p: int, n: int, cocycles: Sequence[UniversalCocycle]) -> Tensor:
    """(s0+s1)^(⊗p^n) - s0^(⊗p^n) - s1^(⊗p^n) - the terms of c_1..c_(n-1)."""
    length = p**n
    check_cap(2, length)
    out: Tensor = {w: 1 for w in itertools.product((0, 1), repeat=length)}
    out.pop((0,) * length)
    out.pop((1,) * length)
    for c in cocycles:
        if c.i >= n:
            break
        _add_into(out, rotation_sum(tensor_power(c.as_tensor(), p ** (n - c.i)), p**c.i), -1)
    return out


def solve_cocycles(p: int, depth: int) -> list[UniversalCocycle]:
    out: list[UniversalCocycle] = []
    for n in range(1, depth + 1):
        bar = binomial_defect(p, n, out)
        if any(bar.get(rotate(w, 1), 0) != c for w, c in bar.items()):
            raise DivisibilityError(f"defect at depth {n} is not rotation invariant")
        terms: Tensor = {}
        for w, c in bar.items():
            rep = least_rotation(w)
            if rep in terms or rep != w:
                continue
            stab = p ** (n - period_exponent(w, p))
            if c % stab:
                raise DivisibilityError(
                    f"coefficient {c} at {w} not divisible by the stabilizer order {stab}")
            terms[rep] = c // stab
        out.append(UniversalCocycle.make(p, n, terms))
    return out


def verify_cocycle_identity(cocycles: Sequence[UniversalCocycle], n: int) -> bool:
    """The defect identity at depth n holds exactly over Z."""
    p = cocycles[0].p
    rest = binomial_defect(p, n, [c for c in cocycles if c.i < n])
    top = next(c for c in cocycles if c.i == n)
    return rotation_sum(top.as_tensor(), p**n) == rest


# -- substitution into E ----------------------------------------------------------------------

def substitute(c: UniversalCocycle, space: BasedSpace, e0: Sequence[int],
               e1: Sequence[int]) -> tuple[int, ...]:
    """c(e0, e1) in E_(i) = E^(⊗p^i), coordinates over words in lexicographic order."""
    f = space.field
    e = (tuple(f.element(x) for x in e0), tuple(f.element(x) for x in e1))
    if any(len(v) != space.dim for v in e):
        raise ParameterMismatch("vectors do not match the space")
    length = p_len = c.p**c.i
    out = []
    for v in itertools.product(range(space.dim), repeat=p_len):
        acc = 0
        for u, coef in c.terms:
            term = f.element(coef % f.p)
            for t in range(length):
                term = f.mul(term, e[u[t]][v[t]])
                if not term:
                    break
            acc = f.add(acc, term)
        out.append(acc)
    return tuple(out)


def truncated_teichmuller_expansion(space: BasedSpace, comps: Sequence[Sequence[int]],
                                    m: int) -> WittElement:
    """sum_{i<m} V^i(T(e_i)) with e_i in E_(i)."""
    if len(comps) != m:
        raise ParameterMismatch(f"need {m} components, got {len(comps)}")
    total = witt_zero(space, m)
    for i, e in enumerate(comps):
        if not any(e):
            continue
        total = total + iterate(verschiebung, teichmuller(space, e, m, level=i), i)
    return total


def addition_defect(space: BasedSpace, e0: Sequence[int], e1: Sequence[int], m: int,
                    cocycles: Sequence[UniversalCocycle] | None = None) -> WittElement:
    """T(e0 + e1) - T(e0) - T(e1), checked against the universal formula."""
    f = space.field
    s = tuple(f.add(f.element(a), f.element(b)) for a, b in zip(e0, e1))
    direct = teichmuller(space, s, m) - teichmuller(space, e0, m) - teichmuller(space, e1, m)
    if cocycles is None:
        cocycles = solve_cocycles(f.p, m - 1) if m > 1 else []
    comps = [(0,) * space.dim]
    for i in range(1, m):
        comps.append(substitute(cocycles[i - 1], space, e0, e1))
    universal = truncated_teichmuller_expansion(space, comps, m)
    if universal != direct:
        raise CocycleMismatch(f"addition defect mismatch for {tuple(e0)}, {tuple(e1)}")
    return direct
