"""Tate cohomology of cyclic p-groups acting on free modules with word bases.

Setting: words of length p^L over an alphabet of size b, acted on by the
rotations by multiples of p^j (a cyclic group H of order p^(L-j)), with
coefficients in W_n(F_q), n >= L - j.  A word whose full rotation period is
p^i has H-stabilizer of order p^(L-e) with e = max(i, j), so its orbit
contributes a copy of W_{L-e}(k) to Ȟ⁰(H, -) and nothing when e >= L.

Keys.  An H-orbit is determined by the first p^e letters of any of its
words; the key is the least rotation of that block by multiples of p^j.  For
j = 0 the key of an orbit of period p^i is its primitive aperiodic necklace.

Stored coordinates.  A class keeps, per key, F^-(L-j) of the coefficient of
an invariant representative at the orbit's words (the "literal"
coefficient), truncated to W_{L-e}.  With this normalisation restriction is
truncation, the scalar action is componentwise and, for E = k, F and V are
the classical Frobenius and Verschiebung.  For q = p the twist is inert.
"""
from __future__ import annotations

from functools import cached_property
from typing import Callable, Iterable, Mapping

from .base_ring import FiniteField, WittScalar, from_zpn, to_zpn
from .base_ring.polynomials import MAX_LENGTH
from .errors import NotInvariant, ParameterMismatch, RangeError, SchemaError
from .linalg import ModuleShape
from .orbits import Word, aperiodic_words, check_cap, least_rotation, period_exponent, rotate

DENSE_CAP = 2**16


class TateSpace:
    """Ȟ⁰ of rotation-by-p^j on words of length p^L over b letters."""

    def __init__(self, field: FiniteField, b: int, L: int, j: int = 0):
        if b < 0:
            raise RangeError("alphabet size must be >= 0")
        if not 0 <= j <= L:
            raise RangeError(f"need 0 <= j <= L, got j={j}, L={L}")
        if L > MAX_LENGTH:
            raise RangeError(f"L={L} exceeds the supported maximum {MAX_LENGTH}")
        self.field, self.b, self.L, self.j = field, b, L, j

    # identity -------------------------------------------------------------
    def _key(self):
        return (self.field, self.b, self.L, self.j)

    def __eq__(self, other) -> bool:
        return isinstance(other, TateSpace) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"TateSpace(q={self.q}, b={self.b}, L={self.L}, j={self.j})"

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        """Coefficient length of the default invariant representatives."""
        return self.L - self.j

    @property
    def twist(self) -> int:
        return self.L - self.j

    def with_(self, **changes) -> "TateSpace":
        args = dict(field=self.field, b=self.b, L=self.L, j=self.j)
        args.update(changes)
        return TateSpace(**args)

    # keys -----------------------------------------------------------------
    @cached_property
    def keys(self) -> tuple[Word, ...]:
        p, j = self.p, self.j
        out: list[Word] = []
        if self.j < self.L:
            check_cap(self.b, p**j)
            out.extend(_all_words(self.b, p**j))
        for e in range(j + 1, self.L):
            step = p**j
            for nu in aperiodic_words(self.b, p, e):
                seen = {least_rotation(rotate(nu, t), step) for t in range(step)}
                out.extend(sorted(seen))
        return tuple(out)

    @cached_property
    def index(self) -> dict[Word, int]:
        return {k: n for n, k in enumerate(self.keys)}

    def exponent(self, block: Word) -> int:
        e, size = 0, 1
        while size < len(block):
            size *= self.p
            e += 1
        return e

    def period(self, block: Word) -> int:
        return period_exponent(block, self.p)

    def length(self, block: Word) -> int:
        return self.L - self.exponent(block)

    @cached_property
    def lengths(self) -> tuple[int, ...]:
        return tuple(self.length(k) for k in self.keys)

    @property
    def module_length(self) -> int:
        return sum(self.lengths)

    def key_for(self, word: Word) -> Word | None:
        """H-orbit key of a word of length p^L, or None if its orbit is free."""
        p = self.p
        e = max(period_exponent(word, p), self.j)
        if e >= self.L:
            return None
        return least_rotation(word[: p**e], p**self.j)

    def full_word(self, block: Word) -> Word:
        return block * (self.p**self.L // len(block))

    def orbit(self, block: Word) -> list[Word]:
        """All words of length p^L in the H-orbit of a key."""
        p, e = self.p, self.exponent(block)
        w = self.full_word(block)
        return [rotate(w, p**self.j * t) for t in range(p ** max(e - self.j, 0))]

    def zero(self) -> "TateClass":
        return TateClass(self, {})

    def basis(self) -> list["TateClass"]:
        """Canonical generators: one component with coefficient 1."""
        return [TateClass(self, {k: WittScalar.one(self.field, n)})
                for k, n in zip(self.keys, self.lengths)]

    def shape(self, N: int | None = None) -> ModuleShape:
        return ModuleShape(self.p, self.lengths, self.L if N is None else N)


def _all_words(b: int, length: int) -> list[Word]:
    import itertools

    return [tuple(w) for w in itertools.product(range(b), repeat=length)]


def literal_to_stored(c: WittScalar, space: TateSpace) -> WittScalar:
    return c.frobenius(-space.twist)


def stored_to_literal(c: WittScalar, space: TateSpace) -> WittScalar:
    return c.frobenius(space.twist)


class TateClass:
    """An element of Ȟ⁰(H, W[S]) in stored coordinates (sparse, normal form)."""

    __slots__ = ("space", "_comps")

    def __init__(self, space: TateSpace, comps: Mapping[Word, WittScalar] | Iterable = ()):
        items = comps.items() if isinstance(comps, Mapping) else comps
        clean: dict[Word, WittScalar] = {}
        for key, c in items:
            key = tuple(key)
            if key not in space.index:
                raise RangeError(f"{key} is not a component key of {space}")
            n = space.length(key)
            if c.field != space.field:
                raise ParameterMismatch("coefficient field differs from the space")
            if c.n != n:
                raise ParameterMismatch(f"component {key} needs length {n}, got {c.n}")
            if not c.is_zero():
                clean[key] = c
        self.space = space
        self._comps = clean

    # access -----------------------------------------------------------------
    def items(self) -> list[tuple[Word, WittScalar]]:
        return sorted(self._comps.items(), key=lambda kv: self.space.index[kv[0]])

    def coeff(self, key: Word) -> WittScalar:
        c = self._comps.get(tuple(key))
        return c if c is not None else WittScalar.zero(self.space.field, self.space.length(key))

    def support(self) -> list[Word]:
        return [k for k, _ in self.items()]

    def literal(self, word: Word, n: int | None = None) -> WittScalar:
        """Coefficient of the zero-padded invariant representative at ``word``."""
        sp = self.space
        n = sp.n if n is None else n
        key = sp.key_for(word)
        if key is None or key not in self._comps:
            return WittScalar.zero(sp.field, n)
        return stored_to_literal(self._comps[key], sp).pad(n)

    @classmethod
    def from_literal(cls, space: TateSpace, fn: Callable[[Word], WittScalar]) -> "TateClass":
        """Class of the invariant vector whose coefficient at the words of the
        orbit of each key is ``fn(full_word(key))``."""
        comps = {}
        for key, n in zip(space.keys, space.lengths):
            c = fn(space.full_word(key))
            if c.n < n:
                raise RangeError("literal coefficient shorter than the component")
            c = literal_to_stored(c.restrict(n), space)
            if not c.is_zero():
                comps[key] = c
        return cls(space, comps)

    @classmethod
    def from_word_literals(cls, space: TateSpace,
                           literals: Mapping[Word, WittScalar]) -> "TateClass":
        """Sparse version of ``from_literal``: one literal per orbit, any word
        of the orbit; words of free orbits are ignored."""
        comps: dict[Word, WittScalar] = {}
        for w, c in literals.items():
            key = space.key_for(w)
            if key is None or key in comps:
                continue
            n = space.length(key)
            c = literal_to_stored(c.restrict(n), space)
            if not c.is_zero():
                comps[key] = c
        return cls(space, comps)

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "TateClass") -> None:
        if not isinstance(other, TateClass) or other.space != self.space:
            raise ParameterMismatch(f"{self.space} vs {getattr(other, 'space', other)}")

    def __add__(self, other: "TateClass") -> "TateClass":
        self._check(other)
        out = dict(self._comps)
        for k, c in other._comps.items():
            out[k] = out[k] + c if k in out else c
        return TateClass(self.space, out)

    def __neg__(self) -> "TateClass":
        return TateClass(self.space, {k: -c for k, c in self._comps.items()})

    def __sub__(self, other: "TateClass") -> "TateClass":
        return self + (-other)

    def scale(self, a: WittScalar | int) -> "TateClass":
        """Module action of W(k); through F^j on the subgroup levels."""
        sp = self.space
        if isinstance(a, int):
            return TateClass(sp, {k: c * a for k, c in self._comps.items()})
        if a.field != sp.field:
            raise ParameterMismatch("scalar field differs")
        if a.n < sp.n:
            raise ParameterMismatch(f"scalar of length {a.n} cannot act on {sp}")
        a = a.frobenius(sp.j)
        return TateClass(sp, {k: c * a.restrict(c.n) for k, c in self._comps.items()})

    def rotate(self, t: int = 1) -> "TateClass":
        """Residual action of the rotation by t on the class."""
        sp = self.space
        out: dict[Word, WittScalar] = {}
        for k, c in self._comps.items():
            nk = sp.key_for(rotate(sp.full_word(k), t))
            out[nk] = c
        return TateClass(sp, out)

    def is_zero(self) -> bool:
        return not self._comps

    def __bool__(self) -> bool:
        return bool(self._comps)

    def __eq__(self, other) -> bool:
        return isinstance(other, TateClass) and self.space == other.space \
            and self._comps == other._comps

    def __hash__(self) -> int:
        return hash((self.space, tuple(self.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{''.join(map(str, k))}:{c.coords}" for k, c in self.items())
        return f"TateClass(L={self.space.L}, j={self.space.j}, {{{body}}})"

    # linear algebra bridge (q = p) ------------------------------------------
    def to_vector(self, N: int | None = None) -> list[int]:
        sp = self.space
        if sp.field.d != 1:
            raise ParameterMismatch("vector form needs q = p")
        return sp.shape(N).embed([to_zpn(self.coeff(k)) if k in self._comps else 0
                                  for k in sp.keys])

    @classmethod
    def from_vector(cls, space: TateSpace, vec: list[int], N: int | None = None) -> "TateClass":
        p = space.p
        N = space.L if N is None else N
        comps = {}
        for k, n, v in zip(space.keys, space.lengths, vec):
            step = p ** (N - n)
            if v % step:
                raise RangeError("vector is not in the embedded module")
            comps[k] = from_zpn(space.field, n, (v // step) % p**n)
        return cls(space, comps)

    # serialization ----------------------------------------------------------
    def components(self) -> list[tuple[int, Word, WittScalar]]:
        return [(self.space.period(k), k, c) for k, c in self.items()]

    def to_dict(self) -> dict:
        sp = self.space
        out = {"p": sp.p, "m": sp.L, "q": sp.q, "b": sp.b}
        if sp.j:
            out["j"] = sp.j
        if sp.field.d > 1:
            out["modulus"] = list(sp.field.modulus)
        out["components"] = [
            {"i": i, "necklace": list(k), "coeff": [sp.field.serialize(x) for x in c.coords]}
            for i, k, c in self.components()]
        return out

    @classmethod
    def from_dict(cls, data: dict, field: FiniteField | None = None) -> "TateClass":
        try:
            p, m, q, b = int(data["p"]), int(data["m"]), int(data["q"]), int(data["b"])
            j = int(data.get("j", 0))
            comps = data["components"]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad TateClass object: {exc}") from exc
        if field is None:
            field = FiniteField(p, data.get("modulus"))
        if field.p != p or field.q != q:
            raise SchemaError("field does not match p, q")
        space = TateSpace(field, b, m, j)
        out = {}
        for comp in comps:
            try:
                key = tuple(int(c) for c in comp["necklace"])
                coords = comp["coeff"]
                i = int(comp["i"])
            except (KeyError, TypeError, ValueError) as exc:
                raise SchemaError(f"bad component: {exc}") from exc
            if key not in space.index:
                raise SchemaError(f"{list(key)} is not a canonical key")
            if space.period(key) != i:
                raise SchemaError(f"component {list(key)} has i={space.period(key)}, not {i}")
            if len(coords) != space.length(key):
                raise SchemaError(f"component {list(key)} needs {space.length(key)} coordinates")
            out[key] = WittScalar.make(field, coords)
        return cls(space, out)


# -- equivariant vectors ----------------------------------------------------------

class EquivariantVector:
    """A finitely supported map from words of length p^L to W_n(k).

    The group is the rotation by multiples of p^j; the W_n(k)-module
    structure is twisted by F^L, recorded as ``twist``.
    """

    __slots__ = ("space", "n", "coeffs")

    def __init__(self, space: TateSpace, n: int, coeffs: Mapping[Word, WittScalar] = ()):
        self.space, self.n = space, n
        L = space.p**space.L
        clean = {}
        for w, c in dict(coeffs).items():
            w = tuple(w)
            if len(w) != L or any(not 0 <= s < space.b for s in w):
                raise RangeError(f"bad word {w}")
            if c.n != n:
                raise ParameterMismatch(f"coefficient length {c.n} != {n}")
            if not c.is_zero():
                clean[w] = c
        self.coeffs = clean

    @property
    def twist(self) -> int:
        return self.space.L

    def __getitem__(self, word: Word) -> WittScalar:
        return self.coeffs.get(tuple(word), WittScalar.zero(self.space.field, self.n))

    def __add__(self, other: "EquivariantVector") -> "EquivariantVector":
        if other.space != self.space or other.n != self.n:
            raise ParameterMismatch("vectors live in different modules")
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out[w] + c if w in out else c
        return EquivariantVector(self.space, self.n, out)

    def scale(self, a: WittScalar) -> "EquivariantVector":
        """Twisted action a . e = F^L(a) e."""
        a = a.frobenius(self.twist).restrict(self.n)
        return EquivariantVector(self.space, self.n, {w: a * c for w, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, EquivariantVector) and self.space == other.space \
            and self.n == other.n and self.coeffs == other.coeffs

    def group(self) -> list[int]:
        """Rotation amounts of the acting group."""
        sp = self.space
        step = sp.p**sp.j
        return [step * t for t in range(sp.p ** (sp.L - sp.j))]

    def act(self, t: int) -> "EquivariantVector":
        """(g v)(w) = v(g^-1 w) for the rotation g by t."""
        return EquivariantVector(self.space, self.n,
                                 {rotate(w, -t): c for w, c in self.coeffs.items()})

    def is_invariant(self) -> bool:
        step = self.space.p**self.space.j
        return all(self[rotate(w, step)] == c for w, c in self.coeffs.items())


def trace(v: EquivariantVector) -> EquivariantVector:
    """Sum of g.v over the acting group."""
    out: dict[Word, WittScalar] = {}
    for t in v.group():
        for w, c in v.coeffs.items():
            g = rotate(w, -t)
            out[g] = out[g] + c if g in out else c
    return EquivariantVector(v.space, v.n, out)


def project_to_tate(v: EquivariantVector) -> TateClass:
    sp = v.space
    if v.n < sp.n:
        raise RangeError(f"coefficient length {v.n} < {sp.n}; Ȟ⁰ needs n >= L - j")
    if not v.is_invariant():
        raise NotInvariant("vector is not invariant under the acting group")
    return TateClass.from_literal(sp, lambda w: v[w])


def lift_to_invariant(x: TateClass, n: int | None = None) -> EquivariantVector:
    """Canonical section: padded literal coefficient times the orbit sum."""
    sp = x.space
    n = sp.n if n is None else n
    if n < sp.n:
        raise RangeError(f"n={n} < {sp.n}")
    out = {}
    for key, c in x.items():
        lit = stored_to_literal(c, sp).pad(n)
        for w in sp.orbit(key):
            out[w] = lit
    return EquivariantVector(sp, n, out)


def restrict_to_subgroup(x: TateClass) -> TateClass:
    """Class restriction from rotation by p^j to rotation by p^(j+1)."""
    sp = x.space
    if sp.j >= sp.L:
        raise RangeError("the acting group is already trivial")
    target = sp.with_(j=sp.j + 1)
    return TateClass.from_literal(target, lambda w: x.literal(w).restrict(target.n))


def transfer_from_subgroup(y: TateClass) -> TateClass:
    """Transfer from rotation by p^(j+1) to rotation by p^j: sum over the p cosets."""
    sp = y.space
    if sp.j < 1:
        raise RangeError("no larger group to transfer to")
    target = sp.with_(j=sp.j - 1)
    p, step = sp.p, sp.p ** (sp.j - 1)

    def lit(w: Word) -> WittScalar:
        total = WittScalar.zero(sp.field, target.n)
        for t in range(p):
            total = total + y.literal(rotate(w, step * t), target.n)
        return total

    return TateClass.from_literal(target, lit)


def residual_trace(y: TateClass) -> TateClass:
    """Sum of the p residual rotations by multiples of p^(j-1)."""
    sp = y.space
    step = sp.p ** (sp.j - 1)
    total = sp.zero()
    for t in range(sp.p):
        total = total + y.rotate(step * t)
    return total


def module_length(obj) -> int:
    """Length over W(k) of a whole Tate module or of the span of some classes."""
    from .linalg import span_length

    if isinstance(obj, TateSpace):
        return obj.module_length
    classes = list(obj)
    if not classes:
        return 0
    sp = classes[0].space
    return span_length([x.to_vector() for x in classes], sp.p, sp.L)


def check_dense(space: TateSpace, b: int | None = None) -> None:
    b = space.b if b is None else b
    check_cap(b, space.p**space.L, DENSE_CAP)
