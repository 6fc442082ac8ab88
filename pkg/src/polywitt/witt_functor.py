"""The polynomial Witt vectors functor W_m on based F_q-vector spaces.

An element of W_m(E) is stored as a TateClass for the full rotation group
on words of length p^m over the basis of E.  The same class with the
rotation by p^n gives W^n_m(E) (``level = n``), which is W_{m-n}(E_(n))
read through blocks of length p^n.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .base_ring import FiniteField, WittScalar, teichmuller_scalar
from .errors import ParameterMismatch, RangeError, SchemaError
from .orbits import Word
from .tate import TateClass, TateSpace, check_dense


# -- spaces and maps ---------------------------------------------------------------

@dataclass(frozen=True)
class BasedSpace:
    """A finite-dimensional F_q-vector space with a chosen basis.

    ``factors`` records the dimensions of an ordered tensor product
    (letter index is row-major in the factors); ``None`` for a plain space.
    """

    field: FiniteField
    labels: tuple[str, ...]
    grading: tuple[int, ...] | None = None
    factors: tuple[int, ...] | None = None

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise RangeError("basis labels must be distinct")
        if self.grading is not None and len(self.grading) != len(self.labels):
            raise RangeError("grading needs one degree per basis vector")
        if self.factors is not None:
            size = 1
            for f in self.factors:
                size *= f
            if size != len(self.labels):
                raise RangeError("factor dimensions do not multiply to the dimension")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def q(self) -> int:
        return self.field.q

    @classmethod
    def standard(cls, field: FiniteField, dim: int, prefix: str = "s",
                 grading: Sequence[int] | None = None) -> "BasedSpace":
        return cls(field, tuple(f"{prefix}{k}" for k in range(dim)),
                   None if grading is None else tuple(grading))

    def unit(self) -> "BasedSpace":
        return BasedSpace(self.field, ("1",), (0,) if self.grading is not None else None)

    def dual(self) -> "BasedSpace":
        grading = None if self.grading is None else tuple(-g for g in self.grading)
        return BasedSpace(self.field, tuple(f"{s}*" for s in self.labels), grading, self.factors)

    def tensor(self, other: "BasedSpace") -> "BasedSpace":
        if other.field != self.field:
            raise ParameterMismatch("tensor of spaces over different fields")
        labels = tuple(f"{a}⊗{b}" for a in self.labels for b in other.labels)
        grading = None
        if self.grading is not None and other.grading is not None:
            grading = tuple(g + h for g in self.grading for h in other.grading)
        return BasedSpace(self.field, labels, grading,
                          self.factor_dims() + other.factor_dims())

    def factor_dims(self) -> tuple[int, ...]:
        return self.factors if self.factors is not None else (self.dim,)

    def to_dict(self) -> dict:
        out = {"q": self.q, "labels": list(self.labels)}
        if self.grading is not None:
            out["grading"] = list(self.grading)
        if self.factors is not None:
            out["factors"] = list(self.factors)
        return out

    @classmethod
    def from_dict(cls, data: dict, field: FiniteField) -> "BasedSpace":
        try:
            labels = tuple(str(s) for s in data["labels"])
            q = int(data["q"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad space object: {exc}") from exc
        if q != field.q:
            raise SchemaError(f"space has q={q}, element has q={field.q}")
        grading = data.get("grading")
        factors = data.get("factors")
        return cls(field, labels, None if grading is None else tuple(int(g) for g in grading),
                   None if factors is None else tuple(int(f) for f in factors))


@dataclass(frozen=True)
class LinearMap:
    """Matrix over F_q; rows index the target basis, columns the source basis."""

    source: BasedSpace
    target: BasedSpace
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.source.field != self.target.field:
            raise ParameterMismatch("source and target over different fields")
        if len(self.matrix) != self.target.dim or any(len(r) != self.source.dim
                                                      for r in self.matrix):
            raise ParameterMismatch(
                f"matrix shape does not match {self.target.dim}x{self.source.dim}")

    @classmethod
    def make(cls, source: BasedSpace, target: BasedSpace, rows) -> "LinearMap":
        f = source.field
        return cls(source, target, tuple(tuple(f.element(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, space: BasedSpace) -> "LinearMap":
        return cls(space, space, tuple(tuple(int(i == j) for j in range(space.dim))
                                       for i in range(space.dim)))

    @classmethod
    def zero(cls, source: BasedSpace, target: BasedSpace) -> "LinearMap":
        return cls(source, target, tuple((0,) * source.dim for _ in range(target.dim)))

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        """Composition self o other."""
        if other.target != self.source:
            raise ParameterMismatch("maps are not composable")
        f = self.source.field
        rows = []
        for r in self.matrix:
            row = []
            for c in range(other.source.dim):
                acc = 0
                for k, a in enumerate(r):
                    if a:
                        acc = f.add(acc, f.mul(a, other.matrix[k][c]))
                row.append(acc)
            rows.append(tuple(row))
        return LinearMap(other.source, self.target, tuple(rows))

    def to_dict(self) -> dict:
        f = self.source.field
        out = {"source": self.source.to_dict(), "target": self.target.to_dict(),
               "matrix": [[f.serialize(x) for x in r] for r in self.matrix]}
        if f.d > 1:
            out["modulus"] = list(f.modulus)
        return out

    @classmethod
    def from_dict(cls, data: dict, field: FiniteField | None = None) -> "LinearMap":
        try:
            if field is None:
                q = int(data["source"]["q"])
                p = next(x for x in (2, 3, 5) if q in (x, x * x))
                field = FiniteField(p, data.get("modulus"))
            source = BasedSpace.from_dict(data["source"], field)
            target = BasedSpace.from_dict(data["target"], field)
            return cls.make(source, target, data["matrix"])
        except (KeyError, TypeError, StopIteration) as exc:
            raise SchemaError(f"bad LinearMap object: {exc}") from exc

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        f = self.source.field
        out = []
        for r in self.matrix:
            acc = 0
            for a, x in zip(r, vec):
                acc = f.add(acc, f.mul(a, x))
            out.append(acc)
        return tuple(out)


def evaluation_map(space: BasedSpace) -> LinearMap:
    """E ⊗ E* -> k, s_a ⊗ s_b* -> δ_ab."""
    prod = space.tensor(space.dual())
    d = space.dim
    row = tuple(int(a == b) for a in range(d) for b in range(d))
    return LinearMap(prod, space.unit(), (row,))


def unit_isomorphism(space: BasedSpace, left: bool = True) -> LinearMap:
    """k ⊗ E -> E (left) or E ⊗ k -> E, identity on letters."""
    prod = space.unit().tensor(space) if left else space.tensor(space.unit())
    ident = LinearMap.identity(space)
    return LinearMap(prod, space, ident.matrix)


def swap_map(M: BasedSpace, N: BasedSpace) -> LinearMap:
    """M ⊗ N -> N ⊗ M."""
    src, tgt = M.tensor(N), N.tensor(M)
    rows = []
    for t in range(N.dim):
        for s in range(M.dim):
            rows.append(tuple(int(a == s and b == t) for a in range(M.dim) for b in range(N.dim)))
    return LinearMap(src, tgt, tuple(rows))


# -- elements ----------------------------------------------------------------------

def witt_space(space: BasedSpace, m: int, level: int = 0) -> TateSpace:
    if m < 0:
        raise RangeError("m must be >= 0")
    return TateSpace(space.field, space.dim, m, level)


@dataclass(frozen=True, eq=True)
class WittElement:
    """An element of W_m(E) (level 0) or of W^level_m(E)."""

    space: BasedSpace
    cls: TateClass = dc_field(compare=True)

    def __post_init__(self):
        ts = self.cls.space
        if ts.field != self.space.field or ts.b != self.space.dim:
            raise ParameterMismatch("class does not live over this space")

    @property
    def m(self) -> int:
        return self.cls.space.L

    @property
    def level(self) -> int:
        return self.cls.space.j

    @property
    def field(self) -> FiniteField:
        return self.space.field

    def _check(self, other: "WittElement") -> None:
        if not isinstance(other, WittElement):
            raise TypeError(f"expected WittElement, got {type(other).__name__}")
        if other.space != self.space or other.cls.space != self.cls.space:
            raise ParameterMismatch(
                f"W_{self.m} level {self.level} vs W_{other.m} level {other.level}")

    def __add__(self, other: "WittElement") -> "WittElement":
        self._check(other)
        return WittElement(self.space, self.cls + other.cls)

    def __neg__(self) -> "WittElement":
        return WittElement(self.space, -self.cls)

    def __sub__(self, other: "WittElement") -> "WittElement":
        self._check(other)
        return WittElement(self.space, self.cls - other.cls)

    def mul_int(self, k: int) -> "WittElement":
        return WittElement(self.space, self.cls.scale(k))

    def is_zero(self) -> bool:
        return self.cls.is_zero()

    def components(self) -> list[tuple[int, Word, WittScalar]]:
        return self.cls.components()

    def table(self) -> str:
        rows = []
        for i, key, c in self.components():
            letters = " ".join(self.space.labels[s] for s in key)
            rows.append(f"  i={i}  [{letters}]  {list(c.coords)}")
        return "\n".join(rows) if rows else "  (zero)"

    def to_dict(self) -> dict:
        out = self.cls.to_dict()
        out["space"] = self.space.to_dict()
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "WittElement":
        try:
            sp = data["space"]
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"bad WittElement object: {exc}") from exc
        tc = TateClass.from_dict(data)
        space = BasedSpace.from_dict(sp, tc.space.field)
        if space.dim != tc.space.b:
            raise SchemaError("space dimension differs from the alphabet size b")
        return cls(space, tc)


SubgroupWittElement = WittElement


def witt_zero(space: BasedSpace, m: int, level: int = 0) -> WittElement:
    return WittElement(space, witt_space(space, m, level).zero())


def witt_add(x: WittElement, y: WittElement) -> WittElement:
    return x + y


def witt_neg(x: WittElement) -> WittElement:
    return -x


def scalar_action(a: WittScalar, x: WittElement) -> WittElement:
    if a.field != x.field:
        raise ParameterMismatch("scalar over a different field")
    if a.n != x.m:
        raise ParameterMismatch(f"scalar in W_{a.n} acting on W_{x.m}")
    return WittElement(x.space, x.cls.scale(a))


def basis_elements(space: BasedSpace, m: int, level: int = 0) -> list[WittElement]:
    return [WittElement(space, c) for c in witt_space(space, m, level).basis()]


# -- Teichmüller ---------------------------------------------------------------------

def _word_index(word: Word, b: int) -> int:
    k = 0
    for s in word:
        k = k * b + s
    return k


def _blocks(word: Word, size: int) -> list[Word]:
    return [word[k:k + size] for k in range(0, len(word), size)]


def teichmuller(space: BasedSpace, vec: Sequence, m: int, level: int = 0,
                lift: Sequence[WittScalar] | None = None) -> WittElement:
    """T(e) in W_m(E), or in W^level_m(E) for e in E_(level).

    At level j the vector has one coordinate per word of length p^j over
    the basis (lexicographic order).  ``lift`` replaces the Teichmüller lift of
    the coordinates by arbitrary Witt vectors with the same first coordinate.
    """
    f = space.field
    ts = witt_space(space, m, level)
    check_dense(ts)
    p = f.p
    size = p**level
    dim = space.dim**size
    vec = tuple(f.element(x) for x in vec)
    if len(vec) != dim:
        raise ParameterMismatch(f"vector needs {dim} coordinates, got {len(vec)}")
    n = ts.n
    if lift is not None:
        lift = list(lift)
        if len(lift) != dim or any(l.n != n or l.coords[0] != v for l, v in zip(lift, vec)):
            raise ParameterMismatch("lift does not reduce to the vector")

    def lit(w: Word) -> WittScalar:
        blocks = [_word_index(b, space.dim) for b in _blocks(w, size)]
        if lift is None:
            c = 1
            for k in blocks:
                c = f.mul(c, vec[k])
                if not c:
                    break
            return teichmuller_scalar(f, c, n)
        out = WittScalar.one(f, n)
        for k in blocks:
            out = out * lift[k]
        return out

    return WittElement(space, TateClass.from_literal(ts, lit))


# -- functoriality -------------------------------------------------------------------

def _lifted_matrix(fmap: "LinearMap", n: int, lift) -> list[list[WittScalar]]:
    f = fmap.source.field
    A = fmap.matrix
    if lift is None:
        return [[teichmuller_scalar(f, a, n) for a in row] for row in A]
    lift = [list(r) for r in lift]
    ok = len(lift) == len(A) and all(
        len(lr) == len(r) and all(l.n == n and l.coords[0] == a for l, a in zip(lr, r))
        for lr, r in zip(lift, A))
    if not ok:
        raise ParameterMismatch("matrix lift does not reduce to the map")
    return lift


def _support_literals(x: TateClass) -> dict[Word, WittScalar]:
    sp = x.space
    out = {}
    for key, _ in x.items():
        lam = x.literal(sp.full_word(key))
        for w in sp.orbit(key):
            out[w] = lam
    return out


def apply_map(fmap: LinearMap, x: WittElement,
              lift: Sequence[Sequence[WittScalar]] | None = None) -> WittElement:
    """W_m(f): act by the p^m-fold tensor power of a lift of f and re-project.

    The tensor power is applied one slot at a time on the representative.
    """
    if fmap.source != x.space:
        raise ParameterMismatch("map source differs from the element's space")
    src = x.cls.space
    tgt = src.with_(b=fmap.target.dim)
    check_dense(tgt)
    check_dense(src)
    n = src.n
    lifted = _lifted_matrix(fmap, n, lift)
    vec = _support_literals(x.cls)
    for t in range(src.p**src.L):
        nxt: dict[Word, WittScalar] = {}
        for w, c in vec.items():
            head, s, tail = w[:t], w[t], w[t + 1:]
            for a in range(fmap.target.dim):
                e = lifted[a][s]
                if e.is_zero():
                    continue
                nw = head + (a,) + tail
                v = e * c
                nxt[nw] = nxt[nw] + v if nw in nxt else v
        vec = {w: c for w, c in nxt.items() if not c.is_zero()}
    return WittElement(fmap.target, TateClass.from_word_literals(tgt, vec))


def apply_map_direct(fmap: LinearMap, x: WittElement,
                     lift: Sequence[Sequence[WittScalar]] | None = None) -> WittElement:
    """Same as ``apply_map`` from the closed formula: the coefficient at w is
    sum over support words y of lambda(y) * prod_t A~[w_t][y_t]."""
    if fmap.source != x.space:
        raise ParameterMismatch("map source differs from the element's space")
    f = x.field
    src = x.cls.space
    tgt = src.with_(b=fmap.target.dim)
    check_dense(tgt)
    check_dense(src)
    n = src.n
    lifted = _lifted_matrix(fmap, n, lift)
    support = list(_support_literals(x.cls).items())

    def lit(w: Word) -> WittScalar:
        total = WittScalar.zero(f, n)
        for y, lam in support:
            term = lam
            for a, b in zip(w, y):
                term = term * lifted[a][b]
                if term.is_zero():
                    break
            total = total + term
        return total

    return WittElement(fmap.target, TateClass.from_literal(tgt, lit))


# -- restriction and towers ------------------------------------------------------------

def restrict_class(x: TateClass) -> TateClass:
    """R on W^j_L: truncate every coefficient by one; top components vanish."""
    sp = x.space
    if sp.L - 1 < sp.j:
        raise RangeError(f"cannot restrict W_{sp.L} at level {sp.j}")
    target = sp.with_(L=sp.L - 1)
    comps = {}
    for key, c in x.items():
        if key in target.index:
            comps[key] = c.restrict(target.length(key))
    return TateClass(target, comps)


def restriction(x: WittElement) -> WittElement:
    if x.m < 1:
        raise RangeError("W_0 has no restriction")
    return WittElement(x.space, restrict_class(x.cls))


def restrict_to(x: WittElement, m: int) -> WittElement:
    while x.m > m:
        x = restriction(x)
    return x


@dataclass(frozen=True)
class WittTower:
    """Compatible elements of W_1(E), ..., W_M(E)."""

    levels: tuple[WittElement, ...]

    def __post_init__(self):
        for k, x in enumerate(self.levels):
            if x.m != k + 1 or x.level:
                raise RangeError(f"tower level {k} has m={x.m}")
            if k and restriction(x) != self.levels[k - 1]:
                raise RangeError(f"levels {k} and {k + 1} are not R-compatible")

    @property
    def height(self) -> int:
        return len(self.levels)

    def __getitem__(self, m: int) -> WittElement:
        return self.levels[m - 1]

    def __add__(self, other: "WittTower") -> "WittTower":
        return WittTower(tuple(a + b for a, b in zip(self.levels, other.levels)))

    def scale(self, a: WittScalar) -> "WittTower":
        return WittTower(tuple(scalar_action(a.restrict(x.m), x) for x in self.levels))


def build_tower(top: WittElement) -> WittTower:
    """The tower of restrictions of an element of W_M(E)."""
    levels = [top]
    while levels[-1].m > 1:
        levels.append(restriction(levels[-1]))
    return WittTower(tuple(reversed(levels)))


def tower_element(levels: Sequence[WittElement]) -> WittTower:
    return WittTower(tuple(levels))


# -- gradings ----------------------------------------------------------------------------

def component_degree(space: BasedSpace, key: Word, p: int | None = None) -> Fraction:
    """Degree of the component of a necklace: sum of letter degrees over p^i."""
    if space.grading is None:
        raise RangeError("space is not graded")
    return Fraction(sum(space.grading[s] for s in key), len(key))


def degrees(x: WittElement) -> set[Fraction]:
    return {component_degree(x.space, key) for key, _ in x.cls.items()}


def is_homogeneous(x: WittElement) -> bool:
    return len(degrees(x)) <= 1


def all_vectors(space: BasedSpace) -> list[tuple[int, ...]]:
    return list(itertools.product(range(space.q), repeat=space.dim))
