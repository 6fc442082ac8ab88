"""Structure maps on W_m(E): V, F, C, l, r, cyclic powers, filtrations,
products, the pairing, the trace isomorphism tau and the exact sequences.

Everything is computed on canonical representatives (see ``tate``).  The
linear-algebra checks (kernels, images, coinvariants) go through ``linalg``
and need q = p.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Mapping

from .base_ring import FiniteField, WittScalar, teichmuller_scalar
from .errors import ParameterMismatch, RangeError, SchemaError
from .linalg import Matrix, ModuleShape, hom_kernel, intersection, rank_mod_p, span_length
from .orbits import Word, aperiodic_words, all_necklaces, check_cap, count_aperiodic, \
    count_necklaces, period_exponent, rotate
from .report import Check
from .tate import (TateClass, TateSpace, residual_trace, restrict_to_subgroup,
                   transfer_from_subgroup)
from .witt_functor import (BasedSpace, WittElement, apply_map, evaluation_map,
                           restrict_class, witt_space)


# -- V, F, C on classes and elements --------------------------------------------------

def verschiebung(y: WittElement) -> WittElement:
    """V: W^j_m(E) -> W^(j-1)_m(E), transfer along the index-p subgroup."""
    return WittElement(y.space, transfer_from_subgroup(y.cls))


def frobenius_map(x: WittElement) -> WittElement:
    """F: W^j_m(E) -> W^(j+1)_m(E), restriction to the index-p subgroup."""
    return WittElement(x.space, restrict_to_subgroup(x.cls))


def iterate(fn, x, times: int):
    for _ in range(times):
        x = fn(x)
    return x


def residual_rotation(y: WittElement, t: int = 1) -> WittElement:
    return WittElement(y.space, y.cls.rotate(t))


def residual_sum(y: WittElement) -> WittElement:
    """Sum over the p residual rotations by multiples of p^(level-1)."""
    return WittElement(y.space, residual_trace(y.cls))


def c_class(x: TateClass) -> TateClass:
    """C on W^j_L: coefficient a in W_{L-e} to p times its zero-padding."""
    sp = x.space
    target = sp.with_(L=sp.L + 1)
    comps = {}
    for key, c in x.items():
        a = c.pad(target.length(key))
        comps[key] = a * sp.p
    return TateClass(target, comps)


def c_map(x: WittElement) -> WittElement:
    return WittElement(x.space, c_class(x.cls))


def r_class_power(x: TateClass, times: int) -> TateClass:
    return iterate(restrict_class, x, times)


def c_class_power(x: TateClass, times: int) -> TateClass:
    return iterate(c_class, x, times)


# -- cyclic powers ------------------------------------------------------------------------

COINVARIANTS = "coinvariants"
INVARIANTS = "invariants"


@dataclass(frozen=True)
class CyclicPowerElement:
    """An element of C_(m)(E) (coinvariants) or C^(m)(E) (invariants).

    Coordinates are indexed by primitive necklace blocks: for coinvariants
    the class of a word, for invariants the sum over an orbit.
    """

    variant: str
    field: FiniteField
    b: int
    m: int
    coords: tuple[tuple[Word, int], ...] = dc_field(default=())

    def __post_init__(self):
        if self.variant not in (COINVARIANTS, INVARIANTS):
            raise RangeError(f"unknown variant {self.variant!r}")
        keys = _key_set(self.b, self.field.p, self.m)
        clean = []
        for k, c in sorted(dict(self.coords).items()):
            if tuple(k) not in keys:
                raise RangeError(f"{k} is not a necklace of length p^{self.m}")
            c = self.field.element(c)
            if c:
                clean.append((tuple(k), c))
        object.__setattr__(self, "coords", tuple(clean))

    @classmethod
    def make(cls, variant: str, field: FiniteField, b: int, m: int,
             coords: Mapping[Word, int] = ()) -> "CyclicPowerElement":
        return cls(variant, field, b, m, tuple(dict(coords).items()))

    @property
    def p(self) -> int:
        return self.field.p

    def __getitem__(self, key: Word) -> int:
        return dict(self.coords).get(tuple(key), 0)

    @property
    def keys(self) -> list[Word]:
        return cyclic_keys(self.b, self.p, self.m)

    def _check(self, other: "CyclicPowerElement") -> None:
        if (self.variant, self.field, self.b, self.m) != \
                (other.variant, other.field, other.b, other.m):
            raise ParameterMismatch("cyclic power elements live in different spaces")

    def __add__(self, other: "CyclicPowerElement") -> "CyclicPowerElement":
        self._check(other)
        out = dict(self.coords)
        for k, c in other.coords:
            out[k] = self.field.add(out.get(k, 0), c)
        return CyclicPowerElement.make(self.variant, self.field, self.b, self.m, out)

    def scale(self, a: int) -> "CyclicPowerElement":
        f = self.field
        return CyclicPowerElement.make(self.variant, f, self.b, self.m,
                                       {k: f.mul(f.element(a), c) for k, c in self.coords})

    def is_zero(self) -> bool:
        return not self.coords

    def to_vector(self) -> list[int]:
        d = dict(self.coords)
        return [d.get(k, 0) for k in self.keys]

    def to_dict(self) -> dict:
        out = {"variant": self.variant, "p": self.p, "q": self.field.q, "b": self.b,
               "m": self.m,
               "coords": [{"necklace": list(k), "coeff": self.field.serialize(c)}
                          for k, c in self.coords]}
        if self.field.d > 1:
            out["modulus"] = list(self.field.modulus)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "CyclicPowerElement":
        try:
            field = FiniteField(int(data["p"]), data.get("modulus"))
            coords = {tuple(int(s) for s in c["necklace"]): c["coeff"] for c in data["coords"]}
            return cls.make(data["variant"], field, int(data["b"]), int(data["m"]), coords)
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad CyclicPowerElement object: {exc}") from exc


@lru_cache(maxsize=None)
def cyclic_keys(b: int, p: int, m: int) -> tuple[Word, ...]:
    return tuple(all_necklaces(b, p, m))


@lru_cache(maxsize=None)
def _key_set(b: int, p: int, m: int) -> frozenset:
    return frozenset(cyclic_keys(b, p, m))


def cyclic_dim(b: int, p: int, m: int) -> int:
    return count_necklaces(b, p, m)


def cyclic_basis(variant: str, field: FiniteField, b: int, m: int) -> list[CyclicPowerElement]:
    return [CyclicPowerElement.make(variant, field, b, m, {k: 1})
            for k in cyclic_keys(b, field.p, m)]


def cyclic_trace(c: CyclicPowerElement) -> CyclicPowerElement:
    """C_(m) -> C^(m), w -> sum of g w over G_m, counted word by word."""
    if c.variant != COINVARIANTS:
        raise ParameterMismatch("trace starts from coinvariants")
    p, f = c.p, c.field
    size = p**c.m
    out: dict[Word, int] = {}
    for key, coef in c.coords:
        w = key * (size // len(key))
        counts = Counter(rotate(w, t) for t in range(size))
        # orbit-sum coordinate = multiplicity of any word of the orbit
        out[key] = f.add(out.get(key, 0), f.mul(coef, f.element(counts[w] % p)))
    return CyclicPowerElement.make(INVARIANTS, f, c.b, c.m, out)


def cyclic_c(c: CyclicPowerElement) -> CyclicPowerElement:
    """C_(m) -> C_(m+1), the class of w to the class of w^p."""
    if c.variant != COINVARIANTS:
        raise ParameterMismatch("C acts on coinvariants")
    return CyclicPowerElement.make(COINVARIANTS, c.field, c.b, c.m + 1, dict(c.coords))


def cyclic_r(c: CyclicPowerElement) -> CyclicPowerElement:
    """C^(m+1) -> C^(m): keep the non-free orbit sums, drop the free ones."""
    if c.variant != INVARIANTS or c.m < 1:
        raise ParameterMismatch("R acts on invariants of length p^m, m >= 1")
    p = c.p
    keep = {k: v for k, v in c.coords if len(k) <= p ** (c.m - 1)}
    return CyclicPowerElement.make(INVARIANTS, c.field, c.b, c.m - 1, keep)


def phi(field: FiniteField, b: int, m: int) -> list[CyclicPowerElement]:
    """Basis of Phi_m(E) inside C^(m)(E): orbit sums of the free orbits."""
    check_cap(b, field.p**m)
    return [CyclicPowerElement.make(INVARIANTS, field, b, m, {k: 1})
            for k in aperiodic_words(b, field.p, m)]


def l_map(c: CyclicPowerElement, space: BasedSpace) -> WittElement:
    """C_(m)(E) -> W_{m+1}(E): necklace of period p^i with coefficient c goes
    to the component of that necklace with coefficient p^(m-i) omega(c)."""
    if c.variant != COINVARIANTS:
        raise ParameterMismatch("l starts from coinvariants")
    if c.field != space.field or c.b != space.dim:
        raise ParameterMismatch("cyclic power element over a different space")
    ts = witt_space(space, c.m + 1)
    p = c.p
    comps = {}
    for key, coef in c.coords:
        i = period_exponent(key, p) if len(key) > 1 else 0
        n = ts.length(key)
        comps[key] = teichmuller_scalar(c.field, coef, n) * p ** (c.m - i)
    return WittElement(space, TateClass(ts, comps))


def r_map(x: WittElement) -> CyclicPowerElement:
    """W_{m+1}(E) -> C^(m)(E): first Witt coordinate of every component."""
    if x.level or x.m < 1:
        raise ParameterMismatch("r starts from W_{m+1}(E), m >= 0")
    return CyclicPowerElement.make(INVARIANTS, x.field, x.space.dim, x.m - 1,
                                   {key: c.coords[0] for key, c in x.cls.items()})


# -- submodules (q = p) -----------------------------------------------------------------

@dataclass
class Submodule:
    """A submodule of a Tate module, as rows embedded in (Z/p^N)^keys."""

    space: TateSpace
    gens: Matrix

    @property
    def N(self) -> int:
        return max(self.space.L, 1)

    @classmethod
    def whole(cls, space: TateSpace) -> "Submodule":
        return cls(space, space.shape(max(space.L, 1)).generators())

    @classmethod
    def zero(cls, space: TateSpace) -> "Submodule":
        return cls(space, [])

    @classmethod
    def span(cls, space: TateSpace, classes: Iterable[TateClass]) -> "Submodule":
        N = max(space.L, 1)
        return cls(space, [x.to_vector(N) for x in classes if not x.is_zero()])

    @property
    def length(self) -> int:
        return span_length(self.gens, self.space.p, self.N) if self.space.keys else 0

    def __add__(self, other: "Submodule") -> "Submodule":
        return Submodule(self.space, self.gens + other.gens)

    def meet(self, other: "Submodule") -> "Submodule":
        return Submodule(self.space, intersection(self.gens, other.gens, self.space.p, self.N))

    def times(self, k: int) -> "Submodule":
        mod = self.space.p**self.N
        return Submodule(self.space, [[x * k % mod for x in r] for r in self.gens])

    def __le__(self, other: "Submodule") -> bool:
        return (other + self).length == other.length

    def same(self, other: "Submodule") -> bool:
        return self <= other and other <= self

    def classes(self) -> list[TateClass]:
        return [TateClass.from_vector(self.space, v, self.N) for v in self.gens]


def image(fn, source: TateSpace, target: TateSpace) -> Submodule:
    return Submodule.span(target, (fn(x) for x in source.basis()))


def kernel_of(fn, source: TateSpace, target: TateSpace) -> Submodule:
    """Kernel of a homomorphism given on the canonical generators."""
    if not source.keys:
        return Submodule.zero(source)
    Ns = max(source.L, 1)
    Nt = max(target.L, 1)
    if not target.keys:
        return Submodule.whole(source)
    images = [fn(x).to_vector(Nt) for x in source.basis()]
    return Submodule(source, hom_kernel(images, source.shape(Ns), Nt))


def _quotient_coinvariants(num: Submodule, den: Submodule, t: int = 1) -> int:
    """Length of (num/den) coinvariants under the residual rotation, den <= num."""
    moved = Submodule.span(num.space, [x.rotate(t) - x for x in num.classes()])
    return num.length - (den + moved).length


# -- filtrations ---------------------------------------------------------------------------

def standard_filtration(space: TateSpace, j: int) -> Submodule:
    """F^j = ker(R^(m-j)), decreasing in j; F^level is everything."""
    m = space.L
    if not space.j <= j <= m:
        raise RangeError(f"standard layer {j} outside [{space.j}, {m}]")
    target = space.with_(L=j)
    return kernel_of(lambda x: r_class_power(x, m - j), space, target)


def costandard_filtration(space: TateSpace, i: int) -> Submodule:
    """F_i = im(C^(m-i)), increasing in i; F_level = 0 and F_m is everything."""
    m = space.L
    if not space.j <= i <= m:
        raise RangeError(f"costandard layer {i} outside [{space.j}, {m}]")
    source = space.with_(L=i)
    return image(lambda x: c_class_power(x, m - i), source, space)


def filtration_layers(space: TateSpace) -> tuple[dict[int, Submodule], dict[int, Submodule]]:
    m, lo = space.L, space.j
    std = {j: standard_filtration(space, j) for j in range(lo, m + 1)}
    costd = {i: costandard_filtration(space, i) for i in range(lo, m + 1)}
    return std, costd


def _bigraded_pieces(std, costd, j: int, i: int) -> tuple[Submodule, Submodule]:
    """Numerator and denominator of gr^j_i = F^j ∩ F_(i+1) / (F^(j+1) ∩ F_(i+1) + F^j ∩ F_i)."""
    num = std[j].meet(costd[i + 1])
    den = std[j + 1].meet(costd[i + 1]) + std[j].meet(costd[i])
    return num, den


def expected_bigraded_dim(b: int, p: int, m: int, j: int, i: int) -> int:
    e = i + j + 1 - m
    return count_aperiodic(b, p, e) if e >= 0 else 0


def filtration_table(space: TateSpace) -> dict[tuple[int, int], int]:
    """dim gr^j_i for 0 <= i, j < m (level 0)."""
    std, costd = filtration_layers(space)
    m = space.L
    out = {}
    for j in range(m):
        for i in range(m):
            num, den = _bigraded_pieces(std, costd, j, i)
            out[(j, i)] = (num + den).length - den.length
    return out


def verify_filtrations(field: FiniteField, b: int, m: int) -> list[Check]:
    """Graded pieces of both filtrations, the bigraded table and the p-action."""
    space = TateSpace(field, b, m)
    p = field.p
    std, costd = filtration_layers(space)
    checks = []
    for j in range(m):
        dim = std[j].length - std[j + 1].length
        checks.append(Check(f"dim gr^{j} = dim C_({j})", dim == cyclic_dim(b, p, j),
                            "standard graded pieces", f"{dim}"))
    for i in range(m):
        dim = costd[i + 1].length - costd[i].length
        checks.append(Check(f"dim gr_{i} = dim C^({i})", dim == cyclic_dim(b, p, i),
                            "costandard graded pieces", f"{dim}"))
    if m >= 1:
        E = BasedSpace.standard(field, b)
        image_l = Submodule.span(space, [l_map(c, E).cls
                                         for c in cyclic_basis(COINVARIANTS, field, b, m - 1)])
        checks.append(Check("F^(m-1) = im l", std[m - 1].same(image_l),
                            "bottom standard layer"))
    table = {}
    for j in range(m):
        for i in range(m):
            num, den = _bigraded_pieces(std, costd, j, i)
            table[(j, i)] = (num, den, (num + den).length - den.length)
    for (j, i), (_, _, dim) in sorted(table.items()):
        exp = expected_bigraded_dim(b, p, m, j, i)
        checks.append(Check(f"dim gr^{j}_{i} = #aperiodic(p^{i + j + 1 - m})", dim == exp,
                            "bigraded table", f"{dim} vs {exp}"))
    for (j, i), (num, den, dim) in sorted(table.items()):
        if j + 1 >= m or i < 1:
            continue
        tnum, tden, tdim = table[(j + 1, i - 1)]
        pn = num.times(p)
        ok = pn <= (tnum + tden) and den.times(p) <= tden
        # induced map is an isomorphism: image has full dimension
        img = (pn + tden).length - tden.length
        checks.append(Check(f"p: gr^{j}_{i} -> gr^{j + 1}_{i - 1} iso", ok and img == dim == tdim,
                            "p acts diagonally", f"rank {img}"))
    return checks


def p_action_literal_reading(field: FiniteField, b: int, m: int) -> bool:
    """Whether p induces a nonzero map gr^j_i -> gr^(j-1)_(i+1) anywhere."""
    space = TateSpace(field, b, m)
    std, costd = filtration_layers(space)
    p = field.p
    for j in range(1, m):
        for i in range(m - 1):
            num, den = _bigraded_pieces(std, costd, j, i)
            tnum, tden = _bigraded_pieces(std, costd, j - 1, i + 1)
            if (num.times(p) + tden).length > tden.length:
                return True
    return False


# -- products ---------------------------------------------------------------------------------

def _literal_table(x: TateClass, n: int) -> dict[Word, WittScalar]:
    """Word -> padded literal over the support of the canonical representative."""
    sp = x.space
    out = {}
    for key, _ in x.items():
        lam = x.literal(sp.full_word(key), n)
        for w in sp.orbit(key):
            out[w] = lam
    return out


def multiply(x: WittElement, y: WittElement) -> WittElement:
    """mu: W_m(M) x W_m(N) -> W_m(M ⊗ N), slotwise product of representatives."""
    if x.field != y.field:
        raise ParameterMismatch("factors over different fields")
    if x.m != y.m or x.level != y.level:
        raise ParameterMismatch(f"W_{x.m} level {x.level} times W_{y.m} level {y.level}")
    space = x.space.tensor(y.space)
    target = witt_space(space, x.m, x.level)
    n = target.n
    bn = y.space.dim
    lx, ly = _literal_table(x.cls, n), _literal_table(y.cls, n)
    lits = {}
    for u, a in lx.items():
        for v, c in ly.items():
            lits[tuple(s * bn + t for s, t in zip(u, v))] = a * c
    return WittElement(space, TateClass.from_word_literals(target, lits))


def unit_element(field: FiniteField, m: int) -> WittElement:
    """epsilon = T(1) in W_m(k)."""
    from .witt_functor import teichmuller

    return teichmuller(BasedSpace(field, ("1",)), (1,), m)


def pairing(x: WittElement, y: WittElement) -> WittScalar:
    """<x, y> = W_m(ev)(mu(x, y)) for x over E and y over E*; in W_(m-level)(k).

    ev^(⊗p^m) pairs a word with the same word of the dual basis, so the
    literal of the product is the sum over words of the product of literals.
    """
    _check_dual(x, y)
    if x.m != y.m or x.level != y.level:
        raise ParameterMismatch("pairing needs equal m and level")
    sp = x.cls.space
    n = sp.n
    ly = _literal_table(y.cls, n)
    total = WittScalar.zero(x.field, n)
    for w, a in _literal_table(x.cls, n).items():
        c = ly.get(w)
        if c is not None:
            total = total + a * c
    unit = sp.with_(b=1)
    key = (0,) * (sp.p**sp.j)
    return TateClass.from_word_literals(unit, {unit.full_word(key): total}).coeff(key) \
        if unit.keys else WittScalar.zero(x.field, 0)


def pairing_via_product(x: WittElement, y: WittElement) -> WittScalar:
    """The same pairing computed literally as W_m(ev) applied to mu(x, y)."""
    _check_dual(x, y)
    E = x.space
    prod = multiply(x, WittElement(E.dual(), y.cls))
    val = apply_map(evaluation_map(E), prod)
    ts = val.cls.space
    return val.cls.coeff((0,) * (ts.p**ts.j))


def _check_dual(x: WittElement, y: WittElement) -> None:
    if y.space.labels != x.space.dual().labels or y.field != x.field:
        raise ParameterMismatch("second argument must live over the dual space")


def gram_matrix(space: BasedSpace, m: int) -> list[list[WittScalar]]:
    xs = [WittElement(space, c) for c in witt_space(space, m).basis()]
    dual = space.dual()
    ys = [WittElement(dual, c) for c in witt_space(dual, m).basis()]
    return [[pairing(a, b) for b in ys] for a in xs]


def normalized_gram(space: BasedSpace, m: int) -> list[list[int]]:
    """Residues mod p of <alpha, beta> / p^(i_alpha), as F_q entries.

    <alpha, beta> is killed by p^(m - i_alpha), hence divisible by p^i_alpha;
    dividing a Witt vector (0,..,0,c,..) by p^i leaves c^(p^-i) in front.
    """
    field = space.field
    ts = witt_space(space, m)
    G = gram_matrix(space, m)
    out = []
    for key, row in zip(ts.keys, G):
        i = ts.exponent(key)
        res = []
        for v in row:
            if any(v.coords[:i]):
                raise RangeError("pairing value not divisible by p^i")
            res.append(field.frobenius(v.coords[i], -i) if i < v.n else 0)
        out.append(res)
    return out


def field_determinant(field: FiniteField, M: list[list[int]]) -> int:
    n = len(M)
    A = [list(r) for r in M]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = field.neg(det)
        det = field.mul(det, A[c][c])
        inv = field.inv(A[c][c])
        for r in range(c + 1, n):
            if A[r][c]:
                f = field.mul(A[r][c], inv)
                A[r] = [field.sub(a, field.mul(f, b)) for a, b in zip(A[r], A[c])]
    return det


def verify_pairing(space: BasedSpace, m: int) -> list[Check]:
    """Unit determinant of the normalized Gram matrix and, for q = p, injectivity
    of W_m(E*) -> Hom(W_m(E), W_m(k)) by Smith form."""
    field = space.field
    ts = witt_space(space, m)
    det = field_determinant(field, normalized_gram(space, m))
    checks = [Check("normalized Gram determinant is a unit", det != 0, "perfect pairing",
                    f"det={det}")]
    if field.d == 1 and ts.keys:
        from .base_ring import to_zpn

        p = field.p
        G = gram_matrix(space, m)
        shape = ModuleShape(p, ts.lengths, m)
        # column beta: (<alpha, beta> / p^i_alpha) in W_{m - i_alpha}
        rows = []
        for b_idx in range(len(ts.keys)):
            res = [to_zpn(G[a][b_idx]) // p ** ts.exponent(k)
                   for a, k in enumerate(ts.keys)]
            rows.append(shape.embed(res))
        ok = span_length(rows, p, m) == ts.module_length
        checks.append(Check("pairing map W_m(E*) -> W_m(E)^* injective", ok, "perfect pairing"))
    return checks


# -- the trace isomorphism tau ----------------------------------------------------------------

def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def tau(x: WittElement, split: int = 1) -> WittElement:
    """tau_{A,B}: W_m(A ⊗ B) -> W_m(B ⊗ A) with A the first ``split`` factors.

    On a representative over words z with letters (a_k, b_k), the one-slot
    shift of the 2p^m alternating slots gives letters (b_k, a_(k+1)).
    """
    sp = x.space
    if sp.factors is None or not 0 < split < len(sp.factors):
        raise ParameterMismatch("tau needs a space declared as a tensor product")
    fa, fb = sp.factors[:split], sp.factors[split:]
    dA, dB = _prod(fa), _prod(fb)
    labels = [None] * sp.dim
    grading = [0] * sp.dim if sp.grading is not None else None
    for letter, lab in enumerate(sp.labels):
        a, b = divmod(letter, dB)
        parts = lab.split("⊗")
        new = "⊗".join(parts[split:] + parts[:split]) if len(parts) == len(sp.factors) \
            else lab
        labels[b * dA + a] = new
        if grading is not None:
            grading[b * dA + a] = sp.grading[letter]
    target_space = BasedSpace(sp.field, tuple(labels),
                              None if grading is None else tuple(grading), fb + fa)
    src = x.cls.space
    target = witt_space(target_space, src.L, src.j)
    n = target.n
    lits = {}
    for key, _ in x.cls.items():
        z = src.full_word(key)
        lam = x.cls.literal(z, n)
        size = len(z)
        new = tuple((z[k] % dB) * dA + z[(k + 1) % size] // dB for k in range(size))
        lits[new] = lam
    return WittElement(target_space, TateClass.from_word_literals(target, lits))


def identify_unit(x: WittElement, space: BasedSpace) -> WittElement:
    """Read an element over k ⊗ E or E ⊗ k as an element over E."""
    if x.space.dim != space.dim:
        raise ParameterMismatch("dimension differs")
    return WittElement(space, x.cls)


# -- exact sequences ---------------------------------------------------------------------------

def verify_lr_sequences(field: FiniteField, b: int, m: int) -> list[Check]:
    """0 -> C_(m) -> W_(m+1) -> W_m -> 0 and 0 -> W_m -> W_(m+1) -> C^(m) -> 0,
    the sequences relating C_, Phi and C^, and the two commuting squares."""
    p = field.p
    E = BasedSpace.standard(field, b)
    W1, W0 = TateSpace(field, b, m + 1), TateSpace(field, b, m)
    checks = []
    co = cyclic_basis(COINVARIANTS, field, b, m)
    l_images = [l_map(c, E).cls for c in co]
    im_l = Submodule.span(W1, l_images)
    ker_R = kernel_of(restrict_class, W1, W0)
    checks.append(Check(f"im l = ker R (m={m})", im_l.same(ker_R), "first sequence exact"))
    checks.append(Check(f"l injective (m={m})", im_l.length == len(co),
                        "first sequence exact", f"length {im_l.length}"))
    r_ok = Submodule.span(W0, (restrict_class(x) for x in W1.basis())).length \
        == W0.module_length
    checks.append(Check(f"R surjective (m={m})", r_ok, "first sequence exact"))
    # r: W_(m+1) -> C^(m) as an F_p-linear map
    keys = cyclic_keys(b, p, m)
    if field.d == 1:
        r_rows = [r_map(WittElement(E, x)).to_vector() for x in W1.basis()]
        r_rank = rank_mod_p(r_rows, p) if r_rows else 0
        checks.append(Check(f"r surjective (m={m})", r_rank == len(keys),
                            "second sequence exact", f"rank {r_rank}"))
        ker_r = Submodule(W1, hom_kernel(r_rows, W1.shape(m + 1), 1)) if keys \
            else Submodule.whole(W1)
        im_C = image(c_class, W0, W1)
        checks.append(Check(f"im C = ker r (m={m})", im_C.same(ker_r), "second sequence exact"))
        checks.append(Check(f"C injective (m={m})", im_C.length == W0.module_length,
                            "second sequence exact"))
        coker = W1.module_length - im_C.length
        checks.append(Check(f"coker C has dim C^({m})", coker == len(keys), "cokernel of C",
                            f"{coker}"))
    # r o l is the trace reduced mod p
    for c in co:
        lhs = r_map(l_map(c, E))
        rhs = cyclic_trace(c)
        if lhs != rhs:
            checks.append(Check(f"r o l = trace (m={m})", False, "r o l", f"at {c.coords}"))
            break
    else:
        checks.append(Check(f"r o l = trace (m={m})", True, "r o l"))
    # C_(m) -> C_(m+1) -> Phi_(m+1) and Phi_(m+1) -> C^(m+1) -> C^(m)
    dim_phi = len(phi(field, b, m + 1))
    checks.append(Check(f"dim C_({m + 1}) = dim C_({m}) + dim Phi_{m + 1}",
                        cyclic_dim(b, p, m + 1) == cyclic_dim(b, p, m) + dim_phi,
                        "cyclic power sequences"))
    co1 = cyclic_basis(COINVARIANTS, field, b, m + 1)
    tr_rows = [cyclic_trace(c).to_vector() for c in co1]
    tr_rank = rank_mod_p(tr_rows, p)
    phi_rows = [v.to_vector() for v in phi(field, b, m + 1)]
    im_tr_is_phi = tr_rank == dim_phi and rank_mod_p(tr_rows + phi_rows, p) == dim_phi
    checks.append(Check(f"im trace = Phi_{m + 1}", im_tr_is_phi, "cyclic power sequences"))
    c_rows = [cyclic_c(c).to_vector() for c in co]
    ker_tr_dim = len(co1) - tr_rank
    c_ok = all(cyclic_trace(cyclic_c(c)).is_zero() for c in co) and \
        rank_mod_p(c_rows, p) == len(co) == ker_tr_dim
    checks.append(Check(f"im C = ker trace on C_({m + 1})", c_ok, "cyclic power sequences"))
    inv1 = cyclic_basis(INVARIANTS, field, b, m + 1)
    rr = [cyclic_r(c).to_vector() for c in inv1]
    r_rank = rank_mod_p(rr, p)
    ker_ok = all(cyclic_r(v).is_zero() for v in phi(field, b, m + 1))
    checks.append(Check(f"ker(C^({m + 1}) -> C^({m})) = Phi_{m + 1}",
                        ker_ok and r_rank == len(keys) and len(inv1) - r_rank == dim_phi,
                        "cyclic power sequences"))
    # commuting squares: R o r = r o R from W_(m+2), C o l = l o C from C_(m)
    if m + 2 <= 5:
        W2 = TateSpace(field, b, m + 2)
        sq1 = all(cyclic_r(r_map(WittElement(E, x))) == r_map(WittElement(E, restrict_class(x)))
                  for x in W2.basis())
        checks.append(Check(f"R o r = r o R (m={m})", sq1, "commuting squares"))
    sq2 = all(c_map(l_map(c, E)) == l_map(cyclic_c(c), E) for c in co)
    checks.append(Check(f"C o l = l o C (m={m})", sq2, "commuting squares"))
    return checks


def verify_VR_sequences(field: FiniteField, b: int, m: int, n: int) -> list[Check]:
    """0 -> (W^n_m)_{G_n} -> W_m -> W_n -> 0 via V^n and R^(m-n), and
    0 -> W_n -> W_m -> (W^n_m)^{G_n} -> 0 via C^(m-n) and F^n."""
    if not 1 <= n <= m:
        raise RangeError("need 1 <= n <= m")
    p = field.p
    W = TateSpace(field, b, m)
    Wn = TateSpace(field, b, m, n)
    Wt = TateSpace(field, b, n)
    tag = f"(m={m}, n={n})"
    checks = []
    whole = Submodule.whole(Wn) if Wn.keys else Submodule.zero(Wn)
    moved = Submodule.span(Wn, [x.rotate(1) - x for x in Wn.basis()])
    coinv = whole.length - moved.length
    inv = coinv  # |M^G| = |M_G| for a finite cyclic group
    if n == m:
        checks.append(Check(f"W^m_m = 0 {tag}", Wn.module_length == 0, "degenerate case"))

    def Vn(x):
        return iterate(transfer_from_subgroup, x, n)

    def Fn(x):
        return iterate(restrict_to_subgroup, x, n)

    inv_V = all(Vn(x.rotate(1)) == Vn(x) for x in Wn.basis())
    checks.append(Check(f"V^n factors through coinvariants {tag}", inv_V, "V bar"))
    im_V = image(Vn, Wn, W)
    checks.append(Check(f"V bar injective {tag}", im_V.length == coinv, "V bar",
                        f"{im_V.length} vs {coinv}"))
    ker_R = kernel_of(lambda x: r_class_power(x, m - n), W, Wt)
    checks.append(Check(f"im V^n = ker R^(m-n) {tag}", im_V.same(ker_R), "first V/R sequence"))
    im_R = image(lambda x: r_class_power(x, m - n), W, Wt)
    checks.append(Check(f"R^(m-n) onto W_n {tag}", im_R.length == Wt.module_length,
                        "first V/R sequence"))
    im_C = image(lambda x: c_class_power(x, m - n), Wt, W)
    checks.append(Check(f"C^(m-n) injective {tag}", im_C.length == Wt.module_length,
                        "second V/R sequence"))
    inv_F = all(Fn(x).rotate(1) == Fn(x) for x in W.basis())
    checks.append(Check(f"F^n lands in invariants {tag}", inv_F, "F bar"))
    im_F = image(Fn, W, Wn)
    checks.append(Check(f"F bar surjective {tag}", im_F.length == inv, "F bar",
                        f"{im_F.length} vs {inv}"))
    ker_F = kernel_of(Fn, W, Wn)
    checks.append(Check(f"im C^(m-n) = ker F^n {tag}", im_C.same(ker_F), "second V/R sequence"))
    if n == m - 1:
        ident = Wn.module_length == b ** (p**n) and all(l == 1 for l in Wn.lengths)
        checks.append(Check(f"W^n_(n+1) = E_(n) {tag}", ident, "cyclotomic identification"))
    checks.extend(_verify_gr_n(Wn, n, m, b, p, tag))
    return checks


def _verify_gr_n(Wn: TateSpace, n: int, m: int, b: int, p: int, tag: str) -> list[Check]:
    """gr^i (W^n_m)_{G_n} = C_(i) and gr_i (W^n_m)^{G_n} = C^(i) in dimension."""
    if not Wn.keys:
        return []
    std, costd = filtration_layers(Wn)
    checks = []
    for i in range(n, m):
        d = _quotient_coinvariants(std[i], std[i + 1])
        checks.append(Check(f"gr^{i} of coinvariants has dim C_({i}) {tag}",
                            d == cyclic_dim(b, p, i), "graded coinvariants", f"{d}"))
        d2 = _quotient_coinvariants(costd[i + 1], costd[i])
        checks.append(Check(f"gr_{i} of invariants has dim C^({i}) {tag}",
                            d2 == cyclic_dim(b, p, i), "graded invariants", f"{d2}"))
    return checks


def restriction_target_variant_holds(field: FiniteField, b: int, m: int, n: int) -> bool:
    """The alternative reading with R^n: W_m -> W_(m-n): is ker R^n = im V^n?"""
    W = TateSpace(field, b, m)
    Wn = TateSpace(field, b, m, n)
    Wt = TateSpace(field, b, m - n)
    im_V = image(lambda x: iterate(transfer_from_subgroup, x, n), Wn, W)
    ker_R = kernel_of(lambda x: r_class_power(x, n), W, Wt)
    return im_V.same(ker_R)


# -- residual versus naive action ------------------------------------------------------------

@dataclass(frozen=True)
class ResidualReport:
    p: int
    b: int
    n: int
    i: int
    residual_invariants: tuple[int, ...]
    residual_coinvariants: tuple[int, ...]
    naive_invariants: tuple[int, ...]
    naive_coinvariants: tuple[int, ...]

    @property
    def differ(self) -> bool:
        return (self.residual_invariants, self.residual_coinvariants) != \
            (self.naive_invariants, self.naive_coinvariants)

    def to_dict(self) -> dict:
        return {"p": self.p, "b": self.b, "n": self.n, "i": self.i,
                "residual": {"invariants": list(self.residual_invariants),
                             "coinvariants": list(self.residual_coinvariants)},
                "naive": {"invariants": list(self.naive_invariants),
                          "coinvariants": list(self.naive_coinvariants)}}


def _perm_matrix(words: list[Word], index: dict[Word, int], fn) -> Matrix:
    N = len(words)
    M = [[0] * N for _ in range(N)]
    for k, w in enumerate(words):
        M[k][index[fn(w)]] = 1
    return M


def _mat_mul(A: Matrix, B: Matrix, p: int) -> Matrix:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(r, c)) % p for c in Bt] for r in A]


def _kron_power(g: Matrix, words: list[Word], p: int) -> Matrix:
    return [[_prod(g[a][c] for a, c in zip(w, y)) % p for y in words] for w in words]


def _dims(ops: list[Matrix], p: int) -> tuple[int, int]:
    """(invariants, coinvariants) dimensions of the group generated by ops."""
    N = len(ops[0])
    minus = [[(M[r][c] - (r == c)) % p for c in range(N)] for M in ops for r in range(N)]
    coinv = N - rank_mod_p(minus, p)
    side = [[(M[r][c] - (r == c)) % p for M in ops for c in range(N)] for r in range(N)]
    inv = N - rank_mod_p(side, p)
    return inv, coinv


def residual_action_report(p: int, b: int, n: int, i: int,
                           basis_change: Matrix | None = None) -> ResidualReport:
    """Residual G_n-action on C_(i-n)(E_(n)) versus the naive action through
    E_(n), on the words of length p^i over F_p; each subgroup p^t G_n is
    reported (t = 0..n).  ``basis_change`` conjugates by g^(⊗p^i)."""
    if not 0 <= n <= i:
        raise RangeError("need 0 <= n <= i")
    length = p**i
    check_cap(b, length, 2**12)
    words = [tuple(w) for w in itertools.product(range(b), repeat=length)]
    index = {w: k for k, w in enumerate(words)}
    chunk = p**n

    def naive(w):
        return tuple(s for k in range(0, length, chunk) for s in rotate(w[k:k + chunk], 1))

    H = _perm_matrix(words, index, lambda w: rotate(w, chunk))
    S = _perm_matrix(words, index, lambda w: rotate(w, 1))
    Nv = _perm_matrix(words, index, naive)
    if basis_change is not None:
        G = _kron_power(basis_change, words, p)
        Gi = _kron_power(_inverse_mod_p(basis_change, p), words, p)
        H, S, Nv = (_mat_mul(_mat_mul(Gi, M, p), G, p) for M in (H, S, Nv))
    res, nai = [], []
    for t in range(n + 1):
        St, Nt = _mat_power(S, p**t, p), _mat_power(Nv, p**t, p)
        res.append(_dims([H, St], p))
        nai.append(_dims([H, Nt], p))
    return ResidualReport(p, b, n, i, tuple(r[0] for r in res), tuple(r[1] for r in res),
                          tuple(r[0] for r in nai), tuple(r[1] for r in nai))


def _mat_power(M: Matrix, e: int, p: int) -> Matrix:
    N = len(M)
    out = [[int(r == c) for c in range(N)] for r in range(N)]
    base = M
    while e:
        if e & 1:
            out = _mat_mul(out, base, p)
        e >>= 1
        if e:
            base = _mat_mul(base, base, p)
    return out


def _inverse_mod_p(g: Matrix, p: int) -> Matrix:
    n = len(g)
    A = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(g)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] % p), None)
        if piv is None:
            raise RangeError("basis change is not invertible")
        A[c], A[piv] = A[piv], A[c]
        inv = pow(A[c][c], -1, p)
        A[c] = [x * inv % p for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[c])]
    return [r[n:] for r in A]


def orbit_count(p: int, b: int, n: int, i: int, naive: bool = False, t: int = 0) -> int:
    """Number of orbits of <rotation by p^n, sigma^(p^t)> on words of length p^i."""
    length = p**i
    chunk = p**n
    seen = set()
    count = 0

    def step(w):
        if naive:
            return tuple(s for k in range(0, length, chunk)
                         for s in rotate(w[k:k + chunk], p**t))
        return rotate(w, p**t)

    for w in itertools.product(range(b), repeat=length):
        if w in seen:
            continue
        count += 1
        stack = [w]
        seen.add(w)
        while stack:
            u = stack.pop()
            for v in (rotate(u, chunk), step(u)):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    return count
