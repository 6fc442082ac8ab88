"""Property suites behind ``polywitt verify``.

Each suite takes a SuiteConfig and returns a list of named Checks.  Random
inputs come from a ``random.Random`` seeded by (seed, suite), so a fixed
seed reproduces the report byte for byte.  Checks are sorted by name before
the report is written.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, replace
from typing import Callable

from .base_ring import (FiniteField, UniversalWittPolynomials, WittScalar,
                        compute_witt_polynomials, from_zpn, scalar_verschiebung,
                        teichmuller_scalar, teichmuller_zpn, to_zpn)
from .base_ring.polynomials import Poly
from .cocycle import (addition_defect, solve_cocycles, truncated_teichmuller_expansion,
                      verify_cocycle_identity)
from .errors import RangeError
from .linalg import kernel, span_length
from .orbits import WORD_CAP, count_aperiodic, rotate
from .report import Check
from .tate import (DENSE_CAP, EquivariantVector, TateClass, TateSpace, lift_to_invariant,
                   project_to_tate, trace)
from .witt_functor import (BasedSpace, LinearMap, WittElement, apply_map, apply_map_direct,
                           restrict_class, restriction, swap_map, teichmuller, witt_space,
                           witt_zero)
from .witt_structure import (c_class, frobenius_map, iterate, multiply, orbit_count, pairing,
                             pairing_via_product, residual_action_report, residual_sum, tau,
                             unit_element, verify_filtrations, verify_lr_sequences,
                             verify_pairing, verify_VR_sequences, verschiebung,
                             p_action_literal_reading)

SUITES = ("scalars", "tate", "functor", "sequences", "filtrations", "mult", "pairing", "tau",
          "cocycle", "mackey")

# irreducible quadratics used for q = p^2
DEFAULT_MODULI = {2: (1, 1, 1), 3: (1, 0, 1), 5: (3, 0, 1)}


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    p: int | None = None
    q: int | None = None
    m: int | None = None
    dim: int | None = None
    seed: int = 0
    cases: int = 10
    modulus: tuple[int, ...] | None = None

    def header(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "cases": self.cases,
                "p": self.p, "q": self.q, "m": self.m, "dim": self.dim,
                "modulus": list(self.modulus) if self.modulus else None}


def make_field(p: int, q: int | None = None, modulus=None) -> FiniteField:
    if q is None or q == p:
        return FiniteField(p)
    if q != p * p:
        raise RangeError(f"q={q} must be p or p^2")
    return FiniteField(p, modulus or DEFAULT_MODULI[p])


def _fields(cfg: SuiteConfig, primes=(2, 3)) -> list[FiniteField]:
    if cfg.p is None and cfg.q is None:
        return [FiniteField(p) for p in primes]
    p = cfg.p
    if p is None:
        p = next(x for x in (2, 3, 5) if cfg.q in (x, x * x))
    return [make_field(p, cfg.q, cfg.modulus)]


def _max_m(cfg: SuiteConfig, p: int, default: dict[int, int]) -> int:
    return cfg.m if cfg.m is not None else default.get(p, 1)


def _grid(cfg: SuiteConfig, m_default: dict[int, int], dim_default: int, budget: int,
          primes=(2, 3), m_min: int = 1, dim_min: int = 1):
    """(field, m, dim) triples within the word budget b^(p^m) <= budget."""
    for f in _fields(cfg, primes):
        for m in range(m_min, _max_m(cfg, f.p, m_default) + 1):
            for b in range(dim_min, (cfg.dim if cfg.dim is not None else dim_default) + 1):
                if b ** (f.p**m) <= budget:
                    yield f, m, b


def tag(f: FiniteField, m: int | None = None, b: int | None = None) -> str:
    out = f"p={f.p} q={f.q}"
    if m is not None:
        out += f" m={m}"
    if b is not None:
        out += f" dim={b}"
    return out


# -- random inputs ------------------------------------------------------------------------

def random_scalar(f: FiniteField, n: int, rng: random.Random) -> WittScalar:
    return WittScalar(f, tuple(rng.randrange(f.q) for _ in range(n)))


def random_class(ts: TateSpace, rng: random.Random, density: float = 1.0) -> TateClass:
    comps = {}
    for k, n in zip(ts.keys, ts.lengths):
        if rng.random() < density:
            comps[k] = random_scalar(ts.field, n, rng)
    return TateClass(ts, comps)


def random_element(space: BasedSpace, m: int, rng: random.Random, level: int = 0) -> WittElement:
    return WittElement(space, random_class(witt_space(space, m, level), rng))


def random_vector(space: BasedSpace, rng: random.Random, length: int | None = None):
    return tuple(rng.randrange(space.q) for _ in range(space.dim if length is None else length))


def random_map(src: BasedSpace, tgt: BasedSpace, rng: random.Random) -> LinearMap:
    return LinearMap.make(src, tgt, [[rng.randrange(src.q) for _ in range(src.dim)]
                                     for _ in range(tgt.dim)])


def random_lift(fmap: LinearMap, n: int, rng: random.Random):
    f = fmap.source.field
    return [[WittScalar(f, (a,) + tuple(rng.randrange(f.q) for _ in range(n - 1)))
             for a in row] for row in fmap.matrix]


def _first_failure(name: str, anchor: str, cases, pred) -> Check:
    for k, case in enumerate(cases):
        if not pred(case):
            return Check(name, False, anchor, f"case {k}")
    return Check(name, True, anchor)


# -- scalars ---------------------------------------------------------------------------------

def _eval_poly(poly: Poly, values: list[int], f: FiniteField) -> int:
    p = f.p
    return poly.evaluate(values, 0, 1, f.add, f.mul,
                         lambda c, x: f.mul(f.from_coeffs([c % p]), x))


def corrupt_s1(polys: UniversalWittPolynomials) -> UniversalWittPolynomials:
    """Test fixture: S_1 with an extra X_0 term."""
    if polys.n < 2:
        return polys
    xs, _ = polys.variables()
    sums = list(polys.sum_polys)
    sums[1] = sums[1] + xs[0]
    return replace(polys, sum_polys=tuple(sums))


def suite_scalars(cfg: SuiteConfig, rng: random.Random,
                  polys: Callable[[int, int], UniversalWittPolynomials] | None = None
                  ) -> list[Check]:
    polys = polys or compute_witt_polynomials
    checks = []
    primes = (2, 3, 5)
    fields = _fields(cfg, primes)
    if cfg.p is None and cfg.q is None:
        fields += [make_field(2, 4), make_field(3, 9)]
    for f in fields:
        p = f.p
        nmax = cfg.m if cfg.m is not None else 4
        for n in range(1, nmax + 1):
            t = tag(f) + f" n={n}"
            pairs = [(random_scalar(f, n, rng), random_scalar(f, n, rng))
                     for _ in range(cfg.cases)]
            triples = [(a, b, random_scalar(f, n, rng)) for a, b in pairs]
            if p != 5 or n <= 3:
                P = polys(p, n)
                if f.d == 1:
                    checks.append(Check(f"ghost identities {t}", not P.check_ghost_identities(),
                                        "universal polynomials"))

                def agrees(ab, P=P):
                    a, b = ab
                    vals = list(a.coords) + list(b.coords)
                    s = tuple(_eval_poly(P.sum_polys[i], vals, f) for i in range(n))
                    m = tuple(_eval_poly(P.prod_polys[i], vals, f) for i in range(n))
                    return s == (a + b).coords and m == (a * b).coords

                checks.append(_first_failure(f"S_i, P_i agree with the ghost engine {t}",
                                             "universal polynomials", pairs, agrees))
            checks.append(_first_failure(
                f"ring axioms {t}", "W_n(k) is a ring", triples,
                lambda abc: (abc[0] + abc[1]) + abc[2] == abc[0] + (abc[1] + abc[2])
                and (abc[0] * abc[1]) * abc[2] == abc[0] * (abc[1] * abc[2])
                and abc[0] * (abc[1] + abc[2]) == abc[0] * abc[1] + abc[0] * abc[2]
                and abc[0] * abc[1] == abc[1] * abc[0] and abc[0] + abc[1] == abc[1] + abc[0]
                and abc[0] + (-abc[0]) == WittScalar.zero(f, n)
                and abc[0] * WittScalar.one(f, n) == abc[0]))
            checks.append(_first_failure(
                f"F is a ring automorphism {t}", "Frobenius", pairs,
                lambda ab: (ab[0] + ab[1]).frobenius() == ab[0].frobenius() + ab[1].frobenius()
                and (ab[0] * ab[1]).frobenius() == ab[0].frobenius() * ab[1].frobenius()))
            checks.append(_first_failure(
                f"F V = p and V(a) b = V(a F(b)) {t}", "projection formula", pairs,
                lambda ab: _fv(ab[0], ab[1])))
            checks.append(_first_failure(
                f"omega multiplicative {t}", "Teichmuller", pairs,
                lambda ab: teichmuller_scalar(f, f.mul(ab[0].coords[0], ab[1].coords[0]), n)
                == teichmuller_scalar(f, ab[0].coords[0], n)
                * teichmuller_scalar(f, ab[1].coords[0], n)))
            if f.d == 1:
                mod = p**n
                if mod <= 81:
                    elems = [from_zpn(f, n, x) for x in range(mod)]
                    pairs_z = list(itertools.product(elems, repeat=2))
                    name = f"Z/p^n oracle exhaustive {t}"
                else:
                    pairs_z = pairs
                    name = f"Z/p^n oracle random {t}"
                checks.append(_first_failure(name, "W_n(F_p) = Z/p^n", pairs_z,
                                             lambda ab: _zpn_ok(ab[0], ab[1])))
    return checks


def _fv(a: WittScalar, b: WittScalar) -> bool:
    """F V a = p a and V(a) b = V(a F b), read in W_(n+1)."""
    n = a.n
    Va = scalar_verschiebung(a)
    pa = a.pad(n + 1) * a.p
    return Va.frobenius() == pa and scalar_verschiebung(a.frobenius()) == pa \
        and Va * b.pad(n + 1) == scalar_verschiebung(a * b.frobenius())


def _zpn_ok(a: WittScalar, b: WittScalar) -> bool:
    p, n = a.p, a.n
    mod = p**n
    x, y = to_zpn(a), to_zpn(b)
    ok = to_zpn(a + b) == (x + y) % mod and to_zpn(a * b) == x * y % mod \
        and to_zpn(-a) == -x % mod and from_zpn(a.field, n, x) == a \
        and to_zpn(scalar_verschiebung(a)) == p * x % (mod * p) \
        and to_zpn(a.frobenius()) == x \
        and to_zpn(teichmuller_scalar(a.field, a.coords[0], n)) == teichmuller_zpn(p, n, a.coords[0])
    if n >= 1:
        ok = ok and to_zpn(a.restrict()) == x % (mod // p)
    return ok


# -- tate -------------------------------------------------------------------------------------

def _brute_h0_length(f: FiniteField, b: int, m: int) -> int:
    """Length of invariants modulo trace image on W_m(k)[words], by Smith form."""
    p = f.p
    words = [tuple(w) for w in itertools.product(range(b), repeat=p**m)]
    index = {w: k for k, w in enumerate(words)}
    N = len(words)
    sigma_minus = []
    for w in words:
        row = [0] * N
        row[index[rotate(w, 1)]] += 1
        row[index[w]] -= 1
        sigma_minus.append(row)
    inv = kernel(sigma_minus, p, m, N) if N else []
    inv_len = span_length(inv, p, m) if inv else 0
    tr = []
    for w in words:
        row = [0] * N
        for t in range(p**m):
            row[index[rotate(w, t)]] += 1
        tr.append(row)
    return inv_len - span_length(tr, p, m)


def suite_tate(cfg: SuiteConfig, rng: random.Random) -> list[Check]:
    checks = []
    for f, m, b in _grid(cfg, {2: 3, 3: 2}, 3, WORD_CAP, m_min=0):
        t = tag(f, m, b)
        ts = TateSpace(f, b, m)
        expected = sum((m - i) * count_aperiodic(b, f.p, i) for i in range(m + 1))
        checks.append(Check(f"H0 length census {t}", ts.module_length == expected,
                            "length formula", f"{ts.module_length}"))
        if b ** (f.p**m) <= 64 and m >= 1:
            brute = _brute_h0_length(f, b, m)
            checks.append(Check(f"H0 length by Smith form {t}", brute == expected,
                                "length formula", f"{brute}"))
        if m >= 1 and b ** (f.p**m) <= 4096:
            words = [tuple(w) for w in itertools.product(range(b), repeat=f.p**m)]

            def rand_vec():
                return EquivariantVector(ts, m, {w: random_scalar(f, m, rng)
                                                 for w in rng.sample(words, min(4, len(words)))})

            vs = [rand_vec() for _ in range(cfg.cases)]
            checks.append(_first_failure(f"trace image is zero in H0 {t}", "Tate cohomology",
                                         vs, lambda v: project_to_tate(trace(v)).is_zero()))
            xs = [random_class(ts, rng) for _ in range(cfg.cases)]
            checks.append(_first_failure(
                f"project(lift(x)) = x {t}", "canonical representatives", xs,
                lambda x: project_to_tate(lift_to_invariant(x)) == x))
            checks.append(_first_failure(
                f"lift is invariant {t}", "canonical representatives", xs,
                lambda x: lift_to_invariant(x).is_invariant()))
            checks.append(_first_failure(
                f"rotation acts trivially on W_m {t}", "residual action", xs,
                lambda x: x.rotate(1) == x))
    return checks


# -- functor ----------------------------------------------------------------------------------

def suite_functor(cfg: SuiteConfig, rng: random.Random) -> list[Check]:
    checks = []
    for f, m, b in _grid(cfg, {2: 3, 3: 2}, 3, 2**13):
        t = tag(f, m, b)
        E = BasedSpace.standard(f, b)
        T = BasedSpace.standard(f, max(1, b - 1), "t")
        U = BasedSpace.standard(f, b, "u")
        cases = [(random_map(E, T, rng), random_map(T, U, rng), random_element(E, m, rng),
                  random_vector(E, rng)) for _ in range(cfg.cases)]
        checks.append(_first_failure(
            f"lift independence {t}", "W_m(f) depends only on f", cases,
            lambda c: apply_map(c[0], c[2], random_lift(c[0], m, rng))
            == apply_map(c[0], c[2], random_lift(c[0], m, rng)) == apply_map(c[0], c[2])))
        checks.append(_first_failure(
            f"W_m(id) = id {t}", "functor laws", cases,
            lambda c: apply_map(LinearMap.identity(E), c[2]) == c[2]))
        checks.append(_first_failure(
            f"W_m(g f) = W_m(g) W_m(f) {t}", "functor laws", cases,
            lambda c: apply_map(c[1] @ c[0], c[2]) == apply_map(c[1], apply_map(c[0], c[2]))))
        checks.append(_first_failure(
            f"T natural {t}", "Teichmuller", cases,
            lambda c: apply_map(c[0], teichmuller(E, c[3], m))
            == teichmuller(T, c[0].apply(c[3]), m)))
        if m > 1:
            checks.append(_first_failure(
                f"R T = T {t}", "Teichmuller", cases,
                lambda c: restriction(teichmuller(E, c[3], m)) == teichmuller(E, c[3], m - 1)))
            checks.append(_first_failure(
                f"R natural {t}", "restriction", cases,
                lambda c: restriction(apply_map(c[0], c[2]))
                == apply_map(c[0], restriction(c[2]))))
        if b ** (f.p**m) <= 512:
            checks.append(_first_failure(
                f"slotwise = closed formula {t}", "tensor power action", cases[:3],
                lambda c: apply_map(c[0], c[2]) == apply_map_direct(c[0], c[2])))
    for f in _fields(cfg):
        Z = BasedSpace.standard(f, 0)
        ok = TateSpace(f, 0, 2).module_length == 0 and witt_zero(Z, 2).is_zero()
        checks.append(Check(f"W_m(0) = 0 {tag(f)}", ok, "degenerate input"))
    return checks


# -- sequences --------------------------------------------------------------------------------

def suite_sequences(cfg: SuiteConfig, rng: random.Random) -> list[Check]:
    checks = []
    for f, m, b in _grid(cfg, {2: 2, 3: 1}, 2, 2**12, m_min=0):
        checks.extend(_retag(verify_lr_sequences(f, b, m), tag(f, None, b)))
    for f, m, b in _grid(cfg, {2: 3, 3: 2}, 2, 2**12, m_min=2):
        for n in range(1, m + 1):
            checks.extend(_retag(verify_VR_sequences(f, b, m, n), tag(f, None, b)))
    for f, m, b in _grid(cfg, {2: 3, 3: 2}, 2, 2**12):
        t = tag(f, m, b)
        ts = TateSpace(f, b, m)
        xs = [random_class(ts.with_(L=m + 1), rng) for _ in range(cfg.cases)]
        ys = [random_class(ts, rng) for _ in range(cfg.cases)]
        checks.append(_first_failure(f"C R = p {t}", "C and R", xs,
                                     lambda x: c_class(restrict_class(x)) == x.scale(f.p)))
        checks.append(_first_failure(f"R C = p {t}", "C and R", ys,
                                     lambda y: restrict_class(c_class(y)) == y.scale(f.p)))
    for f in _fields(cfg):
        p = f.p
        if f.d != 1:
            continue
        for b in (1, 2):
            for n, i in ((0, 1), (1, 1), (1, 2)):
                if b ** (p**i) > 64:
                    continue
                t = f"p={p} dim={b} n={n} i={i}"
                rep = residual_action_report(p, b, n, i)
                oracle = tuple(orbit_count(p, b, n, i, t=s) for s in range(n + 1))
                naive = tuple(orbit_count(p, b, n, i, naive=True, t=s) for s in range(n + 1))
                checks.append(Check(f"residual dims = orbit counts {t}",
                                    rep.residual_invariants == rep.residual_coinvariants == oracle,
                                    "residual action", str(oracle)))
                checks.append(Check(f"naive dims = orbit counts {t}",
                                    rep.naive_invariants == rep.naive_coinvariants == naive,
                                    "naive action", str(naive)))
                if i == n:
                    checks.append(Check(f"actions coincide when i = n {t}", not rep.differ,
                                        "residual action"))
                g = [[1, 1], [0, 1]] if b == 2 else [[p - 1]]
                moved = residual_action_report(p, b, n, i, g)
                checks.append(Check(f"dims invariant under basis change {t}",
                                    moved.to_dict() == rep.to_dict(), "residual action"))
    return checks


def _retag(checks: list[Check], t: str) -> list[Check]:
    return [replace(c, name=f"{c.name} {t}") for c in checks]


# -- filtrations ------------------------------------------------------------------------------

def suite_filtrations(cfg: SuiteConfig, rng: random.Random) -> list[Check]:
    checks = []
    for f, m, b in _grid(cfg, {2: 3, 3: 2}, 3, 2**14):
        if f.d != 1:
            continue
        t = tag(f, m, b)
        checks.extend(_retag(verify_filtrations(f, b, m), t))
        checks.append(Check(f"p induces zero on gr^j_i -> gr^(j-1)_(i+1) {t}",
                            not p_action_literal_reading(f, b, m), "p acts diagonally"))
    return checks


# -- multiplication ---------------------------------------------------------------------------

def suite_mult(cfg: SuiteConfig, rng: random.Random) -> list[Check]:
    checks = []
    for f, m, b in _grid(cfg, {2: 3, 3: 2}, 2, 2**16):
        t = tag(f, m, b)
        M = BasedSpace.standard(f, b, "a")
        N = BasedSpace.standard(f, 1 if b * b * b ** (f.p**m) > 2**13 else b, "c")
        if (M.dim * N.dim) ** (f.p**m) > DENSE_CAP:
            continue
        L = BasedSpace.standard(f, 1, "d")
        cases = [(random_element(M, m, rng), random_element(N, m, rng),
                  random_element(L, m, rng)) for _ in range(cfg.cases)]
        checks.append(_first_failure(
            f"mu associative {t}", "pseudotensor", cases,
            lambda c: multiply(multiply(c[0], c[1]), c[2]).cls
            == multiply(c[0], multiply(c[1], c[2])).cls))
        checks.append(_first_failure(
            f"mu unital {t}", "pseudotensor", cases,
            lambda c: multiply(unit_element(f, m), c[0]).cls == c[0].cls
            and multiply(c[0], unit_element(f, m)).cls == c[0].cls))
        checks.append(_first_failure(
            f"mu symmetric {t}", "pseudotensor", cases,
            lambda c: multiply(c[1], c[0]) == apply_map(swap_map(M, N), multiply(c[0], c[1]))))
        checks.append(_first_failure(
            f"mu bilinear {t}", "pseudotensor", cases,
            lambda c: multiply(c[0] + c[0], c[1]) == multiply(c[0], c[1]).mul_int(2)))
        if m > 1:
            checks.append(_first_failure(
                f"R mu = mu (R x R) {t}", "compatible with R", cases,
                lambda c: restriction(multiply(c[0], c[1]))
                == multiply(restriction(c[0]), restriction(c[1]))))
        vecs = [(random_vector(M, rng), random_vector(N, rng)) for _ in range(cfg.cases)]
        MN = M.tensor(N)
        checks.append(_first_failure(
            f"T(e e') = mu(T e, T e') {t}", "Teichmuller multiplicative", vecs,
            lambda v: multiply(teichmuller(M, v[0], m), teichmuller(N, v[1], m))
            == teichmuller(MN, tuple(f.mul(a, c) for a in v[0] for c in v[1]), m)))
        pf = [(random_element(M, m, rng, 1), random_element(N, m, rng),
               random_element(M, m, rng), random_element(N, m, rng, 1))
              for _ in range(cfg.cases)]
        checks.append(_first_failure(
            f"mu(V a, b) = V mu(a, F b) {t}", "projection formula", pf,
            lambda c: multiply(verschiebung(c[0]), c[1])
            == verschiebung(multiply(c[0], frobenius_map(c[1])))))
        checks.append(_first_failure(
            f"mu(a, V b) = V mu(F a, b) {t}", "projection formula", pf,
            lambda c: multiply(c[2], verschiebung(c[3]))
            == verschiebung(multiply(frobenius_map(c[2]), c[3]))))
        checks.append(_first_failure(
            f"F mu = mu (F x F) {t}", "projection formula", pf,
            lambda c: frobenius_map(multiply(c[2], c[1]))
            == multiply(frobenius_map(c[2]), frobenius_map(c[1]))))
    return checks


# -- pairing ----------------------------------------------------------------------------------

def suite_pairing(cfg: SuiteConfig, rng: random.Random) -> list[Check]:
    checks = []
    for f, m, b in _grid(cfg, {2: 3, 3: 2}, 2, 2**16):
        t = tag(f, m, b)
        E = BasedSpace.standard(f, b)
        checks.extend(_retag(verify_pairing(E, m), t))
        D = E.dual()
        adj = [(random_element(E, m, rng, 1), random_element(D, m, rng))
               for _ in range(cfg.cases)]
        checks.append(_first_failure(
            f"<V a, b> = V <a, F b> {t}", "pairing adjunction", adj,
            lambda c: pairing(verschiebung(c[0]), c[1])
            == scalar_verschiebung(pairing(c[0], frobenius_map(c[1])))))
        if (b * b) ** (f.p**m) <= DENSE_CAP:
            pairs = [(random_element(E, m, rng), random_element(D, m, rng))
                     for _ in range(min(cfg.cases, 5))]
            checks.append(_first_failure(
                f"pairing = W_m(ev) mu {t}", "pairing", pairs,
                lambda c: pairing(c[0], c[1]) == pairing_via_product(c[0], c[1])))
        if b == 1:
            one = teichmuller(E, (1,), m)
            ok = pairing(one, WittElement(D, one.cls)) == WittScalar.one(f, m)
            checks.append(Check(f"<T s, T s*> = 1 {t}", ok, "pairing"))
    return checks


# -- tau ----------------------------------------------------------------------------------------

def suite_tau(cfg: SuiteConfig, rng: random.Random) -> list[Check]:
    checks = []
    for f, m, b in _grid(cfg, {2: 2, 3: 1}, 2, 2**16):
        t = tag(f, m, b)
        M = BasedSpace.standard(f, b, "a")
        N = BasedSpace.standard(f, b, "c")
        L = BasedSpace.standard(f, 1, "d")
        if (b * b) ** (f.p**m) > DENSE_CAP:
            continue
        MN = M.tensor(N)
        xs = [random_element(MN, m, rng) for _ in range(cfg.cases)]
        checks.append(_first_failure(
            f"tau_(N,M) tau_(M,N) = id {t}", "trace functor", xs,
            lambda x: tau(tau(x)) == x))
        triple = M.tensor(L).tensor(N)
        ys = [random_element(triple, m, rng) for _ in range(cfg.cases)]
        checks.append(_first_failure(
            f"hexagon {t}", "trace functor", ys,
            lambda y: tau(tau(tau(y, 1), 1), 1) == y))
        unit_r, unit_l = M.tensor(M.unit()), M.unit().tensor(M)
        zs = [random_element(M, m, rng) for _ in range(cfg.cases)]
        checks.append(_first_failure(
            f"tau_(M,1) = tau_(1,M) = id {t}", "trace functor units", zs,
            lambda z: tau(WittElement(unit_r, z.cls)).cls == z.cls
            and tau(WittElement(unit_l, z.cls)).cls == z.cls))
        vecs = [(random_vector(M, rng), random_vector(N, rng)) for _ in range(cfg.cases)]
        checks.append(_first_failure(
            f"tau T(e e') = T(e' e) {t}", "trace functor", vecs,
            lambda v: tau(teichmuller(MN, tuple(f.mul(a, c) for a in v[0] for c in v[1]), m))
            == teichmuller(N.tensor(M), tuple(f.mul(c, a) for c in v[1] for a in v[0]), m)))
        pairs = [(random_element(M, m, rng), random_element(N, m, rng))
                 for _ in range(cfg.cases)]
        checks.append(_first_failure(
            f"tau mu(x, y) = mu(y, x) {t}", "tau and mu", pairs,
            lambda c: tau(multiply(c[0], c[1])) == multiply(c[1], c[0])))
        if m > 1:
            checks.append(_first_failure(
                f"R tau = tau R {t}", "tau and R", xs,
                lambda x: restriction(tau(x)) == tau(restriction(x))))
            ws = [random_element(MN, m, rng, 1) for _ in range(cfg.cases)]
            checks.append(_first_failure(
                f"tau V = V tau {t}", "tau and V", ws,
                lambda w: tau(verschiebung(w)) == verschiebung(tau(w))))
            checks.append(_first_failure(
                f"tau F = F tau {t}", "tau and F", xs,
                lambda x: tau(frobenius_map(x)) == frobenius_map(tau(x))))
    return checks


# -- cocycles ------------------------------------------------------------------------------------

def suite_cocycle(cfg: SuiteConfig, rng: random.Random) -> list[Check]:
    checks = []
    depth = {2: 3, 3: 2, 5: 1}
    for f in _fields(cfg):
        p = f.p
        N = cfg.m if cfg.m is not None else depth.get(p, 1)
        cs = solve_cocycles(p, N)
        for n in range(1, N + 1):
            checks.append(Check(f"defect identity depth {n} p={p}",
                                verify_cocycle_identity(cs, n), "universal cocycles"))
        for m in range(1, {2: 3, 3: 2}.get(p, 1) + 1):
            for b in range(1, (cfg.dim or 2) + 1):
                if b ** (p**m) > DENSE_CAP:
                    continue
                t = tag(f, m, b)
                E = BasedSpace.standard(f, b)
                used = cs[: m - 1] if len(cs) >= m - 1 else solve_cocycles(p, m - 1)
                pairs = [(random_vector(E, rng), random_vector(E, rng), random_vector(E, rng))
                         for _ in range(cfg.cases)]
                checks.append(_first_failure(
                    f"addition defect two ways {t}", "addition cocycle", pairs,
                    lambda c: addition_defect(E, c[0], c[1], m, used) is not None))
                checks.append(_first_failure(
                    f"defect symmetric {t}", "addition cocycle", pairs,
                    lambda c: addition_defect(E, c[0], c[1], m, used)
                    == addition_defect(E, c[1], c[0], m, used)))

                def two_cocycle(c):
                    a, bb, d = c
                    add = lambda u, v: tuple(f.add(x, y) for x, y in zip(u, v))  # noqa: E731
                    lhs = addition_defect(E, a, bb, m, used) + addition_defect(E, add(a, bb), d,
                                                                              m, used)
                    rhs = addition_defect(E, bb, d, m, used) + addition_defect(E, a, add(bb, d),
                                                                              m, used)
                    return lhs == rhs

                checks.append(_first_failure(f"2-cocycle identity {t}", "addition cocycle",
                                             pairs, two_cocycle))
                checks.append(_first_failure(
                    f"c(e, 0) = 0 {t}", "addition cocycle", pairs,
                    lambda c: addition_defect(E, c[0], (0,) * b, m, used).is_zero()))
                if f.d == 1 and p ** sum(b ** (p**i) for i in range(m)) <= 256:
                    comps = [list(itertools.product(range(p), repeat=b ** (p**i)))
                             for i in range(m)]
                    vals = {truncated_teichmuller_expansion(E, list(c), m).cls
                            for c in itertools.product(*comps)}
                    size = p ** witt_space(E, m).module_length
                    checks.append(Check(f"Teichmuller expansion onto W_m(E) {t}",
                                        len(vals) == size, "Teichmuller expansion",
                                        f"{len(vals)} of {size}"))
    return checks


# -- Mackey ---------------------------------------------------------------------------------------

def suite_mackey(cfg: SuiteConfig, rng: random.Random) -> list[Check]:
    checks = []
    for f, m, b in _grid(cfg, {2: 3, 3: 2}, 2, 2**16):
        t = tag(f, m, b)
        E = BasedSpace.standard(f, b)
        gens = [WittElement(E, c) for c in witt_space(E, m).basis()]
        xs = gens + [random_element(E, m, rng) for _ in range(cfg.cases)]
        checks.append(_first_failure(f"V F = p {t}", "V F = p", xs,
                                     lambda x: verschiebung(frobenius_map(x)) == x.mul_int(f.p)))
        for n in range(1, m + 1):
            ys = [WittElement(E, c) for c in witt_space(E, m, n).basis()] + \
                [random_element(E, m, rng, n) for _ in range(cfg.cases)]
            checks.append(_first_failure(
                f"F V = residual trace at level {n} {t}", "F V = trace", ys,
                lambda y: frobenius_map(verschiebung(y)) == residual_sum(y)))
            checks.append(_first_failure(
                f"F V^{n} = residual trace of V^{n - 1} {t}", "double coset formula", ys,
                lambda y, n=n: frobenius_map(iterate(verschiebung, y, n))
                == residual_sum(iterate(verschiebung, y, n - 1))))
            checks.append(_first_failure(
                f"F^{n} V^{n} = sum over G/G_{n} {t}", "double coset formula", ys,
                lambda y, n=n: iterate(frobenius_map, iterate(verschiebung, y, n), n)
                == _full_rotation_sum(y)))
    return checks


def _full_rotation_sum(y: WittElement) -> WittElement:
    total = witt_zero(y.space, y.m, y.level)
    for s in range(y.cls.space.p**y.level):
        total = total + WittElement(y.space, y.cls.rotate(s))
    return total


RUNNERS: dict[str, Callable[[SuiteConfig, random.Random], list[Check]]] = {
    "scalars": suite_scalars, "tate": suite_tate, "functor": suite_functor,
    "sequences": suite_sequences, "filtrations": suite_filtrations, "mult": suite_mult,
    "pairing": suite_pairing, "tau": suite_tau, "cocycle": suite_cocycle,
    "mackey": suite_mackey,
}


# -- runner and report ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteResult:
    config: SuiteConfig
    checks: tuple[Check, ...]

    @property
    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {"suite": self.config.suite, "cases": len(self.checks),
                "failures": self.failures}

    def text(self) -> str:
        lines = [f"# suite {self.config.suite}",
                 f"# config {json.dumps(self.config.header(), sort_keys=True)}"]
        lines += [c.line() for c in self.checks]
        lines.append(f"# {len(self.checks)} checks, {len(self.failures)} failures")
        return "\n".join(lines) + "\n"

    def json(self) -> str:
        out = self.summary()
        out["config"] = self.config.header()
        out["checks"] = [{"name": c.name, "ok": c.ok, "anchor": c.anchor, "detail": c.detail}
                         for c in self.checks]
        return json.dumps(out, indent=2, sort_keys=True) + "\n"


def run_suite(cfg: SuiteConfig, **hooks) -> SuiteResult:
    if cfg.suite not in RUNNERS:
        raise RangeError(f"unknown suite {cfg.suite!r}; choose from {', '.join(SUITES)}")
    rng = random.Random(f"{cfg.seed}:{cfg.suite}")
    checks = RUNNERS[cfg.suite](cfg, rng, **hooks)
    return SuiteResult(cfg, tuple(sorted(checks, key=lambda c: c.name)))
