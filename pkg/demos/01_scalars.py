"""Witt vectors of a finite field, and the identification W_n(F_p) = Z/p^n."""
from polywitt import FiniteField, WittScalar, compute_witt_polynomials, teichmuller_scalar, to_zpn
from polywitt.base_ring import scalar_verschiebung

F2 = FiniteField(2)
one = WittScalar.one(F2, 3)
print("1 + 1 in W_3(F_2):", (one + one).coords, "=", to_zpn(one + one), "mod 8")

# Addition is given by integer polynomials; S_1 already has a carry term.
P = compute_witt_polynomials(2, 2)
names = ["x0", "x1", "y0", "y1"]


def show(poly):
    parts = []
    for mono, c in sorted(poly.terms.items()):
        factors = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, mono) if e)
        sign = "+" if c > 0 else "-"
        parts.append(f"{sign}{factors}" if abs(c) == 1 else f"{c:+d}*{factors}")
    return " ".join(parts)


print("S_1 =", show(P.sum_polys[1]))

# V shifts coordinates, F is coordinatewise Frobenius, and F V = p.
a = WittScalar.make(F2, (1, 1))
print("V(a) =", scalar_verschiebung(a).coords, " F V(a) =", scalar_verschiebung(a).frobenius().coords,
      " 2a =", (a.pad(3) * 2).coords)

# Over F_4 the Frobenius is no longer trivial, and Teichmuller lifts are multiplicative.
F4 = FiniteField(2, (1, 1, 1))
x, y = teichmuller_scalar(F4, 2, 3), teichmuller_scalar(F4, 3, 3)
print("T(2) T(3) == T(2*3):", x * y == teichmuller_scalar(F4, F4.mul(2, 3), 3))
print("F T(2) == T(2^2):", x.frobenius() == teichmuller_scalar(F4, F4.frobenius(2), 3))
