"""Products, the trace isomorphism and the addition cocycle."""
from polywitt import (BasedSpace, FiniteField, addition_defect, frobenius_map, multiply,
                      solve_cocycles, tau, teichmuller, verschiebung)

F2 = FiniteField(2)
M, N = BasedSpace.standard(F2, 2, "a"), BasedSpace.standard(F2, 2, "b")
x, y = teichmuller(M, (1, 0), 2), teichmuller(N, (1, 1), 2)

xy = multiply(x, y)
print("mu(T e, T e') is the Teichmuller class of e (x) e':",
      xy == teichmuller(M.tensor(N), (1, 1, 0, 0), 2))
print("tau swaps the factors:", tau(xy) == multiply(y, x))
print("V F = 2:", verschiebung(frobenius_map(x)) == x.mul_int(2))

# T is not additive; the defect is governed by universal cocycles c_i.
for c in solve_cocycles(2, 2):
    print(f"c_{c.i} =", " + ".join("".join("ab"[s] for s in w) for w, _ in c.terms))

E = BasedSpace.standard(F2, 1)
d = addition_defect(E, (1,), (1,), 2)
print("T(1+1) - T(1) - T(1) in W_2(F_2):")
print(d.table())
