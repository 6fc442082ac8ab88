"""W_m of a based vector space: components indexed by necklaces."""
from polywitt import (BasedSpace, FiniteField, LinearMap, apply_map, enumerate_aperiodic_necklaces,
                      restriction, teichmuller, witt_space)

F2 = FiniteField(2)
E = BasedSpace.standard(F2, 2)

# Aperiodic necklaces of length 2^i over a 2-letter alphabet index the summands.
for i in range(3):
    print(f"aperiodic necklaces, length {2**i}:", [n.primitive(2) for n in enumerate_aperiodic_necklaces(2, 2, i)])

for m in (1, 2, 3):
    print(f"length of W_{m}(F_2^2):", witt_space(E, m).module_length)

# The Teichmuller class of a vector and its restriction to W_1 = E.
x = teichmuller(E, (1, 1), 2)
print("T(1,1) in W_2:")
print(x.table())
print("R T(1,1):")
print(restriction(x).table())

# W_2 is a functor: applying a linear map commutes with T.
f = LinearMap.make(E, BasedSpace.standard(F2, 1, "t"), [[1, 1]])
print("W_2(f) T(1,1) == T(f(1,1)):", apply_map(f, x) == teichmuller(f.target, f.apply((1, 1)), 2))
