"""Walk through the seven non-abelian 3D families: bivector, family, verdict."""

import random
from fractions import Fraction

from desingkit.algebroid import verify_desingularizes
from desingkit.liealg import change_basis, classify3, kks, table1
from desingkit.multivector import format_polyvector, jacobiator
from desingkit.symbolic import det_rational
from desingkit.desing import verdict

cases = [(1, None), (2, Fraction(1, 2)), (3, None), (4, 1), (5, None), (6, None), (7, None)]

for family, lam in cases:
    g = table1(family, lam)
    pi = kks(g)
    v = verdict(g)
    print(f"family {family}" + (f" (lambda={lam})" if lam is not None else ""))
    print("  pi        =", format_polyvector(pi))
    print("  poisson   =", jacobiator(pi).is_zero)
    print("  verdict   =", v.outcome, "via", v.rule)
    if v.certificate is not None:
        A = v.certificate
        print("  anchor V  =", format_polyvector(A.anchor_field(0)))
        print("  anchor W  =", format_polyvector(A.anchor_field(1)))

# same algebra in a scrambled basis: the family and the verdict do not move
rng = random.Random(7)
T = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
while det_rational(T) == 0:
    T = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]

h = change_basis(table1(3), T)
print()
print("family 3 in basis", T)
print("  pi        =", format_polyvector(kks(h)))
print("  classify  =", classify3(h).family)
v = verdict(h)
print("  verdict   =", v.outcome)
print("  report:")
for line in verify_desingularizes(v.certificate, kks(h)).lines():
    print("   ", line)
