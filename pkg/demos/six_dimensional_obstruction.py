"""The free 2-step nilpotent algebra on three generators is non-desingularizable."""

from desingkit.desing import cross_product_identity_holds, obstruction_witness_6d, verdict
from desingkit.liealg import abelian, counterexample6, direct_sum, generic_symplectic_rank, kks
from desingkit.multivector import PolyVector, format_polyvector, rank_at
from desingkit.symbolic import Polynomial

g = counterexample6()
pi = kks(g)
print("pi =", format_polyvector(pi))
print("generic rank:", generic_symplectic_rank(g))
print("rank at origin:", rank_at(pi, [0] * 6), " rank at y1=1:", rank_at(pi, [0, 0, 0, 1, 0, 0]))

# a rank-2 certificate would give pi = V ^ W with V, W along d_x only;
# the cross product of their x-parts would then be (y3, -y2, y1)
print("cross-product identity:", cross_product_identity_holds())

y1, y2 = Polynomial.var(6, 3), Polynomial.var(6, 4)
V = PolyVector.vector_field([1, 0, 0, 0, 0, 0])
W = PolyVector.vector_field([0, y1, y2, 0, 0, 0])
print("trial V, W:", obstruction_witness_6d(V, W).describe())

for k in range(3):
    h = direct_sum(g, abelian(k)) if k else g
    v = verdict(h)
    print(f"dim {h.dim}:", v.outcome, "via", v.rule)
