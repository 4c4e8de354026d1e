"""Heisenberg algebras and their rank-2n certificates."""

from desingkit.algebroid import (
    kernel_ideal_at_zero,
    random_points,
    rank_bound_report,
    verify_desingularizes,
)
from desingkit.desing import construct_heisenberg_algebroid, verdict
from desingkit.liealg import abelian, direct_sum, heisenberg, kks
from desingkit.multivector import format_polyvector
import random

for n in (1, 2, 3):
    g = heisenberg(n)
    A = construct_heisenberg_algebroid(n)
    r = verify_desingularizes(A, kks(g))
    print(f"h_{2 * n + 1}: pi = {format_polyvector(kks(g))}")
    for line in r.lines():
        print("   ", line)
    K = kernel_ideal_at_zero(A, g)
    print("    kernel at 0 has dim", K.subspace.dim, "abelian ideal:", K.abelian_ideal)

# ranks never exceed the algebroid rank; equality off the witness hypersurface
rng = random.Random(0)
A = construct_heisenberg_algebroid(2)
rep = rank_bound_report(A, kks(heisenberg(2)), random_points(5, 10, rng))
for p in rep.points[:4]:
    print(p.point, "rank", p.rank, "witness nonzero" if p.minor_nonzero else "")
print("rank bound ok:", rep.ok)

# a central summand is split off before the Heisenberg rule fires
v = verdict(direct_sum(heisenberg(2), abelian(2)))
print(v.outcome, v.rule)
for line in v.trace:
    print("   ", line)
