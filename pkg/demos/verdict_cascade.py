"""Run the verdict cascade over the builtin pool and print which rule decided each."""

from desingkit.liealg import abelian, direct_sum, heisenberg, sl2, so3, table1, counterexample6
from desingkit.desing import verdict

pool = {
    "abelian(4)": abelian(4),
    "heisenberg(1) + abelian(1)": direct_sum(heisenberg(1), abelian(1)),
    "sl2 + abelian(1)": direct_sum(sl2(), abelian(1)),
    "so3": so3(),
    "family 2, lambda=-1": table1(2, -1),
    "heisenberg(3)": heisenberg(3),
    "counterexample6": counterexample6(),
    "heisenberg(1) + heisenberg(1)": direct_sum(heisenberg(1), heisenberg(1)),
}

for name, g in pool.items():
    v = verdict(g)
    print(f"{name:32s} {v.outcome:22s} {v.rule or '-'}")
    for r in v.reasons:
        print(" " * 34 + r)
