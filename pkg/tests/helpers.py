"""Random generators and independent oracles shared by the test modules.

The oracles deliberately avoid desingkit internals: brute-force index loops
over plain dicts, or sympy for anything symbolic.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import sympy

from desingkit.liealg import (
    LieAlgebra,
    abelian,
    change_basis,
    counterexample6,
    direct_sum,
    heisenberg,
    sl2,
    so3,
    table1,
)
from desingkit.multivector import PolyVector
from desingkit.symbolic import PolyMatrix, Polynomial, det_rational


def random_rational(rng: random.Random, num: int = 4, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_invertible(rng: random.Random, n: int, spread: int = 3) -> list[list[Fraction]]:
    while True:
        M = [[Fraction(rng.randint(-spread, spread)) for _ in range(n)] for _ in range(n)]
        if det_rational(M) != 0:
            return M


def random_monomial_matrix(rng: random.Random, n: int) -> list[list[Fraction]]:
    """Signed, scaled permutation: conjugating by it keeps constants sparse."""
    perm = list(range(n))
    rng.shuffle(perm)
    M = [[Fraction(0)] * n for _ in range(n)]
    for i, p in enumerate(perm):
        M[p][i] = Fraction(rng.choice([-2, -1, 1, 2, 3]), rng.choice([1, 2]))
    return M


def builtin_pool() -> list[LieAlgebra]:
    pool = [table1(f) for f in (1, 3, 5, 6, 7)]
    pool += [table1(2, Fraction(1, 2)), table1(2, 1), table1(2, -1), table1(4, 0), table1(4, 1), table1(4, 2)]
    pool += [heisenberg(1), heisenberg(2), counterexample6(), so3(), sl2()]
    return pool


def random_sparse_valid(rng: random.Random, max_dim: int = 6) -> LieAlgebra:
    """Direct sum of builtins, relabelled by a monomial matrix."""
    parts = []
    dim = 0
    pool = builtin_pool() + [abelian(1), abelian(2)]
    for _ in range(3):
        g = rng.choice(pool)
        if dim + g.dim <= max_dim:
            parts.append(g)
            dim += g.dim
    if not parts:
        parts = [abelian(1)]
    g = parts[0]
    for h in parts[1:]:
        g = direct_sum(g, h)
    return change_basis(g, random_monomial_matrix(rng, g.dim))


def random_valid(rng: random.Random, max_dim: int = 6) -> LieAlgebra:
    g = random_sparse_valid(rng, max_dim)
    return change_basis(g, random_invertible(rng, g.dim))


def structure_dict(g: LieAlgebra) -> dict:
    out = {}
    for i, j, k, c in g.constants:
        out[(i, j, k)] = out.get((i, j, k), 0) + Fraction(c)
    return out


def brute_bracket(C: dict, n: int, u: list, v: list) -> list:
    out = [Fraction(0)] * n
    for (i, j, k), c in C.items():
        out[k] += c * (u[i] * v[j] - u[j] * v[i])
    return out


def brute_jacobi_ok(C: dict, n: int) -> bool:
    e = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
    for i, j, k in combinations(range(n), 3):
        total = [Fraction(0)] * n
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = brute_bracket(C, n, e[a], e[b])
            outer = brute_bracket(C, n, inner, e[c])
            total = [s + t for s, t in zip(total, outer)]
        if any(total):
            return False
    return True


def perturb(rng: random.Random, g: LieAlgebra) -> dict:
    """Constants of ``g`` with one entry changed so that Jacobi fails."""
    n = g.dim
    base = structure_dict(g)
    while True:
        C = dict(base)
        i, j = sorted(rng.sample(range(n), 2))
        k = rng.randrange(n)
        C[(i, j, k)] = C.get((i, j, k), 0) + Fraction(rng.choice([-2, -1, 1, 3]))
        if not brute_jacobi_ok(C, n):
            return C


# -- sympy oracles ----------------------------------------------------------------

def sym_vars(n: int):
    return sympy.symbols(f"x1:{n + 1}")


def to_sympy(p: Polynomial):
    xs = sym_vars(p.num_vars)
    expr = sympy.Integer(0)
    for exp, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for x, e in zip(xs, exp):
            term *= x**e
        expr += term
    return sympy.expand(expr)


def sympy_matrix(M: PolyMatrix):
    return sympy.Matrix(M.rows, M.cols, lambda i, j: to_sympy(M[i, j]))


def sympy_kks(C: dict, n: int):
    xs = sym_vars(n)
    P = sympy.zeros(n, n)
    for (i, j, k), c in C.items():
        P[i, j] += sympy.Rational(c.numerator, c.denominator) * xs[k]
        P[j, i] -= sympy.Rational(c.numerator, c.denominator) * xs[k]
    return P


def sympy_jacobiator_zero(P, n: int) -> bool:
    """``{x_i,{x_j,x_k}} + cyclic`` with ``{x_a, f} = sum_l P[a,l] d_l f``."""
    xs = sym_vars(n)

    def br(a, f):
        return sum(P[a, l] * sympy.diff(f, xs[l]) for l in range(n))

    for i, j, k in combinations(range(n), 3):
        s = br(i, P[j, k]) + br(j, P[k, i]) + br(k, P[i, j])
        if sympy.expand(s) != 0:
            return False
    return True


def sympy_pairing(X: PolyVector, covectors, point) -> Fraction:
    """Evaluate ``X(a_1, ..., a_p)`` at ``point`` by the determinant formula."""
    p = X.degree
    total = Fraction(0)
    for idx, coeff in X.components.items():
        M = sympy.Matrix(p, p, lambda r, c: covectors[r][idx[c]])
        total += coeff.evaluate(point) * Fraction(str(M.det()))
    return total
