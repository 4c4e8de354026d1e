"""Finite-dimensional real Lie algebras given by rational structure constants.

A :class:`LieAlgebra` stores ``[e_i, e_j] = sum_k c e_k`` as sparse
``(i, j, k, c)`` entries with ``i < j`` (0-based).  Vectors of the algebra are
coordinate sequences in that basis.  Basis changes take a matrix whose
columns are the new basis vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import isqrt
from typing import Iterable, Optional, Sequence

from .errors import BadParameter, InvalidAlgebra, NotDim3, NotLinear, SchemaError
from .multivector import PolyVector, sharp_matrix
from .symbolic import (
    Polynomial,
    as_rational,
    det_rational,
    identity_matrix,
    inverse_rational,
    mat_generic_rank,
    matmul,
    matvec,
    nullspace,
    rank,
    rref,
    solve_linear_rational,
    transpose,
)

Vector = tuple  # tuple[Fraction, ...]


def _vec(v) -> Vector:
    return tuple(as_rational(x) for x in v)


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(int(k == i)) for k in range(n))


class LieAlgebra:
    __slots__ = ("dim", "constants", "_table")

    def __init__(self, dim: int, constants: Iterable = ()):
        if dim < 0:
            raise InvalidAlgebra("dimension must be nonnegative")
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for entry in constants:
            i, j, k, c = entry
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise InvalidAlgebra(f"index out of range in {entry} for dimension {dim}")
            if i >= j:
                raise InvalidAlgebra(f"structure constants need i < j, got {entry}")
            c = as_rational(c)
            row = table.setdefault((i, j), {})
            s = row.get(k, 0) + c
            if s:
                row[k] = s
            else:
                row.pop(k, None)
        self._table = {key: row for key, row in table.items() if row}
        self.dim = dim
        self.constants = tuple(
            (i, j, k, c) for (i, j), row in sorted(self._table.items()) for k, c in sorted(row.items())
        )

    def basis_bracket(self, i: int, j: int) -> dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return self._table.get((i, j), {})
        return {k: -c for k, c in self._table.get((j, i), {}).items()}

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        """Bracket of two coordinate vectors."""
        out = [Fraction(0)] * self.dim
        for (i, j), row in self._table.items():
            coef = u[i] * v[j] - u[j] * v[i]
            if coef:
                for k, c in row.items():
                    out[k] += coef * c
        return tuple(out)

    def ad(self, x: Sequence) -> list[list[Fraction]]:
        """Matrix of ``ad_x``; column j holds ``[x, e_j]``."""
        cols = [self.bracket(x, unit(self.dim, j)) for j in range(self.dim)]
        return transpose(cols) if cols else []

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.constants == other.constants

    def __hash__(self) -> int:
        return hash((self.dim, self.constants))

    def __repr__(self) -> str:
        items = ", ".join(f"C{i + 1}{j + 1}^{k + 1}={c}" for i, j, k, c in self.constants)
        return f"LieAlgebra(dim={self.dim}, {{{items}}})"


# -- subspaces -----------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^n kept in reduced row echelon form, so equality is exact."""

    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = [list(_vec(v)) for v in vectors]
        if not rows:
            return cls(ambient_dim, ())
        R, piv = rref(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(R[i]) for i in range(len(piv))))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span([unit(n, i) for i in range(n)], n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        return rank(list(self.basis) + [list(_vec(v))]) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        if not self.basis or not other.basis:
            return Subspace(self.ambient_dim, ())
        # solve sum a_i u_i - sum b_j w_j = 0
        cols = list(self.basis) + [tuple(-x for x in w) for w in other.basis]
        A = transpose([list(c) for c in cols])
        vecs = []
        for sol in nullspace(A, len(cols)):
            a = sol[: self.dim]
            vecs.append(
                tuple(sum((ai * u[k] for ai, u in zip(a, self.basis)), Fraction(0)) for k in range(self.ambient_dim))
            )
        return Subspace.span(vecs, self.ambient_dim)

    def annihilator(self) -> "Subspace":
        """Covectors vanishing on the subspace (coordinates in the dual basis)."""
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        return Subspace.span(nullspace([list(b) for b in self.basis]), self.ambient_dim)


# -- structural predicates -------------------------------------------------------

def jacobi_violation(g: LieAlgebra) -> tuple[int, int, int] | None:
    """First triple i < j < k whose cyclic Jacobi sum is nonzero, or None."""
    n = g.dim
    for i, j, k in combinations(range(n), 3):
        ei, ej, ek = unit(n, i), unit(n, j), unit(n, k)
        s1 = g.bracket(g.bracket(ei, ej), ek)
        s2 = g.bracket(g.bracket(ej, ek), ei)
        s3 = g.bracket(g.bracket(ek, ei), ej)
        if any(a + b + c for a, b, c in zip(s1, s2, s3)):
            return (i, j, k)
    return None


def jacobi_check(g: LieAlgebra) -> bool:
    return jacobi_violation(g) is None


def derived_subalgebra(g: LieAlgebra) -> Subspace:
    n = g.dim
    vecs = [
        tuple(row.get(k, Fraction(0)) for k in range(n)) for row in g._table.values()
    ]
    return Subspace.span(vecs, n)


def center(g: LieAlgebra) -> Subspace:
    n = g.dim
    if n == 0:
        return Subspace(0, ())
    rows = []
    for i in range(n):
        rows.extend(g.ad(unit(n, i)))
    return Subspace.span(nullspace(rows, n), n)


def killing_form(g: LieAlgebra) -> list[list[Fraction]]:
    n = g.dim
    ads = [g.ad(unit(n, i)) for i in range(n)]
    K = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            prod = matmul(ads[i], ads[j])
            K[i][j] = K[j][i] = sum((prod[d][d] for d in range(n)), Fraction(0))
    return K


def is_abelian(g: LieAlgebra) -> bool:
    return not g.constants


def is_semisimple(g: LieAlgebra) -> bool:
    return det_rational(killing_form(g)) != 0


def is_reductive(g: LieAlgebra) -> bool:
    """``g = z(g) + [g, g]`` as a direct sum with ``[g, g]`` semisimple."""
    D = derived_subalgebra(g)
    z = center(g)
    if D.dim + z.dim != g.dim or D.intersection(z).dim:
        return False
    if not D.dim:
        return True
    K = killing_form(g)
    B = [list(v) for v in D.basis]
    return det_rational(matmul(matmul(B, K), transpose(B))) != 0


def lower_central_series(g: LieAlgebra) -> list[Subspace]:
    n = g.dim
    cur = Subspace.full(n)
    series = [cur]
    for _ in range(n + 1):
        vecs = [g.bracket(unit(n, i), v) for i in range(n) for v in cur.basis]
        nxt = Subspace.span(vecs, n)
        if nxt.dim == cur.dim:
            break
        series.append(nxt)
        cur = nxt
    return series


def is_nilpotent(g: LieAlgebra) -> bool:
    return lower_central_series(g)[-1].dim == 0


# -- Poisson side -------------------------------------------------------------

def kks(g: LieAlgebra) -> PolyVector:
    """Linear Poisson bivector on the dual: component (i, j) is ``sum_k C_ij^k x_k``."""
    n = g.dim
    comps = {}
    for (i, j), row in g._table.items():
        comps[(i, j)] = Polynomial.linear_form([row.get(k, 0) for k in range(n)])
    return PolyVector(n, 2, comps)


def linearize(pi: PolyVector) -> LieAlgebra:
    """Read structure constants off a bivector with homogeneous linear components."""
    if pi.degree != 2:
        raise NotLinear("linearize needs a bivector")
    constants = []
    for (i, j), p in pi.components.items():
        if not p.is_homogeneous(1):
            raise NotLinear(f"component ({i + 1},{j + 1}) = {p} is not homogeneous linear")
        for k, c in enumerate(p.linear_coefficients()):
            if c:
                constants.append((i, j, k, c))
    return LieAlgebra(pi.num_vars, constants)


def generic_symplectic_rank(g: LieAlgebra) -> int:
    return mat_generic_rank(sharp_matrix(kks(g)))


# -- constructions -------------------------------------------------------------

def direct_sum(g1: LieAlgebra, g2: LieAlgebra) -> LieAlgebra:
    s = g1.dim
    return LieAlgebra(
        g1.dim + g2.dim,
        list(g1.constants) + [(i + s, j + s, k + s, c) for i, j, k, c in g2.constants],
    )


def change_basis(g: LieAlgebra, T) -> LieAlgebra:
    """Rewrite ``g`` in the basis given by the columns of ``T``."""
    n = g.dim
    T = [[as_rational(v) for v in row] for row in T]
    if len(T) != n or any(len(r) != n for r in T):
        raise InvalidAlgebra(f"basis change must be {n}x{n}")
    Tinv = inverse_rational(T)
    cols = transpose(T)
    constants = []
    for a, b in combinations(range(n), 2):
        new = matvec(Tinv, g.bracket(cols[a], cols[b]))
        constants.extend((a, b, c, v) for c, v in enumerate(new) if v)
    return LieAlgebra(n, constants)


def abelian(n: int) -> LieAlgebra:
    if n < 0:
        raise BadParameter("dimension must be nonnegative")
    return LieAlgebra(n)


def heisenberg(n: int) -> LieAlgebra:
    """Heisenberg algebra of dimension 2n+1: ``[e_k, e_{n+k}] = e_{2n+1}``."""
    if n < 1:
        raise BadParameter("heisenberg(n) needs n >= 1")
    return LieAlgebra(2 * n + 1, [(k, n + k, 2 * n, 1) for k in range(n)])


def counterexample6() -> LieAlgebra:
    """Free 2-step nilpotent algebra on three generators."""
    return LieAlgebra(6, [(0, 1, 3, 1), (0, 2, 4, 1), (1, 2, 5, 1)])


def table1(family: int, lam=None) -> LieAlgebra:
    """Representative of a non-abelian 3-dimensional family (1..7)."""
    if family in (2, 4):
        if lam is None:
            raise BadParameter(f"family {family} needs a parameter")
        lam = as_rational(lam)
        if family == 2 and not (0 < abs(lam) <= 1):
            raise BadParameter("family 2 needs 0 < |lambda| <= 1")
        if family == 4 and lam < 0:
            raise BadParameter("family 4 needs lambda >= 0")
    reps = {
        1: lambda: [(1, 2, 0, 1)],
        2: lambda: [(0, 2, 0, 1), (1, 2, 1, lam)],
        3: lambda: [(0, 2, 0, 1), (1, 2, 0, 1), (1, 2, 1, 1)],
        4: lambda: [(1, 2, 0, 1), (0, 2, 1, -1), (1, 2, 1, lam), (0, 2, 0, lam)],
        5: lambda: [(0, 1, 0, 1), (1, 2, 2, 1), (0, 2, 1, -2)],
        6: lambda: [(0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 1, -1)],
        7: lambda: [(0, 1, 0, 1)],
    }
    if family not in reps:
        raise BadParameter(f"no family {family}; expected 1..7")
    return LieAlgebra(3, reps[family]())


def so3() -> LieAlgebra:
    return table1(6)


def sl2() -> LieAlgebra:
    return table1(5)


def builtin(name: str, **params) -> LieAlgebra:
    makers = {
        "heisenberg": lambda: heisenberg(int(params.get("n", 1))),
        "counterexample6": counterexample6,
        "table1": lambda: table1(int(params["family"]), params.get("lam")),
        "abelian": lambda: abelian(int(params.get("n", 1))),
        "so3": so3,
        "sl2": sl2,
    }
    if name not in makers:
        raise BadParameter(f"unknown builtin {name!r}; choose from {sorted(makers)}")
    try:
        return makers[name]()
    except KeyError as exc:
        raise BadParameter(f"builtin {name!r} needs parameter {exc}") from exc


# -- abelian factors -------------------------------------------------------------

@dataclass(frozen=True)
class AbelianSplit:
    """``change_basis(g, basis) == direct_sum(h, abelian(m))``."""

    h: LieAlgebra
    m: int
    basis: tuple


def _extend_independent(start: list, candidates: Iterable, n: int) -> list:
    """Greedily pick candidates that stay independent of ``start`` and each other."""
    chosen = []
    cur = [list(v) for v in start]
    r = rank(cur) if cur else 0
    for v in candidates:
        trial = cur + [list(v)]
        if rank(trial) > r:
            chosen.append(tuple(v))
            cur = trial
            r += 1
    return chosen


def split_abelian_factor(g: LieAlgebra) -> AbelianSplit | None:
    """Split off the part of the center not contained in ``[g, g]``."""
    n = g.dim
    D = derived_subalgebra(g)
    z = center(g)
    zd = z.intersection(D)
    if z.dim == zd.dim:
        return None
    factor = _extend_independent(list(D.basis), z.basis, n)
    ext = _extend_independent(list(D.basis) + factor, (unit(n, i) for i in range(n)), n)
    h_space = Subspace.span(list(D.basis) + ext, n)
    m = len(factor)
    T = transpose([list(v) for v in list(h_space.basis) + factor])
    gT = change_basis(g, T)
    k = n - m
    if any(i >= k or j >= k or c_idx >= k for i, j, c_idx, _ in gT.constants):
        raise AssertionError("complement of the central factor is not an ideal")
    h = LieAlgebra(k, gT.constants)
    return AbelianSplit(h, m, tuple(tuple(r) for r in T))


# -- dimension 3 -------------------------------------------------------------

ABELIAN_FAMILY = 0


@dataclass(frozen=True)
class Classification3:
    """Family 1..7 (0 for abelian), invariant pair, and adapting basis.

    For families 2, 3 and 4 ``invariant`` is ``(tr(M)^2/|det M|, sign det M)``
    where ``M`` is ``ad`` of a complement vector restricted to ``[g, g]``;
    ``parameter`` is the representative's lambda when it is rational.
    """

    family: int
    invariant: Optional[tuple]
    adapt: tuple
    parameter: Optional[Fraction] = None


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def _coords_in(basis: Sequence[Vector], v: Sequence) -> list[Fraction]:
    sol = solve_linear_rational(transpose([list(b) for b in basis]), list(v))
    if sol is None:
        raise ValueError("vector is not in the span")
    return list(sol.particular)


def _as_matrix(cols: Sequence[Sequence]) -> tuple:
    return tuple(tuple(r) for r in transpose([list(c) for c in cols]))


def _is_definite(K) -> bool:
    n = len(K)
    minors = [det_rational([row[:d] for row in K[:d]]) for d in range(1, n + 1)]
    if all(m > 0 for m in minors):
        return True
    return all((m < 0) if d % 2 == 0 else (m > 0) for d, m in enumerate(minors))


def classify3(g: LieAlgebra) -> Classification3:
    if g.dim != 3:
        raise NotDim3(f"classify3 needs dimension 3, got {g.dim}")
    n = 3
    D = derived_subalgebra(g)
    std = [unit(n, i) for i in range(n)]

    if D.dim == 0:
        return Classification3(ABELIAN_FAMILY, None, _as_matrix(std))

    if D.dim == 1:
        d = D.basis[0]
        p = next(i for i, x in enumerate(d) if x)

        def omega(u, v):
            return g.bracket(u, v)[p] / d[p]

        if all(not any(g.bracket(d, e)) for e in std):
            u, v = next((u, v) for u, v in combinations(std, 2) if omega(u, v))
            w = omega(u, v)
            return Classification3(1, None, _as_matrix([d, u, tuple(x / w for x in v)]))
        u = next(e for e in std if omega(e, d))
        a = omega(u, d)
        e2 = tuple(-x / a for x in u)
        rows = g.ad(d) + g.ad(e2)
        e3 = _extend_independent([d, e2], nullspace(rows, n), n)
        if not e3:
            raise InvalidAlgebra("no centralizing complement found")
        return Classification3(7, None, _as_matrix([d, e2, e3[0]]))

    if D.dim == 2:
        f1, f2 = D.basis
        if any(g.bracket(f1, f2)):
            raise InvalidAlgebra("derived algebra of dimension 2 must be abelian")
        e3 = _extend_independent([f1, f2], std, n)[0]
        c1 = _coords_in(D.basis, g.bracket(e3, f1))
        c2 = _coords_in(D.basis, g.bracket(e3, f2))
        tr = c1[0] + c2[1]
        det = c1[0] * c2[1] - c2[0] * c1[1]
        if det == 0:
            raise InvalidAlgebra("ad of a complement must be invertible on [g,g]")
        sign = 1 if det > 0 else -1
        invariant = (tr * tr / abs(det), Fraction(sign))
        disc = tr * tr - 4 * det
        adapt = _as_matrix([f1, f2, e3])
        if disc > 0:
            root = _rational_sqrt(disc)
            lam = None
            if root is not None:
                mu = sorted([(tr + root) / 2, (tr - root) / 2], key=abs)
                lam = mu[0] / mu[1]
            return Classification3(2, invariant, adapt, lam)
        if disc == 0:
            scalar = c1[1] == 0 and c2[0] == 0 and c1[0] == c2[1]
            if scalar:
                return Classification3(2, invariant, adapt, Fraction(1))
            return Classification3(3, invariant, adapt)
        if tr == 0:
            lam = Fraction(0)
        else:
            root = _rational_sqrt(-disc)
            lam = abs(tr) / root if root is not None else None
        return Classification3(4, invariant, adapt, lam)

    family = 6 if _is_definite(killing_form(g)) else 5
    return Classification3(family, None, _as_matrix(std))


# -- Heisenberg detection -------------------------------------------------------

@dataclass(frozen=True)
class HeisenbergForm:
    """``change_basis(g, basis) == heisenberg(n)``."""

    n: int
    basis: tuple


def detect_heisenberg(g: LieAlgebra) -> HeisenbergForm | None:
    dim = g.dim
    if dim < 3 or dim % 2 == 0:
        return None
    z = center(g)
    if z.dim != 1 or derived_subalgebra(g) != z:
        return None
    c = z.basis[0]
    p = next(i for i, x in enumerate(c) if x)

    def omega(u, v):
        return g.bracket(u, v)[p] / c[p]

    remaining = _extend_independent([c], (unit(dim, i) for i in range(dim)), dim)
    es, fs = [], []
    while remaining:
        u = remaining.pop(0)
        partner = next((v for v in remaining if omega(u, v)), None)
        if partner is None:
            return None
        remaining.remove(partner)
        w = omega(u, partner)
        v = tuple(x / w for x in partner)
        es.append(u)
        fs.append(v)
        remaining = [
            tuple(x - omega(r, v) * a + omega(r, u) * b for x, a, b in zip(r, u, v))
            for r in remaining
        ]
    n = len(es)
    T = _as_matrix(es + fs + [c])
    if change_basis(g, T) != heisenberg(n):
        raise AssertionError("symplectic basis construction failed")
    return HeisenbergForm(n, T)


def free_two_step_basis(g: LieAlgebra) -> tuple | None:
    """Basis identifying ``g`` with ``counterexample6()``, if one exists.

    ``g`` is isomorphic to the free 2-step nilpotent algebra on three
    generators exactly when it is 6-dimensional with a 3-dimensional central
    derived algebra; then any complement ``u1, u2, u3`` together with
    ``[u1,u2], [u1,u3], [u2,u3]`` is an adapted basis.
    """
    if g.dim != 6:
        return None
    D = derived_subalgebra(g)
    if D.dim != 3 or not center(g).contains_subspace(D):
        return None
    u = _extend_independent(list(D.basis), (unit(6, i) for i in range(6)), 6)
    brackets = [g.bracket(u[0], u[1]), g.bracket(u[0], u[2]), g.bracket(u[1], u[2])]
    cols = list(u) + brackets
    T = _as_matrix(cols)
    if det_rational([list(r) for r in T]) == 0:
        return None
    return T


# -- JSON ----------------------------------------------------------------------

def liealg_to_json(g: LieAlgebra) -> dict:
    return {
        "dim": g.dim,
        "brackets": [[i + 1, j + 1, k + 1, str(c)] for i, j, k, c in g.constants],
    }


def liealg_from_json(doc: dict, check_jacobi: bool = True) -> LieAlgebra:
    try:
        dim = doc["dim"]
        entries = doc.get("brackets", [])
    except (TypeError, AttributeError) as exc:
        raise SchemaError("Lie algebra JSON must be an object with 'dim'") from exc
    except KeyError as exc:
        raise SchemaError("Lie algebra JSON needs 'dim'") from exc
    if not isinstance(dim, int) or dim < 0:
        raise SchemaError("'dim' must be a nonnegative integer")
    seen = set()
    constants = []
    for entry in entries:
        if not isinstance(entry, list) or len(entry) != 4:
            raise SchemaError(f"bracket entry {entry!r} must be [i, j, k, c]")
        i, j, k, c = entry
        if not all(isinstance(x, int) for x in (i, j, k)):
            raise SchemaError(f"indices in {entry!r} must be integers")
        if i >= j:
            raise InvalidAlgebra(f"bracket entry {entry!r} needs i < j")
        if not all(1 <= x <= dim for x in (i, j, k)):
            raise InvalidAlgebra(f"bracket entry {entry!r} has an index outside 1..{dim}")
        if (i, j, k) in seen:
            raise SchemaError(f"duplicate bracket entry for ({i},{j},{k})")
        seen.add((i, j, k))
        try:
            c = as_rational(c)
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"coefficient {c!r} is not a rational string") from exc
        constants.append((i - 1, j - 1, k - 1, c))
    g = LieAlgebra(dim, constants)
    if check_jacobi:
        bad = jacobi_violation(g)
        if bad is not None:
            i, j, k = (x + 1 for x in bad)
            raise InvalidAlgebra(f"Jacobi identity fails for (e{i}, e{j}, e{k})", bad)
    return g
