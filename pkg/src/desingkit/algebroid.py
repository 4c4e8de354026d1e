"""Lie algebroids on trivial bundles over R^n with polynomial data.

A :class:`TrivialAlgebroid` of rank k is given in its canonical frame
``X_1..X_k``: the anchor matrix (column j is the vector field ``rho(X_j)``),
the structure functions ``[X_i, X_j] = sum_m c_ij^m X_m`` and the matrix of
``pi_A`` in the frame.  The checks below decide whether such an algebroid
desingularizes a given Poisson bivector.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional, Sequence

from .errors import DimensionMismatch, SchemaError, SingularMatrix
from .liealg import LieAlgebra, Subspace, unit
from .multivector import (
    PolyVector,
    lie_bracket,
    pushforward_linear,
    rank_at,
)
from .symbolic import (
    PolyMatrix,
    Polynomial,
    as_rational,
    det_rational,
    echelon_pivots,
    inverse_rational,
    mat_det,
    nullspace,
    pfaffian,
    rank,
    to_poly,
    transpose,
)


class TrivialAlgebroid:
    __slots__ = ("base_dim", "rank", "anchor", "bracket", "piA")

    def __init__(
        self,
        base_dim: int,
        rank: int,
        anchor: PolyMatrix,
        piA: PolyMatrix,
        bracket: Mapping | None = None,
    ):
        if anchor.shape != (base_dim, rank) or anchor.num_vars != base_dim:
            raise DimensionMismatch(f"anchor must be {base_dim}x{rank} over R^{base_dim}")
        if piA.shape != (rank, rank) or piA.num_vars != base_dim:
            raise DimensionMismatch(f"piA must be {rank}x{rank} over R^{base_dim}")
        if not piA.is_antisymmetric():
            raise ValueError("piA must be antisymmetric")
        clean = {}
        for (i, j), coeffs in (bracket or {}).items():
            if not 0 <= i < j < rank:
                raise DimensionMismatch(f"bracket key ({i},{j}) needs 0 <= i < j < {rank}")
            coeffs = tuple(to_poly(c, base_dim) for c in coeffs)
            if len(coeffs) != rank:
                raise DimensionMismatch(f"bracket ({i},{j}) needs {rank} structure functions")
            if any(not c.is_zero for c in coeffs):
                clean[(i, j)] = coeffs
        self.base_dim = base_dim
        self.rank = rank
        self.anchor = anchor
        self.piA = piA
        self.bracket = clean

    def anchor_field(self, j: int) -> PolyVector:
        return PolyVector.vector_field(self.anchor.column(j))

    def structure(self, i: int, j: int) -> tuple:
        """Structure functions of ``[X_i, X_j]`` for any ordered pair."""
        z = Polynomial.zero(self.base_dim)
        if i == j:
            return (z,) * self.rank
        if i < j:
            return self.bracket.get((i, j), (z,) * self.rank)
        return tuple(-c for c in self.bracket.get((j, i), (z,) * self.rank))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrivialAlgebroid):
            return NotImplemented
        return (
            self.base_dim == other.base_dim
            and self.rank == other.rank
            and self.anchor == other.anchor
            and self.piA == other.piA
            and self.bracket == other.bracket
        )

    def __repr__(self) -> str:
        return (
            f"TrivialAlgebroid(base_dim={self.base_dim}, rank={self.rank}, "
            f"anchor={self.anchor.to_strings()}, piA={self.piA.to_strings()})"
        )


# -- check results -------------------------------------------------------------

@dataclass(frozen=True)
class InjectivityCheck:
    ok: bool
    rows: Optional[tuple] = None
    minor: Optional[Polynomial] = None

    def describe(self) -> str:
        if not self.ok:
            return "No"
        rows = ",".join(str(r + 1) for r in self.rows)
        return f"Yes (minor rows {{{rows}}}, det {self.minor})"

    def to_json(self) -> dict:
        if not self.ok:
            return {"status": "no"}
        return {"status": "yes", "rows": [r + 1 for r in self.rows], "det": str(self.minor)}


@dataclass(frozen=True)
class AnchorCheck:
    ok: bool
    pair: Optional[tuple] = None

    def describe(self) -> str:
        return "Yes" if self.ok else f"FailsAt({self.pair[0] + 1},{self.pair[1] + 1})"

    def to_json(self) -> dict:
        if self.ok:
            return {"status": "yes"}
        return {"status": "fails_at", "pair": [p + 1 for p in self.pair]}


CERTIFIED = "certified"
GENERIC_ONLY = "generic_only"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class NondegeneracyCheck:
    status: str
    det: Optional[Polynomial] = None
    pfaffian: Optional[Polynomial] = None

    @property
    def ok(self) -> bool:
        return self.status == CERTIFIED

    def describe(self) -> str:
        if self.status == CERTIFIED:
            return f"Certified (Pfaffian {self.pfaffian}, det {self.det})"
        if self.status == GENERIC_ONLY:
            return f"GenericOnly (det {self.det})"
        return "Degenerate"

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.det is not None:
            out["det"] = str(self.det)
        if self.pfaffian is not None:
            out["pfaffian"] = str(self.pfaffian)
        return out


@dataclass(frozen=True)
class InducedCheck:
    ok: bool
    component: Optional[tuple] = None

    def describe(self) -> str:
        if self.ok:
            return "Yes"
        i, j = self.component
        return f"Mismatch at component ({i + 1},{j + 1})"

    def to_json(self) -> dict:
        if self.ok:
            return {"status": "yes"}
        return {"status": "mismatch", "component": [c + 1 for c in self.component]}


IMPLIED = "implied_by_injectivity"
CHECKED = "checked_directly"
FAILED = "failed"


@dataclass(frozen=True)
class JacobiCheck:
    status: str
    triple: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return self.status in (IMPLIED, CHECKED)

    def describe(self) -> str:
        if self.status == IMPLIED:
            return "ImpliedByInjectivity"
        if self.status == CHECKED:
            return "CheckedDirectly"
        return "Failed at ({},{},{})".format(*(t + 1 for t in self.triple))

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.triple is not None:
            out["triple"] = [t + 1 for t in self.triple]
        return out


@dataclass(frozen=True)
class VerifyReport:
    almost_injective: InjectivityCheck
    anchor_morphism: AnchorCheck
    nondegenerate: NondegeneracyCheck
    induced_matches: InducedCheck
    jacobi: JacobiCheck

    @property
    def fully_verified(self) -> bool:
        return (
            self.almost_injective.ok
            and self.anchor_morphism.ok
            and self.nondegenerate.ok
            and self.induced_matches.ok
            and self.jacobi.ok
        )

    def lines(self) -> list[str]:
        return [
            f"almost_injective: {self.almost_injective.describe()}",
            f"anchor_morphism: {self.anchor_morphism.describe()}",
            f"nondegenerate: {self.nondegenerate.describe()}",
            f"induced_matches: {self.induced_matches.describe()}",
            f"jacobi: {self.jacobi.describe()}",
            f"fully_verified: {'yes' if self.fully_verified else 'no'}",
        ]

    def to_json(self) -> dict:
        return {
            "almost_injective": self.almost_injective.to_json(),
            "anchor_morphism": self.anchor_morphism.to_json(),
            "nondegenerate": self.nondegenerate.to_json(),
            "induced_matches": self.induced_matches.to_json(),
            "jacobi": self.jacobi.to_json(),
            "fully_verified": self.fully_verified,
        }


# -- checks --------------------------------------------------------------------

def verify_almost_injective(A: TrivialAlgebroid) -> InjectivityCheck:
    """Some k x k minor of the anchor is a nonzero polynomial."""
    if A.rank == 0:
        return InjectivityCheck(True, (), Polynomial.one(A.base_dim))
    if A.rank > A.base_dim:
        return InjectivityCheck(False)
    rows, cols = echelon_pivots(A.anchor)
    if len(rows) < A.rank:
        return InjectivityCheck(False)
    rows = tuple(sorted(rows))
    minor = mat_det(A.anchor.submatrix(rows, range(A.rank)))
    assert not minor.is_zero
    return InjectivityCheck(True, rows, minor)


def verify_anchor_morphism(A: TrivialAlgebroid) -> AnchorCheck:
    """``[rho X_i, rho X_j] = sum_m c_ij^m rho X_m`` for every frame pair."""
    fields = [A.anchor_field(j) for j in range(A.rank)]
    for i, j in combinations(range(A.rank), 2):
        lhs = lie_bracket(fields[i], fields[j])
        rhs = PolyVector.zero(A.base_dim, 1)
        for m, c in enumerate(A.structure(i, j)):
            if c.terms:
                rhs = rhs + fields[m].scale(c)
        if lhs != rhs:
            return AnchorCheck(False, (i, j))
    return AnchorCheck(True)


def verify_nondegenerate(A: TrivialAlgebroid) -> NondegeneracyCheck:
    if A.rank % 2:
        return NondegeneracyCheck(DEGENERATE)
    d = mat_det(A.piA)
    if d.is_zero:
        return NondegeneracyCheck(DEGENERATE, d)
    if d.is_constant:
        return NondegeneracyCheck(CERTIFIED, d, pfaffian(A.piA))
    return NondegeneracyCheck(GENERIC_ONLY, d)


def induced_bivector(A: TrivialAlgebroid) -> PolyVector:
    """``wedge^2 rho (pi_A)``, whose sharp matrix is ``rho piA rho^T``."""
    M = A.anchor @ A.piA @ A.anchor.transpose()
    n = A.base_dim
    return PolyVector(n, 2, {(i, j): M[i, j] for i in range(n) for j in range(i + 1, n)})


def algebroid_jacobi_violation(A: TrivialAlgebroid) -> tuple | None:
    """Direct Jacobi check of the frame bracket; first failing triple or None.

    Uses ``[X_i, f X_m] = f [X_i, X_m] + rho(X_i)(f) X_m``.
    """
    k, n = A.rank, A.base_dim
    fields = [A.anchor_field(j) for j in range(k)]

    def apply(field: PolyVector, f: Polynomial) -> Polynomial:
        acc = Polynomial.zero(n)
        for (l,), coeff in field.components.items():
            acc = acc + coeff * f.diff(l)
        return acc

    def bracket_with(i: int, coeffs: Sequence[Polynomial]) -> list[Polynomial]:
        out = [Polynomial.zero(n)] * k
        for m, f in enumerate(coeffs):
            if f.is_zero:
                continue
            df = apply(fields[i], f)
            if df.terms:
                out[m] = out[m] + df
            for p, c in enumerate(A.structure(i, m)):
                if c.terms:
                    out[p] = out[p] + f * c
        return out

    for i, j, l in combinations(range(k), 3):
        total = [Polynomial.zero(n)] * k
        for a, b, c in ((i, j, l), (j, l, i), (l, i, j)):
            for p, v in enumerate(bracket_with(a, A.structure(b, c))):
                total[p] = total[p] + v
        if any(t.terms for t in total):
            return (i, j, l)
    return None


def verify_desingularizes(
    A: TrivialAlgebroid, pi: PolyVector, check_jacobi: bool = False
) -> VerifyReport:
    """Run every check of ``A`` against the target bivector ``pi``.

    When the anchor is almost injective and a Lie algebra morphism, Jacobi
    for the frame bracket follows and is not recomputed unless
    ``check_jacobi`` is set.
    """
    if pi.num_vars != A.base_dim:
        raise DimensionMismatch(f"bivector on R^{pi.num_vars}, algebroid over R^{A.base_dim}")
    inj = verify_almost_injective(A)
    morph = verify_anchor_morphism(A)
    nondeg = verify_nondegenerate(A)
    induced = induced_bivector(A)
    diff = induced - pi
    if diff.is_zero:
        match = InducedCheck(True)
    else:
        match = InducedCheck(False, min(diff.components))
    if inj.ok and morph.ok and not check_jacobi:
        jac = JacobiCheck(IMPLIED)
    else:
        bad = algebroid_jacobi_violation(A)
        jac = JacobiCheck(CHECKED) if bad is None else JacobiCheck(FAILED, bad)
    return VerifyReport(inj, morph, nondeg, match, jac)


# -- constructions on algebroids -----------------------------------------------

def product(A1: TrivialAlgebroid, A2: TrivialAlgebroid) -> TrivialAlgebroid:
    """Algebroid over ``R^{n1} x R^{n2}`` with block-diagonal anchor and piA."""
    n1, n2 = A1.base_dim, A2.base_dim
    k1, k2 = A1.rank, A2.rank
    n, k = n1 + n2, k1 + k2
    z = Polynomial.zero(n)

    def block(M1: PolyMatrix, M2: PolyMatrix, r1: int, c1: int, r2: int, c2: int) -> PolyMatrix:
        rows = []
        for i in range(r1):
            rows.append([M1[i, j].embed(n, 0) for j in range(c1)] + [z] * c2)
        for i in range(r2):
            rows.append([z] * c1 + [M2[i, j].embed(n, n1) for j in range(c2)])
        return PolyMatrix(rows, n, c1 + c2)

    anchor = block(A1.anchor, A2.anchor, n1, k1, n2, k2)
    piA = block(A1.piA, A2.piA, k1, k1, k2, k2)
    bracket = {}
    for (i, j), cs in A1.bracket.items():
        bracket[(i, j)] = tuple(c.embed(n, 0) for c in cs) + (z,) * k2
    for (i, j), cs in A2.bracket.items():
        bracket[(i + k1, j + k1)] = (z,) * k1 + tuple(c.embed(n, n1) for c in cs)
    return TrivialAlgebroid(n, k, anchor, piA, bracket)


def pushforward(A: TrivialAlgebroid, T) -> TrivialAlgebroid:
    """Transport ``A`` along the linear isomorphism ``x -> T x`` of the base."""
    n = A.base_dim
    T = [[as_rational(v) for v in row] for row in T]
    if len(T) != n or any(len(r) != n for r in T):
        raise DimensionMismatch(f"need a {n}x{n} matrix")
    if det_rational(T) == 0:
        raise SingularMatrix("pushforward along a singular matrix")
    Tinv = inverse_rational(T)
    cols = [pushforward_linear(T, A.anchor_field(j)).coefficients() for j in range(A.rank)]
    anchor = PolyMatrix(
        [[cols[j][i] for j in range(A.rank)] for i in range(n)], n, A.rank
    )
    piA = A.piA.map(lambda p: p.compose_linear(Tinv))
    bracket = {
        key: tuple(c.compose_linear(Tinv) for c in cs) for key, cs in A.bracket.items()
    }
    return TrivialAlgebroid(n, A.rank, anchor, piA, bracket)


# -- consequences of being a certificate ----------------------------------------

@dataclass(frozen=True)
class KernelIdeal:
    subspace: Subspace
    is_ideal: bool
    is_abelian: bool

    @property
    def abelian_ideal(self) -> bool:
        return self.is_ideal and self.is_abelian


def kernel_ideal_at_zero(A: TrivialAlgebroid, g: LieAlgebra) -> KernelIdeal:
    """Kernel of the transposed anchor at the origin, read as a subspace of ``g``.

    Covector ``dx_i`` at the origin corresponds to the basis vector ``e_i``.
    """
    if A.base_dim != g.dim:
        raise DimensionMismatch(f"algebroid over R^{A.base_dim} but dim g = {g.dim}")
    n = g.dim
    rho0 = A.anchor.evaluate([0] * n)
    if A.rank == 0:
        S = Subspace.full(n)
    else:
        S = Subspace.span(nullspace(transpose(rho0), n), n)
    ideal = all(S.contains(g.bracket(unit(n, i), s)) for i in range(n) for s in S.basis)
    abel = all(not any(g.bracket(a, b)) for a, b in combinations(S.basis, 2))
    return KernelIdeal(S, ideal, abel)


@dataclass(frozen=True)
class RankPoint:
    point: tuple
    rank: int
    minor_nonzero: bool

    def ok(self, k: int) -> bool:
        if self.rank > k:
            return False
        return self.rank == k if self.minor_nonzero else True


@dataclass
class RankBoundReport:
    algebroid_rank: int
    points: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(p.ok(self.algebroid_rank) for p in self.points)

    @property
    def violations(self) -> list:
        return [p for p in self.points if not p.ok(self.algebroid_rank)]


def rank_bound_report(A: TrivialAlgebroid, pi: PolyVector, points: Sequence) -> RankBoundReport:
    """Pointwise ``rank(pi) <= rank(A)``, with equality where the witness minor is nonzero."""
    if pi.num_vars != A.base_dim:
        raise DimensionMismatch("bivector and algebroid live over different bases")
    inj = verify_almost_injective(A)
    report = RankBoundReport(A.rank)
    for p in points:
        if len(p) != A.base_dim:
            raise DimensionMismatch(f"point {p} has the wrong length")
        nonzero = bool(inj.ok and inj.minor.evaluate(p))
        report.points.append(RankPoint(tuple(p), rank_at(pi, p), nonzero))
    return report


def random_points(n: int, count: int, rng: random.Random, spread: int = 5) -> list[tuple]:
    """Random rational points with small numerators and denominators."""
    return [
        tuple(Fraction(rng.randint(-spread, spread), rng.randint(1, spread)) for _ in range(n))
        for _ in range(count)
    ]


# -- JSON ----------------------------------------------------------------------

def algebroid_to_json(A: TrivialAlgebroid) -> dict:
    return {
        "base_dim": A.base_dim,
        "rank": A.rank,
        "anchor": A.anchor.to_strings(),
        "bracket": [
            [i + 1, j + 1, [str(c) for c in cs]] for (i, j), cs in sorted(A.bracket.items())
        ],
        "piA": A.piA.to_strings(),
    }


def algebroid_from_json(doc: dict) -> TrivialAlgebroid:
    try:
        n = doc["base_dim"]
        k = doc["rank"]
        anchor_rows = doc["anchor"]
        pi_rows = doc["piA"]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"algebroid JSON needs base_dim, rank, anchor, piA: {exc}") from exc
    if not (isinstance(n, int) and isinstance(k, int)) or n < 0 or k < 0:
        raise SchemaError("base_dim and rank must be nonnegative integers")
    if len(anchor_rows) != n or any(len(r) != k for r in anchor_rows):
        raise SchemaError(f"anchor must be {n} rows of {k} entries")
    if len(pi_rows) != k or any(len(r) != k for r in pi_rows):
        raise SchemaError(f"piA must be {k}x{k}")
    anchor = PolyMatrix(anchor_rows, n, k)
    piA = PolyMatrix(pi_rows, n, k)
    if not piA.is_antisymmetric():
        raise SchemaError("piA must be antisymmetric")
    bracket = {}
    for entry in doc.get("bracket", []):
        try:
            i, j, cs = entry
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"bracket entry {entry!r} must be [i, j, [c1..ck]]") from exc
        if not (isinstance(i, int) and isinstance(j, int)) or not 1 <= i < j <= k:
            raise SchemaError(f"bracket entry {entry!r} needs 1 <= i < j <= {k}")
        if len(cs) != k:
            raise SchemaError(f"bracket entry {entry!r} needs {k} structure functions")
        bracket[(i - 1, j - 1)] = tuple(Polynomial.parse(c, n) for c in cs)
    return TrivialAlgebroid(n, k, anchor, piA, bracket)
