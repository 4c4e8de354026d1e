"""Decide whether the linear Poisson structure on a dual Lie algebra desingularizes.

:func:`verdict` runs a fixed cascade of rules. Positive outcomes always carry
a certificate algebroid that has been re-verified; negative outcomes name the
obstruction that applies; everything else is reported as unknown.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .algebroid import (
    TrivialAlgebroid,
    algebroid_from_json,
    algebroid_to_json,
    product,
    pushforward,
    verify_desingularizes,
)
from .errors import (
    BadComponents,
    BadParameter,
    CertificateError,
    DegreeMismatch,
    DimensionMismatch,
    InvalidAlgebra,
    NonPolynomialBracket,
    NotDecomposable,
    NotInvertible,
    NotInvolutive,
    NotPoisson,
    Semisimple3D,
)
from .liealg import (
    LieAlgebra,
    change_basis,
    classify3,
    counterexample6,
    derived_subalgebra,
    detect_heisenberg,
    free_two_step_basis,
    is_abelian,
    is_reductive,
    jacobi_violation,
    kks,
    split_abelian_factor,
    unit,
)
from .multivector import (
    PolyVector,
    decomposes_as,
    is_poisson,
    lie_bracket,
    sharp_matrix,
    wedge,
)
from .symbolic import (
    PolyMatrix,
    Polynomial,
    as_rational,
    det_rational,
    inverse_rational,
    mat_det,
    transpose,
)


def _canonical_symplectic(k: int, n: int) -> PolyMatrix:
    """Matrix of ``sum_i X_i ^ X_{h+i}`` with ``h = k / 2``."""
    h = k // 2
    rows = [[0] * k for _ in range(k)]
    for i in range(h):
        rows[i][h + i] = 1
        rows[h + i][i] = -1
    return PolyMatrix(rows, n, k)


# -- constructors ----------------------------------------------------------------

def construct_zero_algebroid(n: int) -> TrivialAlgebroid:
    if n < 0:
        raise BadParameter("base dimension must be nonnegative")
    return TrivialAlgebroid(n, 0, PolyMatrix.zeros(n, 0, n), PolyMatrix.zeros(0, 0, n))


def construct_rank2(V: PolyVector, W: PolyVector, pi: PolyVector) -> TrivialAlgebroid:
    """Rank-2 algebroid with anchor columns ``V, W`` and ``piA = X_1 ^ X_2``.

    The bracket ``[X_1, X_2] = a X_1 + b X_2`` comes from ``[V, W] = a V + b W``,
    solved by Cramer's rule on a nonzero 2x2 minor and accepted only when the
    quotients are polynomials that reproduce ``[V, W]`` exactly.
    """
    if V.degree != 1 or W.degree != 1 or pi.degree != 2:
        raise DegreeMismatch("construct_rank2 needs two vector fields and a bivector")
    n = pi.num_vars
    if V.num_vars != n or W.num_vars != n:
        raise DimensionMismatch("V, W and pi must live on the same R^n")
    if not decomposes_as(pi, V, W):
        raise NotDecomposable("pi is not V ^ W")
    VW = wedge(V, W)
    if VW.is_zero:
        raise NotDecomposable("V ^ W vanishes identically")
    U = lie_bracket(V, W)
    if not wedge(U, VW).is_zero:
        raise NotInvolutive("[V, W] is not in the span of V and W")
    v, w, u = V.coefficients(), W.coefficients(), U.coefficients()
    (r, s), m = min(VW.components.items(), key=lambda kv: (len(kv[1].terms), kv[0]))
    # u = a v + b w on rows r, s; m = v_r w_s - v_s w_r
    a = (u[r] * w[s] - u[s] * w[r]).exact_div(m)
    b = (v[r] * u[s] - v[s] * u[r]).exact_div(m)
    if a is None or b is None:
        raise NonPolynomialBracket("Cramer quotient is not a polynomial")
    if V.scale(a) + W.scale(b) != U:
        raise NonPolynomialBracket("structure functions fail the multiply-back check")
    anchor = PolyMatrix([[v[i], w[i]] for i in range(n)], n, 2)
    bracket = {(0, 1): (a, b)} if not (a.is_zero and b.is_zero) else {}
    return TrivialAlgebroid(n, 2, anchor, _canonical_symplectic(2, n), bracket)


def construct_heisenberg_algebroid(n: int) -> TrivialAlgebroid:
    """Anchor ``x_{2n+1} d_i`` for i <= n and ``d_i`` for n < i <= 2n, zero bracket."""
    if not isinstance(n, int) or n < 1:
        raise BadParameter("the Heisenberg algebroid needs n >= 1")
    N, k = 2 * n + 1, 2 * n
    z = Polynomial.var(N, N - 1)
    rows = [[0] * k for _ in range(N)]
    for i in range(n):
        rows[i][i] = z
    for i in range(n, k):
        rows[i][i] = 1
    return TrivialAlgebroid(N, k, PolyMatrix(rows, N, k), _canonical_symplectic(k, N))


def construct_tangent_algebroid(pi: PolyVector) -> TrivialAlgebroid:
    """Identity anchor and ``piA = pi^sharp`` for a symplectic polynomial ``pi``."""
    P = sharp_matrix(pi)
    d = mat_det(P)
    if d.is_zero or not d.is_constant:
        raise NotInvertible(f"det of pi^sharp is {d}, not a nonzero constant")
    if not is_poisson(pi):
        raise NotPoisson("the jacobiator of pi does not vanish")
    n = pi.num_vars
    return TrivialAlgebroid(n, n, PolyMatrix.identity(n, n), P)


# -- low dimensions ----------------------------------------------------------------

def _adapted_rank2(g: LieAlgebra) -> TrivialAlgebroid:
    """Certificate for ``g`` already written in its adapted basis."""
    n = g.dim
    x = [Polynomial.var(n, i) for i in range(n)]
    one = Polynomial.one(n)
    if n == 2:
        # [e1, e2] = e1
        V = PolyVector.vector_field([x[0], 0])
        W = PolyVector.vector_field([0, one])
        return construct_rank2(V, W, kks(g))
    fam = classify3(g).family
    if fam == 1:
        V = PolyVector.vector_field([0, x[0], 0])
    elif fam == 7:
        V = PolyVector.vector_field([x[0], 0, 0])
    else:
        c = {(i, j): g.basis_bracket(i, j) for i, j in ((0, 2), (1, 2))}
        V = PolyVector.vector_field(
            [
                x[0].scale(c[(0, 2)].get(0, 0)) + x[1].scale(c[(0, 2)].get(1, 0)),
                x[0].scale(c[(1, 2)].get(0, 0)) + x[1].scale(c[(1, 2)].get(1, 0)),
                0,
            ]
        )
    W = PolyVector.vector_field([0, one, 0] if fam == 7 else [0, 0, one])
    return construct_rank2(V, W, kks(g))


def _adapt_dim2(g: LieAlgebra) -> tuple:
    D = derived_subalgebra(g)
    d = D.basis[0]
    p = next(i for i, x in enumerate(d) if x)
    u = next(unit(2, i) for i in range(2) if g.bracket(unit(2, i), d)[p])
    a = g.bracket(u, d)[p] / d[p]
    e2 = [-x / a for x in u]
    return tuple(tuple(r) for r in transpose([list(d), e2]))


def certificate_3d(g: LieAlgebra) -> TrivialAlgebroid:
    """Verified certificate for a non-abelian, non-semisimple algebra of dimension 2 or 3."""
    if g.dim not in (2, 3) or is_abelian(g):
        raise DimensionMismatch("certificate_3d needs a non-abelian algebra of dimension 2 or 3")
    if g.dim == 2:
        T = _adapt_dim2(g)
    else:
        cls = classify3(g)
        if cls.family in (5, 6):
            raise Semisimple3D(f"family {cls.family} is semisimple")
        T = cls.adapt
    A = _adapted_rank2(change_basis(g, T))
    cert = pushforward(A, inverse_rational(transpose([list(r) for r in T])))
    _require_verified(cert, kks(g))
    return cert


# -- verdict ---------------------------------------------------------------------

DESINGULARIZABLE = "desingularizable"
NON_DESINGULARIZABLE = "non_desingularizable"
UNKNOWN = "unknown"


@dataclass
class Verdict:
    outcome: str
    rule: Optional[str] = None
    certificate: Optional[TrivialAlgebroid] = None
    reasons: list = field(default_factory=list)
    trace: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"outcome": self.outcome}
        if self.rule is not None:
            out["rule"] = self.rule
        if self.certificate is not None:
            out["certificate"] = algebroid_to_json(self.certificate)
        if self.outcome == UNKNOWN:
            out["reasons"] = list(self.reasons)
        out["trace"] = list(self.trace)
        return out

    @classmethod
    def from_json(cls, doc: dict) -> "Verdict":
        cert = doc.get("certificate")
        return cls(
            doc["outcome"],
            doc.get("rule"),
            algebroid_from_json(cert) if cert is not None else None,
            list(doc.get("reasons", [])),
            list(doc.get("trace", [])),
        )


def _require_verified(A: TrivialAlgebroid, pi: PolyVector) -> None:
    report = verify_desingularizes(A, pi)
    if not report.fully_verified:
        raise CertificateError("constructed certificate failed verification: " + "; ".join(report.lines()))


def _matches_counterexample6(g: LieAlgebra, iso) -> Optional[str]:
    """How ``g`` was identified with the 6D counterexample, or None."""
    target = counterexample6()
    if g.dim != 6:
        return None
    if g == target:
        return "exact"
    if iso is not None:
        T = [[as_rational(v) for v in row] for row in iso]
        if len(T) == 6 and all(len(r) == 6 for r in T) and det_rational(T) != 0:
            if change_basis(g, T) == target:
                return "supplied isomorphism"
    T = free_two_step_basis(g)
    if T is not None and change_basis(g, T) == target:
        return "constructed isomorphism"
    return None


def verdict(g: LieAlgebra, counterexample_iso=None) -> Verdict:
    """Apply the rule cascade to ``g``; the first rule that fires decides.

    ``counterexample_iso`` is an optional 6x6 matrix whose columns form a
    basis in which ``g`` has exactly the 6D counterexample's constants.
    """
    bad = jacobi_violation(g)
    if bad is not None:
        raise InvalidAlgebra(
            "Jacobi identity fails for basis triple ({},{},{})".format(*(t + 1 for t in bad)), bad
        )
    return _verdict(g, counterexample_iso)


def _verdict(g: LieAlgebra, iso) -> Verdict:
    trace: list[str] = []
    pi = kks(g)

    if is_abelian(g):
        cert = construct_zero_algebroid(g.dim)
        _require_verified(cert, pi)
        trace.append("abelian: matched")
        return Verdict(DESINGULARIZABLE, "abelian", cert, trace=trace)
    trace.append("abelian: not abelian")

    split = split_abelian_factor(g)
    if split is not None:
        trace.append(f"abelian-factor: split off abelian({split.m})")
        sub = _verdict(split.h, None)
        trace.extend(f"  {line}" for line in sub.trace)
        rule = f"abelian-factor+{sub.rule}" if sub.rule else "abelian-factor"
        if sub.outcome == DESINGULARIZABLE:
            A = product(sub.certificate, construct_zero_algebroid(split.m))
            back = inverse_rational(transpose([list(r) for r in split.basis]))
            cert = pushforward(A, back)
            _require_verified(cert, pi)
            return Verdict(DESINGULARIZABLE, rule, cert, trace=trace)
        if sub.outcome == NON_DESINGULARIZABLE:
            return Verdict(NON_DESINGULARIZABLE, rule, trace=trace)
        return Verdict(UNKNOWN, None, reasons=list(sub.reasons), trace=trace)
    trace.append("abelian-factor: center lies in [g, g]")

    if is_reductive(g):
        trace.append("reductive: matched")
        return Verdict(NON_DESINGULARIZABLE, "reductive", trace=trace)
    trace.append("reductive: not reductive")

    if g.dim <= 3:
        cert = certificate_3d(g)
        trace.append("low-dimension: matched")
        return Verdict(DESINGULARIZABLE, "low-dimension", cert, trace=trace)
    trace.append(f"low-dimension: dimension {g.dim} > 3")

    form = detect_heisenberg(g)
    if form is not None:
        A = construct_heisenberg_algebroid(form.n)
        cert = pushforward(A, inverse_rational(transpose([list(r) for r in form.basis])))
        _require_verified(cert, pi)
        trace.append(f"heisenberg: matched heisenberg({form.n})")
        return Verdict(DESINGULARIZABLE, "heisenberg", cert, trace=trace)
    trace.append("heisenberg: not a Heisenberg algebra")

    how = _matches_counterexample6(g, iso)
    if how is not None:
        trace.append(f"counterexample6: matched by {how}")
        return Verdict(NON_DESINGULARIZABLE, "counterexample6", trace=trace)
    trace.append("counterexample6: no match")

    reasons = [line for line in trace]
    return Verdict(UNKNOWN, None, reasons=reasons, trace=trace)


# -- the 6D obstruction ------------------------------------------------------------

@dataclass(frozen=True)
class Witness6D:
    holds: bool
    equation: Optional[int] = None
    display: Optional[str] = None

    def describe(self) -> str:
        if self.holds:
            return f"IdentityHolds: {self.display}"
        return f"Mismatch: equation {self.equation} fails"


def _cross(F: Sequence[Polynomial], G: Sequence[Polynomial]) -> list[Polynomial]:
    return [
        F[1] * G[2] - F[2] * G[1],
        F[2] * G[0] - F[0] * G[2],
        F[0] * G[1] - F[1] * G[0],
    ]


def _system(F, G, y) -> list[Polynomial]:
    """Residuals of ``f1 g2 - f2 g1 = y1``, ``f1 g3 - f3 g1 = y2``, ``f2 g3 - f3 g2 = y3``."""
    return [
        F[0] * G[1] - F[1] * G[0] - y[0],
        F[0] * G[2] - F[2] * G[0] - y[1],
        F[1] * G[2] - F[2] * G[1] - y[2],
    ]


def cross_product_identity_holds() -> bool:
    """``F x G - (y3, -y2, y1) = (e3, -e2, e1)`` in the free ring on f, g, y.

    Here ``e_i`` are the residuals of the three equations, so the identity
    shows F x G = (y3, -y2, y1) whenever the system holds.
    """
    v = [Polynomial.var(9, i) for i in range(9)]
    F, G, y = v[0:3], v[3:6], v[6:9]
    e = _system(F, G, y)
    lhs = [c - t for c, t in zip(_cross(F, G), [y[2], -y[1], y[0]])]
    return lhs == [e[2], -e[1], e[0]]


def obstruction_witness_6d(V: PolyVector, W: PolyVector) -> Witness6D:
    """Check the 6D system on the x-components of ``V, W`` (coordinates x1..x3, y1..y3)."""
    for X in (V, W):
        if X.degree != 1 or X.num_vars != 6:
            raise DimensionMismatch("obstruction_witness_6d needs vector fields on R^6")
        if any(idx[0] >= 3 for idx in X.components):
            raise BadComponents("V and W must have no components along d_y")
    F, G = V.coefficients()[:3], W.coefficients()[:3]
    y = [Polynomial.var(6, i) for i in range(3, 6)]
    for i, r in enumerate(_system(F, G, y)):
        if not r.is_zero:
            return Witness6D(False, i + 1)
    cross = _cross(F, G)
    if cross != [y[2], -y[1], y[0]]:
        raise CertificateError("system holds but the cross product identity fails")
    return Witness6D(True, None, "F x G = ({}, {}, {})".format(*cross))
