"""Polyvector fields on R^n with polynomial coefficients.

A degree-p field is stored as a map from strictly increasing index tuples
``(i1 < ... < ip)`` to nonzero polynomials, i.e. as
``sum X^I d_{i1} ^ ... ^ d_{ip}``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import DegreeMismatch, DimensionMismatch, SchemaError, SingularMatrix
from .symbolic import (
    PolyMatrix,
    Polynomial,
    as_rational,
    det_rational,
    inverse_rational,
    minor_det_rational,
    permutation_sign,
    rank,
    to_poly,
)


class PolyVector:
    __slots__ = ("num_vars", "degree", "components")

    def __init__(self, num_vars: int, degree: int, components: Mapping | None = None):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        comps: dict[tuple, Polynomial] = {}
        for idx, coeff in (components or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(not 0 <= i < num_vars for i in idx):
                raise DimensionMismatch(f"index {idx} invalid for degree {degree} on R^{num_vars}")
            if len(set(idx)) != degree:
                continue
            sign = permutation_sign(idx)
            key = tuple(sorted(idx))
            p = to_poly(coeff, num_vars)
            acc = comps.get(key, Polynomial.zero(num_vars)) + (p if sign > 0 else -p)
            if acc.is_zero:
                comps.pop(key, None)
            else:
                comps[key] = acc
        self.num_vars = num_vars
        self.degree = degree
        self.components = comps

    @classmethod
    def zero(cls, num_vars: int, degree: int) -> "PolyVector":
        return cls(num_vars, degree)

    @classmethod
    def function(cls, p: Polynomial) -> "PolyVector":
        return cls(p.num_vars, 0, {(): p})

    @classmethod
    def vector_field(cls, coeffs: Sequence) -> "PolyVector":
        """``sum coeffs[i] d_i``; entries may be Polynomials, scalars or text."""
        n = len(coeffs)
        return cls(n, 1, {(i,): c for i, c in enumerate(coeffs)})

    @classmethod
    def coordinate(cls, num_vars: int, i: int) -> "PolyVector":
        return cls(num_vars, 1, {(i,): 1})

    @classmethod
    def from_sharp(cls, M: PolyMatrix) -> "PolyVector":
        """Bivector whose (i, j) component is ``M[i, j]`` for i < j."""
        if M.rows != M.cols:
            raise DimensionMismatch("sharp matrix must be square")
        if not M.is_antisymmetric():
            raise ValueError("sharp matrix must be antisymmetric")
        n = M.rows
        return cls(M.num_vars, 2, {(i, j): M[i, j] for i in range(n) for j in range(i + 1, n)})

    def component(self, idx: Sequence[int]) -> Polynomial:
        """Coefficient for any index tuple, with the antisymmetric sign applied."""
        idx = tuple(idx)
        if len(set(idx)) != len(idx):
            return Polynomial.zero(self.num_vars)
        p = self.components.get(tuple(sorted(idx)))
        if p is None:
            return Polynomial.zero(self.num_vars)
        return p if permutation_sign(idx) > 0 else -p

    def coefficients(self) -> list[Polynomial]:
        """Components of a vector field as a dense list."""
        if self.degree != 1:
            raise DegreeMismatch("coefficients() needs a vector field")
        z = Polynomial.zero(self.num_vars)
        return [self.components.get((i,), z) for i in range(self.num_vars)]

    @property
    def is_zero(self) -> bool:
        return not self.components

    def _check(self, other: "PolyVector"):
        if self.num_vars != other.num_vars:
            raise DimensionMismatch(f"polyvectors on R^{self.num_vars} and R^{other.num_vars}")

    def __add__(self, other: "PolyVector") -> "PolyVector":
        self._check(other)
        if self.degree != other.degree:
            raise DegreeMismatch("cannot add polyvectors of different degree")
        comps = dict(self.components)
        for k, v in other.components.items():
            comps[k] = comps[k] + v if k in comps else v
        return PolyVector(self.num_vars, self.degree, comps)

    def __neg__(self) -> "PolyVector":
        return PolyVector(self.num_vars, self.degree, {k: -v for k, v in self.components.items()})

    def __sub__(self, other: "PolyVector") -> "PolyVector":
        return self + (-other)

    def scale(self, f) -> "PolyVector":
        f = to_poly(f, self.num_vars)
        return PolyVector(self.num_vars, self.degree, {k: f * v for k, v in self.components.items()})

    def map_coefficients(self, fn, num_vars: int | None = None) -> "PolyVector":
        return PolyVector(
            self.num_vars if num_vars is None else num_vars,
            self.degree,
            {k: fn(v) for k, v in self.components.items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVector):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self.degree == other.degree
            and self.components == other.components
        )

    def __hash__(self) -> int:
        return hash((self.num_vars, self.degree, frozenset(self.components.items())))

    def __str__(self) -> str:
        return format_polyvector(self)

    def __repr__(self) -> str:
        return f"PolyVector(n={self.num_vars}, degree={self.degree}, {format_polyvector(self)!r})"


def format_polyvector(X: PolyVector) -> str:
    """Canonical text, e.g. ``(x3)*d1^d2 + (-x2)*d1^d3``; terms sorted by index."""
    if not X.components:
        return "0"
    parts = []
    for idx in sorted(X.components):
        coeff = X.components[idx]
        if not idx:
            parts.append(f"({coeff})")
        else:
            parts.append(f"({coeff})*" + "^".join(f"d{i + 1}" for i in idx))
    return " + ".join(parts)


def wedge(a: PolyVector, b: PolyVector) -> PolyVector:
    a._check(b)
    n = a.num_vars
    p = a.degree + b.degree
    if p > n:
        return PolyVector.zero(n, p)
    comps: dict[tuple, Polynomial] = {}
    for I, f in a.components.items():
        for J, g in b.components.items():
            if set(I) & set(J):
                continue
            merged = I + J
            key = tuple(sorted(merged))
            term = f * g
            if permutation_sign(merged) < 0:
                term = -term
            comps[key] = comps[key] + term if key in comps else term
    return PolyVector(n, p, comps)


def wedge_all(fields: Sequence[PolyVector], num_vars: int) -> PolyVector:
    acc = PolyVector.function(Polynomial.one(num_vars))
    for f in fields:
        acc = wedge(acc, f)
    return acc


def lie_bracket(V: PolyVector, W: PolyVector) -> PolyVector:
    """Bracket of vector fields: ``[V,W]^j = sum_i V^i d_i W^j - W^i d_i V^j``."""
    if V.degree != 1 or W.degree != 1:
        raise DegreeMismatch("lie_bracket needs two vector fields")
    V._check(W)
    n = V.num_vars
    v, w = V.coefficients(), W.coefficients()
    out = []
    for j in range(n):
        acc = Polynomial.zero(n)
        for i in range(n):
            if v[i].terms and w[j].terms:
                acc = acc + v[i] * w[j].diff(i)
            if w[i].terms and v[j].terms:
                acc = acc - w[i] * v[j].diff(i)
        out.append(acc)
    return PolyVector.vector_field(out)


def jacobiator(pi: PolyVector) -> PolyVector:
    """Trivector whose vanishing is the Jacobi identity for the bracket of ``pi``.

    ``J^{ijk} = sum_l pi^{il} d_l pi^{jk} + pi^{jl} d_l pi^{ki} + pi^{kl} d_l pi^{ij}``.
    """
    if pi.degree != 2:
        raise DegreeMismatch("jacobiator needs a bivector")
    n = pi.num_vars
    P = sharp_matrix(pi)
    grads: dict[tuple, list] = {}

    def grad(a: int, b: int) -> list:
        if (a, b) not in grads:
            grads[(a, b)] = [P[a, b].diff(l) for l in range(n)]
        return grads[(a, b)]

    comps = {}
    for i, j, k in combinations(range(n), 3):
        acc = Polynomial.zero(n)
        for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
            g = grad(b, c)
            for l in range(n):
                if g[l].terms and P[a, l].terms:
                    acc = acc + P[a, l] * g[l]
        if acc.terms:
            comps[(i, j, k)] = acc
    return PolyVector(n, 3, comps)


def is_poisson(pi: PolyVector) -> bool:
    return jacobiator(pi).is_zero


def sharp_matrix(pi: PolyVector) -> PolyMatrix:
    if pi.degree != 2:
        raise DegreeMismatch("sharp_matrix needs a bivector")
    n = pi.num_vars
    z = Polynomial.zero(n)
    rows = [[z] * n for _ in range(n)]
    for (i, j), p in pi.components.items():
        rows[i][j] = p
        rows[j][i] = -p
    return PolyMatrix(rows, n, n)


def rank_at(pi: PolyVector, point: Sequence) -> int:
    if len(point) != pi.num_vars:
        raise DimensionMismatch(f"point of length {len(point)} on R^{pi.num_vars}")
    return rank(sharp_matrix(pi).evaluate(point))


def pushforward_linear(T, X: PolyVector) -> PolyVector:
    """Push ``X`` forward along the linear isomorphism ``x -> T x``.

    Coefficients are precomposed with ``T^-1`` and the components transform
    by the p-th exterior power of ``T`` (its p x p minors).
    """
    n = X.num_vars
    T = [[as_rational(v) for v in row] for row in T]
    if len(T) != n or any(len(r) != n for r in T):
        raise DimensionMismatch(f"need a {n}x{n} matrix")
    if det_rational(T) == 0:
        raise SingularMatrix("pushforward along a singular matrix")
    Tinv = inverse_rational(T)
    pulled = {I: f.compose_linear(Tinv) for I, f in X.components.items()}
    comps: dict[tuple, Polynomial] = {}
    for J in combinations(range(n), X.degree):
        acc = Polynomial.zero(n)
        for I, f in pulled.items():
            m = minor_det_rational(T, J, I) if I else Fraction(1)
            if m:
                acc = acc + f.scale(m)
        if acc.terms:
            comps[J] = acc
    return PolyVector(n, X.degree, comps)


def decomposes_as(pi: PolyVector, V: PolyVector, W: PolyVector) -> bool:
    pi._check(V)
    pi._check(W)
    return (pi - wedge(V, W)).is_zero


def is_involutive(frame: Sequence[PolyVector]) -> bool:
    """Generic involutivity of a frame: ``[V_i, V_j] ^ V_1 ^ ... ^ V_k = 0``."""
    if not frame:
        return True
    n = frame[0].num_vars
    top = wedge_all(frame, n)
    return all(
        wedge(lie_bracket(frame[i], frame[j]), top).is_zero
        for i, j in combinations(range(len(frame)), 2)
    )


# -- JSON ----------------------------------------------------------------------

def polyvector_to_json(X: PolyVector) -> dict:
    return {
        "n": X.num_vars,
        "degree": X.degree,
        "terms": [
            {"idx": [i + 1 for i in idx], "coeff": str(X.components[idx])}
            for idx in sorted(X.components)
        ],
    }


def polyvector_from_json(doc: dict) -> PolyVector:
    try:
        n, degree, terms = int(doc["n"]), int(doc["degree"]), doc["terms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"polyvector JSON needs n, degree, terms: {exc}") from exc
    comps = {}
    for t in terms:
        idx = tuple(int(i) - 1 for i in t["idx"])
        if len(idx) != degree or any(b <= a for a, b in zip(idx, idx[1:])):
            raise SchemaError(f"idx {t['idx']} must be strictly increasing of length {degree}")
        if any(not 0 <= i < n for i in idx):
            raise SchemaError(f"idx {t['idx']} out of range 1..{n}")
        if idx in comps:
            raise SchemaError(f"duplicate idx {t['idx']}")
        comps[idx] = Polynomial.parse(t["coeff"], n)
    return PolyVector(n, degree, comps)
