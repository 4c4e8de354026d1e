"""Exact arithmetic foundation.

Scalars are :class:`fractions.Fraction`.  :class:`Polynomial` is a sparse
multivariate polynomial over the rationals with a canonical text form, and
:class:`PolyMatrix` is a dense matrix of polynomials sharing one ring.  The
module also carries the small amount of exact rational linear algebra the
rest of the package needs (row reduction, null spaces, inverses).

Variables are 0-based in the Python API and 1-based (``x1, x2, ...``) in the
text form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    DimensionMismatch,
    NotSquare,
    PolySyntaxError,
    SingularMatrix,
    VarOutOfRange,
)

Scalar = Union[int, Fraction]
Exponent = tuple  # tuple[int, ...]

_RATIONAL_TEXT = re.compile(r"\s*[+-]?\d+(\s*/\s*\d+)?\s*")


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p"`` / ``"p/q"`` strings to a Fraction.

    Floats are refused so that nothing inexact leaks into the exact layer.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_TEXT.fullmatch(value):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(value.replace(" ", ""))
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def rational_str(q: Fraction) -> str:
    return str(q)


def _grlex_key(exp: Exponent):
    return (sum(exp), exp)


class Polynomial:
    """Sparse polynomial in ``num_vars`` variables with rational coefficients.

    Instances are immutable.  ``terms`` maps exponent tuples to nonzero
    Fractions; two polynomials are equal exactly when their term maps are.
    """

    __slots__ = ("num_vars", "terms", "_hash")

    def __init__(self, num_vars: int, terms: Mapping[Exponent, Scalar] | Iterable = ()):
        if num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Fraction] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != num_vars or any(e < 0 for e in exp):
                raise DimensionMismatch(f"bad exponent {exp} for {num_vars} variables")
            c = as_rational(c)
            s = clean.get(exp, 0) + c
            if s:
                clean[exp] = s
            else:
                clean.pop(exp, None)
        self.num_vars = num_vars
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, num_vars: int, terms: dict) -> "Polynomial":
        p = object.__new__(cls)
        p.num_vars = num_vars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, num_vars: int) -> "Polynomial":
        return cls._raw(num_vars, {})

    @classmethod
    def constant(cls, num_vars: int, c: Scalar) -> "Polynomial":
        c = as_rational(c)
        return cls._raw(num_vars, {(0,) * num_vars: c} if c else {})

    @classmethod
    def one(cls, num_vars: int) -> "Polynomial":
        return cls.constant(num_vars, 1)

    @classmethod
    def var(cls, num_vars: int, i: int) -> "Polynomial":
        if not 0 <= i < num_vars:
            raise VarOutOfRange(f"variable index {i} outside 0..{num_vars - 1}")
        exp = [0] * num_vars
        exp[i] = 1
        return cls._raw(num_vars, {tuple(exp): Fraction(1)})

    @classmethod
    def linear_form(cls, coeffs: Sequence[Scalar]) -> "Polynomial":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = as_rational(c)
            if c:
                exp = [0] * n
                exp[i] = 1
                terms[tuple(exp)] = c
        return cls._raw(n, terms)

    @classmethod
    def parse(cls, text: str, num_vars: int) -> "Polynomial":
        return _Parser(text, num_vars).parse()

    # -- predicates ---------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        """Coefficient of the constant monomial."""
        return self.terms.get((0,) * self.num_vars, Fraction(0))

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d: int) -> bool:
        return all(sum(e) == d for e in self.terms)

    def linear_coefficients(self) -> list[Fraction]:
        """Coefficients of a homogeneous linear form, indexed by variable."""
        if not self.is_homogeneous(1):
            raise ValueError(f"{self} is not a homogeneous linear form")
        out = [Fraction(0)] * self.num_vars
        for exp, c in self.terms.items():
            out[exp.index(1)] = c
        return out

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.num_vars != self.num_vars:
                raise DimensionMismatch(
                    f"polynomials in {self.num_vars} and {other.num_vars} variables"
                )
            return other
        return Polynomial.constant(self.num_vars, other)

    def __add__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                del out[exp]
        return Polynomial._raw(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, c: Scalar) -> "Polynomial":
        c = as_rational(c)
        if not c:
            return Polynomial.zero(self.num_vars)
        return Polynomial._raw(self.num_vars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return Polynomial.zero(self.num_vars)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exp, 0) + c1 * c2
                if s:
                    out[exp] = s
                else:
                    del out[exp]
        return Polynomial._raw(self.num_vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.num_vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def diff(self, var: int) -> "Polynomial":
        if not 0 <= var < self.num_vars:
            raise VarOutOfRange(f"variable index {var} outside 0..{self.num_vars - 1}")
        out = {}
        for exp, c in self.terms.items():
            e = exp[var]
            if e:
                new = list(exp)
                new[var] = e - 1
                out[tuple(new)] = c * e
        return Polynomial._raw(self.num_vars, out)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.num_vars:
            raise DimensionMismatch(f"point of length {len(point)} for {self.num_vars} variables")
        pt = [as_rational(v) for v in point]
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(pt, exp):
                if e:
                    term *= v**e
            total += term
        return total

    def compose_linear(self, A: Sequence[Sequence[Scalar]]) -> "Polynomial":
        """Substitute ``x_i = sum_j A[i][j] y_j``.

        ``A`` has ``num_vars`` rows; its column count is the number of
        variables of the result.
        """
        if len(A) != self.num_vars:
            raise DimensionMismatch(f"substitution has {len(A)} rows, need {self.num_vars}")
        m = len(A[0]) if A else 0
        forms = [Polynomial.linear_form(row) for row in A] if A else []
        if any(f.num_vars != m for f in forms):
            raise DimensionMismatch("ragged substitution matrix")
        powers: dict[tuple[int, int], Polynomial] = {}
        result = Polynomial.zero(m)
        for exp, c in self.terms.items():
            term = Polynomial.constant(m, c)
            for i, e in enumerate(exp):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = forms[i] ** e
                    term = term * powers[key]
            result = result + term
        return result

    def embed(self, num_vars: int, offset: int = 0) -> "Polynomial":
        """Reinterpret in a larger ring, sending variable i to i + offset."""
        if offset < 0 or offset + self.num_vars > num_vars:
            raise DimensionMismatch("embedding does not fit")
        pad_r = num_vars - offset - self.num_vars
        return Polynomial._raw(
            num_vars,
            {(0,) * offset + e + (0,) * pad_r: c for e, c in self.terms.items()},
        )

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def exact_div(self, d: "Polynomial") -> "Polynomial | None":
        """Quotient ``self / d`` when ``d`` divides ``self`` exactly, else None."""
        d = self._coerce(d)
        if d.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if d.is_constant:
            return self.scale(1 / d.constant_value())
        lexp, lc = d.leading_term()
        rem = self
        quot: dict = {}
        while rem.terms:
            rexp, rc = rem.leading_term()
            qexp = tuple(a - b for a, b in zip(rexp, lexp))
            if any(e < 0 for e in qexp):
                return None
            qc = rc / lc
            quot[qexp] = qc
            rem = rem - Polynomial._raw(self.num_vars, {qexp: qc}) * d
        return Polynomial._raw(self.num_vars, quot)

    # -- comparison / printing ---------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in graded-lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exp) if e
            )
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{c}*{mono}")
        out = pieces[0]
        for piece in pieces[1:]:
            out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
        return out

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r}, num_vars={self.num_vars})"


class _Parser:
    """Recursive-descent parser for the ASCII polynomial grammar."""

    def __init__(self, text: str, num_vars: int):
        self.text = text
        self.n = num_vars
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _uint(self, what: str) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise PolySyntaxError(self.text, start, what)
        return int(self.text[start : self.pos])

    def parse(self) -> Polynomial:
        sign = 1
        ch = self._peek()
        if ch and ch in "+-":
            sign = -1 if ch == "-" else 1
            self.pos += 1
        result = self._term().scale(sign)
        while True:
            ch = self._peek()
            if not ch:
                return result
            if ch not in "+-":
                raise PolySyntaxError(self.text, self.pos, "'+', '-' or end of input")
            self.pos += 1
            t = self._term()
            result = result + t if ch == "+" else result - t

    def _term(self) -> Polynomial:
        ch = self._peek()
        if ch.isdigit():
            num = self._uint("integer")
            den = 1
            if self._peek() == "/":
                at = self.pos
                self.pos += 1
                den = self._uint("denominator")
                if den == 0:
                    raise PolySyntaxError(self.text, at + 1, "nonzero denominator")
            term = Polynomial.constant(self.n, Fraction(num, den))
        elif ch == "x":
            term = self._factor()
        else:
            raise PolySyntaxError(self.text, self.pos, "coefficient or variable")
        while self._peek() == "*":
            self.pos += 1
            if self._peek() != "x":
                raise PolySyntaxError(self.text, self.pos, "variable")
            term = term * self._factor()
        return term

    def _factor(self) -> Polynomial:
        self.pos += 1  # 'x'
        at = self.pos
        idx = self._uint("variable index")
        if not 1 <= idx <= self.n:
            raise VarOutOfRange(f"x{idx} at position {at} outside x1..x{self.n}")
        power = 1
        if self._peek() == "^":
            self.pos += 1
            power = self._uint("exponent")
        return Polynomial.var(self.n, idx - 1) ** power


# -- functional spellings ------------------------------------------------------

def poly_parse(text: str, num_vars: int) -> Polynomial:
    return Polynomial.parse(text, num_vars)


def poly_print(p: Polynomial) -> str:
    return str(p)


def poly_arith(op: str, a: Polynomial, b=None) -> Polynomial:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_diff(p: Polynomial, var: int) -> Polynomial:
    return p.diff(var)


def poly_eval(p: Polynomial, point: Sequence[Scalar]) -> Fraction:
    return p.evaluate(point)


def to_poly(value, num_vars: int) -> Polynomial:
    if isinstance(value, Polynomial):
        if value.num_vars != num_vars:
            raise DimensionMismatch(f"expected {num_vars} variables, got {value.num_vars}")
        return value
    if isinstance(value, str):
        return Polynomial.parse(value, num_vars)
    return Polynomial.constant(num_vars, value)


# -- polynomial matrices -------------------------------------------------------

class PolyMatrix:
    """Dense ``rows x cols`` matrix of polynomials in a common ring."""

    __slots__ = ("rows", "cols", "num_vars", "entries")

    def __init__(self, entries, num_vars: int, cols: int | None = None):
        rows = [tuple(to_poly(v, num_vars) for v in row) for row in entries]
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged matrix")
        self.rows = len(rows)
        self.cols = cols
        self.num_vars = num_vars
        self.entries = tuple(rows)

    @classmethod
    def zeros(cls, rows: int, cols: int, num_vars: int) -> "PolyMatrix":
        z = Polynomial.zero(num_vars)
        return cls([[z] * cols for _ in range(rows)], num_vars, cols)

    @classmethod
    def identity(cls, n: int, num_vars: int) -> "PolyMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], num_vars, n)

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for r in self.entries for p in r)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.num_vars,
            self.rows,
        )

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows or self.num_vars != other.num_vars:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        z = Polynomial.zero(self.num_vars)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.terms:
                        b = other.entries[k][j]
                        if b.terms:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.num_vars, other.cols)

    def map(self, fn, num_vars: int | None = None) -> "PolyMatrix":
        """Apply ``fn`` entrywise; ``num_vars`` names the target ring if it changes."""
        nv = self.num_vars if num_vars is None else num_vars
        return PolyMatrix([[fn(p) for p in r] for r in self.entries], nv, self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(
            [[self.entries[i][j] for j in cols] for i in rows], self.num_vars, len(cols)
        )

    def evaluate(self, point: Sequence[Scalar]) -> list[list[Fraction]]:
        return [[p.evaluate(point) for p in r] for r in self.entries]

    def is_antisymmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self.entries[i][j] == -self.entries[j][i]
            for i in range(self.rows)
            for j in range(i, self.cols)
        )

    def to_strings(self) -> list[list[str]]:
        return [[str(p) for p in r] for r in self.entries]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.num_vars == other.num_vars
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.shape, self.num_vars, self.entries))

    def __repr__(self) -> str:
        return f"PolyMatrix({self.to_strings()!r}, num_vars={self.num_vars})"


def _cofactor_det(a: list[list[Polynomial]], nv: int) -> Polynomial:
    n = len(a)
    if n == 0:
        return Polynomial.one(nv)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = Polynomial.zero(nv)
    for j, p in enumerate(a[0]):
        if p.is_zero:
            continue
        minor = [row[:j] + row[j + 1 :] for row in a[1:]]
        term = p * _cofactor_det(minor, nv)
        total = total + term if j % 2 == 0 else total - term
    return total


def _bareiss_det(a: list[list[Polynomial]], nv: int) -> Polynomial:
    a = [list(r) for r in a]
    n = len(a)
    sign = 1
    prev = Polynomial.one(nv)
    for k in range(n - 1):
        if a[k][k].is_zero:
            for i in range(k + 1, n):
                if not a[i][k].is_zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Polynomial.zero(nv)
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                q = (piv * a[i][j] - a[i][k] * a[k][j]).exact_div(prev)
                assert q is not None, "Bareiss step must divide exactly"
                a[i][j] = q
        prev = piv
    return a[n - 1][n - 1].scale(sign)


def mat_det(M: PolyMatrix) -> Polynomial:
    """Exact determinant: cofactor expansion below size 5, Bareiss from 5 up."""
    if M.rows != M.cols:
        raise NotSquare(f"determinant of a {M.rows}x{M.cols} matrix")
    a = [list(r) for r in M.entries]
    if M.rows < 5:
        return _cofactor_det(a, M.num_vars)
    return _bareiss_det(a, M.num_vars)


def echelon_pivots(M: PolyMatrix) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Fraction-free elimination over the fraction field of the ring.

    Returns ``(rows, cols)``: original row indices and column indices of the
    pivots.  The minor on those rows and columns is a nonzero polynomial and
    its size is the generic rank.
    """
    nv = M.num_vars
    a = [list(r) for r in M.entries]
    order = list(range(M.rows))
    prev = Polynomial.one(nv)
    r = 0
    piv_cols = []
    for c in range(M.cols):
        if r == M.rows:
            break
        p = next((i for i in range(r, M.rows) if not a[i][c].is_zero), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        order[r], order[p] = order[p], order[r]
        piv = a[r][c]
        for i in range(r + 1, M.rows):
            lead = a[i][c]
            for j in range(c + 1, M.cols):
                num = piv * a[i][j] - lead * a[r][j] if lead.terms else piv * a[i][j]
                q = num.exact_div(prev)
                assert q is not None, "fraction-free step must divide exactly"
                a[i][j] = q
            a[i][c] = Polynomial.zero(nv)
        prev = piv
        piv_cols.append(c)
        r += 1
    return tuple(order[:r]), tuple(piv_cols)


def mat_generic_rank(M: PolyMatrix) -> int:
    """Rank over the fraction field: the size of the largest nonzero minor."""
    return len(echelon_pivots(M)[0])


# -- rational linear algebra ---------------------------------------------------

RationalMatrix = list  # list[list[Fraction]]


def rational_matrix(rows) -> list[list[Fraction]]:
    return [[as_rational(v) for v in r] for r in rows]


def identity_matrix(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(A) -> list[list[Fraction]]:
    return [list(col) for col in zip(*A)] if A else []


def matmul(A, B) -> list[list[Fraction]]:
    if A and len(A[0]) != len(B):
        raise DimensionMismatch("matrix shapes do not agree")
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in zip(*B)] for row in A]


def matvec(A, v) -> list[Fraction]:
    return [sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in A]


def rref(A, ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = [list(map(as_rational, r)) for r in A]
    ncols = len(R[0]) if R else (ncols or 0)
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(R)) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [v * inv for v in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R, pivots


def rank(A) -> int:
    return len(rref(A)[1]) if A else 0


def nullspace(A, ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    if not A:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    n = len(A[0])
    R, pivots = rref(A)
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[free]
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class LinearSolution:
    particular: tuple
    nullspace: tuple


def solve_linear_rational(A, b) -> LinearSolution | None:
    """Solve ``A x = b`` exactly; None when the system is inconsistent."""
    if len(A) != len(b):
        raise DimensionMismatch(f"{len(A)} equations but {len(b)} right-hand sides")
    n = len(A[0]) if A else 0
    if any(len(r) != n for r in A):
        raise DimensionMismatch("ragged coefficient matrix")
    aug = [list(map(as_rational, r)) + [as_rational(v)] for r, v in zip(A, b)]
    R, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return LinearSolution(tuple(x), tuple(nullspace(A, n)))


def det_rational(A) -> Fraction:
    n = len(A)
    if any(len(r) != n for r in A):
        raise NotSquare("determinant of a non-square matrix")
    M = [list(map(as_rational, r)) for r in A]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def inverse_rational(A) -> list[list[Fraction]]:
    n = len(A)
    if any(len(r) != n for r in A):
        raise NotSquare("inverse of a non-square matrix")
    aug = [list(map(as_rational, r)) + identity_matrix(n)[i] for i, r in enumerate(A)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in R]


def minor_det_rational(A, rows: Sequence[int], cols: Sequence[int]) -> Fraction:
    return det_rational([[A[i][j] for j in cols] for i in rows])


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (entries assumed distinct)."""
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def pfaffian(M: PolyMatrix) -> Polynomial:
    """Pfaffian of an antisymmetric polynomial matrix by row expansion."""
    if M.rows != M.cols:
        raise NotSquare("Pfaffian of a non-square matrix")
    nv = M.num_vars
    memo: dict[tuple, Polynomial] = {}

    def pf(idx: tuple) -> Polynomial:
        if not idx:
            return Polynomial.one(nv)
        if len(idx) % 2:
            return Polynomial.zero(nv)
        if idx in memo:
            return memo[idx]
        i = idx[0]
        total = Polynomial.zero(nv)
        for pos in range(1, len(idx)):
            a = M.entries[i][idx[pos]]
            if a.is_zero:
                continue
            rest = idx[1:pos] + idx[pos + 1 :]
            term = a * pf(rest)
            total = total + term if pos % 2 == 1 else total - term
        memo[idx] = total
        return total

    return pf(tuple(range(M.rows)))


__all__ = [
    "Fraction",
    "LinearSolution",
    "PolyMatrix",
    "Polynomial",
    "as_rational",
    "det_rational",
    "echelon_pivots",
    "identity_matrix",
    "inverse_rational",
    "mat_det",
    "mat_generic_rank",
    "matmul",
    "matvec",
    "minor_det_rational",
    "nullspace",
    "permutation_sign",
    "pfaffian",
    "poly_arith",
    "poly_diff",
    "poly_eval",
    "poly_parse",
    "poly_print",
    "rank",
    "rational_matrix",
    "rref",
    "solve_linear_rational",
    "to_poly",
    "transpose",
]
