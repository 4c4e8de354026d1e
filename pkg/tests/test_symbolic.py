from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from desingkit.errors import (
    DimensionMismatch,
    NotSquare,
    PolySyntaxError,
    SingularMatrix,
    VarOutOfRange,
)
from desingkit.symbolic import (
    PolyMatrix,
    Polynomial,
    as_rational,
    det_rational,
    echelon_pivots,
    inverse_rational,
    mat_det,
    mat_generic_rank,
    matmul,
    pfaffian,
    poly_arith,
    poly_diff,
    poly_eval,
    poly_parse,
    poly_print,
    rank,
    solve_linear_rational,
)
from helpers import random_invertible, sympy_matrix, to_sympy

P = Polynomial.parse


# -- parsing and printing -------------------------------------------------------

def test_parse_single_variable():
    p = poly_parse("x3", 3)
    assert p.terms == {(0, 0, 1): 1}


def test_parse_zero_is_empty():
    assert poly_parse("0", 3).terms == {}


def test_parse_sees_only_xk():
    p = poly_parse("x4", 6)
    assert p == Polynomial.var(6, 3)


@pytest.mark.parametrize(
    "text, canon",
    [
        ("x1^2 - 1/2*x2*x3 - x1 + 3", "x1^2 - 1/2*x2*x3 - x1 + 3"),
        ("3 + x1", "x1 + 3"),
        ("-x2 + x1", "x1 - x2"),
        ("x1*x1", "x1^2"),
        ("2*x1^1", "2*x1"),
        ("  x1 -   x1 ", "0"),
        ("1", "1"),
        ("-4/6", "-2/3"),
        ("3*x2*x1", "3*x1*x2"),
    ],
)
def test_canonical_printing(text, canon):
    assert poly_print(poly_parse(text, 3)) == canon


def test_graded_lex_order():
    assert str(P("x3 + x1*x2 + x1^3 + x2^2 + 7", 3)) == "x1^3 + x1*x2 + x2^2 + x3 + 7"


@pytest.mark.parametrize("text", ["", "x", "x1+", "2x1", "x1^", "x0", "1/0", "x1**2", "(x1)", "x1 x2", "x2*3"])
def test_parse_errors(text):
    with pytest.raises((PolySyntaxError, VarOutOfRange)):
        poly_parse(text, 3)


def test_syntax_error_reports_position():
    with pytest.raises(PolySyntaxError) as info:
        poly_parse("x1 + * x2", 3)
    assert info.value.pos == 5


def test_var_out_of_range():
    with pytest.raises(VarOutOfRange):
        poly_parse("x4", 3)


def test_as_rational_rejects_float():
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert as_rational("3/6") == Fraction(1, 2)


# -- arithmetic ------------------------------------------------------------------

def test_additive_inverse():
    x1 = Polynomial.var(3, 0)
    assert poly_arith("add", x1, -x1).is_zero


def test_difference_of_squares():
    a, b = P("x1 + x2", 2), P("x1 - x2", 2)
    assert poly_arith("mul", a, b) == P("x1^2 - x2^2", 2)


def test_scale():
    assert str(poly_arith("scale", Polynomial.var(3, 2), Fraction(1, 2))) == "1/2*x3"


def test_arith_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Polynomial.var(2, 0) + Polynomial.var(3, 0)


@pytest.mark.parametrize(
    "text, var, expected",
    [("x3", 2, "1"), ("x2", 0, "0"), ("x1^2*x2", 0, "2*x1*x2")],
)
def test_diff(text, var, expected):
    assert str(poly_diff(P(text, 3), var)) == expected


def test_diff_out_of_range():
    with pytest.raises(VarOutOfRange):
        poly_diff(P("x1", 3), 3)


@pytest.mark.parametrize(
    "text, point, value",
    [("x3", (0, 0, 5), 5), ("0", (1, 2, 3), 0), ("x1*x2 - 1", (1, 1, 0), 0)],
)
def test_eval(text, point, value):
    assert poly_eval(P(text, 3), point) == value


def test_eval_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        poly_eval(P("x1", 3), (1, 2))


def test_exact_div():
    a = P("x1^2 - x2^2", 2)
    assert a.exact_div(P("x1 - x2", 2)) == P("x1 + x2", 2)
    assert P("x1 + 1", 2).exact_div(P("x2", 2)) is None


def test_compose_linear():
    # x1 -> x1 + x2, x2 -> 2 x2
    p = P("x1*x2", 2).compose_linear([[1, 1], [0, 2]])
    assert p == P("2*x1*x2 + 2*x2^2", 2)


# -- property tests --------------------------------------------------------------

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(exps, coeffs, max_size=6).map(lambda d: Polynomial(3, d))


@settings(max_examples=150, deadline=None)
@given(polys)
def test_parse_print_roundtrip(p):
    assert poly_parse(poly_print(p), 3) == p


@settings(max_examples=100, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=100, deadline=None)
@given(polys, polys)
def test_product_agrees_with_sympy(a, b):
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_exact_div_multiply_back(a, b):
    if b.is_zero:
        return
    assert (a * b).exact_div(b) == a


# -- matrices ----------------------------------------------------------------------

def test_det_diagonal_frozen():
    # cofactor oracle value frozen: det diag(x5, x5, 1, 1) = x5^2
    z = Polynomial.var(5, 4)
    M = PolyMatrix([[z, 0, 0, 0], [0, z, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 5)
    assert str(mat_det(M)) == "x5^2"


def test_det_identity_and_zero_row():
    assert mat_det(PolyMatrix.identity(3, 2)) == Polynomial.one(2)
    M = PolyMatrix([["x1", "x2"], ["0", "0"]], 2)
    assert mat_det(M).is_zero


def test_det_not_square():
    with pytest.raises(NotSquare):
        mat_det(PolyMatrix([["x1", "0"]], 1))


def _random_poly_matrix(rng, n, nv=3, density=0.6):
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            if rng.random() < density:
                terms = {tuple(rng.randint(0, 1) for _ in range(nv)): rng.randint(-3, 3) for _ in range(2)}
                row.append(Polynomial(nv, terms))
            else:
                row.append(0)
        rows.append(row)
    return PolyMatrix(rows, nv, n)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_det_matches_sympy(rng, n):
    for _ in range(4):
        M = _random_poly_matrix(rng, n)
        assert to_sympy(mat_det(M)) == sympy.expand(sympy_matrix(M).det(method="berkowitz"))


def test_bareiss_agrees_with_cofactor(rng):
    from desingkit.symbolic import _bareiss_det, _cofactor_det

    for _ in range(5):
        M = _random_poly_matrix(rng, 4)
        a = [list(r) for r in M.entries]
        assert _bareiss_det(a, 3) == _cofactor_det(a, 3)


def test_generic_rank_examples():
    x3 = Polynomial.var(3, 2)
    anchor = PolyMatrix([[x3, 0], [0, 1], [0, 0]], 3)
    assert mat_generic_rank(anchor) == 2
    assert mat_generic_rank(PolyMatrix.zeros(3, 4, 2)) == 0
    y = [Polynomial.var(6, i) for i in range(3, 6)]
    z = Polynomial.zero(6)
    S = [[z] * 6 for _ in range(6)]
    for (i, j), c in {(0, 1): y[0], (0, 2): y[1], (1, 2): y[2]}.items():
        S[i][j], S[j][i] = c, -c
    assert mat_generic_rank(PolyMatrix(S, 6)) == 2


def test_echelon_pivots_witness(rng):
    for _ in range(10):
        M = _random_poly_matrix(rng, 4, density=0.4)
        rows, cols = echelon_pivots(M)
        r = sympy_matrix(M).rank()
        assert len(rows) == r
        if r:
            assert not mat_det(M.submatrix(rows, cols)).is_zero


def test_generic_rank_matches_point_rank(rng):
    for _ in range(10):
        M = _random_poly_matrix(rng, 4, density=0.4)
        rows, cols = echelon_pivots(M)
        witness = mat_det(M.submatrix(rows, cols)) if rows else Polynomial.one(3)
        while True:
            pt = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3)]
            if witness.evaluate(pt):
                break
        assert rank(M.evaluate(pt)) == mat_generic_rank(M)


def test_pfaffian_squared_is_det(rng):
    for k in (2, 4, 6):
        z = Polynomial.zero(2)
        rows = [[z] * k for _ in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                p = Polynomial(2, {(rng.randint(0, 1), rng.randint(0, 1)): rng.randint(-2, 2)})
                rows[i][j], rows[j][i] = p, -p
        M = PolyMatrix(rows, 2, k)
        assert pfaffian(M) ** 2 == mat_det(M)


# -- rational linear algebra --------------------------------------------------------

def test_solve_identity():
    sol = solve_linear_rational([[1, 0], [0, 1]], [1, 2])
    assert list(sol.particular) == [1, 2] and not sol.nullspace


def test_solve_underdetermined():
    sol = solve_linear_rational([[1, 1]], [0])
    assert list(sol.particular) == [0, 0]
    (v,) = sol.nullspace
    assert v[0] == -v[1] != 0


def test_solve_inconsistent():
    assert solve_linear_rational([[1], [1]], [0, 1]) is None


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve_linear_rational([[1, 1]], [0, 1])


def test_det_multiplicative(rng):
    for _ in range(30):
        A = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(3)] for _ in range(3)]
        B = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(3)] for _ in range(3)]
        assert det_rational(matmul(A, B)) == det_rational(A) * det_rational(B)


def test_inverse(rng):
    for n in (1, 2, 4):
        T = random_invertible(rng, n)
        I = matmul(T, inverse_rational(T))
        assert I == [[int(i == j) for j in range(n)] for i in range(n)]
    with pytest.raises(SingularMatrix):
        inverse_rational([[1, 2], [2, 4]])
