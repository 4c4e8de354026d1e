from fractions import Fraction

import pytest

from desingkit.algebroid import (
    kernel_ideal_at_zero,
    verify_anchor_morphism,
    verify_desingularizes,
)
from desingkit.desing import (
    DESINGULARIZABLE,
    NON_DESINGULARIZABLE,
    UNKNOWN,
    Verdict,
    certificate_3d,
    construct_heisenberg_algebroid,
    construct_rank2,
    construct_tangent_algebroid,
    construct_zero_algebroid,
    cross_product_identity_holds,
    obstruction_witness_6d,
    verdict,
)
from desingkit.errors import (
    BadComponents,
    BadParameter,
    InvalidAlgebra,
    NonPolynomialBracket,
    NotDecomposable,
    NotInvertible,
    NotInvolutive,
    NotPoisson,
    Semisimple3D,
)
from desingkit.liealg import (
    LieAlgebra,
    abelian,
    change_basis,
    counterexample6,
    direct_sum,
    heisenberg,
    kks,
    sl2,
    so3,
    table1,
)
from desingkit.multivector import PolyVector, format_polyvector, wedge
from desingkit.symbolic import Polynomial, inverse_rational, transpose
from helpers import random_invertible

x, y, z = (Polynomial.var(3, i) for i in range(3))
d = [PolyVector.coordinate(3, i) for i in range(3)]


def vf(*cs):
    return PolyVector.vector_field(list(cs))


# -- constructors ------------------------------------------------------------------------------

def test_zero_algebroid():
    assert verify_desingularizes(construct_zero_algebroid(1), kks(abelian(1))).fully_verified
    assert construct_zero_algebroid(0).rank == 0
    r = verify_desingularizes(construct_zero_algebroid(5), kks(heisenberg(2)))
    assert not r.induced_matches.ok
    with pytest.raises(BadParameter):
        construct_zero_algebroid(-1)


def test_rank2_family1():
    A = construct_rank2(d[1].scale(x), d[2], wedge(d[1], d[2]).scale(x))
    assert verify_desingularizes(A, kks(table1(1))).fully_verified


@pytest.mark.parametrize("lam", [Fraction(1, 2), 1, Fraction(-1, 3)])
def test_rank2_family2(lam):
    V = vf(x, y.scale(lam), 0)
    A = construct_rank2(V, d[2], kks(table1(2, lam)))
    assert A.bracket == {}
    assert verify_desingularizes(A, kks(table1(2, lam))).fully_verified


def test_rank2_family7():
    A = construct_rank2(d[0].scale(x), d[1], kks(table1(7)))
    assert verify_desingularizes(A, kks(table1(7))).fully_verified


def test_rank2_nonzero_bracket():
    # V = z d1, W = d3: [V, W] = -d1 = -(1/z) V is not polynomial
    pi = wedge(d[0], d[2]).scale(z)
    with pytest.raises(NonPolynomialBracket):
        construct_rank2(d[0].scale(z), d[2], pi)
    # V = d1, W = x d1 + d2: [V, W] = d1 = V
    A = construct_rank2(d[0], d[0].scale(x) + d[1], wedge(d[0], d[1]))
    assert A.bracket[(0, 1)] == (Polynomial.one(3), Polynomial.zero(3))
    assert verify_anchor_morphism(A).ok


def test_rank2_works_beyond_dim3():
    n = 5
    e = [PolyVector.coordinate(n, i) for i in range(n)]
    t = Polynomial.var(n, 4)
    A = construct_rank2(e[0].scale(t), e[1], wedge(e[0], e[1]).scale(t))
    assert verify_desingularizes(A, wedge(e[0], e[1]).scale(t)).fully_verified


def test_rank2_errors():
    with pytest.raises(NotDecomposable):
        construct_rank2(d[1], d[2], wedge(d[1], d[2]).scale(x))
    with pytest.raises(NotDecomposable):
        construct_rank2(d[1], d[1], PolyVector.zero(3, 2))
    # d1 and d2 + x d3 do not span an involutive distribution
    V, W = d[0], d[1] + d[2].scale(x)
    with pytest.raises(NotInvolutive):
        construct_rank2(V, W, wedge(V, W))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_heisenberg_algebroid(n):
    A = construct_heisenberg_algebroid(n)
    assert A.base_dim == 2 * n + 1 and A.rank == 2 * n
    assert verify_desingularizes(A, kks(heisenberg(n))).fully_verified


def test_heisenberg_algebroid_anchor_n1():
    A = construct_heisenberg_algebroid(1)
    assert A.anchor.to_strings() == [["x3", "0"], ["0", "1"], ["0", "0"]]


def test_heisenberg_algebroid_bad():
    with pytest.raises(BadParameter):
        construct_heisenberg_algebroid(0)


def test_tangent_algebroid():
    e2 = [PolyVector.coordinate(2, i) for i in range(2)]
    pi = wedge(e2[0], e2[1])
    assert verify_desingularizes(construct_tangent_algebroid(pi), pi).fully_verified
    e4 = [PolyVector.coordinate(4, i) for i in range(4)]
    pi4 = wedge(e4[0], e4[1]) + wedge(e4[2], e4[3])
    A = construct_tangent_algebroid(pi4)
    assert verify_desingularizes(A, pi4).nondegenerate.det == Polynomial.one(4)
    with pytest.raises(NotInvertible):
        construct_tangent_algebroid(kks(so3()))


def test_tangent_algebroid_not_poisson():
    e4 = [PolyVector.coordinate(4, i) for i in range(4)]
    x1 = Polynomial.var(4, 0)
    # constant determinant but not Poisson: d1^d2 + d3^d4 + x1 d1^d3
    pi = wedge(e4[0], e4[1]) + wedge(e4[2], e4[3]) + wedge(e4[0], e4[2]).scale(x1)
    with pytest.raises(NotPoisson):
        construct_tangent_algebroid(pi)


# -- 3D certificates ----------------------------------------------------------------------------------

DESING_3D = [(1, None), (2, Fraction(1, 2)), (2, 1), (2, -1), (3, None), (4, 0), (4, 1), (4, Fraction(5, 2)), (7, None)]


def test_certificate_family3_paper_fields():
    A = certificate_3d(table1(3))
    assert [format_polyvector(A.anchor_field(j)) for j in range(2)] == ["(x1)*d1 + (x1 + x2)*d2", "(1)*d3"]


@pytest.mark.parametrize("family, lam", DESING_3D)
def test_certificate_3d_verifies(rng, family, lam):
    g = table1(family, lam)
    assert verify_desingularizes(certificate_3d(g), kks(g)).fully_verified
    for _ in range(5):
        h = change_basis(g, random_invertible(rng, 3))
        assert verify_desingularizes(certificate_3d(h), kks(h)).fully_verified


def test_certificate_irrational_lambda():
    g = LieAlgebra(3, [(0, 2, 0, 1), (0, 2, 1, 1), (1, 2, 0, 1)])
    assert verify_desingularizes(certificate_3d(g), kks(g)).fully_verified


def test_certificate_dim2():
    g = LieAlgebra(2, [(0, 1, 0, 1)])
    assert verify_desingularizes(certificate_3d(g), kks(g)).fully_verified


@pytest.mark.parametrize("family", [5, 6])
def test_certificate_semisimple_raises(family):
    with pytest.raises(Semisimple3D):
        certificate_3d(table1(family))


# -- verdict cascade ---------------------------------------------------------------------------------

@pytest.mark.parametrize(
    "g, outcome, rule",
    [
        (so3(), NON_DESINGULARIZABLE, "reductive"),
        (sl2(), NON_DESINGULARIZABLE, "reductive"),
        (direct_sum(heisenberg(3), abelian(2)), DESINGULARIZABLE, "abelian-factor+heisenberg"),
        (direct_sum(counterexample6(), abelian(1)), NON_DESINGULARIZABLE, "abelian-factor+counterexample6"),
        (direct_sum(sl2(), abelian(1)), NON_DESINGULARIZABLE, "abelian-factor+reductive"),
        (abelian(4), DESINGULARIZABLE, "abelian"),
        (abelian(0), DESINGULARIZABLE, "abelian"),
        (table1(1), DESINGULARIZABLE, "low-dimension"),
        (table1(7), DESINGULARIZABLE, "abelian-factor+low-dimension"),
        (heisenberg(2), DESINGULARIZABLE, "heisenberg"),
        (counterexample6(), NON_DESINGULARIZABLE, "counterexample6"),
    ],
)
def test_verdict_examples(g, outcome, rule):
    v = verdict(g)
    assert (v.outcome, v.rule) == (outcome, rule)
    if outcome == DESINGULARIZABLE:
        assert verify_desingularizes(v.certificate, kks(g)).fully_verified
        assert kernel_ideal_at_zero(v.certificate, g).abelian_ideal


def test_verdict_trace_records_attempts():
    v = verdict(counterexample6())
    assert [line.split(":")[0] for line in v.trace] == [
        "abelian", "abelian-factor", "reductive", "low-dimension", "heisenberg", "counterexample6"
    ]


def test_verdict_unknown():
    # 5D nilpotent, not Heisenberg: [e1,e2]=e3, [e1,e3]=e4, [e1,e4]=e5 (filiform)
    g = LieAlgebra(5, [(0, 1, 2, 1), (0, 2, 3, 1), (0, 3, 4, 1)])
    v = verdict(g)
    assert v.outcome == UNKNOWN and v.certificate is None and v.reasons
    two_heis = direct_sum(heisenberg(1), heisenberg(1))
    assert verdict(two_heis).outcome == UNKNOWN


def test_verdict_supplied_isomorphism(rng):
    T = random_invertible(rng, 6)
    g = change_basis(counterexample6(), inverse_rational(T))
    v = verdict(g, counterexample_iso=T)
    assert v.outcome == NON_DESINGULARIZABLE and "supplied" in v.trace[-1]


def test_verdict_rejects_invalid():
    g = LieAlgebra(3, [(0, 1, 0, 1), (0, 2, 0, 1), (1, 2, 1, 1)])
    with pytest.raises(InvalidAlgebra):
        verdict(g)


def test_verdict_json_roundtrip():
    for g in (heisenberg(1), so3(), LieAlgebra(5, [(0, 1, 2, 1), (0, 2, 3, 1), (0, 3, 4, 1)])):
        v = verdict(g)
        doc = v.to_json()
        back = Verdict.from_json(doc)
        assert back.outcome == v.outcome and back.rule == v.rule and back.certificate == v.certificate
    doc = verdict(heisenberg(1)).to_json()
    assert doc["outcome"] == "desingularizable" and "certificate" in doc


BASIS_ALGEBRAS = [
    table1(3),
    table1(6),
    heisenberg(2),
    direct_sum(heisenberg(1), abelian(1)),
    direct_sum(so3(), abelian(1)),
    counterexample6(),
    LieAlgebra(5, [(0, 1, 2, 1), (0, 2, 3, 1), (0, 3, 4, 1)]),
]


@pytest.mark.parametrize("g", BASIS_ALGEBRAS, ids=lambda g: f"dim{g.dim}-{len(g.constants)}")
def test_verdict_basis_invariant(rng, g):
    ref = verdict(g).outcome
    for _ in range(50):
        h = change_basis(g, random_invertible(rng, g.dim, spread=2))
        v = verdict(h)
        assert v.outcome == ref
        if v.outcome == DESINGULARIZABLE:
            assert verify_desingularizes(v.certificate, kks(h)).fully_verified


# -- 6D obstruction --------------------------------------------------------------------------------------

def test_witness_mismatch_on_zero():
    r = obstruction_witness_6d(PolyVector.zero(6, 1), PolyVector.zero(6, 1))
    assert not r.holds and r.equation == 1


def test_witness_bad_components():
    with pytest.raises(BadComponents):
        obstruction_witness_6d(PolyVector.coordinate(6, 4), PolyVector.zero(6, 1))


def test_witness_partial_system():
    # f = (1, 0, 0), g = (0, y1, y2) satisfies the first two equations only
    y1, y2 = Polynomial.var(6, 3), Polynomial.var(6, 4)
    V = PolyVector.vector_field([1, 0, 0, 0, 0, 0])
    W = PolyVector.vector_field([0, y1, y2, 0, 0, 0])
    r = obstruction_witness_6d(V, W)
    assert not r.holds and r.equation == 3


def test_cross_product_identity():
    assert cross_product_identity_holds()


def test_witness_random_nonsolutions(rng):
    for _ in range(50):
        comps = []
        for _ in range(2):
            c = []
            for _ in range(3):
                terms = {}
                for _ in range(rng.randint(0, 2)):
                    e = [0] * 6
                    e[rng.randrange(6)] += rng.randint(0, 1)
                    terms[tuple(e)] = rng.randint(-2, 2)
                c.append(Polynomial(6, terms))
            comps.append(PolyVector.vector_field(c + [0, 0, 0]))
        assert not obstruction_witness_6d(*comps).holds
