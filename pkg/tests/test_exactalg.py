from flint import fmpq, fmpq_poly
from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from polyfibers.exactalg import (
    QQ,
    AlgebraicNumber,
    BPoly,
    NumberField,
    SquarefreeRequired,
    absolute_factor_count,
    algebraic_roots,
    bgcd,
    discriminant,
    extend,
    factor,
    factor_bivariate,
    factor_rational,
    rational_poly,
    resultant,
)

x, y = BPoly.gens()


def up(*coeffs):
    return rational_poly(list(coeffs))


def same_up_to_sign(p, q):
    return p == q or p == -q


# -- number fields -----------------------------------------------------------

def test_numberfield_rejects_reducible():
    with pytest.raises(ValueError):
        NumberField(fmpq_poly([-1, 0, 1]))


def test_numberfield_inverse_and_minpoly():
    K = NumberField(fmpq_poly([-2, 0, 0, 1]))
    a = K.gen + 1
    assert a * a.inverse() == K.one
    m = a.minpoly()
    assert m.degree() == 3
    acc = K.zero
    for c in reversed(m.coeffs()):
        acc = acc * a + c
    assert acc.is_zero()


def test_extend_tower_is_flattened():
    K, _, r = extend(QQ, up(-2, 0, 1))
    L, emb, s = extend(K, rational_poly([-3, 0, 1]).map(_qq_to(K)))
    assert L.degree == 4
    assert s * s == L(3)
    assert emb(r) * emb(r) == L(2)


def _qq_to(K):
    from polyfibers.exactalg import Embedding
    return Embedding(QQ, K, fmpq_poly([]))


def test_trager_factorisation_over_quadratic_field():
    K, emb, r = extend(QQ, up(-2, 0, 1))
    _, facs = factor(up(-2, 0, 1).map(emb))
    assert [f.degree for f, _ in facs] == [1, 1]
    _, facs = factor(up(1, 0, 1).map(emb))
    assert [f.degree for f, _ in facs] == [2]


# -- resultant / discriminant -----------------------------------------------

def test_resultant_examples():
    assert same_up_to_sign(resultant(x * y - 1, y - x, "y"), up(-1, 0, 1))
    assert same_up_to_sign(resultant(y, y - x, "y"), up(0, 1))
    p = y**2 + x * y + 3
    assert resultant(p, p, "y").is_zero()


def test_resultant_both_zero_is_an_error():
    z = BPoly()
    with pytest.raises(ValueError):
        resultant(z, z, "y")


def test_discriminant_examples():
    d = discriminant(y**2 - x, "y")
    assert d.degree == 1 and d[0].is_zero()
    d = discriminant(y - x, "y")
    assert d.degree == 0 and not d.is_zero()
    d = discriminant(y**2 - x**3, "y")
    assert d.degree == 3 and all(d[i].is_zero() for i in range(3))
    with pytest.raises(ValueError):
        discriminant(x + 1, "y")


# -- factorisation -----------------------------------------------------------

def test_factor_rational_examples():
    assert factor_rational(up(-1, 0, 1)) == [(up(-1, 1), 1), (up(1, 1), 1)]
    assert factor_rational(up(1, 0, 1)) == [(up(1, 0, 1), 1)]
    assert factor_rational(up(0, 16, 9)) == [(up(0, 1), 1), (up(16, 9), 1)]
    with pytest.raises(ValueError):
        factor_rational(up())


def test_factor_bivariate_over_gaussian_field():
    K = NumberField(fmpq_poly([1, 0, 1]))
    X, Y = BPoly.gens(K)
    facs = factor_bivariate(X**2 + Y**2)
    assert len(facs) == 2
    prod = facs[0][0] * facs[1][0]
    assert prod == X**2 + Y**2


def test_absolute_factor_count_examples():
    assert absolute_factor_count(x**2 - y**2) == 2
    assert absolute_factor_count(x**2 + y**2) == 2
    assert absolute_factor_count(x * y - 1) == 1
    assert absolute_factor_count(y**2 - 1) == 2
    assert absolute_factor_count(x**3 - 2 * y**3) == 3
    with pytest.raises(SquarefreeRequired):
        absolute_factor_count(x**2 * y)


def test_algebraic_roots_examples():
    r = algebraic_roots(fmpq_poly([-2, 0, 1]))
    assert len(r) == 2 and r[0] != r[1]
    assert all(a.contains_zero_of(fmpq_poly([-2, 0, 1])) for a in r)
    (three,) = algebraic_roots(fmpq_poly([-3, 1]))
    assert three == AlgebraicNumber.rational(3)
    (c,) = algebraic_roots(fmpq_poly([16, 9]))
    assert str(c) == "-16/9"
    with pytest.raises(ValueError):
        algebraic_roots(fmpq_poly([]))


def test_algebraic_equality_with_refined_box():
    (a, b) = algebraic_roots(fmpq_poly([-2, 0, 1]))
    finer = AlgebraicNumber(b.minpoly, (fmpq(7, 5), fmpq(3, 2), 0, 0))
    assert finer == b and finer != a


# -- properties --------------------------------------------------------------

small = st.integers(min_value=-4, max_value=4)


@st.composite
def bpolys(draw, max_deg=3):
    terms = {}
    for _ in range(draw(st.integers(1, 5))):
        i = draw(st.integers(0, max_deg))
        j = draw(st.integers(0, max_deg - i))
        terms[(i, j)] = draw(small)
    return BPoly(terms)


@settings(max_examples=40, deadline=None)
@given(bpolys(), bpolys())
def test_resultant_antisymmetry_and_gcd(p, q):
    if p.degree(1) < 1 or q.degree(1) < 1:
        return
    r1 = resultant(p, q, "y")
    r2 = resultant(q, p, "y")
    assert same_up_to_sign(r1, r2)
    g = bgcd(p, q)
    assert r1.is_zero() == (g.degree(1) > 0)


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=2, max_size=7))
def test_factor_rational_multiply_back(coeffs):
    p = rational_poly(coeffs)
    if p.degree < 1:
        return
    from polyfibers.exactalg.ops import factor_rational_with_content
    content, facs = factor_rational_with_content(p)
    prod = rational_poly([content])
    for f, e in facs:
        prod = prod * f ** e
    assert prod == p


@settings(max_examples=25, deadline=None)
@given(bpolys(2), bpolys(2))
def test_absolute_count_additive(p, q):
    from polyfibers.exactalg.ops import is_squarefree
    if p.total_degree < 1 or q.total_degree < 1:
        return
    if not is_squarefree(p) or not is_squarefree(q):
        return
    if bgcd(p, q).total_degree > 0:
        return
    assert absolute_factor_count(p * q) == absolute_factor_count(p) + absolute_factor_count(q)


@settings(max_examples=30, deadline=None)
@given(st.lists(small, min_size=2, max_size=6))
def test_roots_contain_zero_and_count(coeffs):
    p = fmpq_poly(coeffs)
    if p.degree() < 1:
        return
    roots = algebraic_roots(p)
    sqf = p / p.gcd(p.derivative())
    assert len(roots) == sqf.degree()
    for r in roots:
        assert r.contains_zero_of(r.minpoly)


def test_conjugate_roots_with_touching_boxes_stay_distinct():
    # the real root sits on the shared edge of two complex isolating boxes
    p = fmpq_poly([fmpq(-10460353203, 576460752303423488)] + [0] * 8 + [1])
    roots = algebraic_roots(p)
    assert len(roots) == len(set(roots)) == 9
    assert sum(1 for a in roots for b in roots if a == b) == 9


def _nf_poly(K, rows):
    from polyfibers.exactalg import UPoly

    return UPoly(K, [K.from_coeffs(r) for r in rows])


def test_modular_gcd_over_a_cubic_field():
    from polyfibers.exactalg import gcd

    K = NumberField(fmpq_poly([-2, 0, 0, 1]))  # Q(2^(1/3))
    a = K.gen
    g = _nf_poly(K, [[0, -1], [1]])  # x - a
    u = _nf_poly(K, [[1, 0, fmpq(1, 3)], [0, 5], [1]])
    v = _nf_poly(K, [[fmpq(7, 2)], [-1, 1], [0, 0, 2], [1]])
    assert gcd(g * u, g * v) == g
    assert gcd(u, v).degree == 0
    assert gcd(g * g * u, g * u * u) == (g * u).monic()
    assert g(a).is_zero()


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2), min_size=1, max_size=3),
       st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2), min_size=2, max_size=4),
       st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2), min_size=2, max_size=4))
def test_modular_gcd_agrees_with_euclid(gr, ur, vr):
    from polyfibers.exactalg import gcd
    from polyfibers.exactalg.modular import nf_inverse_mod

    K = NumberField(fmpq_poly([fmpq(1, 3), 0, 1]))  # Q(sqrt(-1/3))
    g, u, v = (_nf_poly(K, r + [[1]]) for r in (gr, ur, vr))
    # schoolbook Euclid as the oracle
    a, b = g * u, g * v
    while not b.is_zero():
        a, b = b, a % b
    assert gcd(g * u, g * v) == a.monic()
    if gcd(u, v).degree == 0:
        s = nf_inverse_mod(u, v)
        assert ((s * u) % v - _nf_poly(K, [[1]])).is_zero()


@settings(max_examples=30, deadline=None)
@given(bpolys(2), bpolys(2))
def test_norm_factorisation_agrees_with_sympy(p, q):
    from polyfibers.exactalg.ops import _from_sympy, _to_sympy, is_squarefree

    K = NumberField(fmpq_poly([-2, 0, 0, 1]))
    X, Y = BPoly.gens(K)
    a = K.gen
    f = p.change_field(K).compose(X + a * Y, Y) * q.change_field(K).compose(X, Y - a)
    if f.total_degree < 1 or not is_squarefree(f):
        return
    facs = factor_bivariate(f)
    assert all(e == 1 for _, e in facs)
    prod = BPoly.constant(K.one, K)
    for g, _ in facs:
        prod = prod * g
    assert prod.content_free() == f.content_free()
    _, ref = _to_sympy(f).factor_list()
    assert sorted(g.total_degree for g, _ in facs) == sorted(
        _from_sympy(g, K, ("x", "y")).total_degree for g, e in ref for _ in range(e))
