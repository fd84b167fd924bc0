from flint import fmpq
from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from polyfibers.exactalg import AlgebraicNumber, BPoly
from polyfibers.parser import parse_polynomial
from polyfibers.resolution import (
    critical_values_at_infinity,
    generic_branches_at_infinity,
    places_at_infinity,
    resolve_infinity,
    total_divisor_graph,
)

x, y = BPoly.gens()
Q = AlgebraicNumber.rational
BROUGHTON = x * (x * y + 1)
BRIANCON = parse_polynomial(
    "y*(x*(x*y+1)+1)^3 + (x*(x*y+1)+1)^2*(x*y+1) - 5/3*(x*(x*y+1)+1)*(x*y+1) - 1/3*(x*y+1)")


def _vals(res):
    return [str(c) for c in critical_values_at_infinity(res)]


def test_coordinate_has_no_critical_values_at_infinity():
    res = resolve_infinity(x)
    assert _vals(res) == []
    assert [d.degree for d in res.dicriticals] == [1]
    (p,) = places_at_infinity(res, x, Q(5))
    assert p.n == 1 and p.bamboo is None and p.euler_jump == 0


def test_product_of_coordinates_is_regular_at_infinity():
    res = resolve_infinity(x * y)
    assert _vals(res) == []
    assert sorted(d.degree for d in res.dicriticals) == [1, 1]


def test_broughton_weak_resolution():
    res = resolve_infinity(BROUGHTON)
    assert _vals(res) == ["0"]
    assert res.graph_inf.is_tree()
    places = places_at_infinity(res, BROUGHTON, Q(0))
    jumping = [p for p in places if p.n == 2]
    assert len(jumping) == 1
    (p,) = jumping
    assert p.euler_jump == 1 and p.surjective
    assert {b.owner for b in p.branches} == {0, 1}
    g = total_divisor_graph(res, BROUGHTON, Q(0))
    extra = [v for v in g.vertices if v.kind != "affine-component"]
    assert (len(g.vertices), len(g.edges), g.betti1) == (3, 2, 0)
    assert [v.mult for v in extra] == [1]


def test_briancon_values_and_graphs():
    res = resolve_infinity(BRIANCON)
    assert _vals(res) == ["0", "-16/9"]
    assert res.graph_inf.is_tree()
    g0 = total_divisor_graph(res, BRIANCON, Q(0))
    assert (len(g0.vertices), g0.betti1) == (2, 1)
    c = Q(fmpq(-16, 9))
    g1 = total_divisor_graph(res, BRIANCON, c)
    assert g1.is_tree() and len(g1.vertices) == 4
    assert sorted(v.mult for v in g1.vertices if v.mult is not None) == [2, 3, 6]
    (p,) = [p for p in places_at_infinity(res, BRIANCON, c) if p.tree]
    assert not p.surjective
    assert [(b.m, b.ell) for b in p.branches] == [(2, 1)]


def test_regular_values_have_trivial_places():
    res = resolve_infinity(BRIANCON)
    for p in places_at_infinity(res, BRIANCON, Q(1)):
        assert p.n == 1 and not p.tree and p.euler_jump == 0
        assert all(b.m == 1 for b in p.branches)


@pytest.mark.parametrize("f", [x, x * y, BROUGHTON, y**2 - x**3 + x, x**3 + y**3 - 3 * x * y,
                               x * y**2 + y, x * (x * y + 1) + y**3])
def test_dicritical_degrees_count_branches_at_infinity(f):
    res = resolve_infinity(f)
    assert sum(d.degree for d in res.dicriticals) == generic_branches_at_infinity(f, 7)
    assert res.graph_inf.is_tree()


def test_bamboo_ends_with_unit_ell():
    res = resolve_infinity(BROUGHTON)
    for p in places_at_infinity(res, BROUGHTON, Q(0)):
        if p.bamboo is not None:
            last = p.bamboo.components[-1]
            assert all(b.ell == 1 for b in p.branches if b.component == last)


_coef = st.integers(-3, 3)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), _coef), min_size=2, max_size=4))
def test_random_pencils_have_tree_divisor(terms):
    f = BPoly()
    for i, j, c in terms:
        if i + j <= 5:
            f = f + c * x**i * y**j
    if f.total_degree < 1:
        return
    res = resolve_infinity(f)
    assert res.graph_inf.is_tree()
    assert sum(d.degree for d in res.dicriticals) == generic_branches_at_infinity(f, fmpq(1, 7919))
