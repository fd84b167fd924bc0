from flint import fmpq
from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from polyfibers.exactalg import BPoly, bgcd, is_squarefree
from polyfibers.puiseux import (
    InfiniteContact,
    NonIsolatedSingularity,
    NonReducedGerm,
    branch_count,
    branch_intersection_multiplicity,
    intersection_with_curve,
    local_milnor_number,
    newton_polygon,
    puiseux_branches,
)

x, y = BPoly.gens()


def test_newton_polygon_examples():
    (s,) = newton_polygon(y**2 - x**3)
    assert (s.start, s.end, s.slope) == ((0, 2), (3, 0), (-2, 3))
    (s,) = newton_polygon(y**2 - x**2)
    assert (s.start, s.end) == ((0, 2), (2, 0))
    (s,) = newton_polygon(y - x**2)
    assert (s.start, s.end) == ((0, 1), (2, 0))
    with pytest.raises(ValueError):
        newton_polygon(BPoly())


def test_newton_polygon_two_faces_get_less_steep():
    segs = list(newton_polygon((y - x**2) * (y**2 - x**5)))
    slopes = [fmpq(s.slope[0], s.slope[1]) for s in segs]
    assert slopes == sorted(slopes)
    assert len(segs) == 2


def test_newton_polygon_translates_center():
    (s,) = newton_polygon((y - 1) ** 2 - (x - 2) ** 3, (2, 1))
    assert (s.start, s.end) == ((0, 2), (3, 0))


def test_cusp_has_one_ramified_branch():
    (b,) = puiseux_branches(y**2 - x**3)
    assert b.e == 2 and b.weight == 1
    assert [(k, str(c)) for k, c in b.terms(6)] == [(fmpq(3, 2), "1")]


def test_node_two_branches():
    bs = puiseux_branches(y**2 - x**2)
    assert [b.e for b in bs] == [1, 1]
    assert branch_intersection_multiplicity(*bs) == 1


def test_broughton_on_the_line_x_zero():
    bs = puiseux_branches(x * (x * y + 1), (0, 7))
    assert branch_count(bs) == 1 and bs[0].vertical


def test_intersection_examples():
    (a,) = puiseux_branches(y - x**2)
    (b,) = puiseux_branches(y)
    assert branch_intersection_multiplicity(a, b) == 2
    (c,) = puiseux_branches(y - x**3)
    assert branch_intersection_multiplicity(c, b) == 3
    with pytest.raises(InfiniteContact):
        branch_intersection_multiplicity(b, b)


def test_milnor_examples():
    assert local_milnor_number(x * y) == 1
    assert local_milnor_number(y**2 - x**3) == 2
    assert local_milnor_number(y - x) == 0
    with pytest.raises(NonIsolatedSingularity):
        local_milnor_number(x**2 * y)


def test_non_reduced_germ_is_rejected():
    with pytest.raises(NonReducedGerm):
        puiseux_branches((y - x) ** 2 * (y + x))


# classical germs: (polynomial, branch count, sorted ramifications, mu)
GERMS = [
    (x * y, 2, [1, 1], 1),
    (y**2 - x**2, 2, [1, 1], 1),
    (y**2 - x**3, 1, [2], 2),
    (y**2 - x**4, 2, [1, 1], 3),
    (y**3 - x**4, 1, [3], 6),
    (y**3 - x**5, 1, [3], 8),
    (y * (y - x) * (y + x), 3, [1, 1, 1], 4),
    (x**3 - y**3, 3, [1, 1, 1], 4),
    (y**2 - x**5, 1, [2], 4),
    (y**4 - 2 * x**3 * y**2 - 4 * x**5 * y + x**6 - x**7, 1, [4], 16),
    ((y**2 - x**3) * (y - x), 2, [1, 2], 5),
    ((x - y**2) * (x + y**2), 2, [2, 2], 3),
]


@pytest.mark.parametrize("g,r,es,mu", GERMS)
def test_classical_germ_oracles(g, r, es, mu):
    bs = puiseux_branches(g)
    assert branch_count(bs) == r
    assert sorted(b.e for b in bs for _ in range(b.weight)) == es
    assert local_milnor_number(g) == mu
    assert mu >= r - 1 and (mu - r + 1) % 2 == 0


def test_tacnode_contact():
    bs = puiseux_branches(y**2 - x**4)
    assert branch_intersection_multiplicity(*bs) == 2


@pytest.mark.parametrize("f", [x**2 * y - y**3, x**3 + y**4 + x * y, y**2 - x**6])
def test_milnor_equals_partials_intersection(f):
    fx, fy = f.derivative(0), f.derivative(1)
    reduced, other = (fy, fx) if is_squarefree(fy) and fy.constant_term().is_zero() else (fx, fy)
    assert intersection_with_curve(puiseux_branches(reduced), other) == local_milnor_number(f)


small = st.integers(min_value=-3, max_value=3)


@st.composite
def germs(draw):
    terms = {}
    for _ in range(draw(st.integers(2, 6))):
        i = draw(st.integers(0, 5))
        j = draw(st.integers(0, 5 - i))
        if i + j == 0:
            continue
        terms[(i, j)] = draw(small)
    return BPoly(terms)


@settings(max_examples=40, deadline=None)
@given(germs())
def test_weierstrass_degree_and_reexpansion(g):
    if g.is_zero() or g.total_degree < 1 or not is_squarefree(g):
        return
    if g.order(0) > 0:
        return
    k = g.restrict(0, 0).valuation()
    bs = puiseux_branches(g)
    assert sum(b.e * b.weight for b in bs) == k
    lines = [y, y - x, x]
    before = [[b.order_of(h) for h in lines if not _contains(b, h)] for b in bs]
    for b in bs:
        b.y_series(64)
    after = [[b.order_of(h) for h in lines if not _contains(b, h)] for b in bs]
    assert before == after


def _contains(b, h):
    try:
        b.order_of(h, cap=64)
        return False
    except InfiniteContact:
        return True


@settings(max_examples=30, deadline=None)
@given(germs())
def test_milnor_branch_parity(g):
    if g.is_zero() or not is_squarefree(g):
        return
    gx, gy = g.derivative(0), g.derivative(1)
    c = bgcd(gx, gy)
    if not c.is_constant() and c.constant_term().is_zero():
        return
    mu = local_milnor_number(g)
    r = branch_count(puiseux_branches(g))
    assert mu >= r - 1 and (mu - r + 1) % 2 == 0
