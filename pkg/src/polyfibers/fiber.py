"""Absolutely irreducible components of a fiber ``f = c``.

The components are computed over a number field that contains ``c`` and
over which every component is defined, so that later local computations
(branches at singular points, strict transforms at infinity) can name the
component each local branch belongs to.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

from .exactalg import (
    QQ,
    AlgebraicNumber,
    BPoly,
    Embedding,
    NFElement,
    NumberField,
    absolute_factor_count,
    extend,
    factor,
    UPoly,
    bgcd,
    factor_bivariate,
    gcd,
    is_squarefree,
    resultant,
)
from flint import fmpq_poly

from .exactalg.algebraic import format_minpoly, format_rational
from .exactalg.ops import _bkey


class NonReducedFiber(ValueError):
    pass


@dataclass(frozen=True)
class FiberComponents:
    value: AlgebraicNumber
    field: NumberField
    c: NFElement
    poly: BPoly
    parts: tuple

    @property
    def r(self) -> int:
        return len(self.parts)


def value_field(c: AlgebraicNumber):
    """``(K, element)`` with ``K = Q(c)``; the element stands for ``c``.

    Only the minimal polynomial is used, so conjugate values share one field
    and every result computed over it.
    """
    return _field_of(conjugacy_key(c))


@lru_cache(maxsize=None)
def _field_of(key: tuple):
    m = fmpq_poly(list(key))
    if m.degree() == 1:
        return QQ, QQ(-m[0] / m[1])
    K = NumberField(m)
    return K, K.gen


def conjugacy_key(c: AlgebraicNumber) -> tuple:
    return tuple(c.minpoly.coeffs())


def _specialise(h: BPoly):
    """A univariate slice ``h(x0, y)`` (or ``h(x, y0)``) of full degree and squarefree."""
    var = 0 if h.degree(1) >= h.degree(0) else 1
    n = h.degree(1 - var)
    for k in range(64):
        x0 = (k + 1) // 2 * (1 if k % 2 else -1)
        g = h.restrict(var, x0)
        if g.degree == n and gcd(g, g.derivative()).degree == 0:
            return g
    raise ArithmeticError("no squarefree slice found")


def _split_all(parts, K):
    total = Embedding.identity(K)
    while True:
        todo = [h for h in parts if absolute_factor_count(h) > 1]
        if not todo:
            return parts, K, total
        h = todo[0]
        _, facs = factor(_specialise(h))
        g = min((f for f, _ in facs), key=lambda f: f.degree)
        L, emb, _ = extend(K, g)
        new = []
        for p in parts:
            if p in todo:
                new += [q for q, _ in factor_bivariate(p.map(emb))]
            else:
                new.append(p.map(emb))  # absolutely irreducible already
        parts, K, total = new, L, total.then(emb)


def fiber_components(f: BPoly, c: AlgebraicNumber) -> FiberComponents:
    """Components of ``f = c``; conjugate values reuse one computation."""
    return replace(_components(f, conjugacy_key(c)), value=c)


@lru_cache(maxsize=128)
def _components(f: BPoly, key: tuple) -> FiberComponents:
    K, cK = _field_of(key)
    poly = f.change_field(K) - cK
    if poly.is_constant():
        raise ValueError("constant fiber")
    if not is_squarefree(poly):
        raise NonReducedFiber("non-reduced fiber")
    if absolute_factor_count(poly) == 1:
        parts = [poly.content_free()]
    else:
        parts = [h for h, _ in factor_bivariate(poly)]
    parts, L, emb = _split_all(parts, K)
    if L is not K:
        cK = emb(cK)
        poly = f.change_field(L) - cK
    parts.sort(key=lambda h: (h.total_degree, _bkey(h)))
    return FiberComponents(None, L, cK, poly, tuple(parts))


# -- singular points -------------------------------------------------------

class NonIsolatedSingularities(ValueError):
    pass


@dataclass(frozen=True)
class SingularPoint:
    """A Galois orbit of ``weight`` singular points, represented over ``field``."""

    field: NumberField
    x: NFElement
    y: NFElement
    weight: int
    mu: int = 0
    owners: tuple = ()  # owning component of every local branch, sorted

    @property
    def branches(self) -> int:
        return len(self.owners)

    def describe(self) -> dict:
        out = {}
        for name, v in (("x", self.x), ("y", self.y)):
            if v.is_rational():
                out[name] = format_rational(v.to_rational())
            else:
                out[name + "_minpoly"] = format_minpoly(v.minpoly(), name)
        out["count"] = self.weight
        out["mu"] = self.mu
        out["branches"] = self.branches
        return out


def check_isolated(f: BPoly):
    fx, fy = f.derivative(0), f.derivative(1)
    for a, b in ((fx, fy), (fy, fx)):
        if a.is_zero() and not b.is_constant():
            raise NonIsolatedSingularities("affine singularities are not isolated")
    if not fx.is_zero() and not fy.is_zero() and not bgcd(fx, fy).is_constant():
        raise NonIsolatedSingularities("affine singularities are not isolated")


def common_zeros(polys, K: NumberField):
    """Common zeros of bivariate polynomials with finitely many of them.

    Returns ``[(L, embedding K -> L, x, y, weight)]``, one entry per orbit of
    conjugate points over ``K``.
    """
    polys = [p for p in polys if not p.is_zero()]
    if any(p.is_constant() for p in polys):
        return []
    R = resultant(polys[0], polys[1], "y")
    for p in polys[2:]:
        R = gcd(R, resultant(polys[0], p, "y")) if R.degree > 0 else R
    if R.is_zero():
        raise NonIsolatedSingularities("common factor: infinitely many common zeros")
    if R.degree < 1:
        return []
    out = []
    _, facs = factor(R)
    for g, _ in facs:
        L, emb, a = extend(K, g)
        h = None
        for p in polys:
            q = p.map(emb).restrict(0, a)
            h = q if h is None else gcd(h, q)
        if h.is_zero():
            raise NonIsolatedSingularities("vertical line of common zeros")
        if h.degree < 1:
            continue
        _, facs2 = factor(h)
        for g2, _ in facs2:
            L2, emb2, b = extend(L, g2)
            out.append((L2, emb.then(emb2), emb2(a), b, g.degree * g2.degree))
    return out


def fiber_singularities(f: BPoly, c: AlgebraicNumber):
    """Singular points of the fiber with Milnor numbers and branch owners."""
    return list(_singularities(f, conjugacy_key(c)))


@lru_cache(maxsize=128)
def _singularities(f: BPoly, key: tuple):
    from .puiseux import local_milnor_number, owner_of, puiseux_branches

    fc = _components(f, key)
    p = fc.poly
    pts = []
    for L, emb, a, b, w in common_zeros([p.derivative(0), p.derivative(1), p], fc.field):
        pL = p.map(emb)
        mu = local_milnor_number(pL, (a, b))
        parts = [h.map(emb) for h in fc.parts]
        owners = []
        for br in puiseux_branches(pL, (a, b)):
            owners.extend([owner_of(br, parts)] * br.weight)
        pts.append(SingularPoint(L, a, b, w, mu, tuple(sorted(owners))))
    pts.sort(key=lambda s: (s.weight, str(s.describe())))
    return tuple(pts)
