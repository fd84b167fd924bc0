"""Local branches of plane curve germs.

Branches are computed with the rational Newton-Puiseux algorithm: every
conjugate family of branches is represented once, over the smallest field
the algorithm needs, by a parametrisation ``x = alpha*T^e, y = y(T)``.  A
branch record therefore stands for ``weight`` geometric branches.
"""

from __future__ import annotations

import math

from dataclasses import dataclass, field

from flint import fmpq

from .exactalg import BPoly, Embedding, NFElement, NumberField, UPoly, bgcd, extend, factor


class NonReducedGerm(ValueError):
    pass


class NonIsolatedSingularity(ValueError):
    pass


class InfiniteContact(ValueError):
    pass


MAX_DEPTH = 64
MAX_PRECISION = 1 << 13


# -- Newton polygon ------------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    start: tuple
    end: tuple
    slope: tuple  # (dj, di) primitive, dj < 0 < di
    face: UPoly

    @property
    def steps(self) -> int:
        return (self.start[1] - self.end[1]) // -self.slope[0]


@dataclass(frozen=True)
class NewtonPolygon:
    segments: tuple

    def __iter__(self):
        return iter(self.segments)

    def __len__(self):
        return len(self.segments)


def _lower_hull(points):
    hull = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] unless it lies strictly below the chord
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _polygon(G: BPoly) -> NewtonPolygon:
    lowest = {}
    for i, j in G.terms:
        if i not in lowest or j < lowest[i]:
            lowest[i] = j
    jmin = min(lowest.values())
    iend = min(i for i, j in lowest.items() if j == jmin)
    pts = sorted((i, j) for i, j in lowest.items() if i <= iend)
    hull = _lower_hull(pts)
    segs = []
    for (i0, j0), (i1, j1) in zip(hull, hull[1:]):
        di, dj = i1 - i0, j1 - j0
        g = math.gcd(di, dj)
        q, m = di // g, -dj // g
        coeffs = [G.K.zero] * (g + 1)
        for k in range(g + 1):
            coeffs[g - k] = G.coeff(i0 + k * q, j0 - k * m)
        segs.append(Segment((i0, j0), (i1, j1), (-m, q), UPoly(G.K, coeffs)))
    return NewtonPolygon(tuple(segs))


def _as_field_point(K, center):
    if center is None:
        return K.zero, K.zero
    return K(center[0]), K(center[1])


def newton_polygon(germ: BPoly, center=None) -> NewtonPolygon:
    """Lower Newton polygon of ``germ`` translated so that ``center`` is the origin.

    Segments run from the face nearest the ``y``-axis to the one nearest the
    ``x``-axis, so they get less steep along the list.  The face polynomial of
    a segment with slope ``-m/q`` is ``sum a_ij Z^((j - j_end)/m)``.
    """
    a, b = _as_field_point(germ.K, center)
    G = germ.translate(a, b) if not (a.is_zero() and b.is_zero()) else germ
    if G.is_zero():
        raise ValueError("germ vanishes identically")
    return _polygon(G)


# -- truncated power series ----------------------------------------------------

def _smul(a, b, P, K):
    out = [K.zero] * P
    for i, x in enumerate(a[:P]):
        if x.is_zero():
            continue
        for j in range(min(len(b), P - i)):
            y = b[j]
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def _sinv(a, P, K):
    inv0 = a[0].inverse()
    out = [K.zero] * P
    out[0] = inv0
    for n in range(1, P):
        acc = K.zero
        for k in range(1, min(n, len(a) - 1) + 1):
            if not a[k].is_zero():
                acc = acc + a[k] * out[n - k]
        out[n] = -acc * inv0
    return out


def _x_columns(h: BPoly, alpha, e, P, K):
    """``h`` as a polynomial in ``y`` whose coefficients are series in ``T``."""
    cols = {}
    apow = {}
    for (i, j), c in h.terms.items():
        if e * i >= P:
            continue
        if i not in apow:
            apow[i] = alpha ** i
        col = cols.setdefault(j, [K.zero] * P)
        col[e * i] = col[e * i] + K(c) * apow[i]
    return cols


def _eval_series(h: BPoly, alpha, e, yser, P, K):
    """``h(alpha*T^e, y(T))`` modulo ``T^P``."""
    cols = _x_columns(h, alpha, e, P, K)
    if not cols:
        return [K.zero] * P
    n = max(cols)
    acc = list(cols.get(n, [K.zero] * P))
    for j in range(n - 1, -1, -1):
        acc = _smul(acc, yser, P, K)
        col = cols.get(j)
        if col is not None:
            acc = [u + v for u, v in zip(acc, col)]
    return acc


def _valuation(s):
    for i, a in enumerate(s):
        if not a.is_zero():
            return i
    return None


# -- branches ------------------------------------------------------------------

@dataclass
class PuiseuxBranch:
    """One conjugate family of local branches.

    ``x = alpha*T^e`` and ``y = sum_k c_k T^k``; the ``weight`` counts the
    geometric branches represented (the degree of ``field`` over ``base``).
    Vertical branches are ``x = 0, y = T`` (stored with ``alpha = 0, e = 1``).
    """

    center: tuple
    base: NumberField
    field: NumberField
    embedding: Embedding
    e: int
    alpha: NFElement
    vertical: bool = False
    exact: list | None = None
    chain: list = field(default_factory=list)
    leaf: BPoly | None = None
    _cache: list = field(default_factory=list, repr=False)

    @property
    def weight(self) -> int:
        return self.field.degree // self.base.degree

    @property
    def ramification(self) -> int:
        return self.e

    def y_series(self, P: int):
        """Coefficients of ``y(T)`` exact modulo ``T^P``."""
        K = self.field
        if self.vertical:
            return ([K.zero, K.one] + [K.zero] * P)[:P]
        if len(self._cache) >= P:
            return self._cache[:P]
        if self.exact is not None:
            Y = (list(self.exact) + [K.zero] * P)[:P]
        else:
            Y = _solve_leaf(self.leaf, P, K)
        # walk back up: Y_prev = X^q (b + Y) with X = c*T^f
        c, f = K.one, 1
        for a, m, q, b in reversed(self.chain):
            Y = [b + Y[0]] + Y[1:]
            scale = c ** q
            Y = ([K.zero] * (f * q) + [scale * t for t in Y])[:P]
            c, f = a * c ** m, f * m
        if f != self.e or not (c == self.alpha):
            raise ArithmeticError("inconsistent branch parametrisation")
        self._cache = Y
        return Y

    def exact_degree(self):
        """Degree bound of ``y(T)`` when the parametrisation is polynomial, else None."""
        if self.vertical:
            return 1
        if self.exact is None:
            return None
        f, d = 1, 0
        for a, m, q, b in reversed(self.chain):
            d = d + f * q
            f = f * m
        return d + 1

    def terms(self, P: int = 12):
        """``[(k/e, c_k)]`` for the nonzero coefficients of ``y`` below ``T^P``."""
        s = self.y_series(P)
        e = max(self.e, 1)
        return [(fmpq(k, e), c) for k, c in enumerate(s) if not c.is_zero()]

    def order_of(self, h: BPoly, cap: int = MAX_PRECISION) -> int:
        """``ord_T h(x(T), y(T))``: intersection multiplicity of one branch with ``h``."""
        K = self.field
        hL = h.map(_to_field(h.K, self))
        hL = hL.translate(*self._center_in_field()) if not self._origin() else hL
        if self.vertical:
            r = hL.restrict(0, 0)
            if r.is_zero():
                raise InfiniteContact("curve contains the branch")
            return r.valuation()
        P = 16
        while True:
            val = _valuation(_eval_series(hL, self.alpha, self.e, self.y_series(P), P, K))
            if val is not None:
                return val
            deg = self.exact_degree()
            if deg is not None and P > (self.e + deg) * (hL.total_degree + 1):
                raise InfiniteContact("curve contains the branch")
            if P >= cap:
                raise InfiniteContact("curve contains the branch")
            P *= 2

    def vanishes_beyond(self, h: BPoly, P: int) -> bool:
        """True when ``h`` restricted to the branch has order at least ``P``."""
        K = self.field
        hL = h.map(_to_field(h.K, self))
        hL = hL.translate(*self._center_in_field()) if not self._origin() else hL
        if self.vertical:
            r = hL.restrict(0, 0)
            return r.is_zero() or r.valuation() >= P
        return _valuation(_eval_series(hL, self.alpha, self.e, self.y_series(P), P, K)) is None

    def _origin(self):
        return all(c.is_zero() for c in self.center)

    def _center_in_field(self):
        return tuple(self.embedding(c) for c in self.center)


def _to_field(K: NumberField, br: PuiseuxBranch) -> Embedding:
    if K is br.field:
        return Embedding.identity(K)
    if K.is_rational:
        from flint import fmpq_poly
        return Embedding(K, br.field, fmpq_poly([]))
    if K is br.base:
        return br.embedding
    raise ValueError("polynomial field is unrelated to the branch field")


def _solve_leaf(G: BPoly, P: int, K: NumberField):
    """Series ``Y(X)`` with ``G(X, Y(X)) = 0`` and ``Y(0) = 0`` modulo ``X^P``."""
    one = K.one
    Gy = G.derivative(1)
    Y = [K.zero] * P
    prec = 1
    while prec < P:
        prec = min(2 * prec, P)
        val = _eval_series(G, one, 1, Y[:prec], prec, K)
        der = _eval_series(Gy, one, 1, Y[:prec], prec, K)
        corr = _smul(val, _sinv(der, prec, K), prec, K)
        Y = [Y[i] - corr[i] for i in range(prec)] + [K.zero] * (P - prec)
    return Y


def _bezout(m, q):
    """``(u, v)`` with ``u*m - v*q = 1``."""
    for v in range(m):
        if (1 + v * q) % m == 0:
            return (1 + v * q) // m, v
    raise AssertionError("slopes must be coprime")


def _substitute(G: BPoly, a, m, q, b, N):
    """``G(a X^m, X^q (b + Y)) / X^N``."""
    K = G.K
    X = BPoly._raw(K, {(m, 0): a}, G.vars)
    Y = BPoly._raw(K, {(q, 0): b, (q, 1): K.one}, G.vars)
    if b.is_zero():
        Y = BPoly._raw(K, {(q, 1): K.one}, G.vars)
    return G.compose(X, Y).divide_monomial(N, 0)


class _Ctx:
    def __init__(self, base, center):
        self.base = base
        self.center = center
        self.leaves = []


def _expand(ctx, G: BPoly, emb: Embedding, chain, xe, xa, depth):
    """Collect branch leaves of ``G`` at the origin.

    ``emb`` maps the base field into ``G.K``; ``x = xa*T^xe`` is the
    accumulated monomial for ``x`` in terms of the current ``X``.
    """
    if depth > MAX_DEPTH:
        raise NonReducedGerm("non-reduced germ")
    K = G.K
    b = G.order(1)
    if b >= 2:
        raise NonReducedGerm("non-reduced germ")
    if b == 1:
        ctx.leaves.append(PuiseuxBranch(ctx.center, ctx.base, K, emb, xe, xa,
                                        exact=[K.zero], chain=list(chain)))
        G = G.divide_monomial(0, 1)
    if not G.constant_term().is_zero():
        return
    for seg in _polygon(G):
        m, q = -seg.slope[0], seg.slope[1]
        u, v = _bezout(m, q)
        N = m * seg.start[0] + q * seg.start[1]
        _, facs = factor(seg.face)
        for psi, nu in facs:
            if psi.degree == 1:
                L, e2, zeta = K, Embedding.identity(K), -psi.monic()[0]
                GL = G
            else:
                L, e2, zeta = extend(K, psi)
                GL = G.map(e2)
            ch = [(e2(a_), m_, q_, e2(b_)) for a_, m_, q_, b_ in chain]
            ex = xa if L is K else e2(xa)
            a = zeta ** v
            bb = zeta ** u
            G1 = _substitute(GL, a, m, q, bb, N)
            # x = ex*(a*X^m)^xe ... new x-monomial in terms of X
            new_xa = ex * a ** xe
            new_xe = xe * m
            ch.append((a, m, q, bb))
            new_emb = emb.then(e2) if L is not K else emb
            if nu == 1:
                ctx.leaves.append(PuiseuxBranch(ctx.center, ctx.base, L, new_emb, new_xe,
                                                new_xa, chain=ch, leaf=G1))
            else:
                _expand(ctx, G1, new_emb, ch, new_xe, new_xa, depth + 1)


def puiseux_branches(germ: BPoly, center=None, check_reduced: bool = True):
    """Local branches of ``germ = 0`` at ``center`` (default: the origin).

    Every returned record stands for ``weight`` conjugate branches; the total
    ``sum(weight)`` is the number of local analytic branches.
    """
    K = germ.K
    a, b = _as_field_point(K, center)
    G = germ.translate(a, b) if not (a.is_zero() and b.is_zero()) else germ
    if G.is_zero():
        raise NonReducedGerm("non-reduced germ")
    if not G.constant_term().is_zero():
        raise ValueError("center is not a point of the curve")
    if check_reduced:
        g = bgcd(bgcd(G, G.derivative(0)), G.derivative(1))
        if not g.is_constant() and g.constant_term().is_zero():
            raise NonReducedGerm("non-reduced germ")
    ctx = _Ctx(K, (a, b))
    ident = Embedding.identity(K)
    xo = G.order(0)
    if xo >= 2:
        raise NonReducedGerm("non-reduced germ")
    if xo == 1:
        ctx.leaves.append(PuiseuxBranch((a, b), K, K, ident, 1, K.zero, vertical=True))
        G = G.divide_monomial(1, 0)
        if G.constant_term().is_zero():
            _expand(ctx, G, ident, [], 1, K.one, 0)
    else:
        _expand(ctx, G, ident, [], 1, K.one, 0)
    return ctx.leaves


def branch_count(branches) -> int:
    return sum(b.weight for b in branches)


# -- intersection multiplicities --------------------------------------------------

def intersection_with_curve(branches, h: BPoly) -> int:
    """Local intersection number of the germ (given by its branches) with ``h``."""
    return sum(b.weight * b.order_of(h) for b in branches)


def _branch_equation(b: PuiseuxBranch, P: int):
    """Coefficients (series in ``x``) of the monic local equation of one branch.

    With ``s = T``, ``x = alpha*s^e``, the symmetric functions of the ``e``
    conjugate roots come from power sums ``p_r = e * [terms of y^r with
    exponent divisible by e]``.
    """
    K = b.field
    e = b.e
    Pt = P * e
    y = b.y_series(Pt)
    power = [K.one] + [K.zero] * (Pt - 1)
    sums = []
    ainv = b.alpha.inverse()
    for r in range(1, e + 1):
        power = _smul(power, y, Pt, K)
        # T^(e k) = (x/alpha)^k
        sums.append([power[e * k] * e * ainv ** k for k in range(P)])
    # Newton identities: k*E_k = sum_{i=1..k} (-1)^(i-1) E_{k-i} p_i
    E = [[K.one] + [K.zero] * (P - 1)]
    for k in range(1, e + 1):
        acc = [K.zero] * P
        for i in range(1, k + 1):
            term = _smul(E[k - i], sums[i - 1], P, K)
            sign = 1 if i % 2 else -1
            acc = [u + sign * v for u, v in zip(acc, term)]
        E.append([c * fmpq(1, k) for c in acc])
    # equation: sum_k (-1)^k E_k y^(e-k)
    return [[c * (1 if k % 2 == 0 else -1) for c in E[k]] for k in range(e + 1)]


def branch_intersection_multiplicity(b1: PuiseuxBranch, b2: PuiseuxBranch) -> int:
    """Intersection multiplicity of two distinct branches over a common field."""
    if b1.field is not b2.field:
        raise ValueError("branches must be expressed over the same field")
    if any(not (u == v) for u, v in zip(b1._center_in_field(), b2._center_in_field())):
        raise ValueError("branches have different centers")
    K = b1.field
    if b2.vertical:
        b1, b2 = b2, b1
    if b2.vertical:
        raise InfiniteContact("infinite contact")
    if b1.vertical:
        return b2.e
    P = 8
    while P <= MAX_PRECISION:
        eq = _branch_equation(b2, P)
        e2 = b2.e
        # evaluate sum_k eq[k](x) * y^(e2-k) along b1, x = alpha1*T^e1
        Pt = P * b1.e
        y1 = b1.y_series(Pt)
        acc = [K.zero] * Pt
        ypow = [K.one] + [K.zero] * (Pt - 1)
        for k in range(e2, -1, -1):
            col = [K.zero] * Pt
            for n, c in enumerate(eq[k]):
                if b1.e * n < Pt and not c.is_zero():
                    col[b1.e * n] = c * b1.alpha ** n
            acc = [u + v for u, v in zip(acc, _smul(col, ypow, Pt, K))]
            ypow = _smul(ypow, y1, Pt, K)
        val = _valuation(acc)
        if val is not None:
            return val
        P *= 2
    raise InfiniteContact("infinite contact")


def local_milnor_number(germ: BPoly, center=None) -> int:
    """Milnor number of the reduced curve germ at ``center``.

    Uses Teissier's lemma ``mu = i(g, g_y) - i(g, x) + 1`` in coordinates where
    the line ``x = 0`` is not a component of the germ.
    """
    K = germ.K
    a, b = _as_field_point(K, center)
    G = germ.translate(a, b) if not (a.is_zero() and b.is_zero()) else germ
    if not G.constant_term().is_zero():
        raise ValueError("center is not a point of the curve")
    g = bgcd(G.derivative(0), G.derivative(1))
    if not g.is_constant() and g.constant_term().is_zero():
        raise NonIsolatedSingularity("non-isolated singularity")
    x, y = BPoly.gens(K, G.vars)
    lam = 0
    while G.order(0) > 0:
        lam += 1
        G = germ.translate(a, b).compose(x + y * lam, y)
    branches = puiseux_branches(G, check_reduced=False)
    i_gy = intersection_with_curve(branches, G.derivative(1))
    i_x = sum(br.weight * br.e for br in branches)
    return i_gy - i_x + 1


def owner_of(branch: PuiseuxBranch, components) -> int:
    """Index of the unique component (polynomial) that contains the branch."""
    P = 16
    while P <= MAX_PRECISION:
        hits = [k for k, h in enumerate(components) if branch.vanishes_beyond(h, P)]
        if len(hits) == 1:
            return hits[0]
        if not hits:
            raise ArithmeticError("no component contains the branch")
        P *= 2
    raise ArithmeticError("branch ownership undecided")


__all__ = [
    "NewtonPolygon",
    "Segment",
    "PuiseuxBranch",
    "NonReducedGerm",
    "NonIsolatedSingularity",
    "InfiniteContact",
    "newton_polygon",
    "puiseux_branches",
    "branch_count",
    "branch_intersection_multiplicity",
    "intersection_with_curve",
    "local_milnor_number",
    "owner_of",
]
