"""Resolution at infinity of the pencil ``f - c``.

The pencil is ``F(X, Y, Z) - c Z^d`` on the projective plane.  Base points
on the line at infinity are blown up explicitly in affine charts ``(u, v)``
where ``u = 0`` is the line at infinity (or a later exceptional curve).  A
point is carried as a local pair ``(A, B)`` with ``phi = A / B``.

Conjugate points are processed once over a number field and the subtree
below them is replicated ``[L:K]`` times when the graph is assembled, so
every vertex of the resulting dual graphs is a geometric component.

Two kinds of runs exist.  The weak run blows up base points only and
gives the dicritical components, the bamboos and the tree at infinity.  A
run for a value ``c`` additionally blows up points where the fiber over
``c`` is not a normal crossing divisor meeting the dicriticals
transversally, which yields the total divisor over ``c``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import cached_property

import sympy
from flint import fmpz_mat
from sympy.matrices.normalforms import smith_normal_form

from .exactalg import (
    QQ,
    AlgebraicNumber,
    BPoly,
    NFElement,
    NumberField,
    UPoly,
    algebraic_roots,
    extend,
    factor,
    gcd,
)
from .exactalg.algebraic import format_rational
from .fiber import FiberComponents, conjugacy_key, fiber_components
from .fibergraph import DualGraph, Vertex, affine_id

MAX_BLOWUPS = 400
MAX_FIELD_DEGREE = 48
_UV = ("u", "v")


class ResolutionError(ArithmeticError):
    """An internal consistency check of the resolution failed."""


class ValueOutsideTower(ValueError):
    """The number field tower needed for a value grew past the supported degree."""


def _extend(K, g):
    L, emb, r = extend(K, g)
    if L.degree > MAX_FIELD_DEGREE:
        raise ValueOutsideTower("value outside computable tower")
    return L, emb, r


# -- components and the infinitely near tree ---------------------------------

@dataclass(eq=False)
class Component:
    kind: str  # "line" or "exceptional"
    stage: str  # "weak" or "total"
    field: NumberField
    value: object  # NFElement, "inf", or None for a dicritical component
    mult: int = 0
    degree: int = 0
    rfunc: tuple = None  # (N, M) over ``field`` for dicriticals
    is_c: bool = False
    born_on: tuple = ()
    uid: int = -1

    @property
    def dicritical(self) -> bool:
        return self.value is None

    def clone(self, remap):
        c = Component(self.kind, self.stage, self.field, self.value, self.mult, self.degree,
                      self.rfunc, self.is_c, tuple(remap.get(b, b) for b in self.born_on))
        return c


@dataclass(eq=False)
class TreeNode:
    """One blow-up: the center and the exceptional component it creates."""

    component: Component
    center: str
    stage: str
    children: list = field(default_factory=list)

    def clone(self, remap):
        return TreeNode(remap.get(self.component, self.component), self.center, self.stage,
                        [ch.clone(remap) for ch in self.children])


@dataclass
class InfinitelyNearTree:
    roots: list

    def nodes(self):
        stack = list(reversed(self.roots))
        while stack:
            n = stack.pop()
            yield n
            stack.extend(reversed(n.children))

    def __len__(self):
        return sum(1 for _ in self.nodes())


@dataclass(frozen=True)
class DicriticalComponent:
    id: str
    degree: int


@dataclass(frozen=True)
class Bamboo:
    components: tuple  # ids from the attachment point to the extremity
    value: AlgebraicNumber
    multiplicities: tuple


@dataclass(frozen=True)
class BranchRecord:
    owner: int  # index of the affine component
    m: int
    ell: int
    image: int  # m * ell, the class of the boundary in H_1 of the place
    component: str  # divisor component the strict transform lands on


@dataclass(frozen=True)
class PlaceAtInfinity:
    dicritical: str
    attach: str | None
    bamboo: Bamboo | None
    tree: tuple  # ids of the components of D_c in this place
    branches: tuple
    euler_jump: int

    @property
    def n(self) -> int:
        return len(self.branches)

    @property
    def surjective(self) -> bool:
        g = 0
        for b in self.branches:
            g = math.gcd(g, b.image)
        return g == 1



# -- fragments -------------------------------------------------------------

class _Frag:
    __slots__ = ("comps", "edges", "weak_edges", "stubs", "deltas", "nodes")

    def __init__(self):
        self.comps = []
        self.edges = []
        self.weak_edges = []
        self.stubs = []
        self.deltas = []
        self.nodes = []

    def absorb(self, other: "_Frag", copies: int):
        """Append ``copies`` disjoint copies of ``other`` (the first copy is ``other`` itself)."""
        for k in range(copies):
            remap = _clone_all(other.comps) if k else {}
            m = remap.get
            self.comps.extend(m(c, c) for c in other.comps)
            self.edges.extend((m(a, a), m(b, b)) for a, b in other.edges)
            self.weak_edges.extend((m(a, a), m(b, b)) for a, b in other.weak_edges)
            self.stubs.extend((m(a, a), o) for a, o in other.stubs)
            self.deltas.extend((m(a, a), d) for a, d in other.deltas)
            self.nodes.extend(n.clone(remap) for n in other.nodes)


def _clone_all(comps):
    remap = {c: c.clone({}) for c in comps}
    for new in remap.values():
        new.born_on = tuple(remap.get(b, b) for b in new.born_on)
    return remap


@dataclass
class _Point:
    K: NumberField
    A: BPoly
    B: BPoly
    comps: list  # [(Component, axis)], axis 0 is {u = 0}, axis 1 is {v = 0}
    stricts: list  # [(owner, BPoly)]
    c: NFElement | None
    depth: int
    center: str


def _is_base(pt: _Point) -> bool:
    return pt.A.constant_term().is_zero() and pt.B.constant_term().is_zero()


def _value_at(pt: _Point):
    b = pt.B.constant_term()
    if b.is_zero():
        return "inf"
    return pt.A.constant_term() / b


def _is_normal_crossing(pt: _Point) -> bool:
    if len(pt.stricts) + len(pt.comps) > 2:
        return False
    for _, s in pt.stricts:
        if s.total_order() != 1:
            return False
        for _, axis in pt.comps:
            # tangent line s_u u + s_v v must differ from the axis
            if s.coeff(*((0, 1) if axis == 0 else (1, 0))).is_zero():
                return False
    return True


def _blowup_terms(p: BPoly, chart: int, k: int) -> BPoly:
    out = {}
    for (i, j), c in p.terms.items():
        e = (i + j - k, j) if chart == 1 else (i, i + j - k)
        out[e] = c
    return BPoly._raw(p.K, out, _UV)


class _Runner:
    def __init__(self, c, owners):
        self.c = c
        self.owners = owners
        self.count = 0

    def explore(self, pt: _Point) -> _Frag:
        if _is_base(pt):
            return self.blowup(pt, "weak")
        v = _value_at(pt)
        if pt.c is not None and v != "inf" and v == pt.c:
            if not _is_normal_crossing(pt):
                return self.blowup(pt, "total")
        elif pt.stricts:
            raise ResolutionError("fiber passes through a point of another value")
        frag = _Frag()
        if len(pt.comps) == 2:
            a, b = pt.comps[0][0], pt.comps[1][0]
            frag.edges.append((a, b))
            if a.stage == "weak" and b.stage == "weak":
                frag.weak_edges.append((a, b))
        if pt.stricts and len(pt.comps) != 1:
            raise ResolutionError("strict transform at a corner of the divisor")
        for owner, _ in pt.stricts:
            frag.stubs.append((pt.comps[0][0], owner))
        return frag

    def blowup(self, pt: _Point, stage: str) -> _Frag:
        self.count += 1
        if self.count > MAX_BLOWUPS or pt.depth > MAX_BLOWUPS:
            raise ResolutionError("too many blow-ups")
        K = pt.K
        a, b = pt.A.total_order(), pt.B.total_order()
        k = min(a, b)
        A1, B1 = _blowup_terms(pt.A, 1, k), _blowup_terms(pt.B, 1, k)
        E = Component("exceptional", stage, K, None, born_on=tuple(c for c, _ in pt.comps))
        N, M = A1.restrict(0), B1.restrict(0)
        if a > b:
            E.value, E.mult = K.zero, a - b
        elif a < b:
            E.value, E.mult = "inf", b - a
        else:
            g = gcd(N, M)
            N0, M0 = N // g, M // g
            if N0.degree == 0 and M0.degree == 0:
                c0 = N0[0] / M0[0]
                E.value = c0
                E.mult = (A1 - B1 * c0).order(0)
            else:
                E.degree = max(N0.degree, M0.degree)
                E.rfunc = (N0, M0)
        E.is_c = pt.c is not None and not E.dicritical and E.value != "inf" and E.value == pt.c
        if stage == "total" and not E.is_c:
            raise ResolutionError("total-stage component off the special fiber")

        frag = _Frag()
        frag.comps.append(E)
        node = TreeNode(E, pt.center, stage)
        frag.nodes.append(node)
        for comp, _ in pt.comps:
            frag.deltas.append((comp, -1))
        if stage == "total" and len(pt.comps) == 2:
            a_, b_ = pt.comps[0][0], pt.comps[1][0]
            if a_.stage == "weak" and b_.stage == "weak":
                frag.weak_edges.append((a_, b_))

        stricts1 = []
        for owner, s in pt.stricts:
            stricts1.append((owner, _blowup_terms(s, 1, s.total_order())))
        old_u = [c for c, axis in pt.comps if axis == 0]
        old_v = [c for c, axis in pt.comps if axis == 1]

        # chart 1: points (0, w) on E
        cand = UPoly(K, [K.one])
        cand = cand * gcd(N, M) if not (N.is_zero() and M.is_zero()) else cand
        for _, s in stricts1:
            cand = cand * s.restrict(0)
        if old_v:
            cand = cand * UPoly(K, [K.zero, K.one])
        if E.dicritical and pt.c is not None:
            cand = cand * (E.rfunc[0] - E.rfunc[1] * pt.c)
        sub = _Frag()
        if cand.degree > 0:
            _, facs = factor(cand)
            for g, _ in facs:
                L, emb, w = _extend(K, g)
                A2 = A1.map(emb).translate(0, w)
                B2 = B1.map(emb).translate(0, w)
                comps = [(E, 0)] + ([(old_v[0], 1)] if old_v and w.is_zero() else [])
                st = []
                for owner, s in stricts1:
                    s2 = s.map(emb).translate(0, w)
                    if s2.constant_term().is_zero():
                        st.append((owner, s2))
                c2 = emb(pt.c) if pt.c is not None else None
                child = _Point(L, A2, B2, comps, st, c2, pt.depth + 1, f"w={_fmt(w, L)}")
                sub.absorb(self.explore(child), g.degree)

        # chart 2: the origin, where E meets the old u-axis component
        A2, B2 = _blowup_terms(pt.A, 2, k), _blowup_terms(pt.B, 2, k)
        st = []
        for owner, s in pt.stricts:
            s2 = _blowup_terms(s, 2, s.total_order())
            if s2.constant_term().is_zero():
                st.append((owner, s2))
        comps = [(E, 1)] + ([(old_u[0], 0)] if old_u else [])
        child = _Point(K, A2, B2, comps, st, pt.c, pt.depth + 1, "w=inf")
        sub.absorb(self.explore(child), 1)

        node.children = list(sub.nodes)
        sub.nodes = []
        frag.absorb(sub, 1)
        return frag


def _fmt(w: NFElement, K: NumberField) -> str:
    if w.is_rational():
        return format_rational(w.to_rational())
    return str(w)


# -- charts at infinity -------------------------------------------------------

def _chart_poly(h: BPoly, d: int, which: str, a=None) -> BPoly:
    """``h`` homogenised to degree ``d`` and restricted to a chart at infinity."""
    out = {}
    for (i, j), c in h.terms.items():
        out[(d - i - j, j if which == "X" else i)] = c
    p = BPoly._raw(h.K, out, _UV)
    if which == "X" and a is not None and not a.is_zero():
        p = p.translate(0, a)
    return p


def _top_form(f: BPoly) -> UPoly:
    """``f_d(1, a)`` as a polynomial in ``a``."""
    d = f.total_degree
    n = max(j for (i, j) in f.terms if i + j == d)
    return UPoly(f.K, [f.coeff(d - j, j) for j in range(n + 1)])


@dataclass
class _Run:
    line: Component
    comps: list
    edges: list
    weak_edges: list
    stubs: list
    selfint: dict
    tree: InfinitelyNearTree


def _run(f: BPoly, c=None, owners=()) -> _Run:
    """Explore all points at infinity over ``f.K``; ``owners`` are strict curves."""
    K = f.K
    d = f.total_degree
    line = Component("line", "weak", K, "inf", mult=d, is_c=False)
    runner = _Runner(c, owners)
    frag = _Frag()
    B0 = BPoly._raw(K, {(d, 0): K.one}, _UV)
    top = _top_form(f)
    _, facs = factor(top) if top.degree > 0 else (None, [])
    for g, _ in facs:
        L, emb, a = _extend(K, g)
        fL = f.map(emb)
        A = _chart_poly(fL, d, "X", a)
        st = [(i, _chart_poly(h.map(emb), h.total_degree, "X", a)) for i, h in enumerate(owners)]
        st = [(i, s) for i, s in st if s.constant_term().is_zero()]
        cL = emb(c) if c is not None else None
        pt = _Point(L, A, B0.map(emb), [(line, 0)], st, cL, 0, f"[1:{_fmt(a, L)}:0]")
        frag.absorb(runner.explore(pt), g.degree)
    if top.degree < d:  # the point [0:1:0] is a base point
        A = _chart_poly(f, d, "Y")
        st = [(i, _chart_poly(h, h.total_degree, "Y")) for i, h in enumerate(owners)]
        st = [(i, s) for i, s in st if s.constant_term().is_zero()]
        pt = _Point(K, A, B0, [(line, 0)], st, c, 0, "[0:1:0]")
        frag.absorb(runner.explore(pt), 1)
    comps = [line] + frag.comps
    for i, comp in enumerate(comps):
        comp.uid = i
    selfint = {comp: (1 if comp is line else -1) for comp in comps}
    for comp, dlt in frag.deltas:
        selfint[comp] += dlt
    return _Run(line, comps, frag.edges, frag.weak_edges, frag.stubs, selfint,
                InfinitelyNearTree(frag.nodes))


def _cid(comp: Component) -> str:
    return ("D" if comp.dicritical else "E") + str(comp.uid)


# -- the weak resolution -----------------------------------------------------

@dataclass
class Resolution:
    f: BPoly
    tree: InfinitelyNearTree
    dicriticals: list
    graph_inf: DualGraph
    minimal: bool
    _run: _Run = field(repr=False)
    _per_value: dict = field(default_factory=dict, repr=False)

    @cached_property
    def critical_values(self):
        return critical_values_at_infinity(self)

    def total(self, c: AlgebraicNumber) -> "TotalResolution":
        # conjugate values give the same computation over Q(c)
        key = conjugacy_key(c)
        if key not in self._per_value:
            self._per_value[key] = _total(self, c)
        t = self._per_value[key]
        return t if t.value == c else t.revalue(c)


def resolve_infinity(f: BPoly) -> Resolution:
    """Weak resolution of the base points at infinity of the pencil ``f - c``."""
    if f.total_degree < 1:
        raise ValueError("constant polynomial")
    if not f.is_rational():
        raise ValueError("rational coefficients expected")
    run = _run(f)
    g = DualGraph()
    for comp in run.comps:
        if comp.dicritical:
            g.add_vertex(Vertex(_cid(comp), "dicritical", comp.degree))
        else:
            g.add_vertex(Vertex(_cid(comp), "divisor-component", comp.mult))
    for a, b in run.edges:
        g.add_edge(_cid(a), _cid(b))
    if not g.is_tree():
        raise ResolutionError("the divisor at infinity is not a tree")
    _check_polar_divisor(run)
    dics = [DicriticalComponent(_cid(c), c.degree) for c in run.comps if c.dicritical]
    # a -1 curve of constant value could be blown down without creating a base point
    minimal = not any(run.selfint[c] == -1 and not c.dicritical for c in run.comps[1:])
    return Resolution(f, run.tree, dics, g, minimal, run)


def _neighbours(run: _Run):
    adj = {c: [] for c in run.comps}
    for a, b in run.edges:
        adj[a].append(b)
        adj[b].append(a)
    return adj


def _check_polar_divisor(run: _Run):
    adj = _neighbours(run)
    for comp in run.comps:
        if comp.value == "inf":
            s = comp.mult * run.selfint[comp] + sum(n.mult for n in adj[comp] if n.value == "inf")
            if s != 0:
                raise ResolutionError("polar divisor fails the intersection check")
        elif comp.dicritical:
            deg = sum(n.mult for n in adj[comp] if n.value == "inf")
            if deg != comp.degree:
                raise ResolutionError("dicritical degree disagrees with the polar divisor")


# -- critical values at infinity ---------------------------------------------

def _to_algebraic(x: NFElement):
    return algebraic_roots(x.minpoly())


def _dicritical_critical_values(comp: Component):
    N, M = comp.rfunc
    K = comp.field
    out = []
    W = N.derivative() * M - N * M.derivative()
    if not W.is_zero() and W.degree > 0:
        _, facs = factor(W)
        for g, _ in facs:
            L, emb, w = extend(K, g)
            m = M.map(emb)(w)
            if m.is_zero():
                continue
            out.extend(_to_algebraic(N.map(emb)(w) / m))
    # the point w = infinity of the component
    n, m = N.degree, M.degree
    if m - n >= 2:
        out.extend(_to_algebraic(K.zero))
    elif m == n:
        # R(1/t) - R(inf) vanishes to order >= 2 at t = 0
        Nr = UPoly(K, list(reversed(N.c)))
        Mr = UPoly(K, list(reversed(M.c)))
        h = Nr * Mr[0] - Mr * Nr[0]
        if h.is_zero() or h.valuation() >= 2:
            out.extend(_to_algebraic(N.lc() / M.lc()))
    return out


def critical_values_at_infinity(res: Resolution):
    """The set of critical values at infinity, sorted."""
    vals = set()
    for comp in res._run.comps:
        if comp.dicritical:
            vals.update(_dicritical_critical_values(comp))
        elif comp.value != "inf":
            vals.update(_to_algebraic(comp.value))
    return sorted(vals)


# -- total resolution over a value ------------------------------------------

@dataclass
class TotalResolution:
    value: AlgebraicNumber
    fiber: FiberComponents
    run: _Run
    places: list
    divisor_graph: DualGraph  # D_c plus strict transforms, without affine edges

    def revalue(self, c: AlgebraicNumber) -> "TotalResolution":
        places = [replace(p, bamboo=replace(p.bamboo, value=c)) if p.bamboo else p
                  for p in self.places]
        return replace(self, value=c, fiber=replace(self.fiber, value=c), places=places)


def _total(res: Resolution, c: AlgebraicNumber) -> TotalResolution:
    if c.degree > MAX_FIELD_DEGREE:
        raise ValueOutsideTower("value outside computable tower")
    fc = fiber_components(res.f, c)
    f = res.f.change_field(fc.field)
    run = _run(f, fc.c, fc.parts)
    places, graph = _places(run, fc)
    return TotalResolution(c, fc, run, places, graph)


def _places(run: _Run, fc: FiberComponents):
    adj = _neighbours(run)
    cluster = [comp for comp in run.comps if comp.is_c]
    in_cluster = set(cluster)
    stubs_on = {comp: [] for comp in run.comps}
    for comp, owner in run.stubs:
        if comp.value == "inf" or not (comp.is_c or comp.dicritical):
            raise ResolutionError("strict transform meets a component of another value")
        stubs_on[comp].append(owner)

    graph = DualGraph()
    for i in range(fc.r):
        graph.add_vertex(Vertex(affine_id(i), "affine-component"))
    for comp in cluster:
        graph.add_vertex(Vertex(_cid(comp), "divisor-component", comp.mult))
    for a, b in run.edges:
        if a in in_cluster and b in in_cluster:
            graph.add_edge(_cid(a), _cid(b))
    for comp in cluster:
        for owner in stubs_on[comp]:
            graph.add_edge(affine_id(owner), _cid(comp))

    # relation m E.E + sum of neighbours in the fiber + strict transforms = 0
    for comp in cluster:
        s = comp.mult * run.selfint[comp] + len(stubs_on[comp])
        s += sum(n.mult for n in adj[comp] if n in in_cluster)
        if s != 0:
            raise ResolutionError("total transform of the fiber fails the intersection check")

    places = []
    seen = set()
    for comp in cluster:
        if comp in seen:
            continue
        block, stack = [], [comp]
        seen.add(comp)
        while stack:
            x = stack.pop()
            block.append(x)
            for n in adj[x]:
                if n in in_cluster and n not in seen:
                    seen.add(n)
                    stack.append(n)
        block.sort(key=lambda x: x.uid)
        places.append(_place_from_block(run, block, adj, stubs_on, fc))
    for comp in run.comps:
        if comp.dicritical:
            for owner in stubs_on[comp]:
                rec = BranchRecord(owner, 1, 1, 1, _cid(comp))
                places.append(PlaceAtInfinity(_cid(comp), None, None, (), (rec,), 0))
    places.sort(key=lambda p: (p.dicritical, p.tree, [b.owner for b in p.branches]))
    return places, graph


def _place_from_block(run, block, adj, stubs_on, fc):
    members = set(block)
    attach = [(x, n) for x in block for n in adj[x] if n.dicritical]
    if len(attach) != 1:
        raise ResolutionError("a place must meet exactly one dicritical component once")
    E0, D = attach[0]
    variables = block + [D]
    index = {x: i for i, x in enumerate(variables)}
    rows = []
    for x in block:
        row = [0] * len(variables)
        row[index[x]] += run.selfint[x]
        for n in adj[x]:
            if n in members or n is D:
                row[index[n]] += 1
        rows.append(row)
    chi = _kernel_generator(rows, len(variables))

    # coefficients of the weak components in the pull-back of each component
    pull = {}
    for x in sorted(block + [D], key=lambda x: x.uid):
        if x.stage == "weak":
            pull[x] = {x: 1}
        else:
            acc = {}
            for p in x.born_on:
                for w, k in pull[p].items():
                    acc[w] = acc.get(w, 0) + k
            pull[x] = acc

    branches = []
    for x in block:
        for owner in stubs_on[x]:
            image = chi[index[x]]
            m = sum(pull[x].values())
            if len(pull[x]) == 1:
                (w,) = pull[x]
                ell = chi[index[w]]
            else:
                ell = image // m if image % m == 0 else image
                m = image // ell
            if m * ell != image:
                raise ResolutionError("branch image does not factor as m * ell")
            branches.append(BranchRecord(owner, m, ell, image, _cid(x)))
    branches.sort(key=lambda b: (b.owner, b.component, b.image))

    weak = [x for x in block if x.stage == "weak"]
    bamboo = _bamboo(run, weak, D, fc) if weak else None
    if bamboo is not None:
        last = next(x for x in weak if _cid(x) == bamboo.components[-1])
        if chi[index[last]] != 1:
            raise ResolutionError("last bamboo component does not generate")

    degfib = {x: len(stubs_on[x]) + sum(1 for n in adj[x] if n in members) for x in block}
    jump = E0.mult - sum(x.mult * (2 - degfib[x]) for x in block)
    return PlaceAtInfinity(_cid(D), _cid(E0), bamboo, tuple(_cid(x) for x in block),
                           tuple(branches), jump)


def _kernel_generator(rows, n):
    M = fmpz_mat(rows)
    if M.rank() != n - 1:
        raise ResolutionError("place homology is not of rank one")
    snf = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    diag = [abs(snf[i, i]) for i in range(min(snf.shape))]
    if any(d not in (0, 1) for d in diag):
        raise ResolutionError("place homology has torsion")
    K, nullity = M.nullspace()
    vec = [K[i, 0] for i in range(n)]
    g = 0
    for v in vec:
        g = math.gcd(g, int(v))
    vec = [int(v) // g for v in vec]
    if vec[-1] < 0:
        vec = [-v for v in vec]
    if any(v <= 0 for v in vec):
        raise ResolutionError("meridian classes are not positive")
    return vec


def _bamboo(run: _Run, weak, D, fc):
    weak_set = set(weak)
    adj = {x: [] for x in weak}
    touches_d = []
    for a, b in run.weak_edges:
        if a in weak_set and b in weak_set:
            adj[a].append(b)
            adj[b].append(a)
        elif (a in weak_set and b is D) or (b in weak_set and a is D):
            touches_d.append(a if a in weak_set else b)
    # weak edges between components that a total blow-up separated are also recorded
    if len(set(touches_d)) != 1:
        raise ResolutionError("bamboo does not attach to the dicritical at one component")
    chain = [touches_d[0]]
    prev = None
    while True:
        nxt = [n for n in adj[chain[-1]] if n is not prev]
        if len(nxt) > 1 or any(deg > 2 for deg in map(len, adj.values())):
            raise ResolutionError("bamboo is not a linear chain")
        if not nxt:
            break
        prev = chain[-1]
        chain.append(nxt[0])
    if len(chain) != len(weak):
        raise ResolutionError("bamboo is not connected")
    return Bamboo(tuple(_cid(x) for x in chain), fc.value, tuple(x.mult for x in chain))


# -- public per-value operations ---------------------------------------------

def places_at_infinity(res: Resolution, f: BPoly, c: AlgebraicNumber):
    if f != res.f:
        raise ValueError("resolution computed for a different polynomial")
    return res.total(c).places


def total_divisor_graph(res: Resolution, f: BPoly, c: AlgebraicNumber, affine=None) -> DualGraph:
    """The dual graph of the total transform of the fiber over ``c``.

    ``affine`` is the affine dual graph whose edges (affine singular points)
    are added; without it only the intersections at infinity are present.
    """
    if f != res.f:
        raise ValueError("resolution computed for a different polynomial")
    g = res.total(c).divisor_graph.copy()
    if affine is not None:
        for a, b in affine.edges:
            g.add_edge(a, b)
    return g


def generic_branches_at_infinity(f: BPoly, s) -> int:
    """Number of branches at infinity of ``f = s``, by Newton-Puiseux at each point."""
    from .puiseux import branch_count, puiseux_branches

    d = f.total_degree
    total = 0
    top = _top_form(f)
    germs = []
    if top.degree > 0:
        _, facs = factor(top)
        for g, _ in facs:
            L, emb, a = extend(QQ, g)
            fL = f.map(emb)
            germs.append((_chart_poly(fL, d, "X", a), g.degree))
    if top.degree < d:
        germs.append((_chart_poly(f, d, "Y"), 1))
    for A, w in germs:
        G = A - BPoly._raw(A.K, {(d, 0): A.K(s)}, _UV)
        total += w * branch_count(puiseux_branches(G.with_vars(("x", "y"))))
    return total


__all__ = [
    "Bamboo",
    "BranchRecord",
    "DicriticalComponent",
    "InfinitelyNearTree",
    "PlaceAtInfinity",
    "Resolution",
    "ResolutionError",
    "critical_values_at_infinity",
    "generic_branches_at_infinity",
    "places_at_infinity",
    "resolve_infinity",
    "total_divisor_graph",
]
