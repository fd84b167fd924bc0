"""Bifurcation sets, Euler characteristics and homological rank invariants.

Every report is over-determined on purpose: quantities that can be reached
along two independent routes are computed both ways and compared, and any
disagreement raises :class:`ConsistencyError` instead of being resolved.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .exactalg import (
    QQ,
    AlgebraicNumber,
    BPoly,
    absolute_factor_count,
    algebraic_roots,
    discriminant,
    extend,
    factor,
    gcd,
)
from .exactalg.modular import nf_inverse_mod
from .exactalg.upoly import UPoly, squarefree_part
from .fiber import (
    NonIsolatedSingularities,
    NonReducedFiber,
    check_isolated,
    common_zeros,
    conjugacy_key,
    fiber_components,
    fiber_singularities,
)
from .fibergraph import DualGraph, affine_dual_graph, augment_by_place, augment_by_places
from .resolution import Resolution, ResolutionError, resolve_infinity, total_divisor_graph


class ConsistencyError(AssertionError):
    """Two routes to the same invariant disagree."""


class DisconnectedGenericFiber(ValueError):
    pass


def _check(cond: bool, what: str):
    if not cond:
        raise ConsistencyError(what)


# -- report types ------------------------------------------------------------

@dataclass
class BifurcationReport:
    B_aff: list
    B_inf: list
    B: list
    sing: dict  # value -> list of SingularPoint
    chi_generic: int


@dataclass
class JDiagnostics:
    injective: bool
    surjective: bool
    isomorphism: bool
    rk_ker_jc: int
    rk_ker_jinf: int
    acyclic: bool
    strongly_acyclic: bool


@dataclass
class MonodromyRanks:
    rk_inv: int
    rk_K1: int
    jordan2_eigen1: int
    vanishing_distribution: tuple  # (W-1, W0, W1, W2)


@dataclass
class FiberReport:
    value: AlgebraicNumber
    n_Fc: int
    r_Fc: int
    chi_Fc: int
    sing_points: list
    G_c: DualGraph
    Gbar_c: DualGraph
    G_cP: list
    places: list
    j: JDiagnostics
    monodromy: MonodromyRanks
    mu: int = 0
    euler_jump: int = 0
    in_B_inf: bool = False
    checks: dict = field(default_factory=dict)


# -- affine critical values --------------------------------------------------

def affine_critical_values(f: BPoly):
    """``{value: [SingularPoint, ...]}`` over the affine critical values, sorted by value."""
    check_isolated(f)
    fx, fy = f.derivative(0), f.derivative(1)
    values = set()
    for L, emb, a, b, _ in common_zeros([fx, fy], QQ):
        v = f.map(emb)(a, b)
        values.update(algebraic_roots(v.minpoly()))
    return {c: fiber_singularities(f, c) for c in sorted(values)}


# -- Euler characteristic ----------------------------------------------------

def euler_characteristic_direct(p: BPoly) -> int:
    """Euler characteristic of the reduced affine curve ``p = 0``.

    After a shear making ``p`` monic in ``y``, the projection to the ``x``-line
    is a proper map of degree ``n``; the Riemann-Hurwitz count over the
    discriminant gives ``chi = n - sum(n - #distinct roots over each branch value)``.
    The defect ``n - #distinct`` is the degree of ``gcd(p, p_y)`` over the
    point, found for all discriminant roots at once without adjoining them.
    """
    d = p.total_degree
    q, lam = p, 0
    while q.coeff(0, d).is_zero():
        lam += 1
        q = p.substitute_linear_x(lam)
    n = d
    if n == 0:
        raise ValueError("constant curve")
    if n == 1:
        return 1
    disc = discriminant(q, "y")
    if disc.is_zero():
        raise NonReducedFiber("non-reduced fiber")
    if disc.degree < 1:
        return n
    A = _y_coefficients(q, n)
    B = [a * (k + 1) for k, a in enumerate(A[1:])]
    return n - sum(D.degree * k for D, k in _gcd_degrees(A, B, squarefree_part(disc)))


def _y_coefficients(q: BPoly, n: int):
    rows = [{} for _ in range(n + 1)]
    for (i, j), c in q.terms.items():
        rows[j][i] = c
    K = q.K
    return [UPoly(K, [r.get(i, K.zero) for i in range(max(r, default=-1) + 1)]) for r in rows]


def _rational_inverse_mod(u: UPoly, D: UPoly) -> UPoly:
    g, s, _ = u.to_fmpq_poly().xgcd(D.to_fmpq_poly())
    return UPoly.from_fmpq_poly(D.K, s / g[0])


def _gcd_degrees(A, B, D):
    """``[(D_i, k_i)]`` with ``D = prod D_i`` and ``deg gcd(A, B) = k_i`` over each root of ``D_i``.

    ``A`` and ``B`` are coefficient lists in ``y`` with entries in ``K[x]``;
    arithmetic happens in ``K[x]/(D)``, splitting ``D`` at zero divisors.
    """
    out = []
    todo = [(D, [a % D for a in A], [b % D for b in B])]
    while todo:
        D, A, B = todo.pop()
        split = False
        while B:
            h = gcd(B[-1], D)
            if h.degree == D.degree:
                B = B[:-1]
            elif h.degree > 0:
                for E in (h, D // h):
                    todo.append((E, [a % E for a in A], [b % E for b in B]))
                split = True
                break
            else:
                break
        if split:
            continue
        if not B:
            out.append((D, len(A) - 1))
            continue
        inv = nf_inverse_mod(B[-1], D) if not D.K.is_rational else _rational_inverse_mod(B[-1], D)
        R = list(A)
        while len(R) >= len(B):
            coef = (R[-1] * inv) % D
            shift = len(R) - len(B)
            for j, b in enumerate(B):
                R[shift + j] = (R[shift + j] - coef * b) % D
            R.pop()
        while R and R[-1].is_zero():
            R.pop()
        todo.append((D, B, R))
    return out


def euler_characteristic(f: BPoly, c: AlgebraicNumber, res: Resolution | None = None,
                         chi_generic: int | None = None) -> int:
    """``chi(F_c)``, computed by projection and checked against the jump formula."""
    res = res or resolve_infinity(f)
    fc = fiber_components(f, c)
    direct = euler_characteristic_direct(fc.poly)
    if chi_generic is None:
        chi_generic = generic_euler_characteristic(f, res.critical_values,
                                                   list(affine_critical_values(f)))
    mu = sum(s.weight * s.mu for s in fiber_singularities(f, c))
    jump = sum(p.euler_jump for p in res.total(c).places)
    _check(direct == chi_generic + mu + jump, "Euler characteristic: projection vs jump formula")
    return direct


def _generic_value(B):
    k = 0
    while True:
        s = (k + 1) // 2 * (1 if k % 2 else -1)
        if AlgebraicNumber.rational(s) not in B:
            return s
        k += 1


def generic_euler_characteristic(f: BPoly, B_inf, B_aff) -> int:
    s = _generic_value(list(B_inf) + list(B_aff))
    return euler_characteristic_direct(f - s)


# -- j_c and monodromy ------------------------------------------------------

def j_diagnostics(n_Fc: int, G_c: DualGraph, Gbar_c: DualGraph, places, in_B_inf: bool,
                  checks: dict | None = None) -> JDiagnostics:
    checks = {} if checks is None else checks
    sum_np = sum(p.n for p in places)
    rk_jinf = sum(p.n - 1 for p in places)
    star = sum_np - 1 == len(places) - 1 + n_Fc - 1
    acyclic = star

    # 1. no new cycle when all places are added  <=>  counting identity
    per_place = all(augment_by_place(G_c, p).betti1 == G_c.betti1 for p in places)
    together = augment_by_places(G_c, places).betti1 == G_c.betti1
    _check(together == star, "acyclicity: graph test vs counting identity")
    checks["acyclic_per_place"] = per_place
    # 2. lemma on the kernel of j_infinity
    _check((rk_jinf == 0) == (n_Fc == 1 and acyclic), "kernel of j_inf vs connectedness")
    # 3 and 4. graph lemma and the double kernel formula
    rk_jc = n_Fc - 1 + Gbar_c.betti1 - G_c.betti1
    _check(Gbar_c.betti1 - G_c.betti1 == rk_jinf - (n_Fc - 1), "graph lemma")
    _check(rk_jc == rk_jinf, "kernel rank of j_c: two formulas")
    strongly = Gbar_c.betti1 == G_c.betti1
    # 6. strong acyclicity
    _check(not strongly or acyclic, "strongly acyclic but not acyclic")
    if n_Fc == 1:
        _check(strongly == acyclic, "acyclicity notions differ on a connected fiber")

    injective = n_Fc == 1 and acyclic
    _check(injective == (rk_jc == 0), "injectivity vs kernel rank")
    jinf_surj = all(p.surjective for p in places)
    surjective = jinf_surj and acyclic
    iso = injective and surjective
    # 5. theorem: isomorphism exactly off the critical values at infinity
    _check(iso == (not in_B_inf), "isomorphism flag vs critical values at infinity")
    return JDiagnostics(injective, surjective, iso, rk_jc, rk_jinf, acyclic, strongly)


def monodromy_ranks(r_Fc: int, chi_Fc: int, Gbar_c: DualGraph) -> MonodromyRanks:
    b = Gbar_c.betti1
    rk_inv = r_Fc - chi_Fc
    rk_K1 = r_Fc - 1 + b
    dist = (r_Fc - 1, b, 0, 0)
    # 8. invariant cycles that do not vanish
    _check(rk_inv - rk_K1 >= 0, "more invariant vanishing cycles than invariant cycles")
    # 9. distribution totals
    _check(dist[0] + dist[1] == rk_K1, "vanishing distribution does not total K_1")
    return MonodromyRanks(rk_inv, rk_K1, b, dist)


# -- assembly ------------------------------------------------------------------

def fiber_report(f: BPoly, c: AlgebraicNumber, res: Resolution, bif: BifurcationReport) -> FiberReport:
    fc = fiber_components(f, c)
    sing = fiber_singularities(f, c)
    G_c = affine_dual_graph(f, c)
    G_star = affine_dual_graph(f, c, pattern="star")
    _check(G_c.betti1 == G_star.betti1, "Betti number depends on the tree pattern")
    n, r = G_c.components, fc.r
    excess = sum(s.weight * (s.branches - 1) for s in sing)
    _check(r + G_c.betti1 == n + excess, "component count identity for the affine graph")

    places = res.total(c).places
    Gbar = total_divisor_graph(res, f, c, G_c)
    _check(Gbar.components == 1, "total fiber is not connected")
    G_cP = [augment_by_place(G_c, p) for p in places]
    in_B_inf = c in bif.B_inf
    checks = {}

    mu = sum(s.weight * s.mu for s in sing)
    jump = sum(p.euler_jump for p in places)
    chi = euler_characteristic_direct(fc.poly)
    # 7. projection count against the jump formula
    _check(chi == bif.chi_generic + mu + jump, "Euler characteristic: projection vs jump formula")
    _check(mu == 0 or c in bif.B_aff, "Milnor number off the affine critical values")
    if not in_B_inf:
        _check(jump == 0 and all(p.n == 1 and not p.tree for p in places),
               "irregular place over a value outside the critical values at infinity")

    j = j_diagnostics(n, G_c, Gbar, places, in_B_inf, checks)
    mono = monodromy_ranks(r, chi, Gbar)
    in_B = c in bif.B
    if in_B and r == 1:
        # an irreducible irregular fiber has a different Euler characteristic
        _check(chi != bif.chi_generic, "irreducible irregular fiber with generic Euler characteristic")
        _check(mono.rk_inv < 1 - bif.chi_generic, "monodromy is the identity on an irregular fiber")
    if not in_B:
        # 10. regular fibers
        _check(r == 1 and n == 1 and j.rk_ker_jc == 0, "regular fiber is not irreducible")
        _check(chi == bif.chi_generic, "regular fiber with a jump in Euler characteristic")
    return FiberReport(c, n, r, chi, sing, G_c, Gbar, G_cP, places, j, mono, mu, jump,
                       in_B_inf, checks)


def bifurcation(f: BPoly, res: Resolution | None = None) -> BifurcationReport:
    if f.total_degree < 1:
        raise ValueError("constant polynomial")
    check_isolated(f)
    res = res or resolve_infinity(f)
    aff = affine_critical_values(f)
    B_aff = list(aff)
    B_inf = list(res.critical_values)
    B = sorted(set(B_aff) | set(B_inf))
    s = _generic_value(B)
    if absolute_factor_count(f - s) != 1:
        raise DisconnectedGenericFiber("generic fiber is not connected")
    chi_gen = euler_characteristic_direct(f - s)
    return BifurcationReport(B_aff, B_inf, B, aff, chi_gen)


def analyze(f: BPoly, values=None, res: Resolution | None = None):
    """``(BifurcationReport, [FiberReport])``; by default one report per value of B."""
    res = res or resolve_infinity(f)
    bif = bifurcation(f, res)
    todo = bif.B if values is None else list(values)
    reports, seen = [], {}
    for c in todo:
        key = conjugacy_key(c)
        if key in seen:
            # a conjugate value: same report up to the Galois action
            rep = seen[key]
            reports.append(replace(rep, value=c, places=res.total(c).places))
        else:
            seen[key] = fiber_report(f, c, res, bif)
            reports.append(seen[key])
    return bif, reports


__all__ = [
    "BifurcationReport",
    "ConsistencyError",
    "DisconnectedGenericFiber",
    "FiberReport",
    "JDiagnostics",
    "MonodromyRanks",
    "NonIsolatedSingularities",
    "NonReducedFiber",
    "ResolutionError",
    "affine_critical_values",
    "analyze",
    "bifurcation",
    "euler_characteristic",
    "euler_characteristic_direct",
    "fiber_report",
    "j_diagnostics",
    "monodromy_ranks",
]
