"""Resultants, discriminants, factorisation and absolute factor counting."""

from __future__ import annotations

from functools import lru_cache

import sympy
from flint import fmpq, fmpq_mat, fmpq_mpoly_ctx, fmpq_poly, fmpz

from .bpoly import BPoly
from .numberfield import QQ, NumberField
from .upoly import UPoly


class SquarefreeRequired(ValueError):
    pass


_VAR = {"x": 0, "y": 1, 0: 0, 1: 1}


def _var_index(p: BPoly, var) -> int:
    if isinstance(var, str) and var in p.vars:
        return p.vars.index(var)
    if var in _VAR:
        return _VAR[var]
    raise ValueError(f"unknown variable {var!r}")


# -- lifting to Q[x, y, t] ---------------------------------------------------

_CTX_XYT = fmpq_mpoly_ctx.get(("x", "y", "t"), "lex")
_CTX_XY = fmpq_mpoly_ctx.get(("x", "y"), "lex")


def _lift3(p: BPoly):
    terms = {}
    for (i, j), c in p.terms.items():
        for k, q in enumerate(c.v.coeffs()):
            if q != 0:
                terms[(i, j, k)] = q
    return _CTX_XYT.from_dict(terms)


def _minpoly3(K: NumberField):
    return _CTX_XYT.from_dict({(0, 0, k): c for k, c in enumerate(K.minpoly.coeffs()) if c != 0})


def _flint_xy(p: BPoly):
    return _CTX_XY.from_dict({e: c.to_rational() for e, c in p.terms.items()})


def _from_flint_xy(m, K=QQ, vars=("x", "y")) -> BPoly:
    return BPoly._raw(K, {tuple(e): K(c) for e, c in m.to_dict().items()}, tuple(vars))


# -- resultant / discriminant -----------------------------------------------

def resultant(p: BPoly, q: BPoly, eliminate="y") -> UPoly:
    """Sylvester resultant eliminating ``eliminate``; a polynomial in the other variable."""
    if p.is_zero() and q.is_zero():
        raise ValueError("undefined resultant")
    if p.is_zero() or q.is_zero():
        return UPoly(p.K if not p.is_zero() else q.K, [])
    K = p.K if not p.K.is_rational else q.K
    v = _var_index(p, eliminate)
    name = ("x", "y")[v]
    if p.degree(v) == 0 and q.degree(v) == 0:
        return UPoly(K, [1])
    if K.is_rational:
        r = _flint_xy(p).resultant(_flint_xy(q), name)
        return _collect(r, 1 - v, K)
    r = _lift3(p.change_field(K)).resultant(_lift3(q.change_field(K)), name)
    return _collect3(r, 1 - v, K)


def _collect(m, keep: int, K) -> UPoly:
    coeffs = {}
    for e, c in m.to_dict().items():
        coeffs[e[keep]] = c
    n = max(coeffs) if coeffs else -1
    return UPoly(K, [coeffs.get(i, 0) for i in range(n + 1)])


def _collect3(m, keep: int, K: NumberField) -> UPoly:
    coeffs = {}
    for e, c in m.to_dict().items():
        k = e[keep]
        coeffs.setdefault(k, {})[e[2]] = c
    n = max(coeffs) if coeffs else -1
    out = []
    for i in range(n + 1):
        d = coeffs.get(i, {})
        deg = max(d) if d else -1
        out.append(K(fmpq_poly([d.get(j, 0) for j in range(deg + 1)])))
    return UPoly(K, out)


def discriminant(p: BPoly, var="y") -> UPoly:
    """``(-1)^(n(n-1)/2) Res(p, dp/dvar) / lc``, a polynomial in the other variable."""
    v = _var_index(p, var)
    n = p.degree(v)
    if n < 1:
        raise ValueError("discriminant needs positive degree in the variable")
    r = resultant(p, p.derivative(v), v)
    lc = _leading_coeff(p, v)
    q, rem = r.divmod(lc)
    if not rem.is_zero():
        raise ArithmeticError("leading coefficient does not divide the resultant")
    if (n * (n - 1) // 2) % 2:
        q = -q
    return q


def _leading_coeff(p: BPoly, v: int) -> UPoly:
    n = p.degree(v)
    coeffs = {}
    for e, c in p.terms.items():
        if e[v] == n:
            coeffs[e[1 - v]] = c
    m = max(coeffs)
    return UPoly(p.K, [coeffs.get(i, p.K.zero) for i in range(m + 1)])


# -- univariate rational factorisation --------------------------------------

def factor_rational(p: UPoly):
    """Irreducible factors over Q as primitive integer polynomials.

    Returns ``[(factor, multiplicity), ...]``; the content is dropped but the
    product is checked against the input before returning.
    """
    content, facs = factor_rational_with_content(p)
    return facs


def factor_rational_with_content(p: UPoly):
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    fp = p.to_fmpq_poly()
    _, facs = fp.factor()
    out = []
    prod = fmpq_poly([1])
    for f, e in facs:
        f = _primitive(f)
        out.append((f, e))
        prod *= f ** e
    content = fp.leading_coefficient() / prod.leading_coefficient()
    if prod * content != fp:
        raise ArithmeticError("factorisation failed the multiply-back check")
    out.sort(key=lambda fe: (fe[0].degree(), [fe[0][i] for i in range(fe[0].degree() + 1)]))
    return content, [(UPoly.from_fmpq_poly(QQ, f), e) for f, e in out]


def _primitive(f: fmpq_poly) -> fmpq_poly:
    den = fmpz(1)
    for c in f.coeffs():
        den = den * c.q // den.gcd(c.q)
    g = fmpz(0)
    for c in f.coeffs():
        g = g.gcd((c * den).p)
    f = f * den / g
    if f.leading_coefficient() < 0:
        f = -f
    return f


# -- sympy bridge for number-field bivariate algebra ------------------------

_X, _Y = sympy.symbols("x y")


@lru_cache(maxsize=None)
def _sympy_field(K: NumberField):
    t = sympy.Symbol("t")
    m = sum(sympy.Rational(int(c.p), int(c.q)) * t**i for i, c in enumerate(K.minpoly.coeffs()))
    F = sympy.QQ.algebraic_field(sympy.CRootOf(m, 0))
    mod = [fmpq(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in F.mod.to_list()]
    mod = fmpq_poly(list(reversed(mod)))
    if mod / mod.leading_coefficient() != K.minpoly:
        raise ArithmeticError("number field bridge mismatch")
    return F


def _to_sympy(p: BPoly):
    F = _sympy_field(p.K)
    terms = {}
    for e, c in p.terms.items():
        coeffs = [sympy.Rational(int(q.p), int(q.q)) for q in reversed(c.v.coeffs())]
        terms[e] = F(coeffs)
    return sympy.Poly.from_dict(terms, _X, _Y, domain=F)


def _from_sympy(P, K: NumberField, vars) -> BPoly:
    terms = {}
    for e, c in P.rep.to_dict().items():
        lst = c.to_list()
        terms[tuple(e)] = K(fmpq_poly([fmpq(int(a.p), int(a.q)) for a in
                                       (sympy.Rational(v) for v in reversed(lst))]))
    return BPoly._raw(K, {e: c for e, c in terms.items() if not c.is_zero()}, tuple(vars))


# -- bivariate gcd / factorisation ------------------------------------------

def bgcd(p: BPoly, q: BPoly) -> BPoly:
    """Greatest common divisor, normalised by :meth:`BPoly.content_free`."""
    if p.is_zero():
        return q.content_free()
    if q.is_zero():
        return p.content_free()
    K = p.K if not p.K.is_rational else q.K
    if K.is_rational:
        g = _flint_xy(p).gcd(_flint_xy(q))
        return _from_flint_xy(g, K, p.vars).content_free()
    g = sympy.gcd(_to_sympy(p.change_field(K)), _to_sympy(q.change_field(K)))
    return _from_sympy(g, K, p.vars).content_free()


def bdiv_exact(p: BPoly, q: BPoly) -> BPoly:
    K = p.K if not p.K.is_rational else q.K
    if K.is_rational:
        qq, r = divmod(_flint_xy(p), _flint_xy(q))
        if r != 0:
            raise ArithmeticError("inexact division")
        return _from_flint_xy(qq, K, p.vars)
    qq, r = sympy.div(_to_sympy(p.change_field(K)), _to_sympy(q.change_field(K)))
    if not r.is_zero:
        raise ArithmeticError("inexact division")
    return _from_sympy(qq, K, p.vars)


def factor_bivariate(p: BPoly):
    """Irreducible factors over ``p.K`` as ``[(factor, multiplicity)]``.

    Factors are normalised with :meth:`BPoly.content_free` and returned in a
    deterministic order.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.is_constant():
        return []
    if p.K.is_rational:
        _, facs = _flint_xy(p).factor()
        out = [(_from_flint_xy(f, QQ, p.vars).content_free(), e) for f, e in facs]
    else:
        out = _trager(p)
        if out is None:
            _, facs = _to_sympy(p).factor_list()
            out = [(_from_sympy(f, p.K, p.vars).content_free(), e) for f, e in facs]
    out.sort(key=lambda fe: (fe[0].total_degree, _bkey(fe[0])))
    return out


def _drop3(m, K: NumberField, vars) -> BPoly:
    terms = {}
    for (i, j, k), c in m.to_dict().items():
        terms.setdefault((i, j), {})[k] = c
    out = {}
    for e, d in terms.items():
        v = K(fmpq_poly([d.get(k, 0) for k in range(max(d) + 1)]))
        if not v.is_zero():
            out[e] = v
    return BPoly._raw(K, out, tuple(vars))


_SHIFTS = [(0, 1), (1, 0), (1, 1), (1, -1), (1, 2), (2, 1), (2, 3), (3, -2)]


def _trager(p: BPoly):
    """Trager's norm method, or ``None`` when ``p`` is not squarefree."""
    if not is_squarefree(p):
        return None
    from .modular import norm_resultant

    K = p.K
    x, y, t = _CTX_XYT.gens()
    P, M = _lift3(p), _minpoly3(K)
    M = M / M.leading_coefficient()
    for a, b in _SHIFTS:
        Ps = P.compose(x - a * t, y - b * t, t)
        for exact in (False, True):
            N = M.resultant(Ps, "t") if exact else norm_resultant(M, Ps, "t")
            if any(e > 1 for _, e in N.factor_squarefree()[1]):
                break
            out = []
            for g, _ in N.factor()[1]:
                if g.degrees()[:2] != (0, 0):
                    h = _drop3(g.compose(x + a * t, y + b * t, t), K, p.vars)
                    out.append((bgcd(p, h), 1))
            prod = BPoly.constant(K.one, K, p.vars)
            for g, _ in out:
                prod = prod * g
            if prod.content_free() == p.content_free():
                return out
    return None


def _bkey(p: BPoly):
    return tuple(sorted((e, tuple(str(c) for c in v.v.coeffs())) for e, v in p.terms.items()))


def is_squarefree(p: BPoly) -> bool:
    if p.is_constant():
        return True
    g = bgcd(bgcd(p, p.derivative(0)), p.derivative(1))
    return g.is_constant()


# -- absolute factor count (Gao's partial differential equation) ------------

def _gao_ready(p: BPoly) -> bool:
    if p.degree(0) < 1:
        return False
    return bgcd(p, p.derivative(0)).is_constant()


def absolute_factor_count(p: BPoly) -> int:
    """Number of irreducible factors of the squarefree ``p`` over the complex numbers."""
    if p.is_zero():
        raise ValueError("absolute_factor_count of zero")
    if p.is_constant():
        return 0
    if not is_squarefree(p):
        raise SquarefreeRequired("squarefree required")
    # factors free of x break the method; a shear y -> y + lam*x removes them
    q = p
    lam = 0
    x, y = BPoly.gens(p.K, p.vars)
    while not _gao_ready(q):
        lam += 1
        q = p.compose(x, y + x * lam)
    return _gao_kernel_dim(q)


def _gao_kernel_dim(f: BPoly) -> int:
    K = f.K
    m, n = f.degree(0), f.degree(1)
    fx, fy = f.derivative(0), f.derivative(1)
    cols = []
    for i in range(m):
        for j in range(n + 1):
            mono = BPoly._raw(K, {(i, j): K.one}, f.vars)
            col = mono * fy * (-1)
            if j:
                col = col + f * BPoly._raw(K, {(i, j - 1): K(j)}, f.vars)
            cols.append(col)
    for i in range(m + 1):
        for j in range(n):
            mono = BPoly._raw(K, {(i, j): K.one}, f.vars)
            col = mono * fx
            if i:
                col = col - f * BPoly._raw(K, {(i - 1, j): K(i)}, f.vars)
            cols.append(col)
    rows = sorted({e for c in cols for e in c.terms})
    index = {e: r for r, e in enumerate(rows)}
    d = K.degree
    # restriction of scalars: column (u, k) is theta^k times column u
    M = fmpq_mat(len(rows) * d, len(cols) * d)
    powers = [K.gen ** k for k in range(d)]
    for ci, col in enumerate(cols):
        for e, c in col.terms.items():
            r = index[e]
            for k in range(d):
                v = (c * powers[k]).v
                for s in range(d):
                    M[r * d + s, ci * d + k] = v[s]
    rank = M.rank()
    dim = len(cols) * d - rank
    if dim % d:
        raise ArithmeticError("kernel dimension not divisible by field degree")
    return dim // d


__all__ = [
    "resultant",
    "discriminant",
    "factor_rational",
    "factor_rational_with_content",
    "factor_bivariate",
    "absolute_factor_count",
    "bgcd",
    "bdiv_exact",
    "is_squarefree",
    "SquarefreeRequired",
]
