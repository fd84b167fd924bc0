"""Dense univariate polynomials over a :class:`NumberField`.

Factorisation over a non-rational field uses Trager's norm method on top of
FLINT's factorisation over Q; the same norm computation builds primitive
elements when a root of an irreducible factor is adjoined.
"""

from __future__ import annotations

from flint import fmpq, fmpq_mpoly_ctx, fmpq_poly

from .numberfield import QQ, Embedding, NFElement, NumberField, to_fmpq

_CTX_WT = fmpq_mpoly_ctx.get(("w", "t"), "lex")


class UPoly:
    """Polynomial ``c[0] + c[1] w + ...`` with coefficients in ``K``."""

    __slots__ = ("K", "c")

    def __init__(self, K: NumberField, coeffs=()):
        self.K = K
        c = [K(a) for a in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        self.c = c

    @classmethod
    def _raw(cls, K, c):
        p = cls.__new__(cls)
        p.K = K
        while c and c[-1].is_zero():
            c.pop()
        p.c = c
        return p

    @classmethod
    def from_fmpq_poly(cls, K: NumberField, p: fmpq_poly) -> "UPoly":
        return cls._raw(K, [K(a) for a in p.coeffs()])

    @classmethod
    def monomial(cls, K, n, coeff=1):
        return cls._raw(K, [K.zero] * n + [K(coeff)])

    def to_fmpq_poly(self) -> fmpq_poly:
        return fmpq_poly([a.to_rational() for a in self.c])

    def is_rational(self) -> bool:
        return all(a.is_rational() for a in self.c)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lc(self) -> NFElement:
        return self.c[-1]

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else self.K.zero

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        return len(self.c) == len(other.c) and all(a == b for a, b in zip(self.c, other.c))

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i, a in enumerate(self.c):
            if a.is_zero():
                continue
            terms.append(f"{a}*w^{i}" if i else f"{a}")
        return " + ".join(reversed(terms))

    def map(self, emb: Embedding) -> "UPoly":
        return UPoly._raw(emb.dst, [emb(a) for a in self.c])

    def __add__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly(self.K, [other])
        n = max(len(self.c), len(other.c))
        return UPoly._raw(self.K, [self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly(self.K, [other])
        n = max(len(self.c), len(other.c))
        return UPoly._raw(self.K, [self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return UPoly._raw(self.K, [-a for a in self.c])

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            s = self.K(other)
            return UPoly._raw(self.K, [a * s for a in self.c])
        if not self.c or not other.c:
            return UPoly._raw(self.K, [])
        if self.K.is_rational and other.K.is_rational:
            return UPoly.from_fmpq_poly(self.K, self.to_fmpq_poly() * other.to_fmpq_poly())
        out = [self.K.zero] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a.is_zero():
                continue
            for j, b in enumerate(other.c):
                out[i + j] = out[i + j] + a * b
        return UPoly._raw(self.K, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = UPoly(self.K, [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "UPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.K.is_rational:
            q, r = divmod(self.to_fmpq_poly(), other.to_fmpq_poly())
            return UPoly.from_fmpq_poly(self.K, q), UPoly.from_fmpq_poly(self.K, r)
        r = list(self.c)
        dq = len(r) - len(other.c)
        if dq < 0:
            return UPoly._raw(self.K, []), self
        inv = other.lc().inverse()
        q = [self.K.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            coef = r[k + len(other.c) - 1] * inv
            q[k] = coef
            if coef.is_zero():
                continue
            for j, b in enumerate(other.c):
                r[k + j] = r[k + j] - coef * b
        return UPoly._raw(self.K, q), UPoly._raw(self.K, r[: len(other.c) - 1])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "UPoly":
        if not self.c:
            return self
        inv = self.lc().inverse()
        return UPoly._raw(self.K, [a * inv for a in self.c])

    def derivative(self) -> "UPoly":
        return UPoly._raw(self.K, [a * i for i, a in enumerate(self.c)][1:])

    def __call__(self, x):
        acc = self.K.zero if not isinstance(x, NFElement) else x.K.zero
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def compose(self, other: "UPoly") -> "UPoly":
        acc = UPoly._raw(self.K, [])
        for a in reversed(self.c):
            acc = acc * other + a
        return acc

    def shift(self, t) -> "UPoly":
        """``p(w + t)``."""
        return self.compose(UPoly(self.K, [t, 1]))

    def valuation(self) -> int:
        for i, a in enumerate(self.c):
            if not a.is_zero():
                return i
        raise ValueError("valuation of zero polynomial")


def gcd(p: UPoly, q: UPoly) -> UPoly:
    if p.K.is_rational:
        return UPoly.from_fmpq_poly(p.K, p.to_fmpq_poly().gcd(q.to_fmpq_poly()))
    if p.is_zero() and q.is_zero():
        return p
    from .modular import nf_gcd

    return nf_gcd(p, q)


def squarefree_decomposition(p: UPoly):
    """Yun's algorithm: list of ``(factor, multiplicity)`` with monic factors."""
    if p.is_zero():
        raise ValueError("squarefree decomposition of zero")
    out = []
    a = p.monic()
    b = a.derivative()
    c = gcd(a, b)
    if c.degree <= 0:
        return [(a, 1)] if a.degree > 0 else []
    w = a // c
    y = b // c
    i = 1
    while w.degree > 0:
        z = y - w.derivative()
        g = gcd(w, z)
        if g.degree > 0:
            out.append((g.monic(), i))
        w = w // g
        y = z // g
        i += 1
    return out


def squarefree_part(p: UPoly) -> UPoly:
    prod = UPoly(p.K, [1])
    for f, _ in squarefree_decomposition(p):
        prod = prod * f
    return prod


def _lift_bivariate(p: UPoly):
    """``p`` as a rational polynomial in (w, t), t standing for the generator."""
    terms = {}
    for i, a in enumerate(p.c):
        for j, q in enumerate(a.v.coeffs()):
            if q != 0:
                terms[(i, j)] = q
    return _CTX_WT.from_dict(terms) if terms else _CTX_WT.from_dict({})


def _mpoly_to_fmpq_poly_w(m) -> fmpq_poly:
    coeffs = {}
    for (i, j), c in m.to_dict().items():
        if j:
            raise ValueError("unexpected t-dependence")
        coeffs[i] = c
    if not coeffs:
        return fmpq_poly([])
    n = max(coeffs)
    return fmpq_poly([coeffs.get(i, 0) for i in range(n + 1)])


def _shifted_norm(p: UPoly, lam: int):
    """Norm over Q of ``p(w - lam*t)``."""
    K = p.K
    G = _lift_bivariate(p)
    w, t = _CTX_WT.gens()
    if lam:
        G = G.compose(w - lam * t, t)
    mt = _CTX_WT.from_dict({(0, j): c for j, c in enumerate(K.minpoly.coeffs()) if c != 0})
    N = mt.resultant(G, "t")
    return _mpoly_to_fmpq_poly_w(N)


def _lambdas():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def factor(p: UPoly):
    """Irreducible factorisation over ``p.K``.

    Returns ``(leading coefficient, [(monic irreducible, multiplicity), ...])``.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    K = p.K
    lc = p.lc()
    out = []
    if K.is_rational:
        _, facs = p.to_fmpq_poly().factor()
        for f, e in facs:
            out.append((UPoly.from_fmpq_poly(K, f / f.leading_coefficient()), e))
    else:
        for sqf, e in squarefree_decomposition(p):
            for f in _factor_squarefree(sqf):
                out.append((f, e))
    out.sort(key=lambda fe: (fe[0].degree, _sort_key(fe[0])))
    return lc, out


def _sort_key(p: UPoly):
    return tuple(tuple(a.v.coeffs()) for a in p.c)


def _factor_squarefree(g: UPoly):
    K = g.K
    if g.degree <= 1:
        return [g.monic()]
    theta = K.gen
    for lam in _lambdas():
        N = _shifted_norm(g, lam)
        if N.gcd(N.derivative()).degree() > 0:
            continue
        _, facs = N.factor()
        if len(facs) == 1:
            return [g.monic()]
        g_shift = g.shift(-lam * theta) if lam else g
        factors = []
        for Ni, _ in facs:
            h = gcd(g_shift, UPoly.from_fmpq_poly(K, Ni))
            if lam:
                h = h.shift(lam * theta)
            factors.append(h.monic())
        return factors
    raise AssertionError("unreachable")


def roots_in_field(p: UPoly):
    """Roots of ``p`` lying in ``p.K`` with multiplicities."""
    _, facs = factor(p)
    return [(-f[0], e) for f, e in facs if f.degree == 1]


def extend(K: NumberField, g: UPoly, name: str = "t"):
    """Adjoin a root of the irreducible ``g`` to ``K``.

    Returns ``(L, embedding K -> L, root of g in L)``; ``L`` is absolute.
    """
    if g.degree == 1:
        gm = g.monic()
        return K, Embedding.identity(K), -gm[0]
    if K.is_rational:
        L = NumberField(g.monic().to_fmpq_poly(), name=name, check=False)
        return L, Embedding(K, L, fmpq_poly([])), L.gen
    for lam in _lambdas():
        if lam == 0:
            continue
        N = _shifted_norm(g, lam)
        if N.gcd(N.derivative()).degree() > 0:
            continue
        L = NumberField(N / N.leading_coefficient(), name=name, check=False)
        # image of t: common root of m(t) and g(s - lam t, t) in L
        m_t = UPoly.from_fmpq_poly(L, K.minpoly)
        G = _lift_bivariate(g)
        terms = {}
        s_el = L.gen
        for (i, j), c in G.to_dict().items():
            # c * (s - lam t)^i t^j, collected as a polynomial in t over L
            base = UPoly(L, [s_el, -lam]) ** i
            term = base * UPoly.monomial(L, j, c)
            for k, a in enumerate(term.c):
                terms[k] = terms.get(k, L.zero) + a
        n = max(terms) if terms else 0
        G_t = UPoly(L, [terms.get(k, L.zero) for k in range(n + 1)])
        h = gcd(m_t, G_t)
        if h.degree != 1:
            raise ArithmeticError("primitive element construction failed")
        T = -h.monic()[0]
        emb = Embedding(K, L, T.v)
        root = s_el - T * lam
        return L, emb, root
    raise AssertionError("unreachable")


def rational_poly(coeffs) -> UPoly:
    return UPoly(QQ, [to_fmpq(c) for c in coeffs])


__all__ = [
    "UPoly",
    "gcd",
    "factor",
    "extend",
    "roots_in_field",
    "squarefree_decomposition",
    "squarefree_part",
    "rational_poly",
    "fmpq",
]
