"""Sparse bivariate polynomials over a number field."""

from __future__ import annotations

from math import comb

from flint import fmpq, fmpq_mpoly_ctx

from .numberfield import QQ, Embedding, NFElement, NumberField, to_fmpq
from .upoly import UPoly


class BPoly:
    """Polynomial in two variables stored as ``{(i, j): coeff}``.

    No zero coefficient is ever stored.  ``vars`` only matters for printing
    and for the FLINT conversion context.
    """

    __slots__ = ("K", "terms", "vars")

    def __init__(self, terms=None, K: NumberField = QQ, vars=("x", "y")):
        self.K = K
        self.vars = tuple(vars)
        self.terms = {}
        for e, c in (terms or {}).items():
            c = K(c)
            if not c.is_zero():
                self.terms[(int(e[0]), int(e[1]))] = c

    @classmethod
    def _raw(cls, K, terms, vars=("x", "y")):
        p = cls.__new__(cls)
        p.K = K
        p.vars = vars
        p.terms = terms
        return p

    @classmethod
    def constant(cls, c, K=QQ, vars=("x", "y")):
        return cls({(0, 0): c}, K, vars)

    @classmethod
    def gens(cls, K=QQ, vars=("x", "y")):
        return cls({(1, 0): 1}, K, vars), cls({(0, 1): 1}, K, vars)

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self.terms)

    @property
    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def degree(self, var: int) -> int:
        if not self.terms:
            return -1
        return max(e[var] for e in self.terms)

    def order(self, var: int) -> int:
        """Largest ``k`` with ``var^k`` dividing the polynomial."""
        if not self.terms:
            raise ValueError("order of the zero polynomial")
        return min(e[var] for e in self.terms)

    def total_order(self) -> int:
        if not self.terms:
            raise ValueError("order of the zero polynomial")
        return min(i + j for i, j in self.terms)

    def coeff(self, i, j) -> NFElement:
        return self.terms.get((i, j), self.K.zero)

    def constant_term(self) -> NFElement:
        return self.coeff(0, 0)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.terms.values())

    def __eq__(self, other):
        if not isinstance(other, BPoly):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    def __hash__(self):
        return hash(tuple(sorted((e, hash(c)) for e, c in self.terms.items())))

    # -- arithmetic ----------------------------------------------------
    def _like(self, terms):
        return BPoly._raw(self.K, terms, self.vars)

    def _lift(self, other):
        if isinstance(other, BPoly):
            return other
        return BPoly.constant(other, self.K, self.vars)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out[e] + c if e in out else c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, BPoly):
            s = self.K(other) if not isinstance(other, NFElement) else other
            if s.is_zero():
                return self._like({})
            return self._like({e: c * s for e, c in self.terms.items()})
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2)
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return self._like({e: c for e, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = BPoly.constant(1, self.K, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        s = self.K(other)
        return self * s.inverse()

    # -- structure -----------------------------------------------------
    def derivative(self, var: int) -> "BPoly":
        out = {}
        for (i, j), c in self.terms.items():
            k = (i, j)[var]
            if k:
                e = (i - 1, j) if var == 0 else (i, j - 1)
                out[e] = c * k
        return self._like(out)

    def __call__(self, x, y):
        acc = None
        for (i, j), c in self.terms.items():
            t = c * (x ** i) * (y ** j)
            acc = t if acc is None else acc + t
        if acc is None:
            return self.K.zero
        return acc

    def map(self, emb: Embedding) -> "BPoly":
        return BPoly._raw(emb.dst, {e: emb(c) for e, c in self.terms.items()}, self.vars)

    def change_field(self, K: NumberField) -> "BPoly":
        return BPoly._raw(K, {e: K(c) for e, c in self.terms.items()}, self.vars)

    def with_vars(self, vars) -> "BPoly":
        return BPoly._raw(self.K, self.terms, tuple(vars))

    def divide_monomial(self, a: int, b: int) -> "BPoly":
        out = {}
        for (i, j), c in self.terms.items():
            if i < a or j < b:
                raise ValueError("monomial does not divide polynomial")
            out[(i - a, j - b)] = c
        return self._like(out)

    def homogeneous_part(self, d: int) -> "BPoly":
        return self._like({e: c for e, c in self.terms.items() if e[0] + e[1] == d})

    def restrict(self, var: int, value=0) -> UPoly:
        """Substitute ``var = value`` and return the result in the other variable."""
        other = 1 - var
        if value == 0:
            coeffs = {}
            for e, c in self.terms.items():
                if e[var] == 0:
                    coeffs[e[other]] = c
        else:
            value = self.K(value)
            coeffs = {}
            for e, c in self.terms.items():
                k = e[other]
                t = c * value ** e[var]
                coeffs[k] = coeffs[k] + t if k in coeffs else t
        n = max(coeffs) if coeffs else -1
        return UPoly(self.K, [coeffs.get(k, self.K.zero) for k in range(n + 1)])

    def translate(self, a, b) -> "BPoly":
        """``p(x + a, y + b)``."""
        a = self.K(a)
        b = self.K(b)
        out = {}
        apow = _powers(a)
        bpow = _powers(b)
        for (i, j), c in self.terms.items():
            for k in range(i + 1):
                ck = c * comb(i, k) * apow(i - k) if (i - k == 0 or not a.is_zero()) else None
                if ck is None or ck.is_zero():
                    continue
                for l in range(j + 1):
                    if j - l and b.is_zero():
                        continue
                    t = ck * comb(j, l) * bpow(j - l)
                    e = (k, l)
                    out[e] = out[e] + t if e in out else t
        return self._like({e: c for e, c in out.items() if not c.is_zero()})

    def swap(self) -> "BPoly":
        return BPoly._raw(self.K, {(j, i): c for (i, j), c in self.terms.items()},
                          (self.vars[1], self.vars[0]))

    def substitute_linear_x(self, lam) -> "BPoly":
        """``p(x + lam*y, y)``."""
        lam = self.K(lam)
        x, y = BPoly.gens(self.K, self.vars)
        return self.compose(x + y * lam, y)

    def compose(self, X: "BPoly", Y: "BPoly") -> "BPoly":
        """``p(X, Y)`` for bivariate ``X, Y`` (in the same variables)."""
        xp = [BPoly.constant(1, self.K, X.vars)]
        yp = [BPoly.constant(1, self.K, X.vars)]
        result = BPoly._raw(self.K, {}, X.vars)
        for (i, j), c in self.terms.items():
            while len(xp) <= i:
                xp.append(xp[-1] * X)
            while len(yp) <= j:
                yp.append(yp[-1] * Y)
            result = result + (xp[i] * yp[j]) * c
        return result

    def content_free(self) -> "BPoly":
        """Scaled so that the leading term (lex largest exponent) is 1."""
        if not self.terms:
            return self
        e = max(self.terms)
        return self * self.terms[e].inverse()

    # -- FLINT bridge --------------------------------------------------
    def to_flint(self, ctx=None):
        ctx = ctx or fmpq_mpoly_ctx.get(self.vars, "lex")
        return ctx.from_dict({e: c.to_rational() for e, c in self.terms.items()})

    @classmethod
    def from_flint(cls, m, K=QQ, vars=None):
        vars = vars or tuple(str(v) for v in m.context().names())
        terms = {}
        for e, c in m.to_dict().items():
            if len(e) != 2:
                raise ValueError("expected a bivariate polynomial")
            terms[tuple(e)] = K(c)
        return cls._raw(K, terms, tuple(vars))

    # -- printing ------------------------------------------------------
    def __repr__(self):
        return self.to_str()

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        x, y = self.vars
        parts = []
        for (i, j) in sorted(self.terms, key=lambda e: (-(e[0] + e[1]), -e[0])):
            c = self.terms[(i, j)]
            mono = []
            if i:
                mono.append(x if i == 1 else f"{x}^{i}")
            if j:
                mono.append(y if j == 1 else f"{y}^{j}")
            if c.is_rational():
                q = c.to_rational()
                neg = q < 0
                mag = -q if neg else q
                if mono and mag == 1:
                    body = "*".join(mono)
                else:
                    body = "*".join([_fmt_rat(mag)] + mono)
            else:
                neg = False
                body = "*".join([f"{c}"] + mono)
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _fmt_rat(q: fmpq) -> str:
    if q.q == 1:
        return str(q.p)
    return f"{q.p}/{q.q}"


def _powers(a):
    cache = [a.K.one]

    def get(n):
        while len(cache) <= n:
            cache.append(cache[-1] * a)
        return cache[n]

    return get


def rational_bpoly(terms: dict, vars=("x", "y")) -> BPoly:
    return BPoly({e: to_fmpq(c) for e, c in terms.items()}, QQ, vars)
