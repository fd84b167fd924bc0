"""Complex algebraic numbers given by a minimal polynomial and a rational box."""

from __future__ import annotations

from functools import lru_cache, total_ordering

import sympy
from flint import fmpq, fmpq_poly

from .numberfield import to_fmpq

_T = sympy.Symbol("t")


def _sym_poly(p: fmpq_poly) -> sympy.Poly:
    coeffs = [sympy.Rational(int(c.p), int(c.q)) for c in reversed(p.coeffs())]
    return sympy.Poly(coeffs, _T, domain="QQ")


def _q(r) -> fmpq:
    r = sympy.Rational(r)
    return fmpq(int(r.p), int(r.q))


def _sym(q: fmpq):
    return sympy.Rational(int(q.p), int(q.q))


@lru_cache(maxsize=None)
def _isolate(key: tuple) -> tuple:
    """Isolating boxes ``(re_lo, re_hi, im_lo, im_hi)`` of a squarefree polynomial.

    Real roots come first in increasing order, then the non-real ones in the
    order produced by the isolation routine (which is deterministic).
    """
    p = fmpq_poly([fmpq(*c) for c in key])
    P = _sym_poly(p)
    real, cplx = P.intervals(all=True)
    out = []
    for (a, b), _ in real:
        out.append((_q(a), _q(b), fmpq(0), fmpq(0)))
    for (lo, hi), _ in cplx:
        lo_re, lo_im = sympy.re(lo), sympy.im(lo)
        hi_re, hi_im = sympy.re(hi), sympy.im(hi)
        out.append((_q(lo_re), _q(hi_re), _q(lo_im), _q(hi_im)))
    return tuple(out)


def _key(p: fmpq_poly) -> tuple:
    return tuple((int(c.p), int(c.q)) for c in p.coeffs())


def _count_in_box(p: fmpq_poly, box) -> int:
    a, b, c, d = box
    if c == d == 0:
        return _sym_poly(p).count_roots(_sym(a), _sym(b))
    return _sym_poly(p).count_roots(_sym(a) + sympy.I * _sym(c), _sym(b) + sympy.I * _sym(d))


@total_ordering
class AlgebraicNumber:
    """A root of ``minpoly`` (monic, irreducible over Q) inside ``box``.

    The box is ``(re_lo, re_hi, im_lo, im_hi)`` with rational corners; a
    degenerate imaginary side ``[0, 0]`` marks a real root.
    """

    __slots__ = ("minpoly", "box")

    def __init__(self, minpoly: fmpq_poly, box):
        minpoly = fmpq_poly(minpoly)
        self.minpoly = minpoly / minpoly.leading_coefficient()
        self.box = tuple(to_fmpq(v) for v in box)

    @classmethod
    def rational(cls, q) -> "AlgebraicNumber":
        q = to_fmpq(q)
        return cls(fmpq_poly([-q, 1]), (q, q, fmpq(0), fmpq(0)))

    @property
    def degree(self) -> int:
        return self.minpoly.degree()

    def is_rational(self) -> bool:
        return self.degree == 1

    def to_rational(self) -> fmpq:
        if not self.is_rational():
            raise ValueError("algebraic number is not rational")
        return -self.minpoly[0]

    def __eq__(self, other):
        if not isinstance(other, AlgebraicNumber):
            try:
                other = AlgebraicNumber.rational(other)
            except TypeError:
                return NotImplemented
        if self.minpoly != other.minpoly:
            return False
        if self.box == other.box:
            return True
        if self.is_real() != other.is_real():
            return False
        a1, b1, c1, d1 = self.box
        a2, b2, c2, d2 = other.box
        inter = (max(a1, a2), min(b1, b2), max(c1, c2), min(d1, d2))
        if inter[0] > inter[1] or inter[2] > inter[3]:
            return False
        # each box isolates one root; they denote the same root iff it lies in both
        if self.is_real():
            return _count_in_box(self.minpoly, inter) > 0
        if inter[0] == inter[1] or inter[2] == inter[3]:
            return False  # boxes that only touch along an edge
        n = _count_in_box(self.minpoly, inter)
        if inter[2] <= 0 <= inter[3]:
            n -= _count_in_box(self.minpoly, (inter[0], inter[1], fmpq(0), fmpq(0)))
        return n > 0

    def is_real(self) -> bool:
        return self.box[2] == self.box[3] == 0

    def __hash__(self):
        return hash((_key(self.minpoly), self.index()))

    def index(self) -> int:
        """Position of this root in the canonical isolation of its minimal polynomial."""
        boxes = _isolate(_key(self.minpoly))
        for i, b in enumerate(boxes):
            if b == self.box or AlgebraicNumber(self.minpoly, b) == self:
                return i
        raise ArithmeticError("box does not isolate a root of the minimal polynomial")

    def sort_key(self):
        return (self.degree, tuple(self.minpoly.coeffs()), self.box[0], self.box[2])

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if self.is_rational():
            return format_rational(self.to_rational())
        a, b, c, d = (format_rational(v) for v in self.box)
        return f"root({format_minpoly(self.minpoly)}, [{a}, {b}]x[{c}, {d}])"

    __repr__ = __str__

    def contains_zero_of(self, p: fmpq_poly) -> bool:
        """Interval evaluation of ``p`` over the box contains 0."""
        re, im = _interval_eval(p, self.box)
        return re[0] <= 0 <= re[1] and im[0] <= 0 <= im[1]


def format_rational(q: fmpq) -> str:
    q = to_fmpq(q)
    return str(q.p) if q.q == 1 else f"{q.p}/{q.q}"


def format_minpoly(p: fmpq_poly, var: str = "t") -> str:
    parts = []
    coeffs = p.coeffs()
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if i == 0:
            body = format_rational(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def algebraic_roots(p) -> list:
    """One :class:`AlgebraicNumber` per distinct complex root of ``p``, sorted."""
    from .upoly import UPoly

    if isinstance(p, UPoly):
        p = p.to_fmpq_poly()
    p = fmpq_poly(p)
    if p.is_zero():
        raise ValueError("algebraic_roots of the zero polynomial")
    _, facs = p.factor()
    out = []
    for f, _ in facs:
        f = f / f.leading_coefficient()
        if f.degree() == 1:
            out.append(AlgebraicNumber.rational(-f[0]))
            continue
        for box in _isolate(_key(f)):
            out.append(AlgebraicNumber(f, box))
    out.sort()
    return out


def roots_of_minpoly(f: fmpq_poly) -> list:
    f = fmpq_poly(f)
    return algebraic_roots(f)


# -- rectangular complex interval arithmetic --------------------------------

def _imul(a, b):
    prods = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
    return (min(prods), max(prods))


def _iadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _isub(a, b):
    return (a[0] - b[1], a[1] - b[0])


def _interval_eval(p: fmpq_poly, box):
    a, b, c, d = (to_fmpq(v) for v in box)
    xr, xi = (a, b), (c, d)
    zr, zi = (fmpq(0), fmpq(0)), (fmpq(0), fmpq(0))
    for coef in reversed(p.coeffs()):
        nr = _isub(_imul(zr, xr), _imul(zi, xi))
        ni = _iadd(_imul(zr, xi), _imul(zi, xr))
        zr, zi = _iadd(nr, (coef, coef)), ni
    return zr, zi
