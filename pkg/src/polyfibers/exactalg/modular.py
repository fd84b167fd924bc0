"""Modular gcd and inversion for univariate polynomials over a number field.

Images are computed in ``(Z/p)[t]/(m)[x]`` for word-size primes, lifted by
Chinese remaindering and rational reconstruction, and every lifted
candidate is proved by exact division over the field before it is returned.

A prime is admissible when it divides no denominator of the (monic) inputs
or of ``m`` and keeps ``m`` squarefree.  At such a prime the true monic gcd
reduces to a common divisor of the images (its coefficients are integral
over the localisation), so image degrees never undershoot; a degree-0 image
therefore certifies coprimality on its own.
"""

from __future__ import annotations

import math

import sympy
from flint import fmpq, fmpq_poly, nmod_mpoly_ctx, nmod_poly

from .numberfield import NFElement
from .upoly import UPoly

_START = 1 << 61


class _Unlucky(ArithmeticError):
    pass


_PRIMES = []


def _primes():
    k = 0
    while True:
        if k == len(_PRIMES):
            _PRIMES.append(sympy.prevprime(_PRIMES[-1] if _PRIMES else _START))
        yield _PRIMES[k]
        k += 1


def _red(c: fmpq, p: int) -> int:
    q = int(c.q)
    if q % p == 0:
        raise _Unlucky
    return int(c.p) * pow(q, -1, p) % p


def _image(a: UPoly, p: int, m: nmod_poly):
    return _trim([nmod_poly([_red(c, p) for c in e.v.coeffs()], p) % m for e in a.c])


def _trim(a):
    while a and a[-1].is_zero():
        a.pop()
    return a


def _inv(a: nmod_poly, m: nmod_poly) -> nmod_poly:
    g, s, _ = a.xgcd(m)
    if g.degree() != 0:
        raise _Unlucky
    return s * pow(int(g.coeffs()[0]), -1, m.modulus()) % m


def _divmod(A, B, m):
    inv = _inv(B[-1], m)
    R = list(A)
    Q = [nmod_poly([], m.modulus())] * max(len(A) - len(B) + 1, 0)
    while len(R) >= len(B):
        coef = (R[-1] * inv) % m
        shift = len(R) - len(B)
        Q[shift] = coef
        for j, b in enumerate(B):
            R[shift + j] = (R[shift + j] - coef * b) % m
        R.pop()
    return Q, _trim(R)


def _monic(A, m):
    inv = _inv(A[-1], m)
    return [(a * inv) % m for a in A]


def _gcd_image(A, B, m):
    while B:
        _, R = _divmod(A, B, m)
        A, B = B, R
    return _monic(A, m)


def _sub(A, B, m):
    n = max(len(A), len(B))
    zero = nmod_poly([], m.modulus())
    return _trim([((A[i] if i < len(A) else zero) - (B[i] if i < len(B) else zero)) % m
                  for i in range(n)])


def _mul(A, B, m):
    if not A or not B:
        return []
    out = [nmod_poly([], m.modulus())] * (len(A) + len(B) - 1)
    for i, a in enumerate(A):
        for j, b in enumerate(B):
            out[i + j] = (out[i + j] + a * b) % m
    return _trim(out)


def _inverse_image(u, D, m):
    r0, r1 = D, u
    s0, s1 = [], [nmod_poly([1], m.modulus())]
    while r1:
        q, r = _divmod(r0, r1, m)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1, m), m)
    if len(r0) != 1:
        raise _Unlucky  # not coprime modulo p
    c = _inv(r0[0], m)
    return _trim([(s * c) % m for s in s0])


def _ratrecon(a: int, M: int):
    """``r/s`` with ``r = a*s (mod M)`` and ``|r|, s <= sqrt(M/2)``, or ``None``."""
    bound = math.isqrt(M // 2)
    r0, r1, s0, s1 = M, a % M, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1, s0, s1 = r1, r0 - q * r1, s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return fmpq(r1, s1) if s1 > 0 else fmpq(-r1, -s1)


class _Lifter:
    """Accumulates images of a coefficient array and reconstructs rationals."""

    def __init__(self):
        self.shape = None
        self.res = None
        self.M = 1
        self.count = 0

    def due(self) -> bool:
        # try reconstruction after 1, 2, 3, 4, 6, 8, 12, ... images
        c = self.count
        return c < 4 or c & (c - 1) == 0 or (c % 3 == 0 and (c // 3) & (c // 3 - 1) == 0)

    def add(self, image, p: int, n: int):
        vals = [[int(c) for c in a.coeffs()] + [0] * (n - len(a.coeffs())) for a in image]
        if self.shape != len(vals):
            self.shape, self.res, self.M, self.count = len(vals), vals, p, 1
            return
        self.count += 1
        Minv = pow(self.M, -1, p)
        for row, new in zip(self.res, vals):
            for j, r in enumerate(new):
                row[j] += self.M * ((r - row[j]) * Minv % p)
        self.M *= p

    def reconstruct(self, K):
        out = []
        for row in self.res:
            coeffs = []
            for v in row:
                q = _ratrecon(v, self.M)
                if q is None:
                    return None
                coeffs.append(q)
            out.append(NFElement(K, fmpq_poly(coeffs)))
        return UPoly(K, out)


def _field_image(K, p):
    m = K.minpoly
    try:
        mp = nmod_poly([_red(c, p) for c in m.coeffs()], p)
    except _Unlucky:
        return None
    if mp.gcd(mp.derivative()).degree() != 0:
        return None
    return mp


def nf_gcd(A: UPoly, B: UPoly) -> UPoly:
    """Monic gcd over a number field."""
    K = A.K
    if A.is_zero():
        return B.monic()
    if B.is_zero():
        return A.monic()
    A, B = A.monic(), B.monic()
    if A.degree == 0 or B.degree == 0:
        return UPoly(K, [K.one])
    lift, best, last = _Lifter(), None, None
    for p in _primes():
        m = _field_image(K, p)
        if m is None:
            continue
        try:
            G = _gcd_image(_image(A, p, m), _image(B, p, m), m)
        except _Unlucky:
            continue
        d = len(G) - 1
        if d == 0:
            return UPoly(K, [K.one])
        if best is not None and d > best:
            continue
        if best is None or d < best:
            best, lift, last = d, _Lifter(), None
        lift.add(G, p, K.degree)
        if not lift.due():
            continue
        cand = lift.reconstruct(K)
        if cand is not None and last is not None and cand == last:
            if (A % cand).is_zero() and (B % cand).is_zero():
                return cand
        last = cand


def nf_inverse_mod(u: UPoly, D: UPoly) -> UPoly:
    """``s`` with ``s*u = 1 (mod D)``; ``u`` and ``D`` must be coprime."""
    K = D.K
    u = u % D
    if u.is_zero():
        raise ZeroDivisionError("not invertible modulo D")
    lift, last, tries = _Lifter(), None, 0
    for p in _primes():
        m = _field_image(K, p)
        if m is None:
            continue
        try:
            S = _inverse_image(_image(u, p, m), _image(D, p, m), m)
        except _Unlucky:
            tries += 1
            if tries > 50:
                raise ZeroDivisionError("not invertible modulo D")
            continue
        S = S + [nmod_poly([], p)] * (D.degree - len(S))
        lift.add(S, p, K.degree)
        if not lift.due():
            continue
        cand = lift.reconstruct(K)
        if cand is not None and last is not None and cand == last:
            if ((cand * u) % D - UPoly(K, [K.one])).is_zero():
                return cand
        last = cand


def norm_resultant(M, P, var: str):
    """``Res_var(M, P)`` for ``fmpq_mpoly`` inputs with ``M`` monic in ``var``.

    Images are taken modulo word-size primes and lifted until two successive
    rational reconstructions agree.  Callers must certify what they build
    from the result.
    """
    ctx = P.context()
    names = ctx.names()
    acc, M_acc, last = {}, 1, None
    count = 0
    for p in _primes():
        nctx = nmod_mpoly_ctx.get(names, ordering="lex", modulus=p)
        try:
            Mp, Pp = (nctx.from_dict({e: _red(c, p) for e, c in a.to_dict().items()})
                      for a in (M, P))
        except _Unlucky:
            continue
        img = {e: int(c) for e, c in Mp.resultant(Pp, var).to_dict().items()}
        if count == 0:
            acc, M_acc = img, p
        else:
            inv = pow(M_acc, -1, p)
            for e in set(acc) | set(img):
                a = acc.get(e, 0)
                acc[e] = a + M_acc * ((img.get(e, 0) - a) * inv % p)
            M_acc *= p
        count += 1
        cand = {}
        for e, v in acc.items():
            q = _ratrecon(v, M_acc)
            if q is None:
                cand = None
                break
            if q != 0:
                cand[e] = q
        if cand is not None and cand == last:
            return ctx.from_dict(cand)
        last = cand
