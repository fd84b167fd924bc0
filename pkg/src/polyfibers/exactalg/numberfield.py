"""Absolute number fields ``Q[t]/(m(t))`` and their elements.

Every field in the package is absolute: an extension of an extension is
flattened through a primitive element, so an element is always a single
rational polynomial reduced modulo the defining polynomial.  The rational
field itself is the degree one field ``Q[t]/(t)``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import count

from flint import fmpq, fmpq_poly, fmpz

_ids = count()
_SCALARS = (int, fmpz, fmpq, Fraction)


def to_fmpq(value) -> fmpq:
    if isinstance(value, fmpq):
        return value
    if isinstance(value, (int, fmpz)):
        return fmpq(value)
    if isinstance(value, Fraction):
        return fmpq(value.numerator, value.denominator)
    if isinstance(value, NFElement):
        return value.to_rational()
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


class NumberField:
    """The field ``Q[t]/(minpoly)`` for a monic irreducible ``minpoly``."""

    def __init__(self, minpoly: fmpq_poly, name: str = "t", check: bool = True):
        minpoly = fmpq_poly(minpoly)
        if minpoly.degree() < 1:
            raise ValueError("defining polynomial must have positive degree")
        minpoly = minpoly / minpoly.leading_coefficient()
        if check and minpoly.degree() > 1:
            _, factors = minpoly.factor()
            if len(factors) != 1 or factors[0][1] != 1:
                raise ValueError(f"{minpoly} is not irreducible over Q")
        self.minpoly = minpoly
        self.degree = minpoly.degree()
        self.name = name
        self.uid = next(_ids)
        self.zero = NFElement(self, fmpq_poly([]))
        self.one = NFElement(self, fmpq_poly([1]))
        self.gen = NFElement(self, fmpq_poly([0, 1]) % minpoly)

    def __repr__(self):
        if self.degree == 1:
            return "QQ"
        return f"NumberField({self.minpoly.str(var=self.name)})"

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __call__(self, value) -> "NFElement":
        if isinstance(value, NFElement):
            if value.K is self:
                return value
            if value.K.is_rational:
                return NFElement(self, value.v)
            raise ValueError("element belongs to a different number field")
        if isinstance(value, fmpq_poly):
            return NFElement(self, value % self.minpoly)
        return NFElement(self, fmpq_poly([to_fmpq(value)]))

    def from_coeffs(self, coeffs) -> "NFElement":
        return NFElement(self, fmpq_poly([to_fmpq(c) for c in coeffs]) % self.minpoly)


class NFElement:
    __slots__ = ("K", "v")

    def __init__(self, K: NumberField, v: fmpq_poly):
        self.K = K
        self.v = v

    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.K is self.K:
                return other
            if other.K.is_rational:
                return NFElement(self.K, other.v)
            if self.K.is_rational and self.v.degree() <= 0:
                return other
            raise ValueError("mixing elements of different number fields")
        return NFElement(self.K, fmpq_poly([to_fmpq(other)]))

    def _promote(self, other):
        # returns (a, b) over a common field
        if isinstance(other, NFElement) and other.K is not self.K and self.K.is_rational:
            return NFElement(other.K, self.v), other
        return self, self._coerce(other)

    def __add__(self, other):
        if not isinstance(other, (NFElement,) + _SCALARS):
            return NotImplemented
        a, b = self._promote(other)
        return NFElement(a.K, a.v + b.v)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (NFElement,) + _SCALARS):
            return NotImplemented
        a, b = self._promote(other)
        return NFElement(a.K, a.v - b.v)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return NFElement(self.K, -self.v)

    def __mul__(self, other):
        if not isinstance(other, (NFElement,) + _SCALARS):
            return NotImplemented
        a, b = self._promote(other)
        if a.K.degree == 1:
            return NFElement(a.K, a.v * b.v)
        return NFElement(a.K, (a.v * b.v) % a.K.minpoly)

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        if self.v.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        if self.K.degree == 1 or self.v.degree() == 0:
            return NFElement(self.K, fmpq_poly([1 / self.v[0]]))
        g, s, _ = self.v.xgcd(self.K.minpoly)
        return NFElement(self.K, (s / g[0]) % self.K.minpoly)

    def __truediv__(self, other):
        if not isinstance(other, (NFElement,) + _SCALARS):
            return NotImplemented
        a, b = self._promote(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.K.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, NFElement):
            if other.K is not self.K and not (other.K.is_rational or self.K.is_rational):
                return NotImplemented
            return self.v == other.v
        try:
            return self.v == fmpq_poly([to_fmpq(other)])
        except TypeError:
            return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(tuple(str(c) for c in self.v.coeffs()))

    def __bool__(self):
        return not self.v.is_zero()

    def is_zero(self) -> bool:
        return self.v.is_zero()

    def is_rational(self) -> bool:
        return self.v.degree() <= 0

    def to_rational(self) -> fmpq:
        if self.v.degree() > 0:
            raise ValueError("element is not rational")
        return self.v[0]

    def __repr__(self):
        if self.v.degree() <= 0:
            return str(self.v[0])
        return f"({self.v.str(var=self.K.name)})"

    def norm_matrix(self):
        """Matrix of multiplication by ``self`` on the power basis."""
        from flint import fmpq_mat

        n = self.K.degree
        m = self.K.minpoly
        cols = []
        b = fmpq_poly([1])
        x = fmpq_poly([0, 1])
        for _ in range(n):
            prod = (self.v * b) % m
            cols.append([prod[i] for i in range(n)])
            b = (b * x) % m
        return fmpq_mat(n, n, [cols[j][i] for i in range(n) for j in range(n)])

    def charpoly(self) -> fmpq_poly:
        return fmpq_poly(self.norm_matrix().charpoly().coeffs())

    def minpoly(self) -> fmpq_poly:
        """Minimal polynomial over Q (monic)."""
        if self.v.degree() <= 0:
            return fmpq_poly([-self.v[0], 1])
        cp = self.charpoly()
        _, factors = cp.factor()
        for fac, _ in factors:
            if evaluate_rational_poly(fac, self).is_zero():
                return fac / fac.leading_coefficient()
        raise ArithmeticError("minimal polynomial not found among charpoly factors")


def evaluate_rational_poly(p: fmpq_poly, a: NFElement) -> NFElement:
    """Horner evaluation of a rational polynomial at a field element."""
    acc = a.K.zero
    for c in reversed(p.coeffs()):
        acc = acc * a + c
    return acc


class Embedding:
    """Field homomorphism ``src -> dst`` fixed by the image of ``src.gen``."""

    def __init__(self, src: NumberField, dst: NumberField, image: fmpq_poly):
        self.src = src
        self.dst = dst
        self.image = image % dst.minpoly

    def __call__(self, a):
        if not isinstance(a, NFElement):
            return self.dst(a)
        if a.K is self.dst:
            return a
        if a.K is not self.src:
            if a.K.is_rational:
                return self.dst(a.v)
            raise ValueError("element is not in the embedding source")
        if a.v.degree() <= 0:
            return NFElement(self.dst, a.v)
        # Horner in dst
        acc = fmpq_poly([])
        m = self.dst.minpoly
        for c in reversed(a.v.coeffs()):
            acc = (acc * self.image + c) % m
        return NFElement(self.dst, acc)

    def then(self, other: "Embedding") -> "Embedding":
        """Composition ``other o self``."""
        if other.src is not self.dst:
            raise ValueError("embeddings do not compose")
        img = other(NFElement(self.dst, self.image))
        return Embedding(self.src, other.dst, img.v)

    @staticmethod
    def identity(K: NumberField) -> "Embedding":
        return Embedding(K, K, fmpq_poly([0, 1]) if K.degree > 1 else fmpq_poly([]))


QQ = NumberField(fmpq_poly([0, 1]), name="t", check=False)
