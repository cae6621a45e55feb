"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(m)-1) modulo
the m-th cyclotomic polynomial.  Mixed-conductor arithmetic promotes both
operands into Q(zeta_lcm).  Rationals embed at conductor 1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def euler_phi(m):
    result = m
    n, p = m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _divisors(m):
    out = [d for d in range(1, m + 1) if m % d == 0]
    return out


def _dense_div(num, den):
    """Exact division of dense integer coefficient lists (ascending)."""
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c, r = divmod(num[i], den[dn])
        if r:
            raise ArithmeticError("non-exact cyclotomic division")
        out[i - dn] = c
        for j, d in enumerate(den):
            num[i - dn + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("non-exact cyclotomic division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m):
    """Ascending integer coefficients of the m-th cyclotomic polynomial."""
    if m == 1:
        return (-1, 1)
    poly = [0] * m + [1]
    poly[0] = -1
    for d in _divisors(m)[:-1]:
        poly = _dense_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(m):
    """Coordinates of zeta_m^k for 0 <= k < max(m, 2*phi(m)), reduced."""
    phi = euler_phi(m)
    psi = cyclotomic_polynomial(m)
    table = []
    current = [Fraction(0)] * phi
    current[0] = Fraction(1)
    for _ in range(max(m, 2 * phi - 1)):
        table.append(tuple(current))
        shifted = [Fraction(0)] + current[:-1]
        top = current[-1]
        if top:
            # zeta^phi = -(psi - x^phi) since psi is monic
            for i in range(phi):
                shifted[i] -= top * psi[i]
        current = shifted
    return tuple(table)


class CyclotomicNumber:
    __slots__ = ("m", "coords")

    def __init__(self, m, coords):
        self.m = m
        self.coords = tuple(Fraction(c) for c in coords)
        if len(self.coords) != euler_phi(m):
            raise ValueError("coordinate vector has the wrong length")

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def from_rational(cls, value):
        return cls(1, (Fraction(value),))

    @classmethod
    def root_of_unity(cls, m, k=1):
        """zeta_m^k."""
        if m < 1:
            raise ValueError("conductor must be positive")
        k %= m
        if m == 1:
            return cls.from_rational(1)
        return cls(m, _power_table(m)[k])

    @classmethod
    def zero(cls):
        return cls.from_rational(0)

    @classmethod
    def one(cls):
        return cls.from_rational(1)

    # ------------------------------------------------------------------
    # structure

    def promote(self, big_m):
        """Embed into Q(zeta_big_m); requires m | big_m."""
        if big_m == self.m:
            return self
        if big_m % self.m:
            raise ValueError("target conductor must be a multiple")
        step = big_m // self.m
        table = _power_table(big_m)
        phi = euler_phi(big_m)
        out = [Fraction(0)] * phi
        for e, c in enumerate(self.coords):
            if c:
                vec = table[(e * step) % big_m]
                for i in range(phi):
                    out[i] += c * vec[i]
        return CyclotomicNumber(big_m, out)

    def _common(self, other):
        other = as_cyclotomic(other)
        m = self.m * other.m // gcd(self.m, other.m)
        return self.promote(m), other.promote(m)

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def as_rational(self):
        """Return a Fraction if the value is rational, else None."""
        if any(self.coords[1:]):
            return None
        return self.coords[0]

    # ------------------------------------------------------------------
    # arithmetic

    def __add__(self, other):
        a, b = self._common(other)
        return CyclotomicNumber(a.m, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.m, tuple(-c for c in self.coords))

    def __sub__(self, other):
        return self + (-as_cyclotomic(other))

    def __rsub__(self, other):
        return as_cyclotomic(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.m, tuple(c * other for c in self.coords))
        a, b = self._common(other)
        phi = len(a.coords)
        dense = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(a.coords):
            if not x:
                continue
            for j, y in enumerate(b.coords):
                if y:
                    dense[i + j] += x * y
        table = _power_table(a.m)
        out = list(dense[:phi])
        for e in range(phi, 2 * phi - 1):
            c = dense[e]
            if c:
                vec = table[e]
                for i in range(phi):
                    out[i] += c * vec[i]
        return CyclotomicNumber(a.m, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Fraction(other)
        if isinstance(other, Fraction):
            if not other:
                raise ZeroDivisionError
            return CyclotomicNumber(self.m, tuple(c / other for c in self.coords))
        other = as_cyclotomic(other)
        rat = other.as_rational()
        if rat is None:
            raise TypeError("division restricted to rational divisors")
        return self / rat

    def conjugate(self):
        """Complex conjugation, zeta -> zeta^(m-1)."""
        if self.m == 1:
            return self
        table = _power_table(self.m)
        phi = len(self.coords)
        out = [Fraction(0)] * phi
        for e, c in enumerate(self.coords):
            if c:
                vec = table[(-e) % self.m]
                for i in range(phi):
                    out[i] += c * vec[i]
        return CyclotomicNumber(self.m, out)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            rat = self.as_rational()
            return rat is not None and rat == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._common(other)
        return a.coords == b.coords

    __hash__ = None

    # ------------------------------------------------------------------
    # rendering

    def __repr__(self):
        rat = self.as_rational()
        if rat is not None:
            return f"Cyc({rat})"
        parts = []
        for e, c in enumerate(self.coords):
            if not c:
                continue
            if e == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                power = f"z{self.m}" if e == 1 else f"z{self.m}^{e}"
                parts.append(f"{head}{power}")
        out = parts[0]
        for part in parts[1:]:
            out += part if part.startswith("-") else "+" + part
        return f"Cyc({out})"

    def to_strings(self):
        return {"conductor": self.m, "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_strings(cls, data):
        return cls(data["conductor"], [Fraction(c) for c in data["coords"]])


def as_cyclotomic(value):
    if isinstance(value, CyclotomicNumber):
        return value
    if isinstance(value, (int, Fraction)):
        return CyclotomicNumber.from_rational(value)
    raise TypeError(f"cannot coerce {type(value).__name__} into a cyclotomic number")
