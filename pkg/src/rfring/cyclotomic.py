"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A value of conductor ``m`` is stored in the power basis ``1, z, ..., z^(phi(m)-1)``
reduced modulo the ``m``-th cyclotomic polynomial. Coefficients are kept as
integer numerators over one positive common denominator. Operands of different
conductors are lifted to the lcm conductor automatically.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


class NotRational(ArithmeticError):
    code = "cyclotomic.not_rational"


def _divisors(n):
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


def _poly_divide_monic(num, den):
    """Exact quotient of integer polynomials (low-to-high coefficients), ``den`` monic."""
    num = list(num)
    dq = len(num) - len(den)
    quot = [0] * (dq + 1)
    for i in range(dq, -1, -1):
        c = num[i + len(den) - 1]
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple:
    """Integer coefficients of the m-th cyclotomic polynomial, constant term first."""
    if m < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        poly = _poly_divide_monic(poly, cyclotomic_poly(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple:
    """Reduced integer coordinates of ``z_m^k`` for ``k = 0 .. m-1``."""
    phi = euler_phi(m)
    cp = cyclotomic_poly(m)
    vec = [1] + [0] * (phi - 1)
    out = []
    for _ in range(m):
        out.append(tuple(vec))
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            vec = [v - top * c for v, c in zip(vec, cp)]
    return tuple(out)


def _normalize(nums, den):
    if den < 0:
        nums, den = [-v for v in nums], -den
    g = den
    for v in nums:
        if g == 1:
            break
        g = math.gcd(g, v)
    if g > 1:
        nums = [v // g for v in nums]
        den //= g
    return tuple(nums), den


class CyclotomicNumber:
    """An element of Q(zeta_m) with exact rational coordinates."""

    __slots__ = ("conductor", "_nums", "_den", "_hash")

    def __init__(self, conductor: int, coeffs=None):
        phi = euler_phi(conductor)
        if coeffs is None:
            coeffs = [0] * phi
        if len(coeffs) != phi:
            raise ValueError(f"conductor {conductor} needs {phi} coefficients, got {len(coeffs)}")
        fr = [Fraction(c) for c in coeffs]
        den = math.lcm(*(f.denominator for f in fr)) if fr else 1
        self.conductor = conductor
        self._nums, self._den = _normalize([int(f * den) for f in fr], den)
        self._hash = None

    @classmethod
    def _raw(cls, m, nums, den=1):
        obj = cls.__new__(cls)
        obj.conductor = m
        obj._nums, obj._den = _normalize(nums, den)
        obj._hash = None
        return obj

    @classmethod
    def from_rational(cls, q) -> CyclotomicNumber:
        q = Fraction(q)
        return cls._raw(1, [q.numerator], q.denominator)

    @classmethod
    def from_exponents(cls, m: int, terms) -> CyclotomicNumber:
        """``sum c * z_m^k`` over ``(k, c)`` pairs with integer ``c``."""
        table = _power_table(m)
        acc = [0] * euler_phi(m)
        for k, c in terms:
            if c:
                for i, t in enumerate(table[k % m]):
                    if t:
                        acc[i] += c * t
        return cls._raw(m, acc)

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(v, self._den) for v in self._nums)

    @property
    def denominator(self) -> int:
        return self._den

    def coords(self, conductor: int | None = None) -> tuple:
        """Rational coordinates after lifting to ``conductor`` (a multiple of ours)."""
        x = self if conductor is None else self.lift(conductor)
        return x.coeffs

    def int_coords(self, conductor: int) -> tuple:
        x = self.lift(conductor)
        if x._den != 1:
            raise ValueError("value is not integral in the power basis")
        return x._nums

    def lift(self, L: int) -> CyclotomicNumber:
        m = self.conductor
        if L == m:
            return self
        if L % m:
            raise ValueError(f"cannot lift conductor {m} to {L}")
        step = L // m
        return CyclotomicNumber._raw(
            L, CyclotomicNumber.from_exponents(
                L, ((j * step, c) for j, c in enumerate(self._nums)))._nums, self._den)

    def _common(self, other):
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.from_rational(other)
        L = math.lcm(self.conductor, other.conductor)
        return self.lift(L), other.lift(L), L

    def __add__(self, other):
        try:
            a, b, L = self._common(other)
        except (TypeError, ValueError):
            return NotImplemented
        den = a._den * b._den // math.gcd(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        return CyclotomicNumber._raw(L, [x * fa + y * fb for x, y in zip(a._nums, b._nums)], den)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.conductor, [-v for v in self._nums], self._den)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CyclotomicNumber._raw(self.conductor, [v * q.numerator for v in self._nums],
                                         self._den * q.denominator)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b, L = self._common(other)
        table = _power_table(L)
        phi = len(a._nums)
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(a._nums):
            if x:
                for j, y in enumerate(b._nums):
                    if y:
                        prod[i + j] += x * y
        acc = list(prod[:phi])
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                for i, t in enumerate(table[k % L]):
                    if t:
                        acc[i] += c * t
        return CyclotomicNumber._raw(L, acc, a._den * b._den)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = CyclotomicNumber.from_rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, k: int) -> CyclotomicNumber:
        """Apply the automorphism ``z_m -> z_m^k`` (``k`` coprime to the conductor)."""
        m = self.conductor
        if math.gcd(k, m) != 1:
            raise ValueError(f"{k} is not a unit modulo {m}")
        return CyclotomicNumber._raw(
            m, CyclotomicNumber.from_exponents(m, ((j * k, c) for j, c in enumerate(self._nums)))._nums,
            self._den)

    def conj(self) -> CyclotomicNumber:
        return self.galois(-1)

    def is_zero(self) -> bool:
        return not any(self._nums)

    def is_rational(self) -> bool:
        return not any(self._nums[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotRational(f"{self} is not rational")
        return Fraction(self._nums[0], self._den) if self._nums else Fraction(0)

    def normalized_trace(self) -> Fraction:
        """Trace to Q divided by the field degree; independent of the conductor used."""
        m = self.conductor
        total = Fraction(0)
        for j, c in enumerate(self._nums):
            if c:
                q = m // math.gcd(j, m)
                total += Fraction(c * mobius(q), euler_phi(q))
        return total / self._den

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_rational() == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b, _ = self._common(other)
        return a._den == b._den and a._nums == b._nums

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.to_rational())
            else:
                self._hash = hash((self.normalized_trace(), (self * self).normalized_trace()))
        return self._hash

    def __complex__(self):
        m = self.conductor
        z = complex(math.cos(2 * math.pi / m), math.sin(2 * math.pi / m))
        return sum(c * z ** j for j, c in enumerate(self._nums)) / self._den

    def __repr__(self):
        return f"CyclotomicNumber({self.conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        if self.is_rational():
            return str(self.to_rational())
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mon = "1" if j == 0 else (f"z{self.conductor}" + (f"^{j}" if j > 1 else ""))
            if j and c == 1:
                terms.append(mon)
            elif j and c == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"{c}" if j == 0 else f"{c}*{mon}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> CyclotomicNumber:
        return cls(int(obj["conductor"]), [Fraction(c) for c in obj["coeffs"]])


def root_of_unity(m: int, k: int = 1) -> CyclotomicNumber:
    if m < 1:
        raise ValueError("conductor must be positive")
    return CyclotomicNumber.from_exponents(m, [(k, 1)])


def zero() -> CyclotomicNumber:
    return CyclotomicNumber.from_rational(0)


def one() -> CyclotomicNumber:
    return CyclotomicNumber.from_rational(1)


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def neg(a):
    return -a


def conj(a):
    return a.conj()


def to_rational(a) -> Fraction:
    return a.to_rational()
