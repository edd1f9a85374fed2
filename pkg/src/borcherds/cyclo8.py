"""Exact arithmetic in the 8th cyclotomic field Q(zeta_8).

Elements are a0 + a1*z + a2*z^2 + a3*z^3 with rational coordinates and
z = exp(2*pi*i/8); reduction uses z^4 = -1.  This field contains i = z^2,
sqrt(2) = z - z^3 and sqrt(i) = z, which is everything the Weil
representation matrices of 2-elementary lattices need.
"""

from __future__ import annotations

from fractions import Fraction


class Cyclo8:
    __slots__ = ("a",)

    def __init__(self, a0=0, a1=0, a2=0, a3=0):
        self.a = (Fraction(a0), Fraction(a1), Fraction(a2), Fraction(a3))

    @staticmethod
    def zeta_power(k):
        """z^k for any integer k."""
        k %= 8
        sign = 1
        if k >= 4:
            sign = -1
            k -= 4
        coords = [0, 0, 0, 0]
        coords[k] = sign
        return Cyclo8(*coords)

    @staticmethod
    def from_int(n):
        return Cyclo8(n, 0, 0, 0)

    @staticmethod
    def sqrt2_power(m):
        """sqrt(2)^m for any integer m (sqrt(2) = z - z^3)."""
        if m % 2 == 0:
            return Cyclo8(Fraction(2) ** (m // 2), 0, 0, 0)
        base = Fraction(2) ** ((m - 1) // 2)
        return Cyclo8(0, base, 0, -base)

    def __add__(self, other):
        other = _coerce(other)
        return Cyclo8(*[x + y for x, y in zip(self.a, other.a)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo8(*[-x for x in self.a])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        out = [Fraction(0)] * 4
        for i, x in enumerate(self.a):
            if not x:
                continue
            for j, y in enumerate(other.a):
                if not y:
                    continue
                k = i + j
                if k >= 4:
                    out[k - 4] -= x * y
                else:
                    out[k] += x * y
        return Cyclo8(*out)

    __rmul__ = __mul__

    def conj(self):
        """Complex conjugation z -> z^-1 = -z^3."""
        a0, a1, a2, a3 = self.a
        return Cyclo8(a0, -a3, -a2, -a1)

    def is_zero(self):
        return all(x == 0 for x in self.a)

    def is_rational(self):
        return all(x == 0 for x in self.a[1:])

    def rational_part(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.a[0]

    def galois(self, k):
        """The automorphism z -> z^k for k in {1,3,5,7}."""
        out = [Fraction(0)] * 4
        for i, x in enumerate(self.a):
            if not x:
                continue
            j = (i * k) % 8
            if j >= 4:
                out[j - 4] -= x
            else:
                out[j] += x
        return Cyclo8(*out)

    def inverse(self):
        """Multiplicative inverse via the field norm down to Q."""
        prod = self.galois(3) * self.galois(5) * self.galois(7)
        norm = self * prod
        if not norm.is_rational() or norm.a[0] == 0:
            raise ZeroDivisionError("not invertible")
        inv_norm = 1 / norm.a[0]
        return Cyclo8(*[x * inv_norm for x in prod.a])

    def scale(self, c):
        c = Fraction(c)
        return Cyclo8(*[x * c for x in self.a])

    def to_complex(self):
        import cmath
        z = cmath.exp(2j * cmath.pi / 8)
        return sum(float(x) * z ** i for i, x in enumerate(self.a))

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == other.a

    def __hash__(self):
        return hash(self.a)

    def __repr__(self):
        names = ["", "z", "z^2", "z^3"]
        parts = [f"{x}{('*' + n) if n else ''}"
                 for x, n in zip(self.a, names) if x]
        return "Cyclo8(" + (" + ".join(parts) if parts else "0") + ")"


def _coerce(x):
    if isinstance(x, Cyclo8):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclo8(x, 0, 0, 0)
    raise TypeError(f"cannot coerce {type(x)} to Cyclo8")


ONE = Cyclo8(1)
ZERO = Cyclo8()
I_UNIT = Cyclo8.zeta_power(2)
