"""Exact sparse Fourier series in one variable q with rational exponents.

A QSeries stores finitely many terms ``coeff * q^(n/denom)`` together with a
validity order: the series is complete for all exponents strictly below
``order``.  Coefficients are unbounded Python ints, exponents live on a fixed
grid ``(1/denom) * Z``.  All arithmetic is exact and propagates the tightest
provable validity order, so products involving principal parts (negative
leading exponents) do not silently lose precision.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class QSeries:
    """Sparse exact q-expansion on the grid (1/denom)*Z, valid below `order`."""

    __slots__ = ("denom", "order", "terms")

    def __init__(self, denom, terms, order):
        if denom <= 0:
            raise ValueError("denom must be positive")
        order = Fraction(order)
        self.denom = int(denom)
        self.order = order
        self.terms = {int(n): int(c) for n, c in terms.items()
                      if c != 0 and Fraction(n, denom) < order}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(order, denom=1):
        return QSeries(denom, {}, order)

    @staticmethod
    def one(order):
        return QSeries(1, {0: 1}, order)

    @staticmethod
    def monomial(exponent, coeff=1, order=None):
        """coeff * q^exponent, valid below `order` (default: everywhere known)."""
        e = Fraction(exponent)
        if order is None:
            order = e + 1
        return QSeries(e.denominator, {e.numerator: coeff}, order)

    # -- basic queries ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def coeff(self, exponent):
        """Exact coefficient of q^exponent; raises if outside the window."""
        e = Fraction(exponent)
        if e >= self.order:
            raise ValueError(f"coefficient at q^{e} not known (order {self.order})")
        if (e.denominator * self.denom) % self.denom != 0 or \
           (e * self.denom).denominator != 1:
            return 0
        return self.terms.get(int(e * self.denom), 0)

    def leading_exponent(self):
        if not self.terms:
            return None
        return Fraction(min(self.terms), self.denom)

    def leading_coeff(self):
        if not self.terms:
            return 0
        return self.terms[min(self.terms)]

    def items(self):
        """Sorted (exponent, coeff) pairs."""
        return [(Fraction(n, self.denom), c) for n, c in sorted(self.terms.items())]

    # -- grid handling -------------------------------------------------------

    def rescale_grid(self, denom):
        """Same series on a finer grid (denom must be a multiple of self.denom)."""
        if denom == self.denom:
            return self
        if denom % self.denom:
            raise ValueError("new denom must be a multiple of the old one")
        m = denom // self.denom
        return QSeries(denom, {n * m: c for n, c in self.terms.items()}, self.order)

    def _common(self, other):
        d = self.denom * other.denom // gcd(self.denom, other.denom)
        return self.rescale_grid(d), other.rescale_grid(d)

    def reduce_grid(self):
        """Shrink denom to the smallest grid actually used."""
        g = self.denom
        for n in self.terms:
            g = gcd(g, n)
            if g == 1:
                return self
        return QSeries(self.denom // g, {n // g: c for n, c in self.terms.items()},
                       self.order)

    # -- ring operations ------------------------------------------------------

    def __neg__(self):
        return QSeries(self.denom, {n: -c for n, c in self.terms.items()}, self.order)

    def __add__(self, other):
        if isinstance(other, int):
            other = QSeries(1, {0: other}, self.order)
        a, b = self._common(other)
        terms = dict(a.terms)
        for n, c in b.terms.items():
            terms[n] = terms.get(n, 0) + c
        return QSeries(a.denom, terms, min(a.order, b.order))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries(self.denom,
                           {n: c * other for n, c in self.terms.items()}, self.order)
        a, b = self._common(other)
        # validity of a product: each side's error tail starts at its order and
        # multiplies the other side's leading monomial
        la, lb = a.leading_exponent(), b.leading_exponent()
        if la is None and lb is None:
            return QSeries(a.denom, {}, a.order + b.order)
        bounds = []
        if lb is not None:
            bounds.append(a.order + lb)
        if la is not None:
            bounds.append(b.order + la)
        order = min(bounds)
        D = a.denom
        cut = order * D
        terms = {}
        bi = sorted(b.terms.items())
        for na, ca in sorted(a.terms.items()):
            for nb, cb in bi:
                n = na + nb
                if n >= cut:
                    break
                terms[n] = terms.get(n, 0) + ca * cb
        return QSeries(D, terms, order)

    __rmul__ = __mul__

    def pow(self, e):
        if e == 0:
            return QSeries(self.denom, {0: 1}, self.order)
        if e < 0:
            return self.invert().pow(-e)
        result = None
        base = self
        k = e
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    __pow__ = pow

    def invert(self):
        """Inverse series; leading coefficient must be +1 or -1."""
        if not self.terms:
            raise ZeroDivisionError("cannot invert the zero series")
        lead = min(self.terms)
        lc = self.terms[lead]
        if lc not in (1, -1):
            raise ValueError(f"leading coefficient {lc} is not a unit over Z")
        D = self.denom
        # f = lc * q^(lead/D) * (1 + u); solve (1 + u) g = 1 term by term.
        # Perturbing f by its unknown tail (>= order) perturbs 1/f first at
        # order - 2*lead/D, which is the resulting validity.
        width = int(self.order * D) - lead
        ucoef = {n - lead: c * lc for n, c in self.terms.items() if n != lead}
        offsets = sorted(ucoef)
        g = {0: 1}
        for n in range(1, width):
            s = 0
            for m in offsets:
                if m > n:
                    break
                gm = g.get(n - m)
                if gm:
                    s += ucoef[m] * gm
            if s:
                g[n] = -s
        order = self.order - 2 * Fraction(lead, D)
        return QSeries(D, {n - lead: lc * c for n, c in g.items()}, order)

    def truncate(self, order):
        order = Fraction(order)
        if order > self.order:
            raise ValueError("cannot extend validity by truncation")
        return QSeries(self.denom,
                       {n: c for n, c in self.terms.items()
                        if Fraction(n, self.denom) < order}, order)

    def shift(self, exponent):
        """Multiply by q^exponent."""
        e = Fraction(exponent)
        d = self.denom * e.denominator // gcd(self.denom, e.denominator)
        s = self.rescale_grid(d)
        off = int(e * d)
        return QSeries(d, {n + off: c for n, c in s.terms.items()}, s.order + e)

    def substitute_scaled(self, scale):
        """q -> q^scale for a positive rational scale (regrids exponents)."""
        s = Fraction(scale)
        if s <= 0:
            raise ValueError("scale must be positive")
        exps = [Fraction(n, self.denom) * s for n in self.terms]
        d = 1
        for e in exps:
            d = d * e.denominator // gcd(d, e.denominator)
        terms = {}
        for n, c in self.terms.items():
            terms[int(Fraction(n, self.denom) * s * d)] = c
        return QSeries(d, terms, self.order * s)

    # -- comparison / io -------------------------------------------------------

    def agrees_with(self, other):
        """Termwise equality below the common validity order."""
        a, b = self._common(other)
        cut = min(a.order, b.order) * a.denom
        ka = {n: c for n, c in a.terms.items() if n < cut}
        kb = {n: c for n, c in b.terms.items() if n < cut}
        return ka == kb

    def first_difference(self, other):
        """Smallest exponent where the two series differ, or None."""
        a, b = self._common(other)
        cut = min(a.order, b.order) * a.denom
        keys = sorted(set(a.terms) | set(b.terms))
        for n in keys:
            if n >= cut:
                break
            if a.terms.get(n, 0) != b.terms.get(n, 0):
                return Fraction(n, a.denom)
        return None

    def to_json(self):
        return {
            "denom": self.denom,
            "order": str(self.order),
            "terms": [[n, str(c)] for n, c in sorted(self.terms.items())],
        }

    @staticmethod
    def from_json(obj):
        return QSeries(obj["denom"],
                       {int(n): int(c) for n, c in obj["terms"]},
                       Fraction(obj["order"]))

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._common(other)
        return a.terms == b.terms and a.order == b.order

    def __hash__(self):
        return hash((self.denom, self.order, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        parts = []
        for e, c in self.items()[:8]:
            parts.append(f"{c}*q^({e})")
        if len(self.terms) > 8:
            parts.append("...")
        body = " + ".join(parts) if parts else "0"
        return f"QSeries({body} + O(q^{self.order}))"


# ---------------------------------------------------------------------------
# named series
# ---------------------------------------------------------------------------

def _euler_product(order_int):
    """prod_{n>=1} (1 - q^n) below q^order_int, by the pentagonal number series."""
    terms = {0: 1}
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        if e1 >= order_int and e2 >= order_int:
            break
        s = 1 if k % 2 == 0 else -1
        if e1 < order_int:
            terms[e1] = s
        if e2 < order_int:
            terms[e2] = s
        k += 1
    return QSeries(1, terms, order_int)


def eta_quotient(factors, order):
    """prod_i eta(a_i * tau)^{b_i} as an exact q-series, complete below `order`.

    Each factor is a pair (scale a, power b) with a a positive integer.  The
    leading exponent is sum(a_i * b_i) / 24.
    """
    if not factors:
        raise ValueError("at least one eta factor is required")
    order = Fraction(order)
    lead = Fraction(sum(a * b for a, b in factors), 24)
    if order <= lead:
        raise ValueError(f"order {order} does not reach the leading exponent {lead}")
    # width of the unit-part expansion needed on the integer grid
    width = order - lead
    result = None
    for a, b in factors:
        if a <= 0:
            raise ValueError("eta scales must be positive integers")
        if b == 0:
            continue
        need = (width / a).__ceil__() + 1
        unit = _euler_product(need).pow(b)
        unit = unit.substitute_scaled(a)
        part = unit.shift(Fraction(a * b, 24))
        result = part if result is None else result * part
    if result is None:
        result = QSeries.one(order)
    return result.truncate(min(result.order, order)).reduce_grid()


def theta_a1(shift, order):
    """Theta series of the one-dimensional lattice of norm 2.

    shift 0: sum_k q^(k^2);  shift 1: sum_k q^((k+1/2)^2) on the 1/4 grid.
    """
    if shift not in (0, 1):
        raise ValueError("shift must be 0 or 1")
    order = Fraction(order)
    denom = 4 if shift else 1
    terms = {}
    k = 0
    while True:
        e = Fraction((2 * k + shift) ** 2, 4)  # (k + shift/2)^2
        if e >= order:
            break
        n = int(e * denom)
        # k and -k-shift contribute the same exponent
        terms[n] = 1 if (k == 0 and shift == 0) else 2
        k += 1
    return QSeries(denom, terms, order)


def delta_series(order):
    """Ramanujan Delta = eta(tau)^24."""
    return eta_quotient([(1, 24)], order)


def inverse_delta(order):
    """1/Delta = q^{-1} + 24 + O(q)."""
    return delta_series(Fraction(order) + 2).invert().truncate(order)


def f0(k, order):
    """eta(2t)^8 theta(t)^k / (eta(t)^8 eta(4t)^8) = q^{-1} + 8 + 2k + O(q)."""
    if not 0 <= k <= 9:
        raise ValueError("k must be in 0..9")
    order = Fraction(order)
    pad = order + 2
    num = eta_quotient([(2, 8), (1, -8), (4, -8)], pad)
    th = theta_a1(0, pad + 1).pow(k) if k else QSeries.one(pad + 1)
    return (num * th).truncate(order)


def f1(k, order):
    """-16 eta(4t)^8 theta_{odd}(t)^k / eta(2t)^16, exponents in k/4 + Z."""
    if not 0 <= k <= 9:
        raise ValueError("k must be in 0..9")
    order = Fraction(order)
    pad = order + 2
    base = eta_quotient([(4, 8), (2, -16)], pad) * (-16)
    if k:
        base = base * theta_a1(1, pad + 1).pow(k)
    return base.truncate(order)


def g_component(k, i, order):
    """g_i = sum over f0(k)-exponents congruent to i mod 4 of c q^(l/4)."""
    order = Fraction(order)
    base = f0(k, order * 4)
    terms = {}
    for e, c in base.items():
        if e.denominator != 1:
            raise ArithmeticError(f"f0({k}) has a non-integral exponent {e}")
        if int(e) % 4 == i % 4:
            terms[int(e)] = c
    return QSeries(4, terms, order)


# ---------------------------------------------------------------------------
# named coefficient functions
# ---------------------------------------------------------------------------

_FAKE_MONSTER_FACTORS = [(1, -8), (2, 8), (4, -8)]


def fake_monster_c(n):
    """Coefficient c(n) of eta^-8 eta(2t)^8 eta(4t)^-8 = sum c(n) q^n, n >= -1."""
    n = Fraction(n)
    if n < -1:
        return 0
    s = eta_quotient(_FAKE_MONSTER_FACTORS, n + 1)
    return s.coeff(n)


def p24(n):
    """Partitions of n into 24 colors: coefficient of q^(n-1) in 1/Delta."""
    n = Fraction(n)
    if n < 0:
        return 0
    return inverse_delta(n).coeff(n - 1)


def ramanujan_tau(n):
    n = int(n)
    if n < 1:
        raise ValueError("tau(n) defined for n >= 1")
    return delta_series(n + 1).coeff(n)


class CoeffTable:
    """Cached accessor for the exponent data c_{k,delta} read off f0/f1.

    f1 is written with doubled coefficients (f1 = sum 2 c_{k,1}(l) q^l); the
    accessor checks integrality of the halved values instead of assuming it.
    """

    def __init__(self, k, order):
        self.k = k
        self.order = Fraction(order)
        self._f0 = f0(k, self.order)
        self._f1 = f1(k, self.order)

    def c(self, delta, l):
        l = Fraction(l)
        if l >= self.order:
            raise ValueError(f"c_({self.k},{delta})({l}) beyond precision {self.order}")
        if delta == 0:
            return self._f0.coeff(l)
        v = self._f1.coeff(l)
        if v % 2:
            raise ArithmeticError(
                f"odd coefficient {v} at q^{l}: c_({self.k},1)({l}) not integral")
        return v // 2


def coeff_function(name, n, k=None, delta=None):
    """Dispatch for the named coefficient families."""
    if name == "fake_monster_c":
        return fake_monster_c(n)
    if name == "p24":
        return p24(n)
    if name == "ramanujan_tau":
        return ramanujan_tau(n)
    if name == "c_k_delta":
        if k is None or delta is None:
            raise ValueError("c_k_delta requires k and delta")
        return CoeffTable(k, Fraction(n) + 1).c(delta, n)
    raise ValueError(f"unknown coefficient function {name!r}")
