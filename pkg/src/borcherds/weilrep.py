"""Weil representation of Mp2(Z) on the group ring of a 2-elementary
discriminant group, vector-valued forms, and the concrete coset lifts.

The generator action is

    T: e_g -> exp(pi*i*<g,g>) e_g
    S: e_g -> (sqrt(i)^(b- - 2) / sqrt(|A|)) sum_d exp(2*pi*i*<g,d>) e_d

for a lattice of signature (2, b-).  All scalars live in Q(zeta_8) and the
matrices are exact.  Vector-valued forms map discriminant classes to QSeries.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from itertools import product as iter_product

from .cyclo8 import Cyclo8
from .lattice import (
    Lattice,
    discriminant_group,
    dual_vectors_up_to,
    standard,
    theta_series,
)
from .qseries import (
    QSeries,
    delta_series,
    eta_quotient,
    f0,
    f1,
    g_component,
)


class DiscForm:
    """Finite quadratic form data of a 2-elementary lattice.

    Elements are bit tuples against a fixed generator list; q-values are in
    Q/2Z and pairings in Q/Z, stored exactly.
    """

    def __init__(self, lat):
        self.lattice = lat
        n = lat.rank
        if all(x % 2 == 0 for row in lat.gram for x in row):
            # half-basis presentation: A = (1/2)M / M, bits are coordinates
            gens = []
            for i in range(n):
                coords = [Fraction(0)] * n
                coords[i] = Fraction(1, 2)
                gens.append(tuple(coords))
            self.gens = gens
        else:
            disc = discriminant_group(lat)
            if not disc.is_two_elementary():
                raise ValueError("lattice is not 2-elementary")
            self.gens = [tuple(g.coords) for g in disc.generators]
        self.nbits = len(self.gens)
        self.size = 1 << self.nbits
        self._gram_q = [[lat.pairing(a, b) for b in self.gens] for a in self.gens]
        for i in range(self.nbits):
            for j in range(self.nbits):
                v = self._gram_q[i][j] * (4 if i == j else 8)
                if v.denominator != 1:
                    raise ValueError("discriminant form leaves Q(zeta_8)")

    def elements(self):
        return list(iter_product((0, 1), repeat=self.nbits))

    def key_of(self, coords):
        """Class key of a dual vector given by rational lattice coordinates."""
        target = [Fraction(c) for c in coords]
        # solve sum b_i g_i = target  (mod Z^n) over F_2 via exhaustive small n
        # for half-basis presentations this is just 2*coords mod 2
        if self.nbits == self.lattice.rank and \
           self.gens[0][0] == Fraction(1, 2):
            bits = []
            for c in target:
                d = (2 * c) % 2
                if d.denominator != 1:
                    raise ValueError(f"{coords} is not in the dual lattice")
                bits.append(int(d))
            return tuple(bits)
        for bits in self.elements():
            diff = [sum(b * g[i] for b, g in zip(bits, self.gens)) - target[i]
                    for i in range(len(target))]
            if all(x % 1 == 0 for x in diff):
                return tuple(bits)
        raise ValueError(f"{coords} does not represent a discriminant class")

    def coords_of(self, key):
        return tuple(sum(b * g[i] for b, g in zip(key, self.gens))
                     for i in range(self.lattice.rank))

    def q(self, key):
        """Quadratic form value in Q/2Z, reduced to [0, 2)."""
        acc = Fraction(0)
        for i, bi in enumerate(key):
            if bi:
                acc += self._gram_q[i][i]
                for j in range(i + 1, self.nbits):
                    if key[j]:
                        acc += 2 * self._gram_q[i][j]
        return acc % 2

    def pairing(self, key1, key2):
        """Bilinear form value in Q/Z, reduced to [0, 1)."""
        acc = Fraction(0)
        for i, bi in enumerate(key1):
            if bi:
                for j, bj in enumerate(key2):
                    if bj:
                        acc += self._gram_q[i][j]
        return acc % 1

    def add(self, key1, key2):
        return tuple((a + b) % 2 for a, b in zip(key1, key2))

    def zero(self):
        return (0,) * self.nbits


class WeilMatrix:
    """Exact |A| x |A| matrix over Q(zeta_8) with the word it represents."""

    def __init__(self, form, entries, word=""):
        self.form = form
        self.entries = entries
        self.word = word

    def mul(self, other):
        n = len(self.entries)
        zero = Cyclo8()
        out = [[zero] * n for _ in range(n)]
        for i in range(n):
            row = self.entries[i]
            for k in range(n):
                x = row[k]
                if x.is_zero():
                    continue
                other_row = other.entries[k]
                oi = out[i]
                for j in range(n):
                    y = other_row[j]
                    if not y.is_zero():
                        oi[j] = oi[j] + x * y
        return WeilMatrix(self.form, out, self.word + other.word)

    def conj_transpose(self):
        n = len(self.entries)
        return WeilMatrix(self.form,
                          [[self.entries[j][i].conj() for j in range(n)]
                           for i in range(n)], f"({self.word})*")

    def is_identity(self):
        n = len(self.entries)
        for i in range(n):
            for j in range(n):
                want = Cyclo8(1) if i == j else Cyclo8()
                if self.entries[i][j] != want:
                    return False
        return True

    def is_unitary(self):
        return self.mul(self.conj_transpose()).is_identity()

    def apply(self, vec):
        """Apply to a dict key -> Cyclo8."""
        elems = self.form.elements()
        index = {e: i for i, e in enumerate(elems)}
        out = {}
        for j_key, coeff in vec.items():
            j = index[j_key]
            for i, e in enumerate(elems):
                x = self.entries[i][j]
                if not x.is_zero():
                    cur = out.get(e, Cyclo8())
                    out[e] = cur + x * coeff
        return {k: v for k, v in out.items() if not v.is_zero()}

    def scalar_multiple_of(self, other):
        """If self == c * other for a single scalar c, return c, else None."""
        n = len(self.entries)
        c = None
        for i in range(n):
            for j in range(n):
                a, b = self.entries[i][j], other.entries[i][j]
                if b.is_zero():
                    if not a.is_zero():
                        return None
                    continue
                ratio = a * b.inverse()
                if c is None:
                    c = ratio
                elif ratio != c:
                    return None
        return c


class WeilRep:
    """Weil representation attached to a 2-elementary lattice of signature
    (2, b-); b_minus may be overridden for abstract uses."""

    def __init__(self, lat, b_minus=None):
        self.lattice = lat
        self.form = DiscForm(lat)
        if b_minus is None:
            p, m = lat.signature()
            if p != 2:
                raise ValueError("expected signature (2, b-)")
            b_minus = m
        self.b_minus = b_minus
        l = self.form.nbits
        self.prefactor = Cyclo8.zeta_power(b_minus - 2) * Cyclo8.sqrt2_power(-l)

    # -- generator matrices -----------------------------------------------------

    def rho_T(self):
        elems = self.form.elements()
        n = len(elems)
        entries = [[Cyclo8() for _ in range(n)] for _ in range(n)]
        for i, g in enumerate(elems):
            q = self.form.q(g)
            e = 4 * q
            if e.denominator != 1:
                raise ValueError("T-phase leaves Q(zeta_8)")
            entries[i][i] = Cyclo8.zeta_power(int(e))
        return WeilMatrix(self.form, entries, "T")

    def rho_S(self):
        elems = self.form.elements()
        n = len(elems)
        entries = [[Cyclo8() for _ in range(n)] for _ in range(n)]
        for j, g in enumerate(elems):       # image of e_g
            for i, d in enumerate(elems):
                e = 8 * self.form.pairing(g, d)
                if e.denominator != 1:
                    raise ValueError("S-phase leaves Q(zeta_8)")
                entries[i][j] = self.prefactor * Cyclo8.zeta_power(int(e))
        return WeilMatrix(self.form, entries, "S")

    def identity_matrix(self):
        elems = self.form.elements()
        n = len(elems)
        entries = [[Cyclo8(1) if i == j else Cyclo8() for j in range(n)]
                   for i in range(n)]
        return WeilMatrix(self.form, entries, "")

    def rho_word(self, word):
        """Product over a word in {'S','T','s','t'} (lowercase = inverse)."""
        cache = {"S": self.rho_S(), "T": self.rho_T()}
        out = self.identity_matrix()
        for ch in word:
            if ch not in cache:
                if ch in ("s", "t"):
                    cache[ch] = _matrix_inverse(cache[ch.upper()])
                else:
                    raise ValueError(f"bad generator {ch!r}")
            out = out.mul(cache[ch])
        out.word = word
        return out

    # -- fast column applications (no full matrices) -----------------------------

    def apply_S(self, vec):
        """rho(S) applied to dict key -> Cyclo8, in O(|A| * nnz)."""
        out = {}
        elems = self.form.elements()
        for g, coeff in vec.items():
            if coeff.is_zero():
                continue
            for d in elems:
                e = 8 * self.form.pairing(g, d)
                phase = Cyclo8.zeta_power(int(e))
                add = self.prefactor * phase * coeff
                cur = out.get(d)
                out[d] = add if cur is None else cur + add
        return {k: v for k, v in out.items() if not v.is_zero()}

    def apply_T(self, vec, power=1):
        out = {}
        for g, coeff in vec.items():
            e = 4 * self.form.q(g) * power
            out[g] = Cyclo8.zeta_power(int(e)) * coeff
        return out

    def apply_word(self, word, vec):
        """Apply rho(word) to a sparse vector; word read left to right as a
        product, so the rightmost letter acts first."""
        for ch in reversed(word):
            if ch == "S":
                vec = self.apply_S(vec)
            elif ch == "T":
                vec = self.apply_T(vec)
            elif ch == "t":
                vec = self.apply_T(vec, power=-1)
            elif ch == "s":
                # S^-1 = S * Z^-1 with Z = S^2 central; use S^3 * Z^-2...
                # cheaper: S^-1 = conj-transpose of S (S unitary)
                vec = self.apply_S_inverse(vec)
            else:
                raise ValueError(f"bad generator {ch!r}")
        return vec

    def apply_S_inverse(self, vec):
        out = {}
        elems = self.form.elements()
        pref = self.prefactor.conj()
        for g, coeff in vec.items():
            if coeff.is_zero():
                continue
            for d in elems:
                e = -8 * self.form.pairing(d, g)
                phase = Cyclo8.zeta_power(int(e))
                add = pref * phase * coeff
                cur = out.get(d)
                out[d] = add if cur is None else cur + add
        return {k: v for k, v in out.items() if not v.is_zero()}


def _matrix_inverse(m):
    # unitary: inverse = conjugate transpose
    inv = m.conj_transpose()
    inv.word = m.word.swapcase()
    return inv


# ---------------------------------------------------------------------------
# vector-valued forms
# ---------------------------------------------------------------------------

class VVForm:
    """Map from discriminant classes to QSeries, with a weight."""

    def __init__(self, lat, components, weight, b_minus=None, label=None):
        self.lattice = lat
        self.form = DiscForm(lat)
        self.components = components      # dict key -> QSeries
        self.weight = Fraction(weight)
        self.b_minus = b_minus
        self.label = label

    def component(self, key):
        return self.components.get(tuple(key))

    def coefficient(self, key, exponent):
        comp = self.components.get(tuple(key))
        if comp is None:
            return 0
        return comp.coeff(exponent)

    def check_exponent_classes(self):
        """Every exponent of the e_g component must be q(g)/2 mod 1."""
        for key, series in self.components.items():
            want = (self.form.q(key) / 2) % 1
            for e, _ in series.items():
                if (e - want) % 1 != 0:
                    raise AssertionError(
                        f"component {key}: exponent {e} not in {want} + Z")
        return True

    def to_json(self):
        comps = []
        for key in sorted(self.components):
            coords = self.form.coords_of(key)
            comps.append({"gamma": [str(c) for c in coords],
                          "series": self.components[key].to_json()})
        return {"lattice": self.lattice.label, "weight": str(self.weight),
                "components": comps}

    def eval_components(self, tau):
        """Numeric component values at tau (complex), shared-series cached."""
        cache = {}
        out = {}
        for key, series in self.components.items():
            sid = id(series)
            if sid not in cache:
                cache[sid] = eval_qseries(series, tau)
            out[key] = cache[sid]
        return out


def eval_qseries(series, tau):
    total = 0j
    for e, c in series.items():
        total += c * cmath.exp(2j * cmath.pi * float(e) * tau)
    return total


# ---------------------------------------------------------------------------
# the concrete lifts
# ---------------------------------------------------------------------------

def level4_lift(k, order):
    """The weight (k-8)/2 form of type rho on II11(2) + Lambda_k built from
    f0(k), f1(k) and the exponent-class components g_i."""
    order = Fraction(order)
    t_k = standard("T_k", k)
    form = DiscForm(t_k)
    f0s = f0(k, order)
    f1s = f1(k, order)
    gs = [g_component(k, i, order) for i in range(4)]
    rho_key = rho_class_key(form, k)
    zero = form.zero()
    components = {}
    for key in form.elements():
        cls = int((2 * form.q(key)) % 4)
        series = gs[cls]
        if key == zero:
            series = series + f0s
        if key == rho_key:
            series = series + f1s
        components[key] = series
    return VVForm(t_k, components, Fraction(k - 8, 2), b_minus=10 - k,
                  label=f"F_{k}")


def rho_class_key(form, k):
    """Class of (0, 0, rho_k): twice the Weyl vector has integer coordinates."""
    lam_rank = 10 - k
    coords = [Fraction(0), Fraction(0), Fraction(3, 2)] + \
             [Fraction(-1, 2)] * (lam_rank - 1)
    return form.key_of(coords)


def coset_sum_lift(k, order):
    """Reconstruction of the level-4 lift from the six coset representatives
    {1, S, ST, ST^2, ST^3, V} of the level-4 subgroup, V = S^-1 T^2 S.

    Uses exact rho columns on e_0 together with the rescalings
    f0|_{S T^l}(tau) = sqrt(2)^(8-k) * i^(-k/2) * f0((tau+l)/4) and
    f0|_V = f1.  Individual representatives contribute Q(zeta_8) amplitudes;
    only the six-term total is integral, which is asserted at the end.
    Returns a dict key -> QSeries to compare with level4_lift.
    """
    order = Fraction(order)
    t_k = standard("T_k", k)
    rep = WeilRep(t_k)
    form = rep.form
    e0 = {form.zero(): Cyclo8(1)}
    acc = {}  # (key, exponent * 4) -> Cyclo8

    def add(key, exponent, value):
        n = exponent * 4
        if n.denominator != 1:
            raise ArithmeticError(f"exponent {exponent} off the 1/4 grid")
        slot = (key, int(n))
        cur = acc.get(slot)
        acc[slot] = value if cur is None else cur + value

    # representative 1: f0 * e_0
    for e, c in f0(k, order).items():
        add(form.zero(), e, Cyclo8.from_int(c))

    # representatives S T^l: rho((S T^l)^{-1}) = rho(T)^{-l} rho(S)^{-1}
    base = f0(k, 4 * order)
    scalar = Cyclo8.sqrt2_power(8 - k) * Cyclo8.zeta_power(-k)
    for l in range(4):
        col = rep.apply_word("t" * l + "s", e0)
        for key, amp in col.items():
            factor = scalar * amp
            for e, c in base.items():
                n = int(e)
                phase = Cyclo8.zeta_power(2 * l * n)
                add(key, Fraction(n, 4), factor * phase * c)

    # representative V: rho(V^{-1}) = rho(S)^{-1} rho(T)^{-2} rho(S)
    col = rep.apply_word("sttS", e0)
    for key, amp in col.items():
        for e, c in f1(k, order).items():
            add(key, e, amp * c)

    buckets = {key: {} for key in form.elements()}
    for (key, n), val in acc.items():
        if val.is_zero():
            continue
        r = val.rational_part()
        if r.denominator != 1:
            raise ArithmeticError(f"non-integral total coefficient {r}")
        buckets[key][n] = int(r)
    return {key: QSeries(4, terms, order) for key, terms in buckets.items()}


def level2_lift(order):
    """Weight -8 form of type rho on T = II11(2) + II11 + E8(-1)^2.

    With f = eta^-8 eta(2t)^-8 the components are
        f + 8{f(t/2) + f((t+1)/2)}  on e_00,
        8{f(t/2) + f((t+1)/2)}      on e_01 and e_10,
        8{f(t/2) - f((t+1)/2)}      on e_11,
    where e_ab is the class of (a*e + b*f)/2 in the II11(2) block.
    """
    order = Fraction(order)
    t = standard("II11", 2).direct_sum(standard("II11", 1)) \
        .direct_sum(standard("E8").rescale(-1)) \
        .direct_sum(standard("E8").rescale(-1), label="II11(2)+II1,17")
    f = eta_quotient([(1, -8), (2, -8)], 2 * order + 1)
    half = f.substitute_scaled(Fraction(1, 2))
    even = QSeries(half.denom,
                   {n: 2 * c for n, c in half.terms.items() if n % 2 == 0},
                   half.order)
    odd = QSeries(half.denom,
                  {n: 2 * c for n, c in half.terms.items() if n % 2 == 1},
                  half.order)
    # even = f(t/2) + f((t+1)/2), odd = f(t/2) - f((t+1)/2)
    e00 = (f.truncate(order) + (8 * even).truncate(order))
    e01 = (8 * even).truncate(order)
    e11 = (8 * odd).truncate(order)
    form = DiscForm(t)
    components = {}
    for key in form.elements():
        coords = form.coords_of(key)
        a = int((2 * coords[0]) % 2)
        b = int((2 * coords[1]) % 2)
        if (a, b) == (0, 0):
            components[key] = e00
        elif (a, b) == (1, 1):
            components[key] = e11
        else:
            components[key] = e01
    return VVForm(t, components, Fraction(-8), b_minus=18, label="level2")


def theta_over_delta(variant, order):
    """Theta series of a definite lattice divided by Delta, as a vector-valued
    form on the matching 2-elementary lattice.

    Variants: 'E7' (type rho of II2,18 + A1(-1), weight -17/2) and
    'Lambda16' (type rho of II11 + II11 + E8(-2), weight -4).
    """
    order = Fraction(order)
    inv_delta = delta_series(order + 3).invert()
    if variant == "E7":
        e7 = standard("E7")
        m = standard("II11", 1).direct_sum(standard("II11", 1)) \
            .direct_sum(standard("E8").rescale(-1)) \
            .direct_sum(standard("E8").rescale(-1)) \
            .direct_sum(standard("A1").rescale(-1), label="II2,18+A1(-1)")
        form = DiscForm(m)
        gen = discriminant_group(e7).generators[0]
        comp0 = (theta_series(e7, None, order + 2) * inv_delta).truncate(order)
        comp1 = (theta_series(e7, gen, order + 2) * inv_delta).truncate(order)
        nonzero = next(key for key in form.elements() if any(key))
        components = {form.zero(): comp0, nonzero: comp1}
        return VVForm(m, components, Fraction(-17, 2), b_minus=19,
                      label="Theta_E7/Delta")
    if variant == "Lambda16":
        bw = standard("BW16")
        m = standard("II11", 1).direct_sum(standard("II11", 1)) \
            .direct_sum(standard("E8").rescale(-2), label="II11+II11+E8(-2)")
        form = DiscForm(m)
        thetas = bw16_coset_thetas(order + 2)
        components = {}
        for key in form.elements():
            qv = form.q(key)
            theta = thetas[qv % 2 if any(key) else "zero"]
            components[key] = (theta * inv_delta).truncate(order)
        return VVForm(m, components, Fraction(-4), b_minus=10,
                      label="Theta_Lambda16/Delta")
    raise ValueError(f"unknown variant {variant!r}")


def bw16_coset_thetas(order):
    """Coset theta series of the Barnes-Wall lattice, bucketed by the
    discriminant quadratic form value.

    Returns {'zero': theta of the lattice itself, 0: theta of any nonzero
    class with q = 0, 1: theta of any class with q = 1} and checks that the
    theta series within each q-class agree (the lattice automorphisms act
    transitively on each class, which this verifies at the used order).
    """
    order = Fraction(order)
    bw = standard("BW16")
    form = DiscForm(bw)
    by_class = {}
    seen = {}
    for vec in dual_vectors_up_to(bw, 2 * order):
        key = form.key_of(vec.coords)
        e = vec.norm / 2
        if e < order:
            bucket = by_class.setdefault(key, {})
            bucket[e] = bucket.get(e, 0) + 1
    zero_key = form.zero()
    out = {}
    for key in form.elements():
        bucket = by_class.get(key, {})
        if key == zero_key:
            bucket[Fraction(0)] = 1
        denom = 1
        for e in bucket:
            denom = denom * e.denominator // math.gcd(denom, e.denominator)
        series = QSeries(denom, {int(e * denom): c for e, c in bucket.items()},
                         order)
        if key == zero_key:
            out["zero"] = series
            continue
        qv = form.q(key) % 2
        if qv in seen:
            if not seen[qv].agrees_with(series):
                raise AssertionError(
                    f"coset thetas differ within q-class {qv}")
        else:
            seen[qv] = series
    out.update(seen)
    return out


# ---------------------------------------------------------------------------
# numeric modularity check
# ---------------------------------------------------------------------------

def check_modularity_numeric(vv, samples, tol=1e-8, rep=None):
    """Max residual of F(-1/tau) - sqrt(tau)^(2w) rho(S) F(tau) over samples.

    The square root uses the principal branch (argument in (-pi/2, pi/2]).
    A geometric tail estimate from the computed coefficients must certify
    truncation error below tol/10 at the lowest sampled Im(tau), otherwise
    the check refuses to run.
    """
    if rep is None:
        rep = WeilRep(vv.lattice, b_minus=vv.b_minus)
    form = rep.form
    elems = form.elements()
    # tail estimate: crude geometric domination from the largest computed
    # coefficients of any component
    min_im = min(t.imag for t in samples)
    min_im = min(min_im, min((-1 / t).imag for t in samples))
    if min_im <= 0:
        raise ValueError("sample points must lie in the upper half plane")
    tail = _tail_estimate(vv, min_im)
    if tail > tol / 10:
        raise ValueError(
            f"truncation tail estimate {tail:.3g} exceeds tol/10; "
            "increase the expansion order")
    # phase matrix of rho(S) as complex numbers
    pref = rep.prefactor.to_complex()
    worst = 0.0
    report = []
    for tau in samples:
        vals = vv.eval_components(tau)
        vals_s = vv.eval_components(-1 / tau)
        auto = cmath.sqrt(tau) ** int(2 * vv.weight)
        local = 0.0
        for g in elems:
            acc = 0j
            for d in elems:
                e = 8 * form.pairing(d, g)
                acc += cmath.exp(2j * cmath.pi * float(e) / 8) * vals[d]
            rhs = auto * pref * acc
            local = max(local, abs(vals_s[g] - rhs))
        worst = max(worst, local)
        report.append({"tau": str(tau), "residual": local})
    return {"max_residual": worst, "tol": tol, "tail_estimate": tail,
            "passed": worst < tol, "samples": report}


def _tail_estimate(vv, min_im):
    """Crude geometric bound for the dropped tails of all component series."""
    worst = 0.0
    seen = set()
    for series in vv.components.values():
        if id(series) in seen:
            continue
        seen.add(id(series))
        items = series.items()
        if not items:
            continue
        big = max(abs(c) for _, c in items)
        ratio = 1.0
        by_e = sorted(items)
        for (e1, c1), (e2, c2) in zip(by_e, by_e[1:]):
            if c1 and c2 and abs(c2) > abs(c1):
                r = (abs(c2) / abs(c1)) ** (1.0 / float(e2 - e1))
                ratio = max(ratio, r)
        x = ratio * 1.5 * math.exp(-2 * math.pi * min_im)
        if x >= 0.9:
            return float("inf")
        step = x ** (1.0 / series.denom)
        tail = big * (x ** max(float(series.order), 0.0)) / (1 - step)
        worst = max(worst, tail)
    return worst
