"""Integer Gram-matrix lattices.

Covers duals, discriminant groups, 2-elementary invariants, rescaling, direct
sums, bounded vector enumeration (Fincke-Pohst style), theta series, and the
named lattices used throughout the package: hyperbolic planes, odd diagonal
lattices, root lattices, the 16-dimensional Barnes-Wall lattice and the K3
lattice, together with the hyperbolic family Lambda_k / T_k / S_k and its
Weyl vectors.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .intmat import (
    det_int,
    integer_kernel,
    invert_rational,
    mat_mul,
    smith_normal_form,
    solve_rational,
    transpose,
)
from .qseries import QSeries


class Lattice:
    """Finite-rank free module with a symmetric nondegenerate integer Gram matrix."""

    def __init__(self, gram, label=None, weyl=None):
        gram = [[int(x) for x in row] for row in gram]
        n = len(gram)
        for row in gram:
            if len(row) != n:
                raise ValueError("gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        if n and det_int(gram) == 0:
            raise ValueError("gram matrix must be nondegenerate")
        self.gram = gram
        self.rank = n
        self.label = label
        self.weyl = None if weyl is None else tuple(Fraction(x) for x in weyl)
        self._dual = None
        self._sig = None

    # -- basic linear algebra -------------------------------------------------

    def pairing(self, x, y):
        """<x, y> for rational coordinate vectors in the lattice basis."""
        acc = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                row = self.gram[i]
                acc += Fraction(xi) * sum(Fraction(yj) * row[j]
                                          for j, yj in enumerate(y) if yj)
        return acc

    def norm(self, x):
        return self.pairing(x, x)

    def dual_gram(self):
        """Gram matrix of the dual basis (inverse of gram, exact rationals)."""
        if self._dual is None:
            self._dual = invert_rational(self.gram)
        return self._dual

    def det(self):
        return det_int(self.gram)

    def signature(self):
        """(positive, negative) inertia via exact symmetric diagonalization."""
        if self._sig is not None:
            return self._sig
        n = self.rank
        work = [[Fraction(x) for x in row] for row in self.gram]
        pos = neg = 0
        step = 0
        while step < n:
            piv = next((i for i in range(step, n) if work[i][i] != 0), None)
            if piv is None:
                found = False
                for i in range(step, n):
                    for j in range(i + 1, n):
                        if work[i][j] != 0:
                            # congruence by (row_i += row_j, col_i += col_j)
                            for k in range(n):
                                work[i][k] += work[j][k]
                            for k in range(n):
                                work[k][i] += work[k][j]
                            found = True
                            break
                    if found:
                        break
                if not found:
                    break
                continue
            if piv != step:
                work[step], work[piv] = work[piv], work[step]
                for row in work:
                    row[step], row[piv] = row[piv], row[step]
            d = work[step][step]
            if d > 0:
                pos += 1
            else:
                neg += 1
            for i in range(step + 1, n):
                f = work[i][step] / d
                if f:
                    for k in range(step, n):
                        work[i][k] -= f * work[step][k]
            for j in range(step + 1, n):
                f = work[step][j] / d
                if f:
                    for k in range(step, n):
                        work[k][j] -= f * work[k][step]
            step += 1
        self._sig = (pos, neg)
        return self._sig

    def is_definite(self):
        p, n = self.signature()
        return p == self.rank or n == self.rank

    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    # -- structural operations --------------------------------------------------

    def direct_sum(self, other, label=None):
        n, m = self.rank, other.rank
        gram = [[0] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                gram[i][j] = self.gram[i][j]
        for i in range(m):
            for j in range(m):
                gram[n + i][n + j] = other.gram[i][j]
        return Lattice(gram, label=label)

    def rescale(self, k, label=None):
        if k == 0:
            raise ValueError("rescale factor must be nonzero")
        return Lattice([[k * x for x in row] for row in self.gram], label=label)

    def to_json(self):
        return {"label": self.label, "rank": self.rank, "gram": self.gram}

    def __repr__(self):
        name = self.label or f"lattice rank {self.rank}"
        return f"Lattice({name})"


class DualVector:
    """Vector of the dual lattice in rational lattice-basis coordinates."""

    __slots__ = ("coords", "norm")

    def __init__(self, lattice_or_gram, coords, norm=None):
        self.coords = tuple(Fraction(c) for c in coords)
        if norm is None:
            if isinstance(lattice_or_gram, Lattice):
                norm = lattice_or_gram.norm(self.coords)
            else:
                raise ValueError("norm required when no lattice is given")
        self.norm = Fraction(norm)

    def to_json(self):
        return {"coords": [str(c) for c in self.coords], "norm": str(self.norm)}

    def __iter__(self):
        return iter(self.coords)

    def __eq__(self, other):
        return isinstance(other, DualVector) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"DualVector({[str(c) for c in self.coords]}, norm={self.norm})"


class DiscGroup:
    """M^v / M presented by elementary divisors with form values."""

    def __init__(self, orders, generators, qvals, pairing):
        self.orders = orders          # elementary divisors > 1
        self.generators = generators  # DualVector per order
        self.qvals = qvals            # q(g) in Q/2Z, reduced to [0, 2)
        self.pairing = pairing        # b(g_i, g_j) in Q/Z, reduced to [0, 1)

    def size(self):
        n = 1
        for o in self.orders:
            n *= o
        return n

    def is_two_elementary(self):
        return all(o == 2 for o in self.orders)

    def elements(self):
        """All group elements as coefficient tuples against the generators."""
        from itertools import product
        return list(product(*[range(o) for o in self.orders]))

    def q_of(self, coeffs):
        """Quadratic form value of sum(c_i g_i) in Q/2Z."""
        q = Fraction(0)
        for i, ci in enumerate(coeffs):
            q += ci * ci * self.qvals[i]
            for j in range(i + 1, len(coeffs)):
                q += 2 * ci * coeffs[j] * self.pairing[i][j]
        return q % 2


def discriminant_group(lat):
    d, _, v = smith_normal_form(lat.gram)
    n = lat.rank
    orders, gens = [], []
    dual = lat.dual_gram()
    for i, di in enumerate(d):
        if di > 1:
            coords = [Fraction(v[r][i], di) for r in range(n)]
            orders.append(di)
            gens.append(DualVector(lat, coords))
    qvals = [g.norm % 2 for g in gens]
    pairing = [[lat.pairing(gi.coords, gj.coords) % 1 for gj in gens] for gi in gens]
    return DiscGroup(orders, gens, qvals, pairing)


def nikulin_triple(lat):
    """(rank, length, parity) of a 2-elementary lattice."""
    disc = discriminant_group(lat)
    if not disc.is_two_elementary():
        raise ValueError(f"lattice is not 2-elementary (divisors {disc.orders})")
    delta = 0 if all(q % 1 == 0 for q in disc.qvals) else 1
    return lat.rank, len(disc.orders), delta


# ---------------------------------------------------------------------------
# bounded enumeration (Fincke-Pohst)
# ---------------------------------------------------------------------------

def _cholesky_float(gram, sign):
    n = len(gram)
    a = [[float(sign * gram[i][j]) for j in range(n)] for i in range(n)]
    q = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s = a[i][j] - sum(q[k][i] * q[k][j] * q[k][k] for k in range(i))
            if i == j:
                if s <= 0:
                    raise ValueError("lattice is not definite")
                q[i][i] = s
            else:
                q[i][j] = s / q[i][i]
    return q


def enumerate_vectors(lat, norm_target, mode="exact", center=None):
    """Vectors x (integer coords, optionally shifted by -center) of a definite
    lattice with |norm| == target (mode 'exact') or 0 < |norm| <= target
    ('at_most').  Deterministic lexicographic order; both signs included.

    With `center` c, enumerates x in c + Z^n under the same norm constraint.
    """
    p, m = lat.signature()
    if p == lat.rank:
        sign = 1
    elif m == lat.rank:
        sign = -1
    else:
        raise ValueError("enumeration requires a definite lattice")
    target = Fraction(norm_target)
    if target < 0:
        target = -target
    bound = float(target) + 1e-9
    n = lat.rank
    q = _cholesky_float(lat.gram, sign)
    c = [float(x) for x in center] if center is not None else [0.0] * n
    c_exact = [Fraction(x) for x in center] if center is not None else [Fraction(0)] * n

    results = []
    x = [0] * n

    def recurse(i, remaining):
        # remaining float budget for sum_{k<=i} q_kk (x_k + c_k + corr)^2
        if i < 0:
            vec = tuple(Fraction(x[k]) + c_exact[k] for k in range(n))
            if all(v == 0 for v in vec):
                return
            nrm = lat.norm(vec)
            a = -nrm if sign < 0 else nrm
            if (mode == "exact" and a == target) or \
               (mode == "at_most" and 0 < a <= target):
                results.append(DualVector(lat, vec, nrm))
            return
        corr = sum(q[i][j] * (x[j] + c[j]) for j in range(i + 1, n))
        centre = c[i] + corr
        if remaining < -1e-9:
            return
        half = math.sqrt(max(remaining, 0.0) / q[i][i]) + 1e-9
        lo = math.ceil(-centre - half - 1e-9)
        hi = math.floor(-centre + half + 1e-9)
        for xi in range(lo, hi + 1):
            x[i] = xi
            used = q[i][i] * (xi + centre) ** 2
            recurse(i - 1, remaining - used)
        x[i] = 0

    recurse(n - 1, bound)
    results.sort(key=lambda v: v.coords)
    return results


def dual_rescaled(lat):
    """(dual lattice rescaled to integer Gram, scale m): vectors of the dual
    with norm v correspond to vectors of the returned lattice of norm m*v."""
    dual = lat.dual_gram()
    m = 1
    for row in dual:
        for x in row:
            m = m * x.denominator // math.gcd(m, x.denominator)
    gram = [[int(x * m) for x in row] for row in dual]
    return Lattice(gram, label=f"{lat.label}^v({m})" if lat.label else None), m


def dual_vectors_up_to(lat, norm_bound):
    """All nonzero dual vectors with |norm| <= norm_bound, as DualVectors with
    coordinates in the lattice basis."""
    resc, m = dual_rescaled(lat)
    vecs = enumerate_vectors(resc, m * Fraction(norm_bound), mode="at_most")
    dual = lat.dual_gram()
    out = []
    for v in vecs:
        coords = [sum(dual[i][j] * v.coords[j] for j in range(lat.rank))
                  for i in range(lat.rank)]
        out.append(DualVector(lat, coords, v.norm / m))
    out.sort(key=lambda v: v.coords)
    return out


def theta_series(lat, coset=None, order=2):
    """Theta series of a positive-definite lattice coset: sum q^{norm/2}."""
    p, m = lat.signature()
    if p != lat.rank:
        raise ValueError("theta series requires a positive-definite lattice")
    order = Fraction(order)
    bound = 2 * order
    center = list(coset.coords) if coset is not None else None
    vecs = enumerate_vectors(lat, bound, mode="at_most", center=center)
    exps = {}
    zero_included = center is None or all(Fraction(c) % 1 == 0 for c in coset.coords)
    denom = 1
    for v in vecs:
        e = v.norm / 2
        if e >= order:
            continue
        denom = denom * e.denominator // math.gcd(denom, e.denominator)
        exps[e] = exps.get(e, 0) + 1
    terms = {}
    if zero_included:
        terms[0] = 1
    for e, c in exps.items():
        terms[int(e * denom)] = c
    return QSeries(denom, terms, order)


# ---------------------------------------------------------------------------
# named lattices
# ---------------------------------------------------------------------------

def _gram_from_basis(rows):
    """Gram matrix of row vectors under the standard Euclidean form."""
    n = len(rows)
    return [[sum(Fraction(rows[i][k]) * Fraction(rows[j][k])
                 for k in range(len(rows[i]))) for j in range(n)] for i in range(n)]


def _e8_gram():
    half = Fraction(1, 2)
    rows = [[2, 0, 0, 0, 0, 0, 0, 0],
            [-1, 1, 0, 0, 0, 0, 0, 0],
            [0, -1, 1, 0, 0, 0, 0, 0],
            [0, 0, -1, 1, 0, 0, 0, 0],
            [0, 0, 0, -1, 1, 0, 0, 0],
            [0, 0, 0, 0, -1, 1, 0, 0],
            [0, 0, 0, 0, 0, -1, 1, 0],
            [half] * 8]
    g = _gram_from_basis(rows)
    return [[int(x) for x in row] for row in g]


def _e7_gram():
    # orthogonal complement of a root inside E8 (basis vector 1 has norm 2)
    e8 = _e8_gram()
    root = [0, 1, 0, 0, 0, 0, 0, 0]
    pair = [sum(e8[i][j] * root[j] for j in range(8)) for i in range(8)]
    basis = integer_kernel([pair])
    g = [[sum(basis[a][i] * e8[i][j] * basis[b][j]
              for i in range(8) for j in range(8)) for b in range(7)]
         for a in range(7)]
    return g


def _bw16_gram():
    """Barnes-Wall lattice: {x in Z^16 : x mod 2 in RM(1,4), sum(x) = 0 mod 4},
    rescaled so the form is (x.y)/2; even, det 2^8, minimum 4."""
    gens = []
    ones = [1] * 16
    gens.append(ones)
    for bit in range(4):
        gens.append([(j >> bit) & 1 for j in range(16)])
    # doubled D16 generators span {y in 2Z^16 : sum(y) = 0 mod 4}
    for i in range(15):
        row = [0] * 16
        row[i], row[i + 1] = 2, -2
        gens.append(row)
    row = [0] * 16
    row[14], row[15] = 2, 2
    gens.append(row)
    # Hermite-style basis preserving the index-2^12 row span (saturating
    # would be wrong here)
    basis = _row_space_basis(gens)
    if len(basis) != 16:
        raise AssertionError("Barnes-Wall generators do not span rank 16")
    g = [[sum(a * b for a, b in zip(r1, r2)) for r2 in basis] for r1 in basis]
    for i in range(16):
        for j in range(16):
            if g[i][j] % 2:
                raise AssertionError("Barnes-Wall pairing is not even")
            g[i][j] //= 2
    return g


def _row_space_basis(rows):
    """Hermite-style basis of the integer row span."""
    work = [list(map(int, r)) for r in rows if any(r)]
    m = len(work[0])
    basis = []
    col = 0
    while work and col < m:
        cand = [r for r in work if r[col]]
        if not cand:
            col += 1
            continue
        while True:
            cand.sort(key=lambda r: abs(r[col]))
            piv = cand[0]
            done = True
            for r in cand[1:]:
                q = r[col] // piv[col]
                for k in range(m):
                    r[k] -= q * piv[k]
                if r[col]:
                    done = False
            cand = [piv] + [r for r in cand[1:] if r[col]]
            if done or len(cand) == 1:
                break
        piv = cand[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        rest = [r for r in work if not r[col] or r is cand[0]]
        work = [r for r in work if r is not cand[0] and any(r)]
        for r in work:
            if r[col]:
                q = r[col] // piv[col]
                for k in range(m):
                    r[k] -= q * piv[k]
        work = [r for r in work if any(r)]
        col += 1
    return basis


def _lk3_gram():
    ii = standard("II11", 1)
    e8m = standard("E8").rescale(-1)
    l = ii.direct_sum(ii).direct_sum(ii).direct_sum(e8m).direct_sum(e8m)
    return l.gram


def standard(name, *args):
    """Construct a named lattice.

    Names: II11(N), Ipq(p, q, scale), A1, A2, E7, E8, BW16, Lambda_k(k),
    T_k(k), S_k(k), LK3.
    """
    if name == "II11":
        n = args[0] if args else 1
        if n <= 0:
            raise ValueError("II11 level must be positive")
        return Lattice([[0, n], [n, 0]], label=f"II11({n})")
    if name == "Ipq":
        p, q, scale = args
        diag = [scale] * p + [-scale] * q
        return Lattice([[diag[i] if i == j else 0 for j in range(p + q)]
                        for i in range(p + q)], label=f"I{p},{q}({scale})")
    if name == "A1":
        return Lattice([[2]], label="A1")
    if name == "A2":
        return Lattice([[2, -1], [-1, 2]], label="A2")
    if name == "E8":
        return Lattice(_e8_gram(), label="E8")
    if name == "E7":
        return Lattice(_e7_gram(), label="E7")
    if name == "BW16":
        return Lattice(_bw16_gram(), label="BW16")
    if name == "LK3":
        return Lattice(_lk3_gram(), label="LK3")
    if name == "Lambda_k":
        k = args[0]
        if not 1 <= k <= 9:
            raise ValueError("Lambda_k defined for 1 <= k <= 9")
        n = 10 - k
        gram = [[0] * n for _ in range(n)]
        gram[0][0] = 2
        for i in range(1, n):
            gram[i][i] = -2
        weyl = [Fraction(3, 2)] + [Fraction(-1, 2)] * (n - 1)
        return Lattice(gram, label=f"Lambda_{k}", weyl=weyl)
    if name == "T_k":
        k = args[0]
        lam = standard("Lambda_k", k)
        t = standard("II11", 2).direct_sum(lam, label=f"T_{k}")
        t.weyl = (Fraction(0), Fraction(0)) + lam.weyl
        return t
    if name == "S_k":
        k = args[0]
        return _s_k(k)
    raise ValueError(f"unknown lattice name {name!r}")


def _embed_t_k(k):
    """Primitive embedding of T_k = II11(2) + Lambda_k into LK3 (row vectors)."""
    if not 1 <= k <= 9:
        raise ValueError("k out of range")
    rows = []

    def vec(*pairs):
        v = [0] * 22
        for idx, val in pairs:
            v[idx] = val
        return v

    # blocks: II11 at 0..1, 2..3, 4..5; E8(-1) at 6..13 and 14..21
    rows.append(vec((0, 1), (2, 1)))          # e1 + e2
    rows.append(vec((1, 1), (3, 1)))          # f1 + f2
    rows.append(vec((4, 1), (5, 1)))          # h = e3 + f3, norm 2
    # orthogonal norm -2 vectors with primitive joint span, four per E8(-1)
    # block: {e1+e2, e1-e2, e3+e4, e5+e6} (any half-integer combination has
    # mixed integer/half coordinates or odd coordinate sum, so lies outside E8)
    euclid = [[1, 1, 0, 0, 0, 0, 0, 0],
              [1, -1, 0, 0, 0, 0, 0, 0],
              [0, 0, 1, 1, 0, 0, 0, 0],
              [0, 0, 0, 0, 1, 1, 0, 0]]
    half = Fraction(1, 2)
    e8_basis = [[2, 0, 0, 0, 0, 0, 0, 0],
                [-1, 1, 0, 0, 0, 0, 0, 0],
                [0, -1, 1, 0, 0, 0, 0, 0],
                [0, 0, -1, 1, 0, 0, 0, 0],
                [0, 0, 0, -1, 1, 0, 0, 0],
                [0, 0, 0, 0, -1, 1, 0, 0],
                [0, 0, 0, 0, 0, -1, 1, 0],
                [half] * 8]
    bt = transpose(e8_basis)
    coords = []
    for v in euclid:
        c = solve_rational(bt, v)
        if any(x.denominator != 1 for x in c):
            raise AssertionError("root is not in E8")
        coords.append([int(x) for x in c])
    need = 9 - k
    for i in range(need):
        block, idx = divmod(i, 4)
        if block > 1:
            raise AssertionError("too many orthogonal roots requested")
        base = 6 + 8 * block
        rows.append(vec(*[(base + j, coords[idx][j]) for j in range(8)]))
    return rows


def _s_k(k):
    lk3 = standard("LK3")
    rows = _embed_t_k(k)
    pairing_rows = mat_mul(rows, lk3.gram)
    ker = integer_kernel(pairing_rows)
    gram = [[sum(a[i] * lk3.gram[i][j] * b[j] for i in range(22) for j in range(22))
             for b in ker] for a in ker]
    return Lattice(gram, label=f"S_{k}")


# ---------------------------------------------------------------------------
# projections, reflections
# ---------------------------------------------------------------------------

def project_orthogonal(lat, v, sub_basis):
    """Orthogonal projection of v onto the rational span of sub_basis (rows of
    integer coordinate vectors), returned in sub_basis coordinates."""
    g = [[lat.pairing(a, b) for b in sub_basis] for a in sub_basis]
    rhs = [lat.pairing(v, b) for b in sub_basis]
    coeffs = solve_rational(g, rhs)
    return coeffs


def reflect(lat, v, root):
    """Reflection of v in a non-isotropic root: v - 2<v,r>/<r,r> r."""
    rr = lat.norm(root)
    if rr == 0:
        raise ValueError("cannot reflect in an isotropic vector")
    f = 2 * lat.pairing(v, root) / rr
    return tuple(Fraction(a) - f * Fraction(b) for a, b in zip(v, root))
