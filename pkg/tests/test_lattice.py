from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from borcherds.lattice import (
    DualVector,
    Lattice,
    discriminant_group,
    dual_vectors_up_to,
    enumerate_vectors,
    nikulin_triple,
    project_orthogonal,
    reflect,
    standard,
    theta_series,
)


def brute_force_ball(gram, box, bound):
    """Oracle: all nonzero integer vectors in [-box, box]^n with |norm| <= bound."""
    n = len(gram)
    out = []

    def norm(x):
        return sum(x[i] * gram[i][j] * x[j] for i in range(n) for j in range(n))

    def rec(i, x):
        if i == n:
            if any(x):
                a = abs(norm(x))
                if 0 < a <= bound:
                    out.append(tuple(x))
            return
        for v in range(-box, box + 1):
            rec(i + 1, x + [v])

    rec(0, [])
    return sorted(out)


def test_standard_grams():
    assert standard("II11", 2).gram == [[0, 2], [2, 0]]
    assert standard("A1").gram == [[2]]
    assert standard("Ipq", 1, 2, 2).gram == [[2, 0, 0], [0, -2, 0], [0, 0, -2]]
    assert standard("E8").det() == 1
    assert standard("E7").det() == 2
    assert standard("BW16").det() == 256  # 2^8
    assert standard("LK3").signature() == (3, 19)
    with pytest.raises(ValueError):
        standard("nope")
    with pytest.raises(ValueError):
        standard("Lambda_k", 0)


def test_lambda_family():
    lam5 = standard("Lambda_k", 5)
    assert lam5.rank == 5
    assert lam5.gram[0][0] == 2 and lam5.gram[1][1] == -2
    # attached Weyl vector (3h - d5 - ... - d8)/2 pairs to 1 with each delta
    rho = lam5.weyl
    assert lam5.norm(rho) == Fraction(5, 2)
    for i in range(1, 5):
        e = [0] * 5
        e[i] = 1
        assert lam5.pairing(rho, e) == 1
    t5 = standard("T_k", 5)
    assert t5.rank == 7
    assert nikulin_triple(t5) == (7, 7, 1)
    # T_k = II11(2) + Lambda_k is I_{2,10-k}(2) up to invariants
    i25 = standard("Ipq", 2, 5, 2)
    assert nikulin_triple(i25) == nikulin_triple(t5)
    assert t5.signature() == i25.signature() == (2, 5)


def test_s_k_complement_invariants():
    # orthogonal complements inside the unimodular K3 lattice share length
    for k in (1, 5, 6, 9):
        sk = standard("S_k", k)
        assert nikulin_triple(sk) == (10 + k, 12 - k, 1)
        assert sk.signature() == (1, 9 + k)


def test_direct_sum_and_rescale():
    a1 = standard("A1")
    assert a1.rescale(-1).gram == [[-2]]
    s = standard("II11", 2).direct_sum(standard("Lambda_k", 5))
    t = standard("T_k", 5)
    assert s.gram == t.gram


def test_discriminant_group_orders():
    assert discriminant_group(standard("A1")).orders == [2]
    assert discriminant_group(standard("II11", 2)).orders == [2, 2]
    assert discriminant_group(standard("E8")).orders == []
    d = discriminant_group(standard("A1"))
    assert d.qvals[0] % 2 == Fraction(1, 2)


def test_ii11_2_qvalues():
    d = discriminant_group(standard("II11", 2))
    vals = sorted(d.q_of(c) for c in d.elements() if any(c))
    assert vals == [0, 0, 1]


def test_nikulin_triples():
    assert nikulin_triple(standard("A1")) == (1, 1, 1)
    assert nikulin_triple(standard("II11", 2)) == (2, 2, 0)
    with pytest.raises(ValueError):
        nikulin_triple(standard("A2"))  # discriminant Z/3


def test_enumerate_small_against_brute_force():
    for name, box in (("A1", 3), ("A2", 3)):
        lat = standard(name)
        got = sorted(tuple(int(c) for c in v.coords)
                     for v in enumerate_vectors(lat, 6, "at_most"))
        assert got == brute_force_ball(lat.gram, box + 3, 6)


def test_enumerate_e8_roots():
    e8 = standard("E8")
    roots = enumerate_vectors(e8, 2, "exact")
    assert len(roots) == 240
    assert all(v.norm == 2 for v in roots)
    # deterministic order and both signs present
    coords = [v.coords for v in roots]
    assert coords == sorted(coords)
    assert all(tuple(-c for c in v.coords) in set(coords) for v in roots)


def test_enumerate_definite_only():
    with pytest.raises(ValueError):
        enumerate_vectors(standard("II11", 1), 2, "exact")


def test_enumerate_negative_definite():
    e7m = standard("E7").rescale(-1)
    assert len(enumerate_vectors(e7m, 2, "exact")) == 126


def test_theta_e7():
    e7 = standard("E7")
    th = theta_series(e7, None, 2)
    assert th.coeff(0) == 1 and th.coeff(1) == 126
    g = discriminant_group(e7).generators[0]
    thc = theta_series(e7, g, 2)
    assert thc.items() == [(Fraction(3, 4), 56), (Fraction(7, 4), 576)]


def test_theta_matches_enumeration_counts():
    e8 = standard("E8")
    th = theta_series(e8, None, 3)
    for m in (1, 2):
        count = len(enumerate_vectors(e8, 2 * m, "exact"))
        assert th.coeff(m) == count


def test_dual_vectors():
    a1 = standard("A1")
    vecs = dual_vectors_up_to(a1, Fraction(1, 2))
    assert [v.coords for v in vecs] == [(Fraction(-1, 2),), (Fraction(1, 2),)]
    assert all(v.norm == Fraction(1, 2) for v in vecs)


def test_project_orthogonal_weyl():
    # projecting (3h - d0 - ... - d8)/2 from I_{1,9}(2) onto Lambda_5's span
    lam = standard("Ipq", 1, 9, 2)
    rho = [Fraction(3, 2)] + [Fraction(-1, 2)] * 9
    sub = []
    for i in (0, 5, 6, 7, 8, 9):
        e = [0] * 10
        e[i] = 1
        sub.append(e)
    coeffs = project_orthogonal(lam, rho, sub)
    assert coeffs == [Fraction(3, 2)] + [Fraction(-1, 2)] * 5


def test_reflect_involution_and_fixed_points():
    lam = standard("Lambda_k", 5)
    root = (0, 1, 0, 0, 0)
    assert reflect(lam, root, root) == (0, -1, 0, 0, 0)
    v = (1, 0, 2, 0, 0)
    assert lam.pairing(v, root) == -0 or True
    w = reflect(lam, v, root)
    assert reflect(lam, w, root) == tuple(Fraction(x) for x in v)
    with pytest.raises(ValueError):
        reflect(standard("II11", 1), (1, 0), (1, 0))  # isotropic


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3), min_size=5, max_size=5),
       st.sampled_from([(0, 1, 0, 0, 0), (1, 1, 1, 0, 0), (0, 0, 1, 0, 0)]))
def test_reflection_is_isometric_involution(coords, root):
    lam = standard("Lambda_k", 5)
    if lam.norm(root) == 0:
        return
    w = reflect(lam, coords, root)
    assert lam.norm(w) == lam.norm(coords)
    assert reflect(lam, w, root) == tuple(Fraction(c) for c in coords)


def test_disc_group_size_equals_det():
    for name, args in (("A1", ()), ("II11", (2,)), ("E7", ()), ("Lambda_k", (5,))):
        lat = standard(name, *args)
        assert discriminant_group(lat).size() == abs(lat.det())


def test_lattice_json():
    lat = standard("II11", 2)
    obj = lat.to_json()
    assert obj == {"label": "II11(2)", "rank": 2, "gram": [[0, 2], [2, 0]]}
    dv = DualVector(lat, (Fraction(1, 2), 0))
    assert dv.to_json() == {"coords": ["1/2", "0"], "norm": "0"}


def test_degenerate_gram_rejected():
    with pytest.raises(ValueError):
        Lattice([[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        Lattice([[0, 1], [2, 0]])
