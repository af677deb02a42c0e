"""Derivation-twisted jets, derivation lifting, coefficient maps, towers."""

from fractions import Fraction as F

import pytest

from skewcert import series
from skewcert.errors import (
    CompatibilityFailure,
    ContextMismatch,
    HypothesisViolation,
    LowestCoeffNotUnit,
    PrecisionExhausted,
)
from skewcert.pbw import LieHom, free_nilpotent_class3, heisenberg, u_mul
from skewcert.scalar import Poly
from skewcert.series import (
    Derivation,
    Jet,
    JetRing,
    bipoly_const,
    bipoly_eps,
    bipoly_n1,
    bipoly_n2,
    bipoly_ops,
    check_leibniz,
    class3_tower,
    fraction_ops,
    heisenberg_tower,
    hom_phi_u,
    hom_phi_v,
    hom_phi_w,
    jet_add,
    jet_inv,
    jet_mul,
    jet_neg,
    jet_shift,
    jet_smul,
    jet_sub,
    jet_truncate,
    jets_agree,
    lift_derivation,
    series_hom,
    unit_criterion_audit,
)


@pytest.fixture(scope="module")
def QQ_ring():
    return JetRing(fraction_ops(), None, "t", 16)


# a small noncommutative base: Q[n1,n2] with delta = n2 * d/dn1
def dn1(f: Poly) -> Poly:
    return Poly(tuple(c.deriv() for c in f.coeffs)) * bipoly_n2()


@pytest.fixture(scope="module")
def D_ring():
    # triple products of Laurent jets overflow the default -8 floor
    return JetRing(bipoly_ops(), Derivation("n2 d/dn1", dn1), "t", 12, floor=-32)


def test_commutative_product(QQ_ring):
    one = QQ_ring.one_jet()
    t = QQ_ring.monomial(1)
    assert jet_mul(jet_add(one, t), jet_sub(one, t)).coeffs == {0: F(1), 2: F(-1)}


def test_geometric_inverse(QQ_ring):
    one = QQ_ring.one_jet()
    a = jet_add(one, QQ_ring.monomial(1))
    inv = jet_inv(a)
    assert all(inv.coeffs[i] == (-1) ** i for i in range(16))
    assert jets_agree(jet_mul(a, inv), one)
    assert jets_agree(jet_mul(inv, a), one)


def test_monomial_inverse(QQ_ring):
    assert jet_inv(QQ_ring.monomial(-1)).coeffs == {1: F(1)}


def test_crossing_rule_terminating(D_ring):
    # delta(n1) = n2, delta(n2) = 0: a t = t a - t^2 delta(a), exactly
    a = D_ring.const(bipoly_n1())
    lhs = jet_mul(a, D_ring.monomial(1))
    rhs = jet_sub(jet_shift(a, 1), D_ring.make({2: bipoly_n2()}))
    assert jets_agree(lhs, rhs)
    assert lhs.trunc >= series.EXACT  # the chain dies, so the product is exact


def test_negative_crossing(D_ring):
    # a t^-1 = t^-1 a + delta(a)
    a = D_ring.const(bipoly_n1())
    lhs = jet_mul(a, D_ring.monomial(-1))
    rhs = jet_add(jet_shift(a, -1), D_ring.const(bipoly_n2()))
    assert jets_agree(lhs, rhs)


def test_ring_axioms_random(D_ring, rnd):
    def rnd_jet():
        coeffs = {}
        for _ in range(3):
            c = bipoly_const(rnd.randint(-3, 3)) + bipoly_n1().scale(
                F(rnd.randint(-2, 2))
            ) + bipoly_n2().scale(F(rnd.randint(-2, 2)))
            coeffs[rnd.randint(-3, 5)] = c
        return D_ring.make(coeffs)

    for _ in range(60):
        a, b, c = rnd_jet(), rnd_jet(), rnd_jet()
        assert jets_agree(jet_mul(jet_mul(a, b), c), jet_mul(a, jet_mul(b, c)))
        assert jets_agree(jet_mul(a, jet_add(b, c)), jet_add(jet_mul(a, b), jet_mul(a, c)))
        assert jets_agree(jet_mul(jet_add(a, b), c), jet_add(jet_mul(a, c), jet_mul(b, c)))


def test_truncation_coherence(D_ring):
    hi = JetRing(D_ring.coeff, D_ring.delta, "t", 20)
    a_lo = jet_add(D_ring.const(bipoly_n1()), D_ring.monomial(-1))
    a_hi = jet_add(hi.const(bipoly_n1()), hi.monomial(-1))
    inv_lo = jet_inv(a_lo)
    inv_hi = jet_inv(a_hi)
    lifted = Jet(D_ring, dict(inv_hi.coeffs), inv_hi.trunc)
    assert jets_agree(jet_truncate(lifted, inv_lo.trunc), inv_lo)


def test_context_mismatch(QQ_ring, D_ring):
    with pytest.raises(ContextMismatch):
        jet_mul(QQ_ring.one_jet(), D_ring.one_jet())


def test_lowest_coeff_not_unit(D_ring):
    bad = D_ring.const(bipoly_n1())
    with pytest.raises(LowestCoeffNotUnit) as ei:
        jet_inv(bad)
    assert ei.value.coefficient == bipoly_n1()
    with pytest.raises(LowestCoeffNotUnit):
        jet_inv(D_ring.zero_jet())


def test_floor_exhaustion():
    ring = JetRing(fraction_ops(), None, "t", 8, floor=-2)
    with pytest.raises(PrecisionExhausted):
        ring.monomial(-3)


def test_leibniz_check(D_ring):
    ops = D_ring.coeff
    pairs = [(bipoly_n1(), bipoly_n1() * bipoly_n2()), (bipoly_n2(), bipoly_n1())]
    ok, _ = check_leibniz(D_ring.delta, ops, pairs)
    assert ok
    broken = Derivation("bad", lambda f: f)
    ok, witness = check_leibniz(broken, ops, pairs)
    assert not ok and witness is not None


def test_heisenberg_tower_crossing():
    tw = heisenberg_tower(12)
    lz, ly, lx = tw.levels
    y, z = tw.gens["y"], tw.gens["z"]
    # y t_x = t_x y - t_x^2 z
    lhs = jet_mul(y, lx.monomial(1))
    rhs = jet_sub(jet_shift(y, 1), jet_shift(z, 2))
    assert jets_agree(lhs, rhs)


def test_lifted_derivation_formulas():
    tw = heisenberg_tower(12)
    lz, ly, lx = tw.levels
    dx = tw.gens["delta_x"]
    zc = lz.monomial(-1)
    # delta_x(t_y) = -t_y z t_y = t_y^2 z (-1)
    assert jets_agree(dx(ly.monomial(1)), ly.make({2: jet_smul(F(-1), zc)}))
    for i in (2, 3, 4):
        assert jets_agree(dx(ly.monomial(i)), ly.make({i + 1: jet_smul(F(-i), zc)}))
    # delta_s(t_w^-1) = delta_s(w)
    assert jets_agree(dx(ly.monomial(-1)), ly.const(zc))


def test_lifted_derivation_leibniz(rnd):
    c3 = class3_tower(16)
    lw, lv, lu = c3.levels
    delta_u = lu.delta
    ops = lv.ops()

    def rnd_lv():
        return lv.make({rnd.randint(-2, 2): lw.make(
            {rnd.randint(-2, 2): bipoly_const(rnd.randint(-3, 3))}) for _ in range(2)})

    for _ in range(10):
        a, b = rnd_lv(), rnd_lv()
        lhs = delta_u(jet_mul(a, b))
        rhs = jet_add(jet_mul(delta_u(a), b), jet_mul(a, delta_u(b)))
        assert jets_agree(lhs, rhs, upto=14)


def test_lift_hypothesis_violation():
    tw = heisenberg_tower(8)
    lz, ly, lx = tw.levels
    with pytest.raises(HypothesisViolation):
        lift_derivation(ly, None, ly.one_jet(), "bad")


def test_unit_criterion_w_plus_v2():
    c3 = class3_tower(12)
    lw, lv, lu = c3.levels
    v, w = c3.gens["v"], c3.gens["w"]
    el = jet_add(w, jet_mul(v, v))
    ok, trail = unit_criterion_audit(el)
    assert ok
    assert [e["var"] for e in trail] == ["t_u", "t_v", "t_w"]
    assert trail[1]["min_ord"] == -2
    inv = jet_inv(el)
    assert jets_agree(jet_mul(el, inv), lu.one_jet())
    assert jets_agree(jet_mul(inv, el), lu.one_jet())


def test_series_hom_examples():
    src = class3_tower(10)
    dst = heisenberg_tower(10)
    lw, lv, lu = src.levels
    lz, ly, lx = dst.levels
    phi_w = hom_phi_w(src, dst)
    assert jets_agree(phi_w(lw.make({1: bipoly_n1()})), lz.zero_jet())
    assert jets_agree(
        phi_w(lw.make({2: bipoly_const(3) + bipoly_n1()})), lz.make({2: F(3)})
    )
    phi_u = hom_phi_u(src, dst)
    assert jets_agree(phi_u(src.gens["u"]), lx.monomial(-1))


def test_series_hom_compat_failure():
    # augmentation against a nonzero target derivation cannot intertwine
    src_d = JetRing(bipoly_ops(), Derivation("d", dn1), "s", 8)
    tgt_d = JetRing(fraction_ops(), Derivation("e", lambda q: q), "z", 8)
    with pytest.raises(CompatibilityFailure):
        series_hom(src_d.const(bipoly_const(1)), bipoly_eps, tgt_d)


def test_phi_u_multiplicative(rnd):
    src = class3_tower(10)
    dst = heisenberg_tower(10)
    lw, lv, lu = src.levels
    phi_u = hom_phi_u(src, dst)

    def rnd_elem():
        out = {}
        for _ in range(2):
            out[rnd.randint(-2, 2)] = lv.make({rnd.randint(-2, 2): lw.make(
                {rnd.randint(-2, 2): bipoly_const(rnd.randint(-2, 2))})})
        return lu.make(out)

    for _ in range(25):
        a, b = rnd_elem(), rnd_elem()
        assert jets_agree(phi_u(jet_mul(a, b)), jet_mul(phi_u(a), phi_u(b)))


def test_compatibility_square(rnd):
    src = class3_tower(10)
    dst = heisenberg_tower(10)
    L3 = free_nilpotent_class3()
    H = heisenberg()
    from skewcert.pbw import rho_class3_to_heisenberg

    embed_L = LieHom(L3, [src.gens[k] for k in ("u", "v", "w", "n1", "n2")], src.ops())
    embed_H = LieHom(H, [dst.gens[k] for k in ("x", "y", "z")], dst.ops())
    rho = rho_class3_to_heisenberg(L3, H)
    phi_u = hom_phi_u(src, dst)
    gens = [L3.gen("u"), L3.gen("v"), L3.gen("w"),
            u_mul(L3.gen("u"), L3.gen("v")), u_mul(L3.gen("v"), L3.gen("w"))]
    for g in gens:
        assert jets_agree(phi_u(embed_L(g)), embed_H(rho(g)))
    for _ in range(10):
        g = u_mul(rnd.choice(gens), rnd.choice(gens))
        assert jets_agree(phi_u(embed_L(g)), embed_H(rho(g)))
