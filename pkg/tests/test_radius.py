import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import digamma

from semigen.errors import BadParams, BadRange, OutOfStatedRange, TruncationWarning
from semigen.functions import (
    hypergeometric_extremal,
    first_branch_extremal,
    second_branch_extremal,
    koebe,
    two_point_herglotz,
)
from semigen.radius import (
    CASE1,
    CASE2,
    CASE3,
    ClassSpec,
    PhiTarget,
    RadiusQuery,
    RadiusResult,
    beta_star,
    convexity_radius_fpsi1,
    decay_rate,
    eqnf3_cos_theta,
    k0,
    k0_janowski,
    k1,
    kappa,
    lemma_functional_min,
    phi_inf_re,
    radius_a_beta,
    radius_case1,
    radius_case1_printed,
    radius_ithm,
    radius_janowski_closed_form,
    radius_numeric_oracle,
    tuan_anh_bound,
)
from semigen.series import identity

E = math.e
SQRT5_2 = math.sqrt(5) - 2


def kappa_digamma(beta):
    # 1 - 2 sum_j (-1)^(j-1)/(j s + 1), summed with the digamma identity
    s = 1 - beta
    a = 1 + 1 / s
    return 1 - (digamma((a + 1) / 2) - digamma(a / 2)) / s


def test_kappa_values():
    assert kappa(1.0) == 0.0
    assert kappa(0.0) == pytest.approx(2 * math.log(2) - 1, abs=1e-10)
    assert kappa(0.5) == pytest.approx(3 - 4 * math.log(2), abs=1e-10)
    with pytest.raises(BadParams):
        kappa(1.2)


@pytest.mark.parametrize("beta", [0.0, 0.1, 0.33, 0.6, 0.9, 0.99])
def test_kappa_matches_digamma_series(beta):
    assert kappa(beta) == pytest.approx(kappa_digamma(beta), abs=1e-10)


def test_kappa_strictly_decreasing():
    vals = [kappa(b) for b in np.linspace(0, 1, 100)]
    assert all(x > y for x, y in zip(vals, vals[1:]))


def test_k0_values_and_range():
    assert k0(0.5) == pytest.approx((11 - math.sqrt(13)) / 27, abs=1e-12)
    assert k0(0.0) == pytest.approx(0.1, abs=1e-14)
    assert k0(1.0) == pytest.approx(1.0, abs=1e-14)
    vals = [k0(m) for m in np.linspace(0, 1, 101)]
    assert min(vals) >= 0.1 - 1e-12 and max(vals) <= 1 + 1e-12
    assert k1(0.0) == 0.5


def test_radius_ithm_examples():
    assert radius_ithm(0, 0.5).r == pytest.approx(SQRT5_2, abs=1e-12)
    assert radius_ithm(0, 2 / (1 + E)).r == pytest.approx(0.219887, abs=5e-7)
    res = radius_ithm(0, 0)
    assert res.r == pytest.approx(math.sqrt(2) - 1, abs=1e-12) and res.branch == CASE1
    res = radius_ithm(0.5, 0)
    assert res.branch == CASE3 and res.r == pytest.approx(math.sqrt(0.5), abs=1e-12)


def test_case1_stable_form_matches_printed_form():
    for k in (0.0, 0.05, 0.1, 0.3, 0.45):
        for m in (0.0, 0.2, 0.5, 0.9):
            if k <= k0(m):
                assert radius_case1(k, m) == pytest.approx(radius_case1_printed(k, m), abs=1e-12)


def test_case1_limits():
    # printed form is 0/0 at k = 1/2 and at m = 1; the stable form takes the limit
    m = 0.9
    assert k0(m) > 0.5
    left = radius_case1_printed(0.5 - 1e-6, m)
    assert radius_case1(0.5, m) == pytest.approx(left, abs=1e-5)
    assert radius_ithm(0.3, 1.0).r == 0.0


@pytest.mark.parametrize("m", [0.0, 0.25, 0.5, 0.75])
def test_branches_meet_at_k0(m):
    t = k0(m)
    lo = radius_ithm(t - 1e-9, m)
    hi = radius_ithm(t + 1e-9, m)
    assert lo.branch == CASE1 and hi.branch == CASE2
    assert abs(lo.r - hi.r) < 1e-6


def test_case2_is_continuous_at_k1():
    m = 0.3
    t = k1(m)
    mid = radius_ithm(t, m)
    assert mid.branch == CASE3
    for eps in (1e-6, -1e-6):
        assert radius_ithm(t + eps, m).r == pytest.approx(mid.r, abs=1e-5)


@given(st.floats(0, 0.999), st.floats(0, 1))
@settings(max_examples=200, deadline=None)
def test_radius_in_unit_interval(k, m):
    res = radius_ithm(k, m)
    assert 0.0 <= res.r <= 1.0
    assert 0.1 - 1e-12 <= res.k0 <= 1 + 1e-12


def test_radius_query_validation():
    assert RadiusQuery(0.0, 0.5).solve().r == pytest.approx(SQRT5_2)
    with pytest.raises(BadParams):
        RadiusQuery(1.0, 0.5)
    with pytest.raises(BadParams):
        RadiusQuery(0.2, 1.5)


def test_phi_inf_re():
    for alpha in (0.0, 0.3, 0.75):
        assert PhiTarget.janowski(1 - 2 * alpha, -1).m == pytest.approx(alpha)
    sg = PhiTarget("sg")
    assert sg.m == pytest.approx(2 / (1 + E), abs=1e-15)
    assert phi_inf_re(sg, method="sample") == pytest.approx(sg.m, abs=1e-7)
    assert phi_inf_re(PhiTarget("parabolic"), method="sample") == pytest.approx(0.5, abs=1e-7)
    theta = np.linspace(0, 2 * np.pi, 2_000_001)
    brute = (1 + np.exp(np.cos(theta)) * np.cos(theta + np.sin(theta))).min()
    assert PhiTarget("rhoexp").m == pytest.approx(brute, abs=1e-9)
    with pytest.raises(BadParams):
        phi_inf_re(sg, samples=100)


def test_target_parsing():
    t = PhiTarget.parse("janowski:0,-1")
    assert (t.A, t.B) == (0.0, -1.0)
    assert PhiTarget.parse("janowski:A=0.5,B=-0.5").A == 0.5
    assert PhiTarget.parse("sg").tag == "sg"
    for bad in ("janowski:1", "janowski:-1,0", "moon", "sg:1"):
        with pytest.raises(BadParams):
            PhiTarget.parse(bad)


def test_radius_a_beta_examples():
    assert radius_a_beta(1, PhiTarget("parabolic")).r == pytest.approx(SQRT5_2, abs=1e-12)
    assert radius_a_beta(1, PhiTarget("rhoexp")).r == pytest.approx(0.372153, abs=5e-6)
    res = radius_a_beta(0, PhiTarget.janowski(1, -1))
    assert res.r == pytest.approx(radius_ithm(2 * math.log(2) - 1, 0).r, abs=1e-10)
    # a member of A_0 is starlike at least out to the class radius
    # here the condition holds out to the truncation's trust radius, which is flagged
    with pytest.warns(TruncationWarning):
        oracle = radius_numeric_oracle(hypergeometric_extremal(0.0, 1024), 0.0, tol=1e-7)
    assert oracle >= res.r - 1e-6


def test_beta_star():
    m = 2 / (1 + E)
    b = beta_star(m)
    assert kappa(b) == pytest.approx(k0(m), abs=1e-8)
    # explicit closed form of the crossover for the SG target
    rhs = (2 * (1 - 2 * E + E * E) * math.sqrt(1 + E + E * E) - 3 * E**3 - 3 * E + 2) / (6 * E * E - 10 * E**3)
    assert kappa(b) == pytest.approx(rhs, abs=1e-8)
    assert kappa(beta_star(0.5)) == pytest.approx((11 - math.sqrt(13)) / 27, abs=1e-8)
    assert beta_star(0.9) is None  # k0 above kappa(0): first branch for every beta


def sg_radius_closed_form(K, branch):
    if branch == CASE2:
        a = (E * K + K - E - E * E * K + (1 + E) * math.sqrt((E * E - 1) * (1 - K) * K)) / (E * E * (1 - 2 * K) + K)
        return math.sqrt(a)
    return (1 + E - 2 * E * K - math.sqrt(2 * (1 - K) * (1 - E * E * (2 * K - 1)))) / ((1 - E) * (1 - 2 * K))


def parabolic_radius_closed_form(K, branch):
    if branch == CASE2:
        return math.sqrt((5 * K + 3 - 8 * math.sqrt(2) * math.sqrt((1 - K) * K)) / (17 * K - 9))
    return (3 * K - 2 + math.sqrt(9 * K * K - 14 * K + 5)) / (1 - 2 * K)


@pytest.mark.parametrize("tag,formula", [("sg", sg_radius_closed_form), ("parabolic", parabolic_radius_closed_form)])
def test_named_target_closed_forms(tag, formula):
    target = PhiTarget(tag)
    for beta in np.linspace(0, 1, 11):
        res = radius_a_beta(beta, target)
        assert res.branch in (CASE1, CASE2)
        assert res.r == pytest.approx(formula(res.k, res.branch), abs=1e-10)


def test_starlike_order_closed_form_second_branch():
    for alpha in (0.0, 0.25, 0.5):
        for beta in (0.0, 0.2):
            K = kappa(beta)
            num = K * (alpha**2 - 6 * alpha + 4) - alpha**2 + 2 * alpha - 4 * math.sqrt(K * (1 - K) * (1 - alpha))
            den = K * (alpha**2 - 8 * alpha + 8) - (alpha - 2) ** 2
            res = radius_a_beta(beta, PhiTarget.janowski(1 - 2 * alpha, -1))
            if res.branch == CASE2:
                assert res.r == pytest.approx(math.sqrt(num / den), abs=1e-10)


def test_janowski_closed_form_examples():
    assert radius_janowski_closed_form(1, 1, -1).r == pytest.approx(math.sqrt(2) - 1, abs=1e-12)
    assert radius_janowski_closed_form(1, 0, -1).r == pytest.approx(radius_ithm(0, 0.5).r, abs=1e-10)
    assert radius_janowski_closed_form(1, -0.5, -1).r == pytest.approx(radius_ithm(0, 0.75).r, abs=1e-10)
    with pytest.raises(BadParams):
        radius_janowski_closed_form(0.5, -1, 0)


def test_janowski_closed_form_lattice():
    for A in (-0.5, 0.0, 0.3, 0.6, 1.0):
        for B in (-1.0, -0.9, -0.8, -0.7, -0.6):
            assert k0_janowski(A, B) == pytest.approx(k0((1 - A) / (1 - B)), abs=1e-12)
            for beta in (0.0, 0.5, 1.0):
                closed = radius_janowski_closed_form(beta, A, B)
                generic = radius_a_beta(beta, PhiTarget.janowski(A, B))
                assert closed.r == pytest.approx(generic.r, abs=1e-8)
                assert closed.branch == generic.branch


def two_point_functional_min(alpha, r, thetas=2001, angles=2001):
    # closed-form evaluation, independent of the series code
    th = np.linspace(0, np.pi, thetas)[:, None]
    z = r * np.exp(1j * np.linspace(0, 2 * np.pi, angles))[None, :]
    e = np.exp(1j * th)
    p = 0.5 * ((1 + z / e) / (1 - z / e) + (1 + z * e) / (1 - z * e))
    dp = 0.5 * (2 / e / (1 - z / e) ** 2 + 2 * e / (1 - z * e) ** 2)
    return ((1 - alpha) * z * dp / (alpha + (1 - alpha) * p)).real.min()


def test_tuan_anh_bound_examples():
    for r in np.arange(1, 10) / 10:
        assert tuan_anh_bound(0.0, r).bound == pytest.approx(-2 * r / (1 - r * r), abs=1e-12)
    assert tuan_anh_bound(0.0, 0.5).bound == pytest.approx(-4 / 3)
    res = tuan_anh_bound(0.4, 0.0)
    assert res.bound == 0.0 and res.branch == "R1leR2"
    res = tuan_anh_bound(0.9, 0.9)
    assert res.branch == "R2leR1"
    assert (res.R1, res.R2, res.a) == pytest.approx((1.29127, 0.905263, 1.852632), abs=1e-5)
    assert res.bound == pytest.approx(two_point_functional_min(0.9, 0.9), abs=1e-5)
    with pytest.raises(BadRange):
        tuan_anh_bound(1.0, 0.5)
    with pytest.raises(BadRange):
        tuan_anh_bound(0.5, 1.0)


@pytest.mark.parametrize("alpha,r", [(0.9, 0.9), (0.5, 0.8), (0.3, 0.7), (0.75, 0.5), (0.2, 0.6)])
def test_eqnf3_roots_attain_the_bound(alpha, r):
    res = tuan_anh_bound(alpha, r)
    assert res.branch == "R2leR1"
    roots = eqnf3_cos_theta(alpha, r)
    assert roots and all(-1 <= c <= 1 for c in roots)
    for c in roots:
        p = two_point_herglotz(math.acos(c), 4000)
        assert lemma_functional_min(p, alpha, r) == pytest.approx(res.bound, abs=1e-3)


def test_eqnf3_printed_transcription():
    # the two transcriptions coincide when the r^4 coefficient vanishes
    assert eqnf3_cos_theta(0.5, 0.8, "printed") == pytest.approx(eqnf3_cos_theta(0.5, 0.8))
    # elsewhere the printed one does not reproduce the bound
    res = tuan_anh_bound(0.9, 0.9)
    c = eqnf3_cos_theta(0.9, 0.9, "printed")[0]
    p = two_point_herglotz(math.acos(c), 4000)
    assert abs(lemma_functional_min(p, 0.9, 0.9) - res.bound) > 1e-2


def test_eqnf3_branch_guard():
    with pytest.raises(BadRange):
        eqnf3_cos_theta(0.0, 0.5)


def test_numeric_oracle_examples():
    assert radius_numeric_oracle(identity(64), 0.9) == 1.0
    assert radius_numeric_oracle(koebe(512), 0.5) == pytest.approx(1 / 3, abs=1e-6)
    f = first_branch_extremal(0.0, 512)
    assert radius_numeric_oracle(f, 0.0) == pytest.approx(math.sqrt(2) - 1, abs=1e-6)
    with pytest.raises(BadParams):
        radius_numeric_oracle(f, 0.0, tol=0.1)


@pytest.mark.parametrize("k", [0.0, 0.2, 0.4])
@pytest.mark.parametrize("m", [0.0, 0.3, 0.5])
def test_formula_matches_oracle_on_extremal(k, m):
    res = radius_ithm(k, m)
    if res.branch == CASE1:
        f = first_branch_extremal(k, 512)
    else:
        theta = math.acos(eqnf3_cos_theta(k, res.r)[0])
        f = second_branch_extremal(k, theta, 512)
    assert radius_numeric_oracle(f, m, tol=1e-8) == pytest.approx(res.r, abs=1e-4)


def test_decay_rates():
    assert decay_rate(ClassSpec("janowski", {"A": 0, "B": -1})) == pytest.approx(0.5)
    assert decay_rate(ClassSpec("starlike_order", {"alpha": 0.5})) == pytest.approx(0.5)
    assert decay_rate(ClassSpec("u", {"lambda": 1 / 3})) == pytest.approx(0.0, abs=1e-15)
    assert decay_rate(ClassSpec("u", {"lambda": 0.25})) == pytest.approx(0.25 / 1.125)
    bs = decay_rate(ClassSpec("bs", {"alpha": 3 - 2 * math.sqrt(2)}))
    assert bs == pytest.approx((math.sqrt(2) - 1) ** (1 / (2 * (math.sqrt(2) - 1))), abs=1e-12)
    assert bs == pytest.approx(0.34511, abs=1e-4)
    for spec in (
        ClassSpec("u", {"lambda": 0.4}),
        ClassSpec("bs", {"alpha": 0.2}),
        ClassSpec("janowski", {"A": 0.2, "B": -1}),
    ):
        with pytest.raises(OutOfStatedRange):
            decay_rate(spec)
    with pytest.raises(BadParams):
        decay_rate(ClassSpec("u", {}))


def test_convexity_radius():
    r = convexity_radius_fpsi1()
    assert r == pytest.approx(0.414214, abs=1e-6)
    assert r**4 - 6 * r * r + 1 == pytest.approx(0, abs=1e-14)


def test_radius_result_round_trip():
    res = radius_a_beta(0.3, PhiTarget("sg"))
    assert RadiusResult.from_dict(res.to_dict()) == res
