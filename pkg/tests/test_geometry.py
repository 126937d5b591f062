import math
from dataclasses import replace
from fractions import Fraction as F

import pytest

from cuspidal import sampling
from cuspidal.errors import (
    DegenerateCurvature,
    DegenerateD2,
    FlatCurve,
    NoRealBranch,
    NotInS2,
    ZeroCurvature,
)
from cuspidal.geometry import (
    bias_secondary,
    bias_secondary_at,
    bias_secondary_series,
    branch_curvatures_s0,
    branch_curvatures_traced,
    eta_frame,
    even_curve_curvatures,
    invariant_report,
    parameter_value,
    recover_f24_f34,
    si_curvature_limits,
    solve_singular_u,
    trace_self_intersection,
    trajectory_frenet,
    trajectory_jet,
    trajectory_series,
)
from cuspidal.germs import FrontalNormalForm
from cuspidal.jets import Jet
from cuspidal.numerics import loglog_slope

N = 8
u, v, s = Jet.variables(N)


def fnf_c1(c1, **kw):
    kw.setdefault("c3", 1)
    return FrontalNormalForm.build(N, c1=c1, **kw)


# -- trajectory --------------------------------------------------------------------


def test_trajectory_series_examples(fs_plus):
    assert trajectory_series(fs_plus).coefficients == (1, 0, 0)
    ts = trajectory_series(fnf_c1(s + u * s + u ** 2))
    assert ts.alpha1 == 1 and ts.alpha2 == F(1, 2)
    assert trajectory_series(fnf_c1(s + u ** 2 + u ** 3)).alpha2 == F(-1, 2)


def test_trajectory_series_matches_jet(rng, rich_germ):
    for fnf in [rich_germ] + [sampling.random_frontal_form(rng, N, d2_sign=1) for _ in range(5)]:
        jet = trajectory_jet(fnf)
        ts = trajectory_series(fnf)
        assert (jet[(1, 0, 0)], jet[(2, 0, 0)], jet[(3, 0, 0)]) == ts.coefficients


def test_trajectory_negative_d2():
    fnf = fnf_c1(s + u * s - 4 * u ** 2 + u ** 3)
    ts = trajectory_series(fnf)
    assert ts.sign == -1 and ts.alpha1 == F(1, 2)
    assert parameter_value(fnf, F(1, 10)) == F(1, 100)
    up, _ = solve_singular_u(fnf, 0.01)
    assert abs(float(fnf.c1.evaluate((up, 0, 1e-4)))) < 1e-15
    assert abs(up - ts(0.01)) < 1e-7


def test_trajectory_degenerate():
    with pytest.raises(DegenerateD2):
        trajectory_series(fnf_c1(s + u ** 3))


def test_solve_singular_u(fs_plus):
    assert solve_singular_u(fs_plus, F(1, 4)) == (F(1, 4), F(-1, 4))
    assert solve_singular_u(fs_plus, 0.25) == pytest.approx((0.25, -0.25), abs=1e-15)
    assert solve_singular_u(fs_plus, 0) == (0,)
    fnf = fnf_c1(s + u * s + u ** 2)
    up, _ = solve_singular_u(fnf, 0.1)
    assert abs(float(fnf.c1.evaluate((up, 0, -0.01)))) < 1e-12
    assert abs(up - trajectory_series(fnf)(0.1)) < 1e-3


# -- self-intersections ----------------------------------------------------------------


def test_trace_self_intersection(fs_minus):
    br = trace_self_intersection(fs_minus, F(-1, 25), F(1, 5), vs=(0.05, 0.1))
    assert br.u_vv == 5
    uu_vv = 2 * br.u_jet[(0, 2, 0)]
    assert uu_vv == 5
    i = fs_minus.c1 - (v ** 2).truncate(fs_minus.c1.order)
    for vv, uu in br.samples:
        assert abs(uu ** 2 - 0.04 - vv ** 2) < 1e-12


def test_even_curve_examples():
    w = Jet.var("v", 6)
    zero = Jet({}, 6)
    assert even_curve_curvatures([w ** 2, w ** 4, zero], [0, 0, 1]) == (2, 0)
    assert even_curve_curvatures([w ** 2, zero, w ** 4], [0, 0, 1]) == (0, 2)
    assert even_curve_curvatures([w ** 2, zero, zero], [0, 0, 1]) == (0, 0)
    assert even_curve_curvatures([w ** 2, w ** 4, zero], [0, 0, 1], eps=-1)[0] == -2
    with pytest.raises(FlatCurve):
        even_curve_curvatures([w ** 4, zero, zero], [0, 0, 1])


def test_branch_curvatures_s0_examples(fs_minus):
    bc = branch_curvatures_s0(fs_minus)
    assert (bc.kappa_g, bc.kappa_n) == (2, 0)
    assert bc.vprime_sq == 1
    assert abs(bc.kappa_g_oracle) == pytest.approx(2, abs=1e-12)
    var = replace(fs_minus, f21=fs_minus.f21 + 1)
    assert branch_curvatures_s0(var).kappa_g == 4
    var = replace(var, f31=var.f31 + 2)
    assert branch_curvatures_s0(var).kappa_n == 4


def test_branch_curvatures_need_real_branch(fs_plus):
    with pytest.raises(NoRealBranch):
        branch_curvatures_s0(fs_plus)


def test_branch_curvatures_traced(fs_minus, rng):
    kg, kn = branch_curvatures_traced(fs_minus)
    assert abs(abs(kg) - 2) < 1e-6 and abs(kn) < 1e-6
    fnf = sampling.random_frontal_form(rng, N, d2_sign=1, c3_sign=-1)
    bc = branch_curvatures_s0(fnf)
    kg, kn = branch_curvatures_traced(fnf)
    assert abs(abs(kg) - abs(float(bc.kappa_g))) < 1e-5
    assert abs(kn - float(bc.kappa_n)) < 1e-5


def test_si_curvature_limits(fs_minus, rich_germ):
    lim = si_curvature_limits(fs_minus)
    assert abs(lim.kappa_g_closed) == 2 and lim.kappa_n_closed == 0
    assert abs(abs(lim.kappa_g_oracle) - 2) < 1e-6
    var = replace(fs_minus, f21=fs_minus.f21 + 1, f31=fs_minus.f31 + 3)
    lim = si_curvature_limits(var)
    assert abs(lim.kappa_g_closed) == 4 and lim.kappa_n_closed == 6
    assert abs(abs(lim.kappa_g_oracle) - 4) < 1e-5
    assert abs(lim.kappa_n_oracle - 6) < 1e-5
    lim = si_curvature_limits(rich_germ)
    closed = branch_curvatures_s0(rich_germ)
    assert abs(abs(lim.kappa_g_oracle) - abs(float(closed.kappa_g))) < 1e-6


# -- bias and secondary cuspidal curvature -------------------------------------------


def test_eta_frame(fs_plus):
    st = F(1, 10)
    sv = parameter_value(fs_plus, st)
    fr = eta_frame(fs_plus, st, sv)
    assert fr.a1.is_zero() if hasattr(fr.a1, "is_zero") else fr.a1 == 0
    assert fr.residuals_vanish()
    assert fr.ell == 0
    with pytest.raises(NotInS2):
        eta_frame(fs_plus, F(1, 2), sv)


def test_eta_frame_origin():
    fs0 = FrontalNormalForm.build(N, c1=u ** 2, c3=1)
    fr = eta_frame(fs0, 0, 0)
    assert fr.eta_k(2) == (0, 2, 0)
    assert fr.ell == 0


def test_bias_fs(fs_plus, fs_minus):
    for fnf, sign in ((fs_plus, 1), (fs_minus, -1)):
        bs = bias_secondary_at(fnf, F(1, 10))
        assert bs.r_b == 0
        assert bs.r_c == pytest.approx(sign * 45 * math.sqrt(2), rel=1e-14)
        ser = bias_secondary_series(fnf)
        assert (ser.rb0, ser.rb1, ser.rc1) == (0, 0, 0)
        assert ser.rc0 == pytest.approx(sign * 63.6396103067893)


def test_bias_series_examples():
    w = Jet.var("v", 4, weights=(1, 2, 1))
    fnf = FrontalNormalForm.build(N, c1=s + u ** 2, c2=Jet.var("u", 4, (1, 2, 1)), c3=1)
    assert bias_secondary_series(fnf).rb1 == 6
    fnf = FrontalNormalForm.build(N, c1=s + 4 * u ** 2, c3=1 + Jet.var("u", 3, (1, 2, 1)))
    ser = bias_secondary_series(fnf)
    assert ser.rc1 == pytest.approx(45 * math.sqrt(2) / 2)


def test_bias_c2_one_tends_to_six():
    exact = FrontalNormalForm.build(N, c1=s + u ** 2, c2=1, c3=1)
    assert bias_secondary_at(exact, 0.1).r_b == pytest.approx(6, abs=1e-12)
    fnf = FrontalNormalForm.build(N, c1=s + u ** 2 + u ** 3, c2=1 + u ** 2, c3=1)
    steps = (0.05, 0.1, 0.2)
    devs = [abs(bias_secondary_at(fnf, st).r_b - 6) for st in steps]
    assert devs[0] < devs[1] < devs[2] < 0.5
    assert loglog_slope(steps, devs) >= 1.9


def test_bias_series_remainder(rich_germ):
    ser = bias_secondary_series(rich_germ)
    errs = [abs(bias_secondary_at(rich_germ, st).r_b - float(ser.r_b(st))) for st in (0.01, 0.02)]
    assert 3 < errs[1] / errs[0] < 5


# -- trajectory Frenet data --------------------------------------------------------------


def test_trajectory_frenet_examples(fs_plus):
    tf = trajectory_frenet(fs_plus)
    assert tf.degenerate and tf.kappa == 0
    assert trajectory_frenet(fnf_c1(s + u ** 2, f21=1)).kappa == 2
    assert trajectory_frenet(fnf_c1(s + u ** 2, f21=1, f31=1)).kappa == pytest.approx(2 * math.sqrt(2))


def test_trajectory_frenet_oracle(rich_germ):
    tf = trajectory_frenet(rich_germ)
    assert tf.kappa == pytest.approx(tf.kappa_oracle, abs=1e-10)
    assert tf.kappa_prime_corrected == pytest.approx(tf.kappa_prime_oracle, abs=1e-9)
    assert tf.tau_corrected == pytest.approx(tf.tau_oracle, abs=1e-9)


def test_trajectory_frenet_requires_positive_d2():
    with pytest.raises(DegenerateD2):
        trajectory_frenet(fnf_c1(s - u ** 2, f21=1))


def test_recover_examples():
    assert recover_f24_f34(2, 0, 0, 1, 0, 0, 1) == (0, 0)
    a = recover_f24_f34(2.0, 0.3, 0.7, 1.0, 0.5, 0.25, 1.0)
    b = recover_f24_f34(2.0, 0.3, 0.7 / 2, 1.0, 0.5, 0.25, 2.0)
    assert b == pytest.approx((a[0] / 4, a[1] / 4))
    with pytest.raises(ZeroCurvature):
        recover_f24_f34(0, 0, 0, 0, 0, 0, 1)


def test_recover_round_trip(rich_germ):
    tf = trajectory_frenet(rich_germ)
    args = (tf.kappa, tf.tau_oracle, tf.kappa_prime_oracle, 1.0, 0.5, -1.0, 2.0)
    p, q = recover_f24_f34(*args)
    p2, _ = recover_f24_f34(*args, df21_0=2.0, variant="corrected")
    assert q == pytest.approx(2, abs=1e-9)
    assert p2 == pytest.approx(F(1, 3), abs=1e-9)
    assert p != pytest.approx(F(1, 3), abs=1e-3)


def test_invariant_report(rich_germ):
    rep = invariant_report(rich_germ, 0.05)
    for key in ("r_b", "r_c", "kappa_g", "kappa_n", "kappa", "tau", "kappa_prime"):
        assert getattr(rep, key) is not None
        assert rep.methods[key] in ("oracle", "closed-form", "series")
