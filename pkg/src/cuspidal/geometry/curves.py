"""Self-intersection curves and their geodesic and normal curvatures."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import (
    BranchSingular,
    DegenerateBranch,
    FlatCurve,
    InvariantViolation,
    NoConvergence,
    NoRealBranch,
)
from ..frontal import as_germ, unit_normal
from ..germs import FrontalNormalForm, _unweight
from ..jets import Jet, cross, det3, dot, exact_sqrt, invert_unit, sqrt_unit
from ..numerics import richardson
from .trajectory import parameter_value, solve_singular_u

__all__ = [
    "BranchCurvatures",
    "SelfIntersectionBranch",
    "SICurvatureLimits",
    "branch_curvatures_s0",
    "branch_curvatures_traced",
    "classical_curvatures",
    "even_curve_curvatures",
    "intersection_function",
    "si_curvature_limits",
    "si_curvatures_at",
    "trace_self_intersection",
]


def _norm(x):
    return math.sqrt(sum(float(c) ** 2 for c in x))


def classical_curvatures(c1, c2, nu):
    """Geodesic and normal curvature from ``c'``, ``c''`` and the surface normal."""
    speed = _norm(c1)
    return (float(det3(c1, c2, nu)) / speed ** 3, float(dot(c2, nu)) / speed ** 2)


def even_curve_curvatures(chat, nu, eps=1, var="v"):
    """One-sided curvatures at ``v = 0`` of a curve whose 4-jet is even.

    ``chat`` holds three jets in ``var``; ``nu`` is the unit normal at ``v = 0``.
    """
    k = {"u": 0, "v": 1, "s": 2}[var]

    def coeff(j, n):
        e = [0, 0, 0]
        e[k] = n
        return j[tuple(e)]

    exact = all(getattr(c, "is_exact", True) for c in chat)
    scale = max(abs(float(coeff(c, n))) for c in chat for n in (2, 4))
    tol = 0 if exact else 1e-9 * max(1.0, scale)
    if any(abs(coeff(c, n)) > tol for c in chat for n in (1, 3)):
        raise InvariantViolation("curve 4-jet is not even")
    c2 = [2 * coeff(c, 2) for c in chat]
    c4 = [24 * coeff(c, 4) for c in chat]
    n2 = dot(c2, c2)
    if n2 == 0:
        raise FlatCurve("c_vv(0) = 0")
    n = exact_sqrt(n2)
    kg = eps * det3(c2, c4, nu) / (3 * n2 * n)
    kn = dot(c4, nu) / (3 * n2)
    return kg, kn


def intersection_function(fnf: FrontalNormalForm) -> Jet:
    """``i(u, v, s) = c1(u, s) + v^2 c3(u, v^2, s)``."""
    return fnf.c1 + _unweight(fnf.c3).mul_monomial((0, 2, 0))


def _at(j: Jet, *point):
    return j.evaluate(point)


@dataclass(frozen=True)
class SelfIntersectionBranch:
    s: object
    u0: object
    u_vv: object
    u_vvvv: object
    u_jet: Jet
    samples: tuple = field(default_factory=tuple)

    def u(self, v):
        return self.u_jet.evaluate((0, v, 0)) + self.u0


def _implicit_u_of_v(i_shift: Jet):
    """``du(v)`` with ``i_shift(du(v), v) = 0`` by constant-derivative iteration."""
    # the base point is a root; a float root leaves rounding noise in the constant
    i_shift = i_shift.filter(lambda e: e != (0, 0, 0))
    d = i_shift[(1, 0, 0)]
    du = Jet({}, i_shift.order)
    for _ in range(i_shift.order + 1):
        r = i_shift.compose([du, None, None])
        du = Jet(dict(du.items()), r.order) - r * (1 / d)
        du = du.filter(lambda e: e != (0, 0, 0))
    return du


def trace_self_intersection(fnf: FrontalNormalForm, s, u0=None, vs=()):
    """Follow ``i(u, v, s) = 0`` from the singular point ``(u0, 0)``.

    Returns the closed-form ``u_vv``, ``u_vvvv``, the jet solution ``u(v)`` and
    Newton-continued samples ``(v, u)`` with ``|i| < 1e-12``.
    """
    i = intersection_function(fnf)
    if u0 is None:
        from ..frontal import singular_sets

        roots = singular_sets(fnf, s).s2
        if not roots:
            raise NoRealBranch(f"no singular point on v = 0 at s = {s}")
        u0 = roots[-1]
    c1u = _at(fnf.c1.diff("u"), u0, 0, s)
    if c1u == 0:
        raise BranchSingular("i_u vanishes at the base point")
    c1uu = _at(fnf.c1.diff("u", "u"), u0, 0, s)
    c3 = _at(fnf.c3, u0, 0, s)
    c3u = _at(fnf.c3.diff("u"), u0, 0, s)
    c3w = _at(fnf.c3.diff("w"), u0, 0, s)
    u_vv = -2 * c3 / c1u
    u_vvvv = -12 * (2 * c1u ** 2 * c3w - 2 * c1u * c3u * c3 + c1uu * c3 ** 2) / c1u ** 3
    i_shift = i.taylor_shift((u0, 0, s)).restrict("s")
    du = _implicit_u_of_v(i_shift)

    samples = []
    iu = i.diff("u")
    u = float(u0)
    for v in vs:
        u = float(du.evaluate((0, v, 0))) + float(u0) if not samples else u
        for _ in range(50):
            val = float(i.evaluate((u, v, s)))
            der = float(iu.evaluate((u, v, s)))
            if abs(der) < 1e-14:
                raise BranchSingular(f"i_u vanishes near v = {v}")
            step = val / der
            u -= step
            if abs(step) < 1e-16 * max(1.0, abs(u)):
                break
        if abs(float(i.evaluate((u, v, s)))) >= 1e-12:
            raise NoConvergence(f"self-intersection trace failed at v = {v}")
        samples.append((v, u))
    return SelfIntersectionBranch(s, u0, u_vv, u_vvvv, du, tuple(samples))


def _normal_at_v0(g_shift):
    """Unit normal at the base point of a germ shifted there (``f_v = 0`` on ``v = 0``)."""
    fu = [c[(1, 0, 0)] for c in g_shift]
    fvv = [2 * c[(0, 2, 0)] for c in g_shift]
    n = cross(fu, fvv)
    nn = _norm(n)
    return tuple(float(x) / nn for x in n)


def si_curvatures_at(fnf: FrontalNormalForm, st, branch=1):
    """One-sided curvatures at ``v = 0`` of the self-intersection curve through ``u(+-s~)``.

    ``branch`` picks the root ``u(branch * s~)``; the limit is taken from ``v > 0``.
    """
    s = parameter_value(fnf, st)
    roots = solve_singular_u(fnf, st)
    u0 = roots[0] if branch > 0 else roots[-1]
    tr = trace_self_intersection(fnf, s, u0)
    g = as_germ(fnf)
    g_shift = [c.taylor_shift((u0, 0, s)).restrict("s") for c in g]
    chat = [c.compose([tr.u_jet, None, None]) for c in g_shift]
    nu = _normal_at_v0(g_shift)
    kg, kn = even_curve_curvatures(chat, nu, eps=1)
    return float(kg), float(kn)


@dataclass(frozen=True)
class SICurvatureLimits:
    kappa_g_closed: float
    kappa_n_closed: float
    kappa_g_oracle: float
    kappa_n_oracle: float
    samples: tuple


def si_curvature_limits(fnf: FrontalNormalForm, *, st0=1e-3, count=4, branch=1):
    """Leading terms of ``kappa_g``, ``kappa_n`` along self-intersections as ``s~ -> 0``.

    The closed form is the signed display ``(-2 f21 c3 + (c1)_uu) / c3``; the
    oracle extrapolates the jet-level curvatures at ``s~ = st0 * 2^-i``.  Both
    ``kappa`` series contain odd powers of ``s~``, so the extrapolation uses
    exponents 1, 2, 3.
    """
    c3 = fnf.c3.constant
    c1uu = 2 * fnf.c1[(2, 0, 0)]
    if c3 == 0 or c1uu == 0:
        raise DegenerateBranch("need (c1)_uu(0,0) != 0 and c3(0,0,0) != 0")
    f21 = fnf.f21.constant
    f31 = fnf.f31.constant
    kg_closed = float((-2 * f21 * c3 + c1uu) / c3)
    kn_closed = float(2 * f31)
    sts = [st0 * 2.0 ** -k for k in range(count)]
    vals = [si_curvatures_at(fnf, st, branch) for st in sts]
    exps = list(range(1, count))
    kg = richardson(sts, [v[0] for v in vals], exps)
    kn = richardson(sts, [v[1] for v in vals], exps)
    return SICurvatureLimits(kg_closed, kn_closed, kg, kn, tuple(zip(sts, vals)))


@dataclass(frozen=True)
class BranchCurvatures:
    kappa_g: object
    kappa_n: object
    kappa_g_oracle: float
    kappa_n_oracle: float
    vprime_sq: object


def _branch_slope_jet(fnf: FrontalNormalForm):
    """``w(u)`` with ``v(u) = u w(u)`` solving ``i(u, v, 0) = 0``, ``w(0) > 0``."""
    c1 = fnf.c1.restrict("s")
    h = c1.divide_by_var("u", 2)
    c3 = _unweight(fnf.c3).restrict("s")
    m = h.order
    u = Jet.var("u", m)
    w = Jet.const(exact_sqrt(-(h.constant / c3.constant)), m)
    for _ in range(m + 1):
        c3_on = c3.compose([u, u * w, None])
        w = sqrt_unit(-h * invert_unit(c3_on))
    return w


def branch_curvatures_s0(fnf: FrontalNormalForm) -> BranchCurvatures:
    """Curvatures of the ``s = 0`` self-intersection branches at the origin.

    Closed form ``((2 f21 c3 - (c1)_uu) / c3, 2 f31)`` next to a Frenet
    computation along the jet branch ``v(u)``.
    """
    c3 = fnf.c3.constant
    c1uu = 2 * fnf.c1[(2, 0, 0)]
    if not c1uu * c3 < 0:
        raise NoRealBranch("needs (c1)_uu(0,0) * c3(0,0,0) < 0")
    f21 = fnf.f21.constant
    f31 = fnf.f31.constant
    kg = (2 * f21 * c3 - c1uu) / c3
    kn = 2 * f31
    w = _branch_slope_jet(fnf)
    u = Jet.var("u", w.order)
    g = as_germ(fnf)
    zero = Jet({}, w.order)
    curve = [c.compose([u, u * w, zero]) for c in g]
    nu = unit_normal(fnf).nu
    nu0 = [c.constant for c in nu]
    c1v = [c[(1, 0, 0)] for c in curve]
    c2v = [2 * c[(2, 0, 0)] for c in curve]
    kg_o, kn_o = classical_curvatures(c1v, c2v, nu0)
    return BranchCurvatures(kg, kn, kg_o, kn_o, -c1uu / (2 * c3))


def branch_curvatures_traced(fnf: FrontalNormalForm, *, u0=1e-3, count=4):
    """Numeric Frenet oracle: trace ``i(u, v, 0) = 0`` at ``u = u0 2^-k`` and extrapolate.

    Derivatives of ``v(u)`` come from implicit differentiation at each traced
    point and the normal is ``sign(v) (f_u x f_v) / |f_u x f_v|``.
    """
    if not 2 * fnf.c1[(2, 0, 0)] * fnf.c3.constant < 0:
        raise NoRealBranch("needs (c1)_uu(0,0) * c3(0,0,0) < 0")
    i = intersection_function(fnf)
    g = as_germ(fnf)
    d = {key: j for key, j in (
        ("i", i), ("iu", i.diff("u")), ("iv", i.diff("v")), ("iuu", i.diff("u", "u")),
        ("iuv", i.diff("u", "v")), ("ivv", i.diff("v", "v")))}
    fd = {k: [c.diff(*k) for c in g] for k in (("u",), ("v",), ("u", "u"), ("u", "v"), ("v", "v"))}
    slope = math.sqrt(-float(fnf.c1[(2, 0, 0)]) / float(fnf.c3.constant))
    us = [u0 * 2.0 ** -k for k in range(count)]
    kgs, kns = [], []
    for u in us:
        v = slope * u
        for _ in range(60):
            val = float(d["i"].evaluate((u, v, 0)))
            der = float(d["iv"].evaluate((u, v, 0)))
            step = val / der
            v -= step
            if abs(step) < 1e-17:
                break
        p = (u, v, 0)
        ev = {k: float(j.evaluate(p)) for k, j in d.items()}
        vp = -ev["iu"] / ev["iv"]
        vpp = -(ev["iuu"] + 2 * ev["iuv"] * vp + ev["ivv"] * vp ** 2) / ev["iv"]
        F = {k: [float(c.evaluate(p)) for c in comps] for k, comps in fd.items()}
        cp = [F[("u",)][k] + F[("v",)][k] * vp for k in range(3)]
        cpp = [F[("u", "u")][k] + 2 * F[("u", "v")][k] * vp + F[("v", "v")][k] * vp ** 2
               + F[("v",)][k] * vpp for k in range(3)]
        n = cross(F[("u",)], F[("v",)])
        nn = _norm(n) * (1 if v > 0 else -1)
        nu = [x / nn for x in n]
        kg, kn = classical_curvatures(cp, cpp, nu)
        kgs.append(kg)
        kns.append(kn)
    exps = list(range(1, count))
    return richardson(us, kgs, exps), richardson(us, kns, exps)
