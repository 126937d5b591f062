"""Bias ``r_b`` and secondary cuspidal curvature ``r_c`` at singular points.

The null vector field ``eta = (v a1(u) + v^2 a2(u)) d/du + d/dv`` is built at
the chosen point and ``eta^k f`` is obtained by applying it literally to the
Taylor-shifted germ.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ..errors import DegenerateFrame, NotInS2, OrderTooLow
from ..frontal import as_germ
from ..germs import FrontalNormalForm
from ..jets import Jet, cross, det3, dot, invert_unit
from .trajectory import parameter_value, reduced_expansion, solve_singular_u

__all__ = [
    "BiasSecondary",
    "BiasSeries",
    "EtaFrame",
    "bias_secondary",
    "bias_secondary_at",
    "bias_secondary_series",
    "eta_frame",
    "hp_context",
    "printed_ell",
]

log = logging.getLogger(__name__)

HP_DIGITS = 50


@dataclass(frozen=True)
class EtaFrame:
    point: tuple
    a1: Jet
    a2: Jet
    f_u: tuple
    eta: tuple
    residuals: tuple
    ell: object
    ell_printed: object
    ell_mismatch: bool

    def eta_k(self, k):
        """``eta^k f`` at the point (``k = 1..5``)."""
        return self.eta[k - 1]

    def residuals_vanish(self, tol=0):
        """``eta f``, ``<f_u, eta^2 f>`` and ``<f_u, eta^3 f>`` vanish along ``v = 0`` as jets."""
        first, second, third = self.residuals
        return all(j.is_zero(tol) for j in (*first, second, third))


def printed_ell(fnf: FrontalNormalForm, s):
    """The displayed closed form of ``ell`` at ``u = 0`` (``s~^4 = s^2``)."""
    f24 = fnf.f24.evaluate((0, 0, s))
    f34 = fnf.f34.evaluate((0, 0, s))
    c0 = fnf.c0.evaluate((0, 0, s))
    st4 = s * s
    return -3 * st4 * f24 * f34 / (1 - st4 * f24 * c0 * f34 + st4 * f34 ** 2)


def eta_frame(fnf: FrontalNormalForm, u0, s, *, ell_tol=1e-9) -> EtaFrame:
    """Null vector field data at the singular point ``(u0, 0)`` of ``f(., ., s)``."""
    c1 = fnf.c1.evaluate((u0, 0, s))
    tol = 0 if fnf.c1.is_exact and isinstance(u0, (int, Fraction)) and isinstance(s, (int, Fraction)) \
        else 1e-10
    if abs(c1) > tol:
        raise NotInS2(f"c1({u0}, {s}) = {c1} != 0")
    g = [c.taylor_shift((u0, 0, s)).restrict("s") for c in as_germ(fnf)]
    fu = [c.differentiate("u") for c in g]
    fu0 = [c.restrict("v") for c in fu]
    fvv0 = [c.diff("v", "v").restrict("v") for c in g]
    fvvv0 = [c.diff("v", "v", "v").restrict("v") for c in g]
    inv = invert_unit(dot(fu0, fu0))
    a1 = -dot(fvv0, fu0) * inv
    a2 = -dot(fvvv0, fu0) * inv * Fraction(1, 2)
    coef = a1.mul_monomial((0, 1, 0)) + a2.mul_monomial((0, 2, 0))
    powers = []
    cur = g
    for _ in range(5):
        cur = [coef * c.differentiate("u") + c.differentiate("v") for c in cur]
        if min(c.order for c in cur) < 0:
            raise OrderTooLow("eta^5 f needs a higher truncation order")
        powers.append(cur)
    values = tuple(tuple(c.constant for c in p) for p in powers)
    residuals = (
        tuple(c.restrict("v") for c in powers[0]),
        dot(fu0, [c.restrict("v") for c in powers[1]]),
        dot(fu0, [c.restrict("v") for c in powers[2]]),
    )
    e2, e3 = values[1], values[2]
    n2 = dot(e2, e2)
    if n2 == 0:
        raise DegenerateFrame("eta^2 f vanishes")
    ell = dot(e3, e2) / n2
    ell_p = printed_ell(fnf, s)
    mismatch = abs(float(ell) - float(ell_p)) > ell_tol
    if mismatch:
        log.warning("ell from eta^3 f = ell eta^2 f is %.17g; printed closed form gives %.17g",
                    float(ell), float(ell_p))
    return EtaFrame(point=(u0, s), a1=a1, a2=a2, f_u=tuple(c.constant for c in fu0),
                    eta=values, residuals=residuals, ell=ell, ell_printed=ell_p,
                    ell_mismatch=mismatch)


def hp_context():
    """Private mpmath context at ``HP_DIGITS``; the global one is not thread-safe."""
    ctx = mpmath.MPContext()
    ctx.dps = HP_DIGITS
    return ctx


def _mp(ctx, x):
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / x.denominator
    return ctx.mpf(x)


@dataclass(frozen=True)
class BiasSecondary:
    r_b: float
    r_c: float
    r_b_hp: object
    r_c_hp: object
    frame: EtaFrame


def bias_secondary(fnf: FrontalNormalForm, u0, s, frame: EtaFrame | None = None) -> BiasSecondary:
    """``r_b`` and ``r_c`` from their defining quotients at ``(u0, 0, s)``.

    Exact inputs are evaluated at 50 significant digits (``*_hp`` fields).
    """
    if frame is None:
        frame = eta_frame(fnf, u0, s)
    fu = frame.f_u
    e2, e4, e5 = frame.eta_k(2), frame.eta_k(4), frame.eta_k(5)
    x = cross(fu, e2)
    x2 = dot(x, x)
    if x2 == 0:
        raise DegenerateFrame("f_u x eta^2 f vanishes")
    ell = frame.ell
    num_b = dot(fu, fu) * det3(fu, e2, e4)
    num_c = det3(fu, e2, [3 * e5[k] - 10 * ell * e4[k] for k in range(3)])
    ctx = hp_context()
    fu2 = _mp(ctx, dot(fu, fu))
    rb = _mp(ctx, num_b) / _mp(ctx, x2) ** ctx.mpf(1.5)
    rc = fu2 ** ctx.mpf(1.25) * _mp(ctx, num_c) / _mp(ctx, x2) ** ctx.mpf(1.75)
    return BiasSecondary(float(rb), float(rc), rb, rc, frame)


def bias_secondary_at(fnf: FrontalNormalForm, st, branch=1) -> BiasSecondary:
    """Invariants at the singular point ``u(branch * s~)``."""
    s = parameter_value(fnf, st)
    roots = solve_singular_u(fnf, st)
    u0 = roots[0] if branch > 0 else roots[-1]
    return bias_secondary(fnf, u0, s)


@dataclass(frozen=True)
class BiasSeries:
    rb0: object
    rb1: object
    rc0: float
    rc1: float

    def r_b(self, st):
        return self.rb0 + self.rb1 * st

    def r_c(self, st):
        return self.rc0 + self.rc1 * st


def bias_secondary_series(fnf: FrontalNormalForm) -> BiasSeries:
    """Linear expansions of ``r_b`` and ``r_c`` in ``s~`` at ``u(s~)``."""
    exp, _ = reduced_expansion(fnf)
    d20 = exp.d20
    c2 = fnf.c2.constant
    c2u = fnf.c2[(1, 0, 0)]
    c0u = fnf.c0[(1, 0, 0)]
    f21 = fnf.f21.constant
    c3 = fnf.c3.constant
    c3u = fnf.c3[(1, 0, 0)]
    root2 = 45 * math.sqrt(2)
    return BiasSeries(rb0=6 * c2, rb1=6 * (-2 * f21 * c0u + c2u) / d20,
                      rc0=root2 * float(c3), rc1=root2 * float(c3u) / float(d20))
