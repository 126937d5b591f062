"""Curvature, torsion and curvature derivative of the singular-point trajectory.

``gamma(s~) = f(u(s~), 0, -s~^2)``.  Notation below: ``A = f21(0)``,
``B = f31(0)``, ``A1 = f21'(0)``, ``B1 = f31'(0)``, ``p = f24(0,0)``,
``q = f34(0,0)``, ``d = d20`` and ``n = sqrt(A^2 + B^2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import DegenerateCurvature, DegenerateD2, ZeroCurvature
from ..frontal import as_germ
from ..germs import FrontalNormalForm
from ..jets import Jet, cross, det3, dot, invert_unit, sqrt_unit
from .trajectory import reduced_expansion, trajectory_jet

__all__ = ["TrajectoryFrenet", "recover_f24_f34", "trajectory_curve", "trajectory_frenet"]


def trajectory_curve(fnf: FrontalNormalForm):
    """``gamma`` as three jets in ``t = s~`` (stored in the first slot)."""
    _, sign = reduced_expansion(fnf)
    u = trajectory_jet(fnf)
    t = Jet.var("u", u.order)
    zero = Jet({}, u.order)
    s = -sign * t * t
    return [c.compose([u, zero, s]) for c in as_germ(fnf)]


def _derivative(vec, k):
    return [c.differentiate("u", k) for c in vec]


@dataclass(frozen=True)
class TrajectoryFrenet:
    kappa: float
    kappa_oracle: float
    kappa_prime_printed: float | None
    kappa_prime_corrected: float | None
    kappa_prime_oracle: float | None
    tau_printed: float | None
    tau_corrected: float | None
    tau_oracle: float | None
    degenerate: bool


def _oracle(curve):
    g1 = _derivative(curve, 1)
    g2 = _derivative(curve, 2)
    g3 = _derivative(curve, 3)
    c = cross(g1, g2)
    c2 = dot(c, c)
    speed2 = dot(g1, g1)
    if c2.constant == 0:
        return 0.0, None, None
    num = sqrt_unit(c2.to_float())
    den = sqrt_unit(speed2.to_float()) ** 3
    kappa = num * invert_unit(den)
    tau = float(det3(g1, g2, g3).constant) / float(c2.constant)
    return float(kappa.constant), float(kappa[(1, 0, 0)]), tau


def trajectory_frenet(fnf: FrontalNormalForm) -> TrajectoryFrenet:
    """``kappa``, ``tau`` and ``kappa'`` at ``s~ = 0``: closed forms beside the jet Frenet oracle.

    ``*_printed`` use the displayed combinations literally, ``*_corrected``
    the combinations re-derived from the Frenet formulas.
    """
    exp, sign = reduced_expansion(fnf)
    if sign < 0:
        raise DegenerateD2("trajectory Frenet data assume d2(0) > 0")
    d = float(exp.d20)
    a, b = float(fnf.f21.constant), float(fnf.f31.constant)
    a1, b1 = float(fnf.f21[(1, 0, 0)]), float(fnf.f31[(1, 0, 0)])
    p, q = float(fnf.f24.constant), float(fnf.f34.constant)
    n = math.hypot(a, b)
    kappa = 2 * n
    k_o, kp_o, tau_o = _oracle(trajectory_curve(fnf))
    if n == 0:
        return TrajectoryFrenet(kappa, k_o, None, None, kp_o, None, None, tau_o, True)
    kp_printed = 6 * a * d * p / n + 6 * b * d * q / n + 6 * (a * a1 + b * b1) / (d * n)
    tau_printed = 3 * b * d * d * p / n + 6 * a * d * d * q / n + 3 * (-b * a1 + a * b1) / (d * n)
    kp_corr = 6 * (a * a1 + b * b1 - d * d * (a * p + b * q)) / (d * n)
    tau_corr = 3 * (a * b1 - a1 * b + d * d * (b * p - a * q)) / (n * n)
    return TrajectoryFrenet(kappa, k_o, kp_printed, kp_corr, kp_o, tau_printed, tau_corr, tau_o, False)


def recover_f24_f34(kappa, tau, kappa_prime, f21_0, f31_0, df31_0, d20, *, df21_0=None,
                    variant="printed"):
    """``(f24(0,0), f34(0,0))`` from trajectory Frenet data.

    ``variant="printed"`` evaluates the displayed quotients as they stand
    (both carry ``df31/du``); ``"corrected"`` puts ``df21/du`` in the ``f24``
    numerator.
    """
    if kappa == 0:
        raise ZeroCurvature("recovery needs kappa != 0")
    if variant == "printed":
        lead = df31_0
    elif variant == "corrected":
        if df21_0 is None:
            raise ValueError("corrected recovery needs df21_0")
        lead = df21_0
    else:
        raise ValueError(f"unknown variant {variant!r}")
    den = 3 * kappa * d20 ** 2
    f24 = (kappa * tau * f31_0 - f21_0 * d20 * kappa_prime + 3 * kappa * lead) / den
    f34 = -(kappa * tau * f21_0 + f31_0 * d20 * kappa_prime - 3 * kappa * df31_0) / den
    return f24, f34
