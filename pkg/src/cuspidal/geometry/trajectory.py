"""Trajectory of the singular points ``u(s~)`` along the deformation.

The singular points off ``u = 0`` solve ``c1(u, s) = 0`` with ``s = -s~^2``.
When ``d2(0) < 0`` the roots live at ``s = +s~^2`` instead; they are handled
by the reflection ``c1~(u, s) = -c1(u, -s)``, which has ``d2~(0) = -d2(0) > 0``
and the same roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DegenerateD2
from ..frontal import _c1_in_u, refine_root
from ..germs import C1Expansion, FrontalNormalForm, expand_c1
from ..jets import Jet

__all__ = [
    "TrajectorySeries",
    "parameter_value",
    "reduced_expansion",
    "solve_singular_u",
    "trajectory_jet",
    "trajectory_series",
]


def reduced_expansion(fnf: FrontalNormalForm) -> tuple[C1Expansion, int]:
    """Expansion of ``c1`` with ``d2(0) > 0`` (reflected when needed) and the original sign."""
    exp = fnf.expansion
    if exp.degenerate:
        raise DegenerateD2("d2(0) = 0")
    if exp.sign > 0:
        return exp, 1
    return expand_c1(-fnf.c1.scale_vars((1, 1, -1))), -1


def parameter_value(fnf: FrontalNormalForm, st):
    """Deformation parameter ``s`` carrying the singular points labelled by ``s~``."""
    _, sign = reduced_expansion(fnf)
    return -sign * st * st


@dataclass(frozen=True)
class TrajectorySeries:
    alpha1: object
    alpha2: object
    alpha3: object
    sign: int
    radius: float

    def __call__(self, st):
        return ((self.alpha3 * st + self.alpha2) * st + self.alpha1) * st

    @property
    def coefficients(self):
        return (self.alpha1, self.alpha2, self.alpha3)


def trajectory_series(fnf: FrontalNormalForm) -> TrajectorySeries:
    """Closed-form coefficients of ``u(s~) = a1 s~ + a2 s~^2 + a3 s~^3 + O(s~^4)``."""
    exp, sign = reduced_expansion(fnf)
    d20 = exp.d20
    d1, d3 = exp.d1.constant, exp.d3.constant
    d2s = exp.d2[(0, 0, 1)]
    d4 = exp.d4.constant
    a1 = 1 / d20
    a2 = (d1 * d20 ** 2 - d3) / (2 * d20 ** 4)
    a3 = ((d1 ** 2 + 4 * d2s) * d20 ** 4 - 2 * (3 * d1 * d3 + 2 * d4) * d20 ** 2
          + 5 * d3 ** 2) / (8 * d20 ** 7)
    # crude radius: where consecutive terms stop shrinking
    radius = 1.0
    if a2:
        radius = min(radius, abs(float(a1) / float(a2)))
    if a3:
        radius = min(radius, abs(float(a1) / float(a3)) ** 0.5)
    return TrajectorySeries(a1, a2, a3, sign, 0.5 * radius)


def trajectory_jet(fnf: FrontalNormalForm) -> Jet:
    """``u(t)`` solving ``c1(u(t), -t^2) = 0`` at jet level (``t`` in the first slot).

    Built by implicit-function iteration, independently of the closed form.
    """
    exp, sign = reduced_expansion(fnf)
    c1 = fnf.c1 if sign > 0 else -fnf.c1.scale_vars((1, 1, -1))
    m = c1.order
    t = Jet.var("u", m)
    s_of_t = -(t * t)
    d20 = exp.d20
    u = t * (1 / d20)
    step = 1 / (2 * d20)
    for _ in range(m):
        g = c1.compose([u, None, s_of_t])
        corr = g.divide_by_var("u") * step
        u = Jet(dict(u.items()), corr.order) - corr
        if not corr.is_exact:
            u = u.chop(1e-300)
    return u


def solve_singular_u(fnf: FrontalNormalForm, st):
    """Roots ``(u(s~), u(-s~))`` of ``c1(u, s) = 0``, Newton-refined from the series.

    Rational roots are returned exactly.
    """
    series = trajectory_series(fnf)
    s = parameter_value(fnf, st)
    coeffs = _c1_in_u(fnf.c1, s)
    if st == 0:
        return (Fraction(0) if fnf.c1.is_exact else 0.0,)
    return tuple(refine_root(coeffs, float(series(x))) for x in (st, -st))
