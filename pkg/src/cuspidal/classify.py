"""2-jet classes and cuspidal S_k recognition."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegenerateD2
from .germs import FrontalNormalForm, NormalFormS1, zero_tol

__all__ = [
    "CLASS_CUSP",
    "CLASS_UV",
    "SingularityLabel",
    "classify_origin",
    "label_point",
    "label_singular_points",
    "two_jet_class",
]

CLASS_CUSP = "(u,v^2,0)"
CLASS_UV = "(u,v^2,uv)"


@dataclass(frozen=True)
class SingularityLabel:
    kind: str
    k: int | None = None
    sign: str | None = None
    witness: dict = field(default_factory=dict, compare=False)

    @property
    def signs_equivalent(self):
        """For even ``k`` the two signs give A-equivalent germs."""
        return self.kind == "CuspidalSk" and self.k % 2 == 0

    def __str__(self):
        if self.kind == "CuspidalSk":
            text = f"S_{self.k}^{self.sign}"
            return text + " (signs equivalent)" if self.signs_equivalent else text
        return self.kind


def two_jet_class(nf: NormalFormS1) -> str:
    """``(u,v^2,uv)`` exactly when ``(f33)_u(0,0) != 0``."""
    if isinstance(nf, FrontalNormalForm):
        return CLASS_CUSP
    return CLASS_UV if abs(nf.f33[(1, 0, 0)]) > zero_tol(nf.f33) else CLASS_CUSP


def classify_origin(fnf: FrontalNormalForm) -> SingularityLabel:
    """Label of ``f(., ., 0)`` at the origin.

    Cuspidal edge when ``c1(0,0) != 0``; otherwise the first non-vanishing
    ``d^{k+1} c1 / du^{k+1}`` fixes ``k`` and its sign times ``c3(0,0,0)`` the
    sign.  ``k = 0`` is the cuspidal cross cap.
    """
    tol = zero_tol(fnf.c1, fnf.c3)
    c1 = fnf.c1
    if abs(c1.constant) > tol:
        return SingularityLabel("CuspidalEdge", witness={"c1": c1.constant})
    c3 = fnf.c3.constant
    witness = {"c3": c3}
    for m in range(1, c1.order + 1):
        deriv = c1[(m, 0, 0)] * math.factorial(m)
        witness[f"c1_u^{m}"] = deriv
        if abs(deriv) > tol:
            if abs(c3) <= tol:
                return SingularityLabel("Unclassified", witness=witness)
            sign = "+" if deriv * c3 > 0 else "-"
            if m == 1:
                return SingularityLabel("CuspidalCrossCap", 0, sign, witness)
            return SingularityLabel("CuspidalSk", m - 1, sign, witness)
    return SingularityLabel("Unclassified", witness=witness)


def label_point(fnf: FrontalNormalForm, u0, v0, s, *, tol=1e-10) -> SingularityLabel:
    """Label of ``f(., ., s)`` at ``(u0, v0)``."""
    if v0 != 0:
        return SingularityLabel("RegularPoint")
    c1 = fnf.c1.evaluate((u0, 0, s))
    exact = tol == 0 or (fnf.c1.is_exact and not isinstance(c1, float))
    eps = 0 if exact else tol
    if abs(c1) > eps:
        return SingularityLabel("CuspidalEdge", witness={"c1": c1})
    if u0 == 0 and s == 0:
        return classify_origin(fnf)
    c1u = fnf.c1.diff("u").evaluate((u0, 0, s))
    c3 = fnf.c3.evaluate((u0, 0, s))
    witness = {"c1": c1, "c1_u": c1u, "c3": c3}
    if abs(c1u) > eps and abs(c3) > eps:
        return SingularityLabel("CuspidalCrossCap", 0, "+" if c1u * c3 > 0 else "-", witness)
    return SingularityLabel("Unclassified", witness=witness)


def label_singular_points(fnf: FrontalNormalForm, st):
    """``[(u_root, label)]`` for the ``S2`` points at ``s~`` (ascending ``u``)."""
    from .geometry.trajectory import parameter_value, solve_singular_u

    if fnf.expansion.degenerate:
        raise DegenerateD2("d2(0) = 0")
    if st == 0:
        return [(0, classify_origin(fnf))]
    s = parameter_value(fnf, st)
    roots = sorted(solve_singular_u(fnf, st), key=float)
    return [(u, label_point(fnf, u, 0, s)) for u in roots]
