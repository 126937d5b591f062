"""Per-point invariant records with provenance tags."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import CuspidalError
from ..germs import FrontalNormalForm

ORACLE = "oracle"
CLOSED = "closed-form"
SERIES = "series"


@dataclass(frozen=True)
class InvariantReport:
    point: tuple
    label: str
    r_b: float | None = None
    r_c: float | None = None
    kappa_g: float | None = None
    kappa_n: float | None = None
    kappa: float | None = None
    tau: float | None = None
    kappa_prime: float | None = None
    methods: dict = field(default_factory=dict)


def invariant_report(fnf: FrontalNormalForm, st, branch=1) -> InvariantReport:
    """Invariants at ``u(branch * s~)``; entries that cannot be computed stay ``None``."""
    from ..classify import label_point
    from .bias import bias_secondary
    from .curves import si_curvatures_at
    from .frenet import trajectory_frenet
    from .trajectory import parameter_value, solve_singular_u

    s = parameter_value(fnf, st)
    roots = solve_singular_u(fnf, st)
    u0 = roots[0] if branch > 0 else roots[-1]
    values = {"label": str(label_point(fnf, u0, 0, s))}
    methods = {}
    try:
        bs = bias_secondary(fnf, u0, s)
        values.update(r_b=bs.r_b, r_c=bs.r_c)
        methods.update(r_b=ORACLE, r_c=ORACLE)
    except CuspidalError:
        pass
    if st != 0:
        try:
            kg, kn = si_curvatures_at(fnf, st, branch)
            values.update(kappa_g=kg, kappa_n=kn)
            methods.update(kappa_g=ORACLE, kappa_n=ORACLE)
        except CuspidalError:
            pass
    try:
        fr = trajectory_frenet(fnf)
        values["kappa"] = fr.kappa
        methods["kappa"] = CLOSED
        if not fr.degenerate:
            values.update(tau=fr.tau_oracle, kappa_prime=fr.kappa_prime_oracle)
            methods.update(tau=ORACLE, kappa_prime=ORACLE)
    except CuspidalError:
        pass
    return InvariantReport(point=(u0, st), methods=methods, **values)
