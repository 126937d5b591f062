"""Self-verification suites.

Each suite samples germs from a seeded generator, runs the closed forms next
to their independent oracles and records every disagreement.  ``run_suites``
is what ``cuspidal verify`` calls.
"""

from __future__ import annotations

import math
import random
import time
import warnings
import zlib
from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import sampling
from .classify import CLASS_CUSP, CLASS_UV, classify_origin, two_jet_class
from .errors import CuspidalError, NotFrontal
from .frontal import identifier_lambda, is_frontal, minimal_frontalization, unit_normal
from .geometry import curves as _curves
from .geometry import (
    bias_secondary,
    bias_secondary_at,
    bias_secondary_series,
    eta_frame,
    even_curve_curvatures,
    recover_f24_f34,
    si_curvature_limits,
    solve_singular_u,
    trajectory_frenet,
    trajectory_series,
)
from .geometry.bias import hp_context
from .geometry.trajectory import parameter_value
from .germs import (
    FrontalNormalForm,
    assemble,
    builtin,
    decompose_f32,
    expand_c1,
    normalize,
    reassemble_f32,
)
from .jets import Jet, invert_unit, sqrt_unit
from .numerics import loglog_slope, richardson

__all__ = ["SUITES", "SuiteResult", "format_report", "run_suites"]


@dataclass
class SuiteResult:
    name: str
    description: str
    tolerance: str
    checks: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self):
        return not self.failures


class Checker:
    """Accumulates checks for one suite."""

    def __init__(self, result: SuiteResult):
        self.result = result

    def check(self, ok, message):
        self.result.checks += 1
        if not ok:
            self.result.failures.append(message)
        return ok

    def close(self, a, b, tol, message):
        err = abs(float(a) - float(b))
        return self.check(err <= tol, f"{message}: |{float(a):.12g} - {float(b):.12g}| = {err:.3g} > {tol:g}")

    def note(self, message):
        self.result.notes.append(message)


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    tolerance: str
    run: object


SUITES: dict[str, Suite] = {}


def suite(name, description, tolerance="exact"):
    def deco(fn):
        SUITES[name] = Suite(name, description, tolerance, fn)
        return fn
    return deco


def _rng(seed, name):
    return random.Random(seed * 1_000_003 + zlib.crc32(name.encode()))


# -- jets ---------------------------------------------------------------------------


@suite("jet-ring-axioms", "associativity, commutativity, distributivity on random rational jets")
def _ring(ck: Checker, rng, quick):
    for _ in range(8 if quick else 25):
        a, b, c = (sampling.random_jet(rng, 6, density=0.3) for _ in range(3))
        ck.check((a * b) * c == a * (b * c), "associativity")
        ck.check(a * b == b * a, "commutativity")
        ck.check(a * (b + c) == a * b + a * c, "distributivity")
        ck.check((a + b) - b == a, "additive inverse")


@suite("jet-calculus", "Leibniz rule, chain rule, unit inverses and square roots")
def _calculus(ck: Checker, rng, quick):
    for _ in range(5 if quick else 15):
        a, b = (sampling.random_jet(rng, 6, density=0.3) for _ in range(2))
        for var in "uvs":
            ck.check((a * b).differentiate(var) == a.differentiate(var) * b + a * b.differentiate(var),
                     f"Leibniz in {var}")
        inner = [sampling.random_jet(rng, 6, min_degree=1, density=0.3) for _ in range(3)]
        lhs = a.compose(inner).differentiate("u").truncate(5)
        rhs = sum((a.differentiate(x).compose(inner) * inner[k].differentiate("u")
                   for k, x in enumerate("uvs")), Jet({}, 5)).truncate(5)
        ck.check(lhs == rhs, "chain rule")
        unit = a - a.constant + rng.choice((1, 4, Fraction(1, 4), 9))
        ck.check(unit * invert_unit(unit) == 1, "invert_unit")
        root = sqrt_unit(unit)
        ck.check(root * root == unit, "sqrt_unit")


# -- germs ----------------------------------------------------------------------------


@suite("f32-decomposition", "f32 split into c0..c3 and the c1 expansion reassemble exactly")
def _decomp(ck: Checker, rng, quick):
    for _ in range(6 if quick else 20):
        fnf = sampling.random_frontal_form(rng, 8, d2_sign=rng.choice((1, -1)))
        f32 = fnf.f32
        parts = decompose_f32(f32)
        ck.check(reassemble_f32(*parts) == f32, "decompose then reassemble")
        ck.check(expand_c1(fnf.c1).reassemble() == fnf.c1, "c1 expansion")


@suite("normal-form-invariance", "normalize is idempotent and constant on orbits")
def _invariance(ck: Checker, rng, quick):
    for i in range(2 if quick else 5):
        frontal = i % 2 == 0
        if frontal:
            nf = sampling.random_frontal_form(rng, 7).to_normal_form()
        else:
            nf = sampling.random_normal_form(rng, 7, frontal=False)
        again, _ = normalize(assemble(nf))
        ck.check(assemble(again) == assemble(nf), "idempotent on a normal form")
        phi = sampling.random_admissible_transform(rng, 7, identity_parameter=not frontal)
        g = sampling.transform_germ(assemble(nf), sampling.random_rotation(rng), phi)
        out, _ = normalize(g, reduce_parameter=frontal)
        ck.check(assemble(out) == assemble(nf), "orbit invariance")


# -- tables ---------------------------------------------------------------------------


def table_rows(order=8):
    """Expected ``(obstruction, frontal z)`` of the Mond rows, as jets in ``(u, v, s)``."""
    u, v, s = Jet.variables(order)
    rows = {"mond:S0": (u * v, Jet({}, order)),
            "mond:F4": (u ** 3 * v, v ** 5),
            "mond_def:F4_corrected": (u ** 3 * v + v * s, v ** 5 + v ** 3 * s)}
    for k in (1, 2, 3):
        for sign, sg in (("+", 1), ("-", -1)):
            rows[f"mond:S{k}{sign}"] = (sg * u ** (k + 1) * v, v ** 3)
            rows[f"mond:B{k}{sign}"] = (u ** 2 * v, sg * v ** (2 * k + 1))
            rows[f"mond:C{k}{sign}"] = (sg * u ** k * v, u * v ** 3)
            rows[f"mond_def:S{k}{sign}"] = (sg * u ** (k + 1) * v + v * s, v ** 3 + v ** 3 * s)
            rows[f"mond_def:B{k}{sign}"] = (u ** 2 * v + v * s, sg * v ** (2 * k + 1) + v ** 3 * s)
            rows[f"mond_def:C{k}{sign}"] = (sg * u ** k * v + v * s, u * v ** 3 + v ** 3 * s)
    return rows


@suite("mond-tables", "obstruction and frontal part of every tabulated Mond germ")
def _tables(ck: Checker, rng, quick):
    order = 8
    for name, (obs, z) in table_rows(order).items():
        nf = builtin(name, order)
        fnf, got = minimal_frontalization(nf)
        ck.check(got.truncate(order) == obs.truncate(order), f"{name} obstruction {got}")
        ck.check(assemble(fnf).z.truncate(order) == z.truncate(order), f"{name} frontal part")
        # C_1 carries u v in its 2-jet, like S_0
        expected = CLASS_UV if name in ("mond:S0", "mond:C1+", "mond:C1-") else CLASS_CUSP
        if name.startswith("mond:"):
            ck.check(two_jet_class(nf) == expected, f"{name} 2-jet class")
    with warnings.catch_warnings(record=True):
        warnings.simplefilter("always")
        printed = assemble(minimal_frontalization(builtin("mond_def:F4", order))[0]).z
    ck.note(f"printed F4 deformation row gives frontal z = {printed}; the table lists v^5 + v^3 s")


@suite("frontality", "is_frontal agrees with unit-normal construction; frontalization is idempotent")
def _frontality(ck: Checker, rng, quick):
    for _ in range(30 if quick else 100):
        nf = sampling.random_normal_form(rng, 8)
        try:
            unit_normal(assemble(nf))
            built = True
        except NotFrontal:
            built = False
        ck.check(built == is_frontal(nf), f"is_frontal={is_frontal(nf)} but unit normal built={built}")
        fnf, _ = minimal_frontalization(nf)
        fnf2, obs2 = minimal_frontalization(fnf)
        ck.check(fnf2 == fnf and obs2.is_zero(), "frontalization idempotent")
    for _ in range(3 if quick else 8):
        fnf = sampling.random_frontal_form(rng, 7)
        lam = identifier_lambda(fnf)
        q = lam.divide_by_var("v")
        nondeg = lam[(1, 0, 0)] != 0 or lam[(0, 1, 0)] != 0
        ck.check((q.constant != 0) == nondeg, "lambda / v constant vs non-degeneracy")


# -- classify -------------------------------------------------------------------------


@suite("model-labels", "model S_k germs are recognized and labels survive admissible transforms")
def _models(ck: Checker, rng, quick):
    for k in range(4):
        for sign in "+-":
            nf = builtin(f"model:S{k}{sign}", 8)
            lab = classify_origin(FrontalNormalForm.from_normal_form(nf))
            ck.check(lab.k == k and lab.sign == sign, f"model S{k}{sign} labelled {lab}")
            ck.check(lab.signs_equivalent == (k % 2 == 0 and k > 0), f"sign-equivalence flag for S{k}")
            if quick and k > 1:
                continue
            phi = sampling.random_admissible_transform(rng, 7)
            g = sampling.transform_germ(assemble(nf.truncate(7)), sampling.random_rotation(rng), phi)
            out, _ = normalize(g)
            lab2 = classify_origin(FrontalNormalForm.from_normal_form(out))
            ck.check(lab2 == lab, f"S{k}{sign} label after transform: {lab2}")


# -- geometry -------------------------------------------------------------------------

SERIES_STEPS = (1e-1, 3e-2, 1e-2, 3e-3, 1e-3)


@suite("trajectory-series", "closed-form singular trajectory against Newton roots", "slope >= 3.9")
def _trajectory(ck: Checker, rng, quick):
    for name, sign in (("fs_plus", 1), ("fs_minus", -1)):
        fnf = FrontalNormalForm.from_normal_form(builtin(name))
        ts = trajectory_series(fnf)
        ck.check(ts.coefficients == (1, 0, 0), f"{name} alphas {ts.coefficients}")
        for st in (0.1, 0.01):
            up, um = solve_singular_u(fnf, st)
            ck.close(up, st, 1e-12, f"{name} root at {st}")
            ck.close(um, -st, 1e-12, f"{name} root at -{st}")
    for _ in range(5 if quick else 20):
        fnf = sampling.random_frontal_form(rng, 8, d2_sign=1, bound=1)
        ts = trajectory_series(fnf)
        errs = [abs(float(solve_singular_u(fnf, st)[0]) - float(ts(st))) for st in SERIES_STEPS]
        if min(errs) == 0:
            continue
        slope = loglog_slope(SERIES_STEPS, errs)
        ck.check(slope >= 3.9, f"series error slope {slope:.3f} < 3.9 (alphas {ts.coefficients})")


def classical_limit(curve: sampling.EvenCurve, v0=1e-2, count=4):
    """Extrapolated ``v -> 0+`` limit of the classical curvatures of ``curve``."""
    vs = [v0 * 2.0 ** -k for k in range(count)]
    kgs, kns = [], []
    for v in vs:
        d1, d2 = curve.derivatives(v)
        kg, kn = _curves.classical_curvatures(d1, d2, curve.normal(v))
        kgs.append(kg)
        kns.append(kn)
    exps = [2 * i for i in range(1, count)]
    return richardson(vs, kgs, exps), richardson(vs, kns, exps)


@suite("even-curve-limits", "one-third-factor curvature formulas against classical limits", "1e-8")
def _even(ck: Checker, rng, quick):
    v = Jet.var("v", 6)
    kg, kn = even_curve_curvatures([v ** 2, v ** 4, Jet({}, 6)], [0, 0, 1])
    ck.check(kg == 2 and kn == 0, f"(v^2, v^4, 0) gives {kg}, {kn}")
    for _ in range(10 if quick else 50):
        curve = sampling.random_even_curve(rng)
        nu0 = curve.normal(0.0)
        kg, kn = even_curve_curvatures(curve.jets(), nu0)
        lg, ln = classical_limit(curve)
        ck.close(kg, lg, 1e-8, "kappa_g")
        ck.close(kn, ln, 1e-8, "kappa_n")


def _admissible_branch_germ(rng):
    return sampling.random_frontal_form(rng, 8, d2_sign=1, c3_sign=-1)


@suite("branch-curvature-agreement",
       "self-intersection curvatures: closed forms, traced branches and s~ -> 0 limits", "1e-6 / 1e-4")
def _branches(ck: Checker, rng, quick):
    fsm = FrontalNormalForm.from_normal_form(builtin("fs_minus"))
    bc = _curves.branch_curvatures_s0(fsm)
    ck.check(bc.kappa_g == 2 and bc.kappa_n == 0, f"f_s^- closed form {bc.kappa_g}, {bc.kappa_n}")
    kg_t, kn_t = _curves.branch_curvatures_traced(fsm)
    ck.close(abs(kg_t), abs(bc.kappa_g), 1e-6, "f_s^- traced |kappa_g|")
    ck.close(kn_t, bc.kappa_n, 1e-6, "f_s^- traced kappa_n")
    var = replace(fsm, f21=fsm.f21 + 1)
    ck.check(_curves.branch_curvatures_s0(var).kappa_g == 4, "f21 = 1 variant kappa_g")
    for _ in range(3 if quick else 10):
        fnf = _admissible_branch_germ(rng)
        bc = _curves.branch_curvatures_s0(fnf)
        lim = si_curvature_limits(fnf)
        ck.close(abs(lim.kappa_g_oracle), abs(bc.kappa_g), 1e-4, "|kappa_g| limit vs closed form")
        ck.close(lim.kappa_n_oracle, bc.kappa_n, 1e-4, "kappa_n limit vs closed form")
        ck.close(abs(bc.kappa_g_oracle), abs(bc.kappa_g), 1e-9, "|kappa_g| jet branch vs closed form")


@suite("signed-kappa-abs", "the two signed leading kappa_g displays agree in absolute value")
def _signed(ck: Checker, rng, quick):
    germs = [FrontalNormalForm.from_normal_form(builtin("fs_minus"))]
    germs += [_admissible_branch_germ(rng) for _ in range(3 if quick else 10)]
    for fnf in germs:
        lim = si_curvature_limits(fnf, count=2)
        closed = _curves.branch_curvatures_s0(fnf).kappa_g
        ck.check(abs(lim.kappa_g_closed) == abs(float(closed)),
                 f"|{lim.kappa_g_closed}| != |{closed}|")
        ck.note(f"signed values {lim.kappa_g_closed:g} and {float(closed):g}")


@suite("eta-conditions", "null vector field conditions hold at every S2 point", "exact")
def _eta(ck: Checker, rng, quick):
    germs = [FrontalNormalForm.from_normal_form(builtin(n)) for n in ("fs_plus", "fs_minus")]
    for fnf in germs:
        for st in (Fraction(1, 5), Fraction(1, 10)):
            s = parameter_value(fnf, st)
            for u0 in solve_singular_u(fnf, st):
                fr = eta_frame(fnf, u0, s)
                ck.check(fr.residuals_vanish(), f"residuals {fr.residuals} at u={u0}")
    for _ in range(2 if quick else 6):
        fnf = sampling.random_frontal_form(rng, 8, d2_sign=1)
        for u0 in solve_singular_u(fnf, 0.05):
            fr = eta_frame(fnf, u0, parameter_value(fnf, 0.05))
            ck.check(fr.residuals_vanish(1e-9), f"residuals {fr.residuals}")


BIAS_STEPS = (0.05, 0.1, 0.2)


def deviation_slope(steps, devs):
    """Log-log slope of deviations; ``inf`` when every deviation is exactly zero."""
    if all(abs(d) <= 1e-35 for d in devs):
        return math.inf
    return loglog_slope(steps, devs)


@suite("bias-secondary", "direct r_b, r_c against their linear series", "slope >= 1.9")
def _bias(ck: Checker, rng, quick):
    ctx = hp_context()
    for name, sign in (("fs_plus", 1), ("fs_minus", -1)):
        fnf = FrontalNormalForm.from_normal_form(builtin(name))
        target = sign * 45 * ctx.sqrt(2)
        vals = [bias_secondary_at(fnf, Fraction(st).limit_denominator(100)) for st in BIAS_STEPS]
        dc = [float(abs(v.r_c_hp - target)) for v in vals]
        db = [float(abs(v.r_b_hp)) for v in vals]
        ck.check(deviation_slope(BIAS_STEPS, dc) >= 1.9, f"{name} r_c deviation {dc}")
        ck.check(deviation_slope(BIAS_STEPS, db) >= 1.9, f"{name} r_b deviation {db}")
    for _ in range(2 if quick else 6):
        fnf = sampling.random_frontal_form(rng, 8, d2_sign=1, bound=1)
        ser = bias_secondary_series(fnf)
        vals = [bias_secondary_at(fnf, st) for st in BIAS_STEPS]
        lin_b = [abs(v.r_b - float(ser.r_b(st))) for v, st in zip(vals, BIAS_STEPS)]
        lin_c = [abs(v.r_c - ser.r_c(st)) for v, st in zip(vals, BIAS_STEPS)]
        ck.check(deviation_slope(BIAS_STEPS, lin_b) >= 1.9, f"r_b series remainder {lin_b}")
        ck.check(deviation_slope(BIAS_STEPS, lin_c) >= 1.9, f"r_c series remainder {lin_c}")
        # c2 = 1 with no linear r_b term: r_b -> 6 at second order
        flat = replace(fnf, c2=Jet.const(1, fnf.c2.order, fnf.c2.weights),
                       c0=fnf.c0.filter(lambda e: e != (1, 0, 0)))
        ck.check(bias_secondary_series(flat).rb0 == 6, "c2 = 1 gives r_b(0) = 6")
        db = [abs(bias_secondary_at(flat, st).r_b - 6) for st in BIAS_STEPS]
        ck.check(deviation_slope(BIAS_STEPS, db) >= 1.9, f"r_b - 6 deviations {db}")


@suite("trajectory-frenet", "trajectory curvature closed form and f24/f34 recovery round trip", "1e-10")
def _frenet(ck: Checker, rng, quick):
    counts = {"f24 printed": 0, "f24 corrected": 0, "f34": 0}
    total = 0
    for _ in range(4 if quick else 10):
        fnf = sampling.random_frontal_form(rng, 8, d2_sign=1)
        if fnf.f21.constant == 0 and fnf.f31.constant == 0:
            fnf = replace(fnf, f21=fnf.f21 + 1)
        tf = trajectory_frenet(fnf)
        ck.close(tf.kappa, tf.kappa_oracle, 1e-10, "kappa closed vs oracle")
        d = float(fnf.expansion.d20)
        args = (tf.kappa, tf.tau_oracle, tf.kappa_prime_oracle, float(fnf.f21.constant),
                float(fnf.f31.constant), float(fnf.f31[(1, 0, 0)]), d)
        p, q = float(fnf.f24.constant), float(fnf.f34.constant)
        p1, q1 = recover_f24_f34(*args)
        p2, _ = recover_f24_f34(*args, df21_0=float(fnf.f21[(1, 0, 0)]), variant="corrected")
        total += 1
        counts["f24 printed"] += abs(p1 - p) <= 1e-8
        counts["f24 corrected"] += abs(p2 - p) <= 1e-8
        counts["f34"] += abs(q1 - q) <= 1e-8
        ck.close(p2, p, 1e-8, "corrected f24 recovery")
        ck.close(q1, q, 1e-8, "f34 recovery")
    for key, n in counts.items():
        ck.note(f"{key} round trip: {n}/{total} germs")


# -- driver ---------------------------------------------------------------------------


def run_suites(names=None, *, seed=0, quick=False, stream=None):
    """Run the named suites (all when ``names`` is empty) and return their results."""
    names = list(names) if names else list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    results = []
    for name in names:
        s = SUITES[name]
        res = SuiteResult(name, s.description, s.tolerance)
        ck = Checker(res)
        t0 = time.perf_counter()
        try:
            s.run(ck, _rng(seed, name), quick)
        except CuspidalError as exc:
            res.failures.append(f"raised {type(exc).__name__}: {exc}")
        res.seconds = time.perf_counter() - t0
        results.append(res)
        if stream is not None:
            stream.write(format_report([res]))
            stream.flush()
    return results


def format_report(results):
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.name:28s} {r.checks:4d} checks  {r.seconds:7.2f}s  tol {r.tolerance}")
        for msg in r.failures[:10]:
            lines.append(f"    failure: {msg}")
        if len(r.failures) > 10:
            lines.append(f"    ... {len(r.failures) - 10} more")
        for msg in r.notes[:12]:
            lines.append(f"    note: {msg}")
    return "\n".join(lines) + "\n"
