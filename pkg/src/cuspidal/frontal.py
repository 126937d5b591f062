"""Unit normals, the identifier of singularities, and minimal frontalization."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotDivisible, NotFrontal, NotReducedC1
from .germs import (
    FrontalNormalForm,
    MapGerm,
    NormalFormS1,
    assemble,
    expand_c1,
    zero_tol,
)
from .jets import Jet, cross, det3, dot, invert_unit, sqrt_unit
from .numerics import newton, polish_rational

__all__ = [
    "NormalField",
    "SingularSets",
    "identifier_lambda",
    "is_frontal",
    "minimal_frontalization",
    "singular_sets",
    "unit_normal",
]


def as_germ(f) -> MapGerm:
    return f if isinstance(f, MapGerm) else assemble(f)


@dataclass(frozen=True)
class NormalField:
    """Unit normal ``nu`` along with ``|nu|^2 - 1`` as a certificate."""

    nu: tuple
    certificate: Jet

    @property
    def order(self):
        return min(c.order for c in self.nu)

    def at(self, point):
        return tuple(c.evaluate(point) for c in self.nu)

    def restrict_v0(self):
        return tuple(c.restrict("v") for c in self.nu)


def unit_normal(f) -> NormalField:
    """``nu = (f_u x f_v) / v`` normalized.

    The division is exact only when ``f_u x f_v`` vanishes to first order on
    ``{v = 0}``, which for a normal form happens exactly when ``f33 = 0``.
    """
    g = as_germ(f)
    fu = g.differentiate("u")
    fv = g.differentiate("v")
    n = cross(fu, fv)
    try:
        m = [c.divide_by_var("v") for c in n]
    except NotDivisible as exc:
        raise NotFrontal(f"f_u x f_v is not divisible by v ({exc})") from None
    norm2 = dot(m, m)
    if norm2.constant == 0:
        raise NotFrontal("f_u x f_v / v vanishes at the origin")
    scale = invert_unit(sqrt_unit(norm2))
    nu = tuple(c * scale for c in m)
    tol = zero_tol(*nu)
    for name, residual in (("<f_u, nu>", dot(fu, nu)), ("<f_v, nu>", dot(fv, nu))):
        if not residual.is_zero(tol):
            raise NotFrontal(f"{name} = {residual} does not vanish")
    cert = dot(nu, nu) - 1
    if not cert.is_zero(max(tol, 1e-12) if tol else 0):
        raise NotFrontal(f"|nu|^2 - 1 = {cert}")
    return NormalField(nu=nu, certificate=cert)


def normal_v0_closed_form(fnf: FrontalNormalForm, point):
    """The displayed closed form of ``nu(u, 0, s)`` evaluated at ``(u, s)``."""
    u, s = point
    val = lambda j, *d: j.diff(*d).evaluate((u, 0, s))
    c0 = val(fnf.c0)
    first = (-4 * u * val(fnf.f31) + 4 * u * val(fnf.f21) * c0 + 2 * s * val(fnf.f24) * c0
             - 2 * s * val(fnf.f34) + 2 * u ** 2 * c0 * val(fnf.f21, "u")
             - 2 * u ** 2 * val(fnf.f31, "u") + 2 * u * s * c0 * val(fnf.f24, "u")
             - 2 * u * s * val(fnf.f34, "u"))
    vec = (first, -2 * c0, 2)
    delta = math.sqrt(sum(float(x) ** 2 for x in vec))
    return tuple(float(x) / delta for x in vec)


def identifier_lambda(f, nu: NormalField | None = None) -> Jet:
    """``det(f_u, f_v, nu)``."""
    g = as_germ(f)
    if nu is None:
        nu = unit_normal(g)
    return det3(g.differentiate("u"), g.differentiate("v"), nu.nu)


def is_frontal(nf) -> bool:
    """Frontality of a normal form: ``f33`` vanishes through its order."""
    if isinstance(nf, FrontalNormalForm):
        return True
    return nf.f33.is_zero(zero_tol(nf.f33))


def minimal_frontalization(nf):
    """Split a normal form into its frontal part and the obstruction ``v f33``."""
    if isinstance(nf, FrontalNormalForm):
        return nf, Jet({}, nf.order)
    obstruction = nf.f33.mul_monomial((0, 1, 0))
    zeroed = NormalFormS1(f21=nf.f21, f24=nf.f24, f31=nf.f31, f32=nf.f32,
                          f33=Jet({}, nf.f33.order), f34=nf.f34)
    return FrontalNormalForm.from_normal_form(zeroed), obstruction


@dataclass(frozen=True)
class SingularSets:
    s: object
    s1: str
    s2: tuple

    def __iter__(self):
        return iter(self.s2)


def _c1_in_u(c1: Jet, s0):
    """Coefficients of the polynomial ``u -> c1(u, s0)`` (ascending)."""
    restricted = c1.substitute(s=s0)
    deg = max((e[0] for e, _ in restricted.items()), default=0)
    coeffs = [0] * (deg + 1)
    for e, c in restricted.items():
        coeffs[e[0]] += c
    return coeffs


def _poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_deriv(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def refine_root(coeffs, seed):
    """Newton-refine a root of the polynomial; rational when the root is rational."""
    dcoeffs = _poly_deriv(coeffs)
    fl = [float(c) for c in coeffs]
    dfl = [float(c) for c in dcoeffs]
    root = newton(lambda x: _poly_eval(fl, x), lambda x: _poly_eval(dfl, x), seed)
    if all(isinstance(c, (int, Fraction)) for c in coeffs):
        q = polish_rational(root, lambda x: _poly_eval(coeffs, x))
        if q is not None:
            return q
    return root


def singular_sets(fnf: FrontalNormalForm, s0, *, radius=0.5) -> SingularSets:
    """``S1 = {v = 0}`` and the ``u``-roots of ``c1(u, s0) = 0`` near the origin.

    For a reduced ``c1`` with ``d2(0) != 0`` the roots are seeded at
    ``+-sqrt(-s0 / d2(0))``; otherwise all real polynomial roots inside
    ``radius`` are polished.
    """
    coeffs = _c1_in_u(fnf.c1, s0)
    if s0 == 0 and (not coeffs or coeffs[0] == 0):
        return SingularSets(s0, "v=0", (Fraction(0) if fnf.c1.is_exact else 0.0,))
    seeds = None
    try:
        exp = expand_c1(fnf.c1)
    except NotReducedC1:
        exp = None
    if exp is not None and not exp.degenerate:
        ratio = -float(s0) / float(exp.d2_0)
        if ratio <= 0:
            return SingularSets(s0, "v=0", ())
        r = math.sqrt(ratio)
        seeds = (-r, r)
    if seeds is None:
        fl = [float(c) for c in coeffs]
        while len(fl) > 1 and fl[-1] == 0:
            fl.pop()
        cand = np.roots(fl[::-1]) if len(fl) > 1 else []
        seeds = sorted(z.real for z in cand
                       if abs(z.imag) <= 1e-9 * max(1.0, abs(z)) and abs(z.real) <= radius)
    roots = []
    for seed in seeds:
        root = refine_root(coeffs, seed)
        if not any(abs(float(root) - float(r)) < 1e-12 for r in roots):
            roots.append(root)
    return SingularSets(s0, "v=0", tuple(sorted(roots, key=float)))
