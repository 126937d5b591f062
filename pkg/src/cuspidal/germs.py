"""Map-germs, normal forms and the germ-spec file format.

A deformation is a map ``f(u, v, s)`` into R^3 with ``f(0, 0, s) = 0``.  Its
normal form under source diffeomorphisms ``(phi1(u,v,s), phi2(u,v,s), phi3(s))``
and rotations of the target reads::

    (u,
     u^2 f21(u) + v^2 + u s f24(u, s),
     u^2 f31(u) + v^2 f32(u, v, s) + v f33(u, s) + u s f34(u, s))

with ``f32(0,0,0) = f33(0,0) = 0``.  When ``f33`` vanishes the germ is a
frontal and ``f32`` is split by parity in ``v``::

    f32 = c0(u,s) + v c1(u,s) + v^2 c2(u,v^2,s) + v^3 c3(u,v^2,s)

``c2`` and ``c3`` are stored as jets in ``(u, w, s)`` with ``w = v^2`` and
weights ``(1, 2, 1)``.
"""

from __future__ import annotations

import json
import math
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import (
    InvariantViolation,
    NormalizationObstructed,
    NotFrontal,
    NotReducedC1,
    OrderTooLow,
    ParseError,
    UnknownName,
    WrongTwoJet,
)
from .jets import DEFAULT_ORDER, Jet, as_scalar, cross, dot, exact_sqrt

__all__ = [
    "C1Expansion",
    "FrontalNormalForm",
    "MapGerm",
    "NormalFormS1",
    "NormalizationLog",
    "assemble",
    "builtin",
    "builtin_names",
    "decompose_f32",
    "dump_germ_spec",
    "expand_c1",
    "load_germ_spec",
    "normalize",
    "parse_germ_spec",
    "read_normal_form",
    "reassemble_f32",
    "reduce_parameter",
]

W_WEIGHTS = (1, 2, 1)


def zero_tol(*jets):
    """Tolerance for "is zero" tests: 0 for exact jets, a relative 1e-9 otherwise."""
    if all(j.is_exact for j in jets):
        return 0
    scale = max([1.0] + [float(j.max_abs()) for j in jets])
    return 1e-9 * scale


def _as_jet(x, order, weights=(1, 1, 1)):
    if isinstance(x, Jet):
        if x.weights != weights and 1 not in x.variables_used():
            # a jet free of the middle variable reads the same under either weighting
            x = Jet(dict(x.items()), x.order, weights)
        return x.truncate(order) if x.order > order else x
    return Jet.const(x, order, weights)


def _check_vars(name, jet, allowed):
    extra = jet.variables_used() - allowed
    if extra:
        names = ", ".join("uvs"[k] for k in sorted(extra))
        raise InvariantViolation(f"{name} must not depend on {names}")


# -- map germs -------------------------------------------------------------------


@dataclass(frozen=True)
class MapGerm:
    x: Jet
    y: Jet
    z: Jet

    @property
    def components(self):
        return (self.x, self.y, self.z)

    def __iter__(self):
        return iter(self.components)

    @property
    def order(self):
        return min(c.order for c in self.components)

    @property
    def is_exact(self):
        return all(c.is_exact for c in self.components)

    def differentiate(self, var, times=1):
        return tuple(c.differentiate(var, times) for c in self.components)

    def diff(self, *vars):
        return tuple(c.diff(*vars) for c in self.components)

    def compose(self, inner, order=None):
        return MapGerm(*(c.compose(inner, order) for c in self.components))

    def rotate(self, T):
        comps = self.components
        return MapGerm(*(sum((as_scalar(T[i][j]) * comps[j] for j in range(3)), Jet.const(0, self.order))
                         for i in range(3)))

    def scale_vars(self, factors):
        return MapGerm(*(c.scale_vars(factors) for c in self.components))

    def truncate(self, order):
        return MapGerm(*(c.truncate(order) for c in self.components))

    def to_float(self):
        return MapGerm(*(c.to_float() for c in self.components))

    def __add__(self, other):
        return MapGerm(*(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other):
        return MapGerm(*(a - b for a, b in zip(self.components, other.components)))

    def evaluate(self, point):
        return tuple(c.evaluate(point) for c in self.components)

    def satisfies_origin_condition(self, tol=0):
        """``f(0, 0, s) = 0`` identically in ``s``."""
        return all(abs(c) <= tol for comp in self.components
                   for e, c in comp.items() if e[0] == 0 and e[1] == 0)

    def __str__(self):
        return f"({self.x}, {self.y}, {self.z})"


# -- normal forms ----------------------------------------------------------------


@dataclass(frozen=True)
class NormalFormS1:
    f21: Jet
    f24: Jet
    f31: Jet
    f32: Jet
    f33: Jet
    f34: Jet

    def __post_init__(self):
        _check_vars("f21", self.f21, {0})
        _check_vars("f31", self.f31, {0})
        for name in ("f24", "f33", "f34"):
            _check_vars(name, getattr(self, name), {0, 2})
        tol = zero_tol(self.f32, self.f33)
        if abs(self.f32.constant) > tol or abs(self.f33.constant) > tol:
            raise InvariantViolation("normal form needs f32(0,0,0) = f33(0,0) = 0")

    @classmethod
    def build(cls, order=DEFAULT_ORDER, *, f21=0, f24=0, f31=0, f32=0, f33=0, f34=0):
        """Normal form whose assembled germ is known through ``order``."""
        return cls(f21=_as_jet(f21, order - 2), f24=_as_jet(f24, order - 2),
                   f31=_as_jet(f31, order - 2), f32=_as_jet(f32, order - 2),
                   f33=_as_jet(f33, order - 1), f34=_as_jet(f34, order - 2))

    @property
    def order(self):
        return min(self.f21.order + 2, self.f24.order + 2, self.f31.order + 2,
                   self.f32.order + 2, self.f33.order + 1, self.f34.order + 2)

    @property
    def is_exact(self):
        return all(j.is_exact for j in self.pieces())

    def pieces(self):
        return (self.f21, self.f24, self.f31, self.f32, self.f33, self.f34)

    def to_float(self):
        return NormalFormS1(*(j.to_float() for j in self.pieces()))

    def truncate(self, order):
        return NormalFormS1.build(order, f21=self.f21, f24=self.f24, f31=self.f31,
                                  f32=self.f32, f33=self.f33, f34=self.f34)


@dataclass(frozen=True)
class C1Expansion:
    """``c1 = s + u s d1(s) + u^2 d2(s) + u^3 d3(s) + u^4 d4(u, s)``."""

    d1: Jet
    d2: Jet
    d3: Jet
    d4: Jet
    d2_0: object
    d20: object
    sign: int

    @property
    def degenerate(self):
        return self.sign == 0

    def reassemble(self):
        s = Jet.var("s", self.d2.order + 2)
        return (s + self.d1.mul_monomial((1, 0, 1)) + self.d2.mul_monomial((2, 0, 0))
                + self.d3.mul_monomial((3, 0, 0)) + self.d4.mul_monomial((4, 0, 0)))


@dataclass(frozen=True)
class FrontalNormalForm:
    f21: Jet
    f31: Jet
    f24: Jet
    f34: Jet
    c0: Jet
    c1: Jet
    c2: Jet
    c3: Jet

    def __post_init__(self):
        _check_vars("f21", self.f21, {0})
        _check_vars("f31", self.f31, {0})
        for name in ("f24", "f34", "c0", "c1"):
            _check_vars(name, getattr(self, name), {0, 2})
        for name in ("c2", "c3"):
            if getattr(self, name).weights != W_WEIGHTS:
                raise InvariantViolation(f"{name} must be a jet in (u, w=v^2, s)")
        if abs(self.c0.constant) > zero_tol(self.c0):
            raise InvariantViolation("frontal normal form needs c0(0,0) = 0")

    @classmethod
    def build(cls, order=DEFAULT_ORDER, *, f21=0, f31=0, f24=0, f34=0, c0=0, c1=0, c2=0, c3=0):
        """Frontal normal form whose assembled germ is known through ``order``.

        ``c2`` and ``c3`` may be scalars or jets in ``(u, w, s)`` with weights
        ``(1, 2, 1)``.
        """
        return cls(f21=_as_jet(f21, order - 2), f31=_as_jet(f31, order - 2),
                   f24=_as_jet(f24, order - 2), f34=_as_jet(f34, order - 2),
                   c0=_as_jet(c0, order - 2), c1=_as_jet(c1, order - 3),
                   c2=_as_jet(c2, order - 4, W_WEIGHTS), c3=_as_jet(c3, order - 5, W_WEIGHTS))

    @classmethod
    def from_normal_form(cls, nf: NormalFormS1):
        if not nf.f33.is_zero(zero_tol(nf.f33)):
            raise NotFrontal(f"f33 = {nf.f33} does not vanish")
        c0, c1, c2, c3 = decompose_f32(nf.f32)
        return cls(f21=nf.f21, f31=nf.f31, f24=nf.f24, f34=nf.f34, c0=c0, c1=c1, c2=c2, c3=c3)

    @cached_property
    def f32(self):
        return reassemble_f32(self.c0, self.c1, self.c2, self.c3)

    def to_normal_form(self):
        f32 = self.f32
        return NormalFormS1(f21=self.f21, f24=self.f24, f31=self.f31, f32=f32,
                            f33=Jet.const(0, f32.order + 1), f34=self.f34)

    @cached_property
    def expansion(self) -> C1Expansion:
        return expand_c1(self.c1)

    @property
    def order(self):
        return self.to_normal_form().order

    @property
    def is_exact(self):
        return all(j.is_exact for j in (self.f21, self.f31, self.f24, self.f34,
                                        self.c0, self.c1, self.c2, self.c3))

    def to_float(self):
        return FrontalNormalForm(*(j.to_float() for j in (self.f21, self.f31, self.f24, self.f34,
                                                          self.c0, self.c1, self.c2, self.c3)))

    def value(self, name, *derivs):
        """Derivative of a coefficient function at the origin, e.g. ``value('c1', 'u', 'u')``."""
        return getattr(self, name).diff(*derivs).constant


@dataclass(frozen=True)
class NormalizationLog:
    """Record of ``T o f o phi``: rotation, linear kernel alignment, and ``phi``."""

    rotation: tuple
    source_linear: tuple
    phi1: Jet
    phi2: Jet
    phi3: Jet
    reparametrized: bool = False
    parameter_reversed: bool = False
    notes: tuple = field(default_factory=tuple)


# -- assembly and decompositions ---------------------------------------------------


def _unweight(j: Jet) -> Jet:
    """Substitute ``w = v^2`` in a weighted jet."""
    return Jet({(e[0], 2 * e[1], e[2]): c for e, c in j.items()}, j.order)


def reassemble_f32(c0, c1, c2, c3) -> Jet:
    return (c0 + c1.mul_monomial((0, 1, 0)) + _unweight(c2).mul_monomial((0, 2, 0))
            + _unweight(c3).mul_monomial((0, 3, 0)))


def decompose_f32(f32: Jet):
    """Split ``f32`` into ``(c0, c1, c2, c3)``; reassembly is exact."""
    m = f32.order
    c0 = f32.restrict("v")
    c1 = f32.coefficient_of("v", 1)
    even, odd = {}, {}
    for (i, j, k), c in f32.items():
        if j >= 2 and j % 2 == 0:
            even[(i, (j - 2) // 2, k)] = c
        elif j >= 3:
            odd[(i, (j - 3) // 2, k)] = c
    c2 = Jet(even, m - 2, W_WEIGHTS)
    c3 = Jet(odd, m - 3, W_WEIGHTS)
    return c0, c1, c2, c3


def expand_c1(c1: Jet) -> C1Expansion:
    """Read off ``d1..d4`` from a parameter-reduced ``c1`` (``c1(0, s) = s``)."""
    _check_vars("c1", c1, {0, 2})
    tol = zero_tol(c1)
    m = c1.order
    s = Jet.var("s", m)
    if not (c1.restrict("u") - s).is_zero(tol):
        raise NotReducedC1(f"c1(0, s) = {c1.restrict('u')} is not s")
    if abs(c1[(1, 0, 0)]) > tol:
        raise NotReducedC1("(c1)_u(0, 0) must vanish")
    d1 = c1.coefficient_of("u", 1).divide_by_var("s") if m >= 2 else Jet({}, m - 2)
    d2 = c1.coefficient_of("u", 2)
    d3 = c1.coefficient_of("u", 3)
    d4 = c1.filter(lambda e: e[0] >= 4).divide_by_var("u", 4)
    d2_0 = d2.constant
    sign = 0 if abs(d2_0) <= tol else (1 if d2_0 > 0 else -1)
    d20 = exact_sqrt(abs(d2_0)) if sign else 0
    return C1Expansion(d1=d1, d2=d2, d3=d3, d4=d4, d2_0=d2_0, d20=d20, sign=sign)


def assemble(nf) -> MapGerm:
    """The germ represented by a (frontal) normal form."""
    if isinstance(nf, FrontalNormalForm):
        nf = nf.to_normal_form()
    n = nf.order
    x = Jet.var("u", n)
    y = (nf.f21.mul_monomial((2, 0, 0)) + Jet.monomial((0, 2, 0), 1, n)
         + nf.f24.mul_monomial((1, 0, 1)))
    z = (nf.f31.mul_monomial((2, 0, 0)) + nf.f32.mul_monomial((0, 2, 0))
         + nf.f33.mul_monomial((0, 1, 0)) + nf.f34.mul_monomial((1, 0, 1)))
    return MapGerm(x, y.truncate(n), z.truncate(n))


def read_normal_form(g: MapGerm, tol=None) -> NormalFormS1:
    """Extract coefficient functions from a germ already in normal-form shape."""
    if tol is None:
        tol = zero_tol(*g.components)
    n = g.order
    g = g.truncate(n)
    u = Jet.var("u", n)
    bad = []
    if not (g.x - u).is_zero(tol):
        bad.append(f"x = {g.x}")
    f21, f24, f31, f32, f33, f34 = ({} for _ in range(6))
    for (i, j, k), c in g.y.items():
        if j == 0 and k == 0 and i >= 2:
            f21[(i - 2, 0, 0)] = c
        elif j == 0 and i >= 1 and k >= 1:
            f24[(i - 1, 0, k - 1)] = c
        elif (i, j, k) != (0, 2, 0) and abs(c) > tol:
            bad.append(f"y has term {c}*u^{i}v^{j}s^{k}")
    if abs(g.y[(0, 2, 0)] - 1) > tol:
        bad.append(f"y has v^2 coefficient {g.y[(0, 2, 0)]}")
    for (i, j, k), c in g.z.items():
        if j >= 2 and (i, j, k) != (0, 2, 0):
            f32[(i, j - 2, k)] = c
        elif j == 1 and (i, k) != (0, 0):
            f33[(i, 0, k)] = c
        elif j == 0 and k == 0 and i >= 2:
            f31[(i - 2, 0, 0)] = c
        elif j == 0 and i >= 1 and k >= 1:
            f34[(i - 1, 0, k - 1)] = c
        elif abs(c) > tol:
            bad.append(f"z has term {c}*u^{i}v^{j}s^{k}")
    if bad:
        raise NormalizationObstructed("; ".join(bad))
    nf = NormalFormS1(f21=Jet(f21, n - 2), f24=Jet(f24, n - 2), f31=Jet(f31, n - 2),
                      f32=Jet(f32, n - 2), f33=Jet(f33, n - 1), f34=Jet(f34, n - 2))
    if tol:
        nf = NormalFormS1(*(j.chop(tol) for j in nf.pieces()))
    return nf


# -- normalization -------------------------------------------------------------------


def _lift(j: Jet, order):
    return Jet(dict(j.items()), order)


def normalize(f: MapGerm, *, reduce_parameter=False):
    """Bring a deformation into normal form by degree-by-degree elimination.

    Returns ``(NormalFormS1, NormalizationLog)``.  The rotation sends ``f_u(0)``
    to the first axis and the part of ``f_vv(0)`` orthogonal to it to the
    second; the source map keeps the input's ``u`` orientation.  With
    ``reduce_parameter`` a frontal result is reparametrized so that
    ``c1(0, s) = s``.  A normal form is accepted in place of its germ.
    """
    if isinstance(f, (NormalFormS1, FrontalNormalForm)):
        f = assemble(f)
    n = f.order
    if n < 3:
        raise OrderTooLow(f"normalization needs order >= 3, got {n}")
    f = f.truncate(n)
    tol = zero_tol(*f.components)
    if not f.satisfies_origin_condition(tol):
        raise InvariantViolation("f(0, 0, s) must vanish identically")

    a = [c[(1, 0, 0)] for c in f]
    b = [c[(0, 1, 0)] for c in f]
    if all(abs(x) <= tol for x in a + b):
        raise WrongTwoJet("differential vanishes at the origin")
    if any(abs(x) > tol for x in cross(a, b)):
        raise WrongTwoJet("germ is an immersion at the origin")
    if any(abs(x) > tol for x in a):
        lam = dot(b, a) / dot(a, a)
        linear = ((1, -lam), (0, 1))
    else:
        linear = ((0, 1), (-1, 0))
    uu, vv, _ = Jet.variables(n)
    g = f.compose([linear[0][0] * uu + linear[0][1] * vv, linear[1][0] * uu + linear[1][1] * vv, None])

    a = [c[(1, 0, 0)] for c in g]
    fvv = [2 * c[(0, 2, 0)] for c in g]
    aa = dot(a, a)
    proj = dot(fvv, a) / aa
    w = [fvv[i] - proj * a[i] for i in range(3)]
    if all(abs(x) <= tol for x in w):
        raise WrongTwoJet("2-jet is not equivalent to (u, v^2, 0) or (u, v^2, uv)")
    na = exact_sqrt(aa)
    nw = exact_sqrt(dot(w, w))
    e1 = [x / na for x in a]
    e2 = [x / nw for x in w]
    e3 = list(cross(e1, e2))
    rotation = (tuple(e1), tuple(e2), tuple(e3))
    h = g.rotate(rotation)
    beta = h.y[(0, 2, 0)]
    h = h.scale_vars((1 / na, 1 / exact_sqrt(beta), 1))
    if tol:
        h = MapGerm(*(c.chop(tol) for c in h))

    phi1, phi2 = Jet.var("u", n), Jet.var("v", n)
    hy_u = h.y.differentiate("u").truncate(1)
    for d in range(1, n + 1):
        G = h.compose([phi1, phi2, None], order=min(d + 1, n))
        xres = G.x.homogeneous_part(d)
        if d == 1:
            xres = xres - Jet.var("u", xres.order)
        dphi1 = _lift(-xres, n)
        if tol:
            dphi1 = dphi1.chop(tol)
        phi1 = phi1 + dphi1
        if d + 1 > n:
            break
        yd = G.y.homogeneous_part(d + 1)
        if len(dphi1):
            lin = _lift(hy_u.compose([phi1.truncate(1), phi2.truncate(1), None], order=1), d + 1)
            yd = yd.truncate(d + 1) + (lin * dphi1.truncate(d + 1)).homogeneous_part(d + 1)
        bad = yd.filter(lambda e: e[1] >= 1 and e != (0, 2, 0))
        dphi2 = _lift(bad.divide_by_var("v") * Fraction(-1, 2), n)
        if tol:
            dphi2 = dphi2.chop(tol)
        phi2 = phi2 + dphi2

    G = h.compose([phi1, phi2, None])
    nf = read_normal_form(G, tol)
    phi3 = Jet.var("s", n)
    log = dict(rotation=rotation, source_linear=linear, phi1=phi1, phi2=phi2, phi3=phi3)

    if reduce_parameter:
        nf, psi, reversed_ = _reduce_parameter(nf, tol)
        log.update(phi3=psi, reparametrized=True, parameter_reversed=reversed_)
    return nf, NormalizationLog(**log)


def reduce_parameter(nf: NormalFormS1) -> NormalFormS1:
    """Frontal normal form reparametrized so that ``c1(0, s) = s``."""
    return _reduce_parameter(nf, zero_tol(*nf.pieces()))[0]


def _reduce_parameter(nf: NormalFormS1, tol):
    """Reparametrize ``s`` so that ``c1(0, s) = s``."""
    if not nf.f33.is_zero(tol):
        raise NotFrontal("parameter reduction applies to frontal normal forms")
    c1 = decompose_f32(nf.f32)[1]
    g = c1.restrict("u")
    m = g.order
    gamma = g[(0, 0, 1)]
    if abs(gamma) <= tol:
        raise InvariantViolation("(c1)_s(0,0) = 0: the deformation is not generic")
    s = Jet.var("s", m)
    psi = s / gamma
    for _ in range(m):
        psi = psi - (g.compose([None, None, psi]) - s) / gamma
        if tol:
            psi = psi.chop(tol)
    G = assemble(nf).compose([None, None, psi])
    return read_normal_form(G, tol), psi, gamma < 0


# -- builtins --------------------------------------------------------------------------

_NAME = re.compile(r"^(?P<family>mond|mond_def|model):(?P<body>.+)$")
_PARAM = re.compile(r"^(?P<letter>[SBC])(?P<k>\d+)(?P<sign>[+-]?)$")

BUILTIN_NOTES = {
    "mond_def:F4": "printed row contains 'v^5v' (read as v^6); use mond_def:F4_corrected",
}


def builtin_names():
    """Canonical builtin names (parametrized families for k = 1, 2, 3)."""
    names = ["fs_plus", "fs_minus", "example32", "mond:S0", "mond:F4",
             "mond_def:F4", "mond_def:F4_corrected"]
    for family in ("mond", "mond_def"):
        for letter in "SBC":
            for k in (1, 2, 3):
                for sign in "+-":
                    names.append(f"{family}:{letter}{k}{sign}")
    for k in range(4):
        for sign in "+-":
            names.append(f"model:S{k}{sign}")
    return names


def builtin(name: str, order=DEFAULT_ORDER) -> NormalFormS1:
    """Named germs: the ``f_s^+-`` family, the Mond rows, model germs and the ``example32`` deformation."""
    u, v, s = Jet.variables(order)
    if name in ("fs_plus", "fs_minus"):
        sign = 1 if name == "fs_plus" else -1
        return NormalFormS1.build(order, f32=v * (u ** 2 + s) + sign * v ** 3)
    if name == "example32":
        return NormalFormS1.build(order, f21=1, f31=1, f32=v * s + u ** 2 * v + v ** 3 + v ** 5,
                                  f33=s + u ** 2)
    m = _NAME.match(name)
    if not m:
        raise UnknownName(name)
    family, body = m["family"], m["body"]
    deform = family == "mond_def"
    extra_f32 = v * s if deform else 0
    extra_f33 = s if deform else 0
    if family == "mond" and body == "S0":
        return NormalFormS1.build(order, f33=u)
    if body == "F4":
        if deform:
            warnings.warn(BUILTIN_NOTES["mond_def:F4"], UserWarning, stacklevel=2)
            return NormalFormS1.build(order, f32=v ** 4 + extra_f32, f33=u ** 3 + extra_f33)
        return NormalFormS1.build(order, f32=v ** 3, f33=u ** 3)
    if body == "F4_corrected" and deform:
        return NormalFormS1.build(order, f32=v ** 3 + extra_f32, f33=u ** 3 + extra_f33)
    p = _PARAM.match(body)
    if not p:
        raise UnknownName(name)
    letter, k = p["letter"], int(p["k"])
    sign = -1 if p["sign"] == "-" else 1
    if family == "model":
        if letter != "S":
            raise UnknownName(name)
        return NormalFormS1.build(order, f32=v * u ** (k + 1) + sign * v ** 3)
    if k < 1:
        raise UnknownName(name)
    if letter == "S":
        return NormalFormS1.build(order, f32=v + extra_f32, f33=sign * u ** (k + 1) + extra_f33)
    if letter == "B":
        return NormalFormS1.build(order, f32=sign * v ** (2 * k - 1) + extra_f32,
                                  f33=u ** 2 + extra_f33)
    return NormalFormS1.build(order, f32=u * v + extra_f32, f33=sign * u ** k + extra_f33)


# -- germ-spec files ------------------------------------------------------------------


def parse_germ_spec(text: str) -> MapGerm:
    """Parse the JSON germ-spec format into a :class:`MapGerm`."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("germ spec must be a JSON object")
    if data.get("vars", ["u", "v", "s"]) != ["u", "v", "s"]:
        raise ParseError('"vars" must be ["u", "v", "s"]')
    order = data.get("order")
    if not isinstance(order, int) or isinstance(order, bool) or order < 0:
        raise ParseError('"order" must be a non-negative integer')
    comps = data.get("components")
    if not isinstance(comps, list) or len(comps) != 3:
        raise ParseError('"components" must list three components')
    jets = []
    for idx, comp in enumerate(comps):
        if not isinstance(comp, list):
            raise ParseError(f"component {idx} must be a list of terms")
        coeffs = {}
        for term in comp:
            try:
                exps, num, den = term
                exps = tuple(exps)
                ok = (len(exps) == 3 and all(isinstance(e, int) and e >= 0 for e in exps)
                      and isinstance(num, int) and isinstance(den, int) and den != 0)
            except (TypeError, ValueError):
                ok = False
            if not ok:
                raise ParseError(f"component {idx}: bad term {term!r}")
            if exps in coeffs:
                raise ParseError(f"component {idx}: duplicate exponent {list(exps)}")
            coeffs[exps] = Fraction(num, den)
        jets.append(Jet(coeffs, order))
    return MapGerm(*jets)


def load_germ_spec(path) -> MapGerm:
    with open(path, encoding="utf-8") as fh:
        return parse_germ_spec(fh.read())


def germ_spec_text(germ) -> str:
    if not isinstance(germ, MapGerm):
        germ = assemble(germ)
    comps = []
    for comp in germ:
        terms = []
        for e, c in comp.terms():
            c = Fraction(c) if not isinstance(c, Fraction) else c
            terms.append([list(e), c.numerator, c.denominator])
        comps.append(terms)
    data = {"vars": ["u", "v", "s"], "order": germ.order, "components": comps}
    return json.dumps(data, indent=1) + "\n"


def dump_germ_spec(germ, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(germ_spec_text(germ))
