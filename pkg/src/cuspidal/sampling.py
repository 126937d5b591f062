"""Seeded random generators for property checks.

All coefficients are small rationals so that exact-mode checks stay fast.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .germs import FrontalNormalForm, MapGerm, NormalFormS1, W_WEIGHTS
from .jets import Jet

__all__ = [
    "EvenCurve",
    "random_admissible_transform",
    "random_even_curve",
    "random_frontal_form",
    "random_jet",
    "random_normal_form",
    "random_rational",
    "random_rotation",
    "transform_germ",
]

D20_CHOICES = (Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 2))


def random_rational(rng: random.Random, bound=3, dens=(1, 2, 3, 4)):
    return Fraction(rng.randint(-bound * 4, bound * 4), 4) / rng.choice(dens)


def random_jet(rng, order, variables=(0, 1, 2), *, min_degree=0, density=0.4,
               weights=(1, 1, 1), bound=3):
    """Random sparse jet using only ``variables`` (slot indices)."""
    coeffs = {}
    for i in range(order + 1):
        for j in range(order + 1):
            for k in range(order + 1):
                e = (i, j, k)
                deg = i * weights[0] + j * weights[1] + k * weights[2]
                if deg > order or deg < min_degree:
                    continue
                if any(e[x] and x not in variables for x in range(3)):
                    continue
                if rng.random() < density:
                    coeffs[e] = random_rational(rng, bound)
    return Jet(coeffs, order, weights)


def random_normal_form(rng, order=8, *, frontal=None) -> NormalFormS1:
    """Random normal form; ``frontal=None`` makes ``f33 = 0`` half of the time.

    Non-frontal draws sometimes carry a single high-degree ``f33`` term so
    that exactness at every retained order matters.
    """
    if frontal is None:
        frontal = rng.random() < 0.5
    n = order
    f33 = Jet({}, n - 1)
    if not frontal:
        if rng.random() < 0.3:
            deg = rng.randint(1, n - 1)
            i = rng.randint(0, deg)
            f33 = Jet({(i, 0, deg - i): random_rational(rng) or 1}, n - 1)
        else:
            while f33.is_zero():
                f33 = random_jet(rng, n - 1, (0, 2), min_degree=1)
    return NormalFormS1(
        f21=random_jet(rng, n - 2, (0,)),
        f24=random_jet(rng, n - 2, (0, 2)),
        f31=random_jet(rng, n - 2, (0,)),
        f32=random_jet(rng, n - 2, (0, 1, 2), min_degree=1, density=0.25),
        f33=f33,
        f34=random_jet(rng, n - 2, (0, 2)),
    )


def random_frontal_form(rng, order=8, *, d2_sign=1, c3_sign=None, d20=None,
                        density=0.35, bound=3) -> FrontalNormalForm:
    """Random frontal normal form with reduced ``c1`` and ``d2(0) = d2_sign * d20^2``.

    ``bound`` caps the coefficients of everything except ``d20`` and ``c3(0)``.
    """
    n = order
    if d20 is None:
        d20 = rng.choice(D20_CHOICES)
    m = n - 3
    u, _, s = Jet.variables(m)
    d1 = random_jet(rng, m - 2, (2,), density=density, bound=bound)
    d2 = random_jet(rng, m - 2, (2,), min_degree=1, density=density, bound=bound) + d2_sign * d20 ** 2
    d3 = random_jet(rng, m - 3, (2,), density=density, bound=bound)
    d4 = random_jet(rng, m - 4, (0, 2), density=density, bound=bound)
    c1 = (s + d1.mul_monomial((1, 0, 1)) + d2.mul_monomial((2, 0, 0))
          + d3.mul_monomial((3, 0, 0)) + d4.mul_monomial((4, 0, 0)))
    c3 = random_jet(rng, n - 5, (0, 1, 2), density=density, weights=W_WEIGHTS, bound=bound)
    c30 = c3.constant
    if c30 == 0 or (c3_sign is not None and (c30 > 0) != (c3_sign > 0)):
        mag = abs(c30) or rng.choice((Fraction(1), Fraction(1, 2), Fraction(2), Fraction(1, 3)))
        sign = c3_sign if c3_sign is not None else rng.choice((1, -1))
        c3 = c3 + (sign * mag - c30)
    return FrontalNormalForm(
        f21=random_jet(rng, n - 2, (0,), density=density, bound=bound),
        f31=random_jet(rng, n - 2, (0,), density=density, bound=bound),
        f24=random_jet(rng, n - 2, (0, 2), density=density, bound=bound),
        f34=random_jet(rng, n - 2, (0, 2), density=density, bound=bound),
        c0=random_jet(rng, n - 2, (0, 2), min_degree=1, density=density, bound=bound),
        c1=c1,
        c2=random_jet(rng, n - 4, (0, 1, 2), density=density, weights=W_WEIGHTS, bound=bound),
        c3=c3,
    )


def random_rotation(rng, bound=3):
    """Rational rotation from the Cayley transform of a random skew matrix."""
    a, b, c = (Fraction(rng.randint(-bound * 2, bound * 2), 2) for _ in range(3))
    k = [[0, -c, b], [c, 0, -a], [-b, a, 0]]
    k2 = [[sum(k[i][m] * k[m][j] for m in range(3)) for j in range(3)] for i in range(3)]
    den = 1 + a * a + b * b + c * c
    return tuple(tuple((1 if i == j else 0) + 2 * (k[i][j] + k2[i][j]) / den for j in range(3))
                 for i in range(3))


def random_admissible_transform(rng, order=8, *, identity_parameter=True):
    """``(phi1, phi2, phi3)`` keeping the ``s``-axis, with ``phi1_u(0) > 0`` and positive Jacobian.

    ``phi3`` is the identity unless ``identity_parameter`` is false, in which
    case it is a random series in ``s`` with positive slope.
    """
    n = order
    u, v, s = Jet.variables(n)
    while True:
        a = Fraction(rng.randint(1, 8), rng.choice((1, 2, 4)))
        b, c, e = (random_rational(rng, 2) for _ in range(3))
        if a * e - b * c > 0:
            break
    hi = dict(min_degree=2, density=0.15, bound=1)
    phi1 = a * u + b * v + random_jet(rng, n, (0, 1, 2), **hi).filter(lambda x: x[0] + x[1] >= 1)
    phi2 = c * u + e * v + random_jet(rng, n, (0, 1, 2), **hi).filter(lambda x: x[0] + x[1] >= 1)
    if identity_parameter:
        phi3 = s
    else:
        phi3 = Fraction(rng.randint(1, 6), rng.choice((1, 2, 3))) * s + random_jet(
            rng, n, (2,), min_degree=2, density=0.5, bound=1)
    return phi1, phi2, phi3


def transform_germ(germ: MapGerm, rotation, phi) -> MapGerm:
    """``R o f o phi``."""
    return germ.compose(list(phi)).rotate(rotation)


class EvenCurve:
    """Even polynomial curve ``c(v)`` with a unit normal field ``nu(v)`` orthogonal to ``c'(v)``.

    ``nu`` comes from projecting an even auxiliary field off the tangent, so it
    is smooth and even in ``v``.
    """

    def __init__(self, coeffs, aux):
        self.coeffs = coeffs  # {power: 3-vector}, powers even
        self.aux = aux  # {power: 3-vector}, powers even

    def jets(self, order=6):
        return [Jet({(0, p, 0): vec[k] for p, vec in self.coeffs.items()}, order) for k in range(3)]

    def _poly(self, table, v, deriv=0):
        out = [0.0, 0.0, 0.0]
        for p, vec in table.items():
            if p < deriv:
                continue
            f = 1.0
            for m in range(deriv):
                f *= p - m
            for k in range(3):
                out[k] += float(vec[k]) * f * v ** (p - deriv)
        return out

    def derivatives(self, v):
        return self._poly(self.coeffs, v, 1), self._poly(self.coeffs, v, 2)

    def normal(self, v):
        a = self._poly(self.aux, v)
        if v == 0:
            t = [2 * float(x) for x in self.coeffs.get(2, (0, 0, 0))]
        else:
            t = self._poly(self.coeffs, v, 1)
        tt = sum(x * x for x in t)
        at = sum(x * y for x, y in zip(a, t))
        n = [a[k] - at / tt * t[k] for k in range(3)]
        nn = sum(x * x for x in n) ** 0.5
        return [x / nn for x in n]

    def normal_at_zero_exact(self):
        a = [Fraction(x) for x in self.aux.get(0, (0, 0, 0))]
        t = [2 * Fraction(x) for x in self.coeffs[2]]
        tt = sum(x * x for x in t)
        at = sum(x * y for x, y in zip(a, t))
        return [a[k] - at / tt * t[k] for k in range(3)]


def random_even_curve(rng) -> EvenCurve:
    coeffs = {}
    while True:
        coeffs[2] = tuple(random_rational(rng, 2) for _ in range(3))
        if any(coeffs[2]):
            break
    coeffs[4] = tuple(random_rational(rng, 2) for _ in range(3))
    coeffs[6] = tuple(random_rational(rng, 1) for _ in range(3))
    aux = {}
    while True:
        aux[0] = tuple(random_rational(rng, 2) for _ in range(3))
        # keep the auxiliary field away from the tangent line
        t = coeffs[2]
        cr = (aux[0][1] * t[2] - aux[0][2] * t[1], aux[0][2] * t[0] - aux[0][0] * t[2],
              aux[0][0] * t[1] - aux[0][1] * t[0])
        if sum(x * x for x in cr) > Fraction(1, 4) * sum(x * x for x in t):
            break
    aux[2] = tuple(random_rational(rng, 1) for _ in range(3))
    return EvenCurve(coeffs, aux)
