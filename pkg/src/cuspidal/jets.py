"""Truncated power series ("jets") in the three variables ``u, v, s``.

A :class:`Jet` stores a sparse map from exponent triples ``(i, j, k)`` to
coefficients together with a truncation ``order``: every monomial of weighted
degree ``<= order`` is known exactly, everything above it is discarded.
Coefficients stay exact (:class:`fractions.Fraction`) as long as the inputs
are rational and silently become ``float`` as soon as one float enters.

The default weights are ``(1, 1, 1)`` (total degree).  A jet whose middle
slot stands for ``w = v**2`` uses weights ``(1, 2, 1)`` so that its order is
still measured in powers of ``v``.

    >>> u, v, s = Jet.variables(4)
    >>> (1 + u) * (1 - u)
    Jet('1 - u^2', order=4)
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Integral, Rational, Real

from gmpy2 import mpq

from .errors import (
    NegativeConstantTerm,
    NonvanishingConstantTerm,
    NotDivisible,
    ZeroConstantTerm,
)

__all__ = [
    "DEFAULT_ORDER",
    "Jet",
    "as_scalar",
    "cross",
    "det3",
    "dot",
    "exact_sqrt",
    "invert_unit",
    "sqrt_unit",
]

DEFAULT_ORDER = 8
VARIABLES = ("u", "v", "s")
_ALIASES = {"u": 0, "v": 1, "s": 2, "w": 1, "t": 0}


def var_index(var) -> int:
    if isinstance(var, Integral) and 0 <= var < 3:
        return int(var)
    try:
        return _ALIASES[var]
    except (KeyError, TypeError):
        raise ValueError(f"unknown variable {var!r}") from None


def as_scalar(c):
    """Coerce to the scalar tower: ``Fraction`` for rationals, ``float`` otherwise."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, bool):
        return Fraction(int(c))
    if isinstance(c, Integral):
        return Fraction(int(c))
    if isinstance(c, Rational):
        return Fraction(c.numerator, c.denominator)
    if isinstance(c, Real):
        return float(c)
    # numpy scalars register with numbers.Real/Integral, so this is mostly
    # reached by objects exposing __float__
    return float(c)


def exact_sqrt(x):
    """Square root staying in ``Fraction`` when ``x`` is a rational square."""
    if x < 0:
        raise NegativeConstantTerm(f"square root of negative value {x}")
    if isinstance(x, Fraction):
        n, d = x.numerator, x.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
    return math.sqrt(x)


def _wdeg(e, w):
    return e[0] * w[0] + e[1] * w[1] + e[2] * w[2]


class Jet:
    __slots__ = ("_c", "order", "weights")

    def __init__(self, coeffs=None, order=DEFAULT_ORDER, weights=(1, 1, 1)):
        self.order = int(order)
        self.weights = tuple(int(x) for x in weights)
        c = {}
        if coeffs:
            w = self.weights
            for e, val in coeffs.items():
                e = tuple(int(x) for x in e)
                if len(e) != 3 or min(e) < 0:
                    raise ValueError(f"bad exponent {e!r}")
                if _wdeg(e, w) > self.order:
                    continue
                val = as_scalar(val)
                if val != 0:
                    c[e] = c.get(e, 0) + val
                    if c[e] == 0:
                        del c[e]
        self._c = c

    @classmethod
    def _raw(cls, c, order, weights):
        j = cls.__new__(cls)
        j._c = c
        j.order = order
        j.weights = weights
        return j

    # -- constructors ---------------------------------------------------

    @classmethod
    def const(cls, value, order=DEFAULT_ORDER, weights=(1, 1, 1)):
        return cls({(0, 0, 0): value}, order, weights)

    @classmethod
    def var(cls, name, order=DEFAULT_ORDER, weights=(1, 1, 1)):
        e = [0, 0, 0]
        e[var_index(name)] = 1
        return cls({tuple(e): 1}, order, weights)

    @classmethod
    def variables(cls, order=DEFAULT_ORDER):
        return tuple(cls.var(n, order) for n in VARIABLES)

    @classmethod
    def monomial(cls, exps, coeff=1, order=DEFAULT_ORDER, weights=(1, 1, 1)):
        return cls({tuple(exps): coeff}, order, weights)

    # -- inspection -----------------------------------------------------

    def __getitem__(self, exps):
        return self._c.get(tuple(exps), Fraction(0))

    coefficient = __getitem__

    def items(self):
        return self._c.items()

    def terms(self):
        """Terms sorted by weighted degree, then lexicographically."""
        w = self.weights
        return sorted(self._c.items(), key=lambda t: (_wdeg(t[0], w), t[0][::-1]))

    def __len__(self):
        return len(self._c)

    @property
    def constant(self):
        return self._c.get((0, 0, 0), Fraction(0))

    @property
    def is_exact(self):
        return all(isinstance(c, Fraction) for c in self._c.values())

    def degree_of(self, exps):
        return _wdeg(exps, self.weights)

    def lowest_degree(self):
        if not self._c:
            return math.inf
        return min(_wdeg(e, self.weights) for e in self._c)

    def variables_used(self):
        return {k for e in self._c for k in range(3) if e[k]}

    def is_zero(self, tol=0):
        if tol == 0:
            return not self._c
        return all(abs(c) <= tol for c in self._c.values())

    def max_abs(self):
        return max((abs(c) for c in self._c.values()), default=0)

    # -- truncation and structure ----------------------------------------

    def truncate(self, order):
        order = min(order, self.order)
        w = self.weights
        return Jet._raw({e: c for e, c in self._c.items() if _wdeg(e, w) <= order}, order, w)

    def homogeneous_part(self, d):
        w = self.weights
        return Jet._raw({e: c for e, c in self._c.items() if _wdeg(e, w) == d}, self.order, w)

    def with_order(self, order):
        """Relabel the known order (only ever lowered)."""
        return self.truncate(order)

    def map_coeffs(self, fn):
        out = {}
        for e, c in self._c.items():
            c = as_scalar(fn(c))
            if c != 0:
                out[e] = c
        return Jet._raw(out, self.order, self.weights)

    def to_float(self):
        return self.map_coeffs(float)

    def chop(self, tol):
        return Jet._raw({e: c for e, c in self._c.items() if abs(c) > tol}, self.order, self.weights)

    def filter(self, pred):
        """Keep only the terms whose exponent triple satisfies ``pred``."""
        return Jet._raw({e: c for e, c in self._c.items() if pred(e)}, self.order, self.weights)

    def coefficient_of(self, var, power):
        """Coefficient of ``var**power`` as a jet in the remaining variables."""
        k = var_index(var)
        out = {}
        for e, c in self._c.items():
            if e[k] == power:
                e2 = list(e)
                e2[k] = 0
                out[tuple(e2)] = c
        return Jet._raw(out, self.order - power * self.weights[k], self.weights)

    def divide_by_var(self, var, power=1):
        """Exact division by ``var**power``; raises :class:`NotDivisible`."""
        k = var_index(var)
        out = {}
        for e, c in self._c.items():
            if e[k] < power:
                raise NotDivisible(
                    f"term {_fmt_monomial(e)} is not divisible by {VARIABLES[k]}^{power}")
            e2 = list(e)
            e2[k] -= power
            out[tuple(e2)] = c
        return Jet._raw(out, self.order - power * self.weights[k], self.weights)

    def mul_monomial(self, exps, coeff=1):
        """Multiply by ``coeff * u^i v^j s^k``; the known order grows with the degree."""
        coeff = as_scalar(coeff)
        d = _wdeg(exps, self.weights)
        if coeff == 0:
            return Jet._raw({}, self.order + d, self.weights)
        out = {(e[0] + exps[0], e[1] + exps[1], e[2] + exps[2]): c * coeff
               for e, c in self._c.items()}
        return Jet._raw(out, self.order + d, self.weights)

    def scale_vars(self, factors):
        """Substitute ``u -> a*u, v -> b*v, s -> c*s`` for scalar factors."""
        factors = [as_scalar(f) for f in factors]
        out = {}
        for e, c in self._c.items():
            val = c * factors[0] ** e[0] * factors[1] ** e[1] * factors[2] ** e[2]
            if val != 0:
                out[e] = val
        return Jet._raw(out, self.order, self.weights)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Jet):
            if other.weights != self.weights:
                raise ValueError("cannot combine jets with different weights")
            return other
        return Jet._raw(({(0, 0, 0): as_scalar(other)} if other != 0 else {}),
                        self.order, self.weights)

    def __add__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        w = self.weights
        out = {e: c for e, c in self._c.items() if _wdeg(e, w) <= order}
        for e, c in other._c.items():
            if _wdeg(e, w) > order:
                continue
            val = out.get(e, 0) + c
            if val == 0:
                out.pop(e, None)
            else:
                out[e] = val
        return Jet._raw(out, order, w)

    __radd__ = __add__

    def __neg__(self):
        return Jet._raw({e: -c for e, c in self._c.items()}, self.order, self.weights)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            other = as_scalar(other)
            if other == 0:
                return Jet._raw({}, self.order, self.weights)
            return Jet._raw({e: c * other for e, c in self._c.items()}, self.order, self.weights)
        other = self._coerce(other)
        order = min(self.order, other.order)
        if self.is_exact and other.is_exact:
            c = _from_mpq(_mul_dicts(_to_mpq(self._c), _to_mpq(other._c), order, self.weights))
        else:
            c = _mul_dicts(self._c, other._c, order, self.weights)
        return Jet._raw(c, order, self.weights)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * invert_unit(other)
        other = as_scalar(other)
        if other == 0:
            raise ZeroDivisionError("jet division by zero")
        if isinstance(other, Fraction):
            return Jet._raw({e: c / other for e, c in self._c.items()}, self.order, self.weights)
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        return invert_unit(self) * other

    def __pow__(self, n):
        if not isinstance(n, Integral) or n < 0:
            raise ValueError("jets support non-negative integer powers only")
        result = Jet.const(1, self.order, self.weights)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Jet):
            if other.weights != self.weights:
                return False
            order = min(self.order, other.order)
            return self.truncate(order)._c == other.truncate(order)._c
        try:
            other = as_scalar(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self._c == ({(0, 0, 0): other} if other != 0 else {})

    __hash__ = None

    # -- calculus ---------------------------------------------------------

    def differentiate(self, var, times=1):
        k = var_index(var)
        c = self._c
        for _ in range(times):
            out = {}
            for e, val in c.items():
                if e[k]:
                    e2 = list(e)
                    e2[k] -= 1
                    out[tuple(e2)] = val * e[k]
            c = out
        return Jet._raw(c, self.order - times * self.weights[k], self.weights)

    def diff(self, *vars):
        """``j.diff('u', 'v')`` is the mixed partial derivative."""
        out = self
        for var in vars:
            out = out.differentiate(var)
        return out

    def compose(self, inner, order=None):
        """Substitute jets (without constant term) for ``u, v, s``.

        ``inner`` has three entries; ``None`` keeps the variable as is.  The
        result is exact through the returned order.
        """
        if len(inner) != 3:
            raise ValueError("compose needs three inner entries")
        given = [j for j in inner if j is not None]
        weights = given[0].weights if given else self.weights
        subs = []
        for k, j in enumerate(inner):
            if j is None:
                if weights[k] != self.weights[k]:
                    raise ValueError("identity slot with mismatched weights")
                e = [0, 0, 0]
                e[k] = 1
                j = Jet._raw({tuple(e): Fraction(1)}, math.inf, weights)
            elif j.weights != weights:
                raise ValueError("inner jets must share weights")
            if j.constant != 0:
                raise NonvanishingConstantTerm(
                    f"inner jet for {VARIABLES[k]} has constant term {j.constant}")
            subs.append(j)

        used = self.variables_used()
        ratio = math.inf
        for k in used:
            low = subs[k].lowest_degree()
            ratio = min(ratio, low / self.weights[k])
        if ratio is math.inf:
            bound = self.order
        else:
            bound = math.ceil((self.order + 1) * ratio) - 1
        # an error of degree M+1 in inner[k] enters through d(outer)/dx_k, whose
        # composed lowest degree is at least ceil(L_k * ratio)
        bounds = [bound]
        for k in used:
            m = subs[k].order
            if m == math.inf:
                continue
            low = self.differentiate(k).lowest_degree()
            lift = 0 if low is math.inf or ratio is math.inf else math.ceil(low * ratio)
            bounds.append(min(m + lift, 2 * m + 1))
        result_order = min(bounds)
        if order is not None:
            result_order = min(result_order, order)
        if result_order == math.inf:
            result_order = self.order
        result_order = int(result_order)
        if self.is_exact and all(j.is_exact for j in subs):
            outer = _to_mpq(self._c)
            subs = [Jet._raw(_to_mpq(j._c), j.order, j.weights) for j in subs]
            c = _from_mpq(_compose(outer, subs, result_order, weights, mpq(1)))
        else:
            subs = [j.to_float() for j in subs]
            c = _compose(self.to_float()._c, subs, result_order, weights, 1.0)
        return Jet._raw(c, result_order, weights)

    # -- evaluation -----------------------------------------------------

    def evaluate(self, point):
        """Value of the stored polynomial at ``point`` (accurate only near 0).

        Works with scalars or broadcastable numpy arrays.
        """
        x = [as_scalar(p) if not hasattr(p, "shape") else p for p in point]
        total = 0
        cache = [dict(), dict(), dict()]

        def pw(k, n):
            if n == 0:
                return 1
            d = cache[k]
            if n not in d:
                d[n] = x[k] ** n
            return d[n]

        for e, c in self._c.items():
            total = total + c * pw(0, e[0]) * pw(1, e[1]) * pw(2, e[2])
        return total

    def substitute(self, **values):
        """Replace variables by numbers, e.g. ``j.substitute(s=0.1)``.

        The jet is treated as the polynomial it stores, so the order is kept.
        """
        idx = {var_index(k): as_scalar(v) for k, v in values.items()}
        out = {}
        for e, c in self._c.items():
            e2 = list(e)
            val = c
            for k, x in idx.items():
                if e[k]:
                    val = val * x ** e[k]
                    e2[k] = 0
            e2 = tuple(e2)
            out[e2] = out.get(e2, 0) + val
        out = {e: c for e, c in out.items() if c != 0}
        return Jet._raw(out, self.order, self.weights)

    def restrict(self, var):
        """Set ``var = 0`` (exact at every order)."""
        k = var_index(var)
        return Jet._raw({e: c for e, c in self._c.items() if e[k] == 0}, self.order, self.weights)

    def taylor_shift(self, point):
        """Re-expand the stored polynomial about ``point``."""
        c = dict(self._c)
        for k, x0 in enumerate(point):
            x0 = as_scalar(x0)
            if x0 == 0:
                continue
            out = {}
            for e, val in c.items():
                n = e[k]
                for a in range(n + 1):
                    e2 = list(e)
                    e2[k] = a
                    e2 = tuple(e2)
                    out[e2] = out.get(e2, 0) + val * math.comb(n, a) * x0 ** (n - a)
            c = {e: v for e, v in out.items() if v != 0}
        return Jet._raw(c, self.order, self.weights)

    # -- display -----------------------------------------------------------

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, c in self.terms():
            mono = _fmt_monomial(e, self.weights)
            neg = c < 0
            mag = -c if neg else c
            if mono == "1":
                body = _fmt_scalar(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fmt_scalar(mag)}*{mono}"
            parts.append(("- " if neg else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[1:]

    def __repr__(self):
        return f"Jet({str(self)!r}, order={self.order})"


def _fmt_scalar(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    return str(c)


def _fmt_monomial(e, weights=(1, 1, 1)):
    names = ("u", "w" if weights[1] == 2 else "v", "s")
    out = []
    for name, n in zip(names, e):
        if n == 1:
            out.append(name)
        elif n > 1:
            out.append(f"{name}^{n}")
    return "*".join(out) or "1"


def _mul_dicts(a, b, order, w):
    if len(a) > len(b):
        a, b = b, a
    blist = sorted((_wdeg(e, w), e, c) for e, c in b.items())
    out = {}
    get = out.get
    for ea, ca in a.items():
        lim = order - _wdeg(ea, w)
        if lim < 0:
            continue
        a0, a1, a2 = ea
        for db, eb, cb in blist:
            if db > lim:
                break
            key = (a0 + eb[0], a1 + eb[1], a2 + eb[2])
            out[key] = get(key, 0) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


def _is_plain_var(j, k):
    return len(j._c) == 1 and j._c.get(tuple(1 if i == k else 0 for i in range(3))) == 1


def _to_mpq(c):
    return {e: mpq(x.numerator, x.denominator) for e, x in c.items()}


def _from_mpq(c):
    return {e: Fraction(int(x.numerator), int(x.denominator)) for e, x in c.items()}


def _compose(outer, subs, order, w, one):
    # group outer terms by (v, s) exponents so that the u-powers are combined
    # with cheap scalar operations before a single product per group
    plain = [_is_plain_var(subs[k], k) for k in range(3)]
    powers = [{0: {(0, 0, 0): one}} for _ in range(3)]

    def power(k, n):
        p = powers[k]
        if n not in p:
            prev = power(k, n - 1)
            p[n] = _mul_dicts(prev, subs[k]._c, order, w)
        return p[n]

    def shift(d, k, n):
        out = {}
        for e, c in d.items():
            e2 = list(e)
            e2[k] += n
            e2 = tuple(e2)
            if _wdeg(e2, w) <= order:
                out[e2] = c
        return out

    groups = {}
    for e, c in outer.items():
        groups.setdefault((e[1], e[2]), []).append((e[0], c))

    result = {}
    for (j, k), items in groups.items():
        acc = {}
        for i, c in items:
            if plain[0]:
                acc[(i, 0, 0)] = acc.get((i, 0, 0), 0) + c
            else:
                for e, val in power(0, i).items():
                    acc[e] = acc.get(e, 0) + c * val
        acc = {e: c for e, c in acc.items() if c != 0 and _wdeg(e, w) <= order}
        for kk, n in ((1, j), (2, k)):
            if n == 0 or not acc:
                continue
            if plain[kk]:
                acc = shift(acc, kk, n)
            else:
                acc = _mul_dicts(acc, power(kk, n), order, w)
        for e, c in acc.items():
            result[e] = result.get(e, 0) + c
    return {e: c for e, c in result.items() if c != 0}


# -- units -----------------------------------------------------------------------


def invert_unit(a: Jet) -> Jet:
    """Multiplicative inverse of a jet with non-zero constant term."""
    a0 = a.constant
    if a0 == 0:
        raise ZeroConstantTerm("cannot invert a jet with zero constant term")
    r = a * (1 / a0 if isinstance(a0, Fraction) else 1.0 / a0) - 1
    result = Jet.const(1, a.order, a.weights)
    steps = a.order // max(1, min(a.weights)) if a.order >= 0 else 0
    for _ in range(steps):
        result = 1 - r * result
    return result * (1 / a0 if isinstance(a0, Fraction) else 1.0 / a0)


def sqrt_unit(a: Jet) -> Jet:
    """Square root of a jet whose constant term is positive."""
    a0 = a.constant
    if a0 == 0:
        raise ZeroConstantTerm("square root of a jet with zero constant term")
    if a0 < 0:
        raise NegativeConstantTerm(f"square root of a jet with constant term {a0}")
    r = a * (1 / a0 if isinstance(a0, Fraction) else 1.0 / a0) - 1
    steps = a.order // max(1, min(a.weights)) if a.order >= 0 else 0
    coeffs = [Fraction(1)]
    for n in range(1, steps + 1):
        coeffs.append(coeffs[-1] * (Fraction(1, 2) - (n - 1)) / n)
    result = Jet.const(coeffs[steps], a.order, a.weights)
    for n in range(steps - 1, -1, -1):
        result = coeffs[n] + r * result
    return result * exact_sqrt(a0)


# -- 3-vector helpers (entries may be jets or scalars) ---------------------------


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def det3(a, b, c):
    return dot(a, cross(b, c))
