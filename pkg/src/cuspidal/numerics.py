"""Small numeric helpers shared by the oracles.

Root finding delegates to :mod:`scipy.optimize`; this module only adds the
pieces specific to series checks (rational polishing, limit extrapolation
with explicit exponents and log-log slopes).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy import optimize

from .errors import NoConvergence

__all__ = ["loglog_slope", "newton", "polish_rational", "richardson"]


def newton(f, df, x0, *, tol=1e-14, maxiter=60):
    """Newton iteration with a convergence check.

    Args:
        f: Scalar function.
        df: Its derivative.
        x0: Starting point.
        tol: Absolute step tolerance.
        maxiter: Iteration cap.

    Returns:
        The root as a float.

    Raises:
        NoConvergence: If the iteration stalls or the derivative vanishes.
    """
    try:
        root, info = optimize.newton(lambda x: float(f(x)), float(x0), fprime=lambda x: float(df(x)),
                                     tol=tol, maxiter=maxiter, full_output=True, disp=False)
    except (RuntimeError, ZeroDivisionError, OverflowError) as exc:
        raise NoConvergence(str(exc)) from None
    if not info.converged or not np.isfinite(root):
        raise NoConvergence(f"Newton from {x0} did not converge ({info.flag})")
    return float(root)


def polish_rational(x, residual, *, max_denominator=10**6):
    """Return a nearby rational ``q`` with ``residual(q) == 0`` exactly, else ``None``."""
    q = Fraction(x).limit_denominator(max_denominator)
    try:
        return q if residual(q) == 0 else None
    except (ZeroDivisionError, OverflowError):
        return None


def richardson(hs, values, exponents):
    """Extrapolate ``values(h)`` to ``h = 0``.

    Fits ``value(h) = L + sum_p a_p h**p`` exactly through the samples.

    Args:
        hs: Sample step sizes, ``len(exponents) + 1`` of them.
        values: Function values at ``hs``.
        exponents: Powers of ``h`` present in the error expansion.

    Returns:
        The estimate of ``L``.
    """
    hs = np.asarray(hs, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(hs) != len(exponents) + 1:
        raise ValueError("need one more sample than error exponents")
    scale = np.max(np.abs(hs))
    t = hs / scale
    mat = np.column_stack([np.ones_like(t)] + [t ** p for p in exponents])
    return float(np.linalg.solve(mat, values)[0])


def loglog_slope(xs, ys):
    """Least-squares slope of ``log|y|`` against ``log|x|``."""
    xs = np.abs(np.asarray(xs, dtype=float))
    ys = np.abs(np.asarray(ys, dtype=float))
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])
