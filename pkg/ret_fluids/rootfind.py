"""Scalar root finding for monotone functions.

Newton steps are taken only while they stay strictly inside the current
bracket and shrink the residual fast enough; otherwise the step falls back to
bisection. This keeps the solver safe where the derivative is unbounded, as the
power-law source Jacobian is at sigma = 0 for m > 1.
"""
import logging
import math

import numpy as np

from ret_fluids.exceptions import ConvergenceError, NewtonFailure

logger = logging.getLogger(__name__)


def expand_bracket(f, target, start=1.0, max_doublings=200):
    """Return (lo, hi) with f(lo) <= target <= f(hi) for increasing f with f(0) = 0."""
    if target == 0:
        return 0.0, 0.0

    direction = 1.0 if target > 0 else -1.0
    step = abs(start) if start else 1.0
    inner = 0.0
    for i in range(max_doublings):
        outer = direction * step
        value = f(outer)
        if (value - target) * direction >= 0:
            return (inner, outer) if direction > 0 else (outer, inner)
        inner = outer
        step *= 2.0

    raise ConvergenceError('failed to bracket target {} after {} doublings'.format(
        target, max_doublings), iterations=max_doublings)


def safeguarded_newton(f, df, lo, hi, x0=None, rtol=1e-15, ftol=0.0, max_iter=200):
    """Solve f(x) = 0 for increasing f on [lo, hi].

    ftol is an absolute residual tolerance; iteration also stops when the
    bracket width falls below rtol * max(1, |x|).
    """
    if lo > hi:
        lo, hi = hi, lo

    f_lo = f(lo)
    if f_lo == 0:
        return lo
    f_hi = f(hi)
    if f_hi == 0:
        return hi
    if f_lo > 0 or f_hi < 0:
        raise ConvergenceError('root is not bracketed: f({})={}, f({})={}'.format(
            lo, f_lo, hi, f_hi))

    x = 0.5 * (lo + hi) if x0 is None or not lo < x0 < hi else x0
    fx = f(x)
    previous_step = hi - lo

    for iteration in range(max_iter):
        if abs(fx) <= ftol or fx == 0:
            return x

        if fx < 0:
            lo = x
        else:
            hi = x

        slope = df(x)
        candidate = None
        if math.isfinite(slope) and slope > 0:
            newton = x - fx / slope
            if lo < newton < hi and abs(newton - x) < 0.5 * previous_step:
                candidate = newton

        if candidate is None:
            candidate = 0.5 * (lo + hi)
            logger.debug('bisection fallback at x=%r', x)

        previous_step = abs(candidate - x)
        x = candidate
        fx = f(x)

        if hi - lo <= rtol * max(1.0, abs(x)) or previous_step <= rtol * max(1.0, abs(x)) * 0.5:
            return x

    raise ConvergenceError('safeguarded Newton did not converge in {} iterations'.format(
        max_iter), iterations=max_iter)


def safeguarded_newton_array(f, df, lo, hi, rtol=1e-15, ftol=0.0, max_iter=200):
    """Elementwise safeguarded_newton over arrays of independent brackets.

    f and df act elementwise on the full array; entries whose bracket is
    degenerate (lo == hi) are returned as lo.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    lo, hi = np.minimum(lo, hi), np.maximum(lo, hi)

    x = np.where(hi == lo, lo, 0.5 * (lo + hi))
    fx = f(x)
    done = (hi == lo) | (fx == 0)
    previous_step = hi - lo

    for iteration in range(max_iter):
        active = ~done
        if not active.any():
            return x

        lo = np.where(active & (fx < 0), x, lo)
        hi = np.where(active & (fx > 0), x, hi)

        slope = df(x)
        with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
            newton = x - fx / slope
        usable = (np.isfinite(slope) & (slope > 0) & (newton > lo) & (newton < hi)
                  & (np.abs(newton - x) < 0.5 * previous_step))
        candidate = np.where(usable, newton, 0.5 * (lo + hi))
        candidate = np.where(active, candidate, x)

        previous_step = np.where(active, np.abs(candidate - x), previous_step)
        x = candidate
        fx = f(x)

        tol = rtol * np.maximum(1.0, np.abs(x))
        done |= (np.abs(fx) <= ftol) | (fx == 0) | (hi - lo <= tol) | (previous_step <= 0.5 * tol)

    failed = np.flatnonzero(~done)
    raise NewtonFailure('safeguarded Newton did not converge in {} iterations'.format(max_iter),
                        cell=int(failed[0]) if failed.size else None, iterations=max_iter)
