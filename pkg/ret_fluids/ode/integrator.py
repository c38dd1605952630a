"""Adaptive Runge-Kutta-Fehlberg 4(5) integration with an implicit terminal phase.

The fifth-order solution is propagated (local extrapolation) and the
difference to the embedded fourth-order solution drives the step controller.
Stiffness is read off every accepted step: the two slopes evaluated at the
step end (the fifth stage and the new node) give a secant estimate rho of the
Jacobian norm, and once h * rho stays near the explicit stability boundary
for STIFF_STEPS accepted steps, or the controller proposes steps below
stiff_threshold times the integration span, the remaining interval is covered
by backward Euler with a step-doubling error estimate and Richardson
extrapolation, using an implicit_step callable supplied by the problem.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from ret_fluids.exceptions import ConvergenceError, MaxStepsExceeded, StepFailure

logger = logging.getLogger(__name__)

C = np.array([0.0, 1 / 4, 3 / 8, 12 / 13, 1.0, 1 / 2])

A = (
    (),
    (1 / 4,),
    (3 / 32, 9 / 32),
    (1932 / 2197, -7200 / 2197, 7296 / 2197),
    (439 / 216, -8.0, 3680 / 513, -845 / 4104),
    (-8 / 27, 2.0, -3544 / 2565, 1859 / 4104, -11 / 40),
)

B5 = np.array([16 / 135, 0.0, 6656 / 12825, 28561 / 56430, -9 / 50, 2 / 55])

# B5 minus the fourth-order weights
E = np.array([1 / 360, 0.0, -128 / 4275, -2197 / 75240, 1 / 50, 2 / 55])

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0

# h * rho above this counts as stability-limited; the real stability
# interval of the extrapolated pair ends near -3.7
STIFF_BOUND = 2.5
STIFF_STEPS = 15
# nonstiff steps that clear the stiffness count
NONSTIFF_STEPS = 6


@dataclass
class IntegrationResult:
    """Accepted nodes plus the slopes needed for Hermite dense output.

    Interval i spans times[i]..times[i + 1]; its end slopes are stored
    separately so segments glued at a rate discontinuity keep one-sided slopes.
    """
    times: list = field(default_factory=list)
    states: list = field(default_factory=list)
    slopes_start: list = field(default_factory=list)
    slopes_end: list = field(default_factory=list)
    stats: dict = field(default_factory=lambda: dict(steps=0, rejections=0, rhs_evaluations=0,
                                                     implicit_steps=0, implicit_from=None))

    def append(self, t, y, slope_start, slope_end):
        self.times.append(t)
        self.states.append(y)
        self.slopes_start.append(slope_start)
        self.slopes_end.append(slope_end)


class EmbeddedRungeKutta:
    def __init__(self, rhs, rtol=1e-8, atol=1e-10, max_steps=200000, first_step=None,
                 implicit_step=None, stiff_threshold=1e-6):
        if not rtol > 0 or not atol > 0:
            raise StepFailure('tolerances must be positive, got rtol={}, atol={}'.format(rtol, atol))
        self.rhs = rhs
        self.rtol = rtol
        self.atol = atol
        self.max_steps = max_steps
        self.first_step = first_step
        self.implicit_step = implicit_step
        self.stiff_threshold = stiff_threshold

    def _f(self, t, y, result):
        result.stats['rhs_evaluations'] += 1
        return np.asarray(self.rhs(t, y), dtype=float)

    def _error_norm(self, error, y, y_new):
        scale = self.atol + self.rtol * np.maximum(np.abs(y), np.abs(y_new))
        return float(np.max(np.abs(error) / scale))

    def _initial_step(self, t, y, f0, t_end, result):
        span = t_end - t
        if self.first_step is not None:
            return min(self.first_step, span)

        scale = self.atol + self.rtol * np.abs(y)
        d0 = np.max(np.abs(y) / scale)
        d1 = np.max(np.abs(f0) / scale)
        h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
        h0 = min(h0, span)

        f1 = self._f(t + h0, y + h0 * f0, result)
        d2 = np.max(np.abs(f1 - f0) / scale) / h0
        if max(d1, d2) <= 1e-15:
            h1 = max(1e-6, h0 * 1e-3)
        else:
            h1 = (0.01 / max(d1, d2)) ** (1 / 5)
        return min(100 * h0, h1, span)

    def _rk_step(self, t, y, h, k1, result):
        k = [k1]
        for i in range(1, 6):
            dy = sum(a * kj for a, kj in zip(A[i], k))
            k.append(self._f(t + C[i] * h, y + h * dy, result))
        k = np.array(k)
        y_new = y + h * (B5 @ k)
        error = h * (E @ k)
        # stage at t + h, compared against the slope at the accepted node
        y_end = y + h * sum(a * kj for a, kj in zip(A[4], k))
        return y_new, error, (y_end, k[4])

    def _implicit_pair(self, t, y, h):
        full = self.implicit_step(t, y, h)
        half = self.implicit_step(t, y, 0.5 * h)
        half = self.implicit_step(t + 0.5 * h, half, 0.5 * h)
        return 2.0 * half - full, half - full

    @staticmethod
    def _stiffness(h, y_new, k_new, end_stage):
        """h times the secant Jacobian estimate between the fifth stage and the new node."""
        y_end, k_end = end_stage
        dy = np.linalg.norm(y_new - y_end)
        if dy == 0:
            return 0.0
        return h * float(np.linalg.norm(k_new - k_end)) / dy

    def _check_budget(self, result, t, y):
        if result.stats['steps'] + result.stats['rejections'] >= self.max_steps:
            raise MaxStepsExceeded('step budget of {} exhausted at t={}'.format(self.max_steps, t),
                                   t=t, state=y, partial=result)

    def _check_underflow(self, result, t, y, h):
        if h <= 16 * np.finfo(float).eps * max(1.0, abs(t)):
            raise StepFailure('step size underflow (h={}) at t={}'.format(h, t), t=t, state=y, partial=result)

    def integrate(self, t0, y0, t_end, result=None):
        """Advance y0 from t0 to t_end, appending accepted nodes to result."""
        y = np.array(y0, dtype=float, ndmin=1)
        result = result or IntegrationResult()
        if not result.times:
            result.times.append(t0)
            result.states.append(y.copy())

        if t_end <= t0:
            return result

        span = t_end - t0
        t = t0
        k1 = self._f(t, y, result)
        h = self._initial_step(t, y, k1, t_end, result)
        implicit = False
        stiff = nonstiff = 0

        while t < t_end:
            self._check_budget(result, t, y)
            self._check_underflow(result, t, y, h)
            last = t + h >= t_end
            if last:
                h = t_end - t
            t_new = t_end if last else t + h

            if implicit:
                try:
                    y_new, error = self._implicit_pair(t, y, h)
                except ConvergenceError:
                    result.stats['rejections'] += 1
                    h *= 0.5
                    continue
                order = 2
            else:
                y_new, error, end_stage = self._rk_step(t, y, h, k1, result)
                order = 5

            err = self._error_norm(error, y, y_new)
            if not np.isfinite(err):
                result.stats['rejections'] += 1
                h *= MIN_FACTOR
                continue

            factor = MAX_FACTOR if err == 0 else SAFETY * err ** (-1.0 / order)
            if err > 1.0:
                result.stats['rejections'] += 1
                h *= max(MIN_FACTOR, factor)
                continue

            k_new = self._f(t_new, y_new, result)
            result.append(t_new, y_new, k1, k_new)
            result.stats['steps'] += 1
            if implicit:
                result.stats['implicit_steps'] += 1
            h_taken = h
            t, y, k1 = t_new, y_new, k_new
            h *= min(MAX_FACTOR, max(MIN_FACTOR, factor))

            if implicit or self.implicit_step is None or t >= t_end:
                continue
            if self._stiffness(h_taken, y_new, k_new, end_stage) > STIFF_BOUND:
                stiff += 1
                nonstiff = 0
            else:
                nonstiff += 1
                if nonstiff == NONSTIFF_STEPS:
                    stiff = 0
            if stiff >= STIFF_STEPS or (self.stiff_threshold and h < self.stiff_threshold * span):
                implicit = True
                if result.stats['implicit_from'] is None:
                    result.stats['implicit_from'] = t
                logger.debug('switching to implicit phase at t=%r (h=%r)', t, h)

        logger.debug('integration to t=%r done: %d steps, %d rejections', t_end,
                     result.stats['steps'], result.stats['rejections'])
        return result
