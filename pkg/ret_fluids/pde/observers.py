"""Run observers with keras-style callback hooks."""
import logging

import numpy as np

from ret_fluids.diagnostics import total_energy
from ret_fluids.pde.fluxes import sound_speed

logger = logging.getLogger(__name__)


class Observer:
    name = None

    def __init__(self):
        self.records = []

    def on_run_begin(self, field):
        pass

    def on_step_end(self, field, info):
        pass

    def on_run_end(self, field):
        pass


class EnergyObserver(Observer):
    """Energy components and the budget residual E(t) - E(t0) - (applied dissipation).

    The dissipation is accumulated every step from what the scheme applied, so
    the residual stays nonpositive for energy-stable runs; samples are kept
    every `every` steps and at the end of the run.
    """

    name = 'energy'

    def __init__(self, every=1):
        super().__init__()
        self.every = every
        self._initial = None
        self._dissipated = 0.0
        self.steps = 0
        self.rates = []

    def _record(self, field, rate):
        report = total_energy(field)
        residual = report.total - self._initial - self._dissipated
        self.records.append(report.with_budget(self._dissipated, residual))
        self.rates.append(rate)

    def on_run_begin(self, field):
        self.records = []
        self.rates = []
        self.steps = 0
        self._dissipated = 0.0
        self._initial = total_energy(field).total
        rate = float(np.sum(field.material.dissipation_rate(field.w[1], field.sigma))) * field.grid.dx
        self._record(field, rate)

    def on_step_end(self, field, info):
        self.steps += 1
        self._dissipated += info.dissipation
        if self.steps % self.every == 0:
            self._record(field, info.dissipation_rate)

    def on_run_end(self, field):
        if self.records[-1].time != field.time:
            rate = float(np.sum(field.material.dissipation_rate(field.w[1], field.sigma))) * field.grid.dx
            self._record(field, rate)


class ProfileObserver(Observer):
    """Cell snapshots every `every` steps plus the initial and final fields."""

    name = 'profiles'

    def __init__(self, every=10):
        super().__init__()
        self.every = every
        self.steps = 0

    def on_run_begin(self, field):
        self.records = [(field.time, field.snapshot())]
        self.steps = 0

    def on_step_end(self, field, info):
        self.steps += 1
        if self.steps % self.every == 0:
            self.records.append((field.time, field.snapshot()))

    def on_run_end(self, field):
        if self.records[-1][0] != field.time:
            self.records.append((field.time, field.snapshot()))


class WavefrontTracker(Observer):
    """Outermost cells whose conserved state moved away from the initial data.

    A cell counts as disturbed when some component changed by more than
    threshold times that component's initial spread (or absolutely, for a
    component that starts uniform). The initial support is the hull of the
    interfaces carrying a jump, and the reference cone widens it by c_max t,
    with c_max taken from the initial data.

    The discrete scheme reaches further than the physical cone: one SSP-RK2
    step updates cells two interfaces away, and the Rusanov viscosity
    c_max dx / 2 spreads every front diffusively. Each record therefore
    carries a `reach` margin of two cells plus the distance at which a
    diffused unit jump falls below the threshold.
    """

    name = 'wavefront'

    # cells touched by one step of two Rusanov stages
    STENCIL_CELLS = 2

    def __init__(self, threshold=1e-4):
        super().__init__()
        self.threshold = threshold

    def on_run_begin(self, field):
        self.records = []
        self._w0 = field.w.copy()
        self._t0 = field.time
        spread = np.ptp(self._w0, axis=1)
        self._scale = np.where(spread > 0, spread, 1.0)[:, None]
        self.c_max = float(np.max(sound_speed(field.state, field.material)))
        self.dx = field.grid.dx

        jumps = np.flatnonzero(np.any(self._w0[:, 1:] != self._w0[:, :-1], axis=0))
        if jumps.size == 0:
            self.support = None
        else:
            interfaces = field.grid.interfaces[1:-1][jumps]
            self.support = (float(interfaces.min()), float(interfaces.max()))

    def numerical_reach(self, elapsed):
        """Distance beyond the physical cone that the scheme can disturb after `elapsed`."""
        halo = np.sqrt(2.0 * np.log(1.0 / self.threshold) * self.c_max * self.dx * elapsed)
        return self.STENCIL_CELLS * self.dx + float(halo)

    def on_step_end(self, field, info):
        changed = np.any(np.abs(field.w - self._w0) > self.threshold * self._scale, axis=0)
        centers = field.grid.centers[changed]
        elapsed = field.time - self._t0
        reach = self.numerical_reach(elapsed)
        if self.support is None:
            cone = (np.nan, np.nan)
        else:
            cone = (self.support[0] - self.c_max * elapsed, self.support[1] + self.c_max * elapsed)
        left = float(centers.min()) if centers.size else np.nan
        right = float(centers.max()) if centers.size else np.nan
        self.records.append(dict(time=field.time, left=left, right=right,
                                 cone_left=cone[0], cone_right=cone[1], reach=reach))

    def violations(self, tolerance=None):
        """Records whose detected front lies outside the cone, widened by the scheme's reach, by more than one cell."""
        tolerance = self.dx if tolerance is None else tolerance
        bad = []
        for r in self.records:
            if np.isnan(r['left']):
                continue
            margin = r['reach'] + tolerance
            if self.support is None or r['left'] < r['cone_left'] - margin or r['right'] > r['cone_right'] + margin:
                bad.append(r)
        return bad
