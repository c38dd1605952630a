"""Finite-volume solver for the Lagrangian balance laws.

First-order Rusanov fluxes are advanced with the two-stage SSP Runge-Kutta
scheme. In IMEX mode each stage is a forward-Euler flux update followed by a
backward-Euler relaxation solve per cell; the stage result is then averaged
with the step's initial state. Sums over cells are taken in index order so
results do not depend on how the arrays were produced.
"""
import logging
from dataclasses import dataclass, field, replace

import numpy as np

from ret_fluids.exceptions import DomainError, StepFailure
from ret_fluids.pde.fluxes import interface_fluxes, sound_speed
from ret_fluids.pde.state import Conserved, State1D, conserved

logger = logging.getLogger(__name__)

EXPLICIT = 'explicit'
IMEX = 'imex'
MODES = (EXPLICIT, IMEX)


@dataclass(frozen=True)
class StepInfo:
    dt: float
    # time integral of the cell-summed dissipation rate over the step
    dissipation: float
    dissipation_rate: float


@dataclass(frozen=True)
class Field1D:
    grid: object
    w: np.ndarray
    sigma: np.ndarray
    material: object
    bc: object
    time: float = 0.0
    last_step: StepInfo = field(default=None, compare=False)

    @staticmethod
    def from_state(grid, state, material, bc, time=0.0):
        n = grid.n_cells
        state = State1D(v=np.broadcast_to(np.asarray(state.v, dtype=float), (n,)).copy(),
                        F=np.broadcast_to(np.asarray(state.F, dtype=float), (n,)).copy(),
                        sigma=np.broadcast_to(np.asarray(state.sigma, dtype=float), (n,)).copy())
        w = conserved(state, material).as_array()
        return Field1D(grid=grid, w=w, sigma=state.sigma, material=material, bc=bc, time=time)

    @property
    def cells(self):
        return Conserved.from_array(self.w)

    @property
    def state(self):
        return State1D(v=self.w[0] / self.material.rho_star, F=self.w[1], sigma=self.sigma)

    def snapshot(self):
        s = self.state
        return dict(
            X_center=self.grid.centers,
            v=s.v,
            F=s.F,
            sigma=s.sigma,
            Z=self.w[2],
            p=np.asarray(self.material.pressure(s.F), dtype=float),
            energy_density=np.asarray(self.material.energy_density(s.v, s.F, s.sigma), dtype=float),
        )


def stable_dt(field, cfl):
    if not 0 < cfl <= 1:
        raise DomainError('cfl must lie in (0, 1], got {}'.format(cfl))
    return cfl * field.grid.dx / float(np.max(sound_speed(field.state, field.material)))


def _cell_dissipation(material, F, sigma, dx):
    return float(np.sum(material.dissipation_rate(F, sigma))) * dx


def _stage(field, w, sigma, t, dt, mode):
    material = field.material
    dx = field.grid.dx
    rho = material.rho_star
    v, F = w[0] / rho, w[1]

    extended = field.bc.extend(v, F, sigma, t)
    ghosts_z = material.Z(np.array([extended[2][0], extended[2][-1]]))
    w_ext = np.stack([rho * extended[0], extended[1],
                      np.concatenate(([ghosts_z[0]], w[2], [ghosts_z[1]]))])
    flux = interface_fluxes(State1D(*extended), w_ext, material)

    w_star = w - dt / dx * (flux[:, 1:] - flux[:, :-1])
    w_star[0] += dt * rho * material.body_force

    if mode == EXPLICIT:
        w_star[2] += dt * material.production(F, sigma)
        return w_star, material.invert_Z(w_star[2]), _cell_dissipation(material, F, sigma, dx)

    sigma_star = np.asarray(material.implicit_relaxation(w_star[2], w_star[1], dt), dtype=float)
    w_star[2] = material.Z(sigma_star)
    return w_star, sigma_star, _cell_dissipation(material, w_star[1], sigma_star, dx)


def step(field, cfl=0.5, mode=IMEX, dt=None):
    """Advance one SSP-RK2 step; dt defaults to the CFL step and may not exceed it."""
    if mode not in MODES:
        raise DomainError('{} mode is unrecognized'.format(mode))
    dt_cfl = stable_dt(field, cfl)
    if dt is None:
        dt = dt_cfl
    elif dt > dt_cfl * (1 + 1e-12):
        raise DomainError('dt={} violates the CFL bound {}'.format(dt, dt_cfl))

    material = field.material
    rate = _cell_dissipation(material, field.w[1], field.sigma, field.grid.dx)

    w1, sigma1, d1 = _stage(field, field.w, field.sigma, field.time, dt, mode)
    w2, sigma2, d2 = _stage(field, w1, sigma1, field.time + dt, dt, mode)

    w_new = 0.5 * (field.w + w2)
    sigma_new = np.asarray(material.invert_Z(w_new[2]), dtype=float)
    info = StepInfo(dt=dt, dissipation=0.5 * dt * (d1 + d2), dissipation_rate=rate)
    return replace(field, w=w_new, sigma=sigma_new, time=field.time + dt, last_step=info)


def run(field, t_end, cfl=0.5, mode=IMEX, observers=(), max_steps=1000000):
    """Advance to t_end, landing on it exactly; returns the field and observer records."""
    if t_end < field.time:
        raise DomainError('t_end={} precedes field time {}'.format(t_end, field.time))

    for observer in observers:
        observer.on_run_begin(field)

    steps = 0
    while field.time < t_end:
        if steps >= max_steps:
            raise StepFailure('step budget of {} exhausted at t={}'.format(max_steps, field.time),
                              t=field.time, state=field, partial=field)
        remaining = t_end - field.time
        dt = stable_dt(field, cfl)
        last = dt >= remaining
        field = step(field, cfl, mode, dt=min(dt, remaining))
        if last:
            field = replace(field, time=t_end)
        steps += 1

        for observer in observers:
            observer.on_step_end(field, field.last_step)

        if steps % 1000 == 0:
            logger.debug('t=%r after %d steps', field.time, steps)

    for observer in observers:
        observer.on_run_end(field)

    logger.debug('run to t=%r finished in %d steps', t_end, steps)
    return field, {observer.name: observer.records for observer in observers}
