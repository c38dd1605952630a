"""Energy bookkeeping and convergence measurement."""
import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from ret_fluids.exceptions import DomainError

logger = logging.getLogger(__name__)

SATURATION = 1e-13

ENERGY_COLUMNS = ('time', 'kinetic', 'elastic', 'viscous', 'total', 'diss_integral', 'residual')


@dataclass(frozen=True)
class EnergyReport:
    time: float
    kinetic: float
    elastic: float
    viscous: float
    diss_integral: float = 0.0
    residual: float = 0.0

    @property
    def total(self):
        return self.kinetic + self.elastic + self.viscous

    def with_budget(self, diss_integral, residual):
        return replace(self, diss_integral=diss_integral, residual=residual)

    def row(self):
        return [self.time, self.kinetic, self.elastic, self.viscous, self.total,
                self.diss_integral, self.residual]


def total_energy(field):
    """Cell sums of rho* (v^2/2 + e_E(F) + e_V(sigma)) dX, elastic part measured from F = 1."""
    material = field.material
    dx = field.grid.dx
    s = field.state
    return EnergyReport(
        time=field.time,
        kinetic=float(np.sum(material.kinetic_density(s.v))) * dx,
        elastic=float(np.sum(material.elastic_density(s.F))) * dx,
        viscous=float(np.sum(material.viscous_density(s.sigma))) * dx,
    )


def homogeneous_energy(material, trajectory):
    """Per-unit-mass energies along a homogeneous trajectory (no kinetic part)."""
    times = np.asarray(trajectory.times, dtype=float)
    elastic = np.asarray(material.elastic_density(trajectory.F), dtype=float) * np.ones_like(times)
    viscous = np.asarray(material.viscous_density(trajectory.sigma), dtype=float) * np.ones_like(times)
    return [EnergyReport(time=t, kinetic=0.0, elastic=e, viscous=v)
            for t, e, v in zip(times, elastic, viscous)]


def homogeneous_power(material, trajectory, protocol):
    """Dissipation rate plus the work the imposed deformation supplies.

    With F_t = v_x F the energy rate of a homogeneous element is
    (sigma - p(F) + p(1)) F v_x + sigma P(F, sigma).
    """
    times = np.asarray(trajectory.times, dtype=float)
    F = np.asarray(trajectory.F, dtype=float)
    sigma = np.asarray(trajectory.sigma, dtype=float)
    vx = np.array([protocol.rate(t) for t in times])
    work = (sigma - material.pressure(F) + material.pressure(1.0)) * F * vx
    return work + material.dissipation_rate(F, sigma)


def _check_uniform(times):
    if len(times) > 2:
        steps = np.diff(times)
        if np.max(np.abs(steps - steps[0])) > 1e-9 * max(1.0, abs(steps[0])):
            raise DomainError('energy budget needs uniformly sampled reports')


def energy_budget(history, dissipation=None):
    """Residuals E(t_n) - E(t_0) - integral of the power samples.

    dissipation is either a sequence of rates sampled with the history
    (trapezoidal rule) or None, in which case each report's diss_integral is
    taken as already integrated by the run.
    """
    if not history:
        return np.array([])
    totals = np.array([r.total for r in history])

    if dissipation is None:
        integral = np.array([r.diss_integral for r in history])
    else:
        times = np.array([r.time for r in history])
        _check_uniform(times)
        rates = np.asarray(dissipation, dtype=float)
        if rates.shape != times.shape:
            raise DomainError('need one dissipation sample per report')
        integral = np.concatenate(([0.0], np.cumsum(0.5 * np.diff(times) * (rates[1:] + rates[:-1]))))

    return totals - totals[0] - integral


def with_residuals(history, dissipation=None):
    """History with diss_integral and residual filled from energy_budget."""
    residuals = energy_budget(history, dissipation)
    if dissipation is None:
        integrals = [r.diss_integral for r in history]
    else:
        integrals = [r.total - history[0].total - res for r, res in zip(history, residuals)]
    return [r.with_budget(i, res) for r, i, res in zip(history, integrals, residuals)]


def observed_order(errors):
    """Orders log2(e_coarse / e_mid) and log2(e_mid / e_fine); nan where saturated."""
    errors = [float(e) for e in errors]
    if len(errors) != 3:
        raise DomainError('observed order needs three errors, got {}'.format(len(errors)))

    orders = []
    for coarse, fine in zip(errors[:-1], errors[1:]):
        if coarse < SATURATION or fine < SATURATION:
            logger.warning('error below %r; observed order saturated', SATURATION)
            orders.append(math.nan)
        else:
            orders.append(math.log2(coarse / fine))
    return tuple(orders)


def restrict(values, factor):
    """Average consecutive blocks of `factor` cells onto a coarser grid."""
    values = np.asarray(values, dtype=float)
    if values.shape[-1] % factor:
        raise DomainError('cannot restrict {} cells by a factor of {}'.format(values.shape[-1], factor))
    return values.reshape(values.shape[:-1] + (-1, factor)).mean(axis=-1)


def l1_error(coarse, reference, dx):
    factor = len(reference) // len(coarse)
    return float(np.sum(np.abs(np.asarray(coarse) - restrict(reference, factor)))) * dx


def settling_time(times, sigma, sigma0, sigma_inf, fraction=0.99):
    """First sample time at which the stress has covered `fraction` of its way to sigma_inf."""
    gap = abs(sigma_inf - sigma0)
    if gap == 0:
        return None
    close = np.flatnonzero(np.abs(np.asarray(sigma, dtype=float) - sigma_inf) <= (1.0 - fraction) * gap)
    return float(np.asarray(times)[close[0]]) if close.size else None
