"""Spatially homogeneous relaxation under a prescribed shear protocol.

With no spatial gradients the balance of Z(sigma) reduces to

    Z(sigma)_t = F (v_x - g^-1(sigma)),    F_t = v_x F,

which is integrated in sigma directly for the quadratic viscous energy and in
z = Z(sigma) otherwise.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from ret_fluids.analytic import SteadyShearParams
from ret_fluids.constitutive import signed_power
from ret_fluids.exceptions import ConvergenceError, DomainError, StepFailure
from ret_fluids.ode.integrator import EmbeddedRungeKutta, IntegrationResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OdeOptions:
    t_end: float = 1.0
    rtol: float = 1e-8
    atol: float = 1e-10
    max_steps: int = 200000
    first_step: float = None
    implicit_phase: bool = True
    stiff_threshold: float = 1e-6

    def __post_init__(self):
        if not self.rtol > 0 or not self.atol > 0:
            raise DomainError('tolerances must be positive, got rtol={}, atol={}'.format(self.rtol, self.atol))
        if not self.t_end >= 0:
            raise DomainError('t_end must be nonnegative, got {}'.format(self.t_end))
        if not self.max_steps > 0:
            raise DomainError('max_steps must be positive, got {}'.format(self.max_steps))


def hermite(t, t0, t1, y0, y1, dy0, dy1):
    """Cubic Hermite interpolant, vectorized over rows; exact at both ends."""
    h = (t1 - t0)[:, None]
    theta = ((t - t0) / (t1 - t0))[:, None]
    theta2 = theta * theta
    theta3 = theta2 * theta
    h00 = 2 * theta3 - 3 * theta2 + 1
    h10 = theta3 - 2 * theta2 + theta
    h01 = -2 * theta3 + 3 * theta2
    h11 = theta3 - theta2
    return h00 * y0 + h10 * h * dy0 + h01 * y1 + h11 * h * dy1


@dataclass
class Trajectory:
    times: np.ndarray
    sigma: np.ndarray
    F: np.ndarray
    metadata: dict = field(default_factory=dict)
    dense: dict = field(default=None, repr=False)

    def __post_init__(self):
        if not len(self.times) == len(self.sigma) == len(self.F):
            raise DomainError('trajectory arrays differ in length')

    def __len__(self):
        return len(self.times)

    @property
    def t_end(self):
        return float(self.times[-1])

    def sample(self, times):
        """Trajectory resampled at the given times through the dense output."""
        times = np.asarray(times, dtype=float)
        if self.dense is None:
            raise DomainError('trajectory carries no dense output')
        if times.size and (times.min() < self.times[0] or times.max() > self.times[-1]):
            raise DomainError('sample times must lie in [{}, {}]'.format(self.times[0], self.times[-1]))

        d = self.dense
        if len(d['t0']) == 0:
            states = np.repeat(d['y_initial'][None, :], times.size, axis=0)
        else:
            index = np.clip(np.searchsorted(d['t1'], times, side='left'), 0, len(d['t1']) - 1)
            states = hermite(times, d['t0'][index], d['t1'][index], d['y0'][index],
                             d['y1'][index], d['dy0'][index], d['dy1'][index])

        sigma, F = d['decode'](times, states)
        return Trajectory(times=times, sigma=sigma, F=F, metadata=dict(self.metadata), dense=self.dense)

    def uniform(self, n_samples):
        return self.sample(np.linspace(self.times[0], self.times[-1], n_samples))


class HomogeneousProblem:
    """Right side and implicit step of the homogeneous system for one material and protocol."""

    def __init__(self, material, protocol, F0):
        if not F0 > 0:
            raise DomainError('F0 must be positive, got {}'.format(F0))
        self.material = material
        self.protocol = protocol
        self.F0 = float(F0)
        self.in_sigma = material.viscous.is_quadratic
        self.exact_F = protocol.deformation(0.0, F0) is not None
        self.segment_rate = None

    def enter_segment(self, t_start, t_stop):
        # pins the rate so stage evaluations at t_stop stay on this piece
        if self.protocol.breakpoints(0.0, np.inf):
            self.segment_rate = self.protocol.rate(0.5 * (t_start + t_stop))

    def rate(self, t):
        return self.protocol.rate(t) if self.segment_rate is None else self.segment_rate

    def F_at(self, t, y):
        if self.exact_F:
            return self.protocol.deformation(t, self.F0)
        return y[1]

    def to_sigma(self, y):
        return y[..., 0] if self.in_sigma else self.material.invert_Z(y[..., 0])

    def initial_state(self, sigma0):
        first = sigma0 if self.in_sigma else self.material.Z(sigma0)
        return np.array([first] if self.exact_F else [first, self.F0], dtype=float)

    def rhs(self, t, y):
        F = self.F_at(t, y)
        vx = self.rate(t)
        sigma = self.to_sigma(y)
        dz = F * (vx - self.material.fluid.rate_from_stress(sigma))
        if self.in_sigma:
            dz = dz / self.material.viscous.tau0
        if self.exact_F:
            return np.array([dz])
        return np.array([dz, vx * F])

    def implicit_step(self, t, y, h):
        t_new = t + h
        vx = self.rate(t_new)
        if self.exact_F:
            F_new = self.protocol.deformation(t_new, self.F0)
        else:
            if h * vx >= 1:
                raise ConvergenceError('implicit deformation update needs h * v_x < 1')
            F_new = y[1] / (1.0 - h * vx)

        z_old = self.material.viscous.tau0 * y[0] if self.in_sigma else y[0]
        sigma_new = self.material.implicit_relaxation(z_old, F_new, h, vx)
        first = sigma_new if self.in_sigma else self.material.Z(sigma_new)
        return np.array([first] if self.exact_F else [first, F_new], dtype=float)

    def decode(self, times, states):
        sigma = np.asarray(self.to_sigma(states), dtype=float)
        F = self.protocol.deformation(times, self.F0) if self.exact_F else states[:, 1]
        return sigma, np.asarray(F, dtype=float)


def _build_trajectory(result, decode, y_initial, metadata):
    times = np.array(result.times)
    states = np.array(result.states)
    dense = dict(
        t0=times[:-1], t1=times[1:], y0=states[:-1], y1=states[1:],
        dy0=np.array(result.slopes_start).reshape(states[1:].shape),
        dy1=np.array(result.slopes_end).reshape(states[1:].shape),
        decode=decode, y_initial=np.asarray(y_initial, dtype=float),
    )
    sigma, F = decode(times, states)
    metadata = dict(metadata, **result.stats)
    return Trajectory(times=times, sigma=sigma, F=F, metadata=metadata, dense=dense)


def _integrate(rhs, implicit_step, y0, t_stops, opts, decode, metadata, enter_segment=None):
    integrator = EmbeddedRungeKutta(rhs, rtol=opts.rtol, atol=opts.atol, max_steps=opts.max_steps,
                                    first_step=opts.first_step,
                                    implicit_step=implicit_step if opts.implicit_phase else None,
                                    stiff_threshold=opts.stiff_threshold)
    result = IntegrationResult()
    y = y0
    try:
        for t_start, t_stop in zip(t_stops[:-1], t_stops[1:]):
            if enter_segment is not None:
                enter_segment(t_start, t_stop)
            result = integrator.integrate(t_start, y, t_stop, result=result)
            y = result.states[-1]
    except StepFailure as e:
        e.partial = _build_trajectory(result, decode, y0, metadata)
        raise

    return _build_trajectory(result, decode, y0, metadata)


def simulate_homogeneous(material, protocol, sigma0=0.0, F0=1.0, opts=None):
    opts = opts or OdeOptions()
    problem = HomogeneousProblem(material, protocol, F0)
    t_stops = [0.0] + protocol.breakpoints(0.0, opts.t_end) + [opts.t_end]

    def rhs(t, y):
        return problem.rhs(t, y)

    metadata = dict(rtol=opts.rtol, atol=opts.atol, sigma0=sigma0, F0=F0)
    trajectory = _integrate(rhs, problem.implicit_step, problem.initial_state(sigma0),
                            t_stops, opts, problem.decode, metadata,
                            enter_segment=problem.enter_segment)
    logger.debug('homogeneous run to t=%r: %d steps', opts.t_end, trajectory.metadata['steps'])
    return trajectory


def simulate_maxwell(sigma_inf, tau1, opts=None, sigma0=0.0):
    """Linear relaxation tau1 sigma_t = sigma_inf - sigma through the same integrator."""
    if not tau1 > 0:
        raise DomainError('tau1 must be positive, got {}'.format(tau1))
    opts = opts or OdeOptions()

    def rhs(t, y):
        return (sigma_inf - y) / tau1

    def implicit_step(t, y, h):
        return (y + h * sigma_inf / tau1) / (1.0 + h / tau1)

    def decode(times, states):
        return np.asarray(states[:, 0], dtype=float), np.ones(len(times))

    metadata = dict(rtol=opts.rtol, atol=opts.atol, sigma0=sigma0, F0=1.0)
    return _integrate(rhs, implicit_step, np.array([sigma0], dtype=float), [0.0, opts.t_end],
                      opts, decode, metadata)


def rhs_case2(t, sigma, p):
    """tau0 sigma_t = F0 e^(vx0 t) (vx0 - a sign(sigma) |sigma|^(1/m))."""
    if not isinstance(p, SteadyShearParams):
        raise DomainError('rhs_case2 expects SteadyShearParams')
    fluid = p.fluid
    F = p.F0 * np.exp(p.vx0 * t)
    return (F / p.tau0 * (p.vx0 - fluid.a * signed_power(sigma, 1.0 / fluid.m)))[()]


def superexp_ratio_test(traj, sigma_inf, delta=None, n_intervals=50, floor=None):
    """Decay ratios r_i = (sigma_inf - sigma(t_i + delta)) / (sigma_inf - sigma(t_i)).

    The grid is uniform from the trajectory start; it is truncated before the
    first residual at or below floor (100 atol by default). A single
    exponential gives constant ratios; super-exponential decay gives strictly
    decreasing ones.
    """
    t0, t1 = float(traj.times[0]), float(traj.times[-1])
    if delta is None:
        delta = (t1 - t0) / n_intervals
    if not delta > 0:
        return np.array([])
    if floor is None:
        floor = 100.0 * traj.metadata.get('atol', OdeOptions.atol)

    n = int(np.floor((t1 - t0) / delta * (1 + 1e-12)))
    grid = np.minimum(t0 + delta * np.arange(n + 1), t1)
    residual = sigma_inf - traj.sample(grid).sigma

    small = np.flatnonzero(np.abs(residual) <= floor)
    if small.size:
        if small[0] < len(residual) - 1:
            logger.warning('ratio test truncated at t=%r: residual below %r', grid[small[0]], floor)
        residual = residual[:small[0]]

    if residual.size < 2:
        return np.array([])
    return residual[1:] / residual[:-1]
