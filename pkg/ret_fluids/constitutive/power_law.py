import logging

import numpy as np

from ret_fluids.constitutive.base import ProductionLaw, signed_power
from ret_fluids.exceptions import DomainError
from ret_fluids.rootfind import expand_bracket, safeguarded_newton

logger = logging.getLogger(__name__)


def a_coeff(m, k):
    """2^(1/m - 1) k^(-1/m), the prefactor of the inverted power law."""
    if not m > 0 or not k > 0:
        raise DomainError('power law needs m > 0 and k > 0, got m={}, k={}'.format(m, k))
    return 2.0 ** (1.0 / m - 1.0) * k ** (-1.0 / m)


class PowerLawFluid(ProductionLaw):
    short_name = 'power_law'

    def __init__(self, k, m):
        self._a = a_coeff(m, k)
        self.k = float(k)
        self.m = float(m)

    @property
    def a(self):
        return self._a

    def rate_from_stress(self, sigma):
        return (self._a * signed_power(sigma, 1.0 / self.m))[()]

    def stress_from_rate(self, vx):
        return signed_power(np.asarray(vx, dtype=float) / self._a, self.m)

    def d_rate_d_stress(self, sigma):
        # unbounded at sigma = 0 when m > 1
        sigma = np.abs(np.asarray(sigma, dtype=float))
        with np.errstate(divide='ignore'):
            return (self._a / self.m * sigma ** (1.0 / self.m - 1.0))[()]

    def to_params(self):
        return dict(k=self.k, m=self.m)

    def __repr__(self):
        return 'PowerLawFluid(k={!r}, m={!r})'.format(self.k, self.m)


class InvertibleLaw(ProductionLaw):
    """Any odd, increasing relation sigma = g(D), given through its inverse D = g^-1(sigma).

    derivative is d g^-1 / d sigma; it may be omitted, in which case the stress
    is recovered by bisection alone.
    """

    def __init__(self, rate_from_stress, derivative=None, check_grid=None):
        self._inverse = rate_from_stress
        self._derivative = derivative
        self._check_dissipative(check_grid if check_grid is not None else np.linspace(-10.0, 10.0, 41))

    def _check_dissipative(self, check_grid):
        for sigma in check_grid:
            if sigma * self._inverse(float(sigma)) < 0:
                raise DomainError('law is not dissipative: sigma * g^-1(sigma) < 0 at sigma={}'.format(sigma))

    def rate_from_stress(self, sigma):
        return np.vectorize(self._inverse, otypes=[float])(sigma)[()]

    def d_rate_d_stress(self, sigma):
        if self._derivative is None:
            return np.full(np.shape(sigma), np.nan)[()]
        return np.vectorize(self._derivative, otypes=[float])(sigma)[()]

    def stress_from_rate(self, vx):
        return np.vectorize(self._solve_stress, otypes=[float])(vx)[()]

    def _solve_stress(self, vx):
        lo, hi = expand_bracket(self._inverse, vx)
        if lo == hi:
            return lo
        derivative = self._derivative or (lambda s: float('nan'))
        return safeguarded_newton(lambda s: self._inverse(s) - vx, derivative, lo, hi)

    def to_params(self):
        raise DomainError('callable-based laws cannot be serialized')


def rate_from_stress(sigma, fluid):
    return fluid.rate_from_stress(sigma)


def stress_from_rate(vx, fluid):
    return fluid.stress_from_rate(vx)


def production(F, sigma, fluid):
    return fluid.production(F, sigma)


def dissipation_rate(F, sigma, fluid):
    return fluid.dissipation_rate(F, sigma)
