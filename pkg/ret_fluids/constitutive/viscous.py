import logging

import numpy as np
from scipy import integrate

from ret_fluids.constitutive.base import ViscousEnergy
from ret_fluids.exceptions import DomainError
from ret_fluids.rootfind import expand_bracket, safeguarded_newton

logger = logging.getLogger(__name__)


class QuadraticEnergy(ViscousEnergy):
    """e_v = tau0 sigma^2 / (2 rho*), giving the constant relaxation function tau0."""

    short_name = 'quadratic'
    is_quadratic = True

    def __init__(self, tau0):
        if not tau0 > 0:
            raise DomainError('tau0 must be positive, got {}'.format(tau0))
        self.tau0 = float(tau0)

    def energy(self, sigma, rho_star):
        return (self.tau0 * np.asarray(sigma, dtype=float) ** 2 / (2.0 * rho_star))[()]

    def tau(self, sigma, rho_star):
        return np.full(np.shape(sigma), self.tau0)[()]

    def Z(self, sigma, rho_star):
        return (self.tau0 * np.asarray(sigma, dtype=float))[()]

    def invert_Z(self, z, rho_star):
        return (np.asarray(z, dtype=float) / self.tau0)[()]

    def to_params(self):
        return dict(tau0=self.tau0)


class CustomEnergy(ViscousEnergy):
    """Viscous energy given by e_v(sigma) and its derivative.

    limit_at_zero is lim e_v'(sigma)/sigma as sigma -> 0; it is not derived
    symbolically. Subclasses may override e_v, de_v and limit instead of
    passing callables.
    """

    def __init__(self, e_v=None, de_v=None, limit_at_zero=None):
        self._e_v = e_v
        self._de_v = de_v
        self.limit_at_zero = limit_at_zero

    def e_v(self, sigma, rho_star):
        return self._e_v(sigma)

    def de_v(self, sigma, rho_star):
        return self._de_v(sigma)

    def limit(self, rho_star):
        return self.limit_at_zero

    def _tau(self, sigma, rho_star):
        if sigma == 0:
            limit = self.limit(rho_star)
            if limit is None:
                raise DomainError('custom viscous energy needs the sigma -> 0 limit of e_v\'/sigma')
            value = rho_star * limit
        else:
            value = rho_star * self.de_v(sigma, rho_star) / sigma
        if not value > 0:
            raise DomainError('relaxation function must be positive, got tau({})={}'.format(sigma, value))
        return value

    def _Z(self, sigma, rho_star):
        if sigma == 0:
            return 0.0
        value, _ = integrate.quad(self._tau, 0.0, sigma, args=(rho_star,),
                                  epsabs=1e-15, epsrel=1e-14, limit=200)
        return value

    def _invert_Z(self, z, rho_star):
        def residual(sigma):
            return self._Z(sigma, rho_star) - z

        start = abs(z) / self._tau(0.0, rho_star) if z != 0 else 1.0
        lo, hi = expand_bracket(lambda s: self._Z(s, rho_star), z, start=start)
        if lo == hi:
            return lo
        return safeguarded_newton(residual, lambda s: self._tau(s, rho_star), lo, hi,
                                  ftol=1e-13 * max(1.0, abs(z)))

    def energy(self, sigma, rho_star):
        return np.vectorize(self.e_v, otypes=[float])(sigma, rho_star)[()]

    def tau(self, sigma, rho_star):
        return np.vectorize(self._tau, otypes=[float])(sigma, rho_star)[()]

    def Z(self, sigma, rho_star):
        return np.vectorize(self._Z, otypes=[float])(sigma, rho_star)[()]

    def invert_Z(self, z, rho_star):
        return np.vectorize(self._invert_Z, otypes=[float])(z, rho_star)[()]

    def to_params(self):
        raise DomainError('callable-based viscous energies cannot be serialized')


class QuarticEnergy(CustomEnergy):
    """rho* e_v = tau0 sigma^2 / 2 + beta sigma^4 / 4, so tau(sigma) = tau0 + beta sigma^2."""

    short_name = 'quartic'

    def __init__(self, tau0, beta=0.0):
        if not tau0 > 0 or not beta >= 0:
            raise DomainError('quartic energy needs tau0 > 0 and beta >= 0, got {}, {}'.format(tau0, beta))
        super().__init__()
        self.tau0 = float(tau0)
        self.beta = float(beta)

    def e_v(self, sigma, rho_star):
        return (0.5 * self.tau0 * sigma ** 2 + 0.25 * self.beta * sigma ** 4) / rho_star

    def de_v(self, sigma, rho_star):
        return (self.tau0 * sigma + self.beta * sigma ** 3) / rho_star

    def limit(self, rho_star):
        return self.tau0 / rho_star

    def to_params(self):
        return dict(tau0=self.tau0, beta=self.beta)


def tau(sigma, viscous, rho_star):
    return viscous.tau(sigma, rho_star)


def Z(sigma, viscous, rho_star):
    return viscous.Z(sigma, rho_star)


def invert_Z(z, viscous, rho_star):
    return viscous.invert_Z(z, rho_star)
