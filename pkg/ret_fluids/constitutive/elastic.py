import numpy as np

from ret_fluids.constitutive.base import ElasticLaw, check_positive_F
from ret_fluids.exceptions import DomainError


class LinearElastic(ElasticLaw):
    """T(F) = E (F - 1), so p(F) = -E (F - 1)."""

    short_name = 'linear'

    def __init__(self, E=1.0):
        if not E > 0:
            raise DomainError('elastic modulus must be positive, got {}'.format(E))
        self.E = float(E)

    def pressure(self, F):
        check_positive_F(F)
        return (-self.E * (np.asarray(F, dtype=float) - 1.0))[()]

    def dpressure_dF(self, F):
        check_positive_F(F)
        return np.full(np.shape(F), -self.E)[()]

    def energy(self, F, rho_star):
        check_positive_F(F)
        return (self.E * (np.asarray(F, dtype=float) - 1.0) ** 2 / (2.0 * rho_star))[()]

    def to_params(self):
        return dict(E=self.E)


class PowerGas(ElasticLaw):
    """p(F) = p0 F^(-gamma); gamma = 1 is the isothermal ideal gas."""

    short_name = 'power_gas'

    def __init__(self, p0=1.0, gamma=1.0):
        if not p0 > 0:
            raise DomainError('reference pressure must be positive, got {}'.format(p0))
        if not gamma >= 1:
            raise DomainError('gamma must be >= 1, got {}'.format(gamma))
        self.p0 = float(p0)
        self.gamma = float(gamma)

    def pressure(self, F):
        check_positive_F(F)
        return (self.p0 * np.asarray(F, dtype=float) ** (-self.gamma))[()]

    def dpressure_dF(self, F):
        check_positive_F(F)
        return (-self.gamma * self.p0 * np.asarray(F, dtype=float) ** (-self.gamma - 1.0))[()]

    def energy(self, F, rho_star):
        check_positive_F(F)
        F = np.asarray(F, dtype=float)
        if self.gamma == 1.0:
            return (-(self.p0 / rho_star) * np.log(F))[()]
        return (self.p0 * F ** (1.0 - self.gamma) / (rho_star * (self.gamma - 1.0)))[()]

    def to_params(self):
        return dict(p0=self.p0, gamma=self.gamma)


def pressure(F, elastic):
    return elastic.pressure(F)


def dpressure_dF(F, elastic):
    return elastic.dpressure_dF(F)


def elastic_energy(F, elastic, rho_star):
    return elastic.energy(F, rho_star)
