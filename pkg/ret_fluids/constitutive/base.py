from importlib import import_module

import numpy as np

from ret_fluids.exceptions import DomainError


def get_class(fully_qualified_name):
    parts = fully_qualified_name.split('.')
    module_path = '.'.join(parts[:-1])
    if not module_path:
        raise DomainError('"{}" is not a fully qualified class name'.format(fully_qualified_name))

    try:
        class_module = import_module(module_path)
        return getattr(class_module, parts[-1])
    except (ModuleNotFoundError, AttributeError):
        raise DomainError('Failed importing class {}'.format(fully_qualified_name))


def signed_power(x, exponent):
    """sign(x) * |x| ** exponent, continuous at x = 0 for every positive exponent."""
    x = np.asarray(x, dtype=float)
    return (np.sign(x) * np.abs(x) ** exponent)[()]


def check_positive_F(F):
    if np.any(np.asarray(F) <= 0):
        raise DomainError('deformation gradient must be positive, got {}'.format(F))


class Law:
    short_name = None

    def to_params(self):
        raise NotImplementedError

    @classmethod
    def class_name(cls):
        return cls.short_name or '{}.{}'.format(cls.__module__, cls.__name__)


class ElasticLaw(Law):
    """Elastic part of the internal energy, in its fluid form T(F) = -p(F)."""

    def pressure(self, F):
        raise NotImplementedError

    def dpressure_dF(self, F):
        raise NotImplementedError

    def energy(self, F, rho_star):
        raise NotImplementedError

    def stress(self, F):
        return -self.pressure(F)

    def relative_energy(self, F, rho_star):
        """Energy measured from F = 1 minus its tangent there, so it is >= 0 by convexity."""
        F = np.asarray(F, dtype=float)
        reference = self.energy(1.0, rho_star)
        slope = -self.pressure(1.0) / rho_star
        return (self.energy(F, rho_star) - reference - slope * (F - 1.0))[()]


class ViscousEnergy(Law):
    """Viscous energy e_v(sigma); it fixes tau(sigma) and the conserved variable Z(sigma)."""

    is_quadratic = False

    def energy(self, sigma, rho_star):
        raise NotImplementedError

    def tau(self, sigma, rho_star):
        raise NotImplementedError

    def Z(self, sigma, rho_star):
        raise NotImplementedError

    def invert_Z(self, z, rho_star):
        raise NotImplementedError


class ProductionLaw(Law):
    """Inverse constitutive law D = g^-1(sigma) and the production P = -F g^-1(sigma)."""

    def rate_from_stress(self, sigma):
        raise NotImplementedError

    def stress_from_rate(self, vx):
        raise NotImplementedError

    def d_rate_d_stress(self, sigma):
        raise NotImplementedError

    def production(self, F, sigma):
        check_positive_F(F)
        return (-np.asarray(F, dtype=float) * self.rate_from_stress(sigma))[()]

    def d_production_d_stress(self, F, sigma):
        return (-np.asarray(F, dtype=float) * self.d_rate_d_stress(sigma))[()]

    def dissipation_rate(self, F, sigma):
        return (np.asarray(sigma, dtype=float) * self.production(F, sigma))[()]
