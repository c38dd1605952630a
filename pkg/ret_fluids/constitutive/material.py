import logging
from dataclasses import dataclass, field

import numpy as np

from ret_fluids.constitutive.base import (ElasticLaw, ProductionLaw, ViscousEnergy,
                                          check_positive_F, get_class)
from ret_fluids.constitutive.elastic import LinearElastic, PowerGas
from ret_fluids.constitutive.power_law import PowerLawFluid
from ret_fluids.constitutive.viscous import QuadraticEnergy, QuarticEnergy
from ret_fluids.exceptions import DomainError
from ret_fluids.rootfind import safeguarded_newton_array

logger = logging.getLogger(__name__)

LAWS = {
    'elastic': {'linear': LinearElastic, 'power_gas': PowerGas},
    'viscous': {'quadratic': QuadraticEnergy, 'quartic': QuarticEnergy},
    'fluid': {'power_law': PowerLawFluid},
}

BASES = {'elastic': ElasticLaw, 'viscous': ViscousEnergy, 'fluid': ProductionLaw}


def get_law_class(kind, name):
    # match short pseudo names first
    if name in LAWS[kind]:
        return LAWS[kind][name]

    law_class = get_class(name)
    if not (isinstance(law_class, type) and issubclass(law_class, BASES[kind])):
        raise DomainError('{} is not a {} law'.format(name, kind))
    return law_class


def create_law(kind, name, params):
    return get_law_class(kind, name)(**params)


@dataclass(frozen=True)
class Material:
    rho_star: float = 1.0
    elastic: ElasticLaw = field(default_factory=PowerGas)
    viscous: ViscousEnergy = field(default_factory=lambda: QuadraticEnergy(tau0=1.0))
    fluid: ProductionLaw = field(default_factory=lambda: PowerLawFluid(k=1.0, m=1.0))
    body_force: float = 0.0

    def __post_init__(self):
        if not self.rho_star > 0:
            raise DomainError('reference density must be positive, got {}'.format(self.rho_star))
        if not np.isfinite(self.body_force):
            raise DomainError('body force must be finite, got {}'.format(self.body_force))

    def pressure(self, F):
        return self.elastic.pressure(F)

    def dpressure_dF(self, F):
        return self.elastic.dpressure_dF(F)

    def tau(self, sigma):
        return self.viscous.tau(sigma, self.rho_star)

    def Z(self, sigma):
        return self.viscous.Z(sigma, self.rho_star)

    def invert_Z(self, z):
        return self.viscous.invert_Z(z, self.rho_star)

    def production(self, F, sigma):
        return self.fluid.production(F, sigma)

    def dissipation_rate(self, F, sigma):
        return self.fluid.dissipation_rate(F, sigma)

    def kinetic_density(self, v):
        return (0.5 * self.rho_star * np.asarray(v, dtype=float) ** 2)[()]

    def elastic_density(self, F):
        return (self.rho_star * self.elastic.relative_energy(F, self.rho_star))[()]

    def viscous_density(self, sigma):
        return (self.rho_star * self.viscous.energy(sigma, self.rho_star))[()]

    def energy_density(self, v, F, sigma):
        return (self.kinetic_density(v) + self.elastic_density(F) + self.viscous_density(sigma))[()]

    def implicit_relaxation(self, z_star, F, h, vx=0.0):
        """Stress sigma solving Z(sigma) + h F (g^-1(sigma) - vx) = z_star, per entry.

        The root lies between the equilibrium stress g(vx) and invert_Z(z_star),
        where the residual has opposite signs, so the bracket is guaranteed.
        """
        check_positive_F(F)
        F = np.asarray(F, dtype=float)
        z_star = np.asarray(z_star, dtype=float)
        vx = np.asarray(vx, dtype=float)

        def residual(sigma):
            return self.Z(sigma) - z_star + h * F * (self.fluid.rate_from_stress(sigma) - vx)

        def slope(sigma):
            return self.tau(sigma) + h * F * self.fluid.d_rate_d_stress(sigma)

        equilibrium = np.broadcast_to(self.fluid.stress_from_rate(vx), z_star.shape)
        frozen = np.broadcast_to(self.invert_Z(z_star), z_star.shape)
        ftol = 1e-14 * np.maximum(1.0, np.abs(z_star))
        return safeguarded_newton_array(residual, slope, equilibrium, frozen, ftol=ftol)[()]

    def to_params(self):
        return dict(
            rho_star=self.rho_star,
            body_force=self.body_force,
            elastic=dict(name=self.elastic.class_name(), params=self.elastic.to_params()),
            viscous=dict(name=self.viscous.class_name(), params=self.viscous.to_params()),
            fluid=dict(name=self.fluid.class_name(), params=self.fluid.to_params()),
        )

    @staticmethod
    def create(params):
        laws = {}
        for kind in ('elastic', 'viscous', 'fluid'):
            entry = params[kind]
            laws[kind] = create_law(kind, entry['name'], entry.get('params', {}))

        return Material(rho_star=params.get('rho_star', 1.0),
                        body_force=params.get('body_force', 0.0), **laws)
