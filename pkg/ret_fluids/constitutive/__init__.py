from .base import ElasticLaw, ViscousEnergy, ProductionLaw, signed_power
from .power_law import (PowerLawFluid, InvertibleLaw, a_coeff, rate_from_stress,
                        stress_from_rate, production, dissipation_rate)
from .elastic import LinearElastic, PowerGas, pressure, dpressure_dF, elastic_energy
from .viscous import QuadraticEnergy, CustomEnergy, QuarticEnergy, tau, Z, invert_Z
from .material import Material, get_law_class, create_law
