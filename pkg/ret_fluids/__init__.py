import math

from ret_fluids.constitutive import (Material, PowerLawFluid, LinearElastic, PowerGas,
                                     QuadraticEnergy, CustomEnergy, a_coeff)
from ret_fluids.exceptions import (RetError, DomainError, ConvergenceError, NewtonFailure,
                                   StepFailure, MaxStepsExceeded, ConfigError)


def k_convention(m):
    """Consistency coefficient k = 10 e^(-2m) used by the bundled figures."""
    return 10.0 * math.exp(-2.0 * m)
