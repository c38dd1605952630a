from .protocols import ShearProtocol, ZeroRate, ConstantRate, PiecewiseConstant, CustomRate
from .integrator import EmbeddedRungeKutta, IntegrationResult
from .homogeneous import (OdeOptions, Trajectory, HomogeneousProblem, simulate_homogeneous,
                          simulate_maxwell, rhs_case2, superexp_ratio_test)
