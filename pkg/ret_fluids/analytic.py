"""Closed-form relaxation solutions.

Case 1 is free relaxation at F = 1, tau0 sigma_t = -a sigma^(1/m), written in
the nondimensional time tbar = t / tau0. Case 2 is relaxation under a constant
velocity gradient, whose steady state is the classical power-law stress.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from ret_fluids.constitutive import PowerLawFluid
from ret_fluids.exceptions import DomainError

logger = logging.getLogger(__name__)

NEWTONIAN_BAND = 1e-6


@dataclass(frozen=True)
class Case1Params:
    m: float
    k: float
    sigma0: float = 1.0

    def __post_init__(self):
        if not self.m > 0 or not self.k > 0:
            raise DomainError('Case 1 needs m > 0 and k > 0, got m={}, k={}'.format(self.m, self.k))
        if not math.isfinite(self.sigma0):
            raise DomainError('initial stress must be finite, got {}'.format(self.sigma0))

    @property
    def fluid(self):
        return PowerLawFluid(k=self.k, m=self.m)

    @property
    def a(self):
        return self.fluid.a

    @property
    def is_newtonian(self):
        return abs(self.m - 1.0) < NEWTONIAN_BAND


@dataclass(frozen=True)
class SteadyShearParams:
    vx0: float
    fluid: PowerLawFluid
    tau0: float = 1.0
    F0: float = 1.0

    def __post_init__(self):
        if not self.F0 > 0:
            raise DomainError('F0 must be positive, got {}'.format(self.F0))
        if not self.tau0 > 0:
            raise DomainError('tau0 must be positive, got {}'.format(self.tau0))


def _check_times(tbar):
    tbar = np.asarray(tbar, dtype=float)
    if np.any(tbar < 0) or np.any(np.isnan(tbar)):
        raise DomainError('time must be nonnegative, got {}'.format(tbar))
    return tbar


def case1_solution(p, tbar):
    """Stress at nondimensional time tbar; negative sigma0 is handled by odd symmetry."""
    tbar = _check_times(tbar)
    sign = math.copysign(1.0, p.sigma0)
    s0 = abs(p.sigma0)
    if s0 == 0:
        return np.zeros_like(tbar)[()]

    m, a = p.m, p.a
    if p.is_newtonian:
        sigma = s0 * np.exp(-a * tbar)
    elif m < 1:
        base = s0 ** ((m - 1.0) / m) + a * ((1.0 - m) / m) * tbar
        sigma = base ** (-m / (1.0 - m))
    else:
        # floored before exponentiation so extinction is an exact zero
        base = np.maximum(s0 ** ((m - 1.0) / m) - a * ((m - 1.0) / m) * tbar, 0.0)
        sigma = base ** (m / (m - 1.0))

    return (sign * sigma)[()]


def extinction_time(p):
    if not p.m > 1 or p.is_newtonian:
        raise DomainError('finite extinction exists only for m > 1, got m={}'.format(p.m))
    m = p.m
    return (m / (m - 1.0)) * abs(p.sigma0) ** ((m - 1.0) / m) / p.a


def algebraic_tail_constant(p):
    """Limit of sigma(tbar) * tbar^(m/(1-m)) as tbar grows, for shear-thinning fluids."""
    if not p.m < 1 or p.is_newtonian:
        raise DomainError('algebraic decay holds only for m < 1, got m={}'.format(p.m))
    m = p.m
    return math.copysign((p.a * (1.0 - m) / m) ** (-m / (1.0 - m)), p.sigma0)


def steady_sigma(p):
    return p.fluid.stress_from_rate(p.vx0)


def maxwell_comparator(t, sigma_inf, tau1):
    if not tau1 > 0:
        raise DomainError('tau1 must be positive, got {}'.format(tau1))
    t = _check_times(t)
    return (sigma_inf * -np.expm1(-t / tau1))[()]
