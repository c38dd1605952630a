"""Physical flux, characteristic speeds and the Rusanov interface flux.

Each balance law reads w_t + f(w)_X = s(w) with w = (rho* v, F, Z(sigma)) and
f = (p(F) - sigma, -v, -v).
"""
import numpy as np

from ret_fluids.exceptions import DomainError
from ret_fluids.pde.state import conserved


def physical_flux(s, material):
    v = np.asarray(s.v, dtype=float)
    return np.stack([np.asarray(material.pressure(s.F) - s.sigma, dtype=float), -v, -v])


def sound_speed(s, material):
    """c = sqrt((-p'(F) + 1/tau(sigma)) / rho*)."""
    radicand = (-material.dpressure_dF(s.F) + 1.0 / material.tau(s.sigma)) / material.rho_star
    radicand = np.asarray(radicand, dtype=float)
    if np.any(~(radicand > 0)):
        raise DomainError('nonpositive characteristic radicand; material is not hyperbolic here')
    return np.sqrt(radicand)[()]


def char_speeds(s, material):
    c = sound_speed(s, material)
    return -c, np.zeros_like(c)[()], c


def quasilinear_matrix(s, material):
    """Coefficient matrix of the system in (v, F, sigma) at a single state."""
    rho = material.rho_star
    return np.array([
        [0.0, -float(material.dpressure_dF(s.F)) / rho, 1.0 / rho],
        [1.0, 0.0, 0.0],
        [1.0 / float(material.tau(s.sigma)), 0.0, 0.0],
    ])


def rusanov_flux(left, right, material):
    s_max = np.maximum(sound_speed(left, material), sound_speed(right, material))
    w_left = conserved(left, material)
    w_right = conserved(right, material)
    jump = w_right.as_array() - w_left.as_array()
    return 0.5 * (physical_flux(left, material) + physical_flux(right, material)) - 0.5 * s_max * jump


def interface_fluxes(extended, w, material):
    """Rusanov fluxes at the n + 1 interfaces of ghost-extended states.

    extended holds primitive arrays of length n + 2 and w the matching
    conserved array of shape (3, n + 2).
    """
    f = physical_flux(extended, material)
    c = sound_speed(extended, material)
    s_max = np.maximum(c[:-1], c[1:])
    return 0.5 * (f[:, :-1] + f[:, 1:]) - 0.5 * s_max * (w[:, 1:] - w[:, :-1])
