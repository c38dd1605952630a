from dataclasses import dataclass

import numpy as np

from ret_fluids.constitutive.base import check_positive_F


@dataclass(frozen=True)
class State1D:
    """Primitive state (v, F, sigma); fields may be scalars or per-cell arrays."""
    v: np.ndarray
    F: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        check_positive_F(self.F)


@dataclass(frozen=True)
class Conserved:
    """Conserved variables w1 = rho* v, w2 = F, w3 = Z(sigma)."""
    w1: np.ndarray
    w2: np.ndarray
    w3: np.ndarray

    def as_array(self):
        return np.stack([np.asarray(self.w1, dtype=float),
                         np.asarray(self.w2, dtype=float),
                         np.asarray(self.w3, dtype=float)])

    @staticmethod
    def from_array(w):
        return Conserved(w1=w[0], w2=w[1], w3=w[2])


def primitives(c, material):
    return State1D(v=np.asarray(c.w1, dtype=float) / material.rho_star,
                   F=np.asarray(c.w2, dtype=float),
                   sigma=material.invert_Z(c.w3))


def conserved(s, material):
    return Conserved(w1=material.rho_star * np.asarray(s.v, dtype=float),
                     w2=np.asarray(s.F, dtype=float),
                     w3=material.Z(s.sigma))
