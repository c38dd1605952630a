import math
from dataclasses import dataclass

import numpy as np

from ret_fluids.exceptions import DomainError


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    n_cells: int

    def __post_init__(self):
        if not self.x_max > self.x_min:
            raise DomainError('grid needs x_max > x_min, got [{}, {}]'.format(self.x_min, self.x_max))
        if self.n_cells < 2:
            raise DomainError('grid needs at least 2 cells, got {}'.format(self.n_cells))

    @property
    def dx(self):
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def length(self):
        return self.x_max - self.x_min

    @property
    def centers(self):
        return self.x_min + self.dx * (np.arange(self.n_cells) + 0.5)

    @property
    def interfaces(self):
        return self.x_min + self.dx * np.arange(self.n_cells + 1)

    def to_params(self):
        return dict(x_min=self.x_min, x_max=self.x_max, n_cells=self.n_cells)


class BoundaryCondition:
    """Fills one ghost cell on each side of the primitive arrays v, F, sigma."""

    short_name = None
    periodic = False

    def ghosts(self, v, F, sigma, t):
        raise NotImplementedError

    def extend(self, v, F, sigma, t):
        left, right = self.ghosts(v, F, sigma, t)
        return tuple(np.concatenate(([lo], values, [hi]))
                     for lo, values, hi in zip(left, (v, F, sigma), right))

    def to_params(self):
        return {}

    @staticmethod
    def create(name, params):
        conditions = {cls.short_name: cls for cls in (Periodic, Transmissive, Piston)}
        if name not in conditions:
            raise DomainError('{} boundary condition is unrecognized'.format(name))
        return conditions[name](**params)


class Periodic(BoundaryCondition):
    short_name = 'periodic'
    periodic = True

    def ghosts(self, v, F, sigma, t):
        return (v[-1], F[-1], sigma[-1]), (v[0], F[0], sigma[0])


class Transmissive(BoundaryCondition):
    short_name = 'transmissive'

    def ghosts(self, v, F, sigma, t):
        return (v[0], F[0], sigma[0]), (v[-1], F[-1], sigma[-1])


class Piston(BoundaryCondition):
    """Walls moving with prescribed velocities; F and sigma are mirrored."""

    short_name = 'piston'

    def __init__(self, v_left=0.0, v_right=0.0):
        for v in (v_left, v_right):
            if not callable(v) and not math.isfinite(v):
                raise DomainError('piston velocities must be finite, got {}'.format(v))
        self.v_left = v_left
        self.v_right = v_right

    @staticmethod
    def _value(v, t):
        return float(v(t)) if callable(v) else float(v)

    def ghosts(self, v, F, sigma, t):
        v_left = self._value(self.v_left, t)
        v_right = self._value(self.v_right, t)
        return (2 * v_left - v[0], F[0], sigma[0]), (2 * v_right - v[-1], F[-1], sigma[-1])

    def to_params(self):
        if callable(self.v_left) or callable(self.v_right):
            raise DomainError('time-dependent piston velocities cannot be serialized')
        return dict(v_left=self.v_left, v_right=self.v_right)
