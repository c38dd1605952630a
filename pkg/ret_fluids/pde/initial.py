"""Initial fields for the bundled experiments."""
import numpy as np

from ret_fluids.exceptions import DomainError
from ret_fluids.pde.grid import Piston
from ret_fluids.pde.solver import Field1D
from ret_fluids.pde.state import State1D


def riemann(grid, material, bc, left, right, x0=None):
    """Piecewise-constant data, left state below x0 and right state above it."""
    x0 = 0.5 * (grid.x_min + grid.x_max) if x0 is None else x0
    inside = grid.centers < x0
    state = State1D(v=np.where(inside, left.v, right.v),
                    F=np.where(inside, left.F, right.F),
                    sigma=np.where(inside, left.sigma, right.sigma))
    return Field1D.from_state(grid, state, material, bc)


def slab(grid, material, bc, F_inside=0.1, F_outside=1.0, lo=0.45, hi=0.55):
    """Compressed slab at rest: F_inside on [lo, hi], F_outside elsewhere."""
    if not lo < hi:
        raise DomainError('slab needs lo < hi, got {}, {}'.format(lo, hi))
    x = grid.centers
    F = np.where((x > lo) & (x < hi), F_inside, F_outside)
    state = State1D(v=np.zeros_like(x), F=F, sigma=np.zeros_like(x))
    return Field1D.from_state(grid, state, material, bc)


def pulse(grid, material, bc, amplitude=0.01, width=0.08, center=None, F_ref=1.0):
    """Smooth Gaussian bump in F on a resting background."""
    center = 0.5 * (grid.x_min + grid.x_max) if center is None else center
    x = grid.centers
    F = F_ref + amplitude * np.exp(-((x - center) / width) ** 2)
    state = State1D(v=np.zeros_like(x), F=F, sigma=np.zeros_like(x))
    return Field1D.from_state(grid, state, material, bc)


def uniform_shear(grid, material, vX, F0=1.0, sigma0=0.0):
    """Linear velocity profile v = vX X between pistons moving with it.

    Every cell then sees the same deformation rate, so each follows the
    homogeneous dynamics with v_x = vX / F.
    """
    x = grid.centers
    state = State1D(v=vX * x, F=np.full_like(x, F0), sigma=np.full_like(x, sigma0))
    bc = Piston(v_left=vX * grid.x_min, v_right=vX * grid.x_max)
    return Field1D.from_state(grid, state, material, bc)
