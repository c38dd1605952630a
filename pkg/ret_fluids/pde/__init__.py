from .state import State1D, Conserved, primitives, conserved
from .grid import Grid1D, BoundaryCondition, Periodic, Transmissive, Piston
from .fluxes import physical_flux, char_speeds, sound_speed, rusanov_flux, quasilinear_matrix
from .solver import Field1D, StepInfo, EXPLICIT, IMEX, step, run, stable_dt
from .observers import Observer, EnergyObserver, ProfileObserver, WavefrontTracker
from . import initial
