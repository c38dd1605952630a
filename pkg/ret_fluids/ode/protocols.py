import math

import numpy as np

from ret_fluids.exceptions import DomainError


class ShearProtocol:
    """Prescribed velocity gradient v_x(t) of a homogeneous run."""

    short_name = None

    def rate(self, t):
        raise NotImplementedError

    def deformation(self, t, F0):
        """Exact F(t) from F_t = v_x F, or None when it has to be integrated."""
        return None

    def breakpoints(self, t0, t_end):
        return []

    def to_params(self):
        raise NotImplementedError

    @staticmethod
    def create(name, params):
        protocols = {cls.short_name: cls for cls in (ZeroRate, ConstantRate, PiecewiseConstant)}
        if name not in protocols:
            raise DomainError('{} protocol is unrecognized'.format(name))
        return protocols[name](**params)


class ConstantRate(ShearProtocol):
    short_name = 'constant'

    def __init__(self, vx0):
        if not math.isfinite(vx0):
            raise DomainError('velocity gradient must be finite, got {}'.format(vx0))
        self.vx0 = float(vx0)

    def rate(self, t):
        return self.vx0

    def deformation(self, t, F0):
        return (F0 * np.exp(self.vx0 * np.asarray(t, dtype=float)))[()]

    def to_params(self):
        return dict(vx0=self.vx0)


class ZeroRate(ConstantRate):
    short_name = 'zero'

    def __init__(self):
        super().__init__(0.0)

    def to_params(self):
        return {}


class PiecewiseConstant(ShearProtocol):
    """rates[0] before breakpoints[0], rates[i] on [breakpoints[i-1], breakpoints[i])."""

    short_name = 'piecewise'

    def __init__(self, breakpoints, rates):
        self.breakpoints_ = np.asarray(breakpoints, dtype=float)
        self.rates = np.asarray(rates, dtype=float)
        if len(self.rates) != len(self.breakpoints_) + 1:
            raise DomainError('piecewise protocol needs one more rate than breakpoints, got {} and {}'.format(
                len(self.rates), len(self.breakpoints_)))
        if np.any(self.breakpoints_ <= 0):
            raise DomainError('breakpoints must be positive times, got {}'.format(list(self.breakpoints_)))
        if np.any(np.diff(self.breakpoints_) <= 0):
            raise DomainError('breakpoints must be strictly increasing, got {}'.format(list(self.breakpoints_)))
        if not np.all(np.isfinite(self.rates)):
            raise DomainError('rates must be finite, got {}'.format(list(self.rates)))

    def rate(self, t):
        return float(self.rates[np.searchsorted(self.breakpoints_, t, side='right')])

    def deformation(self, t, F0):
        t = np.asarray(t, dtype=float)
        edges = np.concatenate(([0.0], self.breakpoints_))
        # elapsed time spent in each piece, for every requested t
        spent = np.clip(t[..., None] - edges, 0.0, None)
        spent[..., :-1] = np.minimum(spent[..., :-1], np.diff(edges))
        return (F0 * np.exp(spent @ self.rates))[()]

    def breakpoints(self, t0, t_end):
        return [float(b) for b in self.breakpoints_ if t0 < b < t_end]

    def to_params(self):
        return dict(breakpoints=[float(b) for b in self.breakpoints_], rates=[float(r) for r in self.rates])


class CustomRate(ShearProtocol):
    short_name = 'custom'

    def __init__(self, func):
        self.func = func

    def rate(self, t):
        return float(self.func(t))

    def to_params(self):
        raise DomainError('callable protocols cannot be serialized')
