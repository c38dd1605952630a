import math

import numpy as np
import pytest

from ret_fluids.exceptions import ConvergenceError, NewtonFailure
from ret_fluids.rootfind import expand_bracket, safeguarded_newton, safeguarded_newton_array


def test_newton_on_smooth_function():
    root = safeguarded_newton(lambda x: x ** 3 - 2.0, lambda x: 3 * x ** 2, 0.0, 2.0)
    assert root == pytest.approx(2.0 ** (1 / 3), rel=1e-14)


def test_newton_survives_unbounded_derivative():
    def f(x):
        return math.copysign(abs(x) ** (1 / 3), x) - 0.5

    def df(x):
        return math.inf if x == 0 else abs(x) ** (-2 / 3) / 3

    assert safeguarded_newton(f, df, 0.0, 1.0) == pytest.approx(0.125, rel=1e-13)


def test_newton_accepts_reversed_bracket():
    assert safeguarded_newton(lambda x: x - 0.3, lambda x: 1.0, 1.0, 0.0) == pytest.approx(0.3)


def test_newton_requires_a_bracket():
    with pytest.raises(ConvergenceError):
        safeguarded_newton(lambda x: x - 3.0, lambda x: 1.0, 0.0, 1.0)


def test_expand_bracket():
    lo, hi = expand_bracket(lambda x: x ** 3, 100.0)
    assert lo ** 3 <= 100.0 <= hi ** 3
    lo, hi = expand_bracket(lambda x: x ** 3, -100.0)
    assert lo ** 3 <= -100.0 <= hi ** 3
    assert expand_bracket(lambda x: x, 0.0) == (0.0, 0.0)


def test_expand_bracket_gives_up():
    with pytest.raises(ConvergenceError):
        expand_bracket(lambda x: math.tanh(x), 2.0, max_doublings=10)


def test_array_solver_solves_each_entry():
    targets = np.array([0.0, 0.5, 2.0, 7.0])
    lo = np.zeros_like(targets)
    hi = np.full_like(targets, 3.0)
    roots = safeguarded_newton_array(lambda x: x ** 2 - targets, lambda x: 2 * x, lo, hi)
    np.testing.assert_allclose(roots, np.sqrt(targets), rtol=1e-13, atol=1e-14)


def test_array_solver_keeps_degenerate_brackets():
    lo = np.array([0.4, 0.0])
    hi = np.array([0.4, 1.0])
    roots = safeguarded_newton_array(lambda x: x - np.array([0.4, 0.25]), lambda x: np.ones_like(x), lo, hi)
    np.testing.assert_allclose(roots, [0.4, 0.25])


def test_array_solver_reports_failing_cell():
    with pytest.raises(NewtonFailure) as info:
        safeguarded_newton_array(lambda x: x ** 3 - 0.3, lambda x: np.full_like(x, np.nan),
                                 np.array([0.0]), np.array([1.0]), max_iter=1)
    assert info.value.cell == 0
