from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ret_fluids.constitutive import LinearElastic, Material, PowerGas, PowerLawFluid, QuadraticEnergy
from ret_fluids.diagnostics import l1_error, observed_order, total_energy
from ret_fluids.exceptions import DomainError
from ret_fluids.ode import CustomRate, OdeOptions, simulate_homogeneous
from ret_fluids.pde import (EXPLICIT, IMEX, Conserved, EnergyObserver, Grid1D, Periodic, Piston,
                            ProfileObserver, State1D, Transmissive, WavefrontTracker, char_speeds,
                            conserved, initial, physical_flux, primitives, quasilinear_matrix, run,
                            rusanov_flux, sound_speed, stable_dt, step)


def material_with(elastic, tau0=1.0, m=1.0, k=1.0):
    return Material(elastic=elastic, viscous=QuadraticEnergy(tau0=tau0), fluid=PowerLawFluid(k=k, m=m))


@given(F=st.floats(min_value=0.2, max_value=5.0), sigma=st.floats(min_value=-1.0, max_value=1.0),
       tau0=st.floats(min_value=0.05, max_value=5.0), gamma=st.floats(min_value=1.0, max_value=3.0))
def test_quasilinear_eigenvalues_are_characteristic_speeds(F, sigma, tau0, gamma):
    material = material_with(PowerGas(p0=1.0, gamma=gamma), tau0=tau0)
    s = State1D(v=0.3, F=F, sigma=sigma)
    eigenvalues = np.sort(np.linalg.eigvals(quasilinear_matrix(s, material)).real)
    np.testing.assert_allclose(eigenvalues, np.sort(char_speeds(s, material)), rtol=1e-9, atol=1e-9)


def test_sound_speed_value(gas_material):
    s = State1D(v=0.0, F=0.1, sigma=0.0)
    assert sound_speed(s, gas_material) == pytest.approx(np.sqrt(101.0))


def test_state_rejects_nonpositive_F():
    with pytest.raises(DomainError):
        State1D(v=0.0, F=np.array([1.0, -0.1]), sigma=0.0)


def test_primitive_conserved_round_trip(gas_material):
    s = State1D(v=np.array([0.1, -0.2]), F=np.array([0.8, 1.3]), sigma=np.array([0.05, -0.4]))
    back = primitives(conserved(s, gas_material), gas_material)
    np.testing.assert_allclose(back.v, s.v)
    np.testing.assert_allclose(back.F, s.F)
    np.testing.assert_allclose(back.sigma, s.sigma)
    w = conserved(s, gas_material).as_array()
    assert w.shape == (3, 2)
    np.testing.assert_array_equal(Conserved.from_array(w).w2, s.F)


def test_rusanov_flux_is_consistent(gas_material):
    s = State1D(v=0.2, F=0.9, sigma=0.1)
    np.testing.assert_allclose(rusanov_flux(s, s, gas_material), physical_flux(s, gas_material))


def test_grid_geometry():
    grid = Grid1D(0.0, 2.0, 4)
    assert grid.dx == 0.5
    np.testing.assert_allclose(grid.centers, [0.25, 0.75, 1.25, 1.75])
    np.testing.assert_allclose(grid.interfaces, [0.0, 0.5, 1.0, 1.5, 2.0])
    with pytest.raises(DomainError):
        Grid1D(1.0, 0.0, 4)


def test_boundary_ghosts():
    v, F, sigma = np.array([1.0, 2.0]), np.array([0.5, 0.7]), np.array([0.1, 0.2])
    left, right = Periodic().ghosts(v, F, sigma, 0.0)
    assert left == (2.0, 0.7, 0.2) and right == (1.0, 0.5, 0.1)
    left, right = Transmissive().ghosts(v, F, sigma, 0.0)
    assert left == (1.0, 0.5, 0.1) and right == (2.0, 0.7, 0.2)
    left, right = Piston(v_left=0.0, v_right=lambda t: 3.0 * t).ghosts(v, F, sigma, 1.0)
    assert left == (-1.0, 0.5, 0.1) and right == (4.0, 0.7, 0.2)


def slab_field(material, n_cells=200):
    return initial.slab(Grid1D(0.0, 1.0, n_cells), material, Periodic(), F_inside=0.1, F_outside=1.0)


def test_periodic_run_conserves_momentum_and_deformation(gas_material):
    field = slab_field(gas_material)
    w0 = field.w.copy()
    field, _ = run(field, 0.04, cfl=0.4)
    assert field.time == 0.04
    dx = field.grid.dx
    assert np.sum(field.w[0]) * dx == pytest.approx(np.sum(w0[0]) * dx, abs=1e-12)
    assert np.sum(field.w[1]) * dx == pytest.approx(np.sum(w0[1]) * dx, rel=1e-13)


def test_slab_energy_budget_and_wave_cone(gas_material):
    field = slab_field(gas_material)
    energy, front = EnergyObserver(), WavefrontTracker(threshold=1e-4)
    field, records = run(field, 0.04, cfl=0.4, mode=IMEX, observers=(energy, front))

    history = records['energy']
    assert history[0].residual == 0.0
    assert max(r.residual for r in history) <= 1e-10
    assert history[-1].total < history[0].total
    assert history[-1].diss_integral < 0
    assert front.c_max == pytest.approx(np.sqrt(101.0))
    assert front.support == pytest.approx((0.45, 0.55))
    assert front.violations() == []
    assert front.records[-1]['right'] > 0.55


def test_energy_never_increases_between_steps(gas_material):
    field = slab_field(gas_material)
    energy = EnergyObserver()
    field, records = run(field, 0.04, cfl=0.4, mode=IMEX, observers=(energy,))

    totals = np.array([r.total for r in records['energy']])
    assert len(totals) == energy.steps + 1
    assert np.all(np.diff(totals) <= 1e-12 * totals[0])


def test_tracker_margin_covers_the_first_step_stencil(gas_material):
    field = slab_field(gas_material)
    front = WavefrontTracker(threshold=1e-4)
    front.on_run_begin(field)
    after = step(field, cfl=0.4)
    front.on_step_end(after, after.last_step)

    record = front.records[0]
    assert record['left'] < record['cone_left'] - field.grid.dx
    assert record['reach'] >= 2 * field.grid.dx
    assert front.violations() == []


def test_tracker_flags_a_disturbance_outside_the_cone(gas_material):
    field = slab_field(gas_material)
    front = WavefrontTracker(threshold=1e-4)
    front.on_run_begin(field)
    w = field.w.copy()
    w[1, 0] += 0.5
    disturbed = replace(field, w=w, time=stable_dt(field, 0.4))
    front.on_step_end(disturbed, None)

    bad = front.violations()
    assert len(bad) == 1
    assert bad[0]['left'] == pytest.approx(field.grid.centers[0])


def test_observers_sample_every_n_steps(gas_material):
    field = slab_field(gas_material, n_cells=50)
    energy, profiles = EnergyObserver(every=5), ProfileObserver(every=5)
    field, records = run(field, 0.02, cfl=0.4, observers=(energy, profiles))
    assert records['energy'][-1].time == field.time
    assert records['profiles'][0][0] == 0.0
    assert records['profiles'][-1][0] == field.time
    assert set(records['profiles'][-1][1]) == {'X_center', 'v', 'F', 'sigma', 'Z', 'p', 'energy_density'}
    assert len(records['energy']) <= energy.steps // 5 + 2


def test_uniform_shear_follows_homogeneous_dynamics(linear_material):
    vX = 0.1
    field = initial.uniform_shear(Grid1D(0.0, 1.0, 100), linear_material, vX)
    field, _ = run(field, 1.0, cfl=0.4)

    np.testing.assert_allclose(field.state.F, 1.0 + vX, rtol=1e-12)
    np.testing.assert_allclose(field.state.v, vX * field.grid.centers, rtol=1e-10)
    assert np.ptp(field.state.sigma) < 1e-12

    protocol = CustomRate(lambda t: vX / (1.0 + vX * t))
    reference = simulate_homogeneous(linear_material, protocol, opts=OdeOptions(t_end=1.0, rtol=1e-10, atol=1e-12))
    assert field.state.sigma[0] == pytest.approx(reference.sigma[-1], abs=1e-3)


def test_relaxation_limit_approaches_power_law():
    vX = 0.1
    errors = []
    for tau0 in (0.1, 0.01, 0.001):
        material = material_with(LinearElastic(E=1.0), tau0=tau0)
        field = initial.uniform_shear(Grid1D(0.0, 1.0, 50), material, vX)
        field, _ = run(field, 1.0, cfl=0.4)
        target = material.fluid.stress_from_rate(vX / field.state.F[0])
        errors.append(abs(field.state.sigma[0] - target))
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 1e-4


def test_self_convergence_is_first_order():
    material = material_with(LinearElastic(E=1.0))

    def final_F(n_cells):
        field = initial.pulse(Grid1D(0.0, 1.0, n_cells), material, Periodic(), amplitude=0.01, width=0.08)
        field, _ = run(field, 0.25, cfl=0.4)
        return field.state.F

    reference = final_F(1600)
    errors = [l1_error(final_F(n), reference, 1.0 / n) for n in (100, 200, 400)]
    orders = observed_order(errors)
    assert all(0.8 < order < 1.6 for order in orders)


def test_step_rejects_dt_above_cfl_bound(gas_material):
    field = slab_field(gas_material, n_cells=20)
    dt = stable_dt(field, 0.5)
    with pytest.raises(DomainError):
        step(field, cfl=0.5, dt=2 * dt)
    with pytest.raises(DomainError):
        stable_dt(field, 1.5)
    with pytest.raises(DomainError):
        step(field, mode='implicit')


def test_run_rejects_past_end_time(gas_material):
    field = slab_field(gas_material, n_cells=20)
    with pytest.raises(DomainError):
        run(field, -1.0)


def test_transmissive_rest_state_is_steady(gas_material):
    grid = Grid1D(0.0, 1.0, 20)
    field = initial.riemann(grid, gas_material, Transmissive(), State1D(0.0, 1.0, 0.0), State1D(0.0, 1.0, 0.0))
    after, _ = run(field, 0.1)
    np.testing.assert_allclose(after.w, field.w, atol=1e-15)
    assert total_energy(after).total == pytest.approx(0.0, abs=1e-15)


def test_explicit_and_imex_agree_on_mild_relaxation():
    material = material_with(LinearElastic(E=1.0))
    fields = {}
    for mode in (EXPLICIT, IMEX):
        field = initial.pulse(Grid1D(0.0, 1.0, 100), material, Periodic(), amplitude=0.01, width=0.08)
        fields[mode], _ = run(field, 0.25, cfl=0.4, mode=mode)
    assert np.max(np.abs(fields[EXPLICIT].state.F - fields[IMEX].state.F)) < 1e-4
    assert np.max(np.abs(fields[EXPLICIT].sigma - fields[IMEX].sigma)) < 1e-4
