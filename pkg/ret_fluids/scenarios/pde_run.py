import logging

import numpy as np

from ret_fluids.exceptions import DomainError, RetError
from ret_fluids.pde import BoundaryCondition, EnergyObserver, Grid1D, ProfileObserver, State1D, \
    WavefrontTracker, initial, run
from ret_fluids.scenarios.base import Scenario, build_material
from ret_fluids.scenarios.plotting import LineChart
from ret_fluids.scenarios.writers import write_energy, write_snapshot

logger = logging.getLogger(__name__)


def build_grid(config):
    g = config.section('grid')
    return Grid1D(x_min=g['x_min'], x_max=g['x_max'], n_cells=g['n_cells'])


def build_field(config, material, grid):
    g = config.section('grid')
    bc_params = dict(v_left=g['v_left'], v_right=g['v_right']) if g['bc'] == 'piston' else {}
    bc = BoundaryCondition.create(g['bc'], bc_params)

    name = g['initial']
    try:
        if name == 'slab':
            return initial.slab(grid, material, bc, F_inside=g['F_inside'], F_outside=g['F_outside'],
                                lo=g['lo'], hi=g['hi'])
        if name == 'riemann':
            left = State1D(v=g['left_v'], F=g['left_F'], sigma=g['left_sigma'])
            right = State1D(v=g['right_v'], F=g['right_F'], sigma=g['right_sigma'])
            return initial.riemann(grid, material, bc, left, right, x0=g['x0'])
        if name == 'pulse':
            return initial.pulse(grid, material, bc, amplitude=g['amplitude'], width=g['width'],
                                 center=g['center'])
        return initial.uniform_shear(grid, material, g['vX'])
    except DomainError as e:
        raise config.error('bad initial data: {}'.format(e), 'grid', 'initial')


class PdeScenario(Scenario):
    """Finite-volume run of the one-dimensional balance laws."""

    kind = 'pde'

    def run(self):
        config = self.config
        material = build_material(config)
        grid = build_grid(config)
        field = build_field(config, material, grid)
        solver = config.section('solver')
        every = config.get('output', 'every')

        if config.get('grid', 'initial') == 'uniform_shear' and config.get('grid', 'bc') != 'piston':
            self.assumptions.append('uniform_shear drives both ends with pistons moving at vX X')
        self.note_k_convention()

        energy = EnergyObserver(every=every)
        profiles = ProfileObserver(every=every)
        front = WavefrontTracker()
        try:
            field, _ = run(field, solver['t_end'], cfl=solver['cfl'], mode=solver['mode'],
                           observers=(energy, profiles, front), max_steps=solver['max_steps'])
        except RetError as e:
            # keep what was computed before the failure
            self.results['status'] = 'failed: {}'.format(e)
            if profiles.records:
                self.write_outputs(profiles.records[-1][1], energy.records)
            self.write_sidecar()
            raise

        residuals = [r.residual for r in energy.records]
        self.results['status'] = 'ok'
        self.results['t_end'] = field.time
        self.results['steps'] = energy.steps
        self.results['max_residual'] = float(np.max(residuals))
        self.results['c_max'] = front.c_max
        self.results['cone_violations'] = len(front.violations())

        snapshot = field.snapshot()
        self.write_outputs(snapshot, energy.records)
        if self.wants_chart():
            chart = LineChart('Profiles at t = {:.4g}'.format(field.time), 'X', 'value')
            chart.add('F', snapshot['X_center'], snapshot['F'])
            chart.add('sigma', snapshot['X_center'], snapshot['sigma'])
            chart.add('v', snapshot['X_center'], snapshot['v'])
            self.save_chart(chart)
        self.write_sidecar()
        return self.artifacts

    def write_outputs(self, snapshot, records):
        path = self.output_path('csv', '.csv')
        write_snapshot(path, snapshot)
        self.add_artifact(path)
        if records:
            path = self.output_path('energy_csv', '.energy.csv')
            write_energy(path, records)
            self.add_artifact(path)
