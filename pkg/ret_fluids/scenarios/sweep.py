"""Parameter sweeps over the homogeneous shear problem.

Points run on a thread pool; rows come back in the order of the listed values.
"""
import logging
from concurrent.futures import ThreadPoolExecutor

from ret_fluids.analytic import Case1Params, extinction_time
from ret_fluids.diagnostics import settling_time
from ret_fluids.exceptions import RetError
from ret_fluids.ode import simulate_homogeneous
from ret_fluids.scenarios.base import Scenario, build_material, build_protocol, ode_options
from ret_fluids.scenarios.plotting import LineChart
from ret_fluids.scenarios.writers import write_csv

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ('value', 'sigma_inf', 'sigma_end', 't99', 'extinction_time',
                 'steps', 'rejections', 'rhs_evaluations', 'status')


class SweepScenario(Scenario):
    kind = 'sweep'

    def overrides(self, value):
        axis = self.config.get('sweep', 'axis')
        material = {axis: value} if axis in ('m', 'k', 'tau0') else {}
        vx0 = value if axis == 'vx0' else None
        return material, vx0

    def point(self, value):
        config = self.config
        row = dict(value=value)
        try:
            material_overrides, vx0 = self.overrides(value)
            material = build_material(config, **material_overrides)
            protocol = build_protocol(config, vx0=vx0)
            opts = ode_options(config)
            sigma0 = config.get('protocol', 'sigma0')

            sigma_inf = material.fluid.stress_from_rate(protocol.rate(opts.t_end))
            row['sigma_inf'] = sigma_inf
            fluid = material.fluid
            p = Case1Params(m=fluid.m, k=fluid.k, sigma0=config.get('sweep', 'case1_sigma0'))
            if p.m > 1 and not p.is_newtonian:
                row['extinction_time'] = extinction_time(p)

            trajectory = simulate_homogeneous(material, protocol, sigma0=sigma0,
                                              F0=config.get('protocol', 'F0'), opts=opts)
            row['sigma_end'] = float(trajectory.sigma[-1])
            sample = trajectory.uniform(config.get('output', 'samples')) if opts.t_end > 0 else trajectory
            row['t99'] = settling_time(sample.times, sample.sigma, sigma0, sigma_inf)
            for key in ('steps', 'rejections', 'rhs_evaluations'):
                row[key] = trajectory.metadata[key]
            row['status'] = 'ok'
        except RetError as e:
            logger.warning('sweep point %s=%r failed: %s', config.get('sweep', 'axis'), value, e)
            row['status'] = 'failed: {}'.format(e).replace(',', ';')
        return row

    def run(self):
        values = self.config.get('sweep', 'values')
        workers = min(self.config.get('sweep', 'workers'), len(values))
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(self.point, values))

        failed = sum(row['status'] != 'ok' for row in rows)
        self.results['points'] = len(rows)
        self.results['failed'] = failed
        self.note_k_convention()
        self.assumptions.append('extinction_time is the free-relaxation time from sigma0 = {}'.format(
            self.config.get('sweep', 'case1_sigma0')))

        path = self.output_path('csv', '.csv')
        write_csv(path, SWEEP_COLUMNS, [[row.get(key) for key in SWEEP_COLUMNS] for row in rows])
        self.add_artifact(path)

        if self.wants_chart():
            axis = self.config.get('sweep', 'axis')
            ok = [row for row in rows if row['status'] == 'ok']
            chart = LineChart('Sweep over {}'.format(axis), axis, 'sigma')
            chart.add('sigma_end', [row['value'] for row in ok], [row['sigma_end'] for row in ok])
            chart.add('sigma_inf', [row['value'] for row in ok], [row['sigma_inf'] for row in ok])
            self.save_chart(chart)
        self.write_sidecar()
        return self.artifacts
