import logging

import numpy as np

from ret_fluids.analytic import maxwell_comparator
from ret_fluids.diagnostics import homogeneous_energy, homogeneous_power, settling_time, with_residuals
from ret_fluids.exceptions import StepFailure
from ret_fluids.ode import simulate_homogeneous, superexp_ratio_test
from ret_fluids.scenarios.base import Scenario, build_material, build_protocol, ode_options
from ret_fluids.scenarios.plotting import LineChart
from ret_fluids.scenarios.writers import columns_to_rows, write_csv, write_energy

logger = logging.getLogger(__name__)


def ratio_verdict(ratios):
    if len(ratios) < 2:
        return 'n/a'
    return 'decreasing' if np.all(np.diff(ratios) < 0) else 'not decreasing'


class Case2Scenario(Scenario):
    """Homogeneous relaxation under a prescribed velocity gradient."""

    kind = 'case2'

    def run(self):
        config = self.config
        material = build_material(config)
        protocol = build_protocol(config)
        opts = ode_options(config)
        sigma0 = config.get('protocol', 'sigma0')
        F0 = config.get('protocol', 'F0')

        try:
            trajectory = simulate_homogeneous(material, protocol, sigma0=sigma0, F0=F0, opts=opts)
        except StepFailure as e:
            if e.partial is not None and len(e.partial):
                self.results['status'] = 'failed at t={!r}: {}'.format(e.t, e)
                self.write_table(e.partial, None)
                self.write_sidecar()
            raise

        sigma_inf = material.fluid.stress_from_rate(protocol.rate(opts.t_end))
        sample = trajectory.uniform(config.get('output', 'samples')) if opts.t_end > 0 else trajectory

        maxwell = None
        if config.get('protocol', 'compare_maxwell'):
            tau1 = config.get('protocol', 'tau1')
            if tau1 is None:
                tau1 = material.viscous.tau0
                self.assumptions.append('Maxwell time tau1 taken equal to tau0')
            self.results['tau1'] = tau1
            maxwell = sigma0 + maxwell_comparator(sample.times, sigma_inf - sigma0, tau1)

        self.results['sigma_inf'] = sigma_inf
        self.results['sigma_end'] = float(trajectory.sigma[-1])
        self.results['t99'] = settling_time(sample.times, sample.sigma, sigma0, sigma_inf)
        if config.get('protocol', 'kind') != 'piecewise':
            ratios = superexp_ratio_test(trajectory, sigma_inf)
            self.results['ratio_test'] = ratio_verdict(ratios)
        for key in ('steps', 'rejections', 'rhs_evaluations', 'implicit_steps'):
            self.results[key] = trajectory.metadata[key]
        self.results['status'] = 'ok'
        self.note_k_convention()

        self.write_table(sample, maxwell)
        if self.requested('energy_csv'):
            history = homogeneous_energy(material, sample)
            power = homogeneous_power(material, sample, protocol)
            path = self.output_path('energy_csv', '.energy.csv')
            write_energy(path, with_residuals(history, power))
            self.add_artifact(path)
        self.write_charts(sample, maxwell, sigma_inf)
        self.write_sidecar()
        return self.artifacts

    def write_table(self, trajectory, maxwell):
        header = ['t', 'sigma', 'F']
        columns = [trajectory.times, trajectory.sigma, trajectory.F]
        if maxwell is not None:
            header.append('sigma_maxwell')
            columns.append(np.broadcast_to(maxwell, np.shape(trajectory.times)))
        path = self.output_path('csv', '.csv')
        write_csv(path, header, columns_to_rows(columns))
        self.add_artifact(path)

    def write_charts(self, sample, maxwell, sigma_inf):
        if not self.wants_chart():
            return
        chart = LineChart('Relaxation under shear, sigma_inf = {:.4g}'.format(sigma_inf), 't', 'sigma')
        chart.add('m = {}'.format(self.config.get('material', 'm')[0]), sample.times, sample.sigma)
        if maxwell is not None:
            chart.add('Maxwell', sample.times, maxwell)
        self.save_chart(chart)
