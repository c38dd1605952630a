import logging

import numpy as np

from ret_fluids.analytic import Case1Params, algebraic_tail_constant, case1_solution, extinction_time
from ret_fluids.scenarios.base import Scenario, resolve_k
from ret_fluids.scenarios.plotting import LineChart
from ret_fluids.scenarios.writers import write_csv

logger = logging.getLogger(__name__)


class Case1Scenario(Scenario):
    """Free relaxation at F = 1 for each listed flow index, from the closed form."""

    kind = 'case1'

    def params(self):
        sigma0 = self.config.get('protocol', 'sigma0')
        return [Case1Params(m=m, k=resolve_k(self.config, m), sigma0=sigma0)
                for m in self.config.get('material', 'm')]

    def run(self):
        t_end = self.config.get('protocol', 't_end')
        samples = self.config.get('output', 'samples') if t_end > 0 else 1
        tbar = np.linspace(0.0, t_end, samples)

        header = ['tbar']
        columns = [tbar]
        for p in self.params():
            label = 'sigma(m={})'.format(p.m)
            header.append(label)
            columns.append(np.atleast_1d(case1_solution(p, tbar)))
            self.results['a_m{}'.format(p.m)] = p.a
            if p.is_newtonian:
                self.results['decay_m{}'.format(p.m)] = 'exponential'
            elif p.m > 1:
                self.results['extinction_time_m{}'.format(p.m)] = extinction_time(p)
            else:
                self.results['tail_constant_m{}'.format(p.m)] = algebraic_tail_constant(p)

        self.note_k_convention()
        self.assumptions.append('time is tbar = t / tau0')

        path = self.output_path('csv', '.csv')
        write_csv(path, header, np.column_stack(columns))
        self.add_artifact(path)
        self.write_charts(header, columns)
        self.write_sidecar()
        return self.artifacts

    def write_charts(self, header, columns):
        if not self.wants_chart():
            return
        chart = LineChart('Free relaxation, sigma0 = {}'.format(self.config.get('protocol', 'sigma0')),
                          'tbar', 'sigma')
        for label, values in zip(header[1:], columns[1:]):
            chart.add(label, columns[0], values)
        self.save_chart(chart)
