import logging
import os

from ret_fluids import k_convention
from ret_fluids.constitutive import Material, PowerLawFluid, get_law_class
from ret_fluids.exceptions import DomainError
from ret_fluids.ode import OdeOptions, ShearProtocol
from ret_fluids.scenarios.config import CONVENTION, render_config
from ret_fluids.scenarios.writers import write_text

logger = logging.getLogger(__name__)

ELASTIC_PARAMS = {'linear': ('E',), 'power_gas': ('p0', 'gamma')}
VISCOUS_PARAMS = {'quadratic': ('tau0',), 'quartic': ('tau0', 'beta')}


def _typed(raw):
    try:
        return float(raw)
    except ValueError:
        return raw


def resolve_k(config, m):
    k = config.get('material', 'k')
    return k_convention(m) if k == CONVENTION else k


def build_material(config, m=None, k=None, tau0=None):
    """Material from the [material] and [viscous] sections, with optional overrides.

    A law named by class path receives the schema keys of its short name, if it
    has one, plus every extra key of its section.
    """
    material = config.section('material')
    viscous = dict(config.section('viscous'))
    m = material['m'][0] if m is None else m
    k = resolve_k(config, m) if k is None else k
    viscous['tau0'] = viscous['tau0'] if tau0 is None else tau0

    try:
        elastic_class = get_law_class('elastic', material['elastic'])
        elastic_params = {key: material[key] for key in ELASTIC_PARAMS.get(elastic_class.short_name, ())}
        elastic_params.update({key: _typed(raw) for key, raw in config.extras.get('material', {}).items()})

        viscous_class = get_law_class('viscous', viscous['energy'])
        keys = VISCOUS_PARAMS.get(viscous_class.short_name, ('tau0',))
        viscous_params = {key: viscous[key] for key in keys}
        viscous_params.update({key: _typed(raw) for key, raw in config.extras.get('viscous', {}).items()})

        return Material(rho_star=material['rho_star'],
                        elastic=elastic_class(**elastic_params),
                        viscous=viscous_class(**viscous_params),
                        fluid=PowerLawFluid(k=k, m=m),
                        body_force=material['body_force'])
    except (TypeError, DomainError) as e:
        raise config.error('bad material: {}'.format(e), 'material', 'elastic')


def build_protocol(config, vx0=None):
    protocol = config.section('protocol')
    kind = protocol['kind']
    if kind == 'zero':
        params = {}
    elif kind == 'piecewise':
        params = dict(breakpoints=protocol['breakpoints'], rates=protocol['rates'])
    else:
        params = dict(vx0=protocol['vx0'] if vx0 is None else vx0)
    try:
        return ShearProtocol.create(kind, params)
    except DomainError as e:
        raise config.error('bad protocol: {}'.format(e), 'protocol', 'kind')


def ode_options(config, t_end=None):
    solver = config.section('solver')
    return OdeOptions(t_end=config.get('protocol', 't_end') if t_end is None else t_end,
                      rtol=solver['rtol'], atol=solver['atol'], max_steps=solver['max_steps'],
                      implicit_phase=solver['implicit_phase'], stiff_threshold=solver['stiff_threshold'])


class Scenario:
    """One runnable scenario; subclasses produce tables, plots and metadata."""

    kind = None

    def __init__(self, config, out_dir='.'):
        self.config = config
        self.out_dir = out_dir
        self.assumptions = []
        self.results = {}
        self.artifacts = []

    def run(self):
        raise NotImplementedError

    def output_path(self, key, suffix):
        name = self.config.get('output', key)
        if name is None:
            name = '{}{}'.format(self.config.name, suffix)
        return os.path.join(self.out_dir, name)

    def requested(self, key):
        return self.config.get('output', key) is not None

    def add_artifact(self, path):
        self.artifacts.append(path)
        logger.debug('wrote %s', path)

    def save_chart(self, chart):
        if self.requested('svg'):
            path = self.output_path('svg', '.svg')
            chart.save_svg(path)
            self.add_artifact(path)
        if self.requested('png'):
            path = self.output_path('png', '.png')
            chart.save_png(path)
            self.add_artifact(path)

    def wants_chart(self):
        return self.requested('svg') or self.requested('png')

    def metadata(self):
        d = dict(kind=self.config.kind, defaults=', '.join(self.config.defaults) or 'none')
        for i, assumption in enumerate(self.assumptions, start=1):
            d['assumption_{}'.format(i)] = assumption
        d.update(self.results)
        return d

    def write_sidecar(self):
        path = self.output_path('sidecar', '.meta.cfg')
        write_text(path, render_config(self.config, self.metadata()))
        self.add_artifact(path)

    def note_k_convention(self):
        if self.config.get('material', 'k') == CONVENTION:
            self.assumptions.append('k = 10 exp(-2 m) for every flow index')

    @staticmethod
    def create(config, out_dir='.'):
        from ret_fluids.scenarios.case1 import Case1Scenario
        from ret_fluids.scenarios.case2 import Case2Scenario
        from ret_fluids.scenarios.pde_run import PdeScenario
        from ret_fluids.scenarios.sweep import SweepScenario

        scenarios = {cls.kind: cls for cls in (Case1Scenario, Case2Scenario, PdeScenario, SweepScenario)}
        return scenarios[config.kind](config, out_dir)
