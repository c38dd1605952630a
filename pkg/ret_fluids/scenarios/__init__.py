from .config import ScenarioConfig, parse_config, load_config, render_config, validate
from .base import Scenario, build_material, build_protocol, ode_options
from .case1 import Case1Scenario
from .case2 import Case2Scenario
from .pde_run import PdeScenario
from .sweep import SweepScenario


def run_scenario(path, out_dir='.'):
    """Run the scenario in a config file; returns the paths written."""
    config = load_config(path)
    return Scenario.create(config, out_dir).run()


def run_sweep(path, out_dir='.'):
    config = load_config(path)
    if config.kind != 'sweep':
        raise config.error('expected a sweep scenario, got {}'.format(config.kind), 'scenario', 'kind')
    return Scenario.create(config, out_dir).run()
