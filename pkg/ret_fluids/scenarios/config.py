"""Scenario files: `key = value` lines under `[section]` headers.

Parsing is done by configparser; this module adds the schema, typed values,
line-numbered errors and the record of every default it filled in.
"""
import configparser
import logging
import math
import os
import re
from dataclasses import dataclass, field

import numpy as np

from ret_fluids.exceptions import ConfigError

logger = logging.getLogger(__name__)

KINDS = ('case1', 'case2', 'pde', 'sweep')

CONVENTION = 'convention'


def _float(text):
    value = float(text)
    if not math.isfinite(value):
        raise ValueError('not a finite number')
    return value


def _int(text):
    return int(text)


def _bool(text):
    lowered = text.strip().lower()
    if lowered in ('1', 'yes', 'true', 'on'):
        return True
    if lowered in ('0', 'no', 'false', 'off'):
        return False
    raise ValueError('not a boolean')


def _str(text):
    return text.strip()


def _floats(text):
    return [_float(part) for part in text.split(',') if part.strip()]


def _k(text):
    return CONVENTION if text.strip() == CONVENTION else _float(text)


PARSERS = {float: _float, int: _int, bool: _bool, str: _str, list: _floats, 'k': _k}

# section -> key -> (type, default); a default of None means "optional, no value"
SCHEMA = {
    'scenario': {
        'kind': (str, None),
        'name': (str, None),
    },
    'material': {
        'rho_star': (float, 1.0),
        'elastic': (str, 'power_gas'),
        'E': (float, 1.0),
        'p0': (float, 1.0),
        'gamma': (float, 1.0),
        'm': (list, [1.0]),
        'k': ('k', CONVENTION),
        'body_force': (float, 0.0),
    },
    'viscous': {
        'energy': (str, 'quadratic'),
        'tau0': (float, 1.0),
        'beta': (float, 0.0),
    },
    'protocol': {
        'kind': (str, 'constant'),
        'sigma0': (float, 0.0),
        'F0': (float, 1.0),
        'vx0': (float, 0.0),
        't_end': (float, 1.0),
        'breakpoints': (list, None),
        'rates': (list, None),
        'compare_maxwell': (bool, False),
        'tau1': (float, None),
    },
    'grid': {
        'x_min': (float, 0.0),
        'x_max': (float, 1.0),
        'n_cells': (int, 200),
        'bc': (str, 'periodic'),
        'v_left': (float, 0.0),
        'v_right': (float, 0.0),
        'initial': (str, 'slab'),
        'F_inside': (float, 0.1),
        'F_outside': (float, 1.0),
        'lo': (float, 0.45),
        'hi': (float, 0.55),
        'amplitude': (float, 0.01),
        'width': (float, 0.08),
        'center': (float, None),
        'x0': (float, None),
        'left_v': (float, 0.0),
        'left_F': (float, 1.0),
        'left_sigma': (float, 0.0),
        'right_v': (float, 0.0),
        'right_F': (float, 1.0),
        'right_sigma': (float, 0.0),
        'vX': (float, 0.0),
    },
    'solver': {
        'rtol': (float, 1e-8),
        'atol': (float, 1e-10),
        'max_steps': (int, 200000),
        'implicit_phase': (bool, True),
        'stiff_threshold': (float, 1e-6),
        'cfl': (float, 0.4),
        'mode': (str, 'imex'),
        't_end': (float, None),
    },
    'output': {
        'samples': (int, 501),
        'csv': (str, None),
        'svg': (str, None),
        'png': (str, None),
        'energy_csv': (str, None),
        'sidecar': (str, None),
        'every': (int, 1),
    },
    'sweep': {
        'axis': (str, None),
        'values': (list, None),
        'workers': (int, 4),
        'case1_sigma0': (float, 1.0),
    },
}

SECTIONS_BY_KIND = {
    'case1': ('scenario', 'material', 'viscous', 'protocol', 'solver', 'output'),
    'case2': ('scenario', 'material', 'viscous', 'protocol', 'solver', 'output'),
    'pde': ('scenario', 'material', 'viscous', 'grid', 'solver', 'output'),
    'sweep': ('scenario', 'material', 'viscous', 'protocol', 'solver', 'output', 'sweep'),
}

# keys whose defaults are not recorded when absent because they carry no value
OPTIONAL = {(s, k) for s, keys in SCHEMA.items() for k, (_, d) in keys.items() if d is None}

SWEEP_AXES = ('m', 'k', 'tau0', 'vx0')

SECTION_RE = re.compile(r'^\s*\[([^\]]+)\]')
KEY_RE = re.compile(r'^\s*([^#;\s=:][^=:]*?)\s*[=:]')


@dataclass
class ScenarioConfig:
    kind: str
    name: str
    path: str
    values: dict
    defaults: list = field(default_factory=list)
    lines: dict = field(default_factory=dict)
    # keys a custom law class accepts beyond the schema, kept as raw strings
    extras: dict = field(default_factory=dict)

    def get(self, section, key):
        return self.values[section][key]

    def section(self, name):
        return dict(self.values.get(name, {}))

    def line_of(self, section, key=None):
        return self.lines.get((section, key))

    def error(self, message, section=None, key=None):
        return ConfigError(message, path=self.path, line=self.line_of(section, key))


def _index_lines(text):
    lines = {}
    section = None
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped[0] in '#;':
            continue
        match = SECTION_RE.match(line)
        if match:
            section = match.group(1).strip()
            lines.setdefault((section, None), number)
            continue
        match = KEY_RE.match(line)
        if match and section is not None:
            lines.setdefault((section, match.group(1).strip()), number)
    return lines


def _read_parser(text, path):
    parser = configparser.ConfigParser(interpolation=None, delimiters=('=',),
                                       comment_prefixes=('#', ';'), inline_comment_prefixes=None)
    parser.optionxform = str
    try:
        parser.read_string(text, source=path)
    except configparser.MissingSectionHeaderError as e:
        raise ConfigError('key outside of any [section]', path=path, line=e.lineno)
    except (configparser.DuplicateSectionError, configparser.DuplicateOptionError) as e:
        raise ConfigError(e.message.split(': ', 1)[-1], path=path, line=e.lineno)
    except configparser.ParsingError as e:
        line, _ = e.errors[0]
        raise ConfigError('unparseable line', path=path, line=line)
    return parser


LAW_KEYS = {'material': 'elastic', 'viscous': 'energy'}


def _custom_law(parser, section):
    return section in LAW_KEYS and '.' in parser.get(section, LAW_KEYS[section], fallback='')


def parse_config(text, path='<config>'):
    lines = _index_lines(text)
    parser = _read_parser(text, path)

    if not parser.has_section('scenario') or not parser.has_option('scenario', 'kind'):
        raise ConfigError('missing [scenario] kind', path=path, line=lines.get(('scenario', None)))
    kind = parser.get('scenario', 'kind').strip()
    if kind not in KINDS:
        raise ConfigError('scenario kind "{}" is unrecognized. Valid options: {}'.format(kind, ', '.join(KINDS)),
                          path=path, line=lines.get(('scenario', 'kind')))

    allowed = SECTIONS_BY_KIND[kind]
    values = {}
    extras = {}
    for section in parser.sections():
        if section == 'metadata':
            continue
        if section not in allowed:
            raise ConfigError('section [{}] is not used by {} scenarios'.format(section, kind),
                              path=path, line=lines.get((section, None)))
        values[section] = {}
        for key, raw in parser.items(section):
            line = lines.get((section, key))
            if key not in SCHEMA[section]:
                # constructor parameters of custom law classes
                if _custom_law(parser, section):
                    extras.setdefault(section, {})[key] = raw.strip()
                    continue
                raise ConfigError('unknown key "{}" in [{}]'.format(key, section), path=path, line=line)
            kind_of, _ = SCHEMA[section][key]
            try:
                values[section][key] = PARSERS[kind_of](raw)
            except ValueError as e:
                raise ConfigError('bad value "{}" for {}: {}'.format(raw.strip(), key, e), path=path, line=line)

    defaults = []
    for section in allowed:
        values.setdefault(section, {})
        for key, (_, default) in SCHEMA[section].items():
            if key in values[section]:
                continue
            values[section][key] = default
            if (section, key) not in OPTIONAL:
                defaults.append('{}.{}'.format(section, key))

    if values['scenario']['name'] is None:
        values['scenario']['name'] = os.path.splitext(os.path.basename(path))[0]
        defaults.append('scenario.name')
    name = values['scenario']['name']
    config = ScenarioConfig(kind=kind, name=name, path=path, values=values,
                            defaults=defaults, lines=lines, extras=extras)
    validate(config)
    logger.debug('loaded %s scenario %r with %d defaults', kind, name, len(defaults))
    return config


def load_config(path):
    try:
        with open(path) as f:
            text = f.read()
    except OSError as e:
        raise ConfigError('cannot read config: {}'.format(e.strerror), path=path)
    return parse_config(text, path=path)


def _require(config, condition, message, section, key):
    if not condition:
        raise config.error(message, section, key)


def validate(config):
    v = config.values
    material = v['material']
    _require(config, material['rho_star'] > 0, 'rho_star must be positive', 'material', 'rho_star')
    _require(config, len(material['m']) > 0 and all(m > 0 for m in material['m']),
             'flow index m must be positive', 'material', 'm')
    _require(config, material['k'] == CONVENTION or material['k'] > 0,
             'k must be positive or "convention"', 'material', 'k')
    _require(config, v['viscous']['tau0'] > 0, 'tau0 must be positive', 'viscous', 'tau0')
    if config.kind != 'case1':
        _require(config, len(material['m']) == 1, 'only case1 scenarios take several m values', 'material', 'm')

    solver = v['solver']
    _require(config, solver['rtol'] > 0 and solver['atol'] > 0, 'tolerances must be positive', 'solver', 'rtol')
    _require(config, 0 < solver['cfl'] <= 1, 'cfl must lie in (0, 1]', 'solver', 'cfl')
    _require(config, solver['mode'] in ('explicit', 'imex'), 'mode must be explicit or imex', 'solver', 'mode')
    _require(config, v['output']['samples'] >= 1, 'samples must be at least 1', 'output', 'samples')

    if 'protocol' in v:
        protocol = v['protocol']
        _require(config, protocol['t_end'] >= 0, 't_end must be nonnegative', 'protocol', 't_end')
        _require(config, protocol['F0'] > 0, 'F0 must be positive', 'protocol', 'F0')
        _require(config, protocol['kind'] in ('zero', 'constant', 'piecewise'),
                 'protocol kind must be zero, constant or piecewise', 'protocol', 'kind')
        if protocol['kind'] == 'piecewise':
            _require(config, protocol['breakpoints'] is not None and protocol['rates'] is not None,
                     'piecewise protocol needs breakpoints and rates', 'protocol', 'kind')
        if protocol['tau1'] is not None:
            _require(config, protocol['tau1'] > 0, 'tau1 must be positive', 'protocol', 'tau1')

    if 'grid' in v:
        grid = v['grid']
        _require(config, grid['x_max'] > grid['x_min'], 'x_max must exceed x_min', 'grid', 'x_max')
        _require(config, grid['n_cells'] >= 2, 'n_cells must be at least 2', 'grid', 'n_cells')
        _require(config, grid['bc'] in ('periodic', 'transmissive', 'piston'),
                 'bc must be periodic, transmissive or piston', 'grid', 'bc')
        _require(config, grid['initial'] in ('slab', 'riemann', 'pulse', 'uniform_shear'),
                 'initial must be slab, riemann, pulse or uniform_shear', 'grid', 'initial')
        _require(config, solver['t_end'] is not None and solver['t_end'] >= 0,
                 'pde scenarios need a nonnegative [solver] t_end', 'solver', 't_end')

    if config.kind == 'sweep':
        sweep = v['sweep']
        _require(config, sweep['axis'] in SWEEP_AXES,
                 'sweep axis must be one of {}'.format(', '.join(SWEEP_AXES)), 'sweep', 'axis')
        _require(config, sweep['values'], 'sweep needs explicit values', 'sweep', 'values')
        _require(config, sweep['workers'] >= 1, 'workers must be at least 1', 'sweep', 'workers')


def format_value(value):
    if value is None:
        return 'n/a'
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, list):
        return ', '.join(format_value(float(x)) for x in value)
    return str(value)


def render_config(config, metadata=None):
    """Resolved config in its own grammar; feeding it back reproduces the run."""
    out = []
    for section in SECTIONS_BY_KIND[config.kind]:
        out.append('[{}]'.format(section))
        items = config.values[section]
        for key in SCHEMA[section]:
            if items.get(key) is None:
                continue
            out.append('{} = {}'.format(key, format_value(items[key])))
        for key, raw in sorted(config.extras.get(section, {}).items()):
            out.append('{} = {}'.format(key, raw))
        out.append('')

    if metadata:
        out.append('[metadata]')
        for key, value in metadata.items():
            out.append('{} = {}'.format(key, format_value(value)))
        out.append('')
    return '\n'.join(out)
