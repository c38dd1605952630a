import csv
import os

import pytest

from ret_fluids.cli import EXIT_CONFIG, EXIT_OK, EXIT_SOLVER, main
from ret_fluids.exceptions import ConfigError
from ret_fluids.scenarios import load_config, run_scenario, run_sweep

from conftest import SHEAR_SIGMA_INF

CASE1 = """\
[scenario]
kind = case1
name = relax

[material]
m = 0.7, 1.0, 2.0

[protocol]
sigma0 = 1.0
t_end = 5.0

[output]
samples = 51
svg = relax.svg
"""

CASE2 = """\
[scenario]
kind = case2
name = shear

[material]
m = 0.7

[viscous]
tau0 = 0.1

[protocol]
vx0 = 0.1
t_end = 3.0
compare_maxwell = true

[output]
samples = 61
energy_csv = shear.energy.csv
"""

PDE = """\
[scenario]
kind = pde
name = slab

[material]
m = 1.0
k = 1.0

[grid]
n_cells = 40

[solver]
t_end = 0.01
"""

SWEEP = """\
[scenario]
kind = sweep
name = sweep

[viscous]
tau0 = 0.1

[protocol]
vx0 = 0.1
t_end = 3.0

[sweep]
axis = m
values = 0.7, 1.0, 2.0
workers = 2
"""


def read_rows(path):
    with open(path, newline='') as f:
        return list(csv.reader(f))


def read_bytes(path):
    with open(path, 'rb') as f:
        return f.read()


def test_case1_run_writes_table_chart_and_sidecar(write_config, tmp_path, capsys):
    out = str(tmp_path / 'out')
    assert main(['run', write_config('relax.cfg', CASE1), '--out-dir', out]) == EXIT_OK
    assert 'wrote' in capsys.readouterr().out

    rows = read_rows(os.path.join(out, 'relax.csv'))
    assert rows[0] == ['tbar', 'sigma(m=0.7)', 'sigma(m=1.0)', 'sigma(m=2.0)']
    assert len(rows) == 52
    assert rows[1][1:] == ['1.0', '1.0', '1.0']
    assert float(rows[-1][3]) == 0.0
    assert read_bytes(os.path.join(out, 'relax.svg')).startswith(b'<svg')

    sidecar = load_config(os.path.join(out, 'relax.meta.cfg'))
    assert sidecar.get('material', 'm') == [0.7, 1.0, 2.0]


def test_case1_zero_horizon_writes_initial_row(write_config, tmp_path):
    path = write_config('relax.cfg', CASE1.replace('t_end = 5.0', 't_end = 0.0'))
    run_scenario(path, str(tmp_path))
    rows = read_rows(str(tmp_path / 'relax.csv'))
    assert len(rows) == 2
    assert rows[1] == ['0.0', '1.0', '1.0', '1.0']


def test_case2_run_reaches_steady_stress(write_config, tmp_path):
    artifacts = run_scenario(write_config('shear.cfg', CASE2), str(tmp_path))
    assert sorted(os.path.basename(p) for p in artifacts) == ['shear.csv', 'shear.energy.csv', 'shear.meta.cfg']

    rows = read_rows(str(tmp_path / 'shear.csv'))
    assert rows[0] == ['t', 'sigma', 'F', 'sigma_maxwell']
    assert len(rows) == 62
    assert float(rows[1][1]) == 0.0
    assert float(rows[-1][1]) == pytest.approx(SHEAR_SIGMA_INF, abs=1e-3)

    metadata = read_bytes(str(tmp_path / 'shear.meta.cfg')).decode()
    assert 'status = ok' in metadata
    assert 'ratio_test = ' in metadata
    assert 'assumption_1 = Maxwell time tau1 taken equal to tau0' in metadata


def test_repeated_runs_are_byte_identical(write_config, tmp_path):
    path = write_config('shear.cfg', CASE2)
    first, second = str(tmp_path / 'a'), str(tmp_path / 'b')
    run_scenario(path, first)
    run_scenario(path, second)
    for name in ('shear.csv', 'shear.energy.csv', 'shear.meta.cfg'):
        assert read_bytes(os.path.join(first, name)) == read_bytes(os.path.join(second, name))


def test_sidecar_reproduces_the_run(write_config, tmp_path):
    first, second = str(tmp_path / 'a'), str(tmp_path / 'b')
    run_scenario(write_config('shear.cfg', CASE2), first)
    run_scenario(os.path.join(first, 'shear.meta.cfg'), second)
    assert read_bytes(os.path.join(first, 'shear.csv')) == read_bytes(os.path.join(second, 'shear.csv'))


def test_pde_run_writes_snapshot_and_energy(write_config, tmp_path):
    run_scenario(write_config('slab.cfg', PDE), str(tmp_path))
    rows = read_rows(str(tmp_path / 'slab.csv'))
    assert rows[0] == ['X_center', 'v', 'F', 'sigma', 'Z', 'p', 'energy_density']
    assert len(rows) == 41
    energy = read_rows(str(tmp_path / 'slab.energy.csv'))
    assert float(energy[1][0]) == 0.0
    assert 'status = ok' in read_bytes(str(tmp_path / 'slab.meta.cfg')).decode()


def test_bad_config_exits_with_config_code(write_config, tmp_path, capsys):
    path = write_config('shear.cfg', CASE2.replace('tau0 = 0.1', 'tau0 = -0.1'))
    assert main(['run', path, '--out-dir', str(tmp_path), '--quiet']) == EXIT_CONFIG
    assert 'config error' in capsys.readouterr().err
    assert not os.path.exists(str(tmp_path / 'shear.csv'))


def test_missing_config_file_is_a_config_error(tmp_path):
    assert main(['run', str(tmp_path / 'nowhere.cfg'), '--quiet']) == EXIT_CONFIG


def test_solver_failure_keeps_partial_results(write_config, tmp_path, capsys):
    path = write_config('shear.cfg', CASE2 + '\n[solver]\nmax_steps = 5\n')
    assert main(['run', path, '--out-dir', str(tmp_path), '--quiet']) == EXIT_SOLVER
    assert 'solver failure' in capsys.readouterr().err

    rows = read_rows(str(tmp_path / 'shear.csv'))
    assert rows[0] == ['t', 'sigma', 'F']
    assert 2 <= len(rows) <= 7
    assert 'status = failed at t=' in read_bytes(str(tmp_path / 'shear.meta.cfg')).decode()


def test_sweep_rows_follow_listed_values(write_config, tmp_path):
    path = write_config('sweep.cfg', SWEEP)
    assert main(['sweep', path, '--out-dir', str(tmp_path), '--quiet']) == EXIT_OK

    header, *rows = read_rows(str(tmp_path / 'sweep.csv'))
    assert header == ['value', 'sigma_inf', 'sigma_end', 't99', 'extinction_time',
                      'steps', 'rejections', 'rhs_evaluations', 'status']
    assert [row[0] for row in rows] == ['0.7', '1.0', '2.0']
    assert all(row[-1] == 'ok' for row in rows)
    assert float(rows[0][1]) == pytest.approx(SHEAR_SIGMA_INF, abs=1e-4)
    assert rows[0][4] == 'n/a' and rows[1][4] == 'n/a'
    assert float(rows[2][4]) == pytest.approx(1.21048, abs=1e-5)


def test_sweep_command_rejects_other_kinds(write_config):
    with pytest.raises(ConfigError):
        run_sweep(write_config('shear.cfg', CASE2))


def test_unknown_command_exits_through_argparse():
    with pytest.raises(SystemExit):
        main(['plot', 'x.cfg'])


def bundled(name):
    return os.path.join(os.path.dirname(__file__), '..', 'configs', name)


@pytest.mark.parametrize('name', ['free_relaxation.cfg', 'shear_relaxation.cfg', 'riemann.cfg',
                                  'sweep_m.cfg', 'sweep_vx0.cfg'])
def test_bundled_scenarios_are_deterministic(name, tmp_path):
    first, second = str(tmp_path / 'a'), str(tmp_path / 'b')
    artifacts = run_scenario(bundled(name), first)
    run_scenario(bundled(name), second)
    assert artifacts
    for path in artifacts:
        other = os.path.join(second, os.path.basename(path))
        assert read_bytes(path) == read_bytes(other), os.path.basename(path)


def test_sweep_table_does_not_depend_on_worker_count(write_config, tmp_path):
    serial, pooled = str(tmp_path / 'serial'), str(tmp_path / 'pooled')
    run_sweep(write_config('one.cfg', SWEEP.replace('workers = 2', 'workers = 1')), serial)
    run_sweep(write_config('three.cfg', SWEEP.replace('workers = 2', 'workers = 3')), pooled)
    assert read_bytes(os.path.join(serial, 'sweep.csv')) == read_bytes(os.path.join(pooled, 'sweep.csv'))


def test_sidecar_metadata_values_are_plain_numbers(tmp_path):
    run_scenario(bundled('shear_relaxation.cfg'), str(tmp_path))
    lines = read_bytes(str(tmp_path / 'shear_relaxation.meta.cfg')).decode().splitlines()
    values = dict(line.split(' = ', 1) for line in lines if ' = ' in line)
    assert float(values['sigma_inf']) == pytest.approx(SHEAR_SIGMA_INF, abs=1e-4)
    assert int(values['steps']) > 0


def test_bundled_slab_stays_inside_the_wave_cone(tmp_path):
    run_scenario(bundled('riemann.cfg'), str(tmp_path))
    metadata = read_bytes(str(tmp_path / 'riemann.meta.cfg')).decode()
    assert 'cone_violations = 0\n' in metadata


def test_bundled_free_relaxation_orders_the_three_curves(tmp_path):
    run_scenario(bundled('free_relaxation.cfg'), str(tmp_path))
    header, *rows = read_rows(str(tmp_path / 'free_relaxation.csv'))
    assert header == ['tbar', 'sigma(m=0.7)', 'sigma(m=1.0)', 'sigma(m=2.0)']
    assert float(rows[-1][0]) == 5.0
    middle = [float(x) for x in rows[100]]
    assert middle[0] == pytest.approx(1.0)
    assert middle[1] > middle[2] > middle[3] > 0.0
    assert float(rows[-1][3]) == 0.0


def test_bundled_shear_relaxation_curves_share_the_asymptote(tmp_path):
    run_scenario(bundled('shear_relaxation.cfg'), str(tmp_path))
    header, *rows = read_rows(str(tmp_path / 'shear_relaxation.csv'))
    assert header == ['t', 'sigma', 'F', 'sigma_maxwell']
    assert float(rows[-1][1]) == pytest.approx(SHEAR_SIGMA_INF, abs=1e-3)
    assert float(rows[-1][3]) == pytest.approx(SHEAR_SIGMA_INF, abs=1e-3)


def test_package_metadata_names_no_remote_repository():
    root = os.path.join(os.path.dirname(__file__), '..')
    about = {}
    with open(os.path.join(root, 'ret_fluids', '__version__.py')) as f:
        exec(f.read(), about)
    assert about['__name__'] == 'ret_fluids'
    assert '__url__' not in about
    with open(os.path.join(root, 'README.md')) as f:
        assert 'git clone' not in f.read()
