"""Table and text output.

Floats are written with repr, the shortest string that reads back to the
same double, so repeated runs give byte-identical files.
"""
import math
import os

import numpy as np

from ret_fluids.diagnostics import ENERGY_COLUMNS

MISSING = 'n/a'


def format_cell(value):
    if value is None:
        return MISSING
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return repr(value) if math.isfinite(value) else MISSING
    return str(value)


def write_text(path, text):
    folder = os.path.dirname(path)
    if folder and not os.path.isdir(folder):
        os.makedirs(folder)
    with open(path, 'w', newline='\n') as f:
        f.write(text)


def render_csv(header, rows):
    lines = [','.join(header)]
    for row in rows:
        lines.append(','.join(format_cell(value) for value in row))
    return '\n'.join(lines) + '\n'


def write_csv(path, header, rows):
    write_text(path, render_csv(header, rows))


def columns_to_rows(columns):
    return list(zip(*columns))


def write_snapshot(path, snapshot):
    header = ['X_center', 'v', 'F', 'sigma', 'Z', 'p', 'energy_density']
    write_csv(path, header, columns_to_rows([snapshot[name] for name in header]))


def write_energy(path, reports):
    write_csv(path, ENERGY_COLUMNS, [report.row() for report in reports])
