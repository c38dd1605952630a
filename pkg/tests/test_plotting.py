import numpy as np
from PIL import Image

from ret_fluids.scenarios.plotting import HEIGHT, WIDTH, LineChart
from ret_fluids.scenarios.writers import render_csv


def chart():
    c = LineChart('sigma < 1 & rising', 't', 'sigma')
    c.add('m = 0.7', [0.0, 1.0, 2.0], [0.0, 0.3, 0.4])
    c.add('Maxwell', [0.0, 1.0, 2.0], [0.0, np.nan, 0.4])
    return c


def test_bounds_skip_missing_values_and_pad():
    x_lo, x_hi, y_lo, y_hi = chart().bounds()
    assert (x_lo, x_hi) == (0.0, 2.0)
    assert y_lo < 0.0 and y_hi > 0.4


def test_flat_series_gets_a_nonzero_range():
    c = LineChart('flat', 'x', 'y')
    c.add('one', [1.0, 1.0], [2.0, 2.0])
    x_lo, x_hi, y_lo, y_hi = c.bounds()
    assert x_hi > x_lo and y_hi > y_lo


def test_svg_escapes_text_and_draws_each_series():
    svg = chart().to_svg()
    assert svg.startswith('<svg') and svg.rstrip().endswith('</svg>')
    assert 'sigma &lt; 1 &amp; rising' in svg
    assert svg.count('stroke-width="1.5"') == 2
    assert 'nan' not in svg


def test_png_has_chart_size(tmp_path):
    path = str(tmp_path / 'chart.png')
    chart().save_png(path)
    with Image.open(path) as image:
        assert image.size == (WIDTH, HEIGHT)
        assert image.getpixel((0, 0)) == (255, 255, 255)


def test_csv_cells():
    text = render_csv(['a', 'b', 'c', 'd'], [[0.1, None, float('inf'), 3], [True, np.float64(2.5), 'x', 0]])
    assert text == 'a,b,c,d\n0.1,n/a,n/a,3\ntrue,2.5,x,0\n'
