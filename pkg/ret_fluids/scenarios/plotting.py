"""Multi-line charts written as SVG by hand, or rasterized with Pillow."""
import numpy as np
from PIL import Image, ImageDraw, ImageFont

from ret_fluids.scenarios.writers import write_text

WIDTH = 640
HEIGHT = 420
MARGIN_LEFT = 70
MARGIN_RIGHT = 20
MARGIN_TOP = 40
MARGIN_BOTTOM = 50
TICKS = 5

COLORS = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b']


def _escape(text):
    return text.replace('&', '&amp;').replace('<', '&lt;').replace('>', '&gt;')


class LineChart:
    def __init__(self, title, xlabel, ylabel):
        self.title = title
        self.xlabel = xlabel
        self.ylabel = ylabel
        self.series = []

    def add(self, label, xs, ys):
        self.series.append((label, np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)))

    def bounds(self):
        xs = np.concatenate([s[1] for s in self.series]) if self.series else np.array([0.0, 1.0])
        ys = np.concatenate([s[2] for s in self.series]) if self.series else np.array([0.0, 1.0])
        xs, ys = xs[np.isfinite(xs)], ys[np.isfinite(ys)]
        x_lo, x_hi = (float(xs.min()), float(xs.max())) if xs.size else (0.0, 1.0)
        y_lo, y_hi = (float(ys.min()), float(ys.max())) if ys.size else (0.0, 1.0)
        if x_hi == x_lo:
            x_hi = x_lo + 1.0
        if y_hi == y_lo:
            y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
        pad = 0.05 * (y_hi - y_lo)
        return x_lo, x_hi, y_lo - pad, y_hi + pad

    def _mapper(self):
        x_lo, x_hi, y_lo, y_hi = self.bounds()
        plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
        plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

        def to_px(x, y):
            px = MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w
            py = MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h
            return px, py

        return to_px

    def _ticks(self):
        x_lo, x_hi, y_lo, y_hi = self.bounds()
        return np.linspace(x_lo, x_hi, TICKS), np.linspace(y_lo, y_hi, TICKS)

    def to_svg(self):
        to_px = self._mapper()
        x_ticks, y_ticks = self._ticks()
        x0, y0 = MARGIN_LEFT, HEIGHT - MARGIN_BOTTOM
        x1, y1 = WIDTH - MARGIN_RIGHT, MARGIN_TOP

        out = ['<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">'.format(
            WIDTH, HEIGHT, WIDTH, HEIGHT)]
        out.append('<rect x="0" y="0" width="{}" height="{}" fill="white"/>'.format(WIDTH, HEIGHT))
        out.append('<text x="{:.1f}" y="24" text-anchor="middle" font-size="15">{}</text>'.format(
            WIDTH / 2, _escape(self.title)))
        out.append('<polyline points="{},{} {},{} {},{}" fill="none" stroke="black"/>'.format(
            x0, y1, x0, y0, x1, y0))

        for tx in x_ticks:
            px, _ = to_px(tx, y_ticks[0])
            out.append('<line x1="{0:.2f}" y1="{1}" x2="{0:.2f}" y2="{2}" stroke="black"/>'.format(px, y0, y0 + 5))
            out.append('<text x="{:.2f}" y="{}" text-anchor="middle" font-size="11">{:.3g}</text>'.format(
                px, y0 + 18, tx))
        for ty in y_ticks:
            _, py = to_px(x_ticks[0], ty)
            out.append('<line x1="{0}" y1="{1:.2f}" x2="{2}" y2="{1:.2f}" stroke="black"/>'.format(x0 - 5, py, x0))
            out.append('<text x="{}" y="{:.2f}" text-anchor="end" font-size="11">{:.3g}</text>'.format(
                x0 - 8, py + 4, ty))

        out.append('<text x="{:.1f}" y="{}" text-anchor="middle" font-size="13">{}</text>'.format(
            (x0 + x1) / 2, HEIGHT - 10, _escape(self.xlabel)))
        out.append('<text x="16" y="{0:.1f}" text-anchor="middle" font-size="13" '
                   'transform="rotate(-90 16 {0:.1f})">{1}</text>'.format((y0 + y1) / 2, _escape(self.ylabel)))

        for i, (label, xs, ys) in enumerate(self.series):
            color = COLORS[i % len(COLORS)]
            keep = np.isfinite(xs) & np.isfinite(ys)
            points = ' '.join('{:.2f},{:.2f}'.format(*to_px(x, y)) for x, y in zip(xs[keep], ys[keep]))
            out.append('<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"/>'.format(points, color))
            ly = y1 + 16 * (i + 1)
            out.append('<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="2"/>'.format(
                x1 - 150, ly, x1 - 125, ly, color))
            out.append('<text x="{}" y="{}" font-size="11">{}</text>'.format(x1 - 120, ly + 4, _escape(label)))

        out.append('</svg>')
        return '\n'.join(out) + '\n'

    def save_svg(self, path):
        write_text(path, self.to_svg())

    def to_image(self):
        to_px = self._mapper()
        x_ticks, y_ticks = self._ticks()
        x0, y0 = MARGIN_LEFT, HEIGHT - MARGIN_BOTTOM
        x1, y1 = WIDTH - MARGIN_RIGHT, MARGIN_TOP

        image = Image.new('RGB', size=(WIDTH, HEIGHT), color='white')
        d = ImageDraw.Draw(image)
        font = ImageFont.load_default()

        d.line([(x0, y1), (x0, y0), (x1, y0)], fill='black')
        d.text((WIDTH / 2 - 3 * len(self.title), 10), self.title, fill='black', font=font)
        for tx in x_ticks:
            px, _ = to_px(tx, y_ticks[0])
            d.line([(px, y0), (px, y0 + 5)], fill='black')
            d.text((px - 10, y0 + 8), '{:.3g}'.format(tx), fill='black', font=font)
        for ty in y_ticks:
            _, py = to_px(x_ticks[0], ty)
            d.line([(x0 - 5, py), (x0, py)], fill='black')
            d.text((4, py - 6), '{:.3g}'.format(ty), fill='black', font=font)
        d.text(((x0 + x1) / 2 - 3 * len(self.xlabel), HEIGHT - 18), self.xlabel, fill='black', font=font)

        for i, (label, xs, ys) in enumerate(self.series):
            color = COLORS[i % len(COLORS)]
            keep = np.isfinite(xs) & np.isfinite(ys)
            points = [to_px(x, y) for x, y in zip(xs[keep], ys[keep])]
            if len(points) > 1:
                d.line(points, fill=color, width=2)
            ly = y1 + 16 * (i + 1)
            d.line([(x1 - 150, ly), (x1 - 125, ly)], fill=color, width=2)
            d.text((x1 - 120, ly - 6), label, fill='black', font=font)
        return image

    def save_png(self, path):
        self.to_image().save(path, format='PNG')
