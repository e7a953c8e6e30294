"""Minimal, dependency-free SVG emitters: heatmaps and line plots.

Output is deterministic: coordinates are written with a fixed number of
decimals and the palette is a fixed table.
"""

from xml.sax.saxutils import escape

import numpy as np

# viridis-like anchors, interpolated linearly
_PALETTE = np.array([
    [68, 1, 84], [59, 82, 139], [33, 145, 140], [94, 201, 98], [253, 231, 37],
], dtype=float)
_LINE_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"]


def color(v):
    """Map ``v`` in [0, 1] to a hex color."""
    v = min(max(float(v), 0.0), 1.0) * (len(_PALETTE) - 1)
    i = min(int(v), len(_PALETTE) - 2)
    rgb = _PALETTE[i] + (v - i) * (_PALETTE[i + 1] - _PALETTE[i])
    return "#%02x%02x%02x" % tuple(int(round(c)) for c in rgb)


def _n(v):
    return f"{v:.2f}"


class Figure:
    """Accumulates panels into one SVG document."""

    def __init__(self, width, height, metadata=""):
        self.width = width
        self.height = height
        self.metadata = metadata
        self.parts = []

    def text(self, x, y, s, size=12, anchor="middle", rotate=None):
        rot = f' transform="rotate({rotate} {_n(x)} {_n(y)})"' if rotate is not None else ""
        self.parts.append(
            f'<text x="{_n(x)}" y="{_n(y)}" font-size="{size}" text-anchor="{anchor}"{rot}>{escape(s)}</text>'
        )

    def _frame(self, x0, y0, w, h, xlim, ylim, xlabel, ylabel, title):
        self.parts.append(f'<rect x="{_n(x0)}" y="{_n(y0)}" width="{_n(w)}" height="{_n(h)}" fill="none" stroke="black"/>')
        for k in range(5):
            fx = k / 4
            self.text(x0 + fx * w, y0 + h + 14, f"{xlim[0] + fx * (xlim[1] - xlim[0]):.3g}", size=10)
            self.text(x0 - 4, y0 + h - fx * h + 3, f"{ylim[0] + fx * (ylim[1] - ylim[0]):.3g}", size=10, anchor="end")
        self.text(x0 + w / 2, y0 + h + 30, xlabel)
        self.text(x0 - 40, y0 + h / 2, ylabel, rotate=-90)
        self.text(x0 + w / 2, y0 - 8, title, size=13)

    def heatmap(self, x0, y0, w, h, xs, ys, z, vrange=None, xlabel="x", ylabel="t", title="", max_cells=(160, 100)):
        """``z[j, i]`` at ``(xs[i], ys[j])``; down-sampled to at most ``max_cells``."""
        z = np.asarray(z, dtype=float)
        si = max(1, int(np.ceil(len(xs) / max_cells[0])))
        sj = max(1, int(np.ceil(len(ys) / max_cells[1])))
        zs = z[::sj, ::si]
        finite = zs[np.isfinite(zs)]
        lo, hi = vrange if vrange is not None else (float(finite.min()), float(finite.max()))
        span = hi - lo if hi > lo else 1.0
        nj, ni = zs.shape
        cw, ch = w / ni, h / nj
        for j in range(nj):
            for i in range(ni):
                v = zs[j, i]
                fill = color((v - lo) / span) if np.isfinite(v) else "#ffffff"
                self.parts.append(
                    f'<rect x="{_n(x0 + i * cw)}" y="{_n(y0 + h - (j + 1) * ch)}" '
                    f'width="{_n(cw + 0.3)}" height="{_n(ch + 0.3)}" fill="{fill}"/>'
                )
        self._frame(x0, y0, w, h, (xs[0], xs[-1]), (ys[0], ys[-1]), xlabel, ylabel, title)
        # color bar
        for k in range(50):
            self.parts.append(
                f'<rect x="{_n(x0 + w + 8)}" y="{_n(y0 + h - (k + 1) * h / 50)}" width="10" '
                f'height="{_n(h / 50 + 0.3)}" fill="{color(k / 49)}"/>'
            )
        self.text(x0 + w + 22, y0 + 4, f"{hi:.3g}", size=10, anchor="start")
        self.text(x0 + w + 22, y0 + h, f"{lo:.3g}", size=10, anchor="start")

    def lines(self, x0, y0, w, h, series, ylim=None, xlabel="x", ylabel="", title=""):
        """``series`` is a list of ``(label, xs, ys)``; non-finite points break the line."""
        allx = np.concatenate([np.asarray(s[1], float) for s in series])
        ally = np.concatenate([np.asarray(s[2], float) for s in series])
        xlim = (float(np.nanmin(allx)), float(np.nanmax(allx)))
        if ylim is None:
            fy = ally[np.isfinite(ally)]
            ylim = (float(fy.min()), float(fy.max()))
        if ylim[1] <= ylim[0]:
            ylim = (ylim[0] - 1.0, ylim[0] + 1.0)
        sx = w / (xlim[1] - xlim[0]) if xlim[1] > xlim[0] else 1.0
        sy = h / (ylim[1] - ylim[0])
        self.parts.append(f'<clipPath id="c{len(self.parts)}"><rect x="{_n(x0)}" y="{_n(y0)}" width="{_n(w)}" height="{_n(h)}"/></clipPath>')
        clip = f"c{len(self.parts) - 1}"
        for k, (label, xs, ys) in enumerate(series):
            col = _LINE_COLORS[k % len(_LINE_COLORS)]
            xs = np.asarray(xs, float)
            ys = np.clip(np.asarray(ys, float), ylim[0] - (ylim[1] - ylim[0]), ylim[1] + (ylim[1] - ylim[0]))
            ok = np.isfinite(ys)
            runs = np.split(np.arange(len(xs)), np.flatnonzero(np.diff(ok.astype(int))) + 1)
            for run in runs:
                if len(run) < 2 or not ok[run[0]]:
                    continue
                pts = " ".join(f"{_n(x0 + (xs[i] - xlim[0]) * sx)},{_n(y0 + h - (ys[i] - ylim[0]) * sy)}" for i in run)
                self.parts.append(f'<polyline points="{pts}" fill="none" stroke="{col}" stroke-width="1.5" clip-path="url(#{clip})"/>')
            self.parts.append(f'<line x1="{_n(x0 + w - 110)}" y1="{_n(y0 + 12 + 14 * k)}" x2="{_n(x0 + w - 90)}" '
                              f'y2="{_n(y0 + 12 + 14 * k)}" stroke="{col}" stroke-width="2"/>')
            self.text(x0 + w - 86, y0 + 16 + 14 * k, label, size=10, anchor="start")
        self._frame(x0, y0, w, h, xlim, ylim, xlabel, ylabel, title)

    def render(self):
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}" font-family="sans-serif">\n'
        )
        meta = f"<metadata>{escape(self.metadata)}</metadata>\n" if self.metadata else ""
        bg = f'<rect width="{self.width}" height="{self.height}" fill="white"/>\n'
        return head + meta + bg + "\n".join(self.parts) + "\n</svg>\n"
