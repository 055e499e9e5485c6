"""Minimal raster-of-rects SVG heat map (no plotting dependency)."""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np


def _shade(t: float) -> str:
    """Blue ramp: t=0 dark, t=1 pale."""
    t = min(max(float(t), 0.0), 1.0)
    lo, hi = np.array([8, 69, 148]), np.array([198, 219, 239])
    r, g, b = np.rint(lo + t * (hi - lo)).astype(int)
    return f"#{r:02x}{g:02x}{b:02x}"


def heat_map_svg(x, y, ratio, certified, *, cell: int = 8, title: str = "",
                 x_label: str = "alpha", y_label: str = "beta") -> str:
    """Certified cells are shaded by ``ratio = m / bound``; the rest are grey.

    ``ratio`` and ``certified`` have shape ``(len(y), len(x))``; row 0 is drawn
    at the bottom.
    """
    x, y = np.asarray(x, float), np.asarray(y, float)
    ratio, certified = np.asarray(ratio, float), np.asarray(certified, bool)
    nx, ny = x.size, y.size
    margin = 40
    width, height = nx * cell + 2 * margin, ny * cell + 2 * margin
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<title>{escape(title)}</title>',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    for j in range(ny):
        top = margin + (ny - 1 - j) * cell
        for i in range(nx):
            fill = _shade(ratio[j, i]) if certified[j, i] else "#d9d9d9"
            out.append(f'<rect x="{margin + i * cell}" y="{top}" width="{cell}" '
                       f'height="{cell}" fill="{fill}"/>')
    fs = 11
    out.append(f'<text x="{margin}" y="{height - 10}" font-size="{fs}">'
               f'{escape(x_label)} [{x[0]:g}, {x[-1]:g}]</text>')
    out.append(f'<text x="4" y="{margin - 10}" font-size="{fs}">'
               f'{escape(y_label)} [{y[0]:g}, {y[-1]:g}]</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
