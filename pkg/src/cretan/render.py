"""Grid heatmaps of matrices as SVG or PGM.

Entry value +1 maps to white, -1 to black, everything between to a
linear grey; zero (and the group-matrix star) therefore sits at the
mid-grey 128.  Complex and group matrices are drawn through their real
parts so unit phases keep full contrast.  Output is a deterministic
function of the matrix and style.
"""

from __future__ import annotations

import numpy as np

from cretan.constructions import (
    ComplexLevelMatrix,
    GroupMatrix,
    LevelMatrix,
    gh_to_complex,
)

CELL = 16  # svg pixels per matrix cell


def shade_grid(m) -> np.ndarray:
    """Integer shades 0..255, one per cell."""
    if isinstance(m, LevelMatrix):
        vals = m.to_float_array()
    elif isinstance(m, ComplexLevelMatrix):
        vals = m.entries.real
    elif isinstance(m, GroupMatrix):
        vals = gh_to_complex(m).entries.real
    else:
        raise TypeError("cannot render %r" % type(m).__name__)
    vals = np.clip(vals, -1.0, 1.0)
    return np.rint(255 * (vals + 1) / 2).astype(np.int64)


def render_pgm(m) -> str:
    shades = shade_grid(m)
    n = shades.shape[0]
    lines = ["P2", "%d %d" % (n, n), "255"]
    for row in shades:
        lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


def render_svg(m) -> str:
    shades = shade_grid(m)
    n = shades.shape[0]
    side = n * CELL
    out = ['<svg xmlns="http://www.w3.org/2000/svg" width="%d" '
           'height="%d" viewBox="0 0 %d %d">' % (side, side, side, side)]
    for i in range(n):
        for j in range(n):
            grey = int(shades[i, j])
            out.append('<rect x="%d" y="%d" width="%d" height="%d" '
                       'fill="#%02x%02x%02x"/>'
                       % (j * CELL, i * CELL, CELL, CELL,
                          grey, grey, grey))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(m, style: str = "svg") -> str:
    if style == "svg":
        return render_svg(m)
    if style == "pgm":
        return render_pgm(m)
    raise ValueError("style must be svg or pgm, got %r" % style)
