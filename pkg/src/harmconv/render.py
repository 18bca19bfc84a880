"""Static pictures of f(D): images of circles |z| = r and radial segments.

The SVG is written by hand (a handful of polylines does not justify a
plotting dependency); the CSV carries the sampled points together with the
Jacobian and |omega| so figures can be checked numerically.
"""

from __future__ import annotations

import csv
import io

import numpy as np

from . import series as S
from .harmonic import evaluate_map

DEFAULT_STYLE = {"rings": 8, "rays": 16, "samples": 256, "max_radius": 0.95}
CSV_COLUMNS = ["re_z", "im_z", "re_w", "im_w", "jacobian", "abs_dilatation"]


def sample_curves(rings, rays, samples, max_radius):
    """List of 1-d arrays of disk points, circles first, then rays."""
    curves = []
    t = np.linspace(0.0, 2.0 * np.pi, samples + 1)
    for j in range(1, rings + 1):
        curves.append(max_radius * j / rings * np.exp(1j * t))
    s = np.linspace(0.0, max_radius, samples)
    for k in range(rays):
        curves.append(s * np.exp(2j * np.pi * k / rays))
    return curves


def diagnostics(f, z):
    w = evaluate_map(f, z)
    hp = S.evaluate(S.differentiate(f.h), z)
    gp = S.evaluate(S.differentiate(f.g), z)
    jac = np.abs(hp) ** 2 - np.abs(gp) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        mod = np.abs(gp) / np.abs(hp)
    return w, jac, mod


def render(f, style=None):
    """Return (svg_text, csv_text) for the map ``f``."""
    st = dict(DEFAULT_STYLE, **(style or {}))
    curves = sample_curves(int(st["rings"]), int(st["rays"]), int(st["samples"]), float(st["max_radius"]))
    images = []
    rows = io.StringIO()
    writer = csv.writer(rows, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for z in curves:
        w, jac, mod = diagnostics(f, z)
        images.append(w)
        for row in zip(z.real, z.imag, w.real, w.imag, jac, mod):
            writer.writerow(["%.17g" % v for v in row])
    return _svg(images), rows.getvalue()


def _svg(images):
    allw = np.concatenate(images)
    finite = allw[np.isfinite(allw)]
    x0, x1 = finite.real.min(), finite.real.max()
    # SVG y grows downward, so plot -Im w
    y0, y1 = -finite.imag.max(), -finite.imag.min()
    pad = 0.05 * max(x1 - x0, y1 - y0, 1e-9)
    x0, y0 = x0 - pad, y0 - pad
    width, height = x1 - x0 + pad, y1 - y0 + pad
    stroke = 0.002 * max(width, height)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{x0:.9g} {y0:.9g} {width:.9g} {height:.9g}">',
        f'<g fill="none" stroke="black" stroke-width="{stroke:.6g}">',
    ]
    for w in images:
        w = w[np.isfinite(w)]
        pts = " ".join(f"{p.real:.9g},{-p.imag:.9g}" for p in w)
        out.append(f'<polyline points="{pts}"/>')
    out += ["</g>", "</svg>", ""]
    return "\n".join(out)
