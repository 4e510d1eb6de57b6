"""CSV / JSON / SVG emitters and the ``key = value`` config reader.

CSV numbers are written with 17 significant digits, ``.`` as decimal point
and ``\\n`` line endings, so identical runs give identical bytes.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .errors import InvalidInputError

SCHEMA_VERSION = 1


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def read_csv(text: str) -> list:
    return list(csv.reader(io.StringIO(text)))


def json_text(kind: str, payload: dict) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind}
    doc.update(payload)
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def parse_json(text: str, kind: str | None = None) -> dict:
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise InvalidInputError(f"unsupported schema_version {doc.get('schema_version')!r}")
    if kind is not None and doc.get("kind") != kind:
        raise InvalidInputError(f"expected a {kind!r} document, got {doc.get('kind')!r}")
    return doc


# -- tables ---------------------------------------------------------------

def spectrum_rows(results):
    header = ["method", "branch", "basis", "converged", "convergence_delta", "level", "energy"]
    rows = []
    for r in results:
        branch = "" if r.branch is None else r.branch.value
        for i, e in enumerate(r.energies):
            rows.append([r.method.value, branch, r.basis_size, r.converged, r.convergence_delta, i, e])
    return header, rows


def scan_rows(tables):
    tables = list(tables)
    k = tables[0].levels
    header = ["axis"] + [f"level_{i}" for i in range(k)] + ["method", "basis"]
    rows = []
    for t in tables:
        for v, r in zip(t.values, t.results):
            rows.append([v, *r.energies[:k], t.method.value, r.basis_size])
    return header, rows


def wavefunction_rows(wf):
    return ["xi", "up", "down"], zip(wf.xi, wf.up, wf.down)


def potential_rows(xi, values):
    return ["xi", "v_eff"], zip(xi, values)


def degeneracy_rows(reports):
    reports = list(reports)
    n_gaps = max(len(r.gaps) for r in reports)
    header = ["eta", "g", "g_over_gc", "onset_level", "predicted_onset", "threshold"]
    header += [f"gap_{i}" for i in range(n_gaps)]
    rows = []
    for r in reports:
        rows.append([r.params.eta, r.params.g, r.params.g_over_gc, r.onset_level,
                     r.predicted_onset, r.threshold, *r.gaps])
    return header, rows


# -- svg ------------------------------------------------------------------

_PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def svg_plot(series, title="", xlabel="", ylabel="", width=640, height=420) -> str:
    """Polyline plot. ``series`` is a list of ``(label, x, y)`` or
    ``(label, x, y, style)`` where ``style`` may set ``color`` and ``dash``."""
    left, right, top, bottom = 70, 150, 40, 50
    pw, ph = width - left - right, height - top - bottom
    xs = np.concatenate([np.asarray(s[1], float) for s in series])
    ys = np.concatenate([np.asarray(s[2], float) for s in series])
    x0, x1 = float(np.nanmin(xs)), float(np.nanmax(xs))
    y0, y1 = float(np.nanmin(ys)), float(np.nanmax(ys))
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5

    def px(x):
        return left + (x - x0) / (x1 - x0) * pw

    def py(y):
        return top + (y1 - y) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        f'<text x="{left + pw / 2:.1f}" y="{top - 14}" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<text x="{left + pw / 2:.1f}" y="{height - 12}" text-anchor="middle" font-size="12">{escape(xlabel)}</text>',
        f'<text x="16" y="{top + ph / 2:.1f}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 16 {top + ph / 2:.1f})">{escape(ylabel)}</text>',
    ]
    for frac in (0.0, 0.5, 1.0):
        xv, yv = x0 + frac * (x1 - x0), y0 + frac * (y1 - y0)
        out.append(f'<text x="{px(xv):.1f}" y="{top + ph + 16}" text-anchor="middle" font-size="10">{xv:.4g}</text>')
        out.append(f'<text x="{left - 6}" y="{py(yv) + 4:.1f}" text-anchor="end" font-size="10">{yv:.4g}</text>')
    for i, s in enumerate(series):
        label, x, y = s[0], np.asarray(s[1], float), np.asarray(s[2], float)
        style = s[3] if len(s) > 3 else {}
        color = style.get("color", _PALETTE[i % len(_PALETTE)])
        dash = f' stroke-dasharray="{style["dash"]}"' if style.get("dash") else ""
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y) if np.isfinite(b))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{pts}"/>')
        ly = top + 14 + 16 * i
        out.append(f'<line x1="{left + pw + 10}" y1="{ly - 4}" x2="{left + pw + 30}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="1.5"{dash}/>')
        out.append(f'<text x="{left + pw + 34}" y="{ly}" font-size="11">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- config ---------------------------------------------------------------

def load_config(path) -> dict:
    """Read a flat ``key = value`` file; ``#`` starts a comment."""
    text = Path(path).read_text()
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",), delimiters=("=",))
    try:
        parser.read_string("[config]\n" + text)
    except configparser.Error as exc:
        raise InvalidInputError(f"cannot parse config {path}: {exc}") from exc
    return {k.replace("-", "_"): v for k, v in parser["config"].items()}
