"""Text renderings of chambers: JSON payloads, CSV rows, DOT and SVG slices."""
from __future__ import annotations

import csv
import io
import math
from fractions import Fraction
from typing import Sequence

from .arrangement import Chamber, delta_vector, hasse_edges
from .hearts import geometric_interval, heart_of_chamber


def chamber_label(c: Chamber) -> str:
    if c.sector == "0":
        return geometric_interval(c).label()
    return heart_of_chamber(c).label()


def chambers_payload(chambers: Sequence[Chamber], box: int | None) -> dict:
    ctx = chambers[0].ctx
    rows = []
    for k, c in enumerate(chambers):
        entry = c.to_json()
        entry["index"] = k
        entry["label"] = chamber_label(c)
        entry["separating"] = sorted([list(r) for r in c.separating])
        rows.append(entry)
    return {
        "diagram": ctx.ambient.name,
        "marked": sorted(ctx.marked),
        "lattice": list(ctx.unmarked),
        "sector": chambers[0].sector,
        "box": box,
        "count": len(chambers),
        "chambers": rows,
        "hasse": [list(e) for e in hasse_edges(chambers)],
    }


def chambers_csv(chambers: Sequence[Chamber]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "path", "label", "face_set", "defining_roots", "separating"])
    for k, c in enumerate(chambers):
        w.writerow([k, " ".join(map(str, c.path)), chamber_label(c),
                    " ".join(map(str, sorted(c.face_set))),
                    ";".join(" ".join(map(str, r.coords)) for r in c.defining_roots),
                    ";".join(" ".join(map(str, r)) for r in sorted(c.separating))])
    return buf.getvalue()


def hasse_dot(chambers: Sequence[Chamber]) -> str:
    lines = ["digraph hasse {"]
    for k, c in enumerate(chambers):
        lines.append(f'  c{k} [label="{chamber_label(c)}"];')
    for a, i, b in hasse_edges(chambers):
        lines.append(f'  c{a} -> c{b} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _fmt(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def slice_svg(chambers: Sequence[Chamber], size: int = 480) -> str:
    """Draw chambers on the slice |delta_J| = 1 (or on delta_J = 0 for the
    finite sector).  Works when the slice is one- or two-dimensional."""
    ctx = chambers[0].ctx
    sector = chambers[0].sector
    dv = delta_vector(ctx)
    coords = [k for k, v in enumerate(ctx.unmarked) if v != 0]
    dim = len(coords)
    if sector == "0" and dim != 2 or sector != "0" and dim not in (1, 2):
        raise ValueError("SVG output needs a one- or two-dimensional slice")

    polys = []
    for c in chambers:
        pts = []
        for r in c.rays.tolist():
            if sector == "0":
                norm = math.sqrt(sum(r[k] ** 2 for k in coords))
                pts.append([r[k] / norm for k in coords])
            else:
                s = abs(sum(a * b for a, b in zip(dv, r)))
                pts.append([float(Fraction(r[k], s)) for k in coords])
        if sector == "0":
            pts = [[0.0, 0.0]] + pts
        polys.append(pts)
    flat = [p for poly in polys for p in poly]
    lo = [min(p[k] for p in flat) for k in range(dim)]
    hi = [max(p[k] for p in flat) for k in range(dim)]
    span = max(max(h - l for l, h in zip(lo, hi)), 1e-9)
    pad = 20

    def tx(p):
        x = pad + (p[0] - lo[0]) / span * (size - 2 * pad)
        y = size / 2 if dim == 1 else size - pad - (p[1] - lo[1]) / span * (size - 2 * pad)
        return _fmt(x), _fmt(y)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="white"/>']
    for k, (c, poly) in enumerate(zip(chambers, polys)):
        fill = "#cfe3ff" if not c.path else "none"
        label = chamber_label(c)
        if dim == 1:
            (x0, y), (x1, _) = tx(poly[0]), tx(poly[-1])
            out.append(f'<line x1="{x0}" y1="{y}" x2="{x1}" y2="{y}" stroke="black"/>')
            for x in (x0, x1):
                out.append(f'<line x1="{x}" y1="{float(y) - 6}" x2="{x}" y2="{float(y) + 6}" stroke="black"/>')
            if not c.path:
                out.append(f'<line x1="{x0}" y1="{y}" x2="{x1}" y2="{y}" stroke="#3070d0" stroke-width="4"/>')
            continue
        if sector == "0":
            ordered = poly
        else:
            cx = sum(p[0] for p in poly) / len(poly)
            cy = sum(p[1] for p in poly) / len(poly)
            ordered = sorted(poly, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
        pts = " ".join(",".join(tx(p)) for p in ordered)
        out.append(f'<polygon points="{pts}" fill="{fill}" stroke="black" stroke-width="1">'
                   f'<title>{label}</title></polygon>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
