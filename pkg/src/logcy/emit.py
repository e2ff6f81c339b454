"""Almost-toric base data, Weinstein handle data, and an SVG sketch of the base."""
from .fan import det

NODE_CONVENTION = "nodes at integer parameters t = 1..m_i along v_i; all invariant lines pass through the origin"


def shear_matrix(v, power=1):
    """M_v(x) = x + det(v, x) v, raised to ``power``; columns are images of e1, e2."""
    vx, vy = v
    p = power
    return [[1 - p * vx * vy, p * vx * vx], [-p * vy * vy, 1 + p * vx * vy]]


def dual_shear_matrix(v, power=1):
    """Inverse transpose of the shear, acting on the dual lattice."""
    (a, b), (c, d) = shear_matrix(v, power)
    # inverse of a determinant-one matrix, then transposed
    return [[d, -c], [-b, a]]


def perp(v):
    return (-v[1], v[0])


def emit_almost_toric(model):
    nodes, shears, cuts = [], [], []
    for i, (v, m) in enumerate(zip(model.fan.rays, model.m)):
        if not m:
            continue
        for t in range(1, m + 1):
            nodes.append({"ray": i, "t": t, "position": [t * v[0], t * v[1]]})
        shears.append({"ray": i, "direction": list(v), "matrix": shear_matrix(v),
                       "dual_matrix": dual_shear_matrix(v), "total_matrix": shear_matrix(v, m),
                       "multiplicity": m})
        cuts.append({"ray": i, "origin": [m * v[0], m * v[1]], "direction": list(v)})
    return {"kind": "almost_toric_base", "convention": NODE_CONVENTION,
            "rays": model.fan.to_list(), "nodes": nodes, "shears": shears, "cuts": cuts}


def emit_handlebody(model):
    att = []
    for i, (v, m) in enumerate(zip(model.fan.rays, model.m)):
        if not m:
            continue
        att.append({"ray": i, "curve": list(perp(v)), "coorientation": list(v),
                    "multiplicity": m, "chain_length": m})
    return {"kind": "handlebody", "base": "disc cotangent bundle of T^2", "attaching": att}


def _viewbox(points):
    xs = [p[0] for p in points] + [0]
    ys = [-p[1] for p in points] + [0]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    return x0, y0, x1 - x0, y1 - y0


def emit_svg(model):
    """Deterministic SVG 1.1: y flipped, viewBox = bounding box of nodes and origin plus 1."""
    base = emit_almost_toric(model)
    pts = [n["position"] for n in base["nodes"]]
    x, y, w, h = _viewbox(pts)
    reach = max([abs(c) for c in (x, y, x + w, y + h)] + [1])
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{x} {y} {w} {h}">']
    for i, v in enumerate(model.fan.rays):
        out.append(f'<line class="ray" data-ray="{i}" x1="0" y1="0" x2="{reach * v[0]}" y2="{-reach * v[1]}" '
                   'stroke="black" stroke-width="0.05"/>')
    for c in base["cuts"]:
        (ox, oy), (dx, dy) = c["origin"], c["direction"]
        out.append(f'<line class="cut" data-ray="{c["ray"]}" x1="{ox}" y1="{-oy}" '
                   f'x2="{ox + reach * dx}" y2="{-(oy + reach * dy)}" stroke="red" '
                   'stroke-width="0.05" stroke-dasharray="0.2,0.1"/>')
    for n in base["nodes"]:
        px, py = n["position"]
        out.append(f'<circle class="node" data-ray="{n["ray"]}" cx="{px}" cy="{-py}" r="0.15"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def check_shear(v):
    """Integral, determinant 1, trace 2, fixes v."""
    (a, b), (c, d) = shear_matrix(v)
    fixes = (a * v[0] + b * v[1], c * v[0] + d * v[1]) == tuple(v)
    return a * d - b * c == 1 and a + d == 2 and fixes


def perp_positive(v):
    return det(v, perp(v)) > 0
