"""Deterministic file writers: invariant CSV, mesh export, JSON reports.

Numbers are serialized with the shortest decimal representation that
round-trips to the same float64, so identical configurations produce
byte-identical outputs across runs and platforms.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import ProjectionError
from .surfaces import SurfaceSpec, invariant_record, position_jets

INVARIANT_CSV_HEADER = ("u,E,F,G,nu1,nu2,mu,gamma2,beta2,K,kappa,"
                        "H_coeff,H_norm2,trA1A2,admissible")

_AXES = ("x1", "x2", "x3", "x4")


def fmt_float(x: float) -> str:
    """Shortest round-trip decimal; integral values drop the trailing .0"""
    if math.isnan(x):
        return "nan"
    s = repr(float(x))
    if s.endswith(".0"):
        s = s[:-2]
    return s


def export_invariants_csv(spec: SurfaceSpec, us, path: str) -> None:
    """One row per grid point; inadmissible rows keep u and the 0 flag only."""
    lines = [INVARIANT_CSV_HEADER]
    for u in us:
        rec = invariant_record(spec, float(u))
        if rec is None or not rec.admissible:
            lines.append(fmt_float(float(u)) + "," * 13 + ",0")
            continue
        vals = (rec.E, rec.F, rec.G, rec.nu1, rec.nu2, rec.mu, rec.gamma2,
                rec.beta2, rec.K, rec.kappa, rec.h_coeff, rec.H_norm2,
                rec.trA1A2)
        lines.append(fmt_float(rec.u) + ","
                     + ",".join(fmt_float(v) for v in vals) + ",1")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def parse_projection(projection: str):
    """'drop-x4' or 'ortho:<axis>,<axis>,<axis>' -> component indices."""
    if projection == "drop-x4":
        return (0, 1, 2)
    if projection.startswith("ortho:"):
        names = projection[len("ortho:"):].split(",")
        if len(names) != 3 or len(set(names)) != 3:
            raise ProjectionError(
                f"projection plane needs three distinct axes, got {projection!r}")
        try:
            return tuple(_AXES.index(n.strip()) for n in names)
        except ValueError:
            raise ProjectionError(
                f"unknown axis in {projection!r}; use x1..x4") from None
    raise ProjectionError(
        f"projection must be 'drop-x4' or 'ortho:...', got {projection!r}")


def export_mesh(spec: SurfaceSpec, us, vs, path: str, fmt: str = "csv4",
                projection: str = "drop-x4") -> None:
    """Sample the immersion on the grid and write csv4 or obj3 output.

    csv4 keeps all four coordinates; obj3 projects to 3-space (drop-x4 or an
    orthographic coordinate 3-plane) and triangulates the quad grid
    row-major, two triangles per cell.
    """
    us = [float(u) for u in us]
    vs = [float(v) for v in vs]
    if fmt == "csv4":
        lines = ["u,v,x1,x2,x3,x4"]
        for u in us:
            for v in vs:
                z = position_jets(spec, u, v).z
                lines.append(",".join(fmt_float(t) for t in
                                      (u, v) + z.components()))
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
        return
    if fmt != "obj3":
        raise ProjectionError(f"mesh format must be csv4 or obj3, got {fmt!r}")

    idx = parse_projection(projection)
    lines = ["# triangulated rotational-surface sample"]
    for u in us:
        for v in vs:
            comp = position_jets(spec, u, v).z.components()
            lines.append("v " + " ".join(fmt_float(comp[i]) for i in idx))
    nv = len(vs)
    for i in range(len(us) - 1):
        for j in range(nv - 1):
            a = i * nv + j + 1          # OBJ indices are 1-based
            b = a + 1
            c = a + nv
            d = c + 1
            lines.append(f"f {a} {b} {d}")
            lines.append(f"f {a} {d} {c}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def dump_report_json(report_dict: dict, path: str) -> None:
    text = json.dumps(report_dict, indent=2)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text + "\n")


def report_json_bytes(report_dict: dict) -> bytes:
    return (json.dumps(report_dict, indent=2) + "\n").encode("utf-8")


def linspace_grid(lo: float, hi: float, n: int) -> np.ndarray:
    if n < 2:
        raise ValueError("grid needs at least 2 points")
    return np.linspace(lo, hi, n)
