"""Independent oracles and per-family verification suites.

Every check reduces to a max residual against a pinned tolerance.  The
implementation side always comes from analytic jets and closed formulas;
the oracle side is a genuinely different route: central finite differences
of frame fields, inner products of projected second-fundamental vectors,
or the defining algebraic relation of a family.  Results are reproducible
bit-for-bit for a fixed configuration.
"""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (ConfigError, DomainError, GrsError,
                     InadmissiblePointError, ParamError, StepError)
from .meridians import (FAMILY_CATALOG, build_family,
                        descriptor_from_catalog, classified_case_ids,
                        _SampledFamily)
from .pe4 import inner
from .surfaces import (SurfaceKind, SurfaceSpec, curvatures,
                       frames, geometric_functions,
                       mean_curvature_numerator, mean_curvature_vector,
                       position_jets,
                       second_fundamental_projected,
                       shape_operators_projected, sigma_vectors,
                       surface_from_family, _meridian_scalars)

DEFAULT_TOLS = {
    "closed": 1e-9,      # property residuals on closed-form families
    "ode": 1e-6,         # property residuals on integrated families
    "algebraic": 1e-12,  # identities that hold to rounding
    "cross": 1e-11,      # dual-route relative agreement
    "fd": 1e-6,          # finite-difference oracle residuals at h = 1e-4
    "pnmcv_h": 1e-10,    # mean-curvature value checks for pnmcv cases
    "vindep": 1e-10,     # spread across the v-grid
}
FD_H = 1e-4
ELLIPTIC_V_RANGE = (0.0, 2.0 * math.pi)
HYPERBOLIC_V_RANGE = (-3.0, 3.0)


# ---------------------------------------------------------------------------
# Result containers

@dataclass
class CheckResult:
    name: str
    grid: str
    max_residual: float
    tolerance: float
    passed: bool
    vacuous: bool = False
    notes: str = ""

    def to_json(self) -> dict:
        notes = "; ".join(s for s in (self.grid, self.notes) if s)
        return {"name": self.name,
                "max_residual": float(self.max_residual),
                "tolerance": float(self.tolerance),
                "pass": bool(self.passed),
                "vacuous": bool(self.vacuous),
                "notes": notes}


@dataclass
class FamilyReport:
    family: str
    params: dict
    alpha: float
    beta: float
    grid: dict
    checks: list
    runtime_s: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.vacuous)

    @property
    def vacuous_checks(self) -> list:
        return [c for c in self.checks if c.vacuous]

    def to_json(self) -> dict:
        return {"family": self.family,
                "params": self.params,
                "alpha": self.alpha,
                "beta": self.beta,
                "grid": self.grid,
                "checks": [c.to_json() for c in self.checks],
                "pass": self.passed,
                "runtime_s": self.runtime_s}


@dataclass
class SuiteReport:
    seed: int
    jobs: list          # (label, expect, FamilyReport)
    sweeps: list        # CheckResults
    runtime_s: float = 0.0

    @property
    def passed(self) -> bool:
        ok = all(c.passed for c in self.sweeps if not c.vacuous)
        for _, expect, rep in self.jobs:
            satisfied = (not rep.passed) if expect == "fail" else rep.passed
            ok = ok and satisfied
        return ok

    def to_json(self) -> dict:
        vacuous = []
        for label, _, rep in self.jobs:
            for c in rep.vacuous_checks:
                vacuous.append({"family": label, "check": c.name,
                                "notes": c.notes})
        jobs = []
        for label, expect, rep in self.jobs:
            satisfied = (not rep.passed) if expect == "fail" else rep.passed
            jobs.append({"label": label, "expect": expect,
                         "satisfied": satisfied, "report": rep.to_json()})
        return {"seed": self.seed,
                "jobs": jobs,
                "sweeps": [c.to_json() for c in self.sweeps],
                "vacuous": vacuous,
                "pass": self.passed,
                "runtime_s": self.runtime_s}


def _check(name, grid, residual, tol, notes=""):
    return CheckResult(name, grid, float(residual), float(tol),
                       float(residual) <= float(tol), False, notes)


def _vacuous_check(name, note):
    return CheckResult(name, "", 0.0, 0.0, True, True, note)


def _thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("GRS_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    cap = _thread_cap()
    items = list(items)
    if cap <= 1 or len(items) < 8:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=cap) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------------------
# Admissible-domain scanning

def _indicator(spec: SurfaceSpec, u: float, eps: float) -> float:
    """min(E - eps, -G - eps); -inf where the meridian is undefined."""
    try:
        _, _, _, _, _, _, E, W = _meridian_scalars(spec, u)
    except GrsError:
        return -math.inf
    return min(E - eps, W - eps)


def admissible_domain(spec: SurfaceSpec, u0: float, u1: float, n: int,
                      eps: float = 1e-10) -> list:
    """Maximal admissible subintervals of [u0, u1].

    Scans n sample points and refines every sign change of the indicator
    min(E, -G) - eps by bisection to an absolute width of 1e-12.
    """
    if n < 2:
        raise ValueError("scan needs at least 2 sample points")
    us = np.linspace(u0, u1, n)
    vals = [_indicator(spec, u, eps) for u in us]

    def refine(a, b, va, vb):
        # bisect the boundary between an admissible and inadmissible point
        for _ in range(200):
            if b - a <= 1e-12:
                break
            m = 0.5 * (a + b)
            vm = _indicator(spec, m, eps)
            if (vm > 0.0) == (va > 0.0):
                a, va = m, vm
            else:
                b, vb = m, vm
        return 0.5 * (a + b)

    intervals = []
    start = None
    for i, (u, val) in enumerate(zip(us, vals)):
        good = val > 0.0
        if good and start is None:
            if i == 0:
                start = u0
            else:
                start = refine(us[i - 1], u, vals[i - 1], val)
        elif not good and start is not None:
            end = refine(us[i - 1], u, vals[i - 1], val)
            if end > start:
                intervals.append((start, end))
            start = None
    if start is not None:
        intervals.append((start, u1))
    return intervals


def _grid_in_intervals(intervals, n, margin_frac=5e-3):
    """Deterministic n-point grid inside the intervals, edges avoided."""
    total = sum(b - a for a, b in intervals)
    pts = []
    for idx, (a, b) in enumerate(intervals):
        length = b - a
        k = max(2, int(round(n * length / total))) if len(intervals) > 1 else n
        if idx == len(intervals) - 1:
            k = max(2, n - len(pts))
        m = length * margin_frac
        pts.extend(np.linspace(a + m, b - m, k))
    return np.array(pts[:max(n, 2)])


def _v_grid(kind: SurfaceKind, nv: int, v_range=None):
    if v_range is None:
        v_range = ELLIPTIC_V_RANGE if kind is SurfaceKind.ELLIPTIC else HYPERBOLIC_V_RANGE
    if kind is SurfaceKind.ELLIPTIC and v_range == ELLIPTIC_V_RANGE:
        # half-open [0, 2*pi)
        return np.linspace(v_range[0], v_range[1], nv, endpoint=False)
    return np.linspace(v_range[0], v_range[1], nv)


# ---------------------------------------------------------------------------
# Point-level oracles

_ORTHO_PAIRS = (("x", "x", 1.0), ("y", "y", -1.0), ("n1", "n1", 1.0),
                ("n2", "n2", -1.0), ("x", "y", 0.0), ("x", "n1", 0.0),
                ("x", "n2", 0.0), ("y", "n1", 0.0), ("y", "n2", 0.0),
                ("n1", "n2", 0.0))


def orthonormality_residual(fr) -> float:
    """Worst deviation of the ten frame inner products from their targets.

    Scaled by max(1, Euclidean magnitudes), matching the causal-character
    tolerance convention; hyperbolic frames grow like cosh(alpha*v) and an
    absolute test would only measure that growth.
    """
    worst = 0.0
    vecs = {"x": fr.x, "y": fr.y, "n1": fr.n1, "n2": fr.n2}
    norms = {k: v.euclid_norm() for k, v in vecs.items()}
    for a, b, want in _ORTHO_PAIRS:
        scale = max(1.0, norms[a] * norms[b])
        worst = max(worst, abs(inner(vecs[a], vecs[b]) - want) / scale)
    return worst


def cross_check(spec: SurfaceSpec, u: float, v: float = 0.0):
    """Dual-route residuals for K and kappa at one u.

    K: explicit formula vs the Gauss-equation route through projected
    sigma vectors.  kappa: explicit formula vs -mu(nu1+nu2) (elliptic)
    or +mu(nu1+nu2) (hyperbolic).  Residuals are relative with floor 1.
    """
    cv = curvatures(spec, u)
    gf = geometric_functions(spec, u)
    sxx, sxy, syy = sigma_vectors(spec, u, v)
    K_sigma = (inner(sxx, syy) - inner(sxy, sxy)) / -1.0
    k_res = abs(cv.K - K_sigma) / max(1.0, abs(cv.K), abs(K_sigma))
    sgn = -1.0 if spec.kind is SurfaceKind.ELLIPTIC else 1.0
    kappa_id = sgn * gf.mu * (gf.nu1 + gf.nu2)
    kp_res = abs(cv.kappa - kappa_id) / max(1.0, abs(cv.kappa), abs(kappa_id))
    where = f"u={u:.6g}"
    return (_check("gauss-equation-route", where, k_res, DEFAULT_TOLS["cross"]),
            _check("normal-curvature-route", where, kp_res, DEFAULT_TOLS["cross"]))


def fd_connection_check(spec: SurfaceSpec, u: float, v: float,
                        h: float = FD_H) -> list:
    """Residuals of the eight frame derivative formulas against central FD.

    The frame fields are differentiated numerically over the parameter grid
    and converted to derivatives along the unit directions by 1/sqrt(E) and
    1/sqrt(-G); the returned rows are Euclidean norms of (FD - closed form).
    """
    gf = geometric_functions(spec, u)
    _, _, _, _, _, _, E, W = _meridian_scalars(spec, u)
    se, sw = math.sqrt(E), math.sqrt(W)
    fr = frames(spec, u, v)

    def frame_at(uu, vv):
        try:
            return frames(spec, uu, vv)
        except (InadmissiblePointError, DomainError) as exc:
            raise StepError(
                f"FD stencil left the admissible domain at (u={uu}, v={vv}): "
                f"{exc}") from None

    fu_p, fu_m = frame_at(u + h, v), frame_at(u - h, v)
    fv_p, fv_m = frame_at(u, v + h), frame_at(u, v - h)

    def dx(name):
        return (getattr(fu_p, name) - getattr(fu_m, name)) * (1.0 / (2.0 * h * se))

    def dy(name):
        return (getattr(fv_p, name) - getattr(fv_m, name)) * (1.0 / (2.0 * h * sw))

    x, y, n1, n2 = fr.x, fr.y, fr.n1, fr.n2
    nu1, nu2, mu, g2, b2 = gf.nu1, gf.nu2, gf.mu, gf.gamma2, gf.beta2
    if spec.kind is SurfaceKind.ELLIPTIC:
        rows = [
            ("nabla_x x", dx("x"), n2 * -nu1),
            ("nabla_x y", dx("y"), n1 * mu),
            ("nabla_y x", dy("x"), y * -g2 + n1 * mu),
            ("nabla_y y", dy("y"), x * -g2 + n2 * -nu2),
            ("nabla_x n1", dx("n1"), y * mu),
            ("nabla_y n1", dy("n1"), x * -mu + n2 * b2),
            ("nabla_x n2", dx("n2"), x * -nu1),
            ("nabla_y n2", dy("n2"), y * nu2 + n1 * b2),
        ]
    else:
        rows = [
            ("nabla_x x", dx("x"), n1 * nu1),
            ("nabla_x y", dx("y"), n2 * -mu),
            ("nabla_y x", dy("x"), y * -g2 + n2 * -mu),
            ("nabla_y y", dy("y"), x * -g2 + n1 * nu2),
            ("nabla_x n1", dx("n1"), x * -nu1),
            ("nabla_y n1", dy("n1"), y * nu2 + n2 * -b2),
            ("nabla_x n2", dx("n2"), y * mu),
            ("nabla_y n2", dy("n2"), x * -mu + n1 * -b2),
        ]
    return [(name, (fd - rhs).euclid_norm()) for name, fd, rhs in rows]


def h_numerator_identity(spec: SurfaceSpec, u0: float, u1: float,
                         n: int = 101) -> CheckResult:
    """Scaled residual of the mean-curvature numerator over a raw u-grid.

    Usable on families with empty admissible domain: the numerator contains
    no square roots, so 'vanishing mean curvature wherever defined' can be
    confirmed even where the surface is not Lorentzian.
    """
    worst = 0.0
    used = 0
    for u in np.linspace(u0, u1, n):
        try:
            num, scale = mean_curvature_numerator(spec, u)
        except GrsError:
            continue
        used += 1
        worst = max(worst, abs(num) / scale)
    if used == 0:
        return _vacuous_check("h-numerator-identity", "meridian nowhere defined")
    return _check("h-numerator-identity", f"{used} points in [{u0:.6g}, {u1:.6g}]",
                  worst, 1e-10, "numerator of the mean-curvature coefficient")


# ---------------------------------------------------------------------------
# Grid checks

def _scaled_abs(value, *magnitudes):
    return abs(value) / max(1.0, *[abs(m) for m in magnitudes])


def check_frame_orthonormality(spec, us, vs, tol) -> CheckResult:
    def row(u):
        return max(orthonormality_residual(frames(spec, u, v)) for v in vs)

    worst = max(_pmap(row, us))
    return _check("frame-orthonormality",
                  f"{len(us)}x{len(vs)} (u,v) points", worst, tol,
                  "ten inner-product conditions, Euclidean-scaled")


def check_v_independence(spec, us, nv, tol, v_range=None) -> CheckResult:
    """Spread across v of every v-dependent computation at fixed u.

    Each quantity is scaled by the Euclidean magnitude of the vectors that
    enter it (hyperbolic frames grow like cosh(alpha v), and the exact
    cancellations leave roundoff proportional to that growth).
    """
    vs = _v_grid(spec.kind, nv, v_range)
    worst = 0.0
    for u in us:
        vals, scales = [], []
        for v in vs:
            pj = position_jets(spec, u, v)
            fr = frames(spec, u, v)
            nu, nv_, n1n, n2n = (pj.z_u.euclid_norm(), pj.z_v.euclid_norm(),
                                 fr.n1.euclid_norm(), fr.n2.euclid_norm())
            E = inner(pj.z_u, pj.z_u)
            F = inner(pj.z_u, pj.z_v)
            G = inner(pj.z_v, pj.z_v)
            sf = second_fundamental_projected(spec, u, v)
            uu, uv, vv = (pj.z_uu.euclid_norm(), pj.z_uv.euclid_norm(),
                          pj.z_vv.euclid_norm())
            vals.append((E, F, G, sf.xx[0], sf.xx[1], sf.xy[0], sf.xy[1],
                         sf.yy[0], sf.yy[1]))
            seg = math.sqrt(E) * math.sqrt(-G)
            scales.append((nu * nu, nu * nv_, nv_ * nv_,
                           uu * n1n / E, uu * n2n / E,
                           uv * n1n / seg, uv * n2n / seg,
                           vv * n1n / -G, vv * n2n / -G))
        arr = np.array(vals)
        spread = arr.max(axis=0) - arr.min(axis=0)
        scale = np.maximum(1.0, np.abs(np.array(scales)).max(axis=0))
        worst = max(worst, float((spread / scale).max()))
    return _check("v-independence",
                  f"{len(us)} u-points x {nv} v-points", worst, tol,
                  "relative spread of E, F, G and projected sigma coefficients")


def chen_point_residuals(spec, u, v):
    """Scaled |tr(A1 A2)| and allied coefficient from the projection route.

    The noise of a projected entry is eps * ||sigma_vec|| * ||n_i||, so the
    trace residual is scaled by M1*S2 + M2*S1 (Mi entry magnitudes, Si the
    projection magnitudes); hyperbolic frames at large |v| are otherwise
    dominated by cosh-growth roundoff.
    """
    A1p, A2p = shape_operators_projected(spec, u, v)
    fr = frames(spec, u, v)
    sxx, sxy, syy = sigma_vectors(spec, u, v)
    smax = max(w.euclid_norm() for w in (sxx, sxy, syy))
    M1 = float(np.abs(A1p).max())
    M2 = float(np.abs(A2p).max())
    S1 = smax * fr.n1.euclid_norm()
    S2 = smax * fr.n2.euclid_norm()
    scale = max(1.0, M1 * S2 + M2 * S1)
    tr = float(np.trace(A1p @ A2p))
    h = curvatures(spec, u).h_coeff
    return abs(tr) / scale, 0.5 * abs(h) * abs(tr) / scale


def check_chen(spec, us, v, tol):
    worst_tr = 0.0
    worst_allied = 0.0
    for u in us:
        tr_res, allied_res = chen_point_residuals(spec, u, v)
        worst_tr = max(worst_tr, tr_res)
        worst_allied = max(worst_allied, allied_res)
    grid = f"{len(us)} u-points, v={v:.6g}, projected shape operators"
    return (_check("chen-trace", grid, worst_tr, tol),
            _check("chen-allied", grid, worst_allied, tol))


def check_quasiminimal(spec, us, v, tol):
    """No-quasi-minimal bundle.

    H assembled from projections must stay on its carrier normal (n2 for
    elliptic, n1 for hyperbolic): the off-carrier coefficient vanishes, the
    carrier coefficient equals h_coeff, the reported H_norm2 is -h_coeff^2,
    and the ambient inner product <H,H> equals (carrier signature)*h^2, so
    H is never lightlike unless it vanishes.
    """
    elliptic = spec.kind is SurfaceKind.ELLIPTIC
    worst_off = worst_def = worst_carrier = worst_inner = 0.0
    for u in us:
        hv = mean_curvature_vector(spec, u, v)
        fr = frames(spec, u, v)
        cv = curvatures(spec, u)
        if elliptic:
            off = inner(hv, fr.n1)
            carrier = -inner(hv, fr.n2)
            n_off, n_car, sig = fr.n1, fr.n2, -1.0
        else:
            off = -inner(hv, fr.n2)
            carrier = inner(hv, fr.n1)
            n_off, n_car, sig = fr.n2, fr.n1, 1.0
        scale_off = max(1.0, hv.euclid_norm() * n_off.euclid_norm())
        scale_car = max(1.0, hv.euclid_norm() * n_car.euclid_norm())
        worst_off = max(worst_off, abs(off) / scale_off)
        worst_carrier = max(worst_carrier,
                            abs(carrier - cv.h_coeff) / scale_car)
        worst_def = max(worst_def, abs(cv.H_norm2 + cv.h_coeff ** 2))
        worst_inner = max(worst_inner,
                          _scaled_abs(inner(hv, hv) - sig * cv.h_coeff ** 2,
                                      cv.h_coeff ** 2, hv.euclid_norm2()))
    grid = f"{len(us)} u-points, v={v:.6g}"
    off_name = "off-carrier normal component of H"
    return (
        _check("quasi-minimal-off-component", grid, worst_off, tol, off_name),
        _check("h-carrier-coefficient", grid, worst_carrier, 10 * tol,
               "projected H coefficient vs closed form"),
        _check("h-norm2-definition", grid, worst_def, tol,
               "reported H_norm2 equals -h_coeff^2"),
        _check("h-inner-product-signature", grid, worst_inner,
               DEFAULT_TOLS["cross"],
               "ambient <H,H> = (carrier signature) * h_coeff^2; the carrier "
               "normal is timelike for the elliptic kind and spacelike for "
               "the hyperbolic kind"),
    )


def check_minimal(spec, us, tol) -> CheckResult:
    worst = max(abs(curvatures(spec, u).h_coeff) for u in us)
    return _check("minimal-h-coeff", f"{len(us)} u-points", worst, tol)


def check_flat(spec, us, tol):
    worst_K = 0.0
    worst_id = 0.0
    for u in us:
        worst_K = max(worst_K, abs(curvatures(spec, u).K))
        gf = geometric_functions(spec, u)
        worst_id = max(worst_id, abs(gf.mu ** 2 + gf.nu1 * gf.nu2))
    grid = f"{len(us)} u-points"
    return (_check("flat-gauss-curvature", grid, worst_K, tol),
            _check("flat-mu2-plus-nu1nu2", grid, worst_id, tol))


def check_fnc(spec, us, tol) -> CheckResult:
    worst = max(abs(curvatures(spec, u).kappa) for u in us)
    return _check("fnc-normal-curvature", f"{len(us)} u-points", worst, tol)


def check_pnmcv(spec, us, C, sign, tol_alg, tol_h):
    elliptic = spec.kind is SurfaceKind.ELLIPTIC
    hs, b2s, n2s = [], [], []
    for u in us:
        gf = geometric_functions(spec, u)
        cv = curvatures(spec, u)
        hs.append(cv.h_coeff)
        b2s.append(abs(gf.beta2))
        n2s.append(abs(cv.H_norm2 + 1.0 / (C * C)))
    hs = np.array(hs)
    grid = f"{len(us)} u-points"
    if elliptic:
        h_res = float(np.max(np.abs(hs - sign / C)))
        h_note = "h_coeff equals sign/C"
    else:
        h_res = float(np.max(np.abs(np.abs(hs) - 1.0 / abs(C))))
        h_note = "|h_coeff| equals 1/|C|"
    return (
        _check("pnmcv-beta2", grid, max(b2s), tol_alg),
        _check("pnmcv-h-norm2", grid, max(n2s), tol_h,
               "H_norm2 equals -1/C^2"),
        _check("pnmcv-h-value", grid, h_res, tol_h, h_note),
        _check("pnmcv-h-constancy", grid, float(hs.max() - hs.min()), tol_h),
    )


def check_parallel_H_fd(spec, us, v, h=1e-5, tol=1e-6) -> CheckResult:
    """Optional direct FD check that D H = 0 in the normal bundle.

    Subsumes beta2 = 0 plus h constancy for the pnmcv families; off by
    default in the standard bundles.
    """
    worst = 0.0
    for u in us:
        _, _, _, _, _, _, E, W = _meridian_scalars(spec, u)
        hp = mean_curvature_vector(spec, u + h, v)
        hm = mean_curvature_vector(spec, u - h, v)
        du = (hp - hm) * (1.0 / (2.0 * h * math.sqrt(E)))
        hpv = mean_curvature_vector(spec, u, v + h)
        hmv = mean_curvature_vector(spec, u, v - h)
        dv = (hpv - hmv) * (1.0 / (2.0 * h * math.sqrt(W)))
        fr = frames(spec, u, v)
        for dvec in (du, dv):
            c1 = inner(dvec, fr.n1)
            c2 = -inner(dvec, fr.n2)
            worst = max(worst, math.hypot(c1, c2))
    return _check("parallel-H-fd", f"{len(us)} u-points, v={v:.6g}",
                  worst, tol, "normal-bundle derivative of H by central FD")


def check_fd_connection(spec, points, h, tol, shrink_h=None):
    """FD residual check at interior points plus shrinkage under halving.

    shrink_h is the step used for the halving-ratio observation; for
    dense-output families it should sit well above the interpolation noise
    floor (the residual check itself stays at h).
    """
    if shrink_h is None:
        shrink_h = h
    worst = 0.0
    ratios = []
    for (u, v) in points:
        rows_h = fd_connection_check(spec, u, v, h)
        worst = max(worst, max(r for _, r in rows_h))
        rows_s = fd_connection_check(spec, u, v, shrink_h) \
            if shrink_h != h else rows_h
        rows_s2 = fd_connection_check(spec, u, v, 0.5 * shrink_h)
        for (name, r1), (_, r2) in zip(rows_s, rows_s2):
            if r1 > 5e-9 and r2 > 0.0:
                ratios.append(r1 / r2)
    grid = f"{len(points)} points, h={h:g}"
    res = _check("fd-connection", grid, worst, tol,
                 "eight frame derivative formulas vs central differences")
    if ratios:
        # median across rows and points: single rows can sit at the
        # cancellation floor where the ratio carries no signal
        dev = abs(float(np.median(ratios)) - 4.0)
        shr = _check("fd-shrinkage", f"{len(points)} points, h={shrink_h:g}",
                     dev, 0.5,
                     f"median halving ratio over {len(ratios)} rows above "
                     "the noise floor")
    else:
        shr = _vacuous_check("fd-shrinkage",
                             "all rows at noise floor; no ratio to observe")
    return res, shr


def check_sampled_residuals(fam, tol):
    """Knot diagnostics for integrated families."""
    sm = fam.ensure_realized()
    grid = f"{len(sm.traj.ts)} knots"
    out = [
        _check("constraint-residual", grid, float(sm.residuals.max()),
               100.0 * tol, "algebraic invariant drift at knots"),
        _check("unit-speed", grid, float(sm.speed_residuals.max()), tol),
    ]
    roots = sm.knot_roots
    worst = 0.0
    counted = False
    for i in range(1, len(roots)):
        u = float(sm.traj.ts[i])
        f, g = float(sm.traj.ys[i][0]), float(sm.traj.ys[i][1])
        cands = sm.rule.candidates(u, f, g)
        if len(cands) < 2:
            continue
        counted = True
        d_chosen = abs(roots[i] - roots[i - 1])
        d_other = max(abs(c[0] - roots[i - 1]) for c in cands)
        worst = max(worst, d_chosen - d_other)
    if counted:
        out.append(_check("branch-continuity", grid, max(worst, 0.0), 0.0,
                          "chosen root stays nearest to the previous root"))
    return out


def check_min_ell_ii_identity(spec, us) -> CheckResult:
    """Exact identity of the angle parametrization: beta^2 E = -G.

    Equivalent to (A - alpha^2 f^2) - (A - beta^2 g^2) = beta^2 g^2 -
    alpha^2 f^2 rescaled to this parametrization; the unit-speed gauge of
    the classification is not used by the evaluator.
    """
    b2 = spec.beta ** 2
    worst = 0.0
    for u in us:
        _, fp, _, _, gp, _, E, W = _meridian_scalars(spec, u)
        worst = max(worst, _scaled_abs(b2 * E - W, b2 * E, W))
    return _check("parametrization-identity", f"{len(us)} u-points", worst,
                  DEFAULT_TOLS["algebraic"], "beta^2 (f'^2 - g'^2) = -G")


# ---------------------------------------------------------------------------
# Family verification

def _property_checks(case, spec, us, tier_tol, tols, C=None, sign=1,
                     extra=None):
    out = []
    wanted = set(extra or [])
    prefix = case.split("-")[0]
    if prefix == "min" or "minimal" in wanted:
        out.append(check_minimal(spec, us, tier_tol))
    if prefix == "pnmcv" or "pnmcv" in wanted:
        out.extend(check_pnmcv(spec, us, C, sign, tols["algebraic"],
                               tols["pnmcv_h"]))
    if prefix == "flat" or "flat" in wanted:
        out.extend(check_flat(spec, us, tier_tol))
    if prefix == "fnc" or "fnc" in wanted:
        out.append(check_fnc(spec, us, tier_tol))
    return out


_PLANNED_COMMON = ("frame-orthonormality", "v-independence", "chen-trace",
                   "chen-allied", "quasi-minimal-off-component",
                   "h-carrier-coefficient", "h-norm2-definition",
                   "h-inner-product-signature", "gauss-equation-route",
                   "normal-curvature-route", "fd-connection", "fd-shrinkage")


def verify_family(case: str, params: dict | None = None, *,
                  alpha: float | None = None, beta: float | None = None,
                  sign: int = 1, root: str = "larger",
                  u_range: tuple | None = None, nu: int = 50, nv: int = 8,
                  v_range: tuple | None = None, state0: tuple | None = None,
                  checks: list | None = None, tols: dict | None = None,
                  fd_h: float = FD_H, include_parallel_H_fd: bool = False,
                  record_runtime: bool = False) -> FamilyReport:
    """Run the property bundle keyed to a family case.

    Returns a report whose checks all carry residual/tolerance pairs;
    empty admissible domains yield vacuous results with explicit notes.
    runtime_s stays 0.0 unless record_runtime is set, keeping report bytes
    reproducible across runs.
    """
    entry = FAMILY_CATALOG.get(case)
    if entry is None:
        raise ParamError(f"unknown family case {case!r}")
    if nu < 2 or nv < 2:
        raise ParamError("grid counts must be at least 2")
    tols = {**DEFAULT_TOLS, **(tols or {})}
    if any(not (t > 0.0) for t in tols.values()):
        raise ParamError("tolerances must be positive")
    kw = {}
    if alpha is not None:
        kw["alpha"] = alpha
    if beta is not None:
        kw["beta"] = beta
    if u_range is not None:
        kw["interval"] = tuple(u_range)
    if state0 is not None:
        kw["state0"] = tuple(state0)
    desc = descriptor_from_catalog(case, params, sign=sign, root=root, **kw)
    fam = build_family(desc)
    spec = surface_from_family(fam)
    lo, hi = desc.interval
    grid_desc = {"u0": lo, "u1": hi, "nu": nu, "nv": nv}

    t_start = time.perf_counter()
    if isinstance(fam, _SampledFamily):
        # realize now so configuration problems (state off the constraint,
        # no real root, drift) propagate instead of reading as an empty domain
        fam.ensure_realized()
    intervals = admissible_domain(spec, lo, hi, max(128, 4 * nu))
    results = [CheckResult(
        "admissible-domain", f"scan of [{lo:.6g}, {hi:.6g}]", 0.0, 0.0, True,
        False,
        ("empty" if not intervals else
         "intervals: " + ", ".join(f"[{a:.6g}, {b:.6g}]" for a, b in intervals)))]

    if not intervals:
        note = "empty admissible domain; property checks are vacuous"
        if fam.diagnostics:
            note += " (" + "; ".join(fam.diagnostics) + ")"
        planned = _PLANNED_COMMON + (("minimal-h-coeff",)
                                     if case.startswith("min") else ())
        for name in planned:
            results.append(_vacuous_check(name, note))
        if case == "min-ell-i":
            results.append(h_numerator_identity(spec, lo, hi))
        rep = FamilyReport(case, dict(desc.params), desc.alpha, desc.beta,
                           grid_desc, results)
        if record_runtime:
            rep.runtime_s = time.perf_counter() - t_start
        return rep

    if isinstance(fam, _SampledFamily):
        results.extend(check_sampled_residuals(fam, desc.tol))

    us = _grid_in_intervals(intervals, nu)
    vs = _v_grid(spec.kind, nv, v_range)
    v_mid = 0.7 if spec.kind is SurfaceKind.ELLIPTIC else 0.4

    tier_tol = tols["closed"] if entry.realization == "closed" else tols["ode"]
    C = desc.params.get("C")
    results.extend(_property_checks(case, spec, us, tier_tol, tols,
                                    C=C, sign=desc.sign, extra=checks))
    if case == "min-ell-ii":
        results.append(check_min_ell_ii_identity(spec, us))

    results.append(check_frame_orthonormality(spec, us, vs, tols["algebraic"]))
    results.append(check_v_independence(spec, us[:: max(1, len(us) // 3)][:3],
                                        32, tols["vindep"], v_range))
    results.extend(check_chen(spec, us, v_mid, tols["algebraic"]))
    results.extend(check_quasiminimal(spec, us, v_mid, tols["algebraic"]))

    worst_k = worst_kp = 0.0
    for u in us:
        ck, ckp = cross_check(spec, u, v_mid)
        worst_k = max(worst_k, ck.max_residual)
        worst_kp = max(worst_kp, ckp.max_residual)
    results.append(_check("gauss-equation-route", f"{len(us)} u-points",
                          worst_k, tols["cross"]))
    results.append(_check("normal-curvature-route", f"{len(us)} u-points",
                          worst_kp, tols["cross"]))

    # three interior FD points inside the widest interval, clear of edges
    a, b = max(intervals, key=lambda iv: iv[1] - iv[0])
    shrink_h = fd_h if entry.realization == "closed" else 10.0 * fd_h
    pad = max(0.02 * (b - a), 8.0 * max(fd_h, shrink_h))
    fd_points = [(a + frac * (b - a - 2 * pad) + pad, v_mid)
                 for frac in (0.25, 0.5, 0.75)]
    results.extend(check_fd_connection(spec, fd_points, fd_h, tols["fd"],
                                       shrink_h=shrink_h))

    if include_parallel_H_fd:
        results.append(check_parallel_H_fd(spec, us[:: max(1, len(us) // 5)],
                                           v_mid))

    rep = FamilyReport(case, dict(desc.params), desc.alpha, desc.beta,
                       grid_desc, results)
    if record_runtime:
        rep.runtime_s = time.perf_counter() - t_start
    return rep


# ---------------------------------------------------------------------------
# Random-point sweeps spanning all families

def random_point_sweep(n: int, seed: int, tol: float) -> list:
    """Chen property and quasi-minimal exclusion at n random admissible points.

    Points rotate deterministically through every case with a nonempty
    admissible domain under the canned catalog defaults.
    """
    rng = random.Random(seed)
    pool = []
    for case in classified_case_ids():
        desc = descriptor_from_catalog(case)
        fam = build_family(desc)
        spec = surface_from_family(fam)
        lo, hi = desc.interval
        intervals = admissible_domain(spec, lo, hi, 256)
        if intervals:
            pool.append((case, spec, intervals))

    worst_tr = worst_allied = worst_off = worst_def = 0.0
    for i in range(n):
        case, spec, intervals = pool[i % len(pool)]
        a, b = intervals[rng.randrange(len(intervals))]
        m = 5e-3 * (b - a)
        u = rng.uniform(a + m, b - m)
        vr = ELLIPTIC_V_RANGE if spec.kind is SurfaceKind.ELLIPTIC else HYPERBOLIC_V_RANGE
        v = rng.uniform(*vr)
        tr_res, allied_res = chen_point_residuals(spec, u, v)
        cv = curvatures(spec, u)
        hv = mean_curvature_vector(spec, u, v)
        fr = frames(spec, u, v)
        n_off = fr.n1 if spec.kind is SurfaceKind.ELLIPTIC else fr.n2
        off = (inner(hv, fr.n1) if spec.kind is SurfaceKind.ELLIPTIC
               else -inner(hv, fr.n2))
        hscale = max(1.0, hv.euclid_norm() * n_off.euclid_norm())
        worst_tr = max(worst_tr, tr_res)
        worst_allied = max(worst_allied, allied_res)
        worst_off = max(worst_off, abs(off) / hscale)
        worst_def = max(worst_def, abs(cv.H_norm2 + cv.h_coeff ** 2))
    grid = f"{n} random admissible points over {len(pool)} families, seed={seed}"
    return [
        _check("chen-trace-sweep", grid, worst_tr, tol),
        _check("chen-allied-sweep", grid, worst_allied, tol),
        _check("quasi-minimal-sweep", grid, worst_off, tol),
        _check("h-norm2-sweep", grid, worst_def, tol),
    ]


# ---------------------------------------------------------------------------
# Suite runner

_JOB_KEYS = {"label", "family", "params", "alpha", "beta", "sign", "root",
             "u0", "u1", "nu", "nv", "v0", "v1", "f0", "g0", "checks",
             "expect", "tols"}


def default_suite_config(seed: int = 20240) -> dict:
    """All sixteen classified cases with canned parameters, the A < 0 branch
    of min-hyp-ii, the pnmcv ladder C in {0.5, 2, 5} for both kinds, the
    random-point sweep, and a non-minimal negative control expected to fail.
    """
    jobs = []
    for case in classified_case_ids():
        if case.startswith("pnmcv"):
            continue
        jobs.append({"family": case})
    jobs.append({"label": "min-hyp-ii[A<0]", "family": "min-hyp-ii",
                 "params": {"A": -1.0, "c": 0.2}, "alpha": 1.0, "beta": 2.0,
                 "u0": 0.1, "u1": 1.5})
    for C, (lo, hi) in (("0.5", (0.55, 3.0)), ("2", (2.1, 6.0)),
                        ("5", (5.25, 9.0))):
        jobs.append({"label": f"pnmcv-ell[C={C}]", "family": "pnmcv-ell",
                     "params": {"C": float(C)}, "alpha": 1.0, "beta": 3.0,
                     "u0": lo, "u1": hi})
    for C, (lo, hi) in (("0.5", (0.05, 0.45)), ("2", (0.2, 1.8)),
                        ("5", (0.5, 4.5))):
        jobs.append({"label": f"pnmcv-hyp[C={C}]", "family": "pnmcv-hyp",
                     "params": {"C": float(C)}, "alpha": 1.3, "beta": 0.7,
                     "u0": lo, "u1": hi})
    jobs.append({"label": "negative-control-nonminimal", "family": "custom",
                 "params": {"f": "u**2", "g": "u", "kind": "elliptic"},
                 "alpha": 1.0, "beta": 3.0, "u0": 0.6, "u1": 2.8,
                 "checks": ["minimal"], "expect": "fail"})
    return {"seed": seed, "sweep_points": 200, "record_runtime": False,
            "jobs": jobs}


def _run_job(job: dict, record_runtime: bool = False) -> tuple:
    if not isinstance(job, dict):
        raise ConfigError("each job must be an object")
    unknown = set(job) - _JOB_KEYS
    if unknown:
        raise ConfigError(f"unknown job keys: {sorted(unknown)}")
    try:
        case = job["family"]
    except KeyError:
        raise ConfigError("job missing 'family'") from None
    expect = job.get("expect", "pass")
    if expect not in ("pass", "fail"):
        raise ConfigError(f"expect must be pass|fail, got {expect!r}")
    label = job.get("label", case)
    kw = {}
    if "u0" in job or "u1" in job:
        if not ("u0" in job and "u1" in job):
            raise ConfigError(f"{label}: u0 and u1 must be given together")
        kw["u_range"] = (float(job["u0"]), float(job["u1"]))
    if "v0" in job or "v1" in job:
        if not ("v0" in job and "v1" in job):
            raise ConfigError(f"{label}: v0 and v1 must be given together")
        kw["v_range"] = (float(job["v0"]), float(job["v1"]))
    if "f0" in job:
        kw["state0"] = (float(job["f0"]),
                        float(job["g0"]) if job.get("g0") is not None else None)
    for key in ("alpha", "beta"):
        if key in job:
            kw[key] = float(job[key])
    for key, cast in (("nu", int), ("nv", int), ("sign", int)):
        if key in job:
            kw[key] = cast(job[key])
    if "root" in job:
        kw["root"] = job["root"]
    if "checks" in job:
        kw["checks"] = list(job["checks"])
    if "tols" in job:
        kw["tols"] = dict(job["tols"])
    rep = verify_family(case, job.get("params"), record_runtime=record_runtime,
                        **kw)
    return label, expect, rep


def run_suite(config: dict) -> SuiteReport:
    """Execute the configured jobs in order and aggregate deterministically."""
    if not isinstance(config, dict):
        raise ConfigError("suite config must be a JSON object")
    unknown = set(config) - {"seed", "jobs", "sweep_points", "record_runtime"}
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    seed = int(config.get("seed", 20240))
    jobs_cfg = config.get("jobs", [])
    if not isinstance(jobs_cfg, list):
        raise ConfigError("'jobs' must be a list")

    record_runtime = bool(config.get("record_runtime", False))
    t_start = time.perf_counter()
    jobs = [_run_job(job, record_runtime) for job in jobs_cfg]
    sweeps = []
    n_sweep = int(config.get("sweep_points", 0))
    if n_sweep > 0:
        sweeps = random_point_sweep(n_sweep, seed, DEFAULT_TOLS["algebraic"])
    report = SuiteReport(seed=seed, jobs=jobs, sweeps=sweeps)
    if record_runtime:
        report.runtime_s = time.perf_counter() - t_start
    return report
