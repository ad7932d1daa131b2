"""Meridian curve families for general rotational surfaces.

Each classified family (minimal, parallel normalized mean curvature, flat,
flat normal connection; elliptic and hyperbolic kind) is realized as an
evaluator producing the 2-jets of the profile functions f and g at any
parameter value.  Families with closed forms go through jet arithmetic;
families defined only by an implicit relation are integrated with RK4,
solving a linear-quadratic system for (f', g') at every step, and evaluated
through cubic Hermite dense output.

Case identifiers:
    min-ell-i    f = c * g^(s*alpha/beta), g = u           (alpha != beta)
    min-ell-ii   angle form of arcsin(alpha*f/sqrt(A)) = s*(alpha/beta)*arcsin(beta*g/sqrt(A)) + C
    min-ell-iii  (f+g)^2 = a*(f-g)^2 + b                   (alpha == beta)
    min-hyp-i    f = c * g^(-s*alpha/beta), g = u          (alpha != beta)
    min-hyp-ii   hyperbolic-angle form of alpha*f + sqrt(alpha^2 f^2 - A) = C*(beta*g + sqrt(beta^2 g^2 + A))^(s*alpha/beta)
    min-hyp-iii  arctan(f'/g') = -arctan(f/g) + c          (alpha == beta, unit speed ODE)
    pnmcv-ell    f = s*sqrt(u^2 - C^2), g = u
    pnmcv-hyp    f = s*sqrt(C^2 - u^2), g = u
    flat-ell-i   beta^2 g^2 - alpha^2 f^2 = a^2 (u+c)^2 with f'^2 - g'^2 = 1
    flat-ell-ii  alpha^2 f^2 - beta^2 g^2 = C (C < 0), hyperbolic-angle form
    flat-hyp-i   alpha^2 f^2 + beta^2 g^2 = a^2 (u+c)^2 with f'^2 + g'^2 = 1
    flat-hyp-ii  alpha^2 f^2 + beta^2 g^2 = C (C > 0), circular form
    fnc-ell-i    f = c * g, 1 < c^2 < beta^2/alpha^2
    fnc-ell-ii   f f' - g g' = C sqrt(f'^2 - g'^2) sqrt(beta^2 g^2 - alpha^2 f^2), unit speed
    fnc-hyp-i    f = c * g, c != 0, alpha != beta
    fnc-hyp-ii   f f' + g g' = C sqrt(f'^2 + g'^2) sqrt(alpha^2 f^2 + beta^2 g^2), unit speed
    custom       closed-form expressions for f(u), g(u)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (ConstraintDriftError, DomainError, NoRealRootError,
                     ParamError, RangeError)
from .jets import Jet2, JetExpr, jcos, jcosh, jsin, jsinh, jsqrt
from .odeint import Trajectory, hermite_eval, rk4_integrate

DEFAULT_INTEGRATION_TOL = 1e-10
_INITIAL_STEPS = 1024
_MAX_HALVINGS = 3


@dataclass(frozen=True, slots=True)
class MeridianJet:
    """2-jets of the two profile coordinates at one parameter value."""

    f: Jet2
    g: Jet2


@dataclass
class FamilyDescriptor:
    """Constructor data for one meridian family.

    sign selects the +/- branch where the defining relation has one; root
    selects the initial branch ("larger" or "smaller" f') of the per-step
    quadratic for constrained families.  interval is the evaluation window
    (for integrated families: the integration span, with state0 given at its
    left endpoint).
    """

    case: str
    params: dict
    alpha: float
    beta: float
    sign: int = 1
    root: str = "larger"
    interval: tuple | None = None
    state0: tuple | None = None
    tol: float = DEFAULT_INTEGRATION_TOL


@dataclass(frozen=True)
class CatalogEntry:
    case: str
    kind: str                      # "elliptic" | "hyperbolic"
    realization: str               # "closed" | "ode"
    param_doc: str
    defaults: dict
    default_alpha: float
    default_beta: float
    default_interval: tuple
    default_state0: tuple | None = None


class MeridianFamily:
    """Evaluator for one meridian family; construction may integrate lazily."""

    def __init__(self, desc: FamilyDescriptor, kind: str):
        self.case = desc.case
        self.params = dict(desc.params)
        self.alpha = desc.alpha
        self.beta = desc.beta
        self.sign = desc.sign
        self.kind = kind
        self.interval = desc.interval
        self.diagnostics: list[str] = []

    def jet(self, u: float) -> MeridianJet:
        raise NotImplementedError

    def _check_interval(self, u: float):
        if self.interval is not None:
            lo, hi = self.interval
            if not (lo <= u <= hi):
                raise DomainError(
                    f"{self.case}: u={u} outside interval [{lo}, {hi}]")


class _ClosedFormFamily(MeridianFamily):
    def __init__(self, desc, kind, jet_fn):
        super().__init__(desc, kind)
        self._jet_fn = jet_fn

    def jet(self, u: float) -> MeridianJet:
        self._check_interval(u)
        fj, gj = self._jet_fn(float(u))
        _check_regular(self.case, u, fj, gj)
        return MeridianJet(fj, gj)


def _check_regular(case, u, fj, gj):
    if abs(fj.d1) < 1e-14 and abs(gj.d1) < 1e-14:
        raise DomainError(f"{case}: singular point at u={u} (f' = g' = 0)")


# ---------------------------------------------------------------------------
# Constrained / ODE-realized families

class _QuadRule:
    """Per-step linear-quadratic system defining (f', g') for one family.

    candidates() returns the real roots as (f', g') pairs; second() recovers
    (f'', g'') by differentiating the defining equations analytically;
    constraint() is the algebraic invariant whose drift is monitored (0 for
    families whose relation involves derivatives only).
    """

    name = "?"

    def candidates(self, u, f, g):
        raise NotImplementedError

    def second(self, u, f, g, fp, gp):
        raise NotImplementedError

    def constraint(self, u, f, g) -> float:
        return 0.0

    def speed_residual(self, fp, gp) -> float:
        raise NotImplementedError


def _quad_roots(A, B, C, where):
    """Real roots of A x^2 + B x + C = 0, robust to tiny A and roundoff."""
    scale = max(abs(A), abs(B), abs(C), 1e-30)
    if abs(A) <= 1e-14 * scale:
        if abs(B) <= 1e-14 * scale:
            raise NoRealRootError(f"degenerate root system at {where}")
        return [-C / B]
    disc = B * B - 4.0 * A * C
    if disc < 0.0:
        if disc < -1e-12 * scale * scale:
            raise NoRealRootError(f"negative discriminant at {where}")
        disc = 0.0
    sq = math.sqrt(disc)
    qq = -0.5 * (B + math.copysign(sq, B)) if B != 0.0 else -0.5 * sq
    if qq == 0.0:
        return [0.0]
    return [qq / A, C / qq]


class _FlatEllRule(_QuadRule):
    """beta^2 g^2 - alpha^2 f^2 = a^2 (u+c)^2 with f'^2 - g'^2 = 1."""

    name = "flat-ell-i"

    def __init__(self, a, c, alpha, beta):
        self.a2 = a * a
        self.c = c
        self.al2 = alpha * alpha
        self.be2 = beta * beta

    def candidates(self, u, f, g):
        p, q, r = self.al2 * f, self.be2 * g, self.a2 * (u + self.c)
        if abs(q) < 1e-14:
            raise NoRealRootError(f"{self.name}: g ~ 0 at u={u}")
        roots = _quad_roots(q * q - p * p, -2.0 * p * r, -(r * r + q * q),
                            f"{self.name} u={u}")
        return [(fp, (r + p * fp) / q) for fp in roots]

    def second(self, u, f, g, fp, gp):
        rhs = self.a2 - self.be2 * gp * gp + self.al2 * fp * fp
        det = self.be2 * g * fp - self.al2 * f * gp
        if abs(det) < 1e-14:
            raise NoRealRootError(f"{self.name}: singular jet recovery at u={u}")
        return rhs * gp / det, rhs * fp / det

    def constraint(self, u, f, g):
        w = u + self.c
        return self.be2 * g * g - self.al2 * f * f - self.a2 * w * w

    def speed_residual(self, fp, gp):
        return abs(fp * fp - gp * gp - 1.0)

    def derive_g0(self, u0, f0):
        w = u0 + self.c
        val = (self.a2 * w * w + self.al2 * f0 * f0) / self.be2
        return math.sqrt(val)


class _FlatHypRule(_QuadRule):
    """alpha^2 f^2 + beta^2 g^2 = a^2 (u+c)^2 with f'^2 + g'^2 = 1."""

    name = "flat-hyp-i"

    def __init__(self, a, c, alpha, beta):
        self.a2 = a * a
        self.c = c
        self.al2 = alpha * alpha
        self.be2 = beta * beta

    def candidates(self, u, f, g):
        p, q, r = self.al2 * f, self.be2 * g, self.a2 * (u + self.c)
        if abs(q) < 1e-14:
            raise NoRealRootError(f"{self.name}: g ~ 0 at u={u}")
        roots = _quad_roots(q * q + p * p, -2.0 * p * r, r * r - q * q,
                            f"{self.name} u={u}")
        return [(fp, (r - p * fp) / q) for fp in roots]

    def second(self, u, f, g, fp, gp):
        rhs = self.a2 - self.al2 * fp * fp - self.be2 * gp * gp
        det = self.al2 * f * gp - self.be2 * g * fp
        if abs(det) < 1e-14:
            raise NoRealRootError(f"{self.name}: singular jet recovery at u={u}")
        return rhs * gp / det, -rhs * fp / det

    def constraint(self, u, f, g):
        w = u + self.c
        return self.al2 * f * f + self.be2 * g * g - self.a2 * w * w

    def speed_residual(self, fp, gp):
        return abs(fp * fp + gp * gp - 1.0)

    def derive_g0(self, u0, f0):
        w = u0 + self.c
        val = (self.a2 * w * w - self.al2 * f0 * f0) / self.be2
        if val <= 0.0:
            raise ParamError(
                f"{self.name}: no real g0 for f0={f0} at u0={u0}")
        return math.sqrt(val)


class _FncEllRule(_QuadRule):
    """f f' - g g' = C sqrt(beta^2 g^2 - alpha^2 f^2), unit speed f'^2 - g'^2 = 1."""

    name = "fnc-ell-ii"

    def __init__(self, C, alpha, beta):
        self.C = C
        self.al2 = alpha * alpha
        self.be2 = beta * beta

    def _w(self, f, g):
        w = self.be2 * g * g - self.al2 * f * f
        if w <= 0.0:
            raise NoRealRootError(f"{self.name}: beta^2 g^2 - alpha^2 f^2 <= 0")
        return w

    def candidates(self, u, f, g):
        r = self.C * math.sqrt(self._w(f, g))
        p, q = f, g
        if abs(q) < 1e-14:
            raise NoRealRootError(f"{self.name}: g ~ 0 at u={u}")
        roots = _quad_roots(q * q - p * p, 2.0 * p * r, -(r * r + q * q),
                            f"{self.name} u={u}")
        return [(fp, (p * fp - r) / q) for fp in roots]

    def second(self, u, f, g, fp, gp):
        w = self._w(f, g)
        rhs = self.C * (self.be2 * g * gp - self.al2 * f * fp) / math.sqrt(w) - 1.0
        det = g * fp - f * gp
        if abs(det) < 1e-14:
            raise NoRealRootError(f"{self.name}: singular jet recovery at u={u}")
        return -rhs * gp / det, -rhs * fp / det

    def speed_residual(self, fp, gp):
        return abs(fp * fp - gp * gp - 1.0)


class _FncHypRule(_QuadRule):
    """f f' + g g' = C sqrt(alpha^2 f^2 + beta^2 g^2), unit speed f'^2 + g'^2 = 1."""

    name = "fnc-hyp-ii"

    def __init__(self, C, alpha, beta):
        self.C = C
        self.al2 = alpha * alpha
        self.be2 = beta * beta

    def _v(self, f, g):
        v = self.al2 * f * f + self.be2 * g * g
        if v <= 0.0:
            raise NoRealRootError(f"{self.name}: alpha^2 f^2 + beta^2 g^2 <= 0")
        return v

    def candidates(self, u, f, g):
        r = self.C * math.sqrt(self._v(f, g))
        p, q = f, g
        if abs(q) < 1e-14:
            raise NoRealRootError(f"{self.name}: g ~ 0 at u={u}")
        roots = _quad_roots(q * q + p * p, -2.0 * p * r, r * r - q * q,
                            f"{self.name} u={u}")
        return [(fp, (r - p * fp) / q) for fp in roots]

    def second(self, u, f, g, fp, gp):
        v = self._v(f, g)
        rhs = self.C * (self.al2 * f * fp + self.be2 * g * gp) / math.sqrt(v) - 1.0
        det = f * gp - g * fp
        if abs(det) < 1e-14:
            raise NoRealRootError(f"{self.name}: singular jet recovery at u={u}")
        return rhs * gp / det, -rhs * fp / det

    def speed_residual(self, fp, gp):
        return abs(fp * fp + gp * gp - 1.0)


class _MinHyp3Rule(_QuadRule):
    """arctan(f'/g') = c - arctan(f/g): explicit unit-speed direction field."""

    name = "min-hyp-iii"

    def __init__(self, c):
        self.c = c

    def candidates(self, u, f, g):
        if f == 0.0 and g == 0.0:
            raise NoRealRootError(f"{self.name}: curve through the origin at u={u}")
        t = self.c - math.atan2(f, g)
        return [(math.sin(t), math.cos(t))]

    def second(self, u, f, g, fp, gp):
        dphi = (fp * g - f * gp) / (f * f + g * g)
        return -gp * dphi, fp * dphi

    def speed_residual(self, fp, gp):
        return abs(fp * fp + gp * gp - 1.0)


class _TrackingField:
    """State-derivative map that follows one root branch continuously."""

    def __init__(self, rule: _QuadRule, initial_root: str):
        self.rule = rule
        self.initial_root = initial_root
        self.last: float | None = None

    def __call__(self, u, y):
        cands = self.rule.candidates(float(u), float(y[0]), float(y[1]))
        if self.last is None:
            cands = sorted(cands, key=lambda c: c[0])
            pick = cands[-1] if self.initial_root == "larger" else cands[0]
        else:
            pick = min(cands, key=lambda c: abs(c[0] - self.last))
        self.last = pick[0]
        return np.array(pick)


@dataclass
class SampledMeridian:
    """Dense-output carrier for an implicitly defined meridian."""

    traj: Trajectory
    rule: _QuadRule
    residuals: np.ndarray        # per-knot |algebraic constraint|
    speed_residuals: np.ndarray  # per-knot |f'^2 -/+ g'^2 - 1|
    tol: float

    @property
    def knot_roots(self) -> np.ndarray:
        """Chosen f' root at every knot (branch-continuity diagnostics)."""
        return self.traj.dys[:, 0]

    def state(self, u: float):
        try:
            return hermite_eval(self.traj, u)
        except RangeError as exc:
            raise DomainError(str(exc)) from None

    def jet_at(self, u: float) -> MeridianJet:
        y = self.state(u)
        f, g = float(y[0]), float(y[1])
        i = int(np.searchsorted(self.traj.ts, u, side="right")) - 1
        i = min(max(i, 0), len(self.traj.ts) - 1)
        ref = float(self.traj.dys[i][0])
        cands = self.rule.candidates(float(u), f, g)
        fp, gp = min(cands, key=lambda c: abs(c[0] - ref))
        fpp, gpp = self.rule.second(float(u), f, g, fp, gp)
        return MeridianJet(Jet2(f, fp, fpp), Jet2(g, gp, gpp))


def _rule_for(desc: FamilyDescriptor) -> _QuadRule:
    if desc.case == "flat-ell-i":
        return _FlatEllRule(_get(desc.params, "a", desc.case),
                            _get(desc.params, "c", desc.case),
                            desc.alpha, desc.beta)
    if desc.case == "flat-hyp-i":
        return _FlatHypRule(_get(desc.params, "a", desc.case),
                            _get(desc.params, "c", desc.case),
                            desc.alpha, desc.beta)
    if desc.case == "fnc-ell-ii":
        return _FncEllRule(_get(desc.params, "C", desc.case),
                           desc.alpha, desc.beta)
    if desc.case == "fnc-hyp-ii":
        return _FncHypRule(_get(desc.params, "C", desc.case),
                           desc.alpha, desc.beta)
    if desc.case == "min-hyp-iii":
        return _MinHyp3Rule(_get(desc.params, "c", desc.case))
    raise ParamError(f"{desc.case} is not an integrated family")


def integrate_constrained(rule, u0: float, state0: tuple,
                          span: tuple, tol: float = DEFAULT_INTEGRATION_TOL,
                          initial_root: str = "larger") -> SampledMeridian:
    """Advance (f, g) across span by per-step root solving inside RK4.

    Accepts either a derivative rule or the FamilyDescriptor of an
    integrated case.  state0 must satisfy the algebraic constraint at u0
    within tol and the root system must be real there.  The step starts at
    span/1024 and is halved until the max knot constraint residual is at
    most tol.
    """
    if isinstance(rule, FamilyDescriptor):
        rule = _rule_for(rule)
    span = (float(span[0]), float(span[1]))
    if not (span[0] == u0):
        raise ParamError(f"{rule.name}: state0 must be given at span start")
    f0, g0 = float(state0[0]), float(state0[1])
    c0 = rule.constraint(u0, f0, g0)
    scale = max(1.0, abs(f0), abs(g0)) ** 2
    if abs(c0) > tol * scale:
        raise ParamError(
            f"{rule.name}: initial state violates constraint "
            f"(residual {abs(c0):.3e} > tol {tol * scale:.3e})")
    rule.candidates(u0, f0, g0)  # real-root precondition; may raise
    h = (span[1] - span[0]) / _INITIAL_STEPS
    last_res = math.inf
    for attempt in range(_MAX_HALVINGS + 1):
        field = _TrackingField(rule, initial_root)
        traj = rk4_integrate(field, (f0, g0), span[0], span[1], h / (2 ** attempt))
        res = np.array([abs(rule.constraint(t, y[0], y[1]))
                        for t, y in zip(traj.ts, traj.ys)])
        speed = np.array([rule.speed_residual(d[0], d[1]) for d in traj.dys])
        last_res = float(res.max())
        if last_res <= tol:
            return SampledMeridian(traj, rule, res, speed, tol)
    if last_res <= 10.0 * tol:
        return SampledMeridian(traj, rule, res, speed, tol)
    raise ConstraintDriftError(
        f"{rule.name}: constraint residual {last_res:.3e} exceeds 10*tol "
        f"after {_MAX_HALVINGS} halvings")


class _SampledFamily(MeridianFamily):
    def __init__(self, desc, kind, rule):
        super().__init__(desc, kind)
        if desc.interval is None:
            raise ParamError(f"{desc.case}: integrated family needs an interval")
        if desc.state0 is None:
            raise ParamError(f"{desc.case}: integrated family needs state0")
        self._rule = rule
        self._root = desc.root
        self._tol = desc.tol
        f0, g0 = desc.state0
        if g0 is None:
            g0 = rule.derive_g0(desc.interval[0], f0)
        self._state0 = (float(f0), float(g0))
        self._sampled: SampledMeridian | None = None

    @property
    def state0(self):
        return self._state0

    def ensure_realized(self) -> SampledMeridian:
        if self._sampled is None:
            self._sampled = integrate_constrained(
                self._rule, self.interval[0], self._state0, self.interval,
                self._tol, self._root)
        return self._sampled

    def jet(self, u: float) -> MeridianJet:
        self._check_interval(u)
        mj = self.ensure_realized().jet_at(float(u))
        _check_regular(self.case, u, mj.f, mj.g)
        return mj


# ---------------------------------------------------------------------------
# Closed-form builders

def _require(cond: bool, msg: str):
    if not cond:
        raise ParamError(msg)


def _get(params: dict, name: str, case: str) -> float:
    try:
        return float(params[name])
    except KeyError:
        raise ParamError(f"{case}: missing parameter {name!r}") from None
    except (TypeError, ValueError):
        raise ParamError(f"{case}: parameter {name!r} must be a number") from None


def _power_law(case, c, expo):
    def jet_fn(u):
        if u <= 0.0:
            raise DomainError(f"{case}: power-law profile needs u > 0 (got {u})")
        uj = Jet2.variable(u)
        return c * uj ** expo, uj
    return jet_fn


def _build_min_ell_i(desc):
    c = _get(desc.params, "c", desc.case)
    _require(c != 0.0, "min-ell-i: c must be nonzero")
    _require(desc.alpha != desc.beta, "min-ell-i: requires alpha != beta")
    expo = desc.sign * desc.alpha / desc.beta
    fam = _ClosedFormFamily(desc, "elliptic", _power_law(desc.case, c, expo))
    fam.diagnostics.append(
        "admissible domain is empty: f'^2 - g'^2 > 0 and "
        "alpha^2 f^2 - beta^2 g^2 < 0 are contradictory on this family")
    return fam


def _build_min_hyp_i(desc):
    c = _get(desc.params, "c", desc.case)
    _require(c != 0.0, "min-hyp-i: c must be nonzero")
    _require(desc.alpha != desc.beta, "min-hyp-i: requires alpha != beta")
    expo = -desc.sign * desc.alpha / desc.beta
    return _ClosedFormFamily(desc, "hyperbolic", _power_law(desc.case, c, expo))


def _build_min_ell_ii(desc):
    A = _get(desc.params, "A", desc.case)
    C = _get(desc.params, "C", desc.case)
    _require(A > 0.0, "min-ell-ii: A must be positive")
    _require(desc.alpha != desc.beta, "min-ell-ii: requires alpha != beta")
    k = desc.sign * desc.alpha / desc.beta
    sa = math.sqrt(A)
    fa, fb = sa / desc.alpha, sa / desc.beta

    def jet_fn(theta):
        tj = Jet2.variable(theta)
        return fa * jsin(k * tj + C), fb * jsin(tj)

    fam = _ClosedFormFamily(desc, "elliptic", jet_fn)
    if desc.alpha < desc.beta:
        fam.diagnostics.append(
            "min-ell-ii normally arises with alpha > beta (A > 0); "
            "the admissibility scan decides the actual domain")
    return fam


def _build_min_ell_iii(desc):
    a = _get(desc.params, "a", desc.case)
    b = _get(desc.params, "b", desc.case)
    _require(a != 0.0, "min-ell-iii: a must be nonzero")
    _require(desc.alpha == desc.beta, "min-ell-iii: requires alpha == beta")

    def jet_fn(d):
        dj = Jet2.variable(d)
        s = jsqrt(a * dj * dj + b)
        return 0.5 * (s + dj), 0.5 * (s - dj)

    fam = _ClosedFormFamily(desc, "elliptic", jet_fn)
    if not (a < 0.0 and b > 0.0):
        fam.diagnostics.append(
            "admissible points require a < 0 and b > 0; "
            "the admissibility scan will likely come back empty")
    return fam


def _build_min_hyp_ii(desc):
    A = _get(desc.params, "A", desc.case)
    c = _get(desc.params, "c", desc.case)
    _require(A != 0.0, "min-hyp-ii: A must be nonzero")
    _require(desc.alpha != desc.beta, "min-hyp-ii: requires alpha != beta")
    k = desc.sign * desc.alpha / desc.beta
    sa = math.sqrt(abs(A))
    fa, fb = sa / desc.alpha, sa / desc.beta

    if A > 0.0:
        def jet_fn(psi):
            pj = Jet2.variable(psi)
            return fa * jcosh(k * pj + c), fb * jsinh(pj)
    else:
        def jet_fn(psi):
            pj = Jet2.variable(psi)
            return fa * jsinh(k * pj + c), fb * jcosh(pj)

    return _ClosedFormFamily(desc, "hyperbolic", jet_fn)


def _build_pnmcv_ell(desc):
    C = _get(desc.params, "C", desc.case)
    _require(C != 0.0, "pnmcv-ell: C must be nonzero")
    C2 = C * C
    sgn = float(desc.sign)

    def jet_fn(u):
        uj = Jet2.variable(u)
        return sgn * jsqrt(uj * uj - C2), uj

    return _ClosedFormFamily(desc, "elliptic", jet_fn)


def _build_pnmcv_hyp(desc):
    C = _get(desc.params, "C", desc.case)
    _require(C != 0.0, "pnmcv-hyp: C must be nonzero")
    C2 = C * C
    sgn = float(desc.sign)

    def jet_fn(u):
        uj = Jet2.variable(u)
        return sgn * jsqrt(C2 - uj * uj), uj

    return _ClosedFormFamily(desc, "hyperbolic", jet_fn)


def _build_flat_ell_ii(desc):
    C = _get(desc.params, "C", desc.case)
    _require(C < 0.0, "flat-ell-ii: C must be negative")
    s = math.sqrt(-C)
    fa, fb = s / desc.alpha, s / desc.beta

    def jet_fn(t):
        tj = Jet2.variable(t)
        return fa * jsinh(tj), fb * jcosh(tj)

    return _ClosedFormFamily(desc, "elliptic", jet_fn)


def _build_flat_hyp_ii(desc):
    C = _get(desc.params, "C", desc.case)
    _require(C > 0.0, "flat-hyp-ii: C must be positive")
    s = math.sqrt(C)
    fa, fb = s / desc.alpha, s / desc.beta

    def jet_fn(t):
        tj = Jet2.variable(t)
        return fa * jcos(tj), fb * jsin(tj)

    return _ClosedFormFamily(desc, "hyperbolic", jet_fn)


def _linear_profile(c):
    def jet_fn(u):
        uj = Jet2.variable(u)
        return c * uj, uj
    return jet_fn


def _build_fnc_ell_i(desc):
    c = _get(desc.params, "c", desc.case)
    ratio2 = (desc.beta / desc.alpha) ** 2
    _require(1.0 < c * c < ratio2,
             f"fnc-ell-i: needs 1 < c^2 < beta^2/alpha^2 "
             f"(c^2={c*c:.6g}, beta^2/alpha^2={ratio2:.6g})")
    return _ClosedFormFamily(desc, "elliptic", _linear_profile(c))


def _build_fnc_hyp_i(desc):
    c = _get(desc.params, "c", desc.case)
    _require(c != 0.0, "fnc-hyp-i: c must be nonzero")
    _require(desc.alpha != desc.beta, "fnc-hyp-i: requires alpha != beta")
    return _ClosedFormFamily(desc, "hyperbolic", _linear_profile(c))


def _build_custom(desc):
    try:
        f_expr = JetExpr(str(desc.params["f"]))
        g_expr = JetExpr(str(desc.params["g"]))
    except KeyError as exc:
        raise ParamError(f"custom: missing expression for {exc.args[0]!r}") from None
    kind = desc.params.get("kind", "elliptic")
    if kind not in ("elliptic", "hyperbolic"):
        raise ParamError(f"custom: kind must be elliptic|hyperbolic, got {kind!r}")

    def jet_fn(u):
        return f_expr(u), g_expr(u)

    return _ClosedFormFamily(desc, kind, jet_fn)


def _build_flat_ell_i(desc):
    a = _get(desc.params, "a", desc.case)
    c = _get(desc.params, "c", desc.case)
    _require(a != 0.0, "flat-ell-i: a must be nonzero")
    rule = _FlatEllRule(a, c, desc.alpha, desc.beta)
    return _SampledFamily(desc, "elliptic", rule)


def _build_flat_hyp_i(desc):
    a = _get(desc.params, "a", desc.case)
    c = _get(desc.params, "c", desc.case)
    _require(a != 0.0, "flat-hyp-i: a must be nonzero")
    rule = _FlatHypRule(a, c, desc.alpha, desc.beta)
    return _SampledFamily(desc, "hyperbolic", rule)


def _build_fnc_ell_ii(desc):
    C = _get(desc.params, "C", desc.case)
    _require(C != 0.0, "fnc-ell-ii: C must be nonzero")
    rule = _FncEllRule(C, desc.alpha, desc.beta)
    return _SampledFamily(desc, "elliptic", rule)


def _build_fnc_hyp_ii(desc):
    C = _get(desc.params, "C", desc.case)
    _require(C != 0.0, "fnc-hyp-ii: C must be nonzero")
    rule = _FncHypRule(C, desc.alpha, desc.beta)
    return _SampledFamily(desc, "hyperbolic", rule)


def _build_min_hyp_iii(desc):
    c = _get(desc.params, "c", desc.case)
    _require(desc.alpha == desc.beta, "min-hyp-iii: requires alpha == beta")
    rule = _MinHyp3Rule(c)
    return _SampledFamily(desc, "hyperbolic", rule)


_BUILDERS = {
    "min-ell-i": _build_min_ell_i,
    "min-ell-ii": _build_min_ell_ii,
    "min-ell-iii": _build_min_ell_iii,
    "min-hyp-i": _build_min_hyp_i,
    "min-hyp-ii": _build_min_hyp_ii,
    "min-hyp-iii": _build_min_hyp_iii,
    "pnmcv-ell": _build_pnmcv_ell,
    "pnmcv-hyp": _build_pnmcv_hyp,
    "flat-ell-i": _build_flat_ell_i,
    "flat-ell-ii": _build_flat_ell_ii,
    "flat-hyp-i": _build_flat_hyp_i,
    "flat-hyp-ii": _build_flat_hyp_ii,
    "fnc-ell-i": _build_fnc_ell_i,
    "fnc-ell-ii": _build_fnc_ell_ii,
    "fnc-hyp-i": _build_fnc_hyp_i,
    "fnc-hyp-ii": _build_fnc_hyp_ii,
    "custom": _build_custom,
}


def build_family(desc: FamilyDescriptor) -> MeridianFamily:
    """Validate descriptor constraints and return the family evaluator.

    Raises ParamError on constraint violations.  Families whose admissible
    domain is known to be empty construct fine and carry a diagnostic note;
    the admissibility scan is the authority on the actual domain.
    """
    if desc.case not in _BUILDERS:
        raise ParamError(f"unknown family case {desc.case!r}")
    if not (math.isfinite(desc.alpha) and desc.alpha > 0.0):
        raise ParamError("alpha must be a positive finite number")
    if not (math.isfinite(desc.beta) and desc.beta > 0.0):
        raise ParamError("beta must be a positive finite number")
    if desc.sign not in (1, -1):
        raise ParamError("sign branch must be +1 or -1")
    if desc.root not in ("larger", "smaller"):
        raise ParamError("root branch must be 'larger' or 'smaller'")
    for key, val in desc.params.items():
        if isinstance(val, (int, float)) and not math.isfinite(float(val)):
            raise ParamError(f"{desc.case}: parameter {key!r} must be finite")
    if desc.interval is not None:
        lo, hi = desc.interval
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ParamError(f"{desc.case}: bad interval {desc.interval}")
    return _BUILDERS[desc.case](desc)


def meridian_jet(fam: MeridianFamily, u: float) -> MeridianJet:
    """2-jets of (f, g) at u; DomainError at branch points / outside interval."""
    return fam.jet(u)


# ---------------------------------------------------------------------------
# Catalog of the classified cases with canned, admissible defaults.

_SQ03 = math.sqrt(0.3)

FAMILY_CATALOG: dict[str, CatalogEntry] = {
    "min-ell-i": CatalogEntry(
        "min-ell-i", "elliptic", "closed",
        "c != 0; alpha != beta; sign picks exponent +/- alpha/beta. "
        "Admissible domain is empty for every parameter choice.",
        {"c": 1.0}, 2.0, 1.0, (0.1, 10.0)),
    "min-ell-ii": CatalogEntry(
        "min-ell-ii", "elliptic", "closed",
        "A > 0, C phase constant; alpha != beta; sign picks the +/- branch. "
        "Angle-parametrized.",
        {"A": 1.0, "C": 0.3}, 2.0, 1.0, (1.05, 1.90)),
    "min-ell-iii": CatalogEntry(
        "min-ell-iii", "elliptic", "closed",
        "a != 0, b; alpha == beta; admissible points need a < 0, b > 0 "
        "(parameter is d = f - g, domain -sqrt(-b/a) < d < 0).",
        {"a": -1.0, "b": 1.0}, 1.0, 1.0, (-0.9, -0.1)),
    "min-hyp-i": CatalogEntry(
        "min-hyp-i", "hyperbolic", "closed",
        "c != 0; alpha != beta; sign=+1 gives exponent -alpha/beta.",
        {"c": 1.0}, 2.0, 1.0, (0.5, 3.0)),
    "min-hyp-ii": CatalogEntry(
        "min-hyp-ii", "hyperbolic", "closed",
        "A != 0 (either sign), c additive constant; alpha != beta; "
        "hyperbolic-angle-parametrized.",
        {"A": 1.0, "c": 0.2}, 2.0, 1.0, (0.1, 1.5)),
    "min-hyp-iii": CatalogEntry(
        "min-hyp-iii", "hyperbolic", "ode",
        "c angle constant; alpha == beta; unit-speed direction-field ODE "
        "from state0 = (f0, g0).",
        {"c": 0.7}, 1.0, 1.0, (0.0, 1.2), (0.3, 1.0)),
    "pnmcv-ell": CatalogEntry(
        "pnmcv-ell", "elliptic", "closed",
        "C != 0; f = sign*sqrt(u^2 - C^2), g = u on |u| > |C|.",
        {"C": 2.0}, 1.0, 3.0, (2.1, 6.0)),
    "pnmcv-hyp": CatalogEntry(
        "pnmcv-hyp", "hyperbolic", "closed",
        "C != 0; f = sign*sqrt(C^2 - u^2), g = u on |u| < |C|.",
        {"C": 2.0}, 1.3, 0.7, (0.2, 1.8)),
    "flat-ell-i": CatalogEntry(
        "flat-ell-i", "elliptic", "ode",
        "a != 0, c; implicit beta^2 g^2 - alpha^2 f^2 = a^2 (u+c)^2 with "
        "unit speed; state0 = (f0, g0) on the constraint (g0 may be omitted).",
        {"a": 0.5, "c": 0.0}, 1.0, 1.0, (1.0, 1.5), (1.0, math.sqrt(1.25))),
    "flat-ell-ii": CatalogEntry(
        "flat-ell-ii", "elliptic", "closed",
        "C < 0; alpha^2 f^2 - beta^2 g^2 = C, hyperbolic-angle-parametrized.",
        {"C": -4.0}, 1.0, 1.0, (-1.0, 1.0)),
    "flat-hyp-i": CatalogEntry(
        "flat-hyp-i", "hyperbolic", "ode",
        "a != 0, c; implicit alpha^2 f^2 + beta^2 g^2 = a^2 (u+c)^2 with "
        "unit speed; state0 = (f0, g0) on the constraint (g0 may be omitted).",
        {"a": 0.8, "c": 0.0}, 1.2, 0.8, (1.0, 1.6), (_SQ03 / 1.2, None)),
    "flat-hyp-ii": CatalogEntry(
        "flat-hyp-ii", "hyperbolic", "closed",
        "C > 0; alpha^2 f^2 + beta^2 g^2 = C, circle-parametrized.",
        {"C": 4.0}, 1.5, 0.75, (0.1, 1.2)),
    "fnc-ell-i": CatalogEntry(
        "fnc-ell-i", "elliptic", "closed",
        "1 < c^2 < beta^2/alpha^2 (forces alpha < beta); f = c*g, g = u.",
        {"c": 1.2}, 1.0, 2.0, (0.5, 3.0)),
    "fnc-ell-ii": CatalogEntry(
        "fnc-ell-ii", "elliptic", "ode",
        "C != 0; unit speed with f f' - g g' = C*sqrt(f'^2-g'^2)*"
        "sqrt(beta^2 g^2 - alpha^2 f^2); state0 = (f0, g0).",
        {"C": 0.3}, 1.0, 2.0, (0.0, 0.5), (0.0, 1.0)),
    "fnc-hyp-i": CatalogEntry(
        "fnc-hyp-i", "hyperbolic", "closed",
        "c != 0; alpha != beta; f = c*g, g = u.",
        {"c": 0.8}, 2.0, 1.0, (0.5, 3.0)),
    "fnc-hyp-ii": CatalogEntry(
        "fnc-hyp-ii", "hyperbolic", "ode",
        "C != 0; unit speed with f f' + g g' = C*sqrt(f'^2+g'^2)*"
        "sqrt(alpha^2 f^2 + beta^2 g^2); state0 = (f0, g0).",
        {"C": 0.4}, 1.0, 2.0, (0.0, 1.0), (0.6, 0.8)),
    "custom": CatalogEntry(
        "custom", "elliptic", "closed",
        "f, g: closed-form expressions in u (params f=..., g=..., "
        "kind=elliptic|hyperbolic); interval required.",
        {"f": "u", "g": "u"}, 1.0, 1.0, (0.5, 3.0)),
}


def classified_case_ids() -> list[str]:
    """The sixteen classified cases, in catalog order (custom excluded)."""
    return [k for k in FAMILY_CATALOG if k != "custom"]


def descriptor_from_catalog(case: str, overrides: dict | None = None,
                            **kw) -> FamilyDescriptor:
    """Descriptor pre-filled with the catalog defaults for a case."""
    try:
        entry = FAMILY_CATALOG[case]
    except KeyError:
        raise ParamError(f"unknown family case {case!r}") from None
    params = dict(entry.defaults)
    if overrides:
        params.update(overrides)
    return FamilyDescriptor(
        case=case,
        params=params,
        alpha=kw.pop("alpha", entry.default_alpha),
        beta=kw.pop("beta", entry.default_beta),
        interval=kw.pop("interval", entry.default_interval),
        state0=kw.pop("state0", entry.default_state0),
        **kw)
