"""Rotational-surface geometry: frames, fundamental forms, invariants.

Two surface kinds are supported.  The elliptic kind rotates the profile
curve (f(u), g(u)) circularly in the x1x2- and x3x4-planes with speeds
alpha, beta; the hyperbolic kind applies hyperbolic rotations in the
x1x3- and x2x4-planes.  At admissible points (E > 0, G < 0) the induced
metric is Lorentzian, the tangent frame {x, y} and normal frame {n1, n2}
are pseudo-orthonormal, and all invariants are rational expressions in
(f, f', f'', g, g', g'') evaluated from meridian jets, so no numerical
differentiation enters here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import GrsError, InadmissiblePointError, ParamError
from .meridians import MeridianFamily
from .pe4 import PEVector4, inner

DEFAULT_ADMISSIBILITY_EPS = 1e-10


class SurfaceKind(Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class SurfaceSpec:
    kind: SurfaceKind
    alpha: float
    beta: float
    meridian: MeridianFamily

    def __post_init__(self):
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise ParamError("alpha must be positive and finite")
        if not (self.beta > 0.0 and math.isfinite(self.beta)):
            raise ParamError("beta must be positive and finite")


def surface_from_family(fam: MeridianFamily) -> SurfaceSpec:
    """SurfaceSpec matching the family's own kind and rotation speeds."""
    kind = SurfaceKind.ELLIPTIC if fam.kind == "elliptic" else SurfaceKind.HYPERBOLIC
    return SurfaceSpec(kind, fam.alpha, fam.beta, fam)


@dataclass(frozen=True, slots=True)
class PointJets:
    z: PEVector4
    z_u: PEVector4
    z_v: PEVector4
    z_uu: PEVector4
    z_uv: PEVector4
    z_vv: PEVector4


@dataclass(frozen=True, slots=True)
class FirstFundamental:
    E: float
    F: float
    G: float
    admissible: bool


@dataclass(frozen=True, slots=True)
class Frame:
    x: PEVector4
    y: PEVector4
    n1: PEVector4
    n2: PEVector4


@dataclass(frozen=True, slots=True)
class GeoFns:
    """The five nonzero geometric functions of a rotational surface."""

    nu1: float
    nu2: float
    mu: float
    gamma2: float
    beta2: float


@dataclass(frozen=True, slots=True)
class SecondFundamental:
    """Coefficient pairs of sigma along (n1, n2) on the frame basis."""

    xx: tuple
    xy: tuple
    yy: tuple


@dataclass(frozen=True, slots=True)
class Curvatures:
    K: float
    kappa: float
    h_coeff: float
    H_norm2: float


@dataclass(frozen=True)
class ShapeOperators:
    A1: np.ndarray
    A2: np.ndarray
    trA1A2: float
    allied_coeff: float


@dataclass(frozen=True, slots=True)
class InvariantRecord:
    u: float
    E: float
    F: float
    G: float
    nu1: float
    nu2: float
    mu: float
    gamma2: float
    beta2: float
    K: float
    kappa: float
    h_coeff: float
    H_norm2: float
    trA1A2: float
    admissible: bool


# ---------------------------------------------------------------------------
# Position jets and first fundamental form

def position_jets(spec: SurfaceSpec, u: float, v: float) -> PointJets:
    """All first and second partials of the immersion, analytically."""
    mj = spec.meridian.jet(u)
    f, fp, fpp = mj.f.val, mj.f.d1, mj.f.d2
    g, gp, gpp = mj.g.val, mj.g.d1, mj.g.d2
    a, b = spec.alpha, spec.beta
    if spec.kind is SurfaceKind.ELLIPTIC:
        ca, sa = math.cos(a * v), math.sin(a * v)
        cb, sb = math.cos(b * v), math.sin(b * v)
        return PointJets(
            z=PEVector4(f * ca, f * sa, g * cb, g * sb),
            z_u=PEVector4(fp * ca, fp * sa, gp * cb, gp * sb),
            z_v=PEVector4(-a * f * sa, a * f * ca, -b * g * sb, b * g * cb),
            z_uu=PEVector4(fpp * ca, fpp * sa, gpp * cb, gpp * sb),
            z_uv=PEVector4(-a * fp * sa, a * fp * ca, -b * gp * sb, b * gp * cb),
            z_vv=PEVector4(-a * a * f * ca, -a * a * f * sa,
                           -b * b * g * cb, -b * b * g * sb))
    ca, sa = math.cosh(a * v), math.sinh(a * v)
    cb, sb = math.cosh(b * v), math.sinh(b * v)
    return PointJets(
        z=PEVector4(f * ca, g * cb, f * sa, g * sb),
        z_u=PEVector4(fp * ca, gp * cb, fp * sa, gp * sb),
        z_v=PEVector4(a * f * sa, b * g * sb, a * f * ca, b * g * cb),
        z_uu=PEVector4(fpp * ca, gpp * cb, fpp * sa, gpp * sb),
        z_uv=PEVector4(a * fp * sa, b * gp * sb, a * fp * ca, b * gp * cb),
        z_vv=PEVector4(a * a * f * ca, b * b * g * cb, a * a * f * sa,
                       b * b * g * sb))


def first_fundamental(spec: SurfaceSpec, u: float, v: float,
                      eps: float = DEFAULT_ADMISSIBILITY_EPS) -> FirstFundamental:
    """E, F, G by direct inner products, plus the admissibility flag."""
    pj = position_jets(spec, u, v)
    E = inner(pj.z_u, pj.z_u)
    F = inner(pj.z_u, pj.z_v)
    G = inner(pj.z_v, pj.z_v)
    return FirstFundamental(E, F, G, E > eps and G < -eps)


def _meridian_scalars(spec: SurfaceSpec, u: float):
    """(f, f', f'', g, g', g'', E, W) with W = -G, from meridian jets."""
    mj = spec.meridian.jet(u)
    f, fp, fpp = mj.f.val, mj.f.d1, mj.f.d2
    g, gp, gpp = mj.g.val, mj.g.d1, mj.g.d2
    a2, b2 = spec.alpha ** 2, spec.beta ** 2
    if spec.kind is SurfaceKind.ELLIPTIC:
        E = fp * fp - gp * gp
        W = b2 * g * g - a2 * f * f
    else:
        E = fp * fp + gp * gp
        W = a2 * f * f + b2 * g * g
    return f, fp, fpp, g, gp, gpp, E, W


def _require_admissible(spec, u, E, W, eps):
    if not (E > eps and W > eps):
        raise InadmissiblePointError(
            f"{spec.kind.value} surface inadmissible at u={u}: "
            f"E={E:.6g}, G={-W:.6g}")


# ---------------------------------------------------------------------------
# Frames

def frames(spec: SurfaceSpec, u: float, v: float,
           eps: float = DEFAULT_ADMISSIBILITY_EPS) -> Frame:
    """Pseudo-orthonormal tangent and normal frames at an admissible point.

    <x,x> = <n1,n1> = 1 and <y,y> = <n2,n2> = -1 for both kinds; positive
    square roots are taken throughout, so the orientation follows the signs
    of f, g, f', g'.
    """
    mj = spec.meridian.jet(u)
    f, fp = mj.f.val, mj.f.d1
    g, gp = mj.g.val, mj.g.d1
    a, b = spec.alpha, spec.beta
    _, _, _, _, _, _, E, W = _meridian_scalars(spec, u)
    _require_admissible(spec, u, E, W, eps)
    se, sw = math.sqrt(E), math.sqrt(W)

    pj = position_jets(spec, u, v)
    x = pj.z_u * (1.0 / se)
    y = pj.z_v * (1.0 / sw)
    if spec.kind is SurfaceKind.ELLIPTIC:
        ca, sa = math.cos(a * v), math.sin(a * v)
        cb, sb = math.cos(b * v), math.sin(b * v)
        n1 = PEVector4(b * g * sa, -b * g * ca, a * f * sb, -a * f * cb) * (1.0 / sw)
        n2 = PEVector4(gp * ca, gp * sa, fp * cb, fp * sb) * (1.0 / se)
    else:
        ca, sa = math.cosh(a * v), math.sinh(a * v)
        cb, sb = math.cosh(b * v), math.sinh(b * v)
        n1 = PEVector4(gp * ca, -fp * cb, gp * sa, -fp * sb) * (1.0 / se)
        n2 = PEVector4(b * g * sa, -a * f * sb, b * g * ca, -a * f * cb) * (1.0 / sw)
    return Frame(x, y, n1, n2)


# ---------------------------------------------------------------------------
# Geometric functions and second fundamental form

def geometric_functions(spec: SurfaceSpec, u: float,
                        eps: float = DEFAULT_ADMISSIBILITY_EPS) -> GeoFns:
    """nu1, nu2, mu, gamma2, beta2 at u (independent of v)."""
    f, fp, fpp, g, gp, gpp, E, W = _meridian_scalars(spec, u)
    _require_admissible(spec, u, E, W, eps)
    a2, b2 = spec.alpha ** 2, spec.beta ** 2
    ab = spec.alpha * spec.beta
    se = math.sqrt(E)
    sew = se * W
    if spec.kind is SurfaceKind.ELLIPTIC:
        return GeoFns(
            nu1=(gp * fpp - fp * gpp) / (E * se),
            nu2=(b2 * g * fp - a2 * f * gp) / sew,
            mu=ab * (f * gp - g * fp) / sew,
            gamma2=(a2 * f * fp - b2 * g * gp) / sew,
            beta2=ab * (f * fp - g * gp) / sew)
    return GeoFns(
        nu1=(fpp * gp - fp * gpp) / (E * se),
        nu2=(a2 * f * gp - b2 * g * fp) / sew,
        mu=ab * (f * gp - fp * g) / sew,
        gamma2=-(a2 * f * fp + b2 * g * gp) / sew,
        beta2=-ab * (f * fp + g * gp) / sew)


def second_fundamental(spec: SurfaceSpec, u: float, v: float = 0.0,
                       eps: float = DEFAULT_ADMISSIBILITY_EPS) -> SecondFundamental:
    """sigma on the frame basis as coefficient pairs along (n1, n2)."""
    gf = geometric_functions(spec, u, eps)
    if spec.kind is SurfaceKind.ELLIPTIC:
        return SecondFundamental(xx=(0.0, -gf.nu1), xy=(gf.mu, 0.0),
                                 yy=(0.0, -gf.nu2))
    return SecondFundamental(xx=(gf.nu1, 0.0), xy=(0.0, -gf.mu),
                             yy=(gf.nu2, 0.0))


def second_fundamental_projected(spec: SurfaceSpec, u: float, v: float,
                                 eps: float = DEFAULT_ADMISSIBILITY_EPS
                                 ) -> SecondFundamental:
    """Independent route: sigma coefficients from <z_ab, n_i> projections.

    With the normal frame pseudo-orthonormal, a normal vector w decomposes
    as <w,n1> n1 - <w,n2> n2.
    """
    pj = position_jets(spec, u, v)
    fr = frames(spec, u, v, eps)
    E = inner(pj.z_u, pj.z_u)
    G = inner(pj.z_v, pj.z_v)
    seg = math.sqrt(E) * math.sqrt(-G)

    def pair(w, denom):
        return (inner(w, fr.n1) / denom, -inner(w, fr.n2) / denom)

    return SecondFundamental(
        xx=pair(pj.z_uu, E),
        xy=pair(pj.z_uv, seg),
        yy=pair(pj.z_vv, -G))


def sigma_vectors(spec: SurfaceSpec, u: float, v: float,
                  eps: float = DEFAULT_ADMISSIBILITY_EPS):
    """sigma(x,x), sigma(x,y), sigma(y,y) as ambient vectors (projection route)."""
    sf = second_fundamental_projected(spec, u, v, eps)
    fr = frames(spec, u, v, eps)

    def vec(pair):
        return fr.n1 * pair[0] + fr.n2 * pair[1]

    return vec(sf.xx), vec(sf.xy), vec(sf.yy)


def mean_curvature_vector(spec: SurfaceSpec, u: float, v: float,
                          eps: float = DEFAULT_ADMISSIBILITY_EPS) -> PEVector4:
    """H = (sigma(x,x) - sigma(y,y)) / 2, assembled from projections."""
    sxx, _, syy = sigma_vectors(spec, u, v, eps)
    return (sxx - syy) * 0.5


# ---------------------------------------------------------------------------
# Curvature invariants

def curvatures(spec: SurfaceSpec, u: float,
               eps: float = DEFAULT_ADMISSIBILITY_EPS) -> Curvatures:
    """Gauss curvature, normal-connection curvature, mean-curvature data.

    h_coeff is the coefficient of H along n2 (elliptic) or n1 (hyperbolic);
    H_norm2 is reported as -h_coeff**2 (see the quasi-minimal checks).
    """
    f, fp, fpp, g, gp, gpp, E, W = _meridian_scalars(spec, u)
    _require_admissible(spec, u, E, W, eps)
    a2, b2 = spec.alpha ** 2, spec.beta ** 2
    ab = spec.alpha * spec.beta
    E2W2 = E * E * W * W
    if spec.kind is SurfaceKind.ELLIPTIC:
        K = (a2 * b2 * E * (f * gp - fp * g) ** 2
             - W * (b2 * fp * g - a2 * f * gp) * (fp * gpp - fpp * gp)) / E2W2
        kappa = (-ab * (f * gp - g * fp)
                 * (W * (gp * fpp - fp * gpp) + E * (b2 * g * fp - a2 * f * gp))
                 ) / E2W2
        h = (E * (b2 * g * fp - a2 * f * gp) - W * (fpp * gp - fp * gpp)) \
            / (2.0 * E * math.sqrt(E) * W)
    else:
        K = -(a2 * b2 * (f * gp - fp * g) ** 2 * E
              + (a2 * f * gp - b2 * fp * g) * (fpp * gp - fp * gpp) * W) / E2W2
        kappa = (ab * (f * gp - fp * g)
                 * (W * (fpp * gp - fp * gpp) + E * (a2 * f * gp - b2 * g * fp))
                 ) / E2W2
        h = (E * (b2 * fp * g - a2 * f * gp) + W * (fpp * gp - fp * gpp)) \
            / (2.0 * E * math.sqrt(E) * W)
    return Curvatures(K=K, kappa=kappa, h_coeff=h, H_norm2=-h * h)


def mean_curvature_numerator(spec: SurfaceSpec, u: float) -> tuple[float, float]:
    """Numerator of the mean-curvature coefficient and its term scale.

    Defined at every meridian point, admissible or not (no square roots),
    so identities like 'this family has vanishing mean curvature wherever
    it is defined' can be checked on families with empty admissible domain.
    """
    f, fp, fpp, g, gp, gpp, E, W = _meridian_scalars(spec, u)
    a2, b2 = spec.alpha ** 2, spec.beta ** 2
    if spec.kind is SurfaceKind.ELLIPTIC:
        t1 = E * (b2 * g * fp - a2 * f * gp)
        t2 = -W * (fpp * gp - fp * gpp)
    else:
        t1 = E * (b2 * fp * g - a2 * f * gp)
        t2 = W * (fpp * gp - fp * gpp)
    return t1 + t2, abs(t1) + abs(t2) + 1.0


def shape_operators(spec: SurfaceSpec, u: float,
                    eps: float = DEFAULT_ADMISSIBILITY_EPS) -> ShapeOperators:
    """Shape operators of n1, n2 on the (x, y) basis, with <A_xi X, Y> = <sigma(X,Y), xi>."""
    gf = geometric_functions(spec, u, eps)
    if spec.kind is SurfaceKind.ELLIPTIC:
        A1 = np.array([[0.0, gf.mu], [-gf.mu, 0.0]])
        A2 = np.array([[gf.nu1, 0.0], [0.0, -gf.nu2]])
    else:
        A1 = np.array([[gf.nu1, 0.0], [0.0, -gf.nu2]])
        A2 = np.array([[0.0, gf.mu], [-gf.mu, 0.0]])
    tr = float(np.trace(A1 @ A2))
    h = curvatures(spec, u, eps).h_coeff
    return ShapeOperators(A1=A1, A2=A2, trA1A2=tr, allied_coeff=0.5 * abs(h) * tr)


def shape_operators_projected(spec: SurfaceSpec, u: float, v: float,
                              eps: float = DEFAULT_ADMISSIBILITY_EPS):
    """Oracle route: assemble A1, A2 from projected sigma vectors.

    Entry (k, j) of A_xi is eps_k * <sigma(e_j, e_k), xi> with eps = (1, -1)
    on the (x, y) basis.
    """
    fr = frames(spec, u, v, eps)
    sxx, sxy, syy = sigma_vectors(spec, u, v, eps)
    sig = {("x", "x"): sxx, ("x", "y"): sxy, ("y", "x"): sxy, ("y", "y"): syy}
    basis = ("x", "y")
    epsk = {"x": 1.0, "y": -1.0}
    mats = []
    for normal in (fr.n1, fr.n2):
        m = np.empty((2, 2))
        for kk, ek in enumerate(basis):
            for jj, ej in enumerate(basis):
                m[kk, jj] = epsk[ek] * inner(sig[(ej, ek)], normal)
        mats.append(m)
    return mats[0], mats[1]


def invariant_record(spec: SurfaceSpec, u: float,
                     eps: float = DEFAULT_ADMISSIBILITY_EPS
                     ) -> InvariantRecord | None:
    """Full invariant set at u, or an inadmissible marker record.

    First-fundamental coefficients are taken at v = 0; every field is
    independent of v by rotational symmetry.
    """
    try:
        ff = first_fundamental(spec, u, 0.0, eps)
    except GrsError:
        return InvariantRecord(u, math.nan, math.nan, math.nan, math.nan,
                               math.nan, math.nan, math.nan, math.nan,
                               math.nan, math.nan, math.nan, math.nan,
                               math.nan, False)
    if not ff.admissible:
        return InvariantRecord(u, ff.E, ff.F, ff.G, math.nan, math.nan,
                               math.nan, math.nan, math.nan, math.nan,
                               math.nan, math.nan, math.nan, math.nan, False)
    gf = geometric_functions(spec, u, eps)
    cv = curvatures(spec, u, eps)
    so = shape_operators(spec, u, eps)
    return InvariantRecord(u, ff.E, ff.F, ff.G, gf.nu1, gf.nu2, gf.mu,
                           gf.gamma2, gf.beta2, cv.K, cv.kappa, cv.h_coeff,
                           cv.H_norm2, so.trA1A2, True)
