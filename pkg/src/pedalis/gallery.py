"""Named example registry: charts, implicit oracles and degree data.

Each entry binds parameterizations to the exact implicit polynomials they
must satisfy, plus the expected (n, r, k, deg) bookkeeping of the pullback
between the point and dual pictures.  The residual harness evaluates a
chart on a grid and reports the normalized residual

    |P(T)| / (|coeffs|_1 * |T|_inf^deg),

which is scale free in both the polynomial and the tuple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import EmptyGrid, NotFound
from .hompoly import (
    HomPoly4,
    Space,
    offset_dual_poly,
    parse_poly,
    pedal_pullback,
    strip_exceptional,
)
from .quadricpedal import paraboloid_dual_quadric, paraboloid_offset_chart
from .ruledpedal import RuledChart
from .surfkit import (
    Chart,
    Domain,
    DualSurface,
    PointSurface,
    PolarSurface,
    envelope_surface,
    point_to_dual,
)

QPT = HomPoly4.quadform(Space.POINT)
QDU = HomPoly4.quadform(Space.DUAL)


@dataclass(frozen=True)
class ResidualReport:
    max: float
    mean: float
    count: int


@dataclass(frozen=True)
class ResidualCase:
    label: str
    surface: object  # DualSurface | PolarSurface | PointSurface
    poly: HomPoly4


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    summary: str
    point_poly: HomPoly4 | None
    dual_poly: HomPoly4 | None
    point_family: object | None  # d -> HomPoly4
    dual_family: object | None
    expected: tuple[int, int, int, int] | None
    expected_poly: HomPoly4 | None  # polynomial the bookkeeping applies to
    residual_cases: tuple[ResidualCase, ...]
    ne_charts: object | None  # () -> (n Chart, e Chart), unit normals
    make_dual: object | None  # d -> DualSurface of tangent planes
    make_polar: object | None  # d -> PolarSurface
    point_chart: PointSurface | None
    extras: dict | None = None
    # (source, expected stripped pullback image), aligned with the source space
    pullback_pair: tuple[HomPoly4, HomPoly4] | None = None
    # which chart family represents the entry's base surface
    primary: str = "point"


def residual_report(surface, poly: HomPoly4, nu: int = 60, nv: int = 60) -> ResidualReport:
    """Normalized residuals of a chart against an implicit polynomial."""
    dom = surface.domain
    U, V = dom.grid(nu, nv)
    tuples = []
    for u, v in zip(U, V):
        if surface.is_singular(u, v):
            continue
        try:
            t = surface.htuple(u, v)
        except Exception:
            continue
        if np.all(np.isfinite(t)):
            tuples.append(t)
    if not tuples:
        raise EmptyGrid("no valid samples on the grid")
    T = np.array(tuples)
    vals = np.abs(poly.eval_grid(T))
    scale = poly.coeff_norm() * np.max(np.abs(T), axis=1) ** poly.degree
    res = vals / scale
    return ResidualReport(float(res.max()), float(res.mean()), len(tuples))


# -- chart helpers -----------------------------------------------------------


def _trig_chart(domain: Domain) -> Chart:
    def f(u, v):
        return np.array([math.cos(u) * math.cos(v),
                         math.cos(v) * math.sin(u),
                         math.sin(v)])

    def fu(u, v):
        return np.array([-math.sin(u) * math.cos(v),
                         math.cos(v) * math.cos(u), 0.0])

    def fv(u, v):
        return np.array([-math.cos(u) * math.sin(v),
                         -math.sin(u) * math.sin(v), math.cos(v)])

    return Chart(f, fu, fv, domain)


def _scalar_chart(domain: Domain, f, fu, fv) -> Chart:
    return Chart(f, fu, fv, domain)


# -- entry builders ----------------------------------------------------------


def _plane_paraboloid_parts():
    """Shared charts and polynomials of the plane/paraboloid correspondence."""
    dom = Domain(0.0, 2.0 * math.pi, 0.2, 1.35)
    n = _trig_chart(dom)

    def e_chart(d):
        return _scalar_chart(
            dom,
            lambda u, v: 1.0 / math.sin(v) + d,
            lambda u, v: 0.0,
            lambda u, v: -math.cos(v) / math.sin(v) ** 2,
        )

    plane = parse_poly("x3 - x0")
    fstar = parse_poly("u1^2 + u2^2 + u3^2 + u0*u3")

    def point_family(d):
        d = Fraction(d)
        x0 = HomPoly4.variable(Space.POINT, 0)
        x3 = HomPoly4.variable(Space.POINT, 3)
        return (x0 * x3) ** 2 * d ** 2 - QPT * (x0 - x3) ** 2

    def dual_family(d):
        d = Fraction(d)
        u3 = HomPoly4.variable(Space.DUAL, 3)
        base = QDU + HomPoly4.variable(Space.DUAL, 0) * u3
        return u3 ** 2 * QDU * d ** 2 - base ** 2

    return dom, n, e_chart, plane, fstar, point_family, dual_family


def _build_plane_conchoid() -> GalleryEntry:
    dom, n, e_chart, plane, fstar, point_family, dual_family = _plane_paraboloid_parts()
    make_polar = lambda d: PolarSurface(n, e_chart(d))
    make_dual = lambda d: DualSurface(n, e_chart(d))
    cases = [ResidualCase("conchoid d=0 vs plane", make_polar(0.0), plane)]
    for d in (0.7, 0.5, -0.3):
        cases.append(ResidualCase(f"conchoid d={d}", make_polar(d), point_family(d)))
    return GalleryEntry(
        name="plane-conchoid",
        primary="polar",
        summary="conchoid family of the plane z=1 about the origin",
        point_poly=plane, dual_poly=fstar,
        point_family=point_family, dual_family=dual_family,
        expected=(2, 1, 1, 1), expected_poly=fstar,
        residual_cases=tuple(cases),
        ne_charts=lambda: (n, e_chart(0.0)),
        make_dual=make_dual, make_polar=make_polar,
        point_chart=None,
        pullback_pair=(fstar, plane),
    )


def _build_paraboloid_offset() -> GalleryEntry:
    dom, n, e_chart, plane, fstar, point_family, dual_family = _plane_paraboloid_parts()
    paraboloid = parse_poly("x1^2 + x2^2 + 4*x0*x3 - 4*x0^2")
    make_dual = lambda d: DualSurface(n, e_chart(d))
    cases = [
        ResidualCase("dual d=0", make_dual(0.0), fstar),
        ResidualCase("dual d=1/2", make_dual(0.5), dual_family(Fraction(1, 2))),
        ResidualCase("dual d=1", make_dual(1.0), dual_family(1)),
        ResidualCase("envelope vs paraboloid", envelope_surface(make_dual(0.0)), paraboloid),
    ]
    return GalleryEntry(
        name="paraboloid-offset",
        primary="dual",
        summary="offset family of the paraboloid x^2+y^2+4z=4 with focal point O",
        point_poly=paraboloid, dual_poly=fstar,
        point_family=point_family, dual_family=dual_family,
        expected=(2, 1, 1, 1), expected_poly=fstar,
        residual_cases=tuple(cases),
        ne_charts=lambda: (n, e_chart(0.0)),
        make_dual=make_dual,
        make_polar=lambda d: PolarSurface(n, e_chart(d)),
        point_chart=None,
        pullback_pair=(fstar, plane),
    )


def _build_sphere_offset(m=2, R=1) -> GalleryEntry:
    mf, Rf = Fraction(m), Fraction(R)
    dom = Domain(0.0, 2.0 * math.pi, -1.25, 1.25)
    n = _trig_chart(dom)

    def e_chart(d):
        return _scalar_chart(
            dom,
            lambda u, v: float(m) * math.cos(u) * math.cos(v) + float(R) + d,
            lambda u, v: -float(m) * math.sin(u) * math.cos(v),
            lambda u, v: -float(m) * math.cos(u) * math.sin(v),
        )

    def dual_family(d):
        d = Fraction(d)
        u0, u1, u2, u3 = (HomPoly4.variable(Space.DUAL, i) for i in range(4))
        Rd = Rf + d
        return (u1 ** 2 * (Rd * Rd - mf * mf) + (u2 ** 2 + u3 ** 2) * (Rd * Rd)
                - u0 * u1 * (2 * mf) - u0 ** 2)

    def point_family(d):
        d = Fraction(d)
        x0, x1, x2, x3 = (HomPoly4.variable(Space.POINT, i) for i in range(4))
        Rd = Rf + d
        return (x0 ** 2 * (x1 ** 2 * (Rd * Rd - mf * mf) + (x2 ** 2 + x3 ** 2) * (Rd * Rd))
                + x0 * x1 * QPT * (2 * mf) - QPT ** 2)

    fstar = dual_family(0)
    gbar = point_family(0)
    make_dual = lambda d: DualSurface(n, e_chart(d))
    make_polar = lambda d: PolarSurface(n, e_chart(d))
    cases = [
        ResidualCase("dual d=0", make_dual(0.0), fstar),
        ResidualCase("dual d=1/2", make_dual(0.5), dual_family(Fraction(1, 2))),
        ResidualCase("dual d=-0.3", make_dual(-0.3), dual_family(Fraction(-3, 10))),
        ResidualCase("conchoid d=0", make_polar(0.0), gbar),
        ResidualCase("conchoid d=1/2", make_polar(0.5), point_family(Fraction(1, 2))),
        ResidualCase("conchoid d=-0.3", make_polar(-0.3), point_family(Fraction(-3, 10))),
    ]
    return GalleryEntry(
        name="sphere-offset",
        primary="dual",
        summary=f"offsets of the sphere center ({m},0,0) radius {R} and their conchoids",
        point_poly=gbar, dual_poly=fstar,
        point_family=point_family, dual_family=dual_family,
        expected=(2, 0, 0, 4), expected_poly=fstar,
        residual_cases=tuple(cases),
        ne_charts=lambda: (n, e_chart(0.0)),
        make_dual=make_dual, make_polar=make_polar,
        point_chart=None,
        pullback_pair=(fstar, gbar),
    )


def _build_sphere_bundle(m=2) -> GalleryEntry:
    mf = Fraction(m)
    dom = Domain(0.0, 2.0 * math.pi, -1.25, 1.25)
    n = _trig_chart(dom)
    r_chart = _scalar_chart(
        dom,
        lambda u, v: float(m) * math.cos(u) * math.cos(v),
        lambda u, v: -float(m) * math.sin(u) * math.cos(v),
        lambda u, v: -float(m) * math.cos(u) * math.sin(v),
    )
    u0, u1 = HomPoly4.variable(Space.DUAL, 0), HomPoly4.variable(Space.DUAL, 1)
    fstar = u0 + u1 * mf
    x0, x1 = HomPoly4.variable(Space.POINT, 0), HomPoly4.variable(Space.POINT, 1)
    gbar = QPT - x0 * x1 * mf
    make_polar = lambda d: PolarSurface(n, r_chart)
    return GalleryEntry(
        name="sphere-bundle",
        primary="polar",
        summary=f"degenerate bundle through ({m},0,0); image sphere with diameter OM",
        point_poly=gbar, dual_poly=fstar,
        point_family=None, dual_family=None,
        expected=(1, 0, 0, 2), expected_poly=fstar,
        residual_cases=(ResidualCase("OM-sphere polar chart", make_polar(0.0), gbar),),
        ne_charts=None,
        make_dual=None, make_polar=make_polar,
        point_chart=None,
        pullback_pair=(fstar, gbar),
    )


def _build_pluecker() -> GalleryEntry:
    # point chart of the conoid
    pdom = Domain(0.0, 2.0 * math.pi, -1.5, 1.5)
    point_chart = PointSurface(Chart(
        lambda u, v: np.array([v * math.cos(u), v * math.sin(u), math.sin(2 * u)]),
        lambda u, v: np.array([-v * math.sin(u), v * math.cos(u), 2 * math.cos(2 * u)]),
        lambda u, v: np.array([math.cos(u), math.sin(u), 0.0]),
        pdom,
    ))

    conoid = parse_poly("x3*x1^2 + x3*x2^2 - 2*x0*x1*x2")
    fstar = parse_poly("u0*u1^2 + u0*u2^2 - 2*u1*u2*u3")
    gbar = parse_poly("2*x0*x1*x2*x3 + (x1^2 + x2^2)*(x1^2 + x2^2 + x3^2)")
    bstar = parse_poly("u0*u3*(u1^2 + u2^2) + 2*u1*u2*(u1^2 + u2^2 + u3^2)")
    w2_du = parse_poly("u1^2 + u2^2")
    w2_pt = parse_poly("x1^2 + x2^2")
    x0 = HomPoly4.variable(Space.POINT, 0)
    x3 = HomPoly4.variable(Space.POINT, 3)
    u3 = HomPoly4.variable(Space.DUAL, 3)

    def dual_family(d):
        d = Fraction(d)
        return w2_du ** 2 * QDU * d ** 2 - fstar ** 2

    def point_family(d):
        d = Fraction(d)
        return x0 ** 2 * w2_pt ** 2 * QPT * d ** 2 - gbar ** 2

    def conchoid_family(d):
        d = Fraction(d)
        return w2_pt ** 2 * (x0 * x3) ** 2 * d ** 2 - QPT * conoid ** 2

    def bdual_family(d):
        d = Fraction(d)
        return u3 ** 2 * w2_du ** 2 * QDU * d ** 2 - bstar ** 2

    # dual chart with already-rational unit normal
    ddom = Domain(0.0, 2.0 * math.pi, 0.15, 1.4)
    n = Chart(
        lambda u, t: np.array([-math.sin(u) * math.sin(t),
                               math.cos(u) * math.sin(t), math.cos(t)]),
        lambda u, t: np.array([-math.cos(u) * math.sin(t),
                               -math.sin(u) * math.sin(t), 0.0]),
        lambda u, t: np.array([-math.sin(u) * math.cos(t),
                               math.cos(u) * math.cos(t), -math.sin(t)]),
        ddom,
    )

    def e_chart(d):
        return _scalar_chart(
            ddom,
            lambda u, t: math.cos(t) * math.sin(2 * u) + d,
            lambda u, t: 2.0 * math.cos(t) * math.cos(2 * u),
            lambda u, t: -math.sin(t) * math.sin(2 * u),
        )

    make_dual = lambda d: DualSurface(n, e_chart(d))
    make_polar = lambda d: PolarSurface(n, e_chart(d))  # pedal conchoids

    # conchoid family of the conoid itself (rational polar chart)
    cdom = Domain(-1.25, 1.25, 0.12, 1.43)
    s_a = Chart(
        lambda u, v: np.array([math.sin(u) * math.cos(v),
                               math.sin(u) * math.sin(v), math.cos(u)]),
        lambda u, v: np.array([math.cos(u) * math.cos(v),
                               math.cos(u) * math.sin(v), -math.sin(u)]),
        lambda u, v: np.array([-math.sin(u) * math.sin(v),
                               math.sin(u) * math.cos(v), 0.0]),
        cdom,
    )

    def r_a(d):
        return _scalar_chart(
            cdom,
            lambda u, v: math.sin(2 * v) / math.cos(u) + d,
            lambda u, v: math.sin(2 * v) * math.sin(u) / math.cos(u) ** 2,
            lambda u, v: 2.0 * math.cos(2 * v) / math.cos(u),
        )

    make_conchoid = lambda d: PolarSurface(s_a, r_a(d))

    cases = [
        ResidualCase("point chart vs conoid", point_chart, conoid),
        ResidualCase("dual d=0", make_dual(0.0), fstar),
        ResidualCase("dual d=1/2", make_dual(0.5), dual_family(Fraction(1, 2))),
        ResidualCase("dual d=1", make_dual(1.0), dual_family(1)),
        ResidualCase("pedal d=0", make_polar(0.0), gbar),
        ResidualCase("pedal d=1/2", make_polar(0.5), point_family(Fraction(1, 2))),
        ResidualCase("pedal d=1", make_polar(1.0), point_family(1)),
        ResidualCase("conchoid d=0", make_conchoid(0.0), conoid),
        ResidualCase("conchoid d=1/2", make_conchoid(0.5), conchoid_family(Fraction(1, 2))),
        ResidualCase("conchoid d=1", make_conchoid(1.0), conchoid_family(1)),
        ResidualCase("inverse-pedal dual d=0", point_to_dual(make_conchoid(0.0)), bstar),
        ResidualCase("inverse-pedal dual d=1/2", point_to_dual(make_conchoid(0.5)),
                     bdual_family(Fraction(1, 2))),
    ]
    return GalleryEntry(
        name="pluecker",
        primary="point",
        summary="Pluecker conoid: pedal, inverse pedal, offsets and conchoids",
        point_poly=gbar, dual_poly=fstar,
        point_family=point_family, dual_family=dual_family,
        expected=(3, 2, 0, 4), expected_poly=fstar,
        residual_cases=tuple(cases),
        ne_charts=lambda: (n, e_chart(0.0)),
        make_dual=make_dual, make_polar=make_polar,
        point_chart=point_chart,
        pullback_pair=(fstar, gbar),
        extras={
            "conoid": conoid,
            "conchoid_family": conchoid_family,
            "bstar": bstar,
            "bdual_family": bdual_family,
            "make_conchoid": make_conchoid,
        },
    )


def _build_parabola_cyclide(a=1, c=1) -> GalleryEntry:
    af, cf = Fraction(a), Fraction(c)
    u0, u1, u3 = (HomPoly4.variable(Space.DUAL, i) for i in (0, 1, 3))
    x0, x1, x3 = (HomPoly4.variable(Space.POINT, i) for i in (0, 1, 3))
    fstar = u1 ** 2 - u0 * u3 * (2 * af) - u3 ** 2 * (2 * af * cf)
    gbar = x0 * (x1 ** 2 - x3 ** 2 * (2 * af * cf)) + x3 * QPT * (2 * af)

    def dual_family(d):
        d = Fraction(d)
        return fstar ** 2 - u3 ** 2 * QDU * (4 * af * af * d * d)

    def point_family(d):
        d = Fraction(d)
        return gbar ** 2 - (x0 * x3) ** 2 * QPT * (4 * af * af * d * d)

    dom = Domain(0.0, 2.0 * math.pi, 0.2, 1.35)
    n = _trig_chart(dom)
    afl, cfl = float(a), float(c)

    def numer(s, t):
        return math.cos(s) ** 2 * math.cos(t) ** 2 - 2 * afl * cfl * math.sin(t) ** 2

    def e_chart(d):
        def e(s, t):
            return -numer(s, t) / (2 * afl * math.sin(t)) + d

        def e_ds(s, t):
            return math.sin(2 * s) * math.cos(t) ** 2 / (2 * afl * math.sin(t))

        def e_dt(s, t):
            st, ct = math.sin(t), math.cos(t)
            dn = -2 * math.cos(s) ** 2 * ct * st - 4 * afl * cfl * st * ct
            return -(dn * st - numer(s, t) * ct) / (2 * afl * st * st)

        return _scalar_chart(dom, e, e_ds, e_dt)

    make_dual = lambda d: DualSurface(n, e_chart(d))
    make_polar = lambda d: PolarSurface(n, e_chart(d))
    cases = [
        ResidualCase("dual d=0", make_dual(0.0), fstar),
        ResidualCase("dual d=1/2", make_dual(0.5), dual_family(Fraction(1, 2))),
        ResidualCase("pedal d=0", make_polar(0.0), gbar),
        ResidualCase("pedal d=1/2", make_polar(0.5), point_family(Fraction(1, 2))),
    ]
    return GalleryEntry(
        name="parabola-cyclide",
        primary="polar",
        summary=f"pedal of the parabola (u,0,{a}/2 u^2+{c}): a cubic cyclide",
        point_poly=gbar, dual_poly=fstar,
        point_family=point_family, dual_family=dual_family,
        expected=(2, 1, 0, 3), expected_poly=fstar,
        residual_cases=tuple(cases),
        ne_charts=lambda: (n, e_chart(0.0)),
        make_dual=make_dual, make_polar=make_polar,
        point_chart=None,
        pullback_pair=(fstar, gbar),
    )


def _build_paraboloid_pedal(a=1, b=1, c=1) -> GalleryEntry:
    # z = (a x^2 + b y^2)/2 + c; dual quadric via the halved parameters
    Q = paraboloid_dual_quadric(Fraction(a, 2), Fraction(b, 2), Fraction(c))
    fstar = Q.as_poly()
    gbar = strip_exceptional(pedal_pullback(fstar)).reduced

    def dual_family(d):
        return offset_dual_poly(fstar, Fraction(d))

    def point_family(d):
        return strip_exceptional(pedal_pullback(dual_family(d))).reduced

    def charts(d):
        return paraboloid_offset_chart(a, b, c, d)

    make_dual = lambda d: charts(d).dual
    make_polar = lambda d: charts(d).polar
    pdom = Domain(-1.5, 1.5, -1.5, 1.5)
    afl, bfl, cfl = float(a), float(b), float(c)
    point_chart = PointSurface(Chart(
        lambda u, v: np.array([u, v, (afl * u * u + bfl * v * v) / 2.0 + cfl]),
        lambda u, v: np.array([1.0, 0.0, afl * u]),
        lambda u, v: np.array([0.0, 1.0, bfl * v]),
        pdom,
    ))
    x0, x1, x2, x3 = (HomPoly4.variable(Space.POINT, i) for i in range(4))
    point_implicit = (x1 ** 2 * Fraction(a) + x2 ** 2 * Fraction(b)
                      + x0 ** 2 * (2 * Fraction(c)) - x0 * x3 * 2)
    cases = [
        ResidualCase("dual d=0", make_dual(0.0), fstar),
        ResidualCase("dual d=1/2", make_dual(0.5), dual_family(Fraction(1, 2))),
        ResidualCase("pedal d=0", make_polar(0.0), gbar),
        ResidualCase("pedal d=1/2", make_polar(0.5), point_family(Fraction(1, 2))),
        ResidualCase("point chart vs paraboloid", point_chart, point_implicit),
        ResidualCase("envelope vs paraboloid", envelope_surface(make_dual(0.0)), point_implicit),
    ]
    return GalleryEntry(
        name="paraboloid-pedal",
        primary="polar",
        summary=f"pedal family of the paraboloid z=({a}x^2+{b}y^2)/2+{c}",
        point_poly=gbar, dual_poly=fstar,
        point_family=point_family, dual_family=dual_family,
        expected=(2, 1, 0, 3), expected_poly=fstar,
        residual_cases=tuple(cases),
        ne_charts=lambda: (charts(0.0).dual.n, charts(0.0).dual.e),
        make_dual=make_dual, make_polar=make_polar,
        point_chart=point_chart,
        pullback_pair=(fstar, gbar),
        extras={"point_implicit": point_implicit},
    )


def _build_sphere_inverse_pedal(m=2, r=1) -> GalleryEntry:
    from .quadricpedal import sphere_inverse_pedal_affine, sphere_point_quadric

    mf, rf = Fraction(m), Fraction(r)
    gsphere = sphere_point_quadric(mf, rf).as_poly()
    result = sphere_inverse_pedal_affine(mf, rf)
    dom = Domain(0.0, 2.0 * math.pi, -1.25, 1.25)
    mfl, rfl = float(m), float(r)
    sphere_chart = PointSurface(Chart(
        lambda u, v: np.array([mfl + rfl * math.cos(u) * math.cos(v),
                               rfl * math.cos(v) * math.sin(u),
                               rfl * math.sin(v)]),
        lambda u, v: np.array([-rfl * math.sin(u) * math.cos(v),
                               rfl * math.cos(v) * math.cos(u), 0.0]),
        lambda u, v: np.array([-rfl * math.cos(u) * math.sin(v),
                               -rfl * math.sin(u) * math.sin(v),
                               rfl * math.cos(v)]),
        dom,
    ))
    planes = point_to_dual(sphere_chart)
    cases = [
        ResidualCase("sphere chart", sphere_chart, gsphere),
        ResidualCase("image planes", planes, result.dual),
        ResidualCase("image envelope", envelope_surface(planes), result.implicit),
    ]
    return GalleryEntry(
        name="sphere-inverse-pedal",
        primary="point",
        summary=f"inverse pedal of the sphere center ({m},0,0) radius {r}",
        point_poly=gsphere, dual_poly=result.dual,
        point_family=None, dual_family=None,
        expected=(2, 0, 1, 2), expected_poly=gsphere,
        residual_cases=tuple(cases),
        ne_charts=None,
        make_dual=None,
        make_polar=None,
        point_chart=sphere_chart,
        pullback_pair=(gsphere, result.dual),
        extras={"result": result},
    )


def _build_quadratic_cylinder(a=2, b=1) -> GalleryEntry:
    af, bf = Fraction(a), Fraction(b)
    x0, x1, x2 = (HomPoly4.variable(Space.POINT, i) for i in (0, 1, 2))
    u0, u1, u2 = (HomPoly4.variable(Space.DUAL, i) for i in (0, 1, 2))
    gcyl = x1 ** 2 * bf ** 2 + x2 ** 2 * af ** 2 - x0 ** 2 * (af * bf) ** 2
    fstar = ((u0 * u1) ** 2 * bf ** 2 + (u0 * u2) ** 2 * af ** 2
             - QDU ** 2 * (af * bf) ** 2)
    sigma_g = ((x0 * x1) ** 2 * bf ** 2 + (x0 * x2) ** 2 * af ** 2
               - QPT ** 2 * (af * bf) ** 2)
    afl, bfl = float(a), float(b)
    rdom = Domain(0.0, 2.0 * math.pi, -2.0, 2.0)
    ruled = RuledChart(
        lambda u: np.array([afl * math.cos(u), bfl * math.sin(u), 0.0]),
        lambda u: np.array([0.0, 0.0, 1.0]),
        dc=lambda u: np.array([-afl * math.sin(u), bfl * math.cos(u), 0.0]),
        de=lambda u: np.array([0.0, 0.0, 0.0]),
        domain=rdom,
    )
    ruled_points = PointSurface(Chart(
        lambda u, v: ruled.point(u, v),
        lambda u, v: np.array([-afl * math.sin(u), bfl * math.cos(u), 0.0]),
        lambda u, v: np.array([0.0, 0.0, 1.0]),
        rdom,
    ))

    def closed_form(u, v):
        cu, su = math.cos(u), math.sin(u)
        return np.array([
            -(cu / afl) * ((afl ** 2 - bfl ** 2) * cu * cu + bfl ** 2 - 2 * afl ** 2 + v * v),
            -(su / bfl) * ((afl ** 2 - bfl ** 2) * cu * cu - bfl ** 2 + v * v),
            2.0 * v,
        ])

    # rational polar chart of the cylinder: foot-point curve (a cos u, b sin u, 0)
    tdom = Domain(0.0, 2.0 * math.pi, 0.2, 1.4)

    def polar_parts(u, t):
        d1, d2 = afl * math.cos(u), bfl * math.sin(u)
        D2 = d1 * d1 + d2 * d2
        den = 1.0 + D2 * t * t
        vec = np.array([2 * t * d1, 2 * t * d2, 1.0 - D2 * t * t]) / den
        w = den / (2.0 * t)
        return vec, w

    def make_polar(d):
        return PolarSurface(
            Chart(lambda u, t: polar_parts(u, t)[0], domain=tdom),
            Chart(lambda u, t: polar_parts(u, t)[1] + d, domain=tdom),
        )

    planes = point_to_dual(ruled_points)
    cases = [
        ResidualCase("ruled chart vs cylinder", ruled_points, gcyl),
        ResidualCase("image planes vs quartic", planes, fstar),
        ResidualCase("rational polar chart", make_polar(0.0), gcyl),
    ]
    return GalleryEntry(
        name="quadratic-cylinder",
        primary="point",
        summary=f"inverse pedal of the elliptic cylinder x^2/{a}^2+y^2/{b}^2=1",
        point_poly=gcyl, dual_poly=fstar,
        point_family=None, dual_family=None,
        expected=(2, 0, 0, 4), expected_poly=gcyl,
        residual_cases=tuple(cases),
        ne_charts=None,
        make_dual=None,
        make_polar=make_polar,
        point_chart=ruled_points,
        pullback_pair=(gcyl, fstar),
        extras={
            "ruled": ruled,
            "closed_form": closed_form,
            "sigma_g": sigma_g,
            "a": afl, "b": bfl,
        },
    )


_BUILDERS = {
    "plane-conchoid": _build_plane_conchoid,
    "paraboloid-offset": _build_paraboloid_offset,
    "sphere-offset": _build_sphere_offset,
    "sphere-bundle": _build_sphere_bundle,
    "pluecker": _build_pluecker,
    "parabola-cyclide": _build_parabola_cyclide,
    "paraboloid-pedal": _build_paraboloid_pedal,
    "sphere-inverse-pedal": _build_sphere_inverse_pedal,
    "quadratic-cylinder": _build_quadratic_cylinder,
}

_CACHE: dict[str, GalleryEntry] = {}


def list_entries() -> list[str]:
    return sorted(_BUILDERS)


def get_entry(name: str) -> GalleryEntry:
    if name not in _BUILDERS:
        raise NotFound(name)
    if name not in _CACHE:
        _CACHE[name] = _BUILDERS[name]()
    return _CACHE[name]
