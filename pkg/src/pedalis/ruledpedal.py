"""Pedal and inverse pedal constructions for ruled surfaces.

A ruled chart f(u,v) = c(u) + v e(u) has normal n(u,v) = n1(u) + v n2(u)
with n1 = c' x e and n2 = e' x e.  Moving the directrix to the striction
curve makes n1 and n2 orthogonal, so |n|^2 = a1(u) + v^2 a2(u) is a family
of conics in (v, |n|); a rational point on each conic yields charts whose
normal length is rational in the curve parameter.  The same square-root
removal applied to |g|^2 = d(u)^2 + v^2 e(u)^2 gives polar charts of the
ruled surface itself, used for the inverse pedal direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CylindricalRuling,
    DegenerateSystem,
    DevelopableSurface,
    LineThroughOrigin,
    OriginOnSurface,
    ZeroDirection,
)
from .surfkit import Chart, Domain, DualSurface, PolarSurface

_EPS = 1e-12


class RuledChart:
    """Ruling chart c(u) + v e(u) with derivative access.

    Analytic derivatives of the directrix and direction are used when
    given, otherwise central differences with step h.
    """

    def __init__(self, c, e, dc=None, de=None,
                 domain: Domain = Domain(0.0, 1.0, -1.0, 1.0),
                 h: float = 1e-6):
        self.c = c
        self.e = e
        self._dc = dc
        self._de = de
        self.domain = domain
        self.h = h

    def point(self, u, v) -> np.ndarray:
        return np.asarray(self.c(u), float) + v * np.asarray(self.e(u), float)

    def direction(self, u) -> np.ndarray:
        e = np.asarray(self.e(u), float)
        if np.linalg.norm(e) < _EPS:
            raise ZeroDirection(f"ruling direction vanishes at u={u:.6g}")
        return e

    def dc(self, u) -> np.ndarray:
        if self._dc is not None:
            return np.asarray(self._dc(u), float)
        h = self.h
        return (np.asarray(self.c(u + h), float) - np.asarray(self.c(u - h), float)) / (2 * h)

    def de(self, u) -> np.ndarray:
        if self._de is not None:
            return np.asarray(self._de(u), float)
        h = self.h
        return (np.asarray(self.e(u + h), float) - np.asarray(self.e(u - h), float)) / (2 * h)


def _derive(fn, u, h):
    return (np.asarray(fn(u + h), float) - np.asarray(fn(u - h), float)) / (2 * h)


def footpoint_curve(R: RuledChart):
    """Curve u -> foot of O on the ruling line; satisfies d(u).e(u) = 0."""

    def d(u):
        c = np.asarray(R.c(u), float)
        e = R.direction(u)
        return c - ((c @ e) / (e @ e)) * e

    return d


def striction_parameter(R: RuledChart, u: float) -> float:
    """Ruling parameter of the striction point on the line at u."""
    e = R.direction(u)
    de = R.de(u)
    n2 = np.cross(de, e)
    denom = n2 @ n2
    scale = max((e @ e) * (de @ de), 1.0)
    if denom < 1e-20 * scale:
        raise CylindricalRuling(f"e' x e vanishes at u={u:.6g}")
    n1 = np.cross(R.dc(u), e)
    return -(n1 @ n2) / denom


def striction_curve(R: RuledChart):
    """Striction curve s(u) = c(u) + v_s(u) e(u)."""

    def s(u):
        return np.asarray(R.c(u), float) + striction_parameter(R, u) * R.direction(u)

    return s


@dataclass(frozen=True)
class PedalCircle:
    """Pedal circle of a ruling line: Thales circle over O and the foot."""

    center: np.ndarray
    radius: float
    normal: np.ndarray  # unit normal of the carrier plane x.e = 0

    def point(self, t: float) -> np.ndarray:
        """Point of the circle at angle t, via a frame in the carrier plane."""
        a, b = _plane_frame(self.normal)
        return self.center + self.radius * (math.cos(t) * a + math.sin(t) * b)


def _plane_frame(normal: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Gram-Schmidt against a fixed generic vector; continuity across
    # parameter flips is not guaranteed at isolated u.
    n = normal / np.linalg.norm(normal)
    ref = np.array([1.0, 0.0, 0.0])
    if abs(n @ ref) > 0.9:
        ref = np.array([0.0, 1.0, 0.0])
    a = ref - (ref @ n) * n
    a = a / np.linalg.norm(a)
    return a, np.cross(n, a)


def pedal_circle(R: RuledChart, u: float) -> PedalCircle:
    """Circle with diameter from O to the foot-point of the ruling at u."""
    d = footpoint_curve(R)(u)
    if np.linalg.norm(d) < _EPS:
        raise LineThroughOrigin(f"ruling line at u={u:.6g} passes through O")
    e = R.direction(u)
    return PedalCircle(d / 2.0, float(np.linalg.norm(d)) / 2.0, e / np.linalg.norm(e))


@dataclass(frozen=True)
class ConicFamily:
    """Conic family a1(u) y1^2 + a2(u) y2^2 - y0^2 = 0 with a1, a2 > 0."""

    a1: object  # u -> float
    a2: object


def striction_frame(R: RuledChart, u: float):
    """(s, e, n_s, n2) at u: striction point, ruling direction and the
    orthogonal normal components n_s = s' x e, n2 = e' x e.

    Because e x e = 0, the striction-parameter derivative drops out of
    s' x e = c' x e + v_s (e' x e); only first derivatives of the chart
    enter, so the frame is analytic whenever dc and de are.
    """
    e = R.direction(u)
    n1 = np.cross(R.dc(u), e)
    n2 = np.cross(R.de(u), e)
    denom = n2 @ n2
    scale = max((e @ e) * float(R.de(u) @ R.de(u)), 1.0)
    if denom < 1e-20 * scale:
        raise CylindricalRuling(f"e' x e vanishes at u={u:.6g}")
    vs = -(n1 @ n2) / denom
    s = np.asarray(R.c(u), float) + vs * e
    return s, e, n1 + vs * n2, n2


def conic_family(R: RuledChart) -> ConicFamily:
    """Squared-norm conics of the striction-framed normal field.

    a1 = |s' x e|^2 and a2 = |e' x e|^2 encode |n|^2 = a1 + v^2 a2.
    """

    def frame(u):
        _, _, ns, n2 = striction_frame(R, u)
        return ns, n2

    return ConicFamily(
        a1=lambda u: float(frame(u)[0] @ frame(u)[0]),
        a2=lambda u: float(frame(u)[1] @ frame(u)[1]),
    )


def conic_point_param(a1: float, a2: float, t: float) -> tuple[float, float, float]:
    """Rational point (y0,y1,y2) of a1 y1^2 + a2 y2^2 - y0^2 = 0.

    Stereographic projection from the seed point (sqrt(a1), 1, 0):

        y(t) = (sqrt(a1) (a2 + t^2), a2 - t^2, 2 sqrt(a1) t),

    which satisfies the conic identically in t.
    """
    if a1 <= 0 or a2 <= 0:
        raise ValueError("conic coefficients must be positive")
    s = math.sqrt(a1)
    return s * (a2 + t * t), a2 - t * t, 2.0 * s * t


class RuledOffsetSurface(DualSurface):
    """Dual chart (u,t) of the offset family of a skew ruled surface.

    The t-parameter runs over the per-u conic that removes the square root
    from the normal length; ``conic_coords`` exposes the witnesses
    (y0, y1, y2) with |n(u,t)| * y1 = y0 on the domain where y1 > 0.
    """

    def __init__(self, R: RuledChart, d: float, domain: Domain):
        self.ruled = R
        self.d = d

        def conic(u, t):
            _, _, ns, n2 = striction_frame(R, u)
            return conic_point_param(float(ns @ ns), float(n2 @ n2), t)

        def assemble(u, t):
            su, e, ns, n2 = striction_frame(R, u)
            y0, y1, y2 = conic_point_param(float(ns @ ns), float(n2 @ n2), t)
            v = y2 / y1
            w = y0 / y1
            f = su + v * e
            n = ns + v * n2
            return f, n, w

        def n_chart(u, t):
            return assemble(u, t)[1]

        def e_chart(u, t):
            f, n, w = assemble(u, t)
            return float(f @ n) + d * w

        self._assemble = assemble
        self._conic = conic
        super().__init__(
            Chart(n_chart, domain=domain),
            Chart(e_chart, domain=domain),
        )

    def conic_coords(self, u, t) -> tuple[float, float, float]:
        return self._conic(u, t)

    def normal(self, u, t) -> np.ndarray:
        return self._assemble(u, t)[1]

    def rational_norm(self, u, t) -> float:
        """|n(u,t)| as the rational witness y0/y1."""
        return self._assemble(u, t)[2]

    def base_point(self, u, t) -> np.ndarray:
        """Contact point on the base ruled surface."""
        return self._assemble(u, t)[0]


def _check_skew(R: RuledChart, probes: int = 100):
    us = np.linspace(R.domain.umin, R.domain.umax, probes)
    scale = 0.0
    worst = 0.0
    for u in us:
        dc, e, de = R.dc(u), R.direction(u), R.de(u)
        worst = max(worst, abs(float(np.linalg.det(np.vstack([dc, e, de])))))
        scale = max(scale, np.linalg.norm(dc) * np.linalg.norm(e) * np.linalg.norm(de), 1.0)
    if worst < 1e-10 * scale:
        raise DevelopableSurface("det(c', e, e') vanishes along the chart")


def rational_offset_ruled(R: RuledChart, d: float,
                          domain: Domain | None = None) -> RuledOffsetSurface:
    """Offset-family dual chart with rational-by-construction normal length.

    Requires a skew (non-developable) ruled surface; the default t-domain
    keeps the conic witness y1 = a2 - t^2 positive.
    """
    _check_skew(R)
    if domain is None:
        domain = Domain(R.domain.umin, R.domain.umax, 0.15, 0.85)
    return RuledOffsetSurface(R, d, domain)


def polar_pedal_of_ruled(R: RuledChart, d: float,
                         domain: Domain | None = None) -> PolarSurface:
    """Polar chart of the conchoid family of the pedal surface.

    g_d(u,t) = (f.n/|n| + d) n/|n| with the rational normal length of
    ``rational_offset_ruled``.
    """
    F = rational_offset_ruled(R, 0.0, domain)

    def s(u, t):
        f, n, w = F._assemble(u, t)
        return n / w

    def r(u, t):
        f, n, w = F._assemble(u, t)
        return float(f @ n) / w + d

    return PolarSurface(Chart(s, domain=F.domain), Chart(r, domain=F.domain))


def _footpoint_frame(R: RuledChart, u: float):
    """Foot-point directrix d(u), its derivative, e(u) and e'(u)."""
    dfun = footpoint_curve(R)
    d = dfun(u)
    ddot = _derive(dfun, u, R.h)
    return d, ddot, R.direction(u), R.de(u)


def inverse_pedal_ruled(R: RuledChart, u: float, v: float) -> np.ndarray:
    """Point of the inverse pedal surface of a ruled point chart.

    Solves the plane through g = d + v' e with normal O g together with its
    two derivative planes; v is measured along the chart's own directrix
    and is shifted internally to the foot-point directrix.
    """
    c = np.asarray(R.c(u), float)
    e = R.direction(u)
    d, ddot, _, edot = _footpoint_frame(R, u)
    # shift of the ruling parameter from c-based to footpoint-based
    vshift = float((c @ e) / (e @ e))
    w = v + vshift
    g = d + w * e
    if np.linalg.norm(g) < _EPS:
        raise OriginOnSurface(f"chart passes through O at ({u:.6g},{v:.6g})")
    M = np.vstack([
        d + w * e,
        ddot + w * edot,
        e,
    ])
    rhs = np.array([
        float(d @ d) + w * w * float(e @ e),
        2.0 * (float(d @ ddot) + w * w * float(e @ edot)),
        2.0 * w * float(e @ e),
    ])
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond > 1e12:
        raise DegenerateSystem(f"inverse pedal system condition {cond:.3g}")
    return np.linalg.solve(M, rhs)


@dataclass(frozen=True)
class ParabolicCylinder:
    """Envelope of the image planes of one ruling line.

    Cross sections are parabolas with focal point O and vertex at the
    foot-point d; rulings run along a = d x e.
    """

    vertex: np.ndarray
    line_direction: np.ndarray
    axis: np.ndarray  # cylinder ruling direction d x e

    def cross_section(self, v: float) -> np.ndarray:
        d, e = self.vertex, self.line_direction
        return (1.0 - v * v * float(e @ e) / float(d @ d)) * d + 2.0 * v * e

    def point(self, v: float, lam: float) -> np.ndarray:
        return self.cross_section(v) + lam * self.axis


def parabolic_cylinder_of_line(d, e) -> ParabolicCylinder:
    """Parabolic cylinder enveloped by the plane images of a line's points."""
    d = np.asarray(d, float)
    e = np.asarray(e, float)
    if np.linalg.norm(d) < _EPS:
        raise LineThroughOrigin("line through O has no parabolic cylinder")
    return ParabolicCylinder(d, e, np.cross(d, e))


def polar_norm_reparam(R: RuledChart, domain: Domain | None = None) -> PolarSurface:
    """Polar chart (u,t) of a ruled surface with rational radius.

    Rewrites |g|^2 = d(u)^2 + v^2 e(u)^2 as the conic family
    y2^2 d^2 + y1^2 e^2 - y0^2 = 0 and parameterizes each conic through
    the seed point construction, giving |g(u,t)| = y0/y2 exactly.
    """
    dfun = footpoint_curve(R)
    if domain is None:
        domain = Domain(R.domain.umin, R.domain.umax, 0.2, 1.5)

    def parts(u, t):
        d = dfun(u)
        if np.linalg.norm(d) < _EPS:
            raise LineThroughOrigin(f"ruling through O at u={u:.6g}")
        e = R.direction(u)
        y0, y1, y2 = conic_point_param(float(e @ e), float(d @ d), t)
        v = y1 / y2
        w = y0 / y2
        return d + v * e, w

    def s(u, t):
        g, w = parts(u, t)
        return g / w

    def r(u, t):
        return parts(u, t)[1]

    return PolarSurface(Chart(s, domain=domain), Chart(r, domain=domain))
