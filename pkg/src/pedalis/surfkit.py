"""Surface charts, the envelope solver and the offset/conchoid pipelines.

A surface enters the kernel in one of three representations:

* ``DualSurface``   -- chart of tangent planes (n(u,v), e(u,v)),
* ``PolarSurface``  -- polar chart r(u,v)*s(u,v) with unit s,
* ``PointSurface``  -- plain point chart f(u,v).

The foot-point map exchanges dual and point/polar charts pointwise; the
envelope solver recovers point charts from plane charts by solving the
3x3 system {n.x=e, n_u.x=e_u, n_v.x=e_v}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import projmaps
from .errors import (
    DegenerateEnvelope,
    EmptyMesh,
    GeometryError,
    NonUnitNormal,
)
from .projmaps import AffPlane, HPlane, HPoint, alpha_affine

# Envelope solves with an estimated condition number above this are
# treated as degenerate (developable / plane / point cases).
COND_LIMIT = 1e12


@dataclass(frozen=True)
class Domain:
    """Parameter rectangle [umin,umax] x [vmin,vmax]."""

    umin: float
    umax: float
    vmin: float
    vmax: float

    def grid(self, nu: int, nv: int) -> tuple[np.ndarray, np.ndarray]:
        """Flattened meshgrid of nu*nv samples including the boundary."""
        u = np.linspace(self.umin, self.umax, nu)
        v = np.linspace(self.vmin, self.vmax, nv)
        U, V = np.meshgrid(u, v, indexing="ij")
        return U.ravel(), V.ravel()

    @property
    def uspan(self) -> float:
        return self.umax - self.umin

    @property
    def vspan(self) -> float:
        return self.vmax - self.vmin


UNIT_SQUARE = Domain(0.0, 1.0, 0.0, 1.0)


class Chart:
    """Smooth map (u,v) -> scalar or vector with derivative access.

    Analytic partials are used when given; otherwise central differences
    with step ``fd_step`` (default 1e-6 times the domain span).  ``singular``
    optionally flags parameter values to be dropped by samplers.
    """

    def __init__(self, f, du=None, dv=None, domain: Domain = UNIT_SQUARE,
                 fd_step: float | None = None, singular=None):
        self._f = f
        self._du = du
        self._dv = dv
        self.domain = domain
        self._singular = singular
        span = max(domain.uspan, domain.vspan, 1e-6)
        self._h = fd_step if fd_step is not None else 1e-6 * span

    def __call__(self, u: float, v: float):
        return self._f(u, v)

    @property
    def has_analytic_partials(self) -> bool:
        return self._du is not None and self._dv is not None

    def du(self, u: float, v: float):
        if self._du is not None:
            return self._du(u, v)
        h = self._h
        return (np.asarray(self._f(u + h, v)) - np.asarray(self._f(u - h, v))) / (2 * h)

    def dv(self, u: float, v: float):
        if self._dv is not None:
            return self._dv(u, v)
        h = self._h
        return (np.asarray(self._f(u, v + h)) - np.asarray(self._f(u, v - h))) / (2 * h)

    def is_singular(self, u: float, v: float) -> bool:
        return bool(self._singular(u, v)) if self._singular is not None else False


def constant_chart(value, domain: Domain = UNIT_SQUARE) -> Chart:
    val = np.asarray(value, dtype=float) if np.ndim(value) else float(value)
    zero = np.zeros_like(val) if np.ndim(val) else 0.0
    return Chart(lambda u, v: val, lambda u, v: zero, lambda u, v: zero, domain)


def _probe_unit(n_chart: Chart, tol: float, samples: int = 5):
    U, V = n_chart.domain.grid(samples, samples)
    for u, v in zip(U, V):
        if n_chart.is_singular(u, v):
            continue
        norm = np.linalg.norm(np.asarray(n_chart(u, v), dtype=float))
        if abs(norm - 1.0) > tol:
            raise NonUnitNormal(f"normal length {norm:.6g} at ({u:.3g},{v:.3g})")


class DualSurface:
    """Two-parameter family of tangent planes n(u,v).x = e(u,v)."""

    def __init__(self, n: Chart, e: Chart):
        self.n = n
        self.e = e
        self.domain = n.domain

    def plane(self, u, v) -> AffPlane:
        return AffPlane(np.asarray(self.n(u, v), float), float(self.e(u, v)))

    def hplane(self, u, v) -> HPlane:
        n = np.asarray(self.n(u, v), float)
        return HPlane(np.concatenate(([-float(self.e(u, v))], n)))

    def htuple(self, u, v) -> np.ndarray:
        n = np.asarray(self.n(u, v), float)
        return np.concatenate(([-float(self.e(u, v))], n))

    def is_singular(self, u, v) -> bool:
        return self.n.is_singular(u, v) or self.e.is_singular(u, v)


class PointSurface:
    """Plain point chart f(u,v)."""

    def __init__(self, f: Chart):
        self.f = f
        self.domain = f.domain

    def point(self, u, v) -> np.ndarray:
        return np.asarray(self.f(u, v), dtype=float)

    def htuple(self, u, v) -> np.ndarray:
        return np.concatenate(([1.0], self.point(u, v)))

    def is_singular(self, u, v) -> bool:
        return self.f.is_singular(u, v)


class PolarSurface:
    """Polar chart r(u,v)*s(u,v); s stays on the unit sphere."""

    def __init__(self, s: Chart, r: Chart):
        self.s = s
        self.r = r
        self.domain = s.domain

    def point(self, u, v) -> np.ndarray:
        return float(self.r(u, v)) * np.asarray(self.s(u, v), dtype=float)

    def htuple(self, u, v) -> np.ndarray:
        return np.concatenate(([1.0], self.point(u, v)))

    def to_point_surface(self) -> PointSurface:
        return PointSurface(Chart(
            lambda u, v: self.point(u, v),
            domain=self.domain,
            singular=lambda u, v: self.is_singular(u, v),
        ))

    def is_singular(self, u, v) -> bool:
        return self.s.is_singular(u, v) or self.r.is_singular(u, v)


# -- constructors and the offset / conchoid maps --------------------------


def phi(n_chart: Chart, e_chart: Chart, tol: float = 1e-9) -> DualSurface:
    """Dual surface from a unit normal field and a support function."""
    _probe_unit(n_chart, tol)
    return DualSurface(n_chart, e_chart)


def gamma(s_chart: Chart, r_chart: Chart, tol: float = 1e-9) -> PolarSurface:
    """Polar surface from a unit direction field and a radius function."""
    _probe_unit(s_chart, tol)
    return PolarSurface(s_chart, r_chart)


def _shift_chart(e: Chart, d: float) -> Chart:
    return Chart(
        lambda u, v: float(e(u, v)) + d,
        (lambda u, v: e.du(u, v)),
        (lambda u, v: e.dv(u, v)),
        e.domain,
        singular=e.is_singular,
    )


def offset_map(F: DualSurface, d: float, tol: float = 1e-9) -> DualSurface:
    """Offset at distance d: same unit normals, supports e + d."""
    _probe_unit(F.n, tol)
    return DualSurface(F.n, _shift_chart(F.e, d))


def conchoid_map(G: PolarSurface, d: float) -> PolarSurface:
    """Conchoid at distance d: same directions, radii r + d."""
    return PolarSurface(G.s, _shift_chart(G.r, d))


# -- envelope -------------------------------------------------------------


def envelope_solve(F: DualSurface, u: float, v: float,
                   cond_limit: float = COND_LIMIT) -> np.ndarray:
    """Envelope point of the plane family at (u,v).

    Solves n.x = e, n_u.x = e_u, n_v.x = e_v; a singular or ill-conditioned
    matrix signals one of the degenerate cases (plane, developable, point).
    """
    M = np.vstack([
        np.asarray(F.n(u, v), float),
        np.asarray(F.n.du(u, v), float),
        np.asarray(F.n.dv(u, v), float),
    ])
    rhs = np.array([float(F.e(u, v)), float(F.e.du(u, v)), float(F.e.dv(u, v))])
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond > cond_limit:
        raise DegenerateEnvelope(f"envelope system condition {cond:.3g}")
    return np.linalg.solve(M, rhs)


def envelope_surface(F: DualSurface) -> PointSurface:
    """Point chart of the envelope of a dual surface."""
    return PointSurface(Chart(
        lambda u, v: envelope_solve(F, u, v),
        domain=F.domain,
        singular=lambda u, v: F.is_singular(u, v),
    ))


# -- foot-point map on charts ----------------------------------------------


def dual_to_point(F: DualSurface) -> PointSurface:
    """Pedal chart: the foot-point map applied to each tangent plane."""
    def f(u, v):
        return alpha_affine(F.plane(u, v))
    return PointSurface(Chart(f, domain=F.domain,
                              singular=lambda u, v: F.is_singular(u, v)))


def point_to_dual(G: PointSurface | PolarSurface) -> DualSurface:
    """Inverse pedal chart: plane x.g = g.g through each point.

    The resulting plane chart has analytic partials whenever the point
    chart does (n = g, e = g.g need only first derivatives of g).
    """
    if isinstance(G, PolarSurface):
        G = G.to_point_surface()
    g = G.f

    def n(u, v):
        return g(u, v)

    def e(u, v):
        p = np.asarray(g(u, v), float)
        return float(p @ p)

    n_du = n_dv = e_du = e_dv = None
    if g.has_analytic_partials:
        n_du = g.du
        n_dv = g.dv
        e_du = lambda u, v: 2.0 * float(np.asarray(g(u, v), float) @ np.asarray(g.du(u, v), float))
        e_dv = lambda u, v: 2.0 * float(np.asarray(g(u, v), float) @ np.asarray(g.dv(u, v), float))
    sing = lambda u, v: G.is_singular(u, v)
    return DualSurface(
        Chart(n, n_du, n_dv, g.domain, singular=sing),
        Chart(e, e_du, e_dv, g.domain, singular=sing),
    )


def tangent_planes(G: PointSurface) -> DualSurface:
    """Tangent-plane chart n = g_u x g_v, e = g.n of a point chart.

    Derivatives of this chart are always finite differences; accuracy is
    best when the point chart has analytic partials.
    """
    g = G.f

    def n(u, v):
        return np.cross(np.asarray(g.du(u, v), float), np.asarray(g.dv(u, v), float))

    def e(u, v):
        return float(np.asarray(g(u, v), float) @ n(u, v))

    # second derivatives of g are not available: difference the n-chart,
    # with a larger step when g itself is differenced
    h = 1e-6 * max(g.domain.uspan, g.domain.vspan, 1e-6)
    if not g.has_analytic_partials:
        h = 5e-4 * max(g.domain.uspan, g.domain.vspan, 1e-6)
    sing = lambda u, v: G.is_singular(u, v)
    return DualSurface(
        Chart(n, domain=g.domain, fd_step=h, singular=sing),
        Chart(e, domain=g.domain, fd_step=h, singular=sing),
    )


# -- commuting diagrams -----------------------------------------------------


def commutation_check(n_chart: Chart, e_chart: Chart, d: float,
                      grid: tuple[int, int] = (50, 50)) -> float:
    """Max deviation between the two paths of both foot-point diagrams.

    Primal: offset the plane family by d then map by the foot-point map,
    versus map first and push the radius by d.  Dual: map the shifted point
    back, versus offset the mapped plane family.  Samples where a path hits
    an exceptional set are skipped.
    """
    nu, nv = grid
    U, V = n_chart.domain.grid(nu, nv)
    worst = 0.0
    for u, v in zip(U, V):
        if n_chart.is_singular(u, v) or e_chart.is_singular(u, v):
            continue
        n = np.asarray(n_chart(u, v), float)
        e = float(e_chart(u, v))
        # primal diagram: alpha(offset) vs conchoid(alpha), via the
        # quadratic homogeneous map on one side
        try:
            X = projmaps.alpha_hom(HPlane(np.concatenate(([-(e + d)], n))))
            p1 = X.dehomogenize()
        except GeometryError:
            continue
        p2 = (e + d) * n
        worst = max(worst, float(np.max(np.abs(p1 - p2))))
        # dual diagram: alpha*(shifted point) vs shifted plane family
        point = (e + d) * n
        if np.linalg.norm(point) < 1e-9:
            continue
        back = projmaps.alpha_star_hom(HPoint(np.concatenate(([1.0], point))))
        expect = np.concatenate(([-(e + d)], n))
        dev = np.max(np.abs(projmaps.canonical(back.coords) - projmaps.canonical(expect)))
        worst = max(worst, float(dev))
    return worst


# -- meshing ---------------------------------------------------------------


@dataclass
class Mesh:
    vertices: np.ndarray  # (N, 3)
    faces: list[tuple[int, int, int]]  # 0-based triangles


def sample_mesh(S, nu: int, nv: int) -> Mesh:
    """Grid-sample a point or polar surface into a triangle mesh.

    Invalid samples (non-finite, or flagged singular) are dropped together
    with their incident faces.
    """
    if nu < 2 or nv < 2:
        raise ValueError("mesh grids need at least 2 samples per direction")
    if isinstance(S, PolarSurface):
        S = S.to_point_surface()
    dom = S.domain
    us = np.linspace(dom.umin, dom.umax, nu)
    vs = np.linspace(dom.vmin, dom.vmax, nv)
    index = -np.ones((nu, nv), dtype=int)
    verts: list[np.ndarray] = []
    for i, u in enumerate(us):
        for j, v in enumerate(vs):
            if S.is_singular(u, v):
                continue
            try:
                p = S.point(u, v)
            except Exception:
                continue
            if not np.all(np.isfinite(p)):
                continue
            index[i, j] = len(verts)
            verts.append(p)
    if not verts:
        raise EmptyMesh("no valid samples on the grid")
    faces = []
    for i in range(nu - 1):
        for j in range(nv - 1):
            a, b, c, d = index[i, j], index[i + 1, j], index[i + 1, j + 1], index[i, j + 1]
            if min(a, b, c, d) < 0:
                continue
            faces.append((a, b, c))
            faces.append((a, c, d))
    return Mesh(np.array(verts), faces)


def write_obj(mesh: Mesh, target) -> None:
    """Write a mesh as Wavefront OBJ (v/f records, 1-based, triangles)."""
    close = False
    if isinstance(target, (str, bytes)):
        fh = open(target, "w", encoding="ascii")
        close = True
    else:
        fh = target
    try:
        for p in mesh.vertices:
            fh.write(f"v {p[0]:.12g} {p[1]:.12g} {p[2]:.12g}\n")
        for a, b, c in mesh.faces:
            fh.write(f"f {a + 1} {b + 1} {c + 1}\n")
    finally:
        if close:
            fh.close()
