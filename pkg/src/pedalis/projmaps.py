"""Foot-point map, inversion and polarity in affine and homogeneous form.

Points of P^3 are written (x0,x1,x2,x3)R, planes as R(u0,u1,u2,u3); the
plane R(u0,...,u3) is the zero set of u0*x0 + ... + u3*x3, so the affine
plane n.x = e has homogeneous coordinates R(-e, n).  All maps here are
pure functions on immutable values; equality of projective tuples is up
to a nonzero scalar.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    BasePoint,
    ExceptionalElement,
    ExceptionalPlane,
    OriginPoint,
)

# Exceptional-set detection threshold on max-abs-normalized tuples.
EPS_EXCEPTIONAL = 1e-12


def canonical(coords) -> np.ndarray:
    """Canonical representative of a projective tuple.

    Scales so the max-abs component is 1, then fixes the sign so the first
    component with magnitude >= EPS_EXCEPTIONAL is positive.
    """
    v = np.asarray(coords, dtype=float)
    if v.shape != (4,):
        raise ValueError("projective tuples have exactly 4 components")
    m = np.max(np.abs(v))
    if m == 0.0 or not np.isfinite(m):
        raise ValueError("projective tuple must be nonzero and finite")
    v = v / m
    for c in v:
        if abs(c) >= EPS_EXCEPTIONAL:
            if c < 0.0:
                v = -v
            break
    return v


class _HTuple:
    """Shared behaviour of homogeneous point/plane tuples."""

    __slots__ = ("coords",)

    def __init__(self, *coords):
        if len(coords) == 1:
            coords = coords[0]
        v = np.asarray(coords, dtype=float)
        if v.shape != (4,):
            raise ValueError(f"{type(self).__name__} needs 4 coordinates")
        if not np.all(np.isfinite(v)) or np.max(np.abs(v)) == 0.0:
            raise ValueError(f"{type(self).__name__} must be nonzero and finite")
        self.coords = v

    def canonical(self) -> np.ndarray:
        return canonical(self.coords)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return projective_eq(self, other, 1e-9)

    def __hash__(self):
        raise TypeError(f"{type(self).__name__} is unhashable")

    def __repr__(self) -> str:
        vals = ",".join(f"{c:.12g}" for c in self.coords)
        return f"{type(self).__name__}({vals})"


class HPoint(_HTuple):
    """Point (x0,x1,x2,x3)R of P^3, equality up to nonzero scale."""

    def dehomogenize(self) -> np.ndarray:
        """Affine coordinates (x1/x0, x2/x0, x3/x0); error for ideal points."""
        v = self.canonical()
        if abs(v[0]) < EPS_EXCEPTIONAL:
            raise ExceptionalElement("ideal point has no affine coordinates")
        return v[1:] / v[0]

    @classmethod
    def from_affine(cls, p) -> "HPoint":
        p = np.asarray(p, dtype=float)
        return cls(np.concatenate(([1.0], p)))


class HPlane(_HTuple):
    """Plane R(u0,u1,u2,u3) of P^3, i.e. a point of the dual space."""

    def to_affine(self) -> "AffPlane":
        v = self.canonical()
        return AffPlane(v[1:], -v[0])

    @classmethod
    def from_affine(cls, plane: "AffPlane") -> "HPlane":
        return cls(np.concatenate(([-plane.offset], plane.normal)))


class AffPlane:
    """Affine plane n.x = e with a not necessarily unit normal n.

    (n, e) and (lam*n, lam*e) with lam != 0 denote the same non-oriented
    plane; both orientations are accepted.
    """

    __slots__ = ("normal", "offset")

    def __init__(self, normal, offset: float):
        n = np.asarray(normal, dtype=float)
        if n.shape != (3,):
            raise ValueError("plane normal needs 3 components")
        if not np.all(np.isfinite(n)) or np.linalg.norm(n) < EPS_EXCEPTIONAL:
            raise ExceptionalPlane("plane normal is (numerically) zero")
        self.normal = n
        self.offset = float(offset)

    def hplane(self) -> HPlane:
        return HPlane.from_affine(self)

    def distance(self, p) -> float:
        """Signed distance of the point p from the plane."""
        n = self.normal
        return (n @ np.asarray(p, float) - self.offset) / np.linalg.norm(n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffPlane):
            return NotImplemented
        return projective_eq(self.hplane(), other.hplane(), 1e-9)

    def __hash__(self):
        raise TypeError("AffPlane is unhashable")

    def __repr__(self) -> str:
        n = ",".join(f"{c:.12g}" for c in self.normal)
        return f"AffPlane(n=({n}), e={self.offset:.12g})"


def projective_eq(a, b, tol: float = 1e-9) -> bool:
    """Projective equality of two tuples after canonical normalization.

    Accepts HPoint/HPlane (which must be the same kind) or raw 4-sequences.
    """
    if isinstance(a, _HTuple) or isinstance(b, _HTuple):
        if type(a) is not type(b):
            raise TypeError("cannot compare a point tuple with a plane tuple")
        a, b = a.coords, b.coords
    ca = canonical(a)
    cb = canonical(b)
    return bool(np.max(np.abs(ca - cb)) <= tol)


def alpha_affine(plane: AffPlane) -> np.ndarray:
    """Foot of the perpendicular from the origin O onto the plane.

    Planes through O legally map to O; only a vanishing normal is an error.
    """
    n, e = plane.normal, plane.offset
    return (e / (n @ n)) * n


def alpha_star_affine(p) -> AffPlane:
    """Inverse foot-point map: the plane through p with normal Op."""
    p = np.asarray(p, dtype=float)
    if np.linalg.norm(p) < EPS_EXCEPTIONAL:
        raise OriginPoint("the reference point O has no image plane")
    return AffPlane(p, p @ p)


def alpha_z(plane: AffPlane, z) -> np.ndarray:
    """Foot of the perpendicular from the point z onto the plane."""
    n, e = plane.normal, plane.offset
    z = np.asarray(z, dtype=float)
    return z + ((e - z @ n) / (n @ n)) * n


def alpha_hom(U: HPlane) -> HPoint:
    """Homogeneous foot-point map R(u0,u) -> (-(u.u), u0*u)R."""
    v = U.canonical()
    u0, u = v[0], v[1:]
    img = np.concatenate(([-(u @ u)], u0 * u))
    if np.max(np.abs(img)) < EPS_EXCEPTIONAL:
        raise ExceptionalElement("ideal plane")
    return HPoint(img)


def alpha_star_hom(X: HPoint) -> HPlane:
    """Homogeneous inverse foot-point map (x0,x)R -> R(-(x.x), x0*x)."""
    v = X.canonical()
    x0, x = v[0], v[1:]
    img = np.concatenate(([-(x @ x)], x0 * x))
    if np.max(np.abs(img)) < EPS_EXCEPTIONAL:
        raise BasePoint("base point: reference point O")
    return HPlane(img)


def inversion_sigma(X: HPoint) -> HPoint:
    """Inversion at the unit sphere, (x0,x)R -> (x.x, x0*x)R."""
    v = X.canonical()
    x0, x = v[0], v[1:]
    img = np.concatenate(([x @ x], x0 * x))
    if np.max(np.abs(img)) < EPS_EXCEPTIONAL:
        raise BasePoint("base point of the inversion")
    return HPoint(img)


def polarity_pi(U: HPlane) -> HPoint:
    """Pole of the plane U with respect to the unit sphere."""
    v = U.coords
    return HPoint(np.concatenate(([-v[0]], v[1:])))


def polarity_pi_star(X: HPoint) -> HPlane:
    """Polar plane of the point X with respect to the unit sphere."""
    v = X.coords
    return HPlane(np.concatenate(([-v[0]], v[1:])))
