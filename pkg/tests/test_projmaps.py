import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pedalis.errors import BasePoint, ExceptionalElement, ExceptionalPlane, OriginPoint
from pedalis.projmaps import (
    AffPlane,
    HPlane,
    HPoint,
    alpha_affine,
    alpha_hom,
    alpha_star_affine,
    alpha_star_hom,
    alpha_z,
    canonical,
    inversion_sigma,
    polarity_pi,
    polarity_pi_star,
    projective_eq,
)

RNG = np.random.default_rng(20240517)


def random_hplane(rng):
    while True:
        v = rng.uniform(-1.0, 1.0, size=4)
        if np.max(np.abs(v)) < 1e-3:
            continue
        w = canonical(v)
        u0, u = w[0], w[1:]
        img = np.concatenate(([-(u @ u)], u0 * u))
        if np.max(np.abs(img)) >= 1e-6:
            return HPlane(w)


class TestAlphaAffine:
    def test_foot_on_horizontal_plane(self):
        p = alpha_affine(AffPlane([0, 0, 1], 1.0))
        assert np.allclose(p, [0, 0, 1])

    def test_scale_invariance(self):
        p = alpha_affine(AffPlane([0, 0, 2], 2.0))
        assert np.allclose(p, [0, 0, 1])

    def test_diagonal_plane(self):
        # orthogonal projection of O onto x + y = 2
        p = alpha_affine(AffPlane([1, 1, 0], 2.0))
        assert np.allclose(p, [1, 1, 0])

    def test_vanishing_normal_rejected(self):
        with pytest.raises(ExceptionalPlane):
            AffPlane([0, 0, 0], 1.0)

    def test_plane_through_origin_maps_to_origin(self):
        p = alpha_affine(AffPlane([0.3, -0.7, 0.2], 0.0))
        assert np.all(p == 0.0)


class TestAlphaStarAffine:
    def test_inverse_of_alpha_example(self):
        pl = alpha_star_affine([0, 0, 1])
        assert np.allclose(pl.normal, [0, 0, 1]) and pl.offset == 1.0

    def test_diagonal_point(self):
        pl = alpha_star_affine([1, 1, 0])
        assert pl == AffPlane([1, 1, 0], 2.0)

    def test_origin_rejected(self):
        with pytest.raises(OriginPoint):
            alpha_star_affine([0.0, 0.0, 0.0])


class TestHomogeneousMaps:
    def test_alpha_hom_tangent_plane(self):
        X = alpha_hom(HPlane([-1, 0, 0, 1]))
        assert projective_eq(X, HPoint([1, 0, 0, 1]), 1e-12)
        assert np.allclose(X.dehomogenize(), [0, 0, 1])

    def test_alpha_hom_ideal_plane(self):
        with pytest.raises(ExceptionalElement):
            alpha_hom(HPlane([1, 0, 0, 0]))

    def test_alpha_hom_plane_through_origin(self):
        X = alpha_hom(HPlane([0, 0, 0, 1]))
        assert projective_eq(X, HPoint([1, 0, 0, 0]), 1e-12)

    def test_alpha_star_hom_point(self):
        U = alpha_star_hom(HPoint([1, 0, 0, 1]))
        assert projective_eq(U, HPlane([-1, 0, 0, 1]), 1e-12)

    def test_alpha_star_hom_base_point(self):
        with pytest.raises(BasePoint):
            alpha_star_hom(HPoint([1, 0, 0, 0]))

    def test_sigma_examples(self):
        assert projective_eq(inversion_sigma(HPoint([1, 2, 0, 0])),
                             HPoint([4, 2, 0, 0]), 1e-12)
        assert projective_eq(inversion_sigma(HPoint([1, 1, 0, 0])),
                             HPoint([1, 1, 0, 0]), 1e-12)

    def test_polarity_examples(self):
        assert projective_eq(polarity_pi(HPlane([-1, 0, 0, 1])),
                             HPoint([1, 0, 0, 1]), 1e-12)
        assert projective_eq(polarity_pi(HPlane([1, 0, 0, 0])),
                             HPoint([-1, 0, 0, 0]), 1e-12)


class TestAlphaZ:
    def test_reduces_to_alpha_at_origin(self):
        for _ in range(50):
            n = RNG.uniform(-1, 1, 3)
            if np.linalg.norm(n) < 0.1:
                continue
            pl = AffPlane(n, RNG.uniform(-1, 1))
            assert np.allclose(alpha_z(pl, [0, 0, 0]), alpha_affine(pl))

    def test_off_origin_reference(self):
        assert np.allclose(alpha_z(AffPlane([0, 0, 1], 1.0), [0, 0, 3]), [0, 0, 1])

    def test_reference_on_plane_is_fixed(self):
        z = np.array([1.0, 1.0, 0.0])
        pl = AffPlane([1, 1, 0], float(z @ [1, 1, 0]))
        assert np.allclose(alpha_z(pl, z), z)


class TestProjectiveEq:
    def test_scalar_multiple(self):
        assert projective_eq([1, 0, 0, 1], [2, 0, 0, 2])

    def test_negative_scale(self):
        assert projective_eq([1, 0, 0, 1], [-3, 0, 0, -3])

    def test_close_but_not_equal(self):
        assert not projective_eq([1, 0, 0, 1], [1, 0, 0, 1.1], 1e-9)

    def test_point_plane_mismatch(self):
        with pytest.raises(TypeError):
            projective_eq(HPoint([1, 0, 0, 1]), HPlane([1, 0, 0, 1]))


finite4 = st.lists(
    st.floats(min_value=-10, max_value=10, allow_nan=False), min_size=4, max_size=4
).filter(lambda v: max(abs(x) for x in v) > 1e-2)


def _off_exceptional_sets(w):
    # keep a safe margin from the base loci (0-component and vector part)
    return abs(w[0]) >= 1e-3 and float(np.linalg.norm(w[1:])) >= 1e-3


class TestProperties:
    @given(finite4)
    @settings(max_examples=200, deadline=None)
    def test_round_trips(self, coords):
        w = canonical(coords)
        if not _off_exceptional_sets(w):
            return
        U = HPlane(w)
        X = alpha_hom(U)
        assert projective_eq(alpha_star_hom(X), U, 1e-9)
        P = HPoint(w)
        V = alpha_star_hom(P)
        assert projective_eq(alpha_hom(V), P, 1e-9)

    @given(finite4)
    @settings(max_examples=200, deadline=None)
    def test_factorizations(self, coords):
        w = canonical(coords)
        if not _off_exceptional_sets(w):
            return
        U = HPlane(w)
        assert projective_eq(alpha_hom(U), inversion_sigma(polarity_pi(U)), 1e-9)
        X = HPoint(w)
        assert projective_eq(alpha_star_hom(X),
                             polarity_pi_star(inversion_sigma(X)), 1e-9)

    @given(finite4)
    @settings(max_examples=200, deadline=None)
    def test_sigma_involution_and_pi_identity(self, coords):
        w = canonical(coords)
        if not _off_exceptional_sets(w):
            return
        X = HPoint(w)
        assert projective_eq(inversion_sigma(inversion_sigma(X)), X, 1e-9)
        U = HPlane(w)
        assert projective_eq(polarity_pi_star(polarity_pi(U)), U, 1e-12)

    def test_alpha_hom_matches_affine_chart(self):
        for _ in range(200):
            n = RNG.uniform(-2, 2, 3)
            if np.linalg.norm(n) < 0.1:
                continue
            e = RNG.uniform(-2, 2)
            pl = AffPlane(n, e)
            X = alpha_hom(pl.hplane())
            if abs(e) < 1e-9:
                assert projective_eq(X, HPoint([1, 0, 0, 0]), 1e-9)
            else:
                assert np.max(np.abs(X.dehomogenize() - alpha_affine(pl))) < 1e-9
