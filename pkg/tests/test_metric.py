import math

import numpy as np
import pytest

import hartogs as hg
from hartogs.errors import DomainError, SamplingError, SingularityError
from hartogs.metric import (
    DomainPoint,
    fd_stencil_for,
    metric_fd_oracle,
    metric_matrix,
    require_interior,
)

from conftest import FAMILY_IDS, PSEUDOCONVEX_FAMILIES


class TestContains:
    def test_origin_interior(self):
        p = hg.contains(hg.Affine(1, 1), [0, 0])
        assert p is not None
        assert p.gap == 1.0
        assert p.margin == 1.0

    def test_boundary_point_outside(self):
        assert hg.contains(hg.Affine(1, 1), [0, 1]) is None

    def test_radial_bound(self):
        assert hg.contains(hg.Affine(1, 1), [1.0, 0]) is None

    def test_powercap_gap_value(self):
        # gap = (1 - 0.25)^2 - 0.09 = 0.4725
        p = hg.contains(hg.PowerCap(2), [0.5, 0.3j])
        assert p is not None
        assert p.gap == pytest.approx(0.4725, abs=1e-15)

    def test_require_interior_raises(self):
        with pytest.raises(DomainError):
            require_interior(hg.Affine(1, 1), [0, 1.2])

    def test_needs_two_coordinates(self):
        with pytest.raises(ValueError):
            hg.contains(hg.Affine(1, 1), [0.1])


class TestAssembly:
    def test_identity_at_origin(self):
        prof = hg.Affine(1, 1)
        m = hg.assemble_metric(prof, hg.contains(prof, [0, 0]))
        assert np.array_equal(m.h, np.eye(2).astype(complex))
        assert np.array_equal(m.h_inv, np.eye(2).astype(complex))
        assert m.det == 1.0

    def test_zero_fiber_kills_off_diagonals(self):
        prof = hg.ExpDecay(1)
        p = hg.contains(prof, [0.3 + 0.1j, 0, 0])
        m = hg.assemble_metric(prof, p)
        assert m.h[0, 1] == 0 and m.h[0, 2] == 0 and m.h[1, 2] == 0
        assert m.h[1, 1] == m.h[2, 2]

    def test_hermitian_by_construction(self, points_for):
        prof = hg.PowerCap(2)
        for p in points_for(prof, 4):
            m = hg.assemble_metric(prof, p)
            assert np.array_equal(m.h, m.h.conj().T)
            assert np.array_equal(m.h_inv, m.h_inv.conj().T)

    def test_non_interior_rejected(self):
        prof = hg.Affine(1, 1)
        bogus = DomainPoint(np.array([0, 1.0], complex), 0.0, 0.0, 0.0)
        with pytest.raises(DomainError):
            hg.assemble_metric(prof, bogus)

    def test_singular_profile_rejected(self):
        probe = hg.ConstantProbe()
        p = hg.contains(probe, [0.2, 0.3])
        with pytest.raises(SingularityError):
            hg.assemble_metric(probe, p)
        with pytest.raises(SingularityError):
            hg.metric_determinant(probe, p)


@pytest.mark.parametrize("profile", PSEUDOCONVEX_FAMILIES, ids=FAMILY_IDS)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_closed_form_vs_fd_hessian(profile, n, points_for):
    for p in points_for(profile, n):
        m = hg.assemble_metric(profile, p)
        fd = metric_fd_oracle(profile, p)
        err = np.linalg.norm(m.h - fd) / (1.0 + np.linalg.norm(m.h))
        assert err <= 1e-6


@pytest.mark.parametrize("profile", PSEUDOCONVEX_FAMILIES, ids=FAMILY_IDS)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_determinant_and_inverse_identities(profile, n, points_for):
    eye = np.eye(n)
    for p in points_for(profile, n):
        m = hg.assemble_metric(profile, p)
        dense = np.linalg.det(m.h).real
        assert abs(m.det - dense) <= 1e-10 * (1.0 + abs(m.det))
        assert np.linalg.norm(m.h @ m.h_inv - eye) <= 1e-10
        # determinant also reads as F^2 * margin / gap^(n+1)
        f = profile.eval(p.x)
        alt = f * f * hg.pseudoconvexity_margin(profile, p.x) / p.gap ** (n + 1)
        assert m.det == pytest.approx(alt, rel=1e-12)


def test_determinant_examples():
    assert hg.metric_determinant(hg.Affine(1, 1), hg.contains(hg.Affine(1, 1), [0, 0])) == 1.0
    assert (
        hg.metric_determinant(hg.Affine(1, 1), hg.contains(hg.Affine(1, 1), [0, 0, 0])) == 1.0
    )
    # expdecay(1) at (1, 0, 0): margin is 1, gap = e^-1, so det = e^-2 / e^-4
    prof = hg.ExpDecay(1)
    det = hg.metric_determinant(prof, hg.contains(prof, [1, 0, 0]))
    assert det == pytest.approx(math.e**2, rel=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_principal_minor_formula(n, points_for):
    # det of the fiber block of gap^2 h is gap^(n-1) + gap^(n-2) * fiber norm
    prof = hg.Affine(2, 3)
    for p in points_for(prof, n):
        m = hg.assemble_metric(prof, p)
        block = (p.gap**2 * m.h)[1:, 1:]
        fiber = sum(abs(complex(z)) ** 2 for z in p.z[1:])
        want = p.gap ** (n - 1) + p.gap ** (n - 2) * fiber
        got = np.linalg.det(block).real
        assert got == pytest.approx(want, rel=1e-10)


@pytest.mark.parametrize("profile", PSEUDOCONVEX_FAMILIES, ids=FAMILY_IDS)
def test_positive_definiteness_tracks_margin(profile, points_for):
    for p in points_for(profile, 3):
        assert hg.pseudoconvexity_margin(profile, p.x) > 0
        assert hg.is_positive_definite(metric_matrix(profile, p.z))


def test_degenerate_probe_not_positive_definite():
    probe = hg.ConstantProbe()
    z = np.array([0.4, 0.3 + 0.2j], complex)
    assert hg.pseudoconvexity_margin(probe, 0.16) == 0.0
    assert not hg.is_positive_definite(metric_matrix(probe, z))


def test_is_positive_definite_basics():
    assert hg.is_positive_definite(np.eye(3).astype(complex))
    assert not hg.is_positive_definite(np.diag([1.0, -1.0]).astype(complex))
    assert not hg.is_positive_definite(np.diag([1.0, 0.0]).astype(complex))


class TestSampling:
    def test_determinism(self):
        a = hg.sample_interior(hg.PowerCap(2), 3, 7, seed=42)
        b = hg.sample_interior(hg.PowerCap(2), 3, 7, seed=42)
        assert len(a) == len(b) == 7
        for pa, pb in zip(a, b):
            assert np.array_equal(pa.z, pb.z)

    def test_margins_respected(self):
        for p in hg.sample_interior(hg.Affine(1, 1), 2, 25, seed=7, min_margin=0.05):
            assert p.gap >= 0.05
            assert p.margin >= 0.05

    def test_tight_margin_clusters_near_origin(self):
        pts = hg.sample_interior(hg.Affine(1, 1), 2, 5, seed=3, min_margin=0.999)
        for p in pts:
            assert p.gap >= 0.999
            assert max(abs(complex(z)) for z in p.z) < 0.05

    def test_unbounded_profiles_capped(self):
        for p in hg.sample_interior(hg.Rational(), 2, 20, seed=9, min_margin=0.05):
            assert p.x <= 10.0

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            hg.sample_interior(hg.Affine(1, 1), 2, 0, seed=1)
        with pytest.raises(ValueError):
            hg.sample_interior(hg.Affine(1, 1), 1, 5, seed=1)

    def test_impossible_margin_raises(self):
        with pytest.raises(SamplingError):
            hg.sample_interior(hg.Affine(1, 1), 2, 1, seed=1, min_margin=1.5)


def test_potential_nan_outside():
    prof = hg.Affine(1, 1)
    assert math.isnan(hg.kahler_potential(prof, np.array([0, 1.5], complex)))
    assert math.isnan(hg.kahler_potential(prof, np.array([1.2, 0], complex)))
    assert hg.kahler_potential(prof, np.zeros(2, complex)) == 0.0


def test_adaptive_stencil_shrinks_with_margin():
    prof = hg.Affine(2, 3)
    tight = hg.contains(prof, [0.1, math.sqrt(2 - 3 * 0.01 - 0.06)])
    roomy = hg.contains(prof, [0.0, 0.0])
    assert tight is not None and roomy is not None
    assert fd_stencil_for(prof, tight).step < fd_stencil_for(prof, roomy).step
    # ten-step interiority contract
    assert 10 * fd_stencil_for(prof, tight).step <= tight.margin
