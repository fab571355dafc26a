from fractions import Fraction

import pytest

from ghostseries.boundary import (
    ap_check,
    boundary_polygon,
    halo_profile,
    scan_burn_in,
    ap_parameters,
)
from ghostseries.errors import GhostError
from ghostseries.polygon import ghost_slopes
from ghostseries.weightspace import Annulus, ComponentLabel, PrimeContext, is_prime


def test_boundary_p2_level1_is_1_2_3():
    bp = boundary_polygon(PrimeContext(2, 1), ComponentLabel(0, 2), 12)
    assert bp.slopes.slopes == tuple(Fraction(i) for i in range(1, 13))
    # every point is a vertex: lam(g_i) = i(i+1)/2
    assert bp.points[:5] == ((0, 0), (1, 1), (2, 3), (3, 6), (4, 10))


def test_boundary_p2_level3_fixture():
    bp = boundary_polygon(PrimeContext(2, 3), ComponentLabel(0, 2), 10)
    assert bp.slopes.slopes == (0, 1, 1, 1, 1, 2, 2, 2, 2, 3)


def test_boundary_p3_eventual_increments():
    bp = boundary_polygon(PrimeContext(3, 1), ComponentLabel(0, 3), 40)
    diffs = [b - a for a, b in zip(bp.slopes.slopes, bp.slopes.slopes[1:])]
    assert diffs[5:] == [2] * len(diffs[5:])


def test_ap_parameters():
    assert ap_parameters(PrimeContext(3, 1)) == (1, 2)
    assert ap_parameters(PrimeContext(5, 1)) == (5, 8)
    assert ap_parameters(PrimeContext(7, 1)) == (14, 18)
    assert ap_parameters(PrimeContext(3, 2)) == (3, 2)
    with pytest.raises(ValueError):
        ap_parameters(PrimeContext(2, 1))


def test_ap_count_integrality_grid():
    for p in range(3, 200, 2):
        if not is_prime(p):
            continue
        for N in range(1, 43):
            if N % p == 0:
                continue
            n_ap, delta = ap_parameters(PrimeContext(p, N))
            assert n_ap >= 1 and delta == (p - 1) ** 2 // 2


def test_ap_check_toy_sequences():
    toy = [Fraction(2 * j) for j in range(30)]
    report = ap_check(toy, 1, 2, 0)
    assert report.verified and report.first_violation is None
    bad = list(toy)
    bad[17] += 1
    report = ap_check(bad, 1, 2, 0)
    assert not report.verified and report.first_violation == 16
    with pytest.raises(GhostError):
        ap_check(toy[:3], 5, 8, 0)


def test_ap_structure_odd_primes():
    for (p, N, eps) in [(3, 1, 0), (5, 1, 0), (5, 1, 2), (7, 1, 0), (3, 2, 0)]:
        ctx = PrimeContext(p, N)
        n_ap, delta = ap_parameters(ctx)
        slopes = boundary_polygon(ctx, ComponentLabel(eps, p), 320).slopes
        burn = scan_burn_in(slopes, n_ap, delta, 100)
        assert burn is not None and burn <= 100, (p, N, eps)
        assert ap_check(slopes, n_ap, delta, burn).verified


def test_boundary_equals_scaled_annulus_slopes():
    # over 0 < v < 1 every leg collapses to v: slopes are the boundary times v
    for p in (3, 5, 7):
        for N in range(1, 7):
            if N % p == 0:
                continue
            ctx = PrimeContext(p, N)
            boundary = boundary_polygon(ctx, ComponentLabel(0, p), 50).slopes
            annulus = ghost_slopes(ctx, Annulus(0, Fraction(1, 2)), 50)
            assert [2 * s for s in annulus.slopes] == list(boundary.slopes), (p, N)


def test_halo_center_zero_slopes_linear_in_v():
    ctx = PrimeContext(2, 1)
    for r in (0, 1, 2):
        profile = halo_profile(ctx, 0, r, samples=3, n=20)
        for v, slopes in profile.rows:
            assert slopes.slopes == tuple(i * v for i in range(1, 21))
        assert profile.fits == tuple((Fraction(0), Fraction(i)) for i in range(1, 21))


def test_halo_center_62_slope_30_multiplicity_6():
    ctx = PrimeContext(2, 1)
    profile = halo_profile(ctx, 62, 20, samples=3, n=20)
    for _, slopes in profile.rows:
        assert list(slopes.slopes).count(Fraction(30)) == 6


def test_halo_rows_affine_fits():
    ctx = PrimeContext(2, 1)
    for r in range(5):
        profile = halo_profile(ctx, 62, r, samples=3, n=12)
        for t, (a, b) in enumerate(profile.fits):
            for v, slopes in profile.rows:
                assert slopes[t] == a + b * v


def test_halo_local_constancy_across_centers():
    ctx = PrimeContext(2, 1)
    a = ghost_slopes(ctx, Annulus(0, Fraction(1, 2)), 15)
    b = ghost_slopes(ctx, Annulus(62, Fraction(1, 2)), 15)
    assert a.slopes == b.slopes


def test_halo_validation():
    ctx = PrimeContext(2, 1)
    with pytest.raises(ValueError):
        halo_profile(ctx, 0, -1)
    with pytest.raises(ValueError):
        halo_profile(ctx, 0, 0, samples=0)
