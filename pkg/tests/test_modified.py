import json
from fractions import Fraction

import pytest

from ghostseries.errors import ExternalDataError
from ghostseries.modified import (
    ModifiedFamily,
    Weight2SeedSlopes,
    bundled_seed,
    load_seed,
    modified_boundary_slopes,
    modified_coefficient,
    modified_multiplicity,
    regularity_check_p2,
    seed_multiplicities,
)
from ghostseries.polygon import ghost_slopes
from ghostseries.weightspace import Annulus, Classical, EtaEight, PrimeContext

HALF = Fraction(1, 2)
CTX23 = PrimeContext(2, 3)


def seed3():
    return Weight2SeedSlopes(3, (HALF, HALF))


def test_seed_validation():
    seed = seed3()
    assert seed.dimension == 2
    with pytest.raises(ExternalDataError):
        Weight2SeedSlopes(3, (HALF,))  # wrong length
    with pytest.raises(ExternalDataError):
        Weight2SeedSlopes(3, (Fraction(1, 3), Fraction(1, 3)))  # not symmetric
    with pytest.raises(ExternalDataError):
        Weight2SeedSlopes(3, (Fraction(3, 4), Fraction(1, 4)))  # not sorted
    with pytest.raises(ValueError):
        Weight2SeedSlopes(2, ())  # even level


def test_bundled_and_file_seeds(tmp_path):
    assert bundled_seed(3) == seed3()
    assert bundled_seed(1).slopes == ()
    with pytest.raises(ExternalDataError):
        bundled_seed(7)
    path = tmp_path / "seed.json"
    path.write_text(json.dumps({
        "N": 3,
        "weight2_slopes": [{"num": 1, "den": 2}, {"num": 1, "den": 2}],
    }))
    assert load_seed(path) == seed3()
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"N": 3}))
    with pytest.raises(ExternalDataError):
        load_seed(bad)


def test_seed_multiplicities_examples():
    assert seed_multiplicities(seed3()) == (1, 0)
    assert seed_multiplicities(Weight2SeedSlopes(1, ())) == ()
    # two fractional blocks (dim 4 happens at N = 5): mu = 2, beta = 1
    # contributes s(1, 0) = (1, 0, ...) and mu = 2, beta = 3 contributes
    # s(1, 2) = (0, 0, 1, 0, ...)
    thirds = Weight2SeedSlopes(5, (Fraction(1, 3), Fraction(1, 3), Fraction(2, 3), Fraction(2, 3)))
    assert seed_multiplicities(thirds) == (1, 0, 1, 0)
    # integer slopes never contribute
    whole = Weight2SeedSlopes(3, (Fraction(0), Fraction(1)))
    assert seed_multiplicities(whole) == (0, 0)


def test_positivity_criterion():
    # m_i(2) > 0 iff the i-th and (i+1)-st seed slopes agree in (0, 1)
    thirds = Weight2SeedSlopes(5, (Fraction(1, 3), Fraction(1, 3), Fraction(2, 3), Fraction(2, 3)))
    for seed in (seed3(), thirds, Weight2SeedSlopes(3, (Fraction(0), Fraction(1)))):
        mults = seed_multiplicities(seed)
        s = seed.slopes
        for i in range(1, len(s) + 1):
            expected = (
                i < len(s)
                and s[i - 1] == s[i]
                and 0 < s[i - 1] < 1
            )
            assert (mults[i - 1] > 0) == expected


def test_modified_multiplicity_reflection():
    seed = seed3()
    assert modified_multiplicity(3, 5, 3, seed) == 1  # d_3 = 6
    assert modified_multiplicity(3, 9, 4, seed) == 1  # d_4 = 10
    assert modified_multiplicity(3, 2, 3, seed) == 0
    assert modified_multiplicity(3, 1, 2, seed) == 1
    assert modified_multiplicity(3, 2, 2, seed) == 0
    with pytest.raises(ValueError):
        modified_multiplicity(3, 1, 1, seed)
    with pytest.raises(ValueError):
        modified_multiplicity(5, 1, 2, seed)


def test_modified_coefficient_divisors():
    seed = seed3()
    c1 = modified_coefficient(CTX23, 1, seed)
    assert dict(c1.extra) == {EtaEight(2): 1}
    assert c1.lam == c1.base.lam + 1
    c2 = modified_coefficient(CTX23, 2, seed)
    assert not c2.extra
    c5 = modified_coefficient(CTX23, 5, seed)
    assert dict(c5.extra) == {EtaEight(3): 1}
    c9 = modified_coefficient(CTX23, 9, seed)
    assert dict(c9.extra) == {EtaEight(4): 1}
    with pytest.raises(ValueError):
        modified_coefficient(PrimeContext(3, 1), 1, seed)


def test_level_one_extra_is_empty():
    seed = bundled_seed(1)
    ctx = PrimeContext(2, 1)
    for i in (1, 2, 7, 20):
        assert not modified_coefficient(ctx, i, seed).extra


def test_extra_degree_growth():
    family = ModifiedFamily(CTX23, seed3())
    extra = family.extra_degrees(200)
    # one extra zero per weight: indices d_k - 1 = 4k - 7, k = 2, 3, 4, ...
    assert sum(extra) == 50
    assert all((extra[i] == 1) == (i % 4 == 1) for i in range(1, 201))


def test_degree_array_matches_divisors():
    family = ModifiedFamily(CTX23, seed3())
    lams = family.lam_upto(40)
    for i in range(1, 41):
        assert lams[i] == family.divisor(i).lam


def test_modified_boundary_slopes_fixture():
    got = modified_boundary_slopes(3, seed3(), 10)
    assert got.slopes == (HALF, HALF, 1, 1, Fraction(3, 2), Fraction(3, 2), 2, 2, Fraction(5, 2), Fraction(5, 2))
    plain = modified_boundary_slopes(1, bundled_seed(1), 6)
    assert plain.slopes == (1, 2, 3, 4, 5, 6)


def test_modified_annulus_scaling():
    seed = seed3()
    boundary = modified_boundary_slopes(3, seed, 12)
    for v in (Fraction(1, 3), HALF, Fraction(3, 4)):
        slopes = ghost_slopes(CTX23, Annulus(0, v), 12, seed=seed)
        assert [s / v for s in slopes.slopes] == list(boundary.slopes)


def test_n1_pipelines_agree():
    ctx = PrimeContext(2, 1)
    seed = bundled_seed(1)
    for kappa in (Classical(0), Classical(-2), Annulus(0, Fraction(5, 2))):
        assert ghost_slopes(ctx, kappa, 8).slopes == ghost_slopes(ctx, kappa, 8, seed=seed).slopes


def test_regularity_check():
    # S_2 and S_4 at Gamma_0(3) are zero-dimensional: vacuously regular
    assert regularity_check_p2(3, [], []) is True
    # level 5: dim S_4 = 1 and the true T_2 slope there is 2 -> irregular
    assert regularity_check_p2(5, [], [2]) is False
    assert regularity_check_p2(5, [], [1]) is True
    with pytest.raises(ExternalDataError):
        regularity_check_p2(3, None, [])
    with pytest.raises(ValueError):
        regularity_check_p2(3, [0], [])  # wrong length
