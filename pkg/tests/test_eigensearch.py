from math import gcd

import pytest

from phaseloc.combcalc import comb_entropy_phase, comb_entropy_x, comb_fourier, comb_max_deviation, phi, canonical_form
from phaseloc.eigensearch import (
    Family,
    argmin,
    best_known,
    equal_up_to_phase,
    family_comb,
    series_count_formula,
    survey,
)
from phaseloc.subspace import SubspaceSpec

from conftest import S_GAUSS, S_MINUS1, S_PLUS_I, S_PSI0

TIE = 1e-12


@pytest.fixture(scope="module")
def surveys():
    return {f: survey(f) for f in Family}


def test_even_zero_minimum(surveys):
    best = argmin(surveys[Family.EVEN_ZERO])
    assert (best.q, best.p) == (1, 2)
    assert abs(best.entropy - S_MINUS1) < 1e-9


def test_odd_half_minimum_is_mirror_pair(surveys):
    rows = surveys[Family.ODD_HALF]
    tied = {(r.q, r.p) for r in rows if r.entropy - rows[0].entropy <= 1e-10}
    assert tied == {(1, 3), (3, 1)}
    row31 = next(r for r in rows if (r.q, r.p) == (3, 1))
    assert abs(row31.entropy - S_PLUS_I) < 1e-9


def test_entropy_two_rows(surveys):
    for r in surveys[Family.EVEN_HALF]:
        if r.p % 2:
            assert abs(r.entropy - 2) < 1e-12 and r.series_count == r.p + r.q
    for r in surveys[Family.ODD_HALF]:
        if r.p % 2 == 0 or r.q % 2 == 0:
            assert abs(r.entropy - 2) < 1e-12 and r.series_count == r.q + r.p


def test_survey_sorted_and_bounded(surveys):
    for rows in surveys.values():
        es = [r.entropy for r in rows]
        assert all(b >= a - 1e-10 for a, b in zip(es, es[1:]))
        assert all(gcd(r.q, r.p) == 1 for r in rows)
        assert all(r.entropy >= S_GAUSS for r in rows)


@pytest.mark.parametrize("family", list(Family))
def test_series_count_formula_matches_construction(family):
    for q in range(1, 13):
        for p in range(1, 13):
            if gcd(q, p) != 1 or (q == p == 1 and family is not Family.EVEN_HALF):
                continue
            assert family_comb(family, q, p).n_series == series_count_formula(family, q, p)


def test_series_count_examples():
    assert series_count_formula(Family.EVEN_ZERO, 1, 2) == 2
    assert series_count_formula(Family.ODD_HALF, 3, 1) == 3
    assert series_count_formula(Family.EVEN_HALF, 1, 3) == 4


def test_degenerate_seeds_excluded():
    assert series_count_formula(Family.EVEN_ZERO, 1, 1) == 0
    assert all((r.q, r.p) != (1, 1) for r in survey(Family.ODD_HALF, 3, 3))


def test_survey_eigenrelation(surveys):
    for family, rows in surveys.items():
        lam = family.target.lam
        for r in rows:
            assert comb_max_deviation(comb_fourier(r.comb), lam * r.comb.to_comb()) <= 1e-12


def test_even_zero_mirror_symmetry(surveys):
    e = {(r.q, r.p): r.entropy for r in surveys[Family.EVEN_ZERO]}
    for (q, p), v in e.items():
        assert abs(v - e[(p, q)]) <= 1e-12


def test_even_half_best_equals_even_zero(surveys):
    rows = surveys[Family.EVEN_HALF]
    assert (rows[0].q, rows[0].p) == (1, 2)
    assert equal_up_to_phase(rows[0].comb, family_comb(Family.EVEN_ZERO, 1, 2))
    assert not equal_up_to_phase(rows[0].comb, family_comb(Family.EVEN_ZERO, 1, 8))


def test_family_target_checks():
    with pytest.raises(ValueError):
        survey(Family.ODD_HALF, sub=SubspaceSpec.eigen(-1))
    with pytest.raises(ValueError):
        survey(Family.EVEN_ZERO, 0, 3)


def test_best_known():
    assert abs(comb_entropy_phase(best_known(SubspaceSpec.eigen(-1))) - S_MINUS1) < 1e-9
    assert abs(comb_entropy_phase(best_known(SubspaceSpec.antisymmetric())) - S_PSI0) < 1e-12
    assert abs(comb_entropy_phase(best_known(SubspaceSpec.eigen(-1j))) - S_PSI0) < 1e-12
    plus1 = best_known(SubspaceSpec.eigen(1))
    # 1 - log 2 is the position-space share; the full phase-space value doubles it
    assert abs(comb_entropy_x(plus1) - S_GAUSS) < 1e-12
    assert abs(comb_entropy_phase(plus1) - 2 * S_GAUSS) < 1e-12
    assert best_known(SubspaceSpec.unconstrained()) == canonical_form(phi(1))
