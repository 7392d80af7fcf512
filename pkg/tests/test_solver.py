import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from conftest import PAPER_ETA_STAR, random_coefficients
from ladder.errors import DegenerateModelError
from ladder.integrals import ONE_S, Unit
from ladder.model import ladder_data, pair_states
from ladder.solver import (
    KOROBOV,
    density_profile,
    energy_quadratic,
    exact_sector_spectrum,
    ground_energy,
    ground_state_vector,
    radial_grid,
    residual_norm,
    rotation_state,
    solve,
    stationary_eta,
    stationary_point,
)
from utils.report_utils import to_json

OTHER_STATES = [s for s in range(16) if s not in (3, 12)]


def nondegenerate(c, eta, margin=0.05):
    try:
        ld = ladder_data(c, eta)
    except DegenerateModelError:
        return False
    return abs(ld.Dminus) > margin and abs(ld.Dplus) > margin


class TestEnergy:
    def test_quadratic_endpoints(self, paper):
        assert energy_quadratic(paper, 0.0) == pytest.approx(-6.0)
        assert energy_quadratic(paper, 1.0) == pytest.approx(-1.5)
        assert energy_quadratic(paper, PAPER_ETA_STAR) == pytest.approx(-1.4610, abs=1e-4)

    def test_quoted_stationary_point_is_a_maximum(self, paper):
        point = stationary_point(paper)
        assert point.eta == pytest.approx(PAPER_ETA_STAR, abs=1e-5)
        assert not point.linear and not point.at_boundary
        assert point.curvature < 0 and not point.is_minimum

    def test_stationary_point_has_zero_slope(self, paper):
        eta, h = stationary_eta(paper), 1e-5
        slope = (energy_quadratic(paper, eta + h) - energy_quadratic(paper, eta - h)) / (2 * h)
        assert abs(slope) < 1e-8

    def test_non_interacting_limit_stays_in_lower_level(self, make_coefficients):
        point = stationary_point(make_coefficients(eps1=-1.0, eps2=-0.25))
        assert point.eta == 0.0
        assert point.linear

    def test_linear_model_with_negative_slope(self, make_coefficients):
        point = stationary_point(make_coefficients(eps2=-1.0))
        assert point.eta == 1.0
        assert point.linear and point.unclamped is None

    def test_root_outside_interval_is_clamped(self, make_coefficients):
        point = stationary_point(make_coefficients(eps1=-1.0, eps2=-0.25, V1=0.1, V2=0.1))
        assert point.unclamped == pytest.approx(-1.375)
        assert point.eta == 0.0 and point.at_boundary

    def test_energies_agree_at_stationary_point(self, paper):
        full, quadratic = ground_energy(paper, stationary_eta(paper))
        assert full == pytest.approx(-1.46098, abs=1e-5)
        assert abs(full - quadratic) < 1e-9

    def test_energies_differ_away_from_stationary_point(self, paper):
        full, quadratic = ground_energy(paper, 0.8)
        assert full - quadratic == pytest.approx(-paper.Ubar * ladder_data(paper, 0.8).lambda_sum)
        assert full != quadratic

    def test_no_exchange_means_no_shift(self, paper):
        c = paper.with_values(Ubar=0.0)
        for eta in np.linspace(0.0, 1.0, 11):
            full, quadratic = ground_energy(c, eta)
            assert full == pytest.approx(quadratic, abs=1e-14)

    def test_shift_sum_vanishes_at_stationary_point(self, rng):
        checked = 0
        for _ in range(100):
            c = random_coefficients(rng)
            point = stationary_point(c)
            if point.linear or point.at_boundary or not nondegenerate(c, point.eta, margin=1e-3):
                continue
            ld = ladder_data(c, point.eta)
            assert abs(ld.lambda_sum) < 1e-8
            checked += 1
        assert checked > 10


class TestGroundState:
    def test_quoted_state_is_a_rotation(self, paper):
        eta = stationary_eta(paper)
        g = ground_state_vector(paper, eta)
        theta = ladder_data(paper, eta).theta
        assert theta == pytest.approx(0.0040496, abs=1e-6)
        assert_allclose(g, rotation_state(theta), atol=1e-10)
        assert g[3] == pytest.approx(math.cos(theta))
        assert g[12] == pytest.approx(-math.sin(theta))
        assert_array_equal(g[OTHER_STATES], np.zeros(14))

    def test_no_exchange_leaves_reference_pair(self, paper):
        d1, _ = pair_states()
        assert_array_equal(ground_state_vector(paper.with_values(Ubar=0.0), 0.4), d1)

    def test_exponential_and_rotation_agree(self, rng):
        checked = 0
        while checked < 50:
            c = random_coefficients(rng)
            eta = rng.uniform()
            if not nondegenerate(c, eta):
                continue
            g = ground_state_vector(c, eta)
            assert_allclose(g, rotation_state(ladder_data(c, eta).theta), atol=1e-10)
            assert np.linalg.norm(g) == pytest.approx(1.0, abs=1e-10)
            assert np.count_nonzero(g[OTHER_STATES]) == 0
            checked += 1

    def test_state_needs_only_lowering_denominator(self, make_coefficients):
        c = make_coefficients(eps2=3.0, V1=1.0, Ubar=0.1)
        assert_allclose(ground_state_vector(c, 0.0), rotation_state(-0.05), atol=1e-12)
        assert density_profile(c, 0.0, radial_grid(40.0, 2000)).integral == pytest.approx(2.0, abs=1e-6)
        assert math.isfinite(residual_norm(c, 0.0))
        with pytest.raises(DegenerateModelError, match=r"D\+"):
            ground_energy(c, 0.0)

    def test_residual_norm(self, paper):
        assert residual_norm(paper, stationary_eta(paper)) == pytest.approx(0.0069, abs=1e-3)
        assert residual_norm(paper.with_values(Ubar=0.0), 0.3) == 0.0

    def test_residual_shrinks_with_exchange(self, paper):
        residuals = [residual_norm(paper.with_values(Ubar=u), PAPER_ETA_STAR) for u in (0.1, 0.05, 0.02, 0.01, 0.0)]
        assert all(a > b for a, b in zip(residuals, residuals[1:]))

    def test_sector_spectrum(self, paper, make_coefficients):
        assert exact_sector_spectrum(paper)[0] == pytest.approx(-4.00002, abs=1e-4)
        c = make_coefficients(eps1=-1.0, eps2=-0.25, V1=0.5, V2=0.1, U=0.2)
        expected = sorted([2 * -1.0 + 0.5, -1.25 + 0.2, -1.25 + 0.2, 2 * -0.25 + 0.1])
        assert_allclose(exact_sector_spectrum(c), expected)


class TestDensity:
    def test_quoted_density_normalization_and_origin(self, paper):
        eta = stationary_eta(paper)
        theta = ladder_data(paper, eta).theta
        profile = density_profile(paper, eta, radial_grid(40.0, 2000))
        assert profile.integral == pytest.approx(2.0, abs=1e-6)
        assert profile.at_origin() == pytest.approx(
            2 * math.cos(theta) ** 2 / math.pi + math.sin(theta) ** 2 / (4 * math.pi)
        )
        assert np.all(profile.density >= 0)

    def test_no_exchange_gives_pure_one_s(self, paper):
        radii = radial_grid(20.0, 500)
        profile = density_profile(paper.with_values(Ubar=0.0), 0.3, radii)
        assert_allclose(profile.density, 2 * ONE_S.amplitude(radii) ** 2)

    def test_random_densities_are_normalized(self, rng):
        radii = radial_grid(40.0, 2000)
        checked = 0
        while checked < 10:
            c = random_coefficients(rng)
            eta = rng.uniform()
            if not nondegenerate(c, eta):
                continue
            assert density_profile(c, eta, radii).integral == pytest.approx(2.0, abs=1e-6)
            checked += 1

    @pytest.mark.parametrize("grid", [[0.0], [0.0, 2.0, 1.0], [-1.0, 0.0, 1.0], [0.0, float("inf")]])
    def test_rejects_bad_grid(self, paper, grid):
        with pytest.raises(ValueError):
            density_profile(paper, 0.5, grid)

    def test_radial_grid_validation(self):
        assert radial_grid(10.0, 11)[1] == pytest.approx(1.0)
        with pytest.raises(ValueError):
            radial_grid(0.0, 10)
        with pytest.raises(ValueError):
            radial_grid(10.0, 1)


class TestSolve:
    def test_helium_reproduction(self, paper):
        report = solve(paper)
        assert report.eta_star == pytest.approx(PAPER_ETA_STAR, abs=1e-4)
        assert report.stationary
        assert report.energy_in(Unit.HARTREE) == pytest.approx(-2.9220, abs=5e-4)
        assert report.energy_in(Unit.EV) == pytest.approx(-79.51, abs=0.02)
        korobov = next(d for d in report.reference_deltas if d.reference is KOROBOV)
        assert korobov.relative_error == pytest.approx(0.0063, abs=3e-4)

    def test_diagnostics_are_reported(self, paper):
        report = solve(paper)
        assert report.residual_norm == pytest.approx(0.0069, abs=1e-3)
        assert report.exact_sector_spectrum[0] == pytest.approx(-4.000, abs=1e-3)
        assert report.phi_norms == (0.0, 0.0)
        assert report.level2_occupation == pytest.approx(math.sin(report.theta) ** 2)
        assert report.exact_expectation != pytest.approx(report.energy)
        assert not report.stationary_point.is_minimum

    def test_eta_override(self, paper):
        report = solve(paper, eta=0.5)
        assert report.eta_star == 0.5
        assert not report.stationary
        assert report.ladder.K == 0.0

    def test_all_zero_coefficients(self, make_coefficients):
        report = solve(make_coefficients())
        assert report.energy == 0.0
        assert report.stationary_point.linear

    def test_report_json_round_trips(self, paper):
        text = to_json(solve(paper).to_dict("hartree"))
        document = json.loads(text)
        assert to_json(document) == text
        assert document["unit"] == "hartree"
        assert document["energy"] == pytest.approx(-2.9220, abs=5e-4)
        assert len(document["state"]) == 16
        assert set(document["reference_deltas"]) == {"korobov", "experiment", "hartree_fock"}
