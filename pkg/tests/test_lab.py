"""Monte Carlo experiments: estimator identities and bound verdicts."""

import math

import numpy as np
import pytest

from fermitheta.kernel import InputError, RandomStream, gaussian_stream
from fermitheta.lab import (
    classical_overlap_experiment,
    delta_upper_bound,
    exp_moment_check,
    free_energy_experiment,
    glassiness_contrast,
    gradcheck_logZ,
    mgf_check,
    tail_experiment,
    variance_identity_experiment,
)
from fermitheta.models import term_bank


class TestFreeEnergy:
    def test_beta_zero_exact(self):
        rep = free_energy_experiment("syk", 8, 4, [0.0], 32, seed=1)
        row = rep.summary["per_beta"][0]
        expected = math.log(1 << 4) / 8
        assert abs(row["quenched"] - expected) < 1e-12
        assert abs(row["annealed"] - expected) < 1e-10
        assert rep.all_passed

    def test_syk_small_run_passes(self):
        rep = free_energy_experiment("syk", 10, 4, [0.5, 1.0], 64, seed=2, threads=2)
        assert rep.all_passed
        gaps = [row["gap"] for row in rep.summary["per_beta"]]
        assert all(g >= -1e-9 for g in gaps)

    def test_rejects_tiny_sample_count(self):
        with pytest.raises(InputError):
            free_energy_experiment("syk", 8, 4, [1.0], 8, seed=0)

    def test_single_term_against_quadrature(self):
        # one-coupling model: ln Z = ln dim + ln cosh(beta sqrt(n) g) exactly
        beta, n = 1.0, 4
        rep = free_energy_experiment("syk", n, n, [beta], 4000, seed=3)
        row = rep.summary["per_beta"][0]
        lnz = np.asarray(rep.records["ln_z"])[:, 0]
        bank = term_bank("majorana", n, n)
        for i in [0, 17, 1001]:
            g = gaussian_stream(RandomStream(3, i), len(bank))[0]
            direct = math.log(1 << (n // 2)) + math.log(math.cosh(beta * math.sqrt(n) * g))
            assert abs(lnz[i] - direct) < 1e-10
        mc_err = abs(row["quenched"] - row["quenched_quadrature"])
        assert mc_err <= 4 * row["quenched_se"] + 1e-3
        assert abs(row["annealed_analytic"] - (math.log(2) / 2 + beta**2 / 2)) < 1e-12

    def test_classical_reports_reference(self):
        rep = free_energy_experiment("classical", 8, 4, [0.5], 32, seed=4)
        row = rep.summary["per_beta"][0]
        assert abs(row["annealed_reference"] - (math.log(2) + 0.125)) < 1e-12

    def test_thread_count_does_not_change_results(self):
        a = free_energy_experiment("syk", 8, 4, [0.7], 24, seed=5, threads=1)
        b = free_energy_experiment("syk", 8, 4, [0.7], 24, seed=5, threads=4)
        assert np.array_equal(np.asarray(a.records["ln_z"]), np.asarray(b.records["ln_z"]))


class TestDeltaUpper:
    def test_values(self):
        assert abs(delta_upper_bound("syk", 6, 2) - 0.2) < 1e-15
        assert abs(delta_upper_bound("sg", 5, 2) - 4 / 9) < 1e-15
        assert delta_upper_bound("classical", 10, 4) == 1.0


class TestGradcheck:
    @pytest.mark.parametrize("beta", [0.5, 1.0, 2.0])
    def test_small_systems(self, beta):
        res = gradcheck_logZ(8, 4, beta, seed=2)
        assert res.max_rel_error <= 1e-5

    def test_beta_zero(self):
        res = gradcheck_logZ(8, 2, 0.0, seed=2)
        assert res.max_rel_error <= 1e-8

    def test_eight_two(self):
        assert gradcheck_logZ(8, 2, 2.0, seed=4).max_rel_error <= 1e-5


class TestVarianceIdentity:
    def test_stabilized_62_exact_value(self):
        rep = variance_identity_experiment("stabilized", 6, 2, 400, seed=1)
        assert abs(rep.summary["exact_variance"] - 0.2) < 1e-12
        assert rep.all_passed

    def test_basis_state_62(self):
        psi = np.zeros(8, dtype=complex)
        psi[0] = 1.0
        rep = variance_identity_experiment(psi, 6, 2, 400, seed=2)
        bank = term_bank("majorana", 6, 2)
        direct = float(np.mean(bank.expectations(psi) ** 2))
        assert abs(rep.summary["exact_variance"] - direct) < 1e-12
        assert rep.all_passed

    def test_random_84(self):
        rep = variance_identity_experiment("random", 8, 4, 400, seed=3)
        assert rep.all_passed


class TestTails:
    def test_lambda_max_small(self):
        rep = tail_experiment("lambda_max", {"n": 10, "q": 4}, 400, seed=1, threads=2)
        assert rep.all_passed
        assert len(rep.summary["grid"]) == 10

    def test_fixed_state_gaussian(self):
        rep = tail_experiment("fixed_state_energy", {"n": 10, "q": 4}, 400, seed=2)
        assert rep.all_passed
        assert "sigma_sq_exact" in rep.summary

    def test_obs_expectation(self):
        rep = tail_experiment(
            "obs_expectation", {"n": 10, "q": 4, "beta": 1.0}, 200, seed=3
        )
        assert rep.all_passed

    def test_thermal_energy_pilot_split(self):
        rep = tail_experiment(
            "thermal_energy", {"n": 10, "q": 4, "beta": 1.0}, 200, seed=4
        )
        assert rep.all_passed
        assert len(np.asarray(rep.records["lambda_max_pilot"])) == 20
        assert len(np.asarray(rep.records["thermal_energy"])) == 180

    def test_two_point_parts(self):
        rep = tail_experiment(
            "two_point", {"n": 10, "q": 4, "beta": 1.0, "tau": 0.5}, 200, seed=5
        )
        assert rep.all_passed
        series = {row["series"] for row in rep.summary["grid"]}
        assert series == {"two_point_hermitian", "two_point_antihermitian"}

    def test_beta_zero_skips_scaled_bounds(self):
        rep = tail_experiment(
            "obs_expectation", {"n": 8, "q": 4, "beta": 0.0}, 32, seed=6
        )
        assert rep.verdicts == []
        assert rep.summary["notes"]

    def test_unknown_quantity(self):
        with pytest.raises(InputError):
            tail_experiment("nonsense", {"n": 8, "q": 4}, 32, seed=0)


class TestMgf:
    def test_t_zero_trivial(self):
        rep = mgf_check(8, 4, 64, t_grid=(0.0,), seed=1)
        row = rep.summary["rows"][0]
        assert row["mgf"] == 1.0 and row["bound"] == 1.0
        assert rep.all_passed

    def test_standard_grid(self):
        rep = mgf_check(10, 4, 400, t_grid=(0.5, 1.0, 2.0), seed=2, threads=2)
        assert rep.all_passed

    def test_single_term_quadrature(self):
        # lam_max = |g|: E exp(t(|g| - E|g|)) has a closed quadrature value
        rep = mgf_check(4, 4, 4000, t_grid=(0.5,), seed=3)
        x, w = np.polynomial.hermite.hermgauss(201)
        g = np.sqrt(2.0) * x
        mean_abs = float(np.sum(w * np.abs(g)) / np.sqrt(np.pi))
        t = 0.5
        quad = float(np.sum(w * np.exp(t * (np.abs(g) - mean_abs))) / np.sqrt(np.pi))
        row = rep.summary["rows"][0]
        assert abs(row["mgf"] - quad) <= 6 * row["se"]

    def test_unstable_grid_points_skipped(self):
        rep = mgf_check(10, 4, 64, t_grid=(50.0,), seed=4)
        assert rep.summary["notes"] and not rep.summary["rows"]


class TestExpMoment:
    def test_beta_zero_normalization(self):
        rep = exp_moment_check(8, 4, [0.0, 0.1], 64, seed=1)
        assert rep.all_passed

    def test_taylor_and_fit(self):
        rep = exp_moment_check(12, 4, [0.0, 0.1, 0.5, 1.0], 200, seed=2, threads=2)
        assert rep.all_passed
        assert rep.summary["fitted_c1"] >= 0.0
        rows = {r["beta"]: r for r in rep.summary["rows"]}
        assert abs(rows[0.1]["mean"] - 1.005) < 5e-3


class TestOverlap:
    def test_beta_zero_exact(self):
        rep = classical_overlap_experiment(8, 4, [0.0], 32, seed=1)
        assert rep.all_passed
        assert abs(rep.summary["rows"][0]["mean_r2"] - 1 / 8) < 1e-12

    def test_monotone_in_beta(self):
        rep = classical_overlap_experiment(10, 4, [0.0, 0.5, 1.0, 2.0], 48, seed=2, threads=2)
        assert rep.all_passed

    def test_threshold_constants(self):
        rep = classical_overlap_experiment(8, 4, [0.5], 32, seed=3)
        assert abs(rep.summary["glass_threshold"] - math.sqrt(2 * math.log(2))) < 1e-12
        assert abs(
            rep.summary["glass_threshold_lower"]
            - (1 - 2**-4) * math.sqrt(2 * math.log(2))
        ) < 1e-12

    def test_large_beta_ground_pair(self):
        # deep in the frozen regime the Gibbs weight sits on +-sigma*
        rep = classical_overlap_experiment(6, 4, [30.0], 24, seed=4)
        assert rep.summary["rows"][0]["mean_r2"] > 0.9


class TestContrast:
    def test_small_contrast(self):
        rep = glassiness_contrast([8, 12], 2.0, 48, seed=1, threads=2)
        names = [v.name for v in rep.verdicts]
        assert any("syk_gap_nonincreasing" in s for s in names)
        assert any("classical_gap_positive" in s for s in names)

    def test_beta_zero_gaps_vanish(self):
        rep = glassiness_contrast([8], 0.0, 32, seed=2)
        assert abs(rep.summary["syk"][0]["gap"]) < 1e-10
        assert abs(rep.summary["classical"][0]["gap"]) < 1e-10


class TestReportPlumbing:
    def test_round_trip_and_schema(self, tmp_path):
        import json

        rep = free_energy_experiment("syk", 8, 4, [0.5], 24, seed=9)
        path = tmp_path / "report.json"
        rep.write_json(str(path))
        payload = json.loads(path.read_text())
        for key in ("schema_version", "experiment", "params", "seed", "records", "summary", "verdicts", "duration_ms"):
            assert key in payload
        assert payload["experiment"] == "free_energy"

    def test_records_csv(self, tmp_path):
        rep = free_energy_experiment("syk", 8, 4, [0.5, 1.0], 24, seed=9)
        path = tmp_path / "records.csv"
        rep.write_csv(str(path))
        lines = path.read_text().splitlines()
        assert lines[0] == "sample,ln_z_0,ln_z_1"
        assert len(lines) == 25


class TestSpinGlassPath:
    def test_free_energy_sg(self):
        rep = free_energy_experiment("sg", 4, 1, [0.5, 1.0], 32, seed=3)
        assert rep.all_passed
        assert abs(rep.summary["delta_upper"] - 2 / 3) < 1e-15
