"""Parameter records: validation, reduced-unit conventions, config loading."""

import json

import pytest

from chiral_diode import (
    Direction,
    ModelParams,
    PhotonIn,
    TwoPhotonIn,
    load_config,
    make_params,
    resolve_thread_count,
)


class TestModelParams:
    def test_valid_fully_chiral_set(self):
        p = make_params(omega_a=0.0, kappa=1.0, U=10.0, gamma1=1.0, gamma2=0.0)
        assert p.Gamma == 1.0
        assert p.v_c == 1.0

    def test_valid_symmetric_lossless_set(self):
        p = make_params(omega_a=0.0, kappa=0.0, U=0.0, gamma1=0.5, gamma2=0.5)
        assert p.Gamma == 1.0

    def test_negative_kappa_rejected_naming_field(self):
        with pytest.raises(ValueError, match="kappa"):
            make_params(omega_a=0.0, kappa=-1.0, U=0.0, gamma1=1.0, gamma2=0.0)

    def test_negative_couplings_rejected_naming_field(self):
        with pytest.raises(ValueError, match="gamma1"):
            make_params(omega_a=0.0, kappa=0.0, U=0.0, gamma1=-0.5, gamma2=1.0)
        with pytest.raises(ValueError, match="gamma2"):
            make_params(omega_a=0.0, kappa=0.0, U=0.0, gamma1=1.0, gamma2=-0.5)

    def test_zero_total_coupling_rejected(self):
        with pytest.raises(ValueError, match="gamma1 \\+ gamma2"):
            make_params(omega_a=0.0, kappa=1.0, U=0.0, gamma1=0.0, gamma2=0.0)

    def test_non_finite_rejected_naming_field(self):
        with pytest.raises(ValueError, match="omega_a"):
            make_params(omega_a=float("nan"), kappa=1.0, U=0.0, gamma1=1.0, gamma2=0.0)
        with pytest.raises(ValueError, match="U"):
            make_params(omega_a=0.0, kappa=1.0, U=float("inf"), gamma1=1.0, gamma2=0.0)

    def test_group_velocity_pinned_to_one(self):
        with pytest.raises(ValueError, match="v_c"):
            ModelParams(omega_a=0.0, kappa=1.0, U=0.0, gamma1=1.0, gamma2=0.0, v_c=2.0)

    def test_records_are_immutable(self):
        p = make_params(omega_a=0.0, kappa=1.0, U=0.0, gamma1=1.0, gamma2=0.0)
        with pytest.raises(AttributeError):
            p.kappa = 2.0

    def test_swapped_interchanges_couplings(self):
        p = make_params(omega_a=0.3, kappa=0.7, U=2.0, gamma1=0.9, gamma2=0.1)
        q = p.swapped()
        assert (q.gamma1, q.gamma2) == (0.1, 0.9)
        assert (q.omega_a, q.kappa, q.U) == (0.3, 0.7, 2.0)


class TestPhotonRecords:
    def test_single_photon_requires_direction_and_finite_frequency(self):
        ph = PhotonIn(Direction.LEFT_INCIDENT, 0.25)
        assert ph.omega_k == 0.25
        with pytest.raises(ValueError, match="direction"):
            PhotonIn("left", 0.0)
        with pytest.raises(ValueError, match="omega_k"):
            PhotonIn(Direction.LEFT_INCIDENT, float("nan"))

    def test_pair_frequencies_stored_sorted(self):
        pair = TwoPhotonIn(Direction.LEFT_INCIDENT, 3.0, -1.0)
        assert (pair.omega_k1, pair.omega_k2) == (-1.0, 3.0)
        assert pair.omega == 2.0

    def test_pair_direction_validated(self):
        with pytest.raises(ValueError, match="direction"):
            TwoPhotonIn(None, 0.0, 0.0)


class TestLoadConfig:
    CONFIG = {"omega_a": 0.0, "kappa": 1.0, "U": 10.0, "gamma1": 1.0, "gamma2": 0.0}

    def test_loads_mapping(self):
        p = load_config(self.CONFIG)
        assert (p.kappa, p.U) == (1.0, 10.0)

    def test_loads_json_file(self, tmp_path):
        path = tmp_path / "params.json"
        path.write_text(json.dumps(self.CONFIG))
        assert load_config(path).Gamma == 1.0

    def test_gamma_scale_multiplies_all_rates(self):
        scaled = load_config({**self.CONFIG, "gamma_scale": 2.0})
        assert (scaled.kappa, scaled.U, scaled.gamma1) == (2.0, 20.0, 2.0)

    def test_unknown_and_missing_keys_rejected(self):
        with pytest.raises(ValueError, match="unknown"):
            load_config({**self.CONFIG, "extra": 1})
        with pytest.raises(ValueError, match="missing"):
            load_config({k: v for k, v in self.CONFIG.items() if k != "U"})

    def test_non_numeric_value_rejected(self):
        with pytest.raises(ValueError, match="kappa"):
            load_config({**self.CONFIG, "kappa": "one"})


class TestResolveThreadCount:
    def test_defaults_to_serial(self):
        assert resolve_thread_count(env={}) == 1

    def test_reads_environment_value(self):
        assert resolve_thread_count(env={"CHIRAL_DIODE_THREADS": "8"}) == 8

    def test_invalid_or_non_positive_values_fall_back_to_serial(self):
        assert resolve_thread_count(env={"CHIRAL_DIODE_THREADS": "many"}) == 1
        assert resolve_thread_count(env={"CHIRAL_DIODE_THREADS": "0"}) == 1
