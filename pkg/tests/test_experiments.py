import csv
import io
import math
from dataclasses import replace

import numpy as np
import pytest

from qfridge.errors import ConfigError
from qfridge.experiments import (
    CHANNELS_HEADER,
    COP_HEADER,
    CURRENTS_HEADER,
    CURRENTS_ZETA_GRID,
    DEFAULT_ZETA_GRID,
    EVOLVE_HEADER,
    PRESET_NAMES,
    SWEEP_HEADER,
    ExperimentConfig,
    build_generator_for,
    channels_csv,
    cop_csv,
    currents_csv,
    default_time_grid,
    evolution_csv,
    find_cop_crossing,
    load_config,
    preset,
    preset_fingerprint,
    run_currents_and_cop,
    run_evolution,
    run_min_temp_sweep,
    run_steady,
    run_zeta_sweep,
    save_config,
    steady_horizon,
    sweep_csv,
    write_text,
)

INF = math.inf


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


class TestPresets:
    def test_names(self):
        assert PRESET_NAMES == ("transient-regime", "steady-regime")

    def test_transient_regime_parameters(self):
        cfg = preset("transient-regime")
        s = cfg.refrigerator
        assert (s.omega_c, s.omega_h, s.omega_w, s.g) == (1.0, 2.0, 1.0, 0.8)
        # couplings are quoted per unit of the attached splitting
        assert cfg.baths["c"].kappa == 1e-4
        assert cfg.baths["h"].kappa == 2e-5
        assert cfg.baths["w"].kappa == 1e-3
        assert cfg.baths["h"].omega0 == 2.0
        assert all(b.cutoff == 5000.0 for b in cfg.baths.values())
        assert (cfg.baths["c"].temperature, cfg.baths["h"].temperature,
                cfg.baths["w"].temperature) == (1.0, 1.0, 2.0)

    def test_steady_regime_parameters(self):
        cfg = preset("steady-regime")
        assert cfg.refrigerator.g == 0.1
        assert cfg.baths["c"].kappa == 1e-4
        assert cfg.baths["h"].kappa == 2e-4
        assert cfg.baths["w"].kappa == 1e-4

    def test_default_zeta_is_harmonic(self):
        assert all(math.isinf(b.zeta) for b in preset("steady-regime").baths.values())

    def test_zeta_override(self):
        cfg = preset("steady-regime", zeta=50.0)
        assert all(b.zeta == 50.0 for b in cfg.baths.values())

    def test_unknown_name(self):
        with pytest.raises(ConfigError, match="unknown preset"):
            preset("compressor")

    def test_fingerprints_pinned(self):
        assert preset_fingerprint("transient-regime") == (
            "c41ae4dd5b317b6b6720475e78c8184c8ce00ab56562be40f7b294e1f55392bb"
        )
        assert preset_fingerprint("steady-regime") == (
            "d2cf9d5a3f204a0a2f1cff46b806df76a280ceeaac76327bfccece421727e829"
        )

    def test_default_grids(self):
        assert DEFAULT_ZETA_GRID == (10.0, 20.0, 50.0, 100.0, 200.0, 400.0, 1000.0, 1e4, INF)
        assert CURRENTS_ZETA_GRID == (50.0, 100.0, INF)


class TestExperimentConfig:
    def test_bad_kind(self):
        with pytest.raises(ConfigError, match="kind"):
            preset("steady-regime", kind="montecarlo")

    def test_empty_zeta_grid(self):
        with pytest.raises(ConfigError, match="zeta_grid"):
            preset("steady-regime", zeta_grid=())

    @pytest.mark.parametrize("bad", [0.0, -1.0, math.nan])
    def test_bad_zeta_grid_entry(self, bad):
        with pytest.raises(ConfigError):
            preset("steady-regime", zeta_grid=(10.0, bad))

    @pytest.mark.parametrize("bad", [0.0, -5.0, INF])
    def test_bad_t_final(self, bad):
        with pytest.raises(ConfigError):
            preset("steady-regime", t_final=bad)

    def test_bad_grid_points(self):
        with pytest.raises(ConfigError, match="grid_points"):
            preset("steady-regime", grid_points=2)

    def test_missing_bath(self):
        cfg = preset("steady-regime")
        with pytest.raises(ConfigError, match="missing baths"):
            ExperimentConfig(
                refrigerator=cfg.refrigerator, baths={"c": cfg.baths["c"]}
            )

    def test_with_zeta(self):
        cfg = preset("steady-regime").with_zeta(42.0)
        assert all(b.zeta == 42.0 for b in cfg.baths.values())
        assert cfg.refrigerator == preset("steady-regime").refrigerator


class TestConfigFiles:
    def test_round_trip(self, tmp_path):
        cfg = preset("transient-regime", zeta=75.0, kind="sweep-zeta",
                     zeta_grid=(10.0, INF), t_final=123.5, grid_points=99)
        path = tmp_path / "exp.cfg"
        save_config(cfg, path)
        back = load_config(path)
        assert back.refrigerator == cfg.refrigerator
        assert back.baths == cfg.baths
        assert back.kind == "sweep-zeta"
        assert back.zeta_grid == (10.0, INF)
        assert back.t_final == 123.5
        assert back.grid_points == 99

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_config(tmp_path / "nope.cfg")

    def test_missing_section(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("[other]\nx = 1\n")
        with pytest.raises(ConfigError, match="experiment"):
            load_config(path)

    def test_missing_key(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("[experiment]\nomega_c = 1.0\n")
        with pytest.raises(ConfigError, match="missing"):
            load_config(path)

    def test_non_numeric_value(self, tmp_path):
        path = tmp_path / "bad.cfg"
        save_config(preset("steady-regime"), path)
        text = path.read_text().replace("g = 0.1", "g = strong")
        path.write_text(text)
        with pytest.raises(ConfigError, match="not a number"):
            load_config(path)

    def test_invalid_physics_wrapped(self, tmp_path):
        path = tmp_path / "bad.cfg"
        save_config(preset("steady-regime"), path)
        text = path.read_text().replace("temp_c = 1.0", "temp_c = -1.0")
        path.write_text(text)
        with pytest.raises(ConfigError, match="invalid parameters"):
            load_config(path)

    def test_shipped_configs_load(self):
        for name in PRESET_NAMES:
            cfg = load_config(f"configs/{name}.cfg")
            assert cfg.refrigerator == preset(name).refrigerator
            assert cfg.baths == preset(name).baths

    def test_write_text(self, tmp_path):
        path = tmp_path / "out.csv"
        write_text("a,b\n1,2\n", path)
        assert path.read_text() == "a,b\n1,2\n"


class TestTimeGrid:
    def test_shape_and_endpoints(self):
        grid = default_time_grid(100.0, 50)
        assert grid.shape == (50,)
        assert grid[0] == 0.0
        assert grid[-1] == pytest.approx(100.0)
        assert np.all(np.diff(grid) > 0)

    def test_log_spacing_resolves_transients(self):
        grid = default_time_grid(1e6, 800)
        assert grid[1] <= 0.1  # early decades present despite the long horizon


@pytest.fixture(scope="module")
def transient_result():
    return run_evolution(preset("transient-regime", grid_points=300))


@pytest.fixture(scope="module")
def min_temp_result():
    cfg = preset(
        "steady-regime", kind="min-temp-sweep",
        zeta_grid=(20.0, 100.0, INF), grid_points=600,
    )
    return run_min_temp_sweep(cfg)


@pytest.fixture(scope="module")
def currents_result():
    cfg = preset(
        "steady-regime", kind="currents",
        zeta_grid=(50.0, INF), grid_points=400,
    )
    return run_currents_and_cop(cfg)


class TestRunEvolution:
    @pytest.fixture
    def result(self, transient_result):
        return transient_result

    def test_steady_detected(self, result):
        assert result.steady_detected
        assert result.trajectory.stopped

    def test_no_violations(self, result):
        assert result.violations == []

    def test_initial_readout_matches_bath_temperatures(self, result):
        first = result.readouts[0]
        assert first.theta_c.value == pytest.approx(1.0, rel=1e-9)
        assert first.theta_h.value == pytest.approx(1.0, rel=1e-9)
        assert first.theta_w.value == pytest.approx(2.0, rel=1e-9)

    def test_transient_cooling_then_heating(self, result):
        theta = np.array([r.theta_c.value for r in result.readouts])
        assert theta.min() < 0.9  # deep transient dip
        assert theta[-1] > 1.0  # steady state is hotter than the bath

    def test_csv_shape(self, result):
        header, rows = parse_csv(evolution_csv(result))
        assert tuple(header) == EVOLVE_HEADER
        assert len(rows) == len(result.readouts)
        t = [float(r[0]) for r in rows]
        assert t[0] == 0.0 and all(a < b for a, b in zip(t, t[1:]))

    def test_csv_round_trip_precision(self, result):
        _, rows = parse_csv(evolution_csv(result))
        for i in (1, len(rows) // 2, len(rows) - 1):
            row = rows[i]
            r = result.readouts[i]
            assert float(row[1]) == pytest.approx(r.theta_c.value, rel=1e-11)
            assert float(row[4]) == pytest.approx(r.qdot_c, rel=1e-11, abs=1e-250)
            assert float(row[7]) == pytest.approx(r.cop, rel=1e-11, nan_ok=True)

    def test_explicit_t_final_respected(self):
        result = run_evolution(preset("transient-regime", t_final=50.0, grid_points=60))
        assert result.trajectory.times[-1] <= 50.0
        assert not result.steady_detected  # too short to relax


class TestSteadyRunners:
    def test_run_steady_single_row(self):
        result = run_steady(preset("steady-regime", zeta=50.0, kind="steady"))
        assert len(result.points) == 1
        assert result.failures == []
        point = result.points[0]
        assert point.zeta == 50.0
        assert point.theta_ss < 1.0  # refrigeration at this zeta
        assert math.isnan(point.theta_min)
        assert point.min_at_steady is None

    def test_zeta_sweep_grid_order_and_tokens(self):
        cfg = preset("steady-regime", kind="sweep-zeta", zeta_grid=(INF, 10.0, 100.0))
        result = run_zeta_sweep(cfg)
        assert [p.zeta for p in result.points] == [INF, 10.0, 100.0]
        header, rows = parse_csv(sweep_csv(result))
        assert tuple(header) == SWEEP_HEADER
        assert [r[0] for r in rows] == ["inf", "10", "100"]
        assert all(r[3] == "nan" and r[4] == "" for r in rows)

    def test_zeta_sweep_monotone_delta_theta(self):
        cfg = preset("steady-regime", kind="sweep-zeta", zeta_grid=(10.0, 100.0, 1000.0, INF))
        result = run_zeta_sweep(cfg)
        assert result.failures == []
        assert result.violations == []
        assert result.monotone_delta_theta
        deltas = [p.delta_theta for p in sorted(result.points, key=lambda p: p.zeta)]
        assert all(a <= b + 1e-12 for a, b in zip(deltas, deltas[1:]))

    def test_per_point_failure_recorded(self):
        # decoupling every bath leaves a unitary generator per point: the
        # steady solve fails but the sweep itself must survive
        base = preset("steady-regime", kind="sweep-zeta", zeta_grid=(10.0, INF))
        baths = {a: replace(b, kappa=0.0) for a, b in base.baths.items()}
        cfg = ExperimentConfig(
            refrigerator=base.refrigerator, baths=baths, kind="sweep-zeta",
            zeta_grid=(10.0, INF),
        )
        result = run_zeta_sweep(cfg)
        assert result.points == []
        assert len(result.failures) == 2
        assert all("Degenerate" in msg for _, msg in result.failures)


class TestMinTempSweep:
    @pytest.fixture
    def result(self, min_temp_result):
        return min_temp_result

    def test_no_failures(self, result):
        assert result.failures == []

    def test_min_location_crosses_over(self, result):
        by_zeta = {p.zeta: p for p in result.points}
        assert by_zeta[20.0].min_at_steady is True
        assert by_zeta[100.0].min_at_steady is False
        assert by_zeta[INF].min_at_steady is False

    def test_theta_min_saturates_toward_harmonic(self, result):
        by_zeta = {p.zeta: p for p in result.points}
        assert abs(by_zeta[100.0].theta_min - by_zeta[INF].theta_min) < 1e-4
        assert abs(by_zeta[20.0].theta_min - by_zeta[INF].theta_min) > 1e-2

    def test_csv_flags(self, result):
        _, rows = parse_csv(sweep_csv(result))
        flags = {r[0]: r[4] for r in rows}
        assert flags["20"] == "true"
        assert flags["100"] == "false"
        assert flags["inf"] == "false"


class TestCurrentsAndCop:
    @pytest.fixture
    def result(self, currents_result):
        return currents_result

    def test_shared_grid(self, result):
        assert result.failures == []
        assert result.zetas == [50.0, INF]
        assert result.times[0] == 0.0
        for z in result.zetas:
            assert result.qdots[z].shape == (result.times.size, 3)
            assert result.cops[z].shape == (result.times.size,)

    def test_steady_tail_signs(self, result):
        for z in result.zetas:
            qc, qh, qw = result.qdots[z][-1]
            assert qc > 0 and qw > 0 and qh < 0

    def test_crossing_found(self, result):
        t_cross, flips = result.crossings[50.0]
        assert flips == 1
        assert 100.0 < t_cross < result.times[-1]

    def test_finite_zeta_cop_starts_higher(self, result):
        # transient advantage: early finite-zeta COP exceeds the harmonic one
        early = np.nonzero(
            np.isfinite(result.cops[50.0]) & np.isfinite(result.cops[INF])
        )[0][0]
        assert result.cops[50.0][early] > result.cops[INF][early]

    def test_currents_csv(self, result):
        header, rows = parse_csv(currents_csv(result))
        assert tuple(header) == CURRENTS_HEADER
        assert len(rows) == 2 * result.times.size
        assert rows[0][0] == "50" and rows[-1][0] == "inf"

    def test_cop_csv(self, result):
        header, rows = parse_csv(cop_csv(result))
        assert tuple(header) == COP_HEADER
        assert rows[0][0] == "50" and rows[0][1] == "0"
        assert float(rows[0][2]) > 0.0  # currents flow from the first instant

    def test_explicit_horizon(self):
        cfg = preset(
            "steady-regime", kind="currents",
            zeta_grid=(INF,), t_final=10.0, grid_points=40,
        )
        result = run_currents_and_cop(cfg)
        assert result.times[-1] == pytest.approx(10.0)
        assert result.crossings == {}


class TestFindCopCrossing:
    def test_single_crossing_interpolated(self):
        t = np.linspace(0.0, 10.0, 101)
        a = 1.0 - 0.1 * t  # crosses b = 0.5 at t = 5
        b = np.full_like(t, 0.5)
        t_cross, flips = find_cop_crossing(t, a, b)
        assert flips == 1
        assert t_cross == pytest.approx(5.0, abs=0.1)

    def test_merged_curves_no_crossing(self):
        t = np.linspace(0.0, 10.0, 50)
        a = np.ones_like(t)
        t_cross, flips = find_cop_crossing(t, a, a.copy())
        assert math.isnan(t_cross) and flips == 0

    def test_noise_below_floor_ignored(self):
        t = np.linspace(0.0, 10.0, 1001)
        rng = np.random.default_rng(9)
        base = np.ones_like(t)
        jitter = base + 1e-9 * rng.standard_normal(t.size)
        jitter[:100] = base[:100] + 0.5  # one real separation early on
        t_cross, flips = find_cop_crossing(t, jitter, base)
        assert flips == 0  # separation never flips sign; jitter must not count
        assert math.isnan(t_cross)

    def test_nan_prefix_skipped(self):
        t = np.linspace(0.0, 10.0, 101)
        a = 1.0 - 0.1 * t
        a[:5] = math.nan
        b = np.full_like(t, 0.5)
        t_cross, flips = find_cop_crossing(t, a, b)
        assert flips == 1 and 4.0 < t_cross < 6.0


class TestChannelsCsv:
    def test_shape(self):
        gen = build_generator_for(preset("transient-regime"))
        header, rows = parse_csv(channels_csv(gen))
        assert tuple(header) == CHANNELS_HEADER
        assert len(rows) == 18
        assert {r[0] for r in rows} == {"c", "h", "w"}


class TestSteadyHorizon:
    def test_positive_and_scales_with_coupling(self):
        h1 = steady_horizon(build_generator_for(preset("steady-regime")))
        assert h1 > 0
        # doubling every kappa doubles every rate, halving the horizon
        cfg = preset("steady-regime")
        baths = {a: replace(b, kappa=2 * b.kappa) for a, b in cfg.baths.items()}
        cfg2 = ExperimentConfig(refrigerator=cfg.refrigerator, baths=baths)
        h2 = steady_horizon(build_generator_for(cfg2))
        assert h2 == pytest.approx(h1 / 2, rel=1e-6)
