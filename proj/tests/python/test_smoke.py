"""Smoke tests for the fedcloud python module (built by CMake/pybind11)."""

import pytest

fedcloud = pytest.importorskip("fedcloud")


def test_bundled_scenarios_load():
    names = fedcloud.bundled_scenario_names()
    assert set(names) == {"job_a", "job_b", "migration_default"}
    for name in names:
        scenario = fedcloud.load_bundled_scenario(name)
        assert fedcloud.validate_scenario(scenario) == []


def test_job_a_shape():
    scenario = fedcloud.load_bundled_scenario("job_a")
    assert len(scenario.tasks) == 20
    assert len(scenario.vms) == 8
    assert scenario.tasks[0].length_mi == 2020
    assert scenario.qos.deadline_s == 100.0


def test_exec_metrics():
    scenario = fedcloud.load_bundled_scenario("job_a")
    t0, vm1 = scenario.tasks[0], scenario.vms[1]
    assert fedcloud.exec_time(t0, vm1) == pytest.approx(2020 / 410)
    assert fedcloud.exec_price(t0, vm1) == pytest.approx(2020 / 410 * 20)
    assert 0.0 <= fedcloud.pair_benefit(t0, vm1, scenario.qos) <= 1.0


def test_binding_policies_run_and_are_deterministic():
    scenario = fedcloud.load_bundled_scenario("job_a")

    seq = fedcloud.sequential_bind(scenario)
    assert len(seq) == 20
    assert seq.assignment[0] == 0 and seq.assignment[8] == 0

    maxmin = fedcloud.maxmin_bind(scenario)
    assert len(maxmin) == 20

    cfg = scenario.de
    cfg.generations = 150
    cfg.seed = 7
    first = fedcloud.debbp_bind(scenario, cfg)
    second = fedcloud.debbp_bind(scenario, cfg)
    assert first.assignment == second.assignment

    metrics = fedcloud.evaluate_schedule(first, scenario)
    baseline = fedcloud.evaluate_schedule(seq, scenario)
    assert metrics.fitness > baseline.fitness


def test_schedule_or_reject_reports_reason():
    scenario = fedcloud.load_bundled_scenario("job_a")
    scenario.qos.deadline_s = 0.001
    result = fedcloud.schedule_or_reject(scenario, fedcloud.BindingPolicy.Sequential)
    assert not result.schedule.accepted
    assert result.schedule.reject_reason == "deadline"


def test_simulation_runs_and_is_deterministic():
    scenario = fedcloud.load_bundled_scenario("migration_default")
    cfg = scenario.sim
    cfg.timesteps = 25
    cfg.seed = 4
    cfg.mode = fedcloud.FederationMode.Competitive

    a = fedcloud.run_simulation(scenario, cfg)
    b = fedcloud.run_simulation(scenario, cfg)
    assert a.metrics.migration_count == b.metrics.migration_count
    assert a.metrics.energy_kwh == b.metrics.energy_kwh
    assert a.metrics.migration_count == len(a.log)
    assert 0.0 <= a.metrics.sla_violation_rate <= 1.0
    for record in a.log:
        assert record.mode == "competitive"
