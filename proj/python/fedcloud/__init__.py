"""Federated datacenter task binding and VM migration simulator."""

from ._core import (  # noqa: F401
    BindingPolicy,
    BindResult,
    DeConfig,
    FederationMode,
    Host,
    MigrationPolicy,
    MigrationRecord,
    Provider,
    QosConstraints,
    Scenario,
    ScenarioError,
    Schedule,
    ScheduleMetrics,
    SimConfig,
    SimMetrics,
    SimResult,
    Task,
    Thresholds,
    TraceConfig,
    Vm,
    __version__,
    bundled_scenario_names,
    debbp_bind,
    evaluate_schedule,
    exec_price,
    exec_time,
    load_bundled_scenario,
    load_scenario,
    maxmin_bind,
    pair_benefit,
    resolve_scenario,
    run_simulation,
    save_scenario,
    scenario_to_json,
    schedule_or_reject,
    sequential_bind,
    validate_scenario,
)
