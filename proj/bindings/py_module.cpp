#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fedcloud/binding.hpp"
#include "fedcloud/scenario_io.hpp"
#include "fedcloud/sim.hpp"
#include "fedcloud/version.hpp"

namespace py = pybind11;
using namespace fedcloud;

PYBIND11_MODULE(_core, m) {
    m.doc() = "federated datacenter task binding and VM migration simulator";

    py::register_exception<ScenarioError>(m, "ScenarioError");

    py::enum_<FederationMode>(m, "FederationMode")
        .value("Cooperative", FederationMode::Cooperative)
        .value("Competitive", FederationMode::Competitive);

    py::enum_<BindingPolicyId>(m, "BindingPolicy")
        .value("Debbp", BindingPolicyId::Debbp)
        .value("MaxMin", BindingPolicyId::MaxMin)
        .value("Sequential", BindingPolicyId::Sequential);

    py::enum_<MigrationPolicyId>(m, "MigrationPolicy")
        .value("Vmmndsa", MigrationPolicyId::Vmmndsa)
        .value("MadMmt", MigrationPolicyId::MadMmt)
        .value("IqrMc", MigrationPolicyId::IqrMc);

    py::class_<Task>(m, "Task")
        .def(py::init<>())
        .def_readwrite("id", &Task::id)
        .def_readwrite("length_mi", &Task::length_mi);

    py::class_<Vm>(m, "Vm")
        .def(py::init<>())
        .def_readwrite("id", &Vm::id)
        .def_readwrite("pes", &Vm::pes)
        .def_readwrite("mips", &Vm::mips)
        .def_readwrite("price", &Vm::price)
        .def_readwrite("availability", &Vm::availability)
        .def_readwrite("reliability", &Vm::reliability)
        .def_readwrite("security", &Vm::security)
        .def_readwrite("ram_mb", &Vm::ram_mb)
        .def_readwrite("bandwidth", &Vm::bandwidth)
        .def_readwrite("size_mb", &Vm::size_mb)
        .def_readwrite("provider_id", &Vm::provider_id)
        .def("dependability", &Vm::dependability);

    py::class_<Host>(m, "Host")
        .def(py::init<>())
        .def_readwrite("id", &Host::id)
        .def_readwrite("provider_id", &Host::provider_id)
        .def_readwrite("mips", &Host::mips)
        .def_readwrite("pes", &Host::pes)
        .def_readwrite("ram_mb", &Host::ram_mb)
        .def_readwrite("bandwidth", &Host::bandwidth)
        .def_readwrite("size_mb", &Host::size_mb)
        .def_readwrite("power_idle_w", &Host::power_idle_w)
        .def_readwrite("power_max_w", &Host::power_max_w)
        .def_readwrite("powered_on", &Host::powered_on);

    py::class_<Provider>(m, "Provider")
        .def(py::init<>())
        .def_readwrite("id", &Provider::id)
        .def_readwrite("name", &Provider::name);

    py::class_<QosConstraints>(m, "QosConstraints")
        .def(py::init<>())
        .def_readwrite("deadline_s", &QosConstraints::deadline_s)
        .def_readwrite("budget", &QosConstraints::budget)
        .def_readwrite("alpha", &QosConstraints::alpha)
        .def_readwrite("beta", &QosConstraints::beta);

    py::class_<Schedule>(m, "Schedule")
        .def(py::init<>())
        .def_readwrite("assignment", &Schedule::assignment)
        .def_readwrite("accepted", &Schedule::accepted)
        .def_readwrite("reject_reason", &Schedule::reject_reason)
        .def("__len__", &Schedule::size);

    py::class_<ScheduleMetrics>(m, "ScheduleMetrics")
        .def_readonly("makespan", &ScheduleMetrics::makespan)
        .def_readonly("total_price", &ScheduleMetrics::total_price)
        .def_readonly("ras", &ScheduleMetrics::ras)
        .def_readonly("benefit", &ScheduleMetrics::benefit)
        .def_readonly("fitness", &ScheduleMetrics::fitness);

    py::class_<de::DeConfig>(m, "DeConfig")
        .def(py::init<>())
        .def_readwrite("np", &de::DeConfig::np)
        .def_readwrite("f", &de::DeConfig::f)
        .def_readwrite("cr", &de::DeConfig::cr)
        .def_readwrite("generations", &de::DeConfig::generations)
        .def_readwrite("lower", &de::DeConfig::lower)
        .def_readwrite("upper", &de::DeConfig::upper)
        .def_readwrite("dims", &de::DeConfig::dims)
        .def_readwrite("seed", &de::DeConfig::seed);

    py::class_<Thresholds>(m, "Thresholds")
        .def(py::init<>())
        .def_readwrite("t_max", &Thresholds::t_max)
        .def_readwrite("t_min", &Thresholds::t_min);

    py::class_<TraceConfig>(m, "TraceConfig")
        .def(py::init<>())
        .def_readwrite("delta", &TraceConfig::delta)
        .def_readwrite("u0_min", &TraceConfig::u0_min)
        .def_readwrite("u0_max", &TraceConfig::u0_max);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("timesteps", &SimConfig::timesteps)
        .def_readwrite("step_seconds", &SimConfig::step_seconds)
        .def_readwrite("thresholds", &SimConfig::thresholds)
        .def_readwrite("mode", &SimConfig::mode)
        .def_readwrite("policy", &SimConfig::policy)
        .def_readwrite("trace", &SimConfig::trace)
        .def_readwrite("seed", &SimConfig::seed);

    py::class_<SimMetrics>(m, "SimMetrics")
        .def_readonly("migration_count", &SimMetrics::migration_count)
        .def_readonly("energy_kwh", &SimMetrics::energy_kwh)
        .def_readonly("sla_violation_rate", &SimMetrics::sla_violation_rate)
        .def_readonly("monetary_cost", &SimMetrics::monetary_cost)
        .def_readonly("per_step_migrations", &SimMetrics::per_step_migrations)
        .def_readonly("per_step_energy_kwh", &SimMetrics::per_step_energy_kwh)
        .def_readonly("per_step_hot_nodes", &SimMetrics::per_step_hot_nodes);

    py::class_<MigrationRecord>(m, "MigrationRecord")
        .def_readonly("timestep", &MigrationRecord::timestep)
        .def_readonly("vm_id", &MigrationRecord::vm_id)
        .def_readonly("source_host", &MigrationRecord::source_host)
        .def_readonly("target_host", &MigrationRecord::target_host)
        .def_readonly("source_provider", &MigrationRecord::source_provider)
        .def_readonly("target_provider", &MigrationRecord::target_provider)
        .def_readonly("iterations", &MigrationRecord::iterations)
        .def_readonly("bytes_copied_mb", &MigrationRecord::bytes_copied_mb)
        .def_readonly("downtime_s", &MigrationRecord::downtime_s)
        .def_readonly("policy", &MigrationRecord::policy)
        .def_readonly("mode", &MigrationRecord::mode);

    py::class_<SimResult>(m, "SimResult")
        .def_readonly("metrics", &SimResult::metrics)
        .def_readonly("log", &SimResult::log);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("name", &Scenario::name)
        .def_readwrite("tasks", &Scenario::tasks)
        .def_readwrite("vms", &Scenario::vms)
        .def_readwrite("hosts", &Scenario::hosts)
        .def_readwrite("providers", &Scenario::providers)
        .def_readwrite("qos", &Scenario::qos)
        .def_readwrite("de", &Scenario::de)
        .def_readwrite("sim", &Scenario::sim)
        .def("validate", &Scenario::validate);

    py::class_<BindResult>(m, "BindResult")
        .def_readonly("schedule", &BindResult::schedule)
        .def_readonly("metrics", &BindResult::metrics);

    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("load_bundled_scenario", [](const std::string& name) {
        return load_bundled_scenario(name);
    }, py::arg("name"));
    m.def("bundled_scenario_names", &bundled_scenario_names);
    m.def("resolve_scenario", &resolve_scenario, py::arg("path_or_name"));
    m.def("save_scenario", &save_scenario, py::arg("scenario"), py::arg("path"));
    m.def("scenario_to_json", &to_json_text, py::arg("scenario"));

    m.def("validate_scenario", [](const Scenario& s) { return s.validate(); },
          py::arg("scenario"));

    m.def("exec_time", &exec_time, py::arg("task"), py::arg("vm"));
    m.def("exec_price", &exec_price, py::arg("task"), py::arg("vm"));
    m.def("pair_benefit", &pair_benefit, py::arg("task"), py::arg("vm"), py::arg("qos"));
    m.def("evaluate_schedule", [](const Schedule& s, const Scenario& scenario) {
        return evaluate_schedule(s, scenario.tasks, scenario.vms, scenario.qos);
    }, py::arg("schedule"), py::arg("scenario"));

    m.def("debbp_bind", [](const Scenario& scenario, const de::DeConfig& cfg) {
        return debbp_bind(scenario.tasks, scenario.vms, scenario.qos, cfg);
    }, py::arg("scenario"), py::arg("de_config"));
    m.def("maxmin_bind", [](const Scenario& scenario) {
        return maxmin_bind(scenario.tasks, scenario.vms);
    }, py::arg("scenario"));
    m.def("sequential_bind", [](const Scenario& scenario) {
        return sequential_bind(scenario.tasks, scenario.vms);
    }, py::arg("scenario"));
    m.def("schedule_or_reject",
          [](const Scenario& scenario, BindingPolicyId policy, const de::DeConfig& cfg) {
              return schedule_or_reject(scenario.tasks, scenario.vms, scenario.qos, policy,
                                        cfg);
          },
          py::arg("scenario"), py::arg("policy"), py::arg("de_config") = de::DeConfig{});

    m.def("run_simulation", &run_simulation, py::arg("scenario"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_simulation", [](const Scenario& scenario) {
        py::gil_scoped_release release;
        return run_simulation(scenario, scenario.sim);
    }, py::arg("scenario"));

#ifdef FEDCLOUD_VERSION
    m.attr("__version__") = FEDCLOUD_VERSION;
#else
    m.attr("__version__") = std::string(kLibraryVersion);
#endif
}
