#include "fedcloud/scenario_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bundled_scenarios.hpp"
#include "fedcloud/version.hpp"

namespace fedcloud {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ScenarioError(path + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) fail(path + "." + key, "missing field");
    return obj.at(key);
}

double require_number(const json& obj, const char* key, const std::string& path) {
    const json& value = require(obj, key, path);
    if (!value.is_number()) fail(path + "." + key, "expected a number");
    return value.get<double>();
}

int require_int(const json& obj, const char* key, const std::string& path) {
    const json& value = require(obj, key, path);
    if (!value.is_number_integer()) fail(path + "." + key, "expected an integer");
    return value.get<int>();
}

double number_or(const json& obj, const char* key, double fallback) {
    return obj.is_object() && obj.contains(key) ? obj.at(key).get<double>() : fallback;
}

int int_or(const json& obj, const char* key, int fallback) {
    return obj.is_object() && obj.contains(key) ? obj.at(key).get<int>() : fallback;
}

bool bool_or(const json& obj, const char* key, bool fallback) {
    return obj.is_object() && obj.contains(key) ? obj.at(key).get<bool>() : fallback;
}

std::uint64_t uint_or(const json& obj, const char* key, std::uint64_t fallback) {
    return obj.is_object() && obj.contains(key) ? obj.at(key).get<std::uint64_t>() : fallback;
}

std::string string_or(const json& obj, const char* key, const std::string& fallback) {
    return obj.is_object() && obj.contains(key) ? obj.at(key).get<std::string>() : fallback;
}

Task parse_task(const json& j, const std::string& path) {
    Task task;
    task.id = require_int(j, "id", path);
    task.length_mi = require_number(j, "length", path);
    return task;
}

Vm parse_vm(const json& j, const std::string& path) {
    Vm vm;
    vm.id = require_int(j, "id", path);
    vm.mips = require_number(j, "mips", path);
    vm.price = require_number(j, "price", path);
    vm.pes = int_or(j, "pes", 1);
    vm.availability = number_or(j, "availability", 0.0);
    vm.reliability = number_or(j, "reliability", 0.0);
    vm.security = number_or(j, "security", 0.0);
    vm.ram_mb = number_or(j, "ram", 512.0);
    vm.bandwidth = number_or(j, "bandwidth", 100000.0);
    vm.size_mb = number_or(j, "size", 2500.0);
    vm.provider_id = int_or(j, "provider", 0);
    return vm;
}

Host parse_host(const json& j, const std::string& path) {
    Host host;
    host.id = require_int(j, "id", path);
    host.mips = require_number(j, "mips", path);
    host.provider_id = int_or(j, "provider", 0);
    host.pes = int_or(j, "pes", 1);
    host.ram_mb = number_or(j, "ram", 4096.0);
    host.bandwidth = number_or(j, "bandwidth", 100000000.0);
    host.size_mb = number_or(j, "size", 1000000.0);
    host.power_idle_w = number_or(j, "power_idle", 70.0);
    host.power_max_w = number_or(j, "power_max", 250.0);
    host.powered_on = bool_or(j, "powered_on", true);
    return host;
}

Provider parse_provider(const json& j, const std::string& path) {
    Provider provider;
    provider.id = require_int(j, "id", path);
    provider.name = string_or(j, "name", "provider-" + std::to_string(provider.id));
    return provider;
}

QosConstraints parse_qos(const json& j, const std::string& path) {
    QosConstraints qos;
    qos.deadline_s = require_number(j, "deadline", path);
    qos.budget = require_number(j, "budget", path);
    qos.alpha = number_or(j, "alpha", 0.5);
    qos.beta = number_or(j, "beta", 0.5);
    return qos;
}

de::DeConfig parse_de(const json& j) {
    de::DeConfig cfg;
    cfg.np = int_or(j, "np", cfg.np);
    cfg.f = number_or(j, "f", cfg.f);
    cfg.cr = number_or(j, "cr", cfg.cr);
    cfg.generations = int_or(j, "generations", cfg.generations);
    cfg.lower = number_or(j, "lower", cfg.lower);
    cfg.upper = number_or(j, "upper", cfg.upper);
    cfg.seed = uint_or(j, "seed", 1);
    return cfg;
}

SimConfig parse_sim(const json& j, const std::string& path) {
    SimConfig cfg;
    cfg.timesteps = int_or(j, "timesteps", cfg.timesteps);
    cfg.step_seconds = number_or(j, "step_seconds", cfg.step_seconds);
    cfg.thresholds.t_max = number_or(j, "t_max", cfg.thresholds.t_max);
    cfg.thresholds.t_min = number_or(j, "t_min", cfg.thresholds.t_min);
    cfg.seed = uint_or(j, "seed", 1);

    const std::string mode = string_or(j, "mode", "cooperative");
    const auto parsed_mode = parse_federation_mode(mode);
    if (!parsed_mode) fail(path + ".mode", "unknown federation mode '" + mode + "'");
    cfg.mode = *parsed_mode;

    const std::string policy = string_or(j, "policy", "vmmndsa");
    const auto parsed_policy = parse_migration_policy(policy);
    if (!parsed_policy) fail(path + ".policy", "unknown migration policy '" + policy + "'");
    cfg.policy = *parsed_policy;

    if (j.is_object() && j.contains("trace")) {
        const json& t = j.at("trace");
        cfg.trace.delta = number_or(t, "delta", cfg.trace.delta);
        cfg.trace.u0_min = number_or(t, "u0_min", cfg.trace.u0_min);
        cfg.trace.u0_max = number_or(t, "u0_max", cfg.trace.u0_max);
    }
    if (j.is_object() && j.contains("precopy")) {
        const json& p = j.at("precopy");
        cfg.precopy.link_bandwidth_mb_s =
            number_or(p, "link_bandwidth_mb_s", cfg.precopy.link_bandwidth_mb_s);
        cfg.precopy.dirty_rate = number_or(p, "dirty_rate", cfg.precopy.dirty_rate);
        cfg.precopy.stop_threshold_mb =
            number_or(p, "stop_threshold_mb", cfg.precopy.stop_threshold_mb);
        cfg.precopy.max_iters = int_or(p, "max_iters", cfg.precopy.max_iters);
    }
    if (j.is_object() && j.contains("loss_ratio")) {
        const json& w = j.at("loss_ratio");
        cfg.alpha_p = number_or(w, "alpha", cfg.alpha_p);
        cfg.beta_p = number_or(w, "beta", cfg.beta_p);
    }
    if (j.is_object() && j.contains("baselines")) {
        const json& b = j.at("baselines");
        cfg.madmmt_safety = number_or(b, "madmmt_safety", cfg.madmmt_safety);
        cfg.iqrmc_safety = number_or(b, "iqrmc_safety", cfg.iqrmc_safety);
        cfg.history_window = int_or(b, "history_window", cfg.history_window);
        cfg.min_history = int_or(b, "min_history", cfg.min_history);
    }
    if (j.is_object() && j.contains("costs")) {
        const json& c = j.at("costs");
        cfg.costs.cpu_s = number_or(c, "cpu_s", cfg.costs.cpu_s);
        cfg.costs.mem_mb_s = number_or(c, "mem_mb_s", cfg.costs.mem_mb_s);
        cfg.costs.transfer_mb = number_or(c, "transfer_mb", cfg.costs.transfer_mb);
    }
    return cfg;
}

json task_to_json(const Task& t) { return {{"id", t.id}, {"length", t.length_mi}}; }

json vm_to_json(const Vm& v) {
    return {{"id", v.id},
            {"pes", v.pes},
            {"mips", v.mips},
            {"price", v.price},
            {"availability", v.availability},
            {"reliability", v.reliability},
            {"security", v.security},
            {"ram", v.ram_mb},
            {"bandwidth", v.bandwidth},
            {"size", v.size_mb},
            {"provider", v.provider_id}};
}

json host_to_json(const Host& h) {
    return {{"id", h.id},
            {"provider", h.provider_id},
            {"mips", h.mips},
            {"pes", h.pes},
            {"ram", h.ram_mb},
            {"bandwidth", h.bandwidth},
            {"size", h.size_mb},
            {"power_idle", h.power_idle_w},
            {"power_max", h.power_max_w},
            {"powered_on", h.powered_on}};
}

json sim_to_json(const SimConfig& s) {
    return {{"timesteps", s.timesteps},
            {"step_seconds", s.step_seconds},
            {"t_max", s.thresholds.t_max},
            {"t_min", s.thresholds.t_min},
            {"mode", std::string(to_string(s.mode))},
            {"policy", std::string(to_string(s.policy))},
            {"seed", s.seed},
            {"trace",
             {{"delta", s.trace.delta}, {"u0_min", s.trace.u0_min}, {"u0_max", s.trace.u0_max}}},
            {"precopy",
             {{"link_bandwidth_mb_s", s.precopy.link_bandwidth_mb_s},
              {"dirty_rate", s.precopy.dirty_rate},
              {"stop_threshold_mb", s.precopy.stop_threshold_mb},
              {"max_iters", s.precopy.max_iters}}},
            {"loss_ratio", {{"alpha", s.alpha_p}, {"beta", s.beta_p}}},
            {"baselines",
             {{"madmmt_safety", s.madmmt_safety},
              {"iqrmc_safety", s.iqrmc_safety},
              {"history_window", s.history_window},
              {"min_history", s.min_history}}},
            {"costs",
             {{"cpu_s", s.costs.cpu_s},
              {"mem_mb_s", s.costs.mem_mb_s},
              {"transfer_mb", s.costs.transfer_mb}}}};
}

}  // namespace

std::vector<std::string> Scenario::validate() const {
    return validate_scenario(tasks, vms, hosts, providers, qos);
}

Scenario parse_scenario(std::string_view json_text, std::string_view name_hint) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("parse error: ") + e.what());
    }

    Scenario scenario;
    scenario.name = string_or(doc, "name", std::string(name_hint));

    scenario.qos = parse_qos(require(doc, "qos", "qos"), "qos");
    scenario.de = doc.contains("de") ? parse_de(doc.at("de")) : de::DeConfig{};
    scenario.sim = doc.contains("sim") ? parse_sim(doc.at("sim"), "sim") : SimConfig{};

    if (doc.contains("tasks")) {
        std::size_t i = 0;
        for (const json& j : doc.at("tasks"))
            scenario.tasks.push_back(parse_task(j, "tasks[" + std::to_string(i++) + "]"));
    }
    if (doc.contains("vms")) {
        std::size_t i = 0;
        for (const json& j : doc.at("vms"))
            scenario.vms.push_back(parse_vm(j, "vms[" + std::to_string(i++) + "]"));
    }
    if (doc.contains("hosts")) {
        std::size_t i = 0;
        for (const json& j : doc.at("hosts"))
            scenario.hosts.push_back(parse_host(j, "hosts[" + std::to_string(i++) + "]"));
    }
    if (doc.contains("providers")) {
        std::size_t i = 0;
        for (const json& j : doc.at("providers"))
            scenario.providers.push_back(
                parse_provider(j, "providers[" + std::to_string(i++) + "]"));
    }

    const auto report = scenario.validate();
    if (!report.empty()) {
        std::ostringstream out;
        out << "invalid scenario";
        for (const auto& line : report) out << "\n  - " << line;
        throw ScenarioError(out.str());
    }
    return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path.stem().string());
}

std::string to_json_text(const Scenario& scenario) {
    json doc;
    doc["name"] = scenario.name;
    doc["qos"] = {{"deadline", scenario.qos.deadline_s},
                  {"budget", scenario.qos.budget},
                  {"alpha", scenario.qos.alpha},
                  {"beta", scenario.qos.beta}};
    doc["de"] = {{"np", scenario.de.np},
                 {"f", scenario.de.f},
                 {"cr", scenario.de.cr},
                 {"generations", scenario.de.generations},
                 {"lower", scenario.de.lower},
                 {"upper", scenario.de.upper},
                 {"seed", scenario.de.seed}};
    doc["sim"] = sim_to_json(scenario.sim);
    doc["tasks"] = json::array();
    for (const auto& t : scenario.tasks) doc["tasks"].push_back(task_to_json(t));
    doc["vms"] = json::array();
    for (const auto& v : scenario.vms) doc["vms"].push_back(vm_to_json(v));
    doc["hosts"] = json::array();
    for (const auto& h : scenario.hosts) doc["hosts"].push_back(host_to_json(h));
    doc["providers"] = json::array();
    for (const auto& p : scenario.providers)
        doc["providers"].push_back({{"id", p.id}, {"name", p.name}});
    return doc.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ScenarioError("cannot write scenario file: " + path.string());
    out << to_json_text(scenario);
}

std::vector<std::string> bundled_scenario_names() {
    return {"job_a", "job_b", "migration_default"};
}

Scenario load_bundled_scenario(std::string_view name) {
    if (name == "job_a") return parse_scenario(bundled::job_a, name);
    if (name == "job_b") return parse_scenario(bundled::job_b, name);
    if (name == "migration_default") return parse_scenario(bundled::migration_default, name);
    throw ScenarioError("unknown bundled scenario: " + std::string(name));
}

Scenario resolve_scenario(const std::string& path_or_name) {
    if (std::filesystem::exists(path_or_name)) return load_scenario(path_or_name);
    for (const auto& name : bundled_scenario_names())
        if (name == path_or_name) return load_bundled_scenario(name);
    throw ScenarioError("scenario not found (no such file or bundled name): " + path_or_name);
}

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& file) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary);  // '\n' endings on every platform
    if (!out) throw std::runtime_error("cannot write: " + file.string());
    return out;
}

std::uint64_t fnv1a64(std::string_view text, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

void write_schedule_csv(const std::filesystem::path& file, std::span<const Task> tasks,
                        std::span<const Vm> vms, const Schedule& schedule) {
    std::ofstream out = open_for_write(file);
    out << "task_id,vm_id,exec_time,exec_price,ras_contrib\n";
    for (const auto& [task_id, vm_id] : schedule.assignment) {
        const Task* task = nullptr;
        const Vm* vm = nullptr;
        for (const auto& t : tasks)
            if (t.id == task_id) task = &t;
        for (const auto& v : vms)
            if (v.id == vm_id) vm = &v;
        if (!task || !vm) throw std::runtime_error("schedule references unknown task or vm");
        out << task_id << ',' << vm_id << ',' << format_double(exec_time(*task, *vm)) << ','
            << format_double(exec_price(*task, *vm)) << ','
            << format_double(vm->dependability()) << '\n';
    }
}

void write_binding_metrics_csv(const std::filesystem::path& file,
                               const ScheduleMetrics& metrics, bool accepted,
                               const std::string& reject_reason) {
    std::ofstream out = open_for_write(file);
    out << "makespan,total_price,ras,benefit,fitness,accepted,reject_reason\n";
    out << format_double(metrics.makespan) << ',' << format_double(metrics.total_price) << ','
        << format_double(metrics.ras) << ',' << format_double(metrics.benefit) << ','
        << format_double(metrics.fitness) << ',' << (accepted ? "true" : "false") << ','
        << reject_reason << '\n';
}

void write_sim_metrics_csv(const std::filesystem::path& file, std::uint64_t seed,
                           MigrationPolicyId policy, FederationMode mode,
                           const SimMetrics& metrics) {
    std::ofstream out = open_for_write(file);
    out << "seed,policy,mode,migration_count,energy_kwh,sla_violation_rate,monetary_cost\n";
    out << seed << ',' << to_string(policy) << ',' << to_string(mode) << ','
        << metrics.migration_count << ',' << format_double(metrics.energy_kwh) << ','
        << format_double(metrics.sla_violation_rate) << ','
        << format_double(metrics.monetary_cost) << '\n';
}

void write_sim_series_csv(const std::filesystem::path& file, const SimMetrics& metrics) {
    std::ofstream out = open_for_write(file);
    out << "step,hot_nodes,energy_kwh,migrations\n";
    for (std::size_t t = 0; t < metrics.per_step_hot_nodes.size(); ++t) {
        out << t << ',' << metrics.per_step_hot_nodes[t] << ','
            << format_double(metrics.per_step_energy_kwh[t]) << ','
            << metrics.per_step_migrations[t] << '\n';
    }
}

void write_migration_log_csv(const std::filesystem::path& file,
                             std::span<const MigrationRecord> log) {
    std::ofstream out = open_for_write(file);
    out << "timestep,vm_id,source_host,target_host,source_provider,target_provider,"
           "iterations,bytes_copied_mb,downtime_s,policy,mode\n";
    for (const auto& rec : log) {
        out << rec.timestep << ',' << rec.vm_id << ',' << rec.source_host << ','
            << rec.target_host << ',' << rec.source_provider << ',' << rec.target_provider
            << ',' << rec.iterations << ',' << format_double(rec.bytes_copied_mb) << ','
            << format_double(rec.downtime_s) << ',' << rec.policy << ',' << rec.mode << '\n';
    }
}

void write_manifest(const std::filesystem::path& file, const RunManifest& manifest) {
    json doc;
    doc["command"] = manifest.command;
    doc["seed"] = manifest.seed;
    doc["scenario"] = manifest.scenario_name;
    doc["config_hash"] = manifest.config_hash;
    doc["library_version"] = manifest.library_version;
    std::ofstream out = open_for_write(file);
    out << doc.dump(2) << '\n';
}

RunManifest make_manifest(const std::string& command, std::uint64_t seed,
                          const Scenario& scenario) {
    RunManifest manifest;
    manifest.command = command;
    manifest.seed = seed;
    manifest.scenario_name = scenario.name;
    char hex[32];
    const std::uint64_t hash = fnv1a64(command, fnv1a64(to_json_text(scenario)));
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
    manifest.config_hash = hex;
    manifest.library_version = std::string(kLibraryVersion);
    return manifest;
}

}  // namespace fedcloud
