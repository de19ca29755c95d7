#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fedcloud/binding.hpp"
#include "fedcloud/de.hpp"
#include "fedcloud/domain.hpp"
#include "fedcloud/qos.hpp"
#include "fedcloud/sim.hpp"

namespace fedcloud {

/// Raised on malformed scenario files; the message carries the offending
/// field path.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A fully described experiment: entities, QoS constraints, engine and
/// simulation settings. Serialized as a single JSON document (see
/// README for the schema).
struct Scenario {
    std::string name;
    std::vector<Task> tasks;
    std::vector<Vm> vms;
    std::vector<Host> hosts;
    std::vector<Provider> providers;
    QosConstraints qos;
    de::DeConfig de;
    SimConfig sim;

    std::vector<std::string> validate() const;
};

Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(std::string_view json_text, std::string_view name_hint = "");
std::string to_json_text(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

/// Scenarios compiled into the library: "job_a", "job_b",
/// "migration_default".
std::vector<std::string> bundled_scenario_names();
Scenario load_bundled_scenario(std::string_view name);

/// Resolves a --scenario argument: an existing file path wins, otherwise
/// the name must be a bundled scenario.
Scenario resolve_scenario(const std::string& path_or_name);

/// Deterministic shortest round-trip formatting; the one way any double
/// reaches an output file.
std::string format_double(double value);

struct RunManifest {
    std::string command;
    std::uint64_t seed = 0;
    std::string scenario_name;
    std::string config_hash;  // FNV-1a over the canonical scenario JSON + command
    std::string library_version;
};

void write_schedule_csv(const std::filesystem::path& file, std::span<const Task> tasks,
                        std::span<const Vm> vms, const Schedule& schedule);
void write_binding_metrics_csv(const std::filesystem::path& file,
                               const ScheduleMetrics& metrics, bool accepted,
                               const std::string& reject_reason);
void write_sim_metrics_csv(const std::filesystem::path& file, std::uint64_t seed,
                           MigrationPolicyId policy, FederationMode mode,
                           const SimMetrics& metrics);
void write_sim_series_csv(const std::filesystem::path& file, const SimMetrics& metrics);
void write_migration_log_csv(const std::filesystem::path& file,
                             std::span<const MigrationRecord> log);
void write_manifest(const std::filesystem::path& file, const RunManifest& manifest);

RunManifest make_manifest(const std::string& command, std::uint64_t seed,
                          const Scenario& scenario);

}  // namespace fedcloud
