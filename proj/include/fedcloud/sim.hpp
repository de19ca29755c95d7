#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fedcloud/migration.hpp"
#include "fedcloud/rng.hpp"

namespace fedcloud {

/// Bounded random-walk workload: u_{t+1} = clamp(u_t + uniform(-delta, +delta)),
/// u_0 uniform in [u0_min, u0_max].
struct TraceConfig {
    double delta = 0.1;
    double u0_min = 0.2;
    double u0_max = 0.8;
};

enum class MigrationPolicyId { Vmmndsa, MadMmt, IqrMc };

std::string_view to_string(MigrationPolicyId policy);
std::optional<MigrationPolicyId> parse_migration_policy(std::string_view text);

/// Accounting rates for the monetary-cost metric; they influence no
/// scheduling decision.
struct CostRates {
    double cpu_s = 3.0;        // per utilization-weighted host-second
    double mem_mb_s = 0.05;    // per resident MB-second
    double transfer_mb = 0.001;  // per migrated MB
};

struct SimConfig {
    int timesteps = 288;
    double step_seconds = 300.0;
    Thresholds thresholds;
    FederationMode mode = FederationMode::Cooperative;
    MigrationPolicyId policy = MigrationPolicyId::Vmmndsa;
    TraceConfig trace;
    std::uint64_t seed = 1;
    PrecopyConfig precopy;
    double alpha_p = 0.5;
    double beta_p = 0.5;
    double madmmt_safety = 2.5;
    double iqrmc_safety = 1.5;
    int history_window = 12;
    int min_history = 10;
    CostRates costs;
};

struct SimMetrics {
    int migration_count = 0;
    double energy_kwh = 0.0;
    double sla_violation_rate = 0.0;  // hot (host, step) pairs / (hosts * steps)
    double monetary_cost = 0.0;
    std::vector<int> per_step_migrations;
    std::vector<double> per_step_energy_kwh;
    std::vector<int> per_step_hot_nodes;
};

struct SimResult {
    SimMetrics metrics;
    std::vector<MigrationRecord> log;
    /// Hot sets recorded before the policy acted, one entry per step.
    std::vector<HotNodes> hot_by_step;
};

std::vector<double> generate_trace(const TraceConfig& cfg, int steps, SplitRng rng);

/// Linear idle..max power model; powered-off hosts draw nothing.
double step_energy_j(const Host& host, double utilization, double step_seconds);

double sla_violation_rate(std::span<const int> hot_counts_per_step, int n_hosts,
                          int timesteps);

/// First-fit-decreasing by VM MIPS over powered-on hosts in index order,
/// respecting RAM and PE capacity. Returns host index per VM; throws when
/// some VM cannot be placed.
std::vector<int> initial_placement(std::span<const Vm> vms, std::span<const Host> hosts);

struct Scenario;  // scenario_io.hpp

/// Drives the time-stepped experiment: advance traces, account hot nodes
/// and energy, then let the configured policy migrate. Deterministic for
/// a fixed (scenario, config) pair.
SimResult run_simulation(const Scenario& scenario, const SimConfig& cfg);

}  // namespace fedcloud
