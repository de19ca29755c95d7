#include "fedcloud/sim.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fedcloud/scenario_io.hpp"

namespace fedcloud {

std::string_view to_string(MigrationPolicyId policy) {
    switch (policy) {
        case MigrationPolicyId::Vmmndsa: return "vmmndsa";
        case MigrationPolicyId::MadMmt: return "madmmt";
        case MigrationPolicyId::IqrMc: return "iqrmc";
    }
    return "unknown";
}

std::optional<MigrationPolicyId> parse_migration_policy(std::string_view text) {
    if (text == "vmmndsa") return MigrationPolicyId::Vmmndsa;
    if (text == "madmmt") return MigrationPolicyId::MadMmt;
    if (text == "iqrmc") return MigrationPolicyId::IqrMc;
    return std::nullopt;
}

std::vector<double> generate_trace(const TraceConfig& cfg, int steps, SplitRng rng) {
    std::vector<double> trace(static_cast<std::size_t>(std::max(steps, 0)));
    if (trace.empty()) return trace;
    double u = rng.uniform(cfg.u0_min, cfg.u0_max);
    trace[0] = std::clamp(u, 0.0, 1.0);
    for (std::size_t t = 1; t < trace.size(); ++t) {
        u = std::clamp(u + rng.uniform(-cfg.delta, cfg.delta), 0.0, 1.0);
        trace[t] = u;
    }
    return trace;
}

double step_energy_j(const Host& host, double utilization, double step_seconds) {
    if (!host.powered_on) return 0.0;
    const double watts =
        host.power_idle_w + (host.power_max_w - host.power_idle_w) * utilization;
    return watts * step_seconds;
}

double sla_violation_rate(std::span<const int> hot_counts_per_step, int n_hosts,
                          int timesteps) {
    if (n_hosts <= 0 || timesteps <= 0) return 0.0;
    const long long hot = std::accumulate(hot_counts_per_step.begin(),
                                          hot_counts_per_step.end(), 0LL);
    return static_cast<double>(hot) / (static_cast<double>(n_hosts) * timesteps);
}

std::vector<int> initial_placement(std::span<const Vm> vms, std::span<const Host> hosts) {
    std::vector<std::size_t> order(vms.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&vms](std::size_t a, std::size_t b) {
        return vms[a].mips * vms[a].pes > vms[b].mips * vms[b].pes;
    });

    std::vector<double> ram_left(hosts.size());
    std::vector<int> pes_left(hosts.size());
    for (std::size_t h = 0; h < hosts.size(); ++h) {
        ram_left[h] = hosts[h].ram_mb;
        pes_left[h] = hosts[h].pes;
    }

    std::vector<int> placement(vms.size(), -1);
    for (const std::size_t v : order) {
        for (std::size_t h = 0; h < hosts.size(); ++h) {
            if (!hosts[h].powered_on) continue;
            if (ram_left[h] < vms[v].ram_mb || pes_left[h] < vms[v].pes) continue;
            placement[v] = static_cast<int>(h);
            ram_left[h] -= vms[v].ram_mb;
            pes_left[h] -= vms[v].pes;
            break;
        }
        if (placement[v] < 0)
            throw std::runtime_error("initial_placement: no feasible host for vm " +
                                     std::to_string(vms[v].id));
    }
    return placement;
}

SimResult run_simulation(const Scenario& scenario, const SimConfig& cfg) {
    if (cfg.timesteps < 1) throw std::invalid_argument("run_simulation: timesteps >= 1");
    if (!(cfg.step_seconds > 0))
        throw std::invalid_argument("run_simulation: step_seconds > 0");
    if (scenario.hosts.empty()) throw std::invalid_argument("run_simulation: no hosts");
    if (scenario.vms.empty()) throw std::invalid_argument("run_simulation: no VMs");

    const SplitRng root(cfg.seed);

    DatacenterState state = DatacenterState::create(
        scenario.hosts, scenario.vms, initial_placement(scenario.vms, scenario.hosts));

    std::vector<std::vector<double>> traces(state.vms.size());
    for (std::size_t v = 0; v < state.vms.size(); ++v) {
        traces[v] = generate_trace(cfg.trace, cfg.timesteps,
                                   root.child("trace", static_cast<std::uint64_t>(state.vms[v].id)));
    }

    MigrationPolicyConfig policy_cfg;
    policy_cfg.thresholds = cfg.thresholds;
    policy_cfg.mode = cfg.mode;
    policy_cfg.alpha_p = cfg.alpha_p;
    policy_cfg.beta_p = cfg.beta_p;
    policy_cfg.precopy = cfg.precopy;
    policy_cfg.madmmt_safety = cfg.madmmt_safety;
    policy_cfg.iqrmc_safety = cfg.iqrmc_safety;
    policy_cfg.history_window = cfg.history_window;
    policy_cfg.min_history = cfg.min_history;

    SimResult result;
    auto& metrics = result.metrics;
    metrics.per_step_migrations.reserve(static_cast<std::size_t>(cfg.timesteps));
    metrics.per_step_energy_kwh.reserve(static_cast<std::size_t>(cfg.timesteps));
    metrics.per_step_hot_nodes.reserve(static_cast<std::size_t>(cfg.timesteps));

    double energy_j = 0.0;
    double cpu_seconds = 0.0;
    double mem_mb_seconds = 0.0;
    double transferred_mb = 0.0;

    for (int t = 0; t < cfg.timesteps; ++t) {
        state.step = t;
        for (std::size_t v = 0; v < state.vms.size(); ++v) {
            state.vm_cpu_demand[v] = traces[v][static_cast<std::size_t>(t)];
            state.vm_util_history[v].push_back(state.vm_cpu_demand[v]);
        }

        // pre-migration utilizations drive SLA, energy and cost accounting
        double step_energy = 0.0;
        for (std::size_t h = 0; h < state.hosts.size(); ++h) {
            const double util = state.host_utilization(static_cast<int>(h));
            state.host_util_history[h].push_back(util);
            step_energy += step_energy_j(state.hosts[h], util, cfg.step_seconds);
            cpu_seconds += util * cfg.step_seconds;
        }
        for (std::size_t v = 0; v < state.vms.size(); ++v)
            mem_mb_seconds += state.vms[v].ram_mb * cfg.step_seconds;

        const HotNodes hot = detect_hot_nodes(state, cfg.thresholds);
        metrics.per_step_hot_nodes.push_back(static_cast<int>(hot.overloaded.size()));
        result.hot_by_step.push_back(hot);
        energy_j += step_energy;
        metrics.per_step_energy_kwh.push_back(step_energy / 3.6e6);

        std::vector<MigrationRecord> records;
        switch (cfg.policy) {
            case MigrationPolicyId::Vmmndsa: records = vmmndsa_step(state, policy_cfg); break;
            case MigrationPolicyId::MadMmt: records = madmmt_step(state, policy_cfg); break;
            case MigrationPolicyId::IqrMc: records = iqrmc_step(state, policy_cfg); break;
        }
        metrics.per_step_migrations.push_back(static_cast<int>(records.size()));
        for (const auto& rec : records) transferred_mb += rec.bytes_copied_mb;
        result.log.insert(result.log.end(), std::make_move_iterator(records.begin()),
                          std::make_move_iterator(records.end()));
    }

    metrics.migration_count = static_cast<int>(result.log.size());
    metrics.energy_kwh = energy_j / 3.6e6;
    metrics.sla_violation_rate = sla_violation_rate(
        metrics.per_step_hot_nodes, static_cast<int>(state.hosts.size()), cfg.timesteps);
    metrics.monetary_cost = cfg.costs.cpu_s * cpu_seconds +
                            cfg.costs.mem_mb_s * mem_mb_seconds +
                            cfg.costs.transfer_mb * transferred_mb;
    return result;
}

}  // namespace fedcloud
