#include "fedcloud/migration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fedcloud/stats.hpp"

namespace fedcloud {

LossRatio migration_loss_ratio(const VmLoad& load, double alpha_p, double beta_p) {
    if (load.mem_util <= 0.0) return {0.0, true};
    return {(alpha_p * load.cpu_util + beta_p * load.bw_util) / load.mem_util, false};
}

bool loss_ratio_less(const LossRatio& a, const LossRatio& b) {
    if (a.zero_memory != b.zero_memory) return b.zero_memory;
    if (a.zero_memory) return false;
    return a.value < b.value;
}

PrecopyResult precopy_migration(double vm_ram_mb, double link_bandwidth_mb_s,
                                double dirty_rate, double stop_threshold_mb,
                                int max_iters) {
    if (!(link_bandwidth_mb_s > 0.0))
        throw std::invalid_argument("precopy_migration: bandwidth must be > 0");
    if (dirty_rate < 0.0 || dirty_rate >= 1.0)
        throw std::invalid_argument("precopy_migration: dirty_rate must lie in [0, 1)");

    PrecopyResult result;
    double remaining = vm_ram_mb;
    int rounds = 0;
    while (remaining >= stop_threshold_mb && rounds < max_iters) {
        result.bytes_copied_mb += remaining;
        remaining *= dirty_rate;
        ++rounds;
    }
    // final stop-and-copy of whatever is still dirty
    result.bytes_copied_mb += remaining;
    result.downtime_s = remaining / link_bandwidth_mb_s;
    result.iterations = rounds + (remaining > 0.0 ? 1 : 0);
    if (result.iterations < 1) result.iterations = 1;
    return result;
}

DatacenterState DatacenterState::create(std::vector<Host> hosts, std::vector<Vm> vms,
                                        std::vector<int> placement) {
    if (placement.size() != vms.size())
        throw std::invalid_argument("DatacenterState: placement size != vm count");

    DatacenterState state;
    state.hosts = std::move(hosts);
    state.vms = std::move(vms);
    state.host_of_vm = std::move(placement);
    state.vms_of_host.resize(state.hosts.size());
    for (std::size_t v = 0; v < state.vms.size(); ++v) {
        const int h = state.host_of_vm[v];
        if (h < 0 || static_cast<std::size_t>(h) >= state.hosts.size())
            throw std::invalid_argument("DatacenterState: placement references unknown host");
        if (!state.hosts[static_cast<std::size_t>(h)].powered_on)
            throw std::invalid_argument("DatacenterState: VM placed on powered-off host");
        state.vms_of_host[static_cast<std::size_t>(h)].push_back(static_cast<int>(v));
    }
    state.vm_cpu_demand.assign(state.vms.size(), 0.0);
    state.last_migration_step.assign(state.vms.size(), -1);
    state.host_util_history.resize(state.hosts.size());
    state.vm_util_history.resize(state.vms.size());
    return state;
}

double DatacenterState::vm_cpu_demand_mips(int vm_index) const {
    const Vm& vm = vms[static_cast<std::size_t>(vm_index)];
    return vm_cpu_demand[static_cast<std::size_t>(vm_index)] * vm.mips * vm.pes;
}

double DatacenterState::vm_cpu_required_mips(int vm_index) const {
    const Vm& vm = vms[static_cast<std::size_t>(vm_index)];
    return vm.mips * vm.pes;
}

double DatacenterState::host_cpu_used_mips(int host_index) const {
    double used = 0.0;
    for (int v : vms_of_host[static_cast<std::size_t>(host_index)])
        used += vm_cpu_demand_mips(v);
    return used;
}

double DatacenterState::host_cpu_booked_mips(int host_index) const {
    double booked = 0.0;
    for (int v : vms_of_host[static_cast<std::size_t>(host_index)])
        booked += vm_cpu_required_mips(v);
    return booked;
}

double DatacenterState::host_ram_used_mb(int host_index) const {
    double used = 0.0;
    for (int v : vms_of_host[static_cast<std::size_t>(host_index)])
        used += vms[static_cast<std::size_t>(v)].ram_mb;
    return used;
}

double DatacenterState::host_bw_used(int host_index) const {
    double used = 0.0;
    for (int v : vms_of_host[static_cast<std::size_t>(host_index)])
        used += vms[static_cast<std::size_t>(v)].bandwidth;
    return used;
}

double DatacenterState::host_utilization(int host_index) const {
    const Host& host = hosts[static_cast<std::size_t>(host_index)];
    if (!host.powered_on) return 0.0;
    const double util = host_cpu_used_mips(host_index) / host.cpu_capacity_mips();
    return std::clamp(util, 0.0, 1.0);
}

VmLoad DatacenterState::vm_load(int vm_index) const {
    const Vm& vm = vms[static_cast<std::size_t>(vm_index)];
    const Host& host = hosts[static_cast<std::size_t>(host_of_vm[static_cast<std::size_t>(vm_index)])];
    VmLoad load;
    load.vm_id = vm.id;
    load.cpu_util = vm_cpu_demand_mips(vm_index) / host.cpu_capacity_mips();
    load.bw_util = vm.bandwidth / host.bandwidth;
    load.mem_util = vm.ram_mb / host.ram_mb;
    return load;
}

void DatacenterState::apply_migration(int vm_index, int target_host_index) {
    auto& source_list = vms_of_host[static_cast<std::size_t>(host_of_vm[static_cast<std::size_t>(vm_index)])];
    source_list.erase(std::find(source_list.begin(), source_list.end(), vm_index));
    auto& target_list = vms_of_host[static_cast<std::size_t>(target_host_index)];
    target_list.insert(std::upper_bound(target_list.begin(), target_list.end(), vm_index),
                       vm_index);
    host_of_vm[static_cast<std::size_t>(vm_index)] = target_host_index;
}

HotNodes detect_hot_nodes(const DatacenterState& state, const Thresholds& thresholds) {
    HotNodes hot;
    for (std::size_t h = 0; h < state.hosts.size(); ++h) {
        if (!state.hosts[h].powered_on) continue;
        const double util = state.host_utilization(static_cast<int>(h));
        if (util > thresholds.t_max) {
            hot.overloaded.push_back(static_cast<int>(h));
        } else if (util < thresholds.t_min && !state.vms_of_host[h].empty()) {
            hot.underloaded.push_back(static_cast<int>(h));
        }
    }
    return hot;
}

int select_victim(std::span<const VmLoad> residents, double alpha_p, double beta_p) {
    if (residents.empty()) throw std::invalid_argument("select_victim: no victim available");
    std::size_t best = 0;
    LossRatio best_ratio = migration_loss_ratio(residents[0], alpha_p, beta_p);
    for (std::size_t i = 1; i < residents.size(); ++i) {
        const LossRatio ratio = migration_loss_ratio(residents[i], alpha_p, beta_p);
        const bool better = loss_ratio_less(best_ratio, ratio) ||
                            (!loss_ratio_less(ratio, best_ratio) &&
                             residents[i].vm_id < residents[best].vm_id);
        if (better) {
            best = i;
            best_ratio = ratio;
        }
    }
    return residents[best].vm_id;
}

ResourceVector demand_vector(const Vm& vm, double cpu_demand_mips, const Host& host) {
    return {cpu_demand_mips / host.cpu_capacity_mips(), vm.ram_mb / host.ram_mb,
            vm.bandwidth / host.bandwidth};
}

ResourceVector supply_vector(const Host& host, double cpu_used_mips, double ram_used_mb,
                             double bw_used) {
    return {1.0 - cpu_used_mips / host.cpu_capacity_mips(), 1.0 - ram_used_mb / host.ram_mb,
            1.0 - bw_used / host.bandwidth};
}

bool federation_eligible(int vm_provider, int host_provider, FederationMode mode) {
    return mode == FederationMode::Cooperative || vm_provider == host_provider;
}

std::optional<double> target_utility(const ResourceVector& demand,
                                     const ResourceVector& supply, bool eligible) {
    if (!eligible) return std::nullopt;
    const double cpu = supply.cpu - demand.cpu;
    const double mem = supply.mem - demand.mem;
    const double bw = supply.bw - demand.bw;
    if (cpu < 0.0 || mem < 0.0 || bw < 0.0) return std::nullopt;
    return cpu + mem + bw;
}

std::optional<int> select_target(const DatacenterState& state, int vm_index,
                                 int source_host, FederationMode mode,
                                 const Thresholds& thresholds) {
    const Vm& vm = state.vms[static_cast<std::size_t>(vm_index)];
    const double required_mips = state.vm_cpu_required_mips(vm_index);
    const double demand_mips = state.vm_cpu_demand_mips(vm_index);

    std::optional<int> best;
    double best_utility = -std::numeric_limits<double>::infinity();
    for (std::size_t h = 0; h < state.hosts.size(); ++h) {
        if (static_cast<int>(h) == source_host) continue;
        const Host& host = state.hosts[h];
        if (!host.powered_on) continue;

        const bool eligible = federation_eligible(vm.provider_id, host.provider_id, mode);
        const ResourceVector demand = demand_vector(vm, required_mips, host);
        const ResourceVector supply = supply_vector(
            host, state.host_cpu_booked_mips(static_cast<int>(h)),
            state.host_ram_used_mb(static_cast<int>(h)),
            state.host_bw_used(static_cast<int>(h)));
        const auto utility = target_utility(demand, supply, eligible);
        if (!utility) continue;

        // a migration must not mint a new hot node
        const double util_after =
            (state.host_cpu_used_mips(static_cast<int>(h)) + demand_mips) /
            host.cpu_capacity_mips();
        if (util_after > thresholds.t_max) continue;

        if (*utility > best_utility) {
            best_utility = *utility;
            best = static_cast<int>(h);
        }
    }
    return best;
}

namespace {

MigrationRecord execute_migration(DatacenterState& state, int vm_index, int source_host,
                                  int target_host, const MigrationPolicyConfig& cfg,
                                  const char* policy, bool source_was_overloaded,
                                  bool source_was_underloaded) {
    const Vm& vm = state.vms[static_cast<std::size_t>(vm_index)];

    MigrationRecord rec;
    rec.timestep = state.step;
    rec.vm_id = vm.id;
    rec.source_host = state.hosts[static_cast<std::size_t>(source_host)].id;
    rec.target_host = state.hosts[static_cast<std::size_t>(target_host)].id;
    rec.source_provider = state.hosts[static_cast<std::size_t>(source_host)].provider_id;
    rec.target_provider = state.hosts[static_cast<std::size_t>(target_host)].provider_id;
    rec.policy = policy;
    rec.mode = std::string(to_string(cfg.mode));

    const PrecopyResult pre =
        precopy_migration(vm.ram_mb, cfg.precopy.link_bandwidth_mb_s, cfg.precopy.dirty_rate,
                          cfg.precopy.stop_threshold_mb, cfg.precopy.max_iters);
    rec.iterations = pre.iterations;
    rec.bytes_copied_mb = pre.bytes_copied_mb;
    rec.downtime_s = pre.downtime_s;

    rec.audit.vm_provider = vm.provider_id;
    rec.audit.demand = demand_vector(vm, state.vm_cpu_required_mips(vm_index),
                                     state.hosts[static_cast<std::size_t>(target_host)]);
    rec.audit.supply_before = supply_vector(
        state.hosts[static_cast<std::size_t>(target_host)],
        state.host_cpu_booked_mips(target_host), state.host_ram_used_mb(target_host),
        state.host_bw_used(target_host));
    rec.audit.source_was_overloaded = source_was_overloaded;
    rec.audit.source_was_underloaded = source_was_underloaded;

    state.apply_migration(vm_index, target_host);
    state.last_migration_step[static_cast<std::size_t>(vm_index)] = state.step;
    rec.audit.target_util_after = state.host_utilization(target_host);
    return rec;
}

/// Moves victims off `host` until its utilization is at or under
/// stop_util, no movable resident remains, or no victim can be placed.
template <class VictimFn>
void relieve_overloaded_host(DatacenterState& state, int host, double stop_util,
                             const MigrationPolicyConfig& cfg, const char* policy,
                             VictimFn&& pick_victim, std::vector<MigrationRecord>& records) {
    std::vector<char> unplaceable(state.vms.size(), 0);
    while (state.host_utilization(host) > stop_util) {
        std::vector<int> candidates;
        for (int v : state.vms_of_host[static_cast<std::size_t>(host)]) {
            if (state.last_migration_step[static_cast<std::size_t>(v)] == state.step) continue;
            if (unplaceable[static_cast<std::size_t>(v)]) continue;
            candidates.push_back(v);
        }
        if (candidates.empty()) break;
        const int victim = pick_victim(state, candidates);
        const auto target = select_target(state, victim, host, cfg.mode, cfg.thresholds);
        if (!target) {
            unplaceable[static_cast<std::size_t>(victim)] = 1;  // try the next-best victim
            continue;
        }
        records.push_back(
            execute_migration(state, victim, host, *target, cfg, policy, true, false));
    }
}

int victim_by_loss_ratio(const DatacenterState& state, std::span<const int> candidates,
                         double alpha_p, double beta_p) {
    std::vector<VmLoad> loads;
    loads.reserve(candidates.size());
    for (int v : candidates) loads.push_back(state.vm_load(v));
    const int victim_id = select_victim(loads, alpha_p, beta_p);
    // ids equal indices in states built by this library, but resolve anyway
    for (int v : candidates)
        if (state.vms[static_cast<std::size_t>(v)].id == victim_id) return v;
    return candidates[0];
}

int victim_by_min_migration_time(const DatacenterState& state,
                                 std::span<const int> candidates) {
    int best = candidates[0];
    auto time_of = [&state](int v) {
        const Vm& vm = state.vms[static_cast<std::size_t>(v)];
        return vm.ram_mb / vm.bandwidth;
    };
    for (int v : candidates.subspan(1)) {
        if (time_of(v) < time_of(best) ||
            (time_of(v) == time_of(best) &&
             state.vms[static_cast<std::size_t>(v)].id < state.vms[static_cast<std::size_t>(best)].id))
            best = v;
    }
    return best;
}

int victim_by_max_correlation(const DatacenterState& state, std::span<const int> candidates,
                              int host, int window) {
    const auto& host_hist = state.host_util_history[static_cast<std::size_t>(host)];
    const std::size_t w = std::min<std::size_t>(host_hist.size(), static_cast<std::size_t>(window));
    const std::span<const double> host_tail(host_hist.data() + host_hist.size() - w, w);

    int best = candidates[0];
    double best_corr = -std::numeric_limits<double>::infinity();
    for (int v : candidates) {
        const auto& vm_hist = state.vm_util_history[static_cast<std::size_t>(v)];
        const std::size_t k = std::min(vm_hist.size(), w);
        const std::span<const double> vm_tail(vm_hist.data() + vm_hist.size() - k, k);
        const std::span<const double> host_aligned(host_tail.data() + (w - k), k);
        const double corr = stats::pearson(vm_tail, host_aligned);
        if (corr > best_corr) {
            best_corr = corr;
            best = v;
        }
    }
    return best;
}

double tail_dispersion_threshold(const DatacenterState& state, int host, double safety,
                                 int window, int min_history, double fallback,
                                 double (*dispersion)(std::span<const double>)) {
    const auto& hist = state.host_util_history[static_cast<std::size_t>(host)];
    if (hist.size() < static_cast<std::size_t>(min_history)) return fallback;
    const std::size_t w = std::min<std::size_t>(hist.size(), static_cast<std::size_t>(window));
    const std::span<const double> tail(hist.data() + hist.size() - w, w);
    return 1.0 - safety * dispersion(tail);
}

/// All-or-nothing evacuation of each underloaded host; the host powers
/// off only when every resident found a target.
void consolidate_underloaded(DatacenterState& state, std::span<const int> underloaded,
                             const MigrationPolicyConfig& cfg, const char* policy,
                             std::vector<MigrationRecord>& records) {
    for (int host : underloaded) {
        if (!state.hosts[static_cast<std::size_t>(host)].powered_on) continue;
        if (state.vms_of_host[static_cast<std::size_t>(host)].empty()) continue;
        if (!(state.host_utilization(host) < cfg.thresholds.t_min)) continue;

        const std::vector<int> residents = state.vms_of_host[static_cast<std::size_t>(host)];
        std::vector<MigrationRecord> planned;
        std::vector<std::pair<int, int>> moved;  // vm, previous last_migration_step
        bool complete = true;
        for (int v : residents) {
            if (state.last_migration_step[static_cast<std::size_t>(v)] == state.step) {
                complete = false;
                break;
            }
            const int previous_step = state.last_migration_step[static_cast<std::size_t>(v)];
            const auto target = select_target(state, v, host, cfg.mode, cfg.thresholds);
            if (!target) {
                complete = false;
                break;
            }
            planned.push_back(
                execute_migration(state, v, host, *target, cfg, policy, false, true));
            moved.emplace_back(v, previous_step);
        }
        if (!complete) {
            // roll the tentative moves back; partial evacuation helps nobody
            for (std::size_t i = moved.size(); i-- > 0;) {
                state.apply_migration(moved[i].first, host);
                state.last_migration_step[static_cast<std::size_t>(moved[i].first)] =
                    moved[i].second;
            }
            continue;
        }
        records.insert(records.end(), planned.begin(), planned.end());
        state.hosts[static_cast<std::size_t>(host)].powered_on = false;
    }
}

}  // namespace

std::vector<MigrationRecord> vmmndsa_step(DatacenterState& state,
                                          const MigrationPolicyConfig& cfg) {
    std::vector<MigrationRecord> records;
    const HotNodes hot = detect_hot_nodes(state, cfg.thresholds);
    for (int host : hot.overloaded) {
        relieve_overloaded_host(state, host, cfg.thresholds.t_max, cfg, "vmmndsa",
                                [&cfg](const DatacenterState& s, std::span<const int> c) {
                                    return victim_by_loss_ratio(s, c, cfg.alpha_p, cfg.beta_p);
                                },
                                records);
    }
    consolidate_underloaded(state, hot.underloaded, cfg, "vmmndsa", records);
    return records;
}

std::vector<MigrationRecord> madmmt_step(DatacenterState& state,
                                         const MigrationPolicyConfig& cfg) {
    std::vector<MigrationRecord> records;
    std::vector<std::pair<int, double>> hot;
    for (std::size_t h = 0; h < state.hosts.size(); ++h) {
        if (!state.hosts[h].powered_on || state.vms_of_host[h].empty()) continue;
        const double threshold =
            tail_dispersion_threshold(state, static_cast<int>(h), cfg.madmmt_safety,
                                      cfg.history_window, cfg.min_history,
                                      cfg.thresholds.t_max, &stats::mad);
        if (state.host_utilization(static_cast<int>(h)) > threshold)
            hot.emplace_back(static_cast<int>(h), threshold);
    }
    for (const auto& [host, threshold] : hot) {
        relieve_overloaded_host(state, host, threshold, cfg, "madmmt",
                                [](const DatacenterState& s, std::span<const int> c) {
                                    return victim_by_min_migration_time(s, c);
                                },
                                records);
    }
    return records;
}

std::vector<MigrationRecord> iqrmc_step(DatacenterState& state,
                                        const MigrationPolicyConfig& cfg) {
    std::vector<MigrationRecord> records;
    std::vector<std::pair<int, double>> hot;
    for (std::size_t h = 0; h < state.hosts.size(); ++h) {
        if (!state.hosts[h].powered_on || state.vms_of_host[h].empty()) continue;
        const double threshold =
            tail_dispersion_threshold(state, static_cast<int>(h), cfg.iqrmc_safety,
                                      cfg.history_window, cfg.min_history,
                                      cfg.thresholds.t_max, &stats::iqr);
        if (state.host_utilization(static_cast<int>(h)) > threshold)
            hot.emplace_back(static_cast<int>(h), threshold);
    }
    for (const auto& [host, threshold] : hot) {
        const int host_index = host;
        relieve_overloaded_host(state, host, threshold, cfg, "iqrmc",
                                [&cfg, host_index](const DatacenterState& s,
                                                   std::span<const int> c) {
                                    return victim_by_max_correlation(s, c, host_index,
                                                                     cfg.history_window);
                                },
                                records);
    }
    return records;
}

}  // namespace fedcloud
