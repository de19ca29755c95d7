#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fedcloud/domain.hpp"

namespace fedcloud {

/// Per-VM utilization fractions of its current host's resources.
/// mem_util here is the migration-loss sense of memory use, unrelated to
/// the per-VM task counts of the dependability score.
struct VmLoad {
    int vm_id = 0;
    double cpu_util = 0.0;
    double bw_util = 0.0;
    double mem_util = 0.0;
};

struct ResourceVector {
    double cpu = 0.0;
    double mem = 0.0;
    double bw = 0.0;
};

struct Thresholds {
    double t_max = 0.8;
    double t_min = 0.0;
};

/// Migration loss ratio cm = (alpha'*cpu + beta'*bw) / mem. A VM with
/// zero memory use costs nothing to move and is reported as
/// zero_memory instead of dividing by zero; it sorts above every finite
/// ratio.
struct LossRatio {
    double value = 0.0;
    bool zero_memory = false;
};

LossRatio migration_loss_ratio(const VmLoad& load, double alpha_p, double beta_p);
bool loss_ratio_less(const LossRatio& a, const LossRatio& b);

struct PrecopyConfig {
    double link_bandwidth_mb_s = 1000.0;
    double dirty_rate = 0.3;        // fraction re-dirtied per round
    double stop_threshold_mb = 64.0;
    int max_iters = 10;
};

/// iterations counts the pre-copy rounds plus the final stop-and-copy
/// round when a residual remains, so it is always >= 1.
struct PrecopyResult {
    int iterations = 1;
    double bytes_copied_mb = 0.0;
    double downtime_s = 0.0;
};

/// Geometric dirty-page model: round k transfers the remaining dirty set,
/// of which dirty_rate re-dirties; stops when the remainder falls under
/// stop_threshold_mb or max_iters rounds ran. Downtime covers the final
/// residual copy. Throws std::invalid_argument when dirty_rate >= 1
/// (non-convergent) or bandwidth <= 0.
PrecopyResult precopy_migration(double vm_ram_mb, double link_bandwidth_mb_s,
                                double dirty_rate, double stop_threshold_mb,
                                int max_iters);

struct MigrationAudit {
    int vm_provider = 0;
    ResourceVector demand;          // on the target, at migration time
    ResourceVector supply_before;   // target free fractions before placement
    double target_util_after = 0.0; // target CPU utilization after placement
    bool source_was_overloaded = false;
    bool source_was_underloaded = false;
};

/// One executed relocation. The audit block exists for verification and
/// is not part of the serialized log schema.
struct MigrationRecord {
    int timestep = 0;
    int vm_id = 0;
    int source_host = 0;
    int target_host = 0;
    int source_provider = 0;
    int target_provider = 0;
    int iterations = 1;
    double bytes_copied_mb = 0.0;
    double downtime_s = 0.0;
    std::string policy;
    std::string mode;
    MigrationAudit audit;
};

/// Mutable placement state the migration policies operate on. Host and
/// VM vectors are indexed positionally; ids equal indices in scenarios
/// produced by this library.
struct DatacenterState {
    std::vector<Host> hosts;
    std::vector<Vm> vms;
    std::vector<int> host_of_vm;                 // vm index -> host index
    std::vector<std::vector<int>> vms_of_host;   // host index -> vm indices
    std::vector<double> vm_cpu_demand;           // fraction of the vm's own mips
    std::vector<int> last_migration_step;        // -1 when never migrated
    std::vector<std::vector<double>> host_util_history;  // appended once per step
    std::vector<std::vector<double>> vm_util_history;
    int step = 0;

    static DatacenterState create(std::vector<Host> hosts, std::vector<Vm> vms,
                                  std::vector<int> placement);

    /// Instantaneous CPU draw of a VM, in MIPS.
    double vm_cpu_demand_mips(int vm_index) const;
    /// Provisioned CPU requirement of a VM (nominal mips x pes), in MIPS.
    double vm_cpu_required_mips(int vm_index) const;
    double host_cpu_used_mips(int host_index) const;
    /// Provisioned CPU booked on a host: sum of resident nominal requirements.
    double host_cpu_booked_mips(int host_index) const;
    double host_ram_used_mb(int host_index) const;
    double host_bw_used(int host_index) const;
    /// Current CPU utilization, clamped to [0, 1]; 0 for powered-off hosts.
    double host_utilization(int host_index) const;
    VmLoad vm_load(int vm_index) const;
    void apply_migration(int vm_index, int target_host_index);
};

struct HotNodes {
    std::vector<int> overloaded;   // utilization > t_max
    std::vector<int> underloaded;  // utilization < t_min, powered on, >= 1 VM
};

HotNodes detect_hot_nodes(const DatacenterState& state, const Thresholds& thresholds);

/// Victim = the resident VM with the largest loss ratio; ties go to the
/// lowest vm id. Throws std::invalid_argument on an empty host.
int select_victim(std::span<const VmLoad> residents, double alpha_p, double beta_p);

/// Component-wise required/total fractions of the candidate host.
ResourceVector demand_vector(const Vm& vm, double cpu_demand_mips, const Host& host);

/// Component-wise free fractions (1 - used/total) of a powered-on host.
ResourceVector supply_vector(const Host& host, double cpu_used_mips, double ram_used_mb,
                             double bw_used);

/// Cooperative: any provider pair. Competitive: only the VM's own provider.
bool federation_eligible(int vm_provider, int host_provider, FederationMode mode);

/// Sum of slack components (supply - demand), or nullopt when the pair is
/// federation-ineligible or any component lacks capacity.
std::optional<double> target_utility(const ResourceVector& demand,
                                     const ResourceVector& supply, bool eligible);

struct MigrationPolicyConfig {
    Thresholds thresholds;
    FederationMode mode = FederationMode::Cooperative;
    double alpha_p = 0.5;
    double beta_p = 0.5;
    PrecopyConfig precopy;
    double madmmt_safety = 2.5;
    double iqrmc_safety = 1.5;
    int history_window = 12;
    int min_history = 10;  // below this, detection falls back to t_max
};

/// Best target for the VM among hosts != source that are powered on,
/// federation-eligible, have component-wise capacity for the VM's
/// provisioned requirements, and would stay at or under t_max measured
/// CPU utilization after placement. Ties break to the lowest host
/// index. nullopt when no candidate qualifies.
std::optional<int> select_target(const DatacenterState& state, int vm_index,
                                 int source_host, FederationMode mode,
                                 const Thresholds& thresholds);

/// The necessity-based policy: relieve each overloaded host by moving
/// highest-loss-ratio VMs until it drops to t_max, then try to fully
/// evacuate (and power off) each underloaded host. Deterministic given
/// the state; emits one record per executed migration.
std::vector<MigrationRecord> vmmndsa_step(DatacenterState& state,
                                          const MigrationPolicyConfig& cfg);

/// Baseline: overload when util > 1 - safety * MAD(host utilization
/// history); victim = minimum migration time (ram/bandwidth).
std::vector<MigrationRecord> madmmt_step(DatacenterState& state,
                                         const MigrationPolicyConfig& cfg);

/// Baseline: overload when util > 1 - safety * IQR(history); victim =
/// maximum correlation of the VM's demand series with the host's
/// aggregate utilization series.
std::vector<MigrationRecord> iqrmc_step(DatacenterState& state,
                                        const MigrationPolicyConfig& cfg);

}  // namespace fedcloud
