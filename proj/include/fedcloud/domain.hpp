#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fedcloud {

/// A unit of work (cloudlet), sized in millions of instructions.
struct Task {
    int id = 0;
    double length_mi = 0.0;
};

struct Vm {
    int id = 0;
    int pes = 1;
    double mips = 0.0;          // MI per second, per PE
    double price = 0.0;         // currency per second of execution
    double availability = 0.0;  // raw dependability scores, not normalized
    double reliability = 0.0;
    double security = 0.0;
    double ram_mb = 0.0;
    double bandwidth = 0.0;     // bits/s
    double size_mb = 0.0;
    int provider_id = 0;

    double dependability() const { return reliability + availability + security; }
};

struct Host {
    int id = 0;
    int provider_id = 0;
    double mips = 0.0;          // per PE
    int pes = 1;
    double ram_mb = 0.0;
    double bandwidth = 0.0;     // bits/s
    double size_mb = 0.0;
    double power_idle_w = 70.0;
    double power_max_w = 250.0;
    bool powered_on = true;

    double cpu_capacity_mips() const { return mips * pes; }
};

struct Provider {
    int id = 0;
    std::string name;
};

/// Deadline/budget constraints plus the time/price weighting of the
/// benefit function. alpha + beta must equal 1.
struct QosConstraints {
    double deadline_s = 0.0;
    double budget = 0.0;
    double alpha = 0.5;
    double beta = 0.5;
};

enum class FederationMode { Cooperative, Competitive };

std::string_view to_string(FederationMode mode);
std::optional<FederationMode> parse_federation_mode(std::string_view text);

/// Total task -> VM assignment plus the accept/reject outcome of the
/// scheduler workflow. Every task id appears exactly once.
struct Schedule {
    std::map<int, int> assignment;  // task id -> vm id
    bool accepted = false;
    std::string reject_reason;      // "deadline" or "budget" when rejected

    std::size_t size() const { return assignment.size(); }
};

/// Report-style scenario validation: returns one message per violated
/// invariant; an empty report means the scenario is valid.
std::vector<std::string> validate_scenario(std::span<const Task> tasks,
                                           std::span<const Vm> vms,
                                           std::span<const Host> hosts);

/// Extended check used by scenario loading: also validates provider
/// references and the QoS constraint block.
std::vector<std::string> validate_scenario(std::span<const Task> tasks,
                                           std::span<const Vm> vms,
                                           std::span<const Host> hosts,
                                           std::span<const Provider> providers,
                                           const QosConstraints& qos);

}  // namespace fedcloud
