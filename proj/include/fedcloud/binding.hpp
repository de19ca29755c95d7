#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "fedcloud/de.hpp"
#include "fedcloud/domain.hpp"
#include "fedcloud/qos.hpp"

namespace fedcloud {

enum class BindingPolicyId { Debbp, MaxMin, Sequential };

std::string_view to_string(BindingPolicyId policy);
std::optional<BindingPolicyId> parse_binding_policy(std::string_view text);

/// Flat fitness evaluator used by the DE search: per-pair benefits and
/// per-VM dependability are precomputed once, so one evaluation is
/// O(tasks + vms) with no allocation. Produces exactly the same value as
/// schedule_fitness on the decoded schedule.
class ScheduleFitnessEvaluator {
public:
    ScheduleFitnessEvaluator(std::span<const Task> tasks, std::span<const Vm> vms,
                             const QosConstraints& qos, double lower, double upper);

    double operator()(const de::Individual& individual) const;
    double fitness_of_assignment(std::span<const int> vm_index_per_task) const;

    int n_tasks() const { return n_tasks_; }
    int n_vms() const { return n_vms_; }

private:
    int n_tasks_;
    int n_vms_;
    double lower_;
    double upper_;
    std::vector<double> benefit_;         // n_tasks x n_vms, row-major
    std::vector<double> dependability_;   // per vm
    mutable std::vector<int> counts_;     // scratch, zeroed after each use
};

/// DE-based binding: maximizes schedule_fitness over decoded gene
/// vectors. dims is taken from the task count; the rest of de_cfg is
/// honored as given. Deterministic for a fixed de_cfg.seed.
Schedule debbp_bind(std::span<const Task> tasks, std::span<const Vm> vms,
                    const QosConstraints& qos, de::DeConfig de_cfg);

/// Classic load-aware Max-Min: repeatedly assigns the task whose minimum
/// completion time (VM ready time + exec time) is largest to its
/// minimizing VM. Ties break to the lowest task id, then lowest vm id.
Schedule maxmin_bind(std::span<const Task> tasks, std::span<const Vm> vms);

/// Round-robin by index: task i -> vm (i mod N).
Schedule sequential_bind(std::span<const Task> tasks, std::span<const Vm> vms);

struct BindResult {
    Schedule schedule;
    ScheduleMetrics metrics;
};

/// Runs the chosen policy, then applies the schedule-level accept/reject
/// decision (deadline and budget) to the result.
BindResult schedule_or_reject(std::span<const Task> tasks, std::span<const Vm> vms,
                              const QosConstraints& qos, BindingPolicyId policy,
                              const de::DeConfig& de_cfg = {});

}  // namespace fedcloud
