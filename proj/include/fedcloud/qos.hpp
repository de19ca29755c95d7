#pragma once

#include <span>

#include "fedcloud/domain.hpp"

namespace fedcloud {

/// Per-(task, vm) execution time and price.
struct PairMetrics {
    double exec_time = 0.0;   // seconds
    double exec_price = 0.0;  // currency
};

/// All schedule-level QoS quantities of the binding model.
/// fitness is 0 whenever benefit is 0.
struct ScheduleMetrics {
    double makespan = 0.0;
    double total_price = 0.0;
    double ras = 0.0;
    double benefit = 0.0;  // sum of gated per-pair benefits
    double fitness = 0.0;  // benefit * ras, or 0 when benefit is 0
};

struct AcceptDecision {
    bool accepted = true;
    std::string reason;  // "deadline" or "budget" when not accepted
};

/// exec time = length / mips. Requires vm.mips > 0.
double exec_time(const Task& task, const Vm& vm);

/// exec price = exec time * per-second price.
double exec_price(const Task& task, const Vm& vm);

PairMetrics pair_metrics(const Task& task, const Vm& vm);

/// Gated per-pair benefit: alpha*(1 - T/D) + beta*(1 - P/B) when both
/// T <= deadline and P <= budget hold, else 0.
double pair_benefit(const Task& task, const Vm& vm, const QosConstraints& qos);

/// Largest per-VM sum of exec times across the schedule.
double makespan(const Schedule& schedule, std::span<const Task> tasks,
                std::span<const Vm> vms);

/// Sum of exec prices over all assigned pairs.
double total_price(const Schedule& schedule, std::span<const Task> tasks,
                   std::span<const Vm> vms);

/// Dependability score: per VM, (reliability + availability + security)
/// times its assigned-task count, summed over VMs.
double ras(const Schedule& schedule, std::span<const Task> tasks,
           std::span<const Vm> vms);

/// Sum of gated per-pair benefits over the assignment.
double schedule_benefit(const Schedule& schedule, std::span<const Task> tasks,
                        std::span<const Vm> vms, const QosConstraints& qos);

/// benefit * ras, with the explicit zero branch when benefit is 0.
double schedule_fitness(const Schedule& schedule, std::span<const Task> tasks,
                        std::span<const Vm> vms, const QosConstraints& qos);

/// Schedule-level acceptance: makespan <= deadline and total price <= budget.
AcceptDecision check_constraints(const Schedule& schedule, std::span<const Task> tasks,
                                 std::span<const Vm> vms, const QosConstraints& qos);

/// Computes every metric in one pass over the assignment.
ScheduleMetrics evaluate_schedule(const Schedule& schedule, std::span<const Task> tasks,
                                  std::span<const Vm> vms, const QosConstraints& qos);

}  // namespace fedcloud
