#include "fedcloud/binding.hpp"

#include <limits>
#include <stdexcept>

namespace fedcloud {

std::string_view to_string(BindingPolicyId policy) {
    switch (policy) {
        case BindingPolicyId::Debbp: return "debbp";
        case BindingPolicyId::MaxMin: return "maxmin";
        case BindingPolicyId::Sequential: return "sequential";
    }
    return "unknown";
}

std::optional<BindingPolicyId> parse_binding_policy(std::string_view text) {
    if (text == "debbp") return BindingPolicyId::Debbp;
    if (text == "maxmin") return BindingPolicyId::MaxMin;
    if (text == "sequential") return BindingPolicyId::Sequential;
    return std::nullopt;
}

ScheduleFitnessEvaluator::ScheduleFitnessEvaluator(std::span<const Task> tasks,
                                                   std::span<const Vm> vms,
                                                   const QosConstraints& qos,
                                                   double lower, double upper)
    : n_tasks_(static_cast<int>(tasks.size())),
      n_vms_(static_cast<int>(vms.size())),
      lower_(lower),
      upper_(upper),
      benefit_(tasks.size() * vms.size()),
      dependability_(vms.size()),
      counts_(vms.size(), 0) {
    for (std::size_t v = 0; v < vms.size(); ++v) dependability_[v] = vms[v].dependability();
    for (std::size_t t = 0; t < tasks.size(); ++t)
        for (std::size_t v = 0; v < vms.size(); ++v)
            benefit_[t * vms.size() + v] = pair_benefit(tasks[t], vms[v], qos);
}

double ScheduleFitnessEvaluator::operator()(const de::Individual& individual) const {
    double benefit = 0.0;
    for (int t = 0; t < n_tasks_; ++t) {
        const int v = de::decode_gene(individual.genes[static_cast<std::size_t>(t)],
                                      lower_, upper_, n_vms_);
        benefit += benefit_[static_cast<std::size_t>(t) * n_vms_ + v];
        ++counts_[static_cast<std::size_t>(v)];
    }
    double ras = 0.0;
    for (int v = 0; v < n_vms_; ++v) {
        ras += dependability_[static_cast<std::size_t>(v)] * counts_[static_cast<std::size_t>(v)];
        counts_[static_cast<std::size_t>(v)] = 0;
    }
    return benefit == 0.0 ? 0.0 : benefit * ras;
}

double ScheduleFitnessEvaluator::fitness_of_assignment(
    std::span<const int> vm_index_per_task) const {
    double benefit = 0.0;
    for (int t = 0; t < n_tasks_; ++t) {
        const int v = vm_index_per_task[static_cast<std::size_t>(t)];
        benefit += benefit_[static_cast<std::size_t>(t) * n_vms_ + v];
        ++counts_[static_cast<std::size_t>(v)];
    }
    double ras = 0.0;
    for (int v = 0; v < n_vms_; ++v) {
        ras += dependability_[static_cast<std::size_t>(v)] * counts_[static_cast<std::size_t>(v)];
        counts_[static_cast<std::size_t>(v)] = 0;
    }
    return benefit == 0.0 ? 0.0 : benefit * ras;
}

namespace {

// An empty task list has nothing to place and is trivially feasible.
Schedule empty_schedule() {
    Schedule schedule;
    schedule.accepted = true;
    return schedule;
}

Schedule schedule_from_indices(std::span<const Task> tasks, std::span<const Vm> vms,
                               std::span<const int> vm_index_per_task) {
    Schedule schedule;
    for (std::size_t t = 0; t < tasks.size(); ++t)
        schedule.assignment[tasks[t].id] = vms[static_cast<std::size_t>(vm_index_per_task[t])].id;
    return schedule;
}

}  // namespace

Schedule debbp_bind(std::span<const Task> tasks, std::span<const Vm> vms,
                    const QosConstraints& qos, de::DeConfig de_cfg) {
    if (tasks.empty()) return empty_schedule();
    if (vms.empty()) throw std::invalid_argument("debbp_bind: no VMs");

    de_cfg.dims = static_cast<int>(tasks.size());
    const ScheduleFitnessEvaluator fitness(tasks, vms, qos, de_cfg.lower, de_cfg.upper);
    const de::DeResult result = de::run(de_cfg, fitness);
    const std::vector<int> assignment =
        de::decode(result.best, de_cfg.lower, de_cfg.upper, static_cast<int>(vms.size()));
    return schedule_from_indices(tasks, vms, assignment);
}

Schedule maxmin_bind(std::span<const Task> tasks, std::span<const Vm> vms) {
    if (tasks.empty()) return empty_schedule();
    if (vms.empty()) throw std::invalid_argument("maxmin_bind: no VMs");

    std::vector<double> ready(vms.size(), 0.0);
    std::vector<bool> assigned(tasks.size(), false);
    std::vector<int> vm_of_task(tasks.size(), 0);

    for (std::size_t round = 0; round < tasks.size(); ++round) {
        std::size_t pick_task = 0;
        std::size_t pick_vm = 0;
        double pick_completion = -1.0;
        for (std::size_t t = 0; t < tasks.size(); ++t) {
            if (assigned[t]) continue;
            // minimum completion time of task t over all VMs
            std::size_t best_vm = 0;
            double best_completion = std::numeric_limits<double>::infinity();
            for (std::size_t v = 0; v < vms.size(); ++v) {
                const double completion = ready[v] + exec_time(tasks[t], vms[v]);
                if (completion < best_completion) {
                    best_completion = completion;
                    best_vm = v;
                }
            }
            // largest of the minima wins the round; earlier task id on ties
            if (best_completion > pick_completion) {
                pick_completion = best_completion;
                pick_task = t;
                pick_vm = best_vm;
            }
        }
        assigned[pick_task] = true;
        vm_of_task[pick_task] = static_cast<int>(pick_vm);
        ready[pick_vm] += exec_time(tasks[pick_task], vms[pick_vm]);
    }
    return schedule_from_indices(tasks, vms, vm_of_task);
}

Schedule sequential_bind(std::span<const Task> tasks, std::span<const Vm> vms) {
    if (tasks.empty()) return empty_schedule();
    if (vms.empty()) throw std::invalid_argument("sequential_bind: no VMs");

    std::vector<int> vm_of_task(tasks.size());
    for (std::size_t t = 0; t < tasks.size(); ++t)
        vm_of_task[t] = static_cast<int>(t % vms.size());
    return schedule_from_indices(tasks, vms, vm_of_task);
}

BindResult schedule_or_reject(std::span<const Task> tasks, std::span<const Vm> vms,
                              const QosConstraints& qos, BindingPolicyId policy,
                              const de::DeConfig& de_cfg) {
    BindResult result;
    switch (policy) {
        case BindingPolicyId::Debbp: result.schedule = debbp_bind(tasks, vms, qos, de_cfg); break;
        case BindingPolicyId::MaxMin: result.schedule = maxmin_bind(tasks, vms); break;
        case BindingPolicyId::Sequential: result.schedule = sequential_bind(tasks, vms); break;
        default: throw std::invalid_argument("schedule_or_reject: unknown policy");
    }
    result.metrics = evaluate_schedule(result.schedule, tasks, vms, qos);
    const AcceptDecision decision = check_constraints(result.schedule, tasks, vms, qos);
    result.schedule.accepted = decision.accepted;
    result.schedule.reject_reason = decision.reason;
    return result;
}

}  // namespace fedcloud
