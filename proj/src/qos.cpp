#include "fedcloud/qos.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace fedcloud {

namespace {

struct IndexedScenario {
    std::unordered_map<int, std::size_t> task_by_id;
    std::unordered_map<int, std::size_t> vm_by_id;

    IndexedScenario(std::span<const Task> tasks, std::span<const Vm> vms) {
        task_by_id.reserve(tasks.size());
        vm_by_id.reserve(vms.size());
        for (std::size_t i = 0; i < tasks.size(); ++i) task_by_id.emplace(tasks[i].id, i);
        for (std::size_t i = 0; i < vms.size(); ++i) vm_by_id.emplace(vms[i].id, i);
    }

    std::size_t task_index(int id) const {
        auto it = task_by_id.find(id);
        if (it == task_by_id.end())
            throw std::invalid_argument("schedule references unknown task id " + std::to_string(id));
        return it->second;
    }

    std::size_t vm_index(int id) const {
        auto it = vm_by_id.find(id);
        if (it == vm_by_id.end())
            throw std::invalid_argument("schedule references unknown vm id " + std::to_string(id));
        return it->second;
    }
};

}  // namespace

double exec_time(const Task& task, const Vm& vm) {
    return task.length_mi / vm.mips;
}

double exec_price(const Task& task, const Vm& vm) {
    return exec_time(task, vm) * vm.price;
}

PairMetrics pair_metrics(const Task& task, const Vm& vm) {
    const double t = exec_time(task, vm);
    return {t, t * vm.price};
}

double pair_benefit(const Task& task, const Vm& vm, const QosConstraints& qos) {
    const auto [t, p] = pair_metrics(task, vm);
    if (t > qos.deadline_s || p > qos.budget) return 0.0;
    return qos.alpha * (1.0 - t / qos.deadline_s) + qos.beta * (1.0 - p / qos.budget);
}

double makespan(const Schedule& schedule, std::span<const Task> tasks,
                std::span<const Vm> vms) {
    const IndexedScenario index(tasks, vms);
    std::vector<double> per_vm(vms.size(), 0.0);
    for (const auto& [task_id, vm_id] : schedule.assignment) {
        per_vm[index.vm_index(vm_id)] +=
            exec_time(tasks[index.task_index(task_id)], vms[index.vm_index(vm_id)]);
    }
    return per_vm.empty() ? 0.0 : *std::max_element(per_vm.begin(), per_vm.end());
}

double total_price(const Schedule& schedule, std::span<const Task> tasks,
                   std::span<const Vm> vms) {
    const IndexedScenario index(tasks, vms);
    double total = 0.0;
    for (const auto& [task_id, vm_id] : schedule.assignment)
        total += exec_price(tasks[index.task_index(task_id)], vms[index.vm_index(vm_id)]);
    return total;
}

double ras(const Schedule& schedule, std::span<const Task> tasks,
           std::span<const Vm> vms) {
    const IndexedScenario index(tasks, vms);
    std::vector<int> counts(vms.size(), 0);
    for (const auto& [task_id, vm_id] : schedule.assignment) {
        (void)index.task_index(task_id);
        ++counts[index.vm_index(vm_id)];
    }
    double total = 0.0;
    for (std::size_t i = 0; i < vms.size(); ++i) total += vms[i].dependability() * counts[i];
    return total;
}

double schedule_benefit(const Schedule& schedule, std::span<const Task> tasks,
                        std::span<const Vm> vms, const QosConstraints& qos) {
    const IndexedScenario index(tasks, vms);
    double total = 0.0;
    for (const auto& [task_id, vm_id] : schedule.assignment)
        total += pair_benefit(tasks[index.task_index(task_id)], vms[index.vm_index(vm_id)], qos);
    return total;
}

double schedule_fitness(const Schedule& schedule, std::span<const Task> tasks,
                        std::span<const Vm> vms, const QosConstraints& qos) {
    const double benefit = schedule_benefit(schedule, tasks, vms, qos);
    if (benefit == 0.0) return 0.0;
    return benefit * ras(schedule, tasks, vms);
}

AcceptDecision check_constraints(const Schedule& schedule, std::span<const Task> tasks,
                                 std::span<const Vm> vms, const QosConstraints& qos) {
    if (makespan(schedule, tasks, vms) > qos.deadline_s) return {false, "deadline"};
    if (total_price(schedule, tasks, vms) > qos.budget) return {false, "budget"};
    return {true, ""};
}

ScheduleMetrics evaluate_schedule(const Schedule& schedule, std::span<const Task> tasks,
                                  std::span<const Vm> vms, const QosConstraints& qos) {
    const IndexedScenario index(tasks, vms);
    std::vector<double> per_vm_time(vms.size(), 0.0);
    std::vector<int> counts(vms.size(), 0);

    ScheduleMetrics m;
    for (const auto& [task_id, vm_id] : schedule.assignment) {
        const Task& task = tasks[index.task_index(task_id)];
        const Vm& vm = vms[index.vm_index(vm_id)];
        const auto [t, p] = pair_metrics(task, vm);
        per_vm_time[index.vm_index(vm_id)] += t;
        m.total_price += p;
        m.benefit += pair_benefit(task, vm, qos);
        ++counts[index.vm_index(vm_id)];
    }
    for (std::size_t i = 0; i < vms.size(); ++i) m.ras += vms[i].dependability() * counts[i];
    m.makespan = per_vm_time.empty()
                     ? 0.0
                     : *std::max_element(per_vm_time.begin(), per_vm_time.end());
    m.fitness = m.benefit == 0.0 ? 0.0 : m.benefit * m.ras;
    return m;
}

}  // namespace fedcloud
