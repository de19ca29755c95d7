#include "fedcloud/domain.hpp"

#include <cmath>
#include <sstream>
#include <unordered_set>

namespace fedcloud {

std::string_view to_string(FederationMode mode) {
    return mode == FederationMode::Cooperative ? "cooperative" : "competitive";
}

std::optional<FederationMode> parse_federation_mode(std::string_view text) {
    if (text == "cooperative") return FederationMode::Cooperative;
    if (text == "competitive") return FederationMode::Competitive;
    return std::nullopt;
}

namespace {

template <typename... Args>
std::string msg(Args&&... args) {
    std::ostringstream out;
    (out << ... << args);
    return out.str();
}

}  // namespace

std::vector<std::string> validate_scenario(std::span<const Task> tasks,
                                           std::span<const Vm> vms,
                                           std::span<const Host> hosts) {
    std::vector<std::string> report;

    std::unordered_set<int> task_ids;
    for (const auto& t : tasks) {
        if (!(t.length_mi > 0))
            report.push_back(msg("task ", t.id, ": length > 0 violated (", t.length_mi, ")"));
        if (!task_ids.insert(t.id).second)
            report.push_back(msg("task ", t.id, ": duplicate task id"));
    }

    std::unordered_set<int> vm_ids;
    for (const auto& v : vms) {
        if (!(v.mips > 0)) report.push_back(msg("vm ", v.id, ": mips > 0 violated"));
        if (v.price < 0) report.push_back(msg("vm ", v.id, ": price >= 0 violated"));
        if (v.pes < 1) report.push_back(msg("vm ", v.id, ": pes >= 1 violated"));
        if (v.availability < 0 || v.reliability < 0 || v.security < 0)
            report.push_back(msg("vm ", v.id, ": dependability scores must be >= 0"));
        if (!vm_ids.insert(v.id).second)
            report.push_back(msg("vm ", v.id, ": duplicate vm id"));
    }

    std::unordered_set<int> host_ids;
    for (const auto& h : hosts) {
        if (!(h.mips > 0) || !(h.ram_mb > 0) || !(h.bandwidth > 0) || !(h.size_mb > 0))
            report.push_back(msg("host ", h.id, ": mips, ram, bandwidth, size > 0 violated"));
        if (h.pes < 1) report.push_back(msg("host ", h.id, ": pes >= 1 violated"));
        if (!host_ids.insert(h.id).second)
            report.push_back(msg("host ", h.id, ": duplicate host id"));
    }

    return report;
}

std::vector<std::string> validate_scenario(std::span<const Task> tasks,
                                           std::span<const Vm> vms,
                                           std::span<const Host> hosts,
                                           std::span<const Provider> providers,
                                           const QosConstraints& qos) {
    auto report = validate_scenario(tasks, vms, hosts);

    std::unordered_set<int> provider_ids;
    for (const auto& p : providers) {
        if (!provider_ids.insert(p.id).second)
            report.push_back(msg("provider ", p.id, ": duplicate provider id"));
    }
    for (const auto& h : hosts) {
        if (!provider_ids.contains(h.provider_id))
            report.push_back(msg("host ", h.id, ": unknown provider ", h.provider_id));
    }
    for (const auto& v : vms) {
        if (!provider_ids.contains(v.provider_id))
            report.push_back(msg("vm ", v.id, ": unknown provider ", v.provider_id));
    }

    if (!(qos.deadline_s > 0)) report.push_back("qos.deadline: deadline > 0 violated");
    if (!(qos.budget > 0)) report.push_back("qos.budget: budget > 0 violated");
    if (qos.alpha < 0 || qos.alpha > 1 || qos.beta < 0 || qos.beta > 1)
        report.push_back("qos.alpha/beta: weights must lie in [0, 1]");
    if (std::abs(qos.alpha + qos.beta - 1.0) > 1e-9)
        report.push_back("qos.alpha/beta: alpha + beta = 1 violated");

    return report;
}

}  // namespace fedcloud
