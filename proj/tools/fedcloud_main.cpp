#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fedcloud/binding.hpp"
#include "fedcloud/scenario_io.hpp"
#include "fedcloud/sim.hpp"
#include "fedcloud/stats.hpp"
#include "fedcloud/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRejected = 2;
constexpr int kExitUsage = 64;
constexpr int kExitNoInput = 66;

namespace fs = std::filesystem;
using namespace fedcloud;

struct MissingInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Scenario resolve_or_missing(const std::string& path_or_name) {
    if (!fs::exists(path_or_name)) {
        bool bundled = false;
        for (const auto& name : bundled_scenario_names()) bundled |= name == path_or_name;
        if (!bundled) throw MissingInput("scenario not found: " + path_or_name);
    }
    return resolve_scenario(path_or_name);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
    if (flag) return *flag;
    if (const char* env = std::getenv("FEDCLOUD_SEED"))
        return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
    return fallback;
}

std::string fixed(double value, int digits = 4) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
    return buffer;
}

int run_allocate(const std::string& scenario_arg, const std::string& policy_arg,
                 std::optional<std::uint64_t> seed_flag, const std::string& out_dir,
                 std::optional<double> deadline, std::optional<double> budget) {
    Scenario scenario = resolve_or_missing(scenario_arg);
    if (deadline) scenario.qos.deadline_s = *deadline;
    if (budget) scenario.qos.budget = *budget;

    const auto policy = parse_binding_policy(policy_arg);
    if (!policy) throw CLI::ValidationError("--policy", "unknown binding policy: " + policy_arg);

    de::DeConfig de_cfg = scenario.de;
    de_cfg.seed = resolve_seed(seed_flag, scenario.de.seed);

    const BindResult result =
        schedule_or_reject(scenario.tasks, scenario.vms, scenario.qos, *policy, de_cfg);

    std::cout << "scenario:    " << scenario.name << "\n"
              << "policy:      " << to_string(*policy) << "\n"
              << "seed:        " << de_cfg.seed << "\n"
              << "tasks:       " << scenario.tasks.size() << "\n"
              << "makespan:    " << fixed(result.metrics.makespan) << "\n"
              << "total_price: " << fixed(result.metrics.total_price) << "\n"
              << "ras:         " << fixed(result.metrics.ras) << "\n"
              << "benefit:     " << fixed(result.metrics.benefit) << "\n"
              << "fitness:     " << fixed(result.metrics.fitness) << "\n"
              << "accepted:    " << (result.schedule.accepted ? "yes" : "no");
    if (!result.schedule.accepted)
        std::cout << " (reason: " << result.schedule.reject_reason << ")";
    std::cout << "\n";

    if (!out_dir.empty()) {
        const fs::path out(out_dir);
        write_schedule_csv(out / "schedule.csv", scenario.tasks, scenario.vms, result.schedule);
        write_binding_metrics_csv(out / "metrics.csv", result.metrics,
                                  result.schedule.accepted, result.schedule.reject_reason);
        write_manifest(out / "manifest.json",
                       make_manifest("allocate --policy " + std::string(to_string(*policy)),
                                     de_cfg.seed, scenario));
    }
    return result.schedule.accepted ? kExitOk : kExitRejected;
}

int run_simulate(const std::string& scenario_arg, const std::string& policy_arg,
                 const std::string& mode_arg, std::optional<int> steps,
                 std::optional<std::uint64_t> seed_flag, const std::string& out_dir,
                 bool series) {
    Scenario scenario = resolve_or_missing(scenario_arg);
    SimConfig cfg = scenario.sim;

    if (!policy_arg.empty()) {
        const auto policy = parse_migration_policy(policy_arg);
        if (!policy)
            throw CLI::ValidationError("--policy", "unknown migration policy: " + policy_arg);
        cfg.policy = *policy;
    }
    if (!mode_arg.empty()) {
        const auto mode = parse_federation_mode(mode_arg);
        if (!mode) throw CLI::ValidationError("--mode", "unknown federation mode: " + mode_arg);
        cfg.mode = *mode;
    }
    if (steps) cfg.timesteps = *steps;
    cfg.seed = resolve_seed(seed_flag, scenario.sim.seed);

    const SimResult result = run_simulation(scenario, cfg);

    std::cout << "scenario:           " << scenario.name << "\n"
              << "policy:             " << to_string(cfg.policy) << "\n"
              << "mode:               " << to_string(cfg.mode) << "\n"
              << "seed:               " << cfg.seed << "\n"
              << "steps:              " << cfg.timesteps << "\n"
              << "migration_count:    " << result.metrics.migration_count << "\n"
              << "energy_kwh:         " << fixed(result.metrics.energy_kwh) << "\n"
              << "sla_violation_rate: " << fixed(result.metrics.sla_violation_rate, 6) << "\n"
              << "monetary_cost:      " << fixed(result.metrics.monetary_cost, 2) << "\n";

    if (!out_dir.empty()) {
        const fs::path out(out_dir);
        write_sim_metrics_csv(out / "metrics.csv", cfg.seed, cfg.policy, cfg.mode,
                              result.metrics);
        write_migration_log_csv(out / "migration_log.csv", result.log);
        if (series) write_sim_series_csv(out / "series.csv", result.metrics);
        write_manifest(out / "manifest.json",
                       make_manifest("simulate --policy " + std::string(to_string(cfg.policy)) +
                                         " --mode " + std::string(to_string(cfg.mode)),
                                     cfg.seed, scenario));
    }
    return kExitOk;
}

double median_of(std::vector<double> values) { return stats::median(values); }

int run_compare_binding(const Scenario& scenario, int seeds, const std::string& out_dir,
                        bool check_orderings) {
    const std::vector<BindingPolicyId> policies = {
        BindingPolicyId::Debbp, BindingPolicyId::MaxMin, BindingPolicyId::Sequential};

    struct Row {
        std::string policy;
        std::uint64_t seed;
        ScheduleMetrics metrics;
        bool accepted;
    };
    std::vector<Row> rows;
    for (const auto policy : policies) {
        for (int s = 1; s <= seeds; ++s) {
            de::DeConfig de_cfg = scenario.de;
            de_cfg.seed = static_cast<std::uint64_t>(s);
            const BindResult r =
                schedule_or_reject(scenario.tasks, scenario.vms, scenario.qos, policy, de_cfg);
            rows.push_back({std::string(to_string(policy)), de_cfg.seed, r.metrics,
                            r.schedule.accepted});
        }
    }

    std::map<std::string, ScheduleMetrics> medians;
    for (const auto policy : policies) {
        const std::string name(to_string(policy));
        std::vector<double> mk, pr, ra, fi;
        for (const auto& row : rows) {
            if (row.policy != name) continue;
            mk.push_back(row.metrics.makespan);
            pr.push_back(row.metrics.total_price);
            ra.push_back(row.metrics.ras);
            fi.push_back(row.metrics.fitness);
        }
        medians[name] = {median_of(mk), median_of(pr), median_of(ra), 0.0, median_of(fi)};
    }

    std::cout << "binding suite on " << scenario.name << " (" << seeds << " seeds)\n";
    std::cout << "policy      median_makespan  median_price  median_ras  median_fitness\n";
    for (const auto& [name, m] : medians) {
        std::printf("%-11s %15.4f %13.4f %11.1f %15.4f\n", name.c_str(), m.makespan,
                    m.total_price, m.ras, m.fitness);
    }

    if (!out_dir.empty()) {
        const fs::path out(out_dir);
        std::ofstream rows_csv;
        fs::create_directories(out);
        rows_csv.open(out / "compare_rows.csv", std::ios::binary);
        rows_csv << "policy,seed,makespan,total_price,ras,benefit,fitness,accepted\n";
        for (const auto& row : rows) {
            rows_csv << row.policy << ',' << row.seed << ',' << format_double(row.metrics.makespan)
                     << ',' << format_double(row.metrics.total_price) << ','
                     << format_double(row.metrics.ras) << ','
                     << format_double(row.metrics.benefit) << ','
                     << format_double(row.metrics.fitness) << ','
                     << (row.accepted ? "true" : "false") << '\n';
        }
        std::ofstream summary(out / "compare_summary.csv", std::ios::binary);
        summary << "policy,median_makespan,median_total_price,median_ras,median_fitness\n";
        for (const auto& [name, m] : medians) {
            summary << name << ',' << format_double(m.makespan) << ','
                    << format_double(m.total_price) << ',' << format_double(m.ras) << ','
                    << format_double(m.fitness) << '\n';
        }
    }

    if (check_orderings) {
        const auto& debbp = medians.at("debbp");
        const auto& maxmin = medians.at("maxmin");
        const auto& sequential = medians.at("sequential");
        bool ok = true;
        const auto expect = [&ok](bool condition, const std::string& what) {
            if (!condition) {
                std::cout << "ORDERING VIOLATED: " << what << "\n";
                ok = false;
            }
        };
        expect(debbp.fitness > maxmin.fitness, "fitness(debbp) > fitness(maxmin)");
        expect(maxmin.fitness > sequential.fitness, "fitness(maxmin) > fitness(sequential)");
        expect(debbp.total_price < maxmin.total_price, "price(debbp) < price(maxmin)");
        expect(maxmin.total_price < sequential.total_price,
               "price(maxmin) < price(sequential)");
        expect(debbp.ras > maxmin.ras, "ras(debbp) > ras(maxmin)");
        expect(debbp.ras > sequential.ras, "ras(debbp) > ras(sequential)");
        if (!ok) return kExitError;
        std::cout << "orderings hold\n";
    }
    return kExitOk;
}

int run_compare_migration(const Scenario& scenario, int seeds, const std::string& out_dir,
                          bool check_orderings) {
    const std::vector<MigrationPolicyId> policies = {
        MigrationPolicyId::Vmmndsa, MigrationPolicyId::MadMmt, MigrationPolicyId::IqrMc};
    const std::vector<FederationMode> modes = {FederationMode::Cooperative,
                                               FederationMode::Competitive};

    struct Row {
        std::string policy;
        std::string mode;
        std::uint64_t seed;
        SimMetrics metrics;
    };
    std::vector<Row> rows;
    for (const auto policy : policies) {
        for (const auto mode : modes) {
            for (int s = 1; s <= seeds; ++s) {
                SimConfig cfg = scenario.sim;
                cfg.policy = policy;
                cfg.mode = mode;
                cfg.seed = static_cast<std::uint64_t>(s);
                rows.push_back({std::string(to_string(policy)), std::string(to_string(mode)),
                                cfg.seed, run_simulation(scenario, cfg).metrics});
            }
        }
    }

    struct Summary {
        double migrations;
        double energy;
        double sla;
    };
    std::map<std::pair<std::string, std::string>, Summary> medians;
    for (const auto policy : policies) {
        for (const auto mode : modes) {
            const std::string p(to_string(policy));
            const std::string m(to_string(mode));
            std::vector<double> mig, en, sla;
            for (const auto& row : rows) {
                if (row.policy != p || row.mode != m) continue;
                mig.push_back(row.metrics.migration_count);
                en.push_back(row.metrics.energy_kwh);
                sla.push_back(row.metrics.sla_violation_rate);
            }
            medians[{p, m}] = {median_of(mig), median_of(en), median_of(sla)};
        }
    }

    std::cout << "migration suite on " << scenario.name << " (" << seeds << " seeds)\n";
    std::cout << "policy    mode         median_migrations  median_energy_kwh  median_sla\n";
    for (const auto& [key, m] : medians) {
        std::printf("%-9s %-12s %17.1f %18.4f %11.6f\n", key.first.c_str(),
                    key.second.c_str(), m.migrations, m.energy, m.sla);
    }

    if (!out_dir.empty()) {
        const fs::path out(out_dir);
        fs::create_directories(out);
        std::ofstream rows_csv(out / "compare_rows.csv", std::ios::binary);
        rows_csv << "policy,mode,seed,migration_count,energy_kwh,sla_violation_rate,"
                    "monetary_cost\n";
        for (const auto& row : rows) {
            rows_csv << row.policy << ',' << row.mode << ',' << row.seed << ','
                     << row.metrics.migration_count << ','
                     << format_double(row.metrics.energy_kwh) << ','
                     << format_double(row.metrics.sla_violation_rate) << ','
                     << format_double(row.metrics.monetary_cost) << '\n';
        }
        std::ofstream summary(out / "compare_summary.csv", std::ios::binary);
        summary << "policy,mode,median_migration_count,median_energy_kwh,"
                   "median_sla_violation_rate\n";
        for (const auto& [key, m] : medians) {
            summary << key.first << ',' << key.second << ',' << format_double(m.migrations)
                    << ',' << format_double(m.energy) << ',' << format_double(m.sla) << '\n';
        }
    }

    if (check_orderings) {
        bool ok = true;
        const auto expect = [&ok](bool condition, const std::string& what) {
            if (!condition) {
                std::cout << "ORDERING VIOLATED: " << what << "\n";
                ok = false;
            }
        };
        for (const auto mode : modes) {
            const std::string m(to_string(mode));
            expect(medians.at({"vmmndsa", m}).migrations < medians.at({"madmmt", m}).migrations,
                   "migrations(vmmndsa) < migrations(madmmt) [" + m + "]");
            expect(medians.at({"vmmndsa", m}).migrations < medians.at({"iqrmc", m}).migrations,
                   "migrations(vmmndsa) < migrations(iqrmc) [" + m + "]");
        }
        expect(medians.at({"vmmndsa", "competitive"}).migrations <=
                   medians.at({"vmmndsa", "cooperative"}).migrations,
               "migrations(vmmndsa, competitive) <= migrations(vmmndsa, cooperative)");
        if (!ok) return kExitError;
        std::cout << "orderings hold\n";
    }
    return kExitOk;
}

int run_validate(const std::string& scenario_arg) {
    if (!fs::exists(scenario_arg)) {
        bool bundled = false;
        for (const auto& name : bundled_scenario_names()) bundled |= name == scenario_arg;
        if (!bundled) {
            std::cerr << "scenario not found: " << scenario_arg << "\n";
            return kExitNoInput;
        }
    }
    try {
        const Scenario scenario = resolve_scenario(scenario_arg);
        std::cout << "scenario OK: " << scenario.name << " (" << scenario.tasks.size()
                  << " tasks, " << scenario.vms.size() << " vms, " << scenario.hosts.size()
                  << " hosts, " << scenario.providers.size() << " providers)\n";
        return kExitOk;
    } catch (const ScenarioError& e) {
        std::cerr << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"federated datacenter task binding and VM migration simulator"};
    app.set_version_flag("--version", std::string(fedcloud::kLibraryVersion));
    app.require_subcommand(1);

    std::string scenario_arg;
    std::string policy_arg;
    std::string mode_arg;
    std::string out_dir;
    std::string suite_arg = "binding";
    std::optional<std::uint64_t> seed_flag;
    std::optional<int> steps_flag;
    std::optional<double> deadline_flag;
    std::optional<double> budget_flag;
    int seeds = 20;
    bool series = false;
    bool assert_orderings = false;

    auto* allocate = app.add_subcommand("allocate", "bind tasks to VMs with a policy");
    allocate->add_option("--scenario", scenario_arg, "scenario file or bundled name")
        ->required();
    allocate->add_option("--policy", policy_arg, "debbp | maxmin | sequential")->required();
    allocate->add_option("--seed", seed_flag, "RNG seed (default: FEDCLOUD_SEED or scenario)");
    allocate->add_option("--out", out_dir, "directory for result files");
    allocate->add_option("--deadline", deadline_flag, "override qos deadline in seconds");
    allocate->add_option("--budget", budget_flag, "override qos budget");

    auto* simulate = app.add_subcommand("simulate", "run the migration simulation");
    simulate->add_option("--scenario", scenario_arg, "scenario file or bundled name")
        ->required();
    simulate->add_option("--policy", policy_arg, "vmmndsa | madmmt | iqrmc");
    simulate->add_option("--mode", mode_arg, "cooperative | competitive");
    simulate->add_option("--steps", steps_flag, "number of timesteps");
    simulate->add_option("--seed", seed_flag, "RNG seed (default: FEDCLOUD_SEED or scenario)");
    simulate->add_option("--out", out_dir, "directory for result files");
    simulate->add_flag("--series", series, "also write the per-step series CSV");

    auto* compare = app.add_subcommand("compare", "run a policy comparison suite");
    compare->add_option("--scenario", scenario_arg, "scenario file or bundled name")
        ->required();
    compare->add_option("--suite", suite_arg, "binding | migration");
    compare->add_option("--seeds", seeds, "number of seeds (1..k)");
    compare->add_option("--out", out_dir, "directory for result files");
    compare->add_flag("--assert", assert_orderings,
                      "exit nonzero unless the expected orderings hold");

    auto* validate = app.add_subcommand("validate", "check a scenario file");
    validate->add_option("--scenario", scenario_arg, "scenario file or bundled name")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (allocate->parsed())
            return run_allocate(scenario_arg, policy_arg, seed_flag, out_dir, deadline_flag,
                                budget_flag);
        if (simulate->parsed())
            return run_simulate(scenario_arg, policy_arg, mode_arg, steps_flag, seed_flag,
                                out_dir, series);
        if (compare->parsed()) {
            const Scenario scenario = resolve_or_missing(scenario_arg);
            if (suite_arg == "binding")
                return run_compare_binding(scenario, seeds, out_dir, assert_orderings);
            if (suite_arg == "migration")
                return run_compare_migration(scenario, seeds, out_dir, assert_orderings);
            std::cerr << "unknown suite: " << suite_arg << "\n";
            return kExitUsage;
        }
        if (validate->parsed()) return run_validate(scenario_arg);
    } catch (const MissingInput& e) {
        std::cerr << e.what() << "\n";
        return kExitNoInput;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
