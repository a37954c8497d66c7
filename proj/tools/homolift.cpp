#include "homolift/error.hpp"
#include "homolift/problem.hpp"
#include "homolift/report.hpp"
#include "homolift/surfaces.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

int exit_code(const homolift::Error& e) {
    switch (e.kind()) {
        case homolift::ErrorKind::budget_exceeded:
        case homolift::ErrorKind::group_too_large:
        case homolift::ErrorKind::nonterminating:
            return kExitBudget;
        default:
            return kExitInput;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw homolift::Error(homolift::ErrorKind::parse_error, "cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"homolift: lifts, splittings and Galois closures for k-homology covers"};
    app.require_subcommand(1);
    app.fallthrough();

    homolift::RunOptions opts;
    bool machine = false;
    std::string file;
    app.add_option("--workers", opts.workers, "worker threads for enumeration sweeps")->check(CLI::Range(1u, 256u));
    app.add_option("--budget", opts.budget, "candidate budget for complement search and enumeration");
    app.add_flag("--machine", machine, "print only the key=value block");

    auto* scenario = app.add_subcommand("scenario", "run a named scenario from the catalog");
    std::string scenario_name;
    bool list = false;
    scenario->add_option("name", scenario_name, "scenario name");
    scenario->add_flag("--list", list, "list scenario names");

    const std::vector<std::pair<std::string, std::string>> tasks{
        {"solve-lift", "order-preserving lift of a generator: [GEN]"},
        {"core", "core of a named subgroup: SUBGROUP"},
        {"closure", "Galois closure pipeline: SUBGROUP"},
        {"enumerate", "invariant subgroups with given quotient invariants: INV..."},
        {"identify", "fingerprint of L~/N: [SUBGROUP]"},
        {"check", "invariant suite on L~/N: [SUBGROUP]"},
    };
    std::vector<std::string> task_args;
    std::vector<CLI::App*> task_cmds;
    for (const auto& [name, help] : tasks) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("--file", file, "problem file")->required();
        cmd->add_option("args", task_args, "task arguments (default: the file's task line)");
        task_cmds.push_back(cmd);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    try {
        homolift::Report rep;
        if (scenario->parsed()) {
            if (list) {
                for (const auto& n : homolift::scenario_names()) std::cout << n << '\n';
                return 0;
            }
            if (scenario_name.empty()) {
                std::cerr << "error: scenario name required (or --list)\n";
                return kExitInput;
            }
            rep = homolift::run_scenario(homolift::make_scenario(scenario_name), opts);
        } else {
            std::string task;
            for (auto* cmd : task_cmds)
                if (cmd->parsed()) task = cmd->get_name();
            homolift::ProblemFile pf = homolift::parse_problem(read_file(file));
            rep = homolift::run_problem(pf, task, task_args, opts);
        }
        std::cout << rep.render(machine);
        return rep.passed() ? 0 : kExitFail;
    } catch (const homolift::Error& e) {
        std::cerr << "error: " << homolift::error_kind_name(e.kind()) << ": " << e.what() << '\n';
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
