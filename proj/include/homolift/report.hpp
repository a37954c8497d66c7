#pragma once

#include "homolift/problem.hpp"
#include "homolift/surfaces.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace homolift {

struct RunOptions {
    unsigned workers = 1;
    std::uint64_t budget = 1'000'000;  // complement search candidates and enumeration sweeps
};

struct CheckLine {
    std::string text;  // expectation line with observed values substituted
    bool pass = false;
};

struct Report {
    std::vector<std::string> prose;
    std::vector<CheckLine> checks;
    std::vector<std::pair<std::string, std::string>> machine;  // trailing key=value block

    bool passed() const;
    // Prose, then one "<line> PASS|FAIL" per check. With `machine_only`, just key=value lines.
    std::string render(bool machine_only) const;
};

// Observed values for every key a scenario's expectations and info keys refer to.
std::map<std::string, std::string> observe_scenario(const Scenario& s, const RunOptions& opts = {});

// Expectations come from the catalog; this only substitutes and compares.
Report run_scenario(const Scenario& s, const RunOptions& opts = {});

// Tasks: solve-lift [GEN], core SUBGROUP, closure SUBGROUP, enumerate INV..., identify [SUBGROUP],
// check [SUBGROUP]. `args` replaces the file's task arguments when non-empty.
Report run_problem(const ProblemFile& pf, const std::string& task, const std::vector<std::string>& args,
                   const RunOptions& opts = {});

// "a1^-1*b6", "0" for the zero vector; coefficients c in Z_k print as powers, k-1 as ^-1.
std::string format_homology(const ModuleVector& v, std::size_t g);

}  // namespace homolift
