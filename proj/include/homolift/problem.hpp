#pragma once

#include "homolift/extension.hpp"

#include <optional>
#include <string>
#include <vector>

namespace homolift {

// Line-oriented problem description; '#' starts a comment.
//
//   modulus K
//   rank N
//   gen NAME PERM [order N]          permutation in cycle or list notation
//   action NAME                      followed by N rows of N integers
//   relator WORD [defect V1 ... VN]  defect defaults to 0
//   subgroup NAME                    followed by generator rows until the next directive
//   task KIND ARGS...
struct ProblemFile {
    Modulus modulus;
    std::size_t rank = 0;
    ExtensionSpec spec;
    std::vector<std::pair<std::string, SubgroupBasis>> subgroups;
    std::string task;
    std::vector<std::string> task_args;

    const SubgroupBasis* find_subgroup(const std::string& name) const;
};

// Throws Error(parse_error) with the 1-based line number in detail(), or
// Error(validation_error) when the data is well-formed but inconsistent.
ProblemFile parse_problem(const std::string& text);

}  // namespace homolift
