#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace homolift {

enum class ErrorKind {
    dimension_mismatch,
    modulus_mismatch,
    rank_mismatch,
    not_invariant,
    invalid_problem,
    invalid_params,
    budget_exceeded,
    relator_violated,
    group_too_large,
    inconsistent_defects,
    unknown_scenario,
    parse_error,
    validation_error,
    non_integer_genus,
    nonterminating,
    internal,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::uint64_t detail = 0)
        : std::runtime_error(message), kind_(kind), detail_(detail) {}

    ErrorKind kind() const noexcept { return kind_; }
    // Kind-specific payload: candidate count for budget errors, line for parse errors,
    // relator index for relator violations.
    std::uint64_t detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::uint64_t detail_;
};

}  // namespace homolift
