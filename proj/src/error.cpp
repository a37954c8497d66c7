#include "homolift/error.hpp"

namespace homolift {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::dimension_mismatch: return "DimensionMismatch";
        case ErrorKind::modulus_mismatch: return "ModulusMismatch";
        case ErrorKind::rank_mismatch: return "RankMismatch";
        case ErrorKind::not_invariant: return "NotInvariant";
        case ErrorKind::invalid_problem: return "InvalidProblem";
        case ErrorKind::invalid_params: return "InvalidParams";
        case ErrorKind::budget_exceeded: return "BudgetExceeded";
        case ErrorKind::relator_violated: return "RelatorViolated";
        case ErrorKind::group_too_large: return "GroupTooLarge";
        case ErrorKind::inconsistent_defects: return "InconsistentDefects";
        case ErrorKind::unknown_scenario: return "UnknownScenario";
        case ErrorKind::parse_error: return "ParseError";
        case ErrorKind::validation_error: return "ValidationError";
        case ErrorKind::non_integer_genus: return "NonIntegerGenus";
        case ErrorKind::nonterminating: return "Nonterminating";
        case ErrorKind::internal: return "InternalError";
    }
    return "Error";
}

}  // namespace homolift
