#pragma once

#include "homolift/word.hpp"
#include "homolift/zkmod.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace homolift {

// Action of a finitely generated group on M = Z_k^n (or Z^n): one invertible
// matrix per generator, acting on column vectors.
class Action {
public:
    Action() = default;
    Action(Modulus modulus, std::size_t rank, std::vector<std::string> names, std::vector<MatrixZk> matrices);

    const Modulus& modulus() const noexcept { return modulus_; }
    std::size_t rank() const noexcept { return rank_; }
    std::size_t generator_count() const noexcept { return matrices_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const MatrixZk& matrix(std::size_t j) const { return matrices_.at(j); }
    const MatrixZk& inverse(std::size_t j) const { return inverses_.at(j); }
    std::optional<std::size_t> generator_index(const std::string& name) const;

    MatrixZk evaluate(const Word& w) const;
    ModuleVector apply(const Word& w, const ModuleVector& v) const;

private:
    Modulus modulus_;
    std::size_t rank_ = 0;
    std::vector<std::string> names_;
    std::vector<MatrixZk> matrices_;
    std::vector<MatrixZk> inverses_;
};

bool is_invariant(const Action& act, const SubgroupBasis& s);
SubgroupBasis minimal_invariant_subgroup(const Action& act, const std::vector<ModuleVector>& gens);
SubgroupBasis core(const Action& act, const SubgroupBasis& n1);

struct QuotientAction {
    QuotientModule module;
    // matrices[j][row][col], entries of row i reduced mod module.moduli()[i]
    std::vector<std::vector<std::vector<Integer>>> matrices;
};

QuotientAction induced_quotient_action(const Action& act, const SubgroupBasis& n);

struct SubgroupConstraints {
    std::optional<std::vector<Integer>> quotient_invariants;
    std::vector<ModuleVector> contains;
    std::vector<ModuleVector> excludes;
    std::uint64_t budget = 1'000'000;
    unsigned workers = 1;
};

// Invariant subgroups meeting the constraints, sorted by canonical basis.
// Prime index: hyperplane kernels. Otherwise: joins of cyclic invariant closures,
// allowed while k^n, the lattice size and the number of joins stay within the budget.
std::vector<SubgroupBasis> enumerate_invariant_subgroups(const Action& act, const SubgroupConstraints& c);

}  // namespace homolift
