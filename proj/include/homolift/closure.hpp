#pragma once

#include "homolift/extension.hpp"
#include "homolift/identify.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace homolift {

struct ClosureOptions {
    std::uint64_t split_budget = 1'000'000;
    std::uint64_t identify_budget = 1'000'000;
    bool identify = true;
};

// Galois closure data for an abelian cover U = S~/N1 of S composed with S -> S/L.
struct ClosureReport {
    SubgroupBasis n1;
    SubgroupBasis n2;                  // core of N1
    bool n1_invariant = false;
    std::vector<Integer> hat_a;        // M/N1
    std::vector<Integer> u;            // N1/N2
    std::vector<Integer> k;            // M/N2
    SubgroupBasis defect_closure;      // smallest invariant subgroup containing the defects
    bool guarantee = false;            // defect_closure inside N1, so G must split
    std::shared_ptr<const ExtGroup> group;  // G = L~/N2
    std::optional<std::vector<ExtElement>> complement;
    bool linear_split = false;         // verdict of the independent linear route
    std::optional<Fingerprint> fingerprint;

    bool split() const { return complement.has_value(); }
};

// Throws Error(internal) if the exhaustive and linear complement searches disagree or
// the guarantee holds without a complement.
ClosureReport galois_closure_pipeline(const ExtensionSpec& spec, const SubgroupBasis& n1,
                                      const ClosureOptions& opts = {});

}  // namespace homolift
