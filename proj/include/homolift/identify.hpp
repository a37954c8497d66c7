#pragma once

#include "homolift/extension.hpp"
#include "homolift/group.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace homolift {

// Isomorphism invariants of a finite group, plus a name when the recognition table applies.
struct Fingerprint {
    std::uint64_t order = 0;
    std::vector<std::uint64_t> abelian_invariants;  // of G/[G,G], invariant-factor form
    std::map<std::uint64_t, std::uint64_t> order_histogram;
    std::uint64_t center_order = 0;
    std::uint64_t derived_order = 0;
    std::optional<bool> split;  // over the module image, when known
    std::optional<std::string> name;

    bool same_invariants(const Fingerprint& o) const;
    std::string to_string() const;
};

// "Z2 x Z4", "Z3^2", "1"
std::string format_abelian(const std::vector<std::uint64_t>& invariants);

// Invariant factors of a finite abelian group from the number of elements of order dividing p^e.
std::vector<std::uint64_t> abelian_invariants(const GroupOps& g);

std::size_t derived_subgroup_order(const GroupOps& g);
std::size_t center_order(const GroupOps& g);

Fingerprint identify(const GroupOps& g, std::uint64_t budget = 1'000'000);

// Adds the split flag; a split group outside the table is named "K : L" from its parts.
Fingerprint identify(const ExtGroup& g, std::optional<bool> split, std::uint64_t budget = 1'000'000);

}  // namespace homolift
