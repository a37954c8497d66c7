#pragma once

#include "homolift/word.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace homolift {

// Minimal interface shared by every finite group the library builds.
// Elements are indices 0..order()-1.
class GroupOps {
public:
    virtual ~GroupOps() = default;
    virtual std::size_t order() const = 0;
    virtual std::size_t identity() const = 0;
    virtual std::size_t multiply(std::size_t a, std::size_t b) const = 0;
    virtual std::size_t inverse(std::size_t a) const = 0;
    virtual std::vector<std::size_t> generators() const = 0;

    std::size_t power(std::size_t a, std::uint64_t e) const;
    std::size_t element_order(std::size_t a) const;
};

// Images of 0..d-1.
using Permutation = std::vector<std::uint32_t>;

// Cycle notation "(1,2,3)(4,5)" or image list "[2,3,1]", points numbered from 1.
// The result has at least `degree` points.
Permutation parse_permutation(const std::string& text, std::size_t degree = 0);
std::string format_permutation(const Permutation& p);

// A permutation group enumerated by BFS on its right Cayley graph. Element 0 is
// the identity; canonical words are shortlex-least over the positive generators.
class FiniteGroup : public GroupOps {
public:
    static constexpr std::size_t kDefaultMaxOrder = 100000;

    FiniteGroup() = default;
    FiniteGroup(std::vector<std::string> names, std::vector<Permutation> gens, std::vector<Word> relators,
                std::size_t max_order = kDefaultMaxOrder);

    std::size_t order() const override { return elements_.size(); }
    std::size_t identity() const override { return 0; }
    std::size_t multiply(std::size_t a, std::size_t b) const override;
    std::size_t inverse(std::size_t a) const override { return inverse_.at(a); }
    std::vector<std::size_t> generators() const override { return generator_elements_; }

    const std::vector<std::string>& names() const noexcept { return names_; }
    std::size_t generator_count() const noexcept { return names_.size(); }
    const std::vector<Word>& relators() const noexcept { return relators_; }
    const Permutation& element(std::size_t i) const { return elements_.at(i); }
    std::size_t index_of(const Permutation& p) const;
    std::size_t generator_element(std::size_t j) const { return generator_elements_.at(j); }
    // l * phi_j
    std::size_t right(std::size_t l, std::size_t j) const { return right_[l * names_.size() + j]; }
    // l * phi_j^{-1}
    std::size_t right_inverse(std::size_t l, std::size_t j) const { return right_inv_[l * names_.size() + j]; }
    const Word& canonical_word(std::size_t i) const { return words_.at(i); }
    // BFS tree: element i != 0 was first reached as parent(i) * phi_{tree_generator(i)}.
    std::size_t parent(std::size_t i) const { return parent_.at(i); }
    std::size_t tree_generator(std::size_t i) const { return tree_gen_.at(i); }
    std::size_t evaluate(const Word& w) const;

private:
    std::vector<std::string> names_;
    std::vector<Permutation> gens_;
    std::vector<Word> relators_;
    std::vector<Permutation> elements_;
    std::map<Permutation, std::size_t> index_;
    std::vector<std::size_t> generator_elements_;
    std::vector<std::size_t> right_, right_inv_;
    std::vector<std::size_t> parent_, tree_gen_;
    std::vector<Word> words_;
    std::vector<std::size_t> inverse_;
    std::vector<std::uint32_t> table_;  // full multiplication table for small groups
};

struct Presentation {
    std::size_t generators = 0;
    std::vector<Word> relators;
};

struct CosetResult {
    bool decided = false;
    std::uint64_t order = 0;          // index of the trivial subgroup when decided
    std::uint64_t cosets_defined = 0;
};

// HLT coset enumeration over the trivial subgroup; undecided once more than
// `budget` cosets have been defined.
CosetResult coset_enumerate(const Presentation& p, std::uint64_t budget = 1'000'000);

// The subgroup generated by `gens` inside a parent group, re-indexed from 0.
class SubgroupView : public GroupOps {
public:
    SubgroupView(const GroupOps& parent, const std::vector<std::size_t>& gens);

    std::size_t order() const override { return members_.size(); }
    std::size_t identity() const override { return 0; }
    std::size_t multiply(std::size_t a, std::size_t b) const override;
    std::size_t inverse(std::size_t a) const override;
    std::vector<std::size_t> generators() const override { return gens_; }

    // parent index of member i
    std::size_t member(std::size_t i) const { return members_.at(i); }
    const std::vector<std::size_t>& members() const noexcept { return members_; }

private:
    const GroupOps& parent_;
    std::vector<std::size_t> members_;
    std::map<std::size_t, std::size_t> local_;
    std::vector<std::size_t> gens_;
};

// Sorted parent indices of the subgroup generated by gens.
std::vector<std::size_t> subgroup_closure(const GroupOps& g, const std::vector<std::size_t>& gens);

}  // namespace homolift
