#pragma once

#include "homolift/action.hpp"
#include "homolift/group.hpp"
#include "homolift/zkmod.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace homolift {

// Presentation data of 1 -> M -> L~ -> L -> 1: the finite group L with its relators,
// the action of each generator on M, and the defects R_i(psi) = m_i.
struct ExtensionSpec {
    FiniteGroup group;
    Action action;
    std::vector<ModuleVector> defects;  // one per relator of `group`

    // Shapes, modulus, generator count; relators act trivially on M.
    void validate() const;
};

using QVec = std::vector<std::int64_t>;

// Factor data of L~/N over the BFS section s: s(l) psi_j = f(l, j) s(l phi_j).
struct EdgeDefectTable {
    std::vector<std::int64_t> moduli;                      // quotient coordinates Z_{d_1} x ... x Z_{d_r}
    std::vector<std::vector<std::vector<std::int64_t>>> element_action;  // A_l in quotient coordinates
    std::vector<QVec> f;                                   // f[l * generators + j]
    std::size_t generators = 0;

    const QVec& at(std::size_t l, std::size_t j) const { return f.at(l * generators + j); }
};

// Solves for the edge defects. Requires the relators to present L; the solution is
// then unique, since relator cycles span the cycle space of the Cayley graph.
EdgeDefectTable solve_edge_defects(const ExtensionSpec& spec, const SubgroupBasis& n);

struct ExtElement {
    QVec v;
    std::size_t l = 0;

    bool operator==(const ExtElement&) const = default;
};

// The group L~/N on pairs (v, l) with (v1,l1)(v2,l2) = (v1 + A_l1 v2 + F(l1,l2), l1 l2).
class ExtGroup : public GroupOps {
public:
    static constexpr std::uint64_t kMaxOrder = 50'000'000;

    ExtGroup(const ExtensionSpec& spec, const SubgroupBasis& n);

    std::size_t order() const override { return static_cast<std::size_t>(module_order_) * base().order(); }
    std::size_t identity() const override { return 0; }
    std::size_t multiply(std::size_t a, std::size_t b) const override { return encode(mul(decode(a), decode(b))); }
    std::size_t inverse(std::size_t a) const override { return encode(inv(decode(a))); }
    std::vector<std::size_t> generators() const override;

    const ExtensionSpec& spec() const noexcept { return spec_; }
    const FiniteGroup& base() const noexcept { return spec_.group; }
    const SubgroupBasis& subgroup() const noexcept { return n_; }
    const QuotientModule& module() const noexcept { return quotient_; }
    const EdgeDefectTable& table() const noexcept { return table_; }
    const std::vector<std::int64_t>& moduli() const noexcept { return table_.moduli; }
    std::uint64_t module_order() const noexcept { return module_order_; }

    ExtElement mul(const ExtElement& a, const ExtElement& b) const;
    ExtElement inv(const ExtElement& a) const;
    ExtElement one() const;
    std::size_t encode(const ExtElement& e) const;
    ExtElement decode(std::size_t i) const;

    // psi_j = (f(id, j), phi_j)
    ExtElement generator_lift(std::size_t j) const;
    ExtElement module_element(const ModuleVector& m) const;
    ExtElement evaluate(const Word& w) const;
    ExtElement evaluate(const Word& w, const std::vector<ExtElement>& images) const;
    bool in_module(std::size_t i) const { return decode(i).l == 0; }

private:
    const QVec& factor(std::size_t l1, std::size_t l2) const;
    QVec reduce(QVec v) const;

    ExtensionSpec spec_;
    SubgroupBasis n_;
    QuotientModule quotient_;
    EdgeDefectTable table_;
    std::uint64_t module_order_ = 1;
    std::vector<QVec> factor_;  // F(l1, l2), |L|^2 entries
};

// One element over each phi_j satisfying every relator, i.e. a complement; searched
// exhaustively in lexicographic order. Throws BudgetExceeded when |M/N|^{#gens} > budget.
std::optional<std::vector<ExtElement>> split_test(const ExtGroup& g, std::uint64_t budget = 1'000'000);

// Same question answered by linear algebra on M: x_j = u_j psi_j with
// sum of twisted u-terms + m_i in N for every relator. Result verified in g.
std::optional<std::vector<ExtElement>> complement_solve(const ExtGroup& g);

}  // namespace homolift

namespace homolift {

// The same extension with generators listed in `order` (a permutation of 0..n-1).
// Relators are rewritten; the BFS section, and hence the factor table, changes.
ExtensionSpec permute_generators(const ExtensionSpec& spec, const std::vector<std::size_t>& order);

struct InvariantCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Group axioms (associativity exhaustive up to order 64, else `random_triples` samples;
// identity and inverse laws exhaustive), |G| = |M/N||L|, projection to L is a homomorphism
// with kernel the module, and relators on the canonical lifts give (m_i mod N, 1).
std::vector<InvariantCheck> verify_ext_group(const ExtGroup& g, std::uint64_t random_triples = 10'000,
                                             std::uint32_t seed = 1);

}  // namespace homolift
