#pragma once

#include "homolift/action.hpp"
#include "homolift/extension.hpp"
#include "homolift/group.hpp"
#include "homolift/zkmod.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace homolift {

// Quotient orbifold data (gamma; m_1, ..., m_r).
struct OrbifoldSignature {
    int genus = 0;
    std::vector<int> cone_orders;

    bool hyperbolic() const;
    std::string to_string() const;
};

// g = 1 + |L|(gamma - 1) + (|L|/2) sum (1 - 1/m_i).
// Throws NonIntegerGenus when a cone order does not divide |L| or the result is fractional.
std::int64_t riemann_hurwitz_genus(const OrbifoldSignature& sig, std::int64_t group_order);

// A surface-group epimorphism F -> L: images of alpha_s, beta_s (handles) and delta_i (cone points).
struct EpimorphismSpec {
    OrbifoldSignature signature;
    std::string target;  // name of L
    std::vector<std::size_t> handle_images;  // 2 * genus entries, alternating alpha, beta
    std::vector<std::size_t> cone_images;

    // Product relation maps to 1, cone images have exactly the cone order, images generate L.
    void validate(const FiniteGroup& l) const;
    std::int64_t cover_genus(const FiniteGroup& l) const;
};

// Homology coordinates: a_i -> i - 1, b_i -> g + i - 1 (1-based indices).
ModuleVector homology_unit(Modulus k, std::size_t g, char letter, std::size_t index);
// Multiplicative notation over a1..ag, b1..bg, e.g. "a1*a2^-1" or "b1*b3^2".
ModuleVector homology_element(Modulus k, std::size_t g, const std::string& text);
SubgroupBasis homology_subgroup(Modulus k, std::size_t g, const std::vector<std::string>& gens);
std::vector<std::string> homology_names(std::size_t g);

FiniteGroup cyclic_group(int m, const std::string& name = "phi");
FiniteGroup symmetric3_group();   // r = (1,2,3), h = (1,2); r^3, h^2, (r*h)^2
FiniteGroup alternating5_group(); // r = (1,2,3), h = (1,4)(2,5); r^3, h^2, (r*h)^5

struct SurfaceAction {
    std::size_t genus = 0;
    ExtensionSpec spec;
};

// Free Z_m action: `blocks` m-cycles on a's and b's, a_g and b_g fixed, g = m * blocks + 1;
// relator phi^m with defect b_g.
SurfaceAction free_cyclic_action(int m, int blocks, std::int64_t k);
// One (g-1)-cycle on a_1..a_{g-1} and on b_1..b_{g-1}; L = Z_{g-1}, relator defect b_g.
SurfaceAction literal_cycle_action(int g, std::int64_t k);
// Z_2 with 2n fixed points: gamma swapped pairs, inversion on the rest; g = 2 gamma + n - 1.
SurfaceAction involution_action(int gamma, int n, std::int64_t k);
// Z_3 with fixed points: gamma 3-cycle blocks, `pairs` companion blocks (a_{2j-1} -> a_{2j} -> -a_{2j-1}-a_{2j}),
// then a -> b, b -> -a-b blocks. g = n - 1 when gamma = 0, else 3 gamma + n - 1.
SurfaceAction order3_action(int gamma, int n, int pairs, std::int64_t k);
// S_3 with fixed-point-free r, genus-0 quotient with n+1 cone points of order 2: g = (3n-7)/2.
// Defects: r^3 = b_g, h^2 = 0, (r*h)^2 = 0.
SurfaceAction s3_action(int n, std::int64_t k);

EpimorphismSpec free_epimorphism(const FiniteGroup& zm, int quotient_genus);
EpimorphismSpec involution_epimorphism(const FiniteGroup& z2, int gamma, int n);
// delta_{2j-1} -> phi, delta_{2j} -> phi^-1 (j <= l), the remaining cone points -> phi.
EpimorphismSpec order3_epimorphism(const FiniteGroup& z3, int gamma, int n, int l);
// delta_1..delta_{2 l1} -> h, next 2 l2 -> r*h, the rest -> r^2*h.
EpimorphismSpec s3_epimorphism(const FiniteGroup& s3, int n, int l1, int l2);

// ---------------------------------------------------------------- scenario catalog

enum class ScenarioTask {
    closure,        // galois_closure_pipeline on N1
    cyclic_lift,    // norm equation for one generator
    enumerate,      // invariant subgroups of prescribed index
    dichotomy,      // split_test over several k
    genus_grid,     // Riemann-Hurwitz closed forms and spot values
    epimorphisms,   // omega data, block patterns and lifts for order-3 actions
    subgroups_a5,   // A4 and Z2^2 inside A5 and the genera of their quotients
    core_compare,   // core of a subgroup against a stated list
};

// One PASS/FAIL line. `line` is rendered with {key} replaced by observed values; the
// line passes when every check's observed value equals the expected string.
struct Expectation {
    std::string line;
    std::vector<std::pair<std::string, std::string>> checks;
};

struct Scenario {
    std::string name;
    std::string summary;
    ScenarioTask task = ScenarioTask::closure;
    std::optional<SurfaceAction> surface;
    std::map<std::string, SubgroupBasis> subgroups;   // "N1", "N2_stated", ...
    std::map<std::string, ModuleVector> vectors;      // probes, lift defects
    std::vector<std::int64_t> moduli;                 // dichotomy sweep
    std::map<std::string, std::int64_t> params;
    std::vector<Expectation> expectations;
    std::vector<std::string> info_keys;  // reported without a verdict
};

std::vector<std::string> scenario_names();
Scenario make_scenario(const std::string& name);

}  // namespace homolift
