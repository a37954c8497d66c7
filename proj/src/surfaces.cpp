#include "homolift/surfaces.hpp"

#include "homolift/error.hpp"

#include <numeric>
#include <sstream>

namespace homolift {

// ---------------------------------------------------------------- Riemann-Hurwitz

bool OrbifoldSignature::hyperbolic() const {
    // 2 gamma - 2 + sum (1 - 1/m) > 0, scaled by lcm of the cone orders
    std::int64_t l = 1;
    for (int m : cone_orders) l = std::lcm(l, static_cast<std::int64_t>(m));
    std::int64_t t = (2 * static_cast<std::int64_t>(genus) - 2) * l;
    for (int m : cone_orders) t += l - l / m;
    return t > 0;
}

std::string OrbifoldSignature::to_string() const {
    std::ostringstream os;
    os << '(' << genus << ';';
    for (std::size_t i = 0; i < cone_orders.size(); ++i) os << (i ? "," : "") << cone_orders[i];
    os << ')';
    return os.str();
}

std::int64_t riemann_hurwitz_genus(const OrbifoldSignature& sig, std::int64_t group_order) {
    if (group_order < 1) throw Error(ErrorKind::invalid_params, "riemann_hurwitz: group order must be positive");
    if (sig.genus < 0) throw Error(ErrorKind::invalid_params, "riemann_hurwitz: negative quotient genus");
    for (int m : sig.cone_orders)
        if (m < 2) throw Error(ErrorKind::invalid_params, "riemann_hurwitz: cone orders must be at least 2");
    if (!sig.hyperbolic()) throw Error(ErrorKind::invalid_params, "riemann_hurwitz: signature is not hyperbolic");
    // 2g - 2 = |L| (2 gamma - 2) + sum |L| (m - 1) / m
    std::int64_t twice = group_order * (2 * static_cast<std::int64_t>(sig.genus) - 2);
    for (int m : sig.cone_orders) {
        if (group_order % m != 0)
            throw Error(ErrorKind::non_integer_genus,
                        "riemann_hurwitz: cone order " + std::to_string(m) + " does not divide " +
                            std::to_string(group_order));
        twice += group_order / m * (m - 1);
    }
    if (twice % 2 != 0) throw Error(ErrorKind::non_integer_genus, "riemann_hurwitz: genus is not an integer");
    return twice / 2 + 1;
}

void EpimorphismSpec::validate(const FiniteGroup& l) const {
    if (handle_images.size() != 2 * static_cast<std::size_t>(signature.genus))
        throw Error(ErrorKind::validation_error, "epimorphism: need two handle images per quotient genus");
    if (cone_images.size() != signature.cone_orders.size())
        throw Error(ErrorKind::validation_error, "epimorphism: need one image per cone point");
    std::size_t prod = l.identity();
    for (std::size_t s = 0; s + 1 < handle_images.size(); s += 2) {
        std::size_t a = handle_images[s], b = handle_images[s + 1];
        prod = l.multiply(prod, l.multiply(l.multiply(a, b), l.multiply(l.inverse(a), l.inverse(b))));
    }
    for (auto c : cone_images) prod = l.multiply(prod, c);
    if (prod != l.identity())
        throw Error(ErrorKind::validation_error, "epimorphism: product relation does not map to the identity");
    for (std::size_t i = 0; i < cone_images.size(); ++i)
        if (l.element_order(cone_images[i]) != static_cast<std::size_t>(signature.cone_orders[i]))
            throw Error(ErrorKind::validation_error,
                        "epimorphism: cone point " + std::to_string(i + 1) + " image has the wrong order", i);
    std::vector<std::size_t> images = handle_images;
    images.insert(images.end(), cone_images.begin(), cone_images.end());
    if (subgroup_closure(l, images).size() != l.order())
        throw Error(ErrorKind::validation_error, "epimorphism: images do not generate " + target);
}

std::int64_t EpimorphismSpec::cover_genus(const FiniteGroup& l) const {
    validate(l);
    return riemann_hurwitz_genus(signature, static_cast<std::int64_t>(l.order()));
}

// ---------------------------------------------------------------- homology bases

std::vector<std::string> homology_names(std::size_t g) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= g; ++i) names.push_back("a" + std::to_string(i));
    for (std::size_t i = 1; i <= g; ++i) names.push_back("b" + std::to_string(i));
    return names;
}

ModuleVector homology_unit(Modulus k, std::size_t g, char letter, std::size_t index) {
    if (index < 1 || index > g || (letter != 'a' && letter != 'b'))
        throw Error(ErrorKind::invalid_params, std::string("homology: no basis element ") + letter +
                                                   std::to_string(index) + " in genus " + std::to_string(g));
    return ModuleVector::unit(k, 2 * g, (letter == 'a' ? 0 : g) + index - 1);
}

ModuleVector homology_element(Modulus k, std::size_t g, const std::string& text) {
    Word w = parse_word(text, homology_names(g));
    std::vector<Integer> c(2 * g, 0);
    for (const auto& l : w) c[l.generator] += l.inverse ? -1 : 1;
    return ModuleVector(k, c);
}

SubgroupBasis homology_subgroup(Modulus k, std::size_t g, const std::vector<std::string>& gens) {
    std::vector<ModuleVector> v;
    for (const auto& s : gens) v.push_back(homology_element(k, g, s));
    return SubgroupBasis::span(k, 2 * g, v);
}

// ---------------------------------------------------------------- groups

FiniteGroup cyclic_group(int m, const std::string& name) {
    if (m < 1) throw Error(ErrorKind::invalid_params, "cyclic_group: order must be positive");
    Permutation p(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>((i + 1) % m);
    return FiniteGroup({name}, {p}, {power_word({Letter{0, false}}, m)});
}

FiniteGroup symmetric3_group() {
    std::vector<std::string> names{"r", "h"};
    return FiniteGroup(names, {parse_permutation("(1,2,3)"), parse_permutation("(1,2)", 3)},
                       {parse_word("r^3", names), parse_word("h^2", names), parse_word("(r*h)^2", names)});
}

FiniteGroup alternating5_group() {
    std::vector<std::string> names{"r", "h"};
    return FiniteGroup(names, {parse_permutation("(1,2,3)", 5), parse_permutation("(1,4)(2,5)")},
                       {parse_word("r^3", names), parse_word("h^2", names), parse_word("(r*h)^5", names)});
}

// ---------------------------------------------------------------- actions

namespace {

// Column c of the matrix is the image of basis vector c.
class ImageBuilder {
public:
    ImageBuilder(std::int64_t k, std::size_t g) : mod_(k), g_(g), m_(mod_, 2 * g, 2 * g) {}

    std::size_t a(std::size_t i) const { return i - 1; }
    std::size_t b(std::size_t i) const { return g_ + i - 1; }
    void map(std::size_t from, std::initializer_list<std::pair<std::size_t, std::int64_t>> terms) {
        for (std::size_t r = 0; r < 2 * g_; ++r) m_.set(r, from, Integer(0));
        for (const auto& [to, c] : terms) m_.set(to, from, m_.at(to, from) + c);
        done_.push_back(from);
    }
    MatrixZk finish() const {
        std::vector<char> seen(2 * g_, 0);
        for (auto c : done_) seen[c] = 1;
        MatrixZk out = m_;
        for (std::size_t c = 0; c < 2 * g_; ++c)
            if (!seen[c]) out.set(c, c, Integer(1));  // unlisted basis elements are fixed
        return out;
    }

private:
    Modulus mod_;
    std::size_t g_;
    MatrixZk m_;
    std::vector<std::size_t> done_;
};

void require(bool ok, const std::string& why) {
    if (!ok) throw Error(ErrorKind::invalid_params, why);
}

void check_order(const MatrixZk& a, std::uint64_t m, const std::string& what) {
    if (!a.power(m).is_identity()) throw Error(ErrorKind::internal, what + ": matrix order check failed");
}

SurfaceAction assemble(std::size_t g, std::int64_t k, FiniteGroup group, std::vector<MatrixZk> mats,
                       std::vector<ModuleVector> defects) {
    Modulus mod(k);
    Action act(mod, 2 * g, group.names(), std::move(mats));
    SurfaceAction s{g, ExtensionSpec{std::move(group), std::move(act), std::move(defects)}};
    s.spec.validate();
    return s;
}

}  // namespace

SurfaceAction free_cyclic_action(int m, int blocks, std::int64_t k) {
    require(m >= 2 && blocks >= 1, "free_cyclic_action: need m >= 2 and at least one block");
    require(k == 0 || k >= 2, "free_cyclic_action: modulus must be 0 or at least 2");
    const std::size_t g = static_cast<std::size_t>(m * blocks + 1);
    ImageBuilder ib(k, g);
    for (int t = 0; t < blocks; ++t)
        for (int i = 1; i <= m; ++i) {
            std::size_t from = static_cast<std::size_t>(t * m + i);
            std::size_t to = static_cast<std::size_t>(t * m + (i % m) + 1);
            ib.map(ib.a(from), {{ib.a(to), 1}});
            ib.map(ib.b(from), {{ib.b(to), 1}});
        }
    MatrixZk a = ib.finish();
    check_order(a, static_cast<std::uint64_t>(m), "free_cyclic_action");
    Modulus mod(k);
    return assemble(g, k, cyclic_group(m), {a}, {homology_unit(mod, g, 'b', g)});
}

SurfaceAction literal_cycle_action(int g, std::int64_t k) {
    require(g >= 3, "literal_cycle_action: need g >= 3");
    const std::size_t gg = static_cast<std::size_t>(g);
    ImageBuilder ib(k, gg);
    for (std::size_t j = 1; j + 1 <= gg - 1; ++j) {
        ib.map(ib.a(j), {{ib.a(j + 1), 1}});
        ib.map(ib.b(j), {{ib.b(j + 1), 1}});
    }
    ib.map(ib.a(gg - 1), {{ib.a(1), 1}});
    ib.map(ib.b(gg - 1), {{ib.b(1), 1}});
    MatrixZk a = ib.finish();
    check_order(a, gg - 1, "literal_cycle_action");
    Modulus mod(k);
    return assemble(gg, k, cyclic_group(g - 1), {a}, {homology_unit(mod, gg, 'b', gg)});
}

SurfaceAction involution_action(int gamma, int n, std::int64_t k) {
    require(gamma >= 0 && n >= 1, "involution_action: need gamma >= 0 and n >= 1");
    const int gi = 2 * gamma + n - 1;
    require(gi >= 2, "involution_action: genus 2 gamma + n - 1 must be at least 2");
    const std::size_t g = static_cast<std::size_t>(gi);
    ImageBuilder ib(k, g);
    for (int j = 1; j <= gamma; ++j) {
        std::size_t o = static_cast<std::size_t>(2 * j - 1), e = static_cast<std::size_t>(2 * j);
        ib.map(ib.a(o), {{ib.a(e), 1}});
        ib.map(ib.a(e), {{ib.a(o), 1}});
        ib.map(ib.b(o), {{ib.b(e), 1}});
        ib.map(ib.b(e), {{ib.b(o), 1}});
    }
    for (std::size_t i = static_cast<std::size_t>(2 * gamma) + 1; i <= g; ++i) {
        ib.map(ib.a(i), {{ib.a(i), -1}});
        ib.map(ib.b(i), {{ib.b(i), -1}});
    }
    MatrixZk a = ib.finish();
    check_order(a, 2, "involution_action");
    Modulus mod(k);
    return assemble(g, k, cyclic_group(2), {a}, {ModuleVector::zero(mod, 2 * g)});
}

SurfaceAction order3_action(int gamma, int n, int pairs, std::int64_t k) {
    require(gamma >= 0 && pairs >= 0, "order3_action: negative parameter");
    require(gamma == 0 ? n >= 3 : n >= 1, "order3_action: too few fixed points");
    const int gi = gamma == 0 ? n - 1 : 3 * gamma + n - 1;
    require(gi >= 2, "order3_action: genus must be at least 2");
    require(3 * gamma + 2 * pairs <= gi, "order3_action: blocks exceed the genus");
    const std::size_t g = static_cast<std::size_t>(gi);
    ImageBuilder ib(k, g);
    for (int j = 1; j <= gamma; ++j)
        for (int i = 0; i < 3; ++i) {
            std::size_t from = static_cast<std::size_t>(3 * j - 2 + i);
            std::size_t to = static_cast<std::size_t>(3 * j - 2 + (i + 1) % 3);
            ib.map(ib.a(from), {{ib.a(to), 1}});
            ib.map(ib.b(from), {{ib.b(to), 1}});
        }
    const std::size_t base = static_cast<std::size_t>(3 * gamma);
    for (int i = 1; i <= pairs; ++i) {
        std::size_t o = base + static_cast<std::size_t>(2 * i - 1), e = o + 1;
        ib.map(ib.a(o), {{ib.a(e), 1}});
        ib.map(ib.a(e), {{ib.a(o), -1}, {ib.a(e), -1}});
        ib.map(ib.b(o), {{ib.b(e), 1}});
        ib.map(ib.b(e), {{ib.b(o), -1}, {ib.b(e), -1}});
    }
    for (std::size_t s = base + static_cast<std::size_t>(2 * pairs) + 1; s <= g; ++s) {
        ib.map(ib.a(s), {{ib.b(s), 1}});
        ib.map(ib.b(s), {{ib.a(s), -1}, {ib.b(s), -1}});
    }
    MatrixZk a = ib.finish();
    check_order(a, 3, "order3_action");
    Modulus mod(k);
    return assemble(g, k, cyclic_group(3), {a}, {ModuleVector::zero(mod, 2 * g)});
}

SurfaceAction s3_action(int n, std::int64_t k) {
    require(n >= 5 && n % 2 == 1, "s3_action: need n >= 5 odd");
    const std::size_t g = static_cast<std::size_t>((3 * n - 7) / 2);
    ImageBuilder r(k, g), h(k, g);
    for (std::size_t j = 1; j <= (g - 1) / 3; ++j) {
        std::size_t x = 3 * j - 2, y = 3 * j - 1, z = 3 * j;
        r.map(r.a(x), {{r.a(y), 1}});
        r.map(r.a(y), {{r.a(z), 1}});
        r.map(r.a(z), {{r.a(x), 1}});
        r.map(r.b(x), {{r.b(y), 1}});
        r.map(r.b(y), {{r.b(z), 1}});
        r.map(r.b(z), {{r.b(x), 1}});
        h.map(h.a(x), {{h.a(x), -1}});
        h.map(h.a(y), {{h.a(z), -1}});
        h.map(h.a(z), {{h.a(y), -1}});
        h.map(h.b(x), {{h.b(x), -1}});
        h.map(h.b(y), {{h.b(z), -1}});
        h.map(h.b(z), {{h.b(y), -1}});
    }
    h.map(h.a(g), {{h.a(g), -1}});
    h.map(h.b(g), {{h.b(g), -1}});
    MatrixZk ar = r.finish(), ah = h.finish();
    check_order(ar, 3, "s3_action r");
    check_order(ah, 2, "s3_action h");
    check_order(ar * ah, 2, "s3_action r*h");
    Modulus mod(k);
    return assemble(g, k, symmetric3_group(), {ar, ah},
                    {homology_unit(mod, g, 'b', g), ModuleVector::zero(mod, 2 * g), ModuleVector::zero(mod, 2 * g)});
}

// ---------------------------------------------------------------- epimorphisms

EpimorphismSpec free_epimorphism(const FiniteGroup& zm, int quotient_genus) {
    require(quotient_genus >= 1, "free_epimorphism: quotient genus must be at least 1");
    EpimorphismSpec e;
    e.signature.genus = quotient_genus;
    e.target = "Z" + std::to_string(zm.order());
    e.handle_images.assign(2 * static_cast<std::size_t>(quotient_genus), zm.identity());
    e.handle_images[0] = zm.generator_element(0);
    return e;
}

EpimorphismSpec involution_epimorphism(const FiniteGroup& z2, int gamma, int n) {
    EpimorphismSpec e;
    e.signature.genus = gamma;
    e.signature.cone_orders.assign(2 * static_cast<std::size_t>(n), 2);
    e.target = "Z2";
    e.handle_images.assign(2 * static_cast<std::size_t>(gamma), z2.identity());
    e.cone_images.assign(2 * static_cast<std::size_t>(n), z2.generator_element(0));
    return e;
}

EpimorphismSpec order3_epimorphism(const FiniteGroup& z3, int gamma, int n, int l) {
    EpimorphismSpec e;
    e.signature.genus = gamma;
    e.signature.cone_orders.assign(static_cast<std::size_t>(n + 1), 3);
    e.target = "Z3";
    e.handle_images.assign(2 * static_cast<std::size_t>(gamma), z3.identity());
    const std::size_t phi = z3.generator_element(0), inv = z3.inverse(phi);
    for (int i = 0; i < n + 1; ++i) e.cone_images.push_back(i < 2 * l && i % 2 == 1 ? inv : phi);
    return e;
}

EpimorphismSpec s3_epimorphism(const FiniteGroup& s3, int n, int l1, int l2) {
    EpimorphismSpec e;
    e.signature.genus = 0;
    e.signature.cone_orders.assign(static_cast<std::size_t>(n + 1), 2);
    e.target = "S3";
    const std::vector<std::string>& names = s3.names();
    const std::size_t h = s3.evaluate(parse_word("h", names));
    const std::size_t rh = s3.evaluate(parse_word("r*h", names));
    const std::size_t r2h = s3.evaluate(parse_word("r^2*h", names));
    for (int i = 0; i < n + 1; ++i) e.cone_images.push_back(i < 2 * l1 ? h : i < 2 * l1 + 2 * l2 ? rh : r2h);
    return e;
}

// ---------------------------------------------------------------- scenario catalog

namespace {

using Checks = std::vector<std::pair<std::string, std::string>>;

Expectation expect(std::string line, Checks checks) { return Expectation{std::move(line), std::move(checks)}; }

Scenario base(std::string name, std::string summary, ScenarioTask task) {
    Scenario s;
    s.name = std::move(name);
    s.summary = std::move(summary);
    s.task = task;
    return s;
}

void add_subgroup(Scenario& s, const std::string& key, const std::vector<std::string>& gens) {
    const auto& sa = *s.surface;
    s.subgroups[key] = homology_subgroup(sa.spec.action.modulus(), sa.genus, gens);
}

void add_vector(Scenario& s, const std::string& key, const std::string& text) {
    const auto& sa = *s.surface;
    s.vectors[key] = homology_element(sa.spec.action.modulus(), sa.genus, text);
}

Scenario free_z3_split() {
    Scenario s = base("sec4-free", "free Z3 action on genus 4, k=3: quotient by <b_g> splits", ScenarioTask::closure);
    s.surface = free_cyclic_action(3, 1, 3);
    add_subgroup(s, "N1", {"b4"});
    s.expectations = {
        expect("minimal invariant subgroup of the defects = {min_invariant}", {{"min_invariant", "<(0,0,0,0,0,0,0,1)>"}}),
        expect("M/<b_g> = {hatA}", {{"hatA", "Z3^7"}}),
        expect("G = L~/<b_g>: order {order_G}, split={split}", {{"order_G", "6561"}, {"split", "yes"}}),
        expect("presentation guarantee applies: {guarantee}", {{"guarantee", "yes"}}),
    };
    s.info_keys = {"name", "fingerprint", "lift_full"};
    return s;
}

Scenario free_z2_closure16() {
    Scenario s = base("sec4.1-QD16", "free Z2 action, g=3, k=4: Galois closure of order 16", ScenarioTask::closure);
    s.surface = free_cyclic_action(2, 1, 4);
    add_subgroup(s, "N1", {"a1", "a2", "a3", "b2", "b1*b3^2"});
    add_subgroup(s, "N2_stated", {"a1", "a2", "a3", "b1^2", "b2^2", "b1*b2*b3^2"});
    add_vector(s, "B", "b2");
    s.params["conjugation_probe"] = 1;
    s.expectations = {
        expect("N2 = {n2} (matches stated list: {n2_matches})", {{"n2_matches", "yes"}}),
        expect("hat A = M/N1 = {hatA}", {{"hatA", "Z4"}}),
        expect("U = N1/N2 = {U}", {{"U", "Z2"}}),
        expect("K = M/N2 = {K}", {{"K", "Z2 x Z4"}}),
        expect("|G| = {order_G}", {{"order_G", "16"}}),
        expect("G splits over K: {split}", {{"split", "no"}}),
        expect("every involution of G lies in K: {involutions_in_K}", {{"involutions_in_K", "yes"}}),
    };
    s.info_keys = {"name", "fingerprint", "conjugation_exponent", "split_linear"};
    return s;
}

Scenario literal_cycle_core() {
    Scenario s = base("sec4.1-literal-g5",
                      "literal single (g-1)-cycle action for g=5, k=4: core compared with the generic N2 list",
                      ScenarioTask::core_compare);
    s.surface = literal_cycle_action(5, 4);
    add_subgroup(s, "N1", {"a1", "a2", "a3", "a4", "a5", "b2", "b3", "b4", "b1*b5^2"});
    add_subgroup(s, "N2_stated", {"a1", "a2", "a3", "a4", "a5", "b1^2", "b2^2", "b3", "b4", "b1*b2*b5^2"});
    s.expectations = {
        expect("order of the literal cycle action = {action_order}", {{"action_order", "4"}}),
    };
    s.info_keys = {"n2", "n2_matches", "K", "U"};
    return s;
}

Scenario a5_no_lift() {
    Scenario s = base("sec4.2-A5", "A5 with signature (0;5,5,5), k=3: no order-3 lift of r", ScenarioTask::cyclic_lift);
    s.surface = free_cyclic_action(3, 4, 3);
    add_vector(s, "m0", "a13");
    add_subgroup(s, "N1", {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "a11", "a12",
                           "b1", "b2", "b3", "b4", "b5", "b6", "b7", "b8", "b9", "b10", "b11", "b12", "b13"});
    s.params["probe_coordinate"] = 12;  // a13
    s.expectations = {
        expect("|L| = {order_L}, genus of S = {genus}", {{"order_L", "60"}, {"genus", "13"}}),
        expect("genus of S/<r> = {genus_quotient_r}", {{"genus_quotient_r", "5"}}),
        expect("order-3 lift of r: {lift_r}", {{"lift_r", "NONE (norm equation unsolvable)"}}),
        expect("a13-coefficient of (psi*alpha)^3 is 1 mod 3 for every alpha: {probe_constant}",
               {{"probe_constant", "yes"}}),
        expect("hat A = M/N1 = {hatA}, a13 in N2: {m0_in_N2}", {{"hatA", "Z3"}, {"m0_in_N2", "no"}}),
    };
    s.info_keys = {"certificate_residue", "n2", "U"};
    return s;
}

Scenario a5_subgroups() {
    Scenario s = base("sec4.2.2-A4", "A4 and Z2^2 inside A5 acting freely on genus 13", ScenarioTask::subgroups_a5);
    s.expectations = {
        expect("K = <r, (h*r)*h*(h*r)^-1> is {K_name} of order {K_order}", {{"K_name", "A4"}, {"K_order", "12"}}),
        expect("hat K = <s, r*s*r^-1> is {Khat_name}, normal in K: {Khat_normal}",
               {{"Khat_name", "Z2^2"}, {"Khat_normal", "yes"}}),
        expect("K acts freely: {K_free}", {{"K_free", "yes"}}),
        expect("genus of Y = S/hat K = {genus_Y}", {{"genus_Y", "4"}}),
        expect("Galois closure group of S -> X is {closure_name}", {{"closure_name", "A5"}}),
    };
    s.info_keys = {"genus_X"};
    return s;
}

Scenario involution_split() {
    Scenario s = base("sec5", "involution with fixed points, (gamma,n,k) = (1,2,2): split", ScenarioTask::closure);
    s.surface = involution_action(1, 2, 2);
    s.subgroups["N1"] = SubgroupBasis(s.surface->spec.action.modulus(), 2 * s.surface->genus);
    s.params["genus_gamma"] = 1;
    s.params["genus_n"] = 2;
    s.expectations = {
        expect("genus g = 2*gamma+n-1 = {genus}", {{"genus", "3"}}),
        expect("L~_k = Z_k^(2g) x| Z_2: |G| = {order_G}, split={split}", {{"order_G", "128"}, {"split", "yes"}}),
        expect("order-2 lift exists: {lift_verdict}", {{"lift_verdict", "yes"}}),
    };
    s.info_keys = {"fingerprint"};
    return s;
}

Scenario order3_genus3(std::int64_t k) {
    std::string name = k == 2 ? "sec6.1.1" : "sec6.1.1-k" + std::to_string(k);
    Scenario s = base(name, "order-3 action on genus 3 (n=4, one pair block), k=" + std::to_string(k),
                      ScenarioTask::closure);
    s.surface = order3_action(0, 4, 1, k);
    add_subgroup(s, "N1", {"a1", "a3", "b1", "b2", "b3"});
    add_subgroup(s, "N2_stated", {"a3", "b1", "b2", "b3"});
    const std::string z = "Z" + std::to_string(k);
    s.expectations = {
        expect("N2 = {n2} (matches stated list: {n2_matches})", {{"n2_matches", "yes"}}),
        expect("hat A = {hatA}, U = {U}, K = {K}", {{"hatA", z}, {"U", z}, {"K", z + "^2"}}),
        expect("G = K x| Z3: |G| = {order_G}, split={split}",
               {{"order_G", std::to_string(3 * k * k)}, {"split", "yes"}}),
    };
    if (k == 2) s.expectations.push_back(expect("G is {name}", {{"name", "A4"}}));
    s.info_keys = {"fingerprint"};
    if (k != 2) s.info_keys.push_back("name");
    return s;
}

Scenario order3_epimorphisms(int omega) {
    Scenario s = base("sec6.3-omega" + std::to_string(omega),
                      "order-3 action on genus 7 (gamma=1, n=5), epimorphism omega" + std::to_string(omega),
                      ScenarioTask::epimorphisms);
    s.surface = order3_action(1, 5, omega == 1 ? 1 : 2, 3);
    s.params["gamma"] = 1;
    s.params["n"] = 5;
    s.params["l"] = omega == 1 ? 0 : 3;
    add_vector(s, "probe", "a6");
    s.expectations = {
        expect("omega valid, genus = {genus}", {{"omega_valid", "yes"}, {"genus", "7"}}),
        expect("phi_*(a6) = {probe_image}", {{"probe_image", omega == 1 ? "b6" : "a7"}}),
        expect("A^3 = I: {order_ok}", {{"order_ok", "yes"}}),
        expect("psi^3 = 1 lift exists (L~_k = M_k x| Z3): {lift_verdict}", {{"lift_verdict", "yes"}}),
    };
    return s;
}

Scenario order3_rank13() {
    Scenario s = base("sec6.3.3", "order-3 action omega1, k=3: invariant N1 of rank 13, abelian quotient",
                      ScenarioTask::closure);
    s.surface = order3_action(1, 5, 1, 3);
    add_subgroup(s, "N1", {"a1*a2^-1", "a1*a3^-1", "a4", "a5", "a6", "a7", "b1", "b2", "b3", "b4", "b5", "b6", "b7"});
    s.params["cover_genus"] = 1;
    s.expectations = {
        expect("N1 is invariant: {n1_invariant}, |N1| = 3^{n1_rank}", {{"n1_invariant", "yes"}, {"n1_rank", "13"}}),
        expect("G = L~/N1 = {name}", {{"name", "Z3^2"}}),
        expect("genus of Z = S~/N1 = {genus_cover}", {{"genus_cover", "19"}}),
    };
    s.info_keys = {"fingerprint"};
    return s;
}

Scenario s3_closure_s4() {
    Scenario s = base("sec7.3-S4", "S3 action, n=5, k=2: Galois closure S4", ScenarioTask::closure);
    s.surface = s3_action(5, 2);
    add_subgroup(s, "N1", {"a1", "a2*a3", "a4", "b1", "b2", "b3", "b4"});
    add_subgroup(s, "N2_stated", {"a1*a2*a3", "a4", "b1", "b2", "b3", "b4"});
    s.params["intermediate_generator"] = 1;  // <K, Psi_h>
    s.expectations = {
        expect("N2 = {n2} (matches stated list: {n2_matches})", {{"n2_matches", "yes"}}),
        expect("hat A = {hatA}, U = {U}, K = {K}", {{"hatA", "Z2"}, {"U", "Z2"}, {"K", "Z2^2"}}),
        expect("|G| = {order_G}, G = {name}, split={split}",
               {{"order_G", "24"}, {"name", "S4"}, {"split", "yes"}}),
        expect("<A1, A2, Psi_h> = {intermediate_name}", {{"intermediate_name", "D4"}}),
    };
    s.info_keys = {"fingerprint"};
    return s;
}

Scenario s3_index3_count() {
    Scenario s = base("sec7.4.1-count40", "S3 action, n=5, k=3: normal subgroups of index 3 in M",
                      ScenarioTask::enumerate);
    s.surface = s3_action(5, 3);
    add_vector(s, "probe", "b4");
    s.params["index"] = 3;
    s.expectations = {expect("count={count} contains_b4={contains_probe}", {{"count", "40"}, {"contains_probe", "13"}})};
    return s;
}

Scenario s3_closure_k3(int which) {
    static const char* names[] = {"sec7.4.2", "sec7.4.3", "sec7.4.4", "sec7.4.5"};
    Scenario s = base(names[which - 2], "S3 action, n=5, k=3: Galois closure", ScenarioTask::closure);
    s.surface = s3_action(5, 3);
    add_vector(s, "b4", "b4");
    s.params["probe_b4"] = 1;
    switch (which) {
        case 2:
            add_subgroup(s, "N1", {"a1*a2*a3", "a4", "b1", "b2", "b3", "b4"});
            add_subgroup(s, "N2_stated", {"a1*a2*a3", "a4", "b1", "b2", "b3", "b4"});
            s.expectations = {
                expect("N2 = N1 = {n2}: {n2_matches}", {{"n2_matches", "yes"}}),
                expect("K = {K}, |G| = {order_G}", {{"K", "Z3^2"}, {"order_G", "54"}}),
                expect("b4 in N1: {b4_in_N1}, split={split}, G = {name}",
                       {{"b4_in_N1", "yes"}, {"split", "yes"}, {"name", "Z3^2 : S3"}}),
            };
            break;
        case 3:
            add_subgroup(s, "N1", {"a1", "a2", "a3", "b1", "b2", "b3"});
            add_subgroup(s, "N2_stated", {"a1", "a2", "a3", "b1", "b2", "b3"});
            s.expectations = {
                expect("N2 = N1 = {n2}: {n2_matches}", {{"n2_matches", "yes"}}),
                expect("K = {K}, |G| = {order_G}", {{"K", "Z3^2"}, {"order_G", "54"}}),
                expect("b4 in N1: {b4_in_N1}, split={split}", {{"b4_in_N1", "no"}, {"split", "no"}}),
            };
            break;
        case 4:
            add_subgroup(s, "N1", {"a1", "a2", "a4", "b1", "b2", "b3"});
            add_subgroup(s, "N2_stated", {"a4", "b1", "b2", "b3"});
            s.expectations = {
                expect("N2 = {n2} (matches stated list: {n2_matches})", {{"n2_matches", "yes"}}),
                expect("K = {K}, |G| = {order_G}", {{"K", "Z3^4"}, {"order_G", "486"}}),
                expect("b4 in N1: {b4_in_N1}, split={split}", {{"b4_in_N1", "no"}, {"split", "no"}}),
            };
            s.info_keys = {"n1_h_invariant"};
            break;
        default:
            add_subgroup(s, "N1", {"a1", "a2", "a4", "b1", "b2", "b4"});
            add_subgroup(s, "N2_stated", {"a4", "b4"});
            s.expectations = {
                expect("N2 = {n2} (matches stated list: {n2_matches})", {{"n2_matches", "yes"}}),
                expect("K = {K}, |G| = {order_G}", {{"K", "Z3^6"}, {"order_G", "4374"}}),
                expect("b4 in N1: {b4_in_N1}, split={split}, G = {name}",
                       {{"b4_in_N1", "yes"}, {"split", "yes"}, {"name", "Z3^6 : S3"}}),
            };
            s.info_keys = {"n1_h_invariant"};
            break;
    }
    s.info_keys.push_back("fingerprint");
    return s;
}

Scenario dichotomy() {
    Scenario s = base("dichotomy", "S3 defect spec r^3 = b_g over N = <a's, b_1..b_{g-1}>: split iff 3 does not divide k",
                      ScenarioTask::dichotomy);
    s.moduli = {2, 3, 4, 5, 6, 9};
    for (auto k : s.moduli) {
        std::string key = "split_k" + std::to_string(k);
        s.expectations.push_back(
            expect("k=" + std::to_string(k) + ": complement {" + key + "}", {{key, k % 3 == 0 ? "None" : "Some"}}));
    }
    return s;
}

Scenario genus_grid() {
    Scenario s = base("riemann-hurwitz", "Riemann-Hurwitz closed forms and spot values", ScenarioTask::genus_grid);
    s.expectations = {
        expect("free Z_m: g = m*blocks+1 on the grid: {grid_free}", {{"grid_free", "ok"}}),
        expect("involution: g = 2*gamma+n-1 on the grid: {grid_involution}", {{"grid_involution", "ok"}}),
        expect("order 3, gamma=0: g = n-1 on the grid: {grid_order3_0}", {{"grid_order3_0", "ok"}}),
        expect("order 3, gamma>=1: g = 3*gamma+n-1 on the grid: {grid_order3}", {{"grid_order3", "ok"}}),
        expect("S3, gamma=0: g = (3n-7)/2 on the grid: {grid_s3}", {{"grid_s3", "ok"}}),
        expect("(0;5,5,5) with |L|=60: g = {g_a5}", {{"g_a5", "13"}}),
        expect("(0;2,2,2,2,2,2) with |L|=6: g = {g_s3}", {{"g_s3", "4"}}),
        expect("(1;3,3,3,3,3,3) with |L|=3: g = {g_order3}", {{"g_order3", "7"}}),
        expect("(5;) with |L|=3: g = {g_free}", {{"g_free", "13"}}),
    };
    s.info_keys = {"s3_positive_gamma"};
    return s;
}

}  // namespace

std::vector<std::string> scenario_names() {
    return {"sec4-free",       "sec4.1-QD16", "sec4.1-literal-g5", "sec4.2-A5",         "sec4.2.2-A4",
            "sec5",            "sec6.1.1",    "sec6.1.1-k3",       "sec6.1.1-k4",       "sec6.3-omega1",
            "sec6.3-omega2",   "sec6.3.3",    "sec7.3-S4",         "sec7.4.1-count40",  "sec7.4.2",
            "sec7.4.3",        "sec7.4.4",    "sec7.4.5",          "dichotomy",         "riemann-hurwitz"};
}

Scenario make_scenario(const std::string& name) {
    if (name == "sec4-free") return free_z3_split();
    if (name == "sec4.1-QD16") return free_z2_closure16();
    if (name == "sec4.1-literal-g5") return literal_cycle_core();
    if (name == "sec4.2-A5") return a5_no_lift();
    if (name == "sec4.2.2-A4") return a5_subgroups();
    if (name == "sec5") return involution_split();
    if (name == "sec6.1.1") return order3_genus3(2);
    if (name == "sec6.1.1-k3") return order3_genus3(3);
    if (name == "sec6.1.1-k4") return order3_genus3(4);
    if (name == "sec6.3-omega1") return order3_epimorphisms(1);
    if (name == "sec6.3-omega2") return order3_epimorphisms(2);
    if (name == "sec6.3.3") return order3_rank13();
    if (name == "sec7.3-S4") return s3_closure_s4();
    if (name == "sec7.4.1-count40") return s3_index3_count();
    if (name == "sec7.4.2") return s3_closure_k3(2);
    if (name == "sec7.4.3") return s3_closure_k3(3);
    if (name == "sec7.4.4") return s3_closure_k3(4);
    if (name == "sec7.4.5") return s3_closure_k3(5);
    if (name == "dichotomy") return dichotomy();
    if (name == "riemann-hurwitz") return genus_grid();
    throw Error(ErrorKind::unknown_scenario, "unknown scenario '" + name + "'");
}

}  // namespace homolift
