// Acceptance suite: one PASS/FAIL line per criterion, with wall time and limit.

#include "homolift/action.hpp"
#include "homolift/closure.hpp"
#include "homolift/error.hpp"
#include "homolift/extension.hpp"
#include "homolift/identify.hpp"
#include "homolift/lift.hpp"
#include "homolift/report.hpp"
#include "homolift/surfaces.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace homolift;

namespace {

// Collects failed expectations for one criterion.
class Verdict {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }
    template <class A, class B>
    void equal(const A& got, const B& want, const std::string& what) {
        if (!(got == want)) {
            std::ostringstream os;
            os << what << ": got " << got << ", want " << want;
            failures_.push_back(os.str());
        }
    }
    bool ok() const { return failures_.empty(); }
    const std::vector<std::string>& failures() const { return failures_; }

private:
    std::vector<std::string> failures_;
};

using Observed = std::map<std::string, std::string>;

std::string get(const Observed& o, const std::string& key) {
    auto it = o.find(key);
    return it == o.end() ? "<missing>" : it->second;
}

Observed observe(const std::string& scenario) { return observe_scenario(make_scenario(scenario)); }

std::string invariants(const std::vector<Integer>& v) {
    std::vector<std::uint64_t> u;
    for (const auto& x : v) u.push_back(static_cast<std::uint64_t>(x));
    return format_abelian(u);
}

// ---------------------------------------------------------------- criteria

void count40(Verdict& v) {
    SurfaceAction sa = s3_action(5, 3);
    v.equal(sa.spec.action.rank(), 8u, "rank of M");
    SubgroupConstraints c;
    c.quotient_invariants = std::vector<Integer>{3};
    auto subs = enumerate_invariant_subgroups(sa.spec.action, c);
    v.equal(subs.size(), 40u, "index-3 invariant subgroups");
    const ModuleVector b4 = homology_unit(Modulus(3), 4, 'b', 4);
    std::size_t with_b4 = 0;
    for (const auto& s : subs) with_b4 += contains(s, b4);
    v.equal(with_b4, 13u, "containing b4");
}

void a5_obstruction(Verdict& v) {
    SurfaceAction sa = free_cyclic_action(3, 4, 3);
    v.equal(sa.spec.action.rank(), 26u, "rank of M");
    const ModuleVector m0 = homology_unit(Modulus(3), 13, 'a', 13);
    CyclicLiftProblem p{sa.spec.action.matrix(0), 3, m0};
    auto r = cyclic_lift_solve(p);
    v.expect(!r.witness.has_value(), "no order-3 lift");
    v.expect(r.certificate.has_value(), "certificate present");
    if (r.certificate) v.expect(!contains(r.certificate->image, r.certificate->target), "target outside the norm image");
    // (psi alpha)^3 = N(alpha) + m0; the a13 row of N vanishes, so that coordinate is m0's, 1 mod 3
    v.expect(norm_matrix(p.action, 3).row(12).is_zero(), "a13 row of the norm matrix is zero");
    v.equal(static_cast<int>(m0[12]), 1, "a13 coefficient of m0");
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> d(0, 2);
    for (int t = 0; t < 200; ++t) {
        std::vector<std::int64_t> a(26);
        for (auto& x : a) x = d(rng);
        auto w = lift_power(p, ModuleVector(Modulus(3), a));
        v.equal(static_cast<int>(w[12]), 1, "a13 coordinate of a random lift cubed");
    }
}

void dichotomy(Verdict& v) {
    for (std::int64_t k : {2, 4, 5, 3, 6, 9}) {
        SurfaceAction sa = s3_action(5, k);
        const std::size_t g = sa.genus;
        std::vector<std::string> gens;
        for (std::size_t i = 1; i <= g; ++i) gens.push_back("a" + std::to_string(i));
        for (std::size_t i = 1; i < g; ++i) gens.push_back("b" + std::to_string(i));
        ExtGroup grp(sa.spec, homology_subgroup(Modulus(k), g, gens));
        const auto t0 = std::chrono::steady_clock::now();
        const bool split = split_test(grp).has_value();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool want = k == 2 || k == 4 || k == 5;
        v.equal(split ? "Some" : "None", std::string(want ? "Some" : "None"), "split_test at k=" + std::to_string(k));
        v.expect(secs < 5.0, "k=" + std::to_string(k) + " within 5 s");
    }
}

void order3_closure(Verdict& v) {
    for (std::int64_t k : {2, 3, 4}) {
        const std::string tag = "k=" + std::to_string(k);
        SurfaceAction sa = order3_action(0, 4, 1, k);
        const Modulus m(k);
        auto r = galois_closure_pipeline(sa.spec, homology_subgroup(m, 3, {"a1", "a3", "b1", "b2", "b3"}));
        v.expect(r.n2 == homology_subgroup(m, 3, {"a3", "b1", "b2", "b3"}), tag + " N2");
        v.equal(invariants(r.k), format_abelian({static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(k)}),
                tag + " K");
        v.equal(invariants(r.u), format_abelian({static_cast<std::uint64_t>(k)}), tag + " U");
        v.expect(r.split(), tag + " split");
        v.equal(r.group->order(), static_cast<std::size_t>(3 * k * k), tag + " |G|");
        if (k == 2) {
            v.expect(r.fingerprint && r.fingerprint->name == std::optional<std::string>("A4"), "G = A4 at k=2");
        }
    }
}

void s4_closure(Verdict& v) {
    Observed o = observe("sec7.3-S4");
    v.equal(get(o, "K"), std::string("Z2^2"), "K");
    v.equal(get(o, "order_G"), std::string("24"), "|G|");
    v.equal(get(o, "name"), std::string("S4"), "G");
    v.equal(get(o, "intermediate_name"), std::string("D4"), "<A1,A2,Psi_h>");
    v.equal(get(o, "hatA"), std::string("Z2"), "hat A");
    v.equal(get(o, "split"), std::string("yes"), "split");
}

void s3_family(Verdict& v) {
    struct Want {
        const char* name;
        const char* order;
        const char* split;
        const char* b4;
        const char* group;  // empty: not asserted
    };
    for (const auto& w : std::vector<Want>{{"sec7.4.2", "54", "yes", "yes", "Z3^2 : S3"},
                                           {"sec7.4.3", "54", "no", "no", ""},
                                           {"sec7.4.4", "486", "no", "no", ""},
                                           {"sec7.4.5", "4374", "yes", "yes", "Z3^6 : S3"}}) {
        Observed o = observe(w.name);
        const std::string tag = w.name;
        v.equal(get(o, "n2_matches"), std::string("yes"), tag + " N2");
        v.equal(get(o, "order_G"), std::string(w.order), tag + " |G|");
        v.equal(get(o, "split"), std::string(w.split), tag + " split");
        v.equal(get(o, "split_linear"), std::string(w.split), tag + " linear split");
        v.equal(get(o, "b4_in_N1"), std::string(w.b4), tag + " b4 in N1");
        if (*w.group) v.equal(get(o, "name"), std::string(w.group), tag + " G");
    }
}

void order16(Verdict& v) {
    Observed o = observe("sec4.1-QD16");
    v.equal(get(o, "order_G"), std::string("16"), "|G|");
    v.equal(get(o, "K"), std::string("Z2 x Z4"), "K");
    v.equal(get(o, "hatA"), std::string("Z4"), "hat A");
    v.equal(get(o, "U"), std::string("Z2"), "U");
    v.equal(get(o, "split"), std::string("no"), "split");
    v.equal(get(o, "involutions_in_K"), std::string("yes"), "involutions inside K");
    // the isomorphism type is reported, not asserted
    v.expect(get(o, "name") != "<missing>", "order-16 type reported");
    std::cout << "  order-16 group: " << get(o, "name") << "; " << get(o, "conjugation_exponent") << "\n";
}

void genus_grid(Verdict& v) {
    Observed o = observe("riemann-hurwitz");
    for (const char* key : {"grid_free", "grid_involution", "grid_order3_0", "grid_order3", "grid_s3"})
        v.equal(get(o, key), std::string("ok"), key);
    v.equal(riemann_hurwitz_genus({0, {5, 5, 5}}, 60), 13, "signature (0;5,5,5), |L| = 60");
    v.equal(s3_action(5, 3).genus, 4u, "S3 family genus");
    v.equal(riemann_hurwitz_genus({1, {3, 3, 3, 3, 3, 3}}, 3), 7, "order-3, gamma 1, six cone points");
    // S/<r> for the free Z3 action on genus 13: 13 = 1 + 3 (h - 1)
    v.equal(riemann_hurwitz_genus({5, {}}, 3), 13, "free Z3 over genus 5");
    v.equal(free_cyclic_action(3, 4, 3).genus, 13u, "free Z3 action genus");
    v.equal(get(observe("sec4.2-A5"), "genus_quotient_r"), std::string("5"), "genus of S/<r>");
}

// ---------------------------------------------------------------- property suites

oracle::ElemSet as_set(const oracle::Space& sp, const SubgroupBasis& s) {
    std::vector<oracle::Vec> gens;
    for (const auto& r : s.rows()) {
        oracle::Vec x;
        for (const auto& c : r.coords()) x.push_back(static_cast<std::int64_t>(c));
        gens.push_back(x);
    }
    return oracle::span_vecs(sp, gens);
}

void howell_suite(Verdict& v) {
    std::mt19937 rng(1);
    for (int i = 0; i < 10000; ++i) {
        auto r = test_util::howell_case(rng);
        if (!r.ok) {
            v.expect(false, "Howell case " + std::to_string(i) + ": " + r.message);
            return;
        }
    }
}

// Core is the largest invariant subgroup inside N1; the closure is the smallest containing the generators.
void extremality_suite(Verdict& v) {
    std::mt19937 rng(7);
    const std::vector<std::pair<std::int64_t, std::size_t>> shapes{{2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3},
                                                                   {4, 2}, {4, 3}, {5, 2}, {6, 2}, {3, 4}, {2, 6},
                                                                   {7, 2}, {8, 2}, {9, 2}, {3, 5}, {9, 3}};
    for (auto [k, n] : shapes) {
        oracle::Space sp(k, n);
        const Modulus m(k);
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<MatrixZk> ms;
            std::vector<oracle::Mat> rows;
            std::vector<std::string> names;
            for (int j = 0; j < 1 + trial % 2; ++j) {
                ms.push_back(test_util::random_invertible(rng, k, n));
                rows.push_back(test_util::to_rows(ms.back()));
                names.push_back("g" + std::to_string(j));
            }
            Action act(m, n, names, ms);
            // full lattice for small spaces; saturation oracles (extremal by construction) beyond
            const bool lattice = sp.size <= 81;
            std::set<oracle::ElemSet> all;
            if (lattice) all = oracle::all_invariant_subgroups(sp, rows);
            std::uniform_int_distribution<std::size_t> any(0, sp.size - 1);
            const std::string tag = " k=" + std::to_string(k) + " n=" + std::to_string(n);

            std::vector<std::size_t> gens{any(rng), any(rng)};
            std::vector<ModuleVector> gv;
            for (auto x : gens) gv.emplace_back(m, sp.decode(x));
            auto closure = as_set(sp, minimal_invariant_subgroup(act, gv));
            if (lattice) {
                std::size_t best = sp.size + 1;
                for (const auto& s : all)
                    if (s[gens[0]] && s[gens[1]]) best = std::min(best, oracle::count(s));
                v.expect(all.count(closure) && closure[gens[0]] && closure[gens[1]] && oracle::count(closure) == best,
                         "closure minimal in the lattice," + tag);
            } else {
                v.expect(closure == oracle::invariant_closure(sp, rows, gens), "closure vs saturation," + tag);
            }

            std::vector<std::size_t> sub{any(rng), any(rng), any(rng)};
            std::vector<ModuleVector> sv;
            for (auto x : sub) sv.emplace_back(m, sp.decode(x));
            auto n1 = oracle::span(sp, sub);
            auto c = as_set(sp, core(act, SubgroupBasis::span(m, n, sv)));
            if (lattice) {
                std::size_t largest = 0;
                for (const auto& s : all)
                    if (oracle::subset(s, n1)) largest = std::max(largest, oracle::count(s));
                v.expect(all.count(c) && oracle::subset(c, n1) && oracle::count(c) == largest,
                         "core maximal in the lattice," + tag);
            } else {
                v.expect(c == oracle::invariant_core(sp, rows, n1), "core vs join of fitting closures," + tag);
            }
        }
    }
}

void norm_suite(Verdict& v) {
    std::mt19937 rng(3);
    struct Shape {
        std::int64_t k;
        std::size_t n;
        std::int64_t l;
    };
    for (const auto& s : std::vector<Shape>{{2, 4, 2}, {2, 6, 3}, {3, 4, 3}, {3, 5, 2}, {4, 3, 2}, {4, 4, 4},
                                            {5, 3, 2}, {6, 3, 3}, {3, 6, 3}, {9, 2, 3}, {2, 8, 4}, {3, 8, 3},
                                            {3, 8, 2}, {2, 8, 2}, {9, 4, 3}}) {
        oracle::Space sp(s.k, s.n);
        for (int trial = 0; trial < 6; ++trial) {
            MatrixZk a = test_util::random_order_matrix(rng, s.k, s.n, s.l);
            std::vector<std::int64_t> x(s.n);
            for (auto& c : x) c = static_cast<std::int64_t>(rng() % static_cast<std::uint32_t>(s.k));
            ModuleVector m0(Modulus(s.k), x);
            if (trial % 2 == 0) m0 = norm_map(a, s.l, m0);
            if (!(a * m0 == m0)) continue;
            const ModuleVector target = -m0;
            std::vector<std::int64_t> t;
            for (const auto& c : target.coords()) t.push_back(static_cast<std::int64_t>(c));
            CyclicLiftProblem p{a, s.l, m0};
            auto r = cyclic_lift_solve(p);
            const bool brute = !oracle::norm_solutions(sp, test_util::to_rows(a), s.l, sp.encode(t)).empty();
            v.expect(r.witness.has_value() == brute, "norm solver vs sweep, k=" + std::to_string(s.k) +
                                                         " n=" + std::to_string(s.n) + " l=" + std::to_string(s.l));
        }
    }
}

bool associative_exhaustive(const GroupOps& g) {
    const std::size_t n = g.order();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t ab = g.multiply(a, b);
            for (std::size_t c = 0; c < n; ++c)
                if (g.multiply(ab, c) != g.multiply(a, g.multiply(b, c))) return false;
        }
    for (std::size_t a = 0; a < n; ++a)
        if (g.multiply(a, g.inverse(a)) != g.identity() || g.multiply(g.identity(), a) != a) return false;
    return true;
}

void axioms_suite(Verdict& v) {
    std::size_t groups = 0;
    auto check = [&](const ExtensionSpec& spec, const SubgroupBasis& n, const std::string& tag) {
        ExtGroup g(spec, n);
        if (g.order() > 64) return;
        ++groups;
        v.expect(associative_exhaustive(g), tag + ": group axioms");
        for (const auto& c : verify_ext_group(g)) v.expect(c.pass, tag + ": " + c.name + " " + c.detail);
    };
    // quotients of the catalog actions by invariant subgroups of small index
    for (const auto& name : scenario_names()) {
        Scenario s = make_scenario(name);
        if (!s.surface) continue;
        const Action& act = s.surface->spec.action;
        const std::int64_t k = act.modulus().value();
        if (k == 0) continue;
        for (auto inv : std::vector<std::vector<Integer>>{{}, {Integer(k)}, {Integer(k), Integer(k)}}) {
            if (inv.empty()) {
                check(s.surface->spec, SubgroupBasis::full(act.modulus(), act.rank()), name + " M/M");
                continue;
            }
            std::uint64_t q = 1;
            for (const auto& d : inv) q *= static_cast<std::uint64_t>(d);
            if (q * s.surface->spec.group.order() > 64) continue;
            SubgroupConstraints c;
            c.quotient_invariants = inv;
            c.budget = 5'000;
            std::vector<SubgroupBasis> subs;
            try {
                subs = enumerate_invariant_subgroups(act, c);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::budget_exceeded) throw;
                continue;
            }
            for (std::size_t i = 0; i < subs.size() && i < 6; ++i) check(s.surface->spec, subs[i], name);
        }
    }
    // random cyclic extensions
    std::mt19937 rng(99);
    for (int t = 0; t < 40; ++t) {
        const std::int64_t k = 2 + t % 3;
        const std::size_t n = k == 2 ? 3 : 2;
        const std::int64_t l = 2 + t % 2;
        MatrixZk a = test_util::random_order_matrix(rng, k, n, l);
        std::vector<std::int64_t> x(n);
        for (auto& c : x) c = static_cast<std::int64_t>(rng() % static_cast<std::uint32_t>(k));
        ModuleVector m0(Modulus(k), x);
        if (!(a * m0 == m0)) m0 = norm_map(a, l, m0);
        FiniteGroup z = cyclic_group(static_cast<int>(l));
        ExtensionSpec spec{z, Action(Modulus(k), n, z.names(), {a}), {m0}};
        check(spec, SubgroupBasis(Modulus(k), n), "random cyclic");
    }
    v.expect(groups >= 40, "at least 40 groups checked (" + std::to_string(groups) + ")");
}

std::uint64_t capped_pow(std::uint64_t b, std::size_t e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e && r <= cap; ++i) r *= b;
    return r;
}

// Norm equation modulo N: sum_{i<l} A^i alpha in -m0 + N, as [N(A) | rows of N^T] x = -m0.
bool norm_solvable_mod(const MatrixZk& a, std::int64_t l, const ModuleVector& m0, const SubgroupBasis& n) {
    const MatrixZk nm = norm_matrix(a, l);
    const std::size_t r = a.rows(), extra = n.rows().size();
    MatrixZk aug(a.modulus(), r, r + extra);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) aug.set(i, j, nm.at(i, j));
        for (std::size_t j = 0; j < extra; ++j) aug.set(i, r + j, n.rows()[j][i]);
    }
    return solve_linear(aug, -m0).has_value();
}

void cyclic_agreement_suite(Verdict& v) {
    std::size_t checked = 0;
    for (const auto& name : scenario_names()) {
        Scenario s = make_scenario(name);
        if (!s.surface || s.surface->spec.group.generator_count() != 1) continue;
        const ExtensionSpec& spec = s.surface->spec;
        const Action& act = spec.action;
        const std::int64_t l = static_cast<std::int64_t>(spec.group.order());
        const MatrixZk& a = act.matrix(0);
        const ModuleVector& m0 = spec.defects[0];

        // on M itself, when the exhaustive search is affordable
        const std::uint64_t size = capped_pow(static_cast<std::uint64_t>(act.modulus().value()), act.rank(), 1ull << 40);
        if (size <= 5'000'000) {
            ExtGroup g(spec, SubgroupBasis(act.modulus(), act.rank()));
            const bool norm = cyclic_lift_solve(CyclicLiftProblem{a, l, m0}).witness.has_value();
            v.expect(split_test(g, 10'000'000).has_value() == norm, name + ": split_test vs norm equation on M");
            v.expect(complement_solve(g).has_value() == norm, name + ": linear route vs norm equation on M");
            ++checked;
        }
        // on the scenario's quotient M/N2
        auto it = s.subgroups.find("N1");
        if (it != s.subgroups.end()) {
            const SubgroupBasis n2 = core(act, it->second);
            ExtGroup g(spec, n2);
            const bool norm = norm_solvable_mod(a, l, m0, n2);
            v.expect(split_test(g, 10'000'000).has_value() == norm, name + ": split_test vs norm equation mod N2");
            ++checked;
        }
    }
    v.expect(checked >= 10, "cyclic comparisons (" + std::to_string(checked) + ")");
}

void property_suites(Verdict& v) {
    const std::vector<std::pair<const char*, void (*)(Verdict&)>> suites{
        {"Howell canonicality, 10^4 cases", howell_suite},
        {"core and closure extremality", extremality_suite},
        {"norm solver vs sweep", norm_suite},
        {"group axioms for |G| <= 64", axioms_suite},
        {"split_test vs norm equation on cyclic scenarios", cyclic_agreement_suite},
    };
    for (const auto& [title, run] : suites) {
        const auto t0 = std::chrono::steady_clock::now();
        const std::size_t before = v.failures().size();
        run(v);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "  " << (v.failures().size() == before ? "ok  " : "FAIL") << " " << title << " (" << secs
                  << " s)" << std::endl;
    }
}

struct Criterion {
    const char* title;
    double limit_seconds;
    std::function<void(Verdict&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"index-3 invariant subgroups of Z3^8 under S3: 40, 13 contain b4", 10, count40},
        {"A5 order-3 lift obstruction over Z3^26 with certificate", 1, a5_obstruction},
        {"S3 dichotomy: split for k in {2,4,5}, non-split for k in {3,6,9}", 30, dichotomy},
        {"order-3 genus-0 closure: N2, K = Zk^2, U = Zk, split, A4 at k=2", 5, order3_closure},
        {"S3 at k=2: K = Z2^2, G = S4, intermediate D4, hat A = Z2", 5, s4_closure},
        {"S3 at k=3: N2, orders and split verdicts of the four subgroups", 30, s3_family},
        {"free involution at k=4: |G| = 16, K = Z2 x Z4, non-split, involutions in K", 5, order16},
        {"Riemann-Hurwitz genus grid and spot values", 1, genus_grid},
        {"oracle-backed property suites", 300, property_suites},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(v);
        } catch (const std::exception& e) {
            v.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs >= c.limit_seconds) v.expect(false, "time limit exceeded");
        const bool pass = v.ok();
        failed += !pass;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.3f s, limit %.0f s", secs, c.limit_seconds);
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << c.title << " (" << timing
                  << ")\n";
        for (const auto& f : v.failures()) std::cout << "  - " << f << "\n";
        std::cout.flush();
    }
    std::cout << (failed ? "FAIL" : "PASS") << " acceptance: " << (criteria.size() - failed) << "/" << criteria.size()
              << " criteria\n";
    return failed ? 1 : 0;
}
