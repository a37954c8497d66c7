#include <doctest.h>

#include "homolift/closure.hpp"
#include "homolift/error.hpp"
#include "homolift/extension.hpp"
#include "homolift/identify.hpp"
#include "homolift/lift.hpp"
#include "homolift/surfaces.hpp"
#include "test_util.hpp"

#include <random>

using namespace homolift;

namespace {

void require_all_pass(const std::vector<InvariantCheck>& checks) {
    for (const auto& c : checks) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.pass);
    }
}

ExtensionSpec cyclic_spec(const MatrixZk& a, std::int64_t l, const ModuleVector& m0) {
    FiniteGroup z = cyclic_group(static_cast<int>(l));
    Action act(a.modulus(), a.rows(), z.names(), {a});
    return ExtensionSpec{z, act, {m0}};
}

}  // namespace

TEST_CASE("extension spec validation") {
    SurfaceAction sa = s3_action(5, 2);
    ExtensionSpec bad = sa.spec;
    bad.defects.pop_back();
    CHECK_THROWS_AS(bad.validate(), Error);

    // relator words that do not act trivially
    FiniteGroup z2 = cyclic_group(2);
    Modulus m(3);
    MatrixZk rot(m, 2, std::vector<std::vector<std::int64_t>>{{0, 2}, {1, 2}});  // order 3
    ExtensionSpec wrong{z2, Action(m, 2, z2.names(), {rot}), {ModuleVector::zero(m, 2)}};
    CHECK_THROWS_AS(wrong.validate(), Error);
}

TEST_CASE("relators must present L") {
    FiniteGroup s3 = symmetric3_group();
    std::vector<Word> partial{s3.relators()[0], s3.relators()[1]};
    FiniteGroup loose(s3.names(), {s3.element(s3.generator_element(0)), s3.element(s3.generator_element(1))}, partial);
    SurfaceAction sa = s3_action(5, 2);
    ExtensionSpec spec{loose, sa.spec.action, {sa.spec.defects[0], sa.spec.defects[1]}};
    CHECK_THROWS_AS(ExtGroup(spec, SubgroupBasis::full(Modulus(2), 8)), Error);
}

TEST_CASE("defects that are not fixed are inconsistent") {
    Modulus m(2);
    MatrixZk swap(m, 2, std::vector<std::vector<std::int64_t>>{{0, 1}, {1, 0}});
    ExtensionSpec spec = cyclic_spec(swap, 2, ModuleVector(m, {1, 0}));
    CHECK_THROWS_AS(ExtGroup(spec, SubgroupBasis(m, 2)), Error);
}

TEST_CASE("non-invariant N is rejected") {
    SurfaceAction sa = free_cyclic_action(2, 1, 2);
    auto n = homology_subgroup(Modulus(2), 3, {"a1"});
    CHECK_THROWS_AS(ExtGroup(sa.spec, n), Error);
}

TEST_CASE("small quotient groups satisfy the group axioms exhaustively") {
    std::vector<std::pair<SurfaceAction, SubgroupBasis>> cases;
    {
        SurfaceAction sa = order3_action(0, 4, 1, 2);
        cases.emplace_back(sa, homology_subgroup(Modulus(2), 3, {"a3", "b1", "b2", "b3"}));
    }
    {
        SurfaceAction sa = free_cyclic_action(2, 1, 4);
        cases.emplace_back(sa, homology_subgroup(Modulus(4), 3, {"a1", "a2", "a3", "b1^2", "b2^2", "b1*b2*b3^2"}));
    }
    {
        SurfaceAction sa = s3_action(5, 2);
        cases.emplace_back(sa, homology_subgroup(Modulus(2), 4, {"a1*a2*a3", "a4", "b1", "b2", "b3", "b4"}));
    }
    {
        SurfaceAction sa = involution_action(0, 3, 2);
        cases.emplace_back(sa, homology_subgroup(Modulus(2), 2, {"a1"}));
    }
    {
        SurfaceAction sa = free_cyclic_action(2, 1, 2);
        cases.emplace_back(sa, SubgroupBasis(Modulus(2), 6));
    }
    for (const auto& [sa, n] : cases) {
        ExtGroup g(sa.spec, n);
        CHECK(g.order() <= 128);
        require_all_pass(verify_ext_group(g));
    }
}

TEST_CASE("large quotient groups pass sampled associativity") {
    SurfaceAction sa = s3_action(5, 3);
    ExtGroup g(sa.spec, homology_subgroup(Modulus(3), 4, {"a4", "b4"}));
    CHECK(g.order() == 4374);
    require_all_pass(verify_ext_group(g, 2000, 17));
}

TEST_CASE("split test agrees with the cyclic norm equation") {
    std::mt19937 rng(21);
    struct Shape {
        std::int64_t k;
        std::size_t n;
        std::int64_t l;
    };
    for (const auto& s : std::vector<Shape>{{2, 4, 2}, {2, 6, 3}, {3, 3, 3}, {4, 3, 2}, {3, 4, 2}, {5, 2, 4}, {9, 2, 3}}) {
        for (int trial = 0; trial < 5; ++trial) {
            MatrixZk a = test_util::random_order_matrix(rng, s.k, s.n, s.l);
            std::vector<std::int64_t> v(s.n);
            for (auto& x : v) x = static_cast<std::int64_t>(rng() % static_cast<std::uint32_t>(s.k));
            ModuleVector m0(Modulus(s.k), v);
            // make m0 fixed: sum over the orbit
            m0 = norm_map(a, s.l, m0);
            if (trial % 2) {
                // a fixed vector that is typically not a norm: sum of a fixed cycle block
                for (int t = 0; t < 8 && !(a * m0 == m0 && !m0.is_zero()); ++t) {
                    for (auto& x : v) x = static_cast<std::int64_t>(rng() % static_cast<std::uint32_t>(s.k));
                    ModuleVector c(Modulus(s.k), v);
                    if (a * c == c) m0 = c;
                }
            }
            if (!(a * m0 == m0)) continue;
            ExtensionSpec spec = cyclic_spec(a, s.l, m0);
            ExtGroup g(spec, SubgroupBasis(Modulus(s.k), s.n));
            const bool exhaustive = split_test(g).has_value();
            const bool linear = complement_solve(g).has_value();
            const bool norm = cyclic_lift_solve(CyclicLiftProblem{a, s.l, m0}).witness.has_value();
            CHECK(exhaustive == norm);
            CHECK(linear == norm);
        }
    }
}

TEST_CASE("complements are verified elements of G") {
    SurfaceAction sa = s3_action(5, 2);
    ExtGroup g(sa.spec, homology_subgroup(Modulus(2), 4, {"a1*a2*a3", "a4", "b1", "b2", "b3", "b4"}));
    auto c = split_test(g);
    REQUIRE(c.has_value());
    for (std::size_t j = 0; j < c->size(); ++j) CHECK((*c)[j].l == g.base().generator_element(j));
    for (const auto& r : g.base().relators()) CHECK(g.evaluate(r, *c) == g.one());
    auto lin = complement_solve(g);
    REQUIRE(lin.has_value());
    for (const auto& r : g.base().relators()) CHECK(g.evaluate(r, *lin) == g.one());
}

TEST_CASE("split test budget") {
    SurfaceAction sa = s3_action(5, 3);
    ExtGroup g(sa.spec, SubgroupBasis(Modulus(3), 8));
    try {
        split_test(g, 1000);
        FAIL("expected a budget error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::budget_exceeded);
        CHECK(e.detail() == 6561ull * 6561ull);
    }
}

TEST_CASE("isomorphism type does not depend on the generator order") {
    SurfaceAction sa = s3_action(5, 3);
    for (const auto& gens : std::vector<std::vector<std::string>>{{"a1*a2*a3", "a4", "b1", "b2", "b3", "b4"},
                                                                  {"a1", "a2", "a3", "b1", "b2", "b3"},
                                                                  {"a4", "b4"}}) {
        auto n = homology_subgroup(Modulus(3), 4, gens);
        ExtGroup g(sa.spec, n);
        ExtGroup h(permute_generators(sa.spec, {1, 0}), n);
        // the factor tables differ but the groups agree
        CHECK(g.order() == h.order());
        Fingerprint a = identify(g), b = identify(h);
        CHECK(a.same_invariants(b));
        CHECK(split_test(g).has_value() == split_test(h).has_value());
    }
}

TEST_CASE("galois closure pipeline reports") {
    SurfaceAction sa = order3_action(0, 4, 1, 2);
    auto r = galois_closure_pipeline(sa.spec, homology_subgroup(Modulus(2), 3, {"a1", "a3", "b1", "b2", "b3"}));
    CHECK(r.n2 == homology_subgroup(Modulus(2), 3, {"a3", "b1", "b2", "b3"}));
    CHECK_FALSE(r.n1_invariant);
    CHECK(r.k == std::vector<Integer>{2, 2});
    CHECK(r.split());
    CHECK(r.linear_split);
    REQUIRE(r.fingerprint.has_value());
    CHECK(r.fingerprint->name == std::optional<std::string>("A4"));
}
