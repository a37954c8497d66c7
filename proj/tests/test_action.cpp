#include <doctest.h>

#include "homolift/action.hpp"
#include "homolift/error.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <random>

using namespace homolift;

namespace {

oracle::ElemSet as_set(const oracle::Space& sp, const SubgroupBasis& s) {
    std::vector<oracle::Vec> gens;
    for (const auto& r : s.rows()) {
        oracle::Vec v;
        for (const auto& c : r.coords()) v.push_back(static_cast<std::int64_t>(c));
        gens.push_back(v);
    }
    return oracle::span_vecs(sp, gens);
}

struct RandomAction {
    Action act;
    std::vector<oracle::Mat> mats;
};

RandomAction random_action(std::mt19937& rng, std::int64_t k, std::size_t n, std::size_t gens) {
    Modulus m(k);
    std::vector<MatrixZk> ms;
    std::vector<std::string> names;
    RandomAction out;
    for (std::size_t j = 0; j < gens; ++j) {
        ms.push_back(test_util::random_invertible(rng, k, n));
        out.mats.push_back(test_util::to_rows(ms.back()));
        names.push_back("g" + std::to_string(j));
    }
    out.act = Action(m, n, names, ms);
    return out;
}

// (k, n) with k^n <= 729
const std::vector<std::pair<std::int64_t, std::size_t>> kSmall{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3},
                                                               {4, 2}, {4, 3}, {5, 2}, {6, 2}, {3, 4}};

}  // namespace

TEST_CASE("action rejects singular and misshapen matrices") {
    Modulus m(4);
    CHECK_THROWS_AS(Action(m, 2, {"x"}, {MatrixZk(m, 2, std::vector<std::vector<std::int64_t>>{{2, 0}, {0, 1}})}),
                    Error);
    CHECK_THROWS_AS(Action(m, 3, {"x"}, {MatrixZk::identity(m, 2)}), Error);
    CHECK_THROWS_AS(Action(m, 2, {"x", "y"}, {MatrixZk::identity(m, 2)}), Error);
    CHECK_THROWS_AS(Action(m, 2, {"x"}, {MatrixZk::identity(Modulus(3), 2)}), Error);
}

TEST_CASE("action evaluates words with inverses") {
    Modulus m(5);
    MatrixZk a(m, 2, std::vector<std::vector<std::int64_t>>{{1, 1}, {0, 1}});
    Action act(m, 2, {"x"}, {a});
    auto w = parse_word("x^3*x^-1", {"x"});
    CHECK(act.evaluate(w) == a * a);
    CHECK(act.apply(parse_word("x^-1", {"x"}), ModuleVector(m, {0, 1})) == ModuleVector(m, {4, 1}));
}

TEST_CASE("minimal invariant subgroup and core against brute force") {
    std::mt19937 rng(11);
    for (auto [k, n] : kSmall) {
        oracle::Space sp(k, n);
        Modulus m(k);
        for (int trial = 0; trial < 6; ++trial) {
            auto ra = random_action(rng, k, n, 1 + trial % 2);
            std::uniform_int_distribution<std::size_t> any(0, sp.size - 1);
            std::vector<std::size_t> gens{any(rng)};
            if (trial % 3 == 0) gens.push_back(any(rng));
            std::vector<ModuleVector> gv;
            for (auto g : gens) gv.emplace_back(m, sp.decode(g));

            auto closure = minimal_invariant_subgroup(ra.act, gv);
            CHECK(as_set(sp, closure) == oracle::invariant_closure(sp, ra.mats, gens));
            CHECK(is_invariant(ra.act, closure));

            std::vector<std::size_t> sub{any(rng), any(rng), any(rng)};
            auto set = oracle::span(sp, sub);
            std::vector<ModuleVector> sv;
            for (auto x : sub) sv.emplace_back(m, sp.decode(x));
            auto n1 = SubgroupBasis::span(m, n, sv);
            auto c = core(ra.act, n1);
            CHECK(as_set(sp, c) == oracle::invariant_core(sp, ra.mats, set));
            CHECK(is_invariant(ra.act, c) == true);
            CHECK(is_invariant(ra.act, n1) == oracle::invariant(sp, ra.mats, set));
        }
    }
}

TEST_CASE("enumeration of invariant subgroups matches brute force") {
    std::mt19937 rng(5);
    for (auto [k, n] : std::vector<std::pair<std::int64_t, std::size_t>>{{2, 3}, {3, 2}, {3, 3}, {2, 4}, {5, 2}}) {
        oracle::Space sp(k, n);
        Modulus m(k);
        for (int trial = 0; trial < 3; ++trial) {
            auto ra = random_action(rng, k, n, 2);
            auto all = oracle::all_invariant_subgroups(sp, ra.mats);
            // prime index k
            std::size_t expected = 0;
            for (const auto& s : all)
                if (oracle::count(s) * static_cast<std::size_t>(k) == sp.size) ++expected;
            SubgroupConstraints c;
            c.quotient_invariants = std::vector<Integer>{Integer(k)};
            auto found = enumerate_invariant_subgroups(ra.act, c);
            CHECK(found.size() == expected);
            for (const auto& s : found) {
                CHECK(is_invariant(ra.act, s));
                CHECK(all.count(as_set(sp, s)) == 1);
            }
            // the join-closure route with no constraints finds every invariant subgroup
            SubgroupConstraints none;
            auto every = enumerate_invariant_subgroups(ra.act, none);
            CHECK(every.size() == all.size());
        }
    }
}

TEST_CASE("enumeration with containment constraints and workers") {
    std::mt19937 rng(9);
    const std::int64_t k = 4;
    const std::size_t n = 3;
    oracle::Space sp(k, n);
    Modulus m(k);
    auto ra = random_action(rng, k, n, 1);
    auto all = oracle::all_invariant_subgroups(sp, ra.mats);
    ModuleVector v(m, {2, 0, 0});
    std::size_t expected = 0;
    for (const auto& s : all)
        if (s[sp.encode({2, 0, 0})] && oracle::count(s) * 4 == sp.size) ++expected;
    SubgroupConstraints c;
    c.contains = {v};
    auto one = enumerate_invariant_subgroups(ra.act, c);
    c.workers = 4;
    auto four = enumerate_invariant_subgroups(ra.act, c);
    CHECK(one == four);
    std::size_t index4 = 0;
    for (const auto& s : one)
        if (subgroup_order(s) * 4 == Integer(sp.size)) ++index4;
    CHECK(index4 == expected);
}

TEST_CASE("enumeration budget") {
    Modulus m(3);
    Action act(m, 8, {"x"}, {MatrixZk::identity(m, 8)});
    SubgroupConstraints c;
    c.quotient_invariants = std::vector<Integer>{Integer(9)};
    c.budget = 100;
    CHECK_THROWS_AS(enumerate_invariant_subgroups(act, c), Error);
}

TEST_CASE("induced quotient action") {
    Modulus m(4);
    // swap of two coordinates; N = <(1,1)> is invariant, M/N = Z4
    MatrixZk swap(m, 2, std::vector<std::vector<std::int64_t>>{{0, 1}, {1, 0}});
    Action act(m, 2, {"s"}, {swap});
    auto n = SubgroupBasis::span(m, 2, {ModuleVector(m, {1, 1})});
    auto qa = induced_quotient_action(act, n);
    CHECK(qa.module.moduli() == std::vector<Integer>{4});
    REQUIRE(qa.matrices.size() == 1);
    // (1,0) and (0,1) differ by (1,-1) = (1,1) - 2(0,1), so s acts as -1 on M/N
    CHECK(qa.matrices[0][0][0] == 3);
    auto bad = SubgroupBasis::span(m, 2, {ModuleVector(m, {1, 0})});
    CHECK_THROWS_AS(induced_quotient_action(act, bad), Error);
}
