#include "test_util.hpp"

#include "oracles.hpp"

#include <set>

using namespace homolift;

namespace test_util {

namespace {

oracle::ElemSet to_set(const oracle::Space& sp, const SubgroupBasis& s) {
    std::vector<oracle::Vec> gens;
    for (const auto& r : s.rows()) {
        oracle::Vec v;
        for (const auto& c : r.coords()) v.push_back(static_cast<std::int64_t>(c));
        gens.push_back(v);
    }
    return oracle::span_vecs(sp, gens);
}

ModuleVector to_vector(Modulus m, const oracle::Vec& v) { return ModuleVector(m, v); }

std::vector<std::size_t> random_elements(std::mt19937& rng, std::size_t size, std::size_t count) {
    std::uniform_int_distribution<std::size_t> d(0, size - 1);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(d(rng));
    return out;
}

std::vector<ModuleVector> decode_all(const oracle::Space& sp, Modulus m, const std::vector<std::size_t>& xs) {
    std::vector<ModuleVector> out;
    for (auto x : xs) out.push_back(to_vector(m, sp.decode(x)));
    return out;
}

CaseResult fail(const std::string& what, std::int64_t k, std::size_t n) {
    return {false, what + " (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")"};
}

}  // namespace

ModuleVector unit(Modulus m, std::size_t n, std::size_t i) { return ModuleVector::unit(m, n, i); }

CaseResult howell_case(std::mt19937& rng) {
    std::int64_t k = std::uniform_int_distribution<std::int64_t>(2, 6)(rng);
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    std::size_t rows = std::uniform_int_distribution<std::size_t>(0, 5)(rng);
    Modulus m(k);
    oracle::Space sp(k, n);
    auto g1 = random_elements(rng, sp.size, rows);
    auto s1 = SubgroupBasis::span(m, n, decode_all(sp, m, g1));
    auto set1 = oracle::span(sp, g1);
    if (to_set(sp, s1) != set1) return fail("canonical basis changes the span", k, n);
    if (howell_form(s1.matrix()) != s1) return fail("normal form is not idempotent", k, n);
    if (subgroup_order(s1) != oracle::count(set1)) return fail("subgroup order disagrees with enumeration", k, n);

    // Another generating set of the same subgroup, drawn from its elements.
    auto elems = oracle::members(set1);
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    std::vector<std::size_t> g2;
    while (oracle::span(sp, g2) != set1) g2.push_back(elems[pick(rng)]);
    for (std::size_t extra = pick(rng) % 3; extra > 0; --extra) g2.push_back(elems[pick(rng)]);
    std::shuffle(g2.begin(), g2.end(), rng);
    if (SubgroupBasis::span(m, n, decode_all(sp, m, g2)) != s1)
        return fail("equal spans gave different normal forms", k, n);

    // An unrelated generating set: forms agree exactly when spans agree.
    auto g3 = random_elements(rng, sp.size, rows);
    bool same_span = oracle::span(sp, g3) == set1;
    bool same_form = SubgroupBasis::span(m, n, decode_all(sp, m, g3)) == s1;
    if (same_span != same_form) return fail("form equality does not track span equality", k, n);
    return {};
}

CaseResult solve_case(std::mt19937& rng) {
    std::int64_t k = std::uniform_int_distribution<std::int64_t>(2, 6)(rng);
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    std::size_t rows = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    Modulus m(k);
    oracle::Space sx(k, n), sb(k, rows);
    std::uniform_int_distribution<std::int64_t> entry(0, k - 1);
    std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(n));
    for (auto& r : a)
        for (auto& x : r) x = entry(rng);
    MatrixZk am(m, n, a);
    auto apply = [&](const oracle::Vec& x) {
        oracle::Vec out(rows, 0);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < n; ++j) out[i] = (out[i] + a[i][j] * x[j]) % k;
        return out;
    };
    oracle::Vec b;
    if (rng() % 2) {
        b = apply(sx.decode(random_elements(rng, sx.size, 1)[0]));
    } else {
        b = sb.decode(random_elements(rng, sb.size, 1)[0]);
    }
    std::size_t solutions = 0;
    for (std::size_t x = 0; x < sx.size; ++x)
        if (apply(sx.decode(x)) == b) ++solutions;
    auto sol = solve_linear(am, ModuleVector(m, b));
    if (!sol) return solutions == 0 ? CaseResult{} : fail("missed a solvable system", k, n);
    if (solutions == 0) return fail("claimed a solution for an unsolvable system", k, n);
    if (am * sol->particular != ModuleVector(m, b)) return fail("particular solution is wrong", k, n);
    for (const auto& r : sol->kernel.rows())
        if (!(am * r).is_zero()) return fail("kernel row not in kernel", k, n);
    if (subgroup_order(sol->kernel) != solutions) return fail("kernel size differs from solution count", k, n);
    return {};
}

CaseResult lattice_case(std::mt19937& rng) {
    std::int64_t k = std::uniform_int_distribution<std::int64_t>(2, 6)(rng);
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    Modulus m(k);
    oracle::Space sp(k, n);
    auto g1 = random_elements(rng, sp.size, std::uniform_int_distribution<std::size_t>(0, 3)(rng));
    auto g2 = random_elements(rng, sp.size, std::uniform_int_distribution<std::size_t>(0, 3)(rng));
    auto s1 = SubgroupBasis::span(m, n, decode_all(sp, m, g1));
    auto s2 = SubgroupBasis::span(m, n, decode_all(sp, m, g2));
    auto e1 = oracle::span(sp, g1), e2 = oracle::span(sp, g2);
    oracle::ElemSet meet(sp.size), join(sp.size, 0);
    for (std::size_t i = 0; i < sp.size; ++i) meet[i] = e1[i] && e2[i];
    for (auto a : oracle::members(e1))
        for (auto b : oracle::members(e2)) join[sp.add(a, b)] = 1;
    if (to_set(sp, subgroup_intersect(s1, s2)) != meet) return fail("intersection wrong", k, n);
    if (to_set(sp, subgroup_sum(s1, s2)) != join) return fail("sum wrong", k, n);
    for (std::size_t x = 0; x < sp.size; ++x)
        if (contains(s1, ModuleVector(m, sp.decode(x))) != static_cast<bool>(e1[x]))
            return fail("membership wrong", k, n);

    auto inv = quotient_invariants(s1);
    Integer prod = 1;
    for (const auto& d : inv) prod *= d;
    if (prod * subgroup_order(s1) != Integer(sp.size)) return fail("|s| * |M/s| != k^n", k, n);
    for (std::size_t i = 1; i < inv.size(); ++i)
        if (inv[i] % inv[i - 1] != 0) return fail("invariants not in divisibility order", k, n);
    // The number of cosets killed by d pins down the isomorphism type.
    for (std::int64_t d = 1; d <= k; ++d) {
        if (k % d) continue;
        std::size_t killed = 0;
        for (std::size_t x = 0; x < sp.size; ++x) {
            std::size_t y = 0;
            for (std::int64_t t = 0; t < d; ++t) y = sp.add(y, x);
            if (e1[y]) ++killed;
        }
        Integer expect = 1;
        for (const auto& di : inv) expect *= gcd(Integer(d), di);
        if (Integer(killed) != expect * subgroup_order(s1)) return fail("quotient invariants wrong", k, n);
    }
    return {};
}

std::vector<SubgroupBasis> all_subgroups(std::int64_t k, std::size_t n) {
    Modulus m(k);
    oracle::Space sp(k, n);
    std::set<SubgroupBasis> found;
    std::vector<std::size_t> idx(n, 0);
    // every subgroup of Z_k^n is generated by at most n elements
    for (;;) {
        found.insert(SubgroupBasis::span(m, n, decode_all(sp, m, idx)));
        std::size_t i = 0;
        while (i < n && ++idx[i] == sp.size) idx[i++] = 0;
        if (i == n) break;
    }
    return {found.begin(), found.end()};
}

}  // namespace test_util

namespace test_util {

MatrixZk random_invertible(std::mt19937& rng, std::int64_t k, std::size_t n) {
    Modulus m(k);
    MatrixZk a = MatrixZk::identity(m, n);
    if (n < 2) return a;
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<std::int64_t> coef(1, k - 1);
    for (std::size_t step = 0; step < 3 * n; ++step) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) continue;
        MatrixZk e = MatrixZk::identity(m, n);
        e.set(i, j, Integer(coef(rng)));
        a = e * a;
    }
    return a;
}

MatrixZk random_order_matrix(std::mt19937& rng, std::int64_t k, std::size_t n, std::int64_t l) {
    Modulus m(k);
    MatrixZk c(m, n, n);
    std::size_t pos = 0;
    std::vector<std::int64_t> lengths;
    for (std::int64_t d = 1; d <= l; ++d)
        if (l % d == 0) lengths.push_back(d);
    while (pos < n) {
        const std::size_t room = n - pos;
        if (l % 3 == 0 && room >= 2 && rng() % 3 == 0) {
            // companion of x^2 + x + 1: e0 -> e1 -> -e0 - e1
            c.set(pos + 1, pos, Integer(1));
            c.set(pos, pos + 1, Integer(-1));
            c.set(pos + 1, pos + 1, Integer(-1));
            pos += 2;
            continue;
        }
        std::vector<std::int64_t> fit;
        for (auto d : lengths)
            if (static_cast<std::size_t>(d) <= room) fit.push_back(d);
        const auto d = static_cast<std::size_t>(fit[rng() % fit.size()]);
        // a d-cycle, optionally with one sign flip when that keeps the order dividing l
        const bool flip = (l % (2 * static_cast<std::int64_t>(d)) == 0) && rng() % 2;
        for (std::size_t t = 0; t < d; ++t) c.set(pos + (t + 1) % d, pos + t, Integer(flip && t == 0 ? -1 : 1));
        pos += d;
    }
    MatrixZk p = random_invertible(rng, k, n);
    return p * c * *p.inverse();
}

std::vector<std::vector<std::int64_t>> to_rows(const MatrixZk& m) {
    std::vector<std::vector<std::int64_t>> out(m.rows(), std::vector<std::int64_t>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = static_cast<std::int64_t>(m.at(i, j));
    return out;
}

}  // namespace test_util
