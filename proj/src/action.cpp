#include "homolift/action.hpp"

#include "homolift/error.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace homolift {

namespace {

constexpr int kMaxIterations = 100000;
constexpr std::uint64_t kMaxIntegralOrder = 1000;

void check_compatible(const Action& act, const Modulus& m, std::size_t rank, const char* op) {
    if (!(act.modulus() == m)) throw Error(ErrorKind::modulus_mismatch, std::string(op) + ": modulus mismatch");
    if (act.rank() != rank) throw Error(ErrorKind::rank_mismatch, std::string(op) + ": rank mismatch");
}

// Over Z the fixed-point iterations are only meaningful for a finite group.
void require_finite_over_z(const Action& act, const char* op) {
    if (!act.modulus().is_integral()) return;
    for (std::size_t j = 0; j < act.generator_count(); ++j) {
        MatrixZk p = act.matrix(j);
        std::uint64_t e = 1;
        while (!p.is_identity() && e <= kMaxIntegralOrder) {
            p = p * act.matrix(j);
            ++e;
        }
        if (e > kMaxIntegralOrder)
            throw Error(ErrorKind::nonterminating,
                        std::string(op) + ": generator '" + act.names()[j] + "' has no finite order over Z");
    }
}

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

bool satisfies(const SubgroupBasis& s, const SubgroupConstraints& c) {
    if (c.quotient_invariants && quotient_invariants(s) != *c.quotient_invariants) return false;
    for (const auto& v : c.contains)
        if (!contains(s, v)) return false;
    for (const auto& v : c.excludes)
        if (contains(s, v)) return false;
    return true;
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

// Kernels of functionals Z_k^n -> Z_p, normalised with leading coefficient 1.
std::vector<SubgroupBasis> hyperplanes(const Action& act, std::int64_t p, const SubgroupConstraints& c) {
    const std::size_t n = act.rank();
    const std::int64_t k = act.modulus().value();
    const std::uint64_t total = (saturating_pow(p, n, UINT64_MAX / 2) - 1) / (p - 1);
    if (total > c.budget)
        throw Error(ErrorKind::budget_exceeded,
                    "enumeration needs " + std::to_string(total) + " candidates, budget " + std::to_string(c.budget),
                    total);

    // generator matrices reduced mod p, as machine integers
    std::vector<std::vector<std::vector<std::int64_t>>> mats;
    for (std::size_t j = 0; j < act.generator_count(); ++j) {
        std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t col = 0; col < n; ++col)
                m[r][col] = static_cast<std::int64_t>(act.matrix(j).at(r, col) % p);
        mats.push_back(std::move(m));
    }

    // ker(lambda) is A-invariant iff lambda*A is a multiple of lambda.
    auto eigen = [&](const std::vector<std::int64_t>& lambda) {
        for (const auto& m : mats) {
            std::vector<std::int64_t> mu(n, 0);
            for (std::size_t col = 0; col < n; ++col) {
                std::int64_t acc = 0;
                for (std::size_t r = 0; r < n; ++r) acc += lambda[r] * m[r][col];
                mu[col] = acc % p;
            }
            std::size_t lead = 0;
            while (lambda[lead] == 0) ++lead;
            std::int64_t scalar = mu[lead];  // lambda[lead] == 1
            for (std::size_t col = 0; col < n; ++col)
                if ((mu[col] - scalar * lambda[col]) % p != 0) return false;
        }
        return true;
    };

    // Candidate t in [0, total) decodes to (leading position, free tail digits).
    auto decode = [&](std::uint64_t t) {
        std::vector<std::int64_t> lambda(n, 0);
        std::size_t lead = 0;
        for (;; ++lead) {
            std::uint64_t block = saturating_pow(p, n - 1 - lead, UINT64_MAX / 2);
            if (t < block) break;
            t -= block;
        }
        lambda[lead] = 1;
        for (std::size_t i = n; i-- > lead + 1;) {
            lambda[i] = static_cast<std::int64_t>(t % p);
            t /= p;
        }
        return lambda;
    };

    auto work = [&](std::uint64_t begin, std::uint64_t end, std::vector<SubgroupBasis>& out) {
        for (std::uint64_t t = begin; t < end; ++t) {
            auto lambda = decode(t);
            if (!eigen(lambda)) continue;
            MatrixZk f(act.modulus(), 1, n);
            for (std::size_t i = 0; i < n; ++i) f.set(0, i, Integer(lambda[i]) * (k / p));
            SubgroupBasis s = kernel(f);
            if (satisfies(s, c)) out.push_back(std::move(s));
        }
    };

    unsigned workers = std::max(1u, c.workers);
    std::vector<std::vector<SubgroupBasis>> parts(workers);
    if (workers == 1) {
        work(0, total, parts[0]);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) {
            std::uint64_t b = total * w / workers, e = total * (w + 1) / workers;
            threads.emplace_back(work, b, e, std::ref(parts[w]));
        }
        for (auto& th : threads) th.join();
    }
    std::vector<SubgroupBasis> out;
    for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
    return out;
}

// All invariant subgroups as joins of the invariant closures of single elements.
std::vector<SubgroupBasis> join_closure(const Action& act, const SubgroupConstraints& c) {
    const std::size_t n = act.rank();
    const std::int64_t k = act.modulus().value();
    const std::uint64_t elements = saturating_pow(k, n, c.budget);
    if (elements > c.budget)
        throw Error(ErrorKind::budget_exceeded,
                    "enumeration needs more than " + std::to_string(c.budget) + " candidates", elements);
    std::set<SubgroupBasis> cyclic;
    std::vector<std::int64_t> digits(n, 0);
    for (std::uint64_t x = 0; x < elements; ++x) {
        cyclic.insert(minimal_invariant_subgroup(act, {ModuleVector(act.modulus(), digits)}));
        for (std::size_t i = 0; i < n && ++digits[i] == k; ++i) digits[i] = 0;
    }
    std::set<SubgroupBasis> all{SubgroupBasis(act.modulus(), n)};
    std::vector<SubgroupBasis> frontier(all.begin(), all.end());
    std::uint64_t sums = 0;
    while (!frontier.empty()) {
        std::vector<SubgroupBasis> next;
        for (const auto& s : frontier)
            for (const auto& g : cyclic) {
                if (contains(s, g)) continue;
                if (++sums > c.budget)
                    throw Error(ErrorKind::budget_exceeded, "invariant subgroup joins exceed the budget", sums);
                SubgroupBasis j = subgroup_sum(s, g);
                if (all.insert(j).second) next.push_back(j);
                if (all.size() > c.budget)
                    throw Error(ErrorKind::budget_exceeded, "invariant subgroup lattice exceeds the budget",
                                all.size());
            }
        frontier.swap(next);
    }
    std::vector<SubgroupBasis> out;
    for (const auto& s : all)
        if (satisfies(s, c)) out.push_back(s);
    return out;
}

}  // namespace

Action::Action(Modulus modulus, std::size_t rank, std::vector<std::string> names, std::vector<MatrixZk> matrices)
    : modulus_(modulus), rank_(rank), names_(std::move(names)), matrices_(std::move(matrices)) {
    if (names_.size() != matrices_.size())
        throw Error(ErrorKind::invalid_params, "action: name count differs from matrix count");
    for (std::size_t j = 0; j < matrices_.size(); ++j) {
        const auto& m = matrices_[j];
        if (!(m.modulus() == modulus_)) throw Error(ErrorKind::modulus_mismatch, "action: matrix modulus mismatch");
        if (m.rows() != rank_ || m.cols() != rank_)
            throw Error(ErrorKind::dimension_mismatch, "action: matrix for '" + names_[j] + "' is not " +
                                                           std::to_string(rank_) + "x" + std::to_string(rank_));
        auto inv = m.inverse();
        if (!inv) throw Error(ErrorKind::validation_error, "action: matrix for '" + names_[j] + "' is not invertible");
        inverses_.push_back(std::move(*inv));
    }
}

std::optional<std::size_t> Action::generator_index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

MatrixZk Action::evaluate(const Word& w) const {
    MatrixZk r = MatrixZk::identity(modulus_, rank_);
    for (const auto& l : w) r = r * (l.inverse ? inverses_.at(l.generator) : matrices_.at(l.generator));
    return r;
}

ModuleVector Action::apply(const Word& w, const ModuleVector& v) const {
    ModuleVector r = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        r = (it->inverse ? inverses_.at(it->generator) : matrices_.at(it->generator)) * r;
    return r;
}

bool is_invariant(const Action& act, const SubgroupBasis& s) {
    check_compatible(act, s.modulus(), s.rank(), "is_invariant");
    for (std::size_t j = 0; j < act.generator_count(); ++j) {
        if (image(act.matrix(j), s) != s) return false;
        if (act.modulus().is_integral() && image(act.inverse(j), s) != s) return false;
    }
    return true;
}

SubgroupBasis minimal_invariant_subgroup(const Action& act, const std::vector<ModuleVector>& gens) {
    for (const auto& g : gens) {
        if (!(g.modulus() == act.modulus())) throw Error(ErrorKind::modulus_mismatch, "minimal_invariant_subgroup");
        if (g.size() != act.rank()) throw Error(ErrorKind::rank_mismatch, "minimal_invariant_subgroup");
    }
    require_finite_over_z(act, "minimal_invariant_subgroup");
    SubgroupBasis s = SubgroupBasis::span(act.modulus(), act.rank(), gens);
    for (int it = 0; it < kMaxIterations; ++it) {
        std::vector<ModuleVector> rows = s.rows();
        for (std::size_t j = 0; j < act.generator_count(); ++j)
            for (const auto& r : s.rows()) {
                rows.push_back(act.matrix(j) * r);
                rows.push_back(act.inverse(j) * r);
            }
        SubgroupBasis next = SubgroupBasis::span(act.modulus(), act.rank(), rows);
        if (next == s) return s;
        s = std::move(next);
    }
    throw Error(ErrorKind::nonterminating, "minimal_invariant_subgroup: iteration limit reached");
}

SubgroupBasis core(const Action& act, const SubgroupBasis& n1) {
    check_compatible(act, n1.modulus(), n1.rank(), "core");
    require_finite_over_z(act, "core");
    SubgroupBasis s = n1;
    for (int it = 0; it < kMaxIterations; ++it) {
        SubgroupBasis next = s;
        for (std::size_t j = 0; j < act.generator_count(); ++j) {
            next = subgroup_intersect(next, image(act.matrix(j), s));
            next = subgroup_intersect(next, image(act.inverse(j), s));
        }
        if (next == s) return s;
        s = std::move(next);
    }
    throw Error(ErrorKind::nonterminating, "core: iteration limit reached");
}

QuotientAction induced_quotient_action(const Action& act, const SubgroupBasis& n) {
    check_compatible(act, n.modulus(), n.rank(), "induced_quotient_action");
    if (!is_invariant(act, n))
        throw Error(ErrorKind::not_invariant, "induced_quotient_action: subgroup is not invariant");
    QuotientAction q{QuotientModule(n), {}};
    for (std::size_t j = 0; j < act.generator_count(); ++j) q.matrices.push_back(q.module.induced(act.matrix(j)));
    return q;
}

std::vector<SubgroupBasis> enumerate_invariant_subgroups(const Action& act, const SubgroupConstraints& c) {
    if (act.modulus().is_integral())
        throw Error(ErrorKind::invalid_params, "enumerate_invariant_subgroups requires a finite modulus");
    for (const auto* list : {&c.contains, &c.excludes})
        for (const auto& v : *list) {
            if (!(v.modulus() == act.modulus())) throw Error(ErrorKind::modulus_mismatch, "constraint vector");
            if (v.size() != act.rank()) throw Error(ErrorKind::rank_mismatch, "constraint vector");
        }
    std::vector<SubgroupBasis> out;
    const auto& qi = c.quotient_invariants;
    if (qi && qi->size() == 1 && (*qi)[0] <= INT64_MAX && is_prime(static_cast<std::int64_t>((*qi)[0]))) {
        std::int64_t p = static_cast<std::int64_t>((*qi)[0]);
        if (act.modulus().value() % p == 0) out = hyperplanes(act, p, c);
    } else if (qi && qi->empty()) {
        SubgroupBasis full = SubgroupBasis::full(act.modulus(), act.rank());
        if (satisfies(full, c)) out.push_back(full);
    } else {
        out = join_closure(act, c);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace homolift
