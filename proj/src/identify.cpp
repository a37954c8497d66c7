#include "homolift/identify.hpp"

#include "homolift/error.hpp"

#include <algorithm>
#include <sstream>

namespace homolift {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

// Invariant factors of an abelian group given its element-order histogram.
std::vector<std::uint64_t> invariants_from_histogram(const std::map<std::uint64_t, std::uint64_t>& hist) {
    std::uint64_t total = 0;
    for (const auto& [o, c] : hist) total += c;
    // exponents[p] = p-primary cyclic factor exponents, descending
    std::vector<std::vector<std::uint64_t>> primary;
    std::vector<std::uint64_t> primes = prime_factors(total);
    for (auto p : primes) {
        // s[e] = log_p |A[p^e]|
        std::vector<std::uint64_t> s{0};
        for (std::uint64_t pe = p;; pe *= p) {
            std::uint64_t c = 0;
            for (const auto& [o, cnt] : hist)
                if (pe % o == 0) c += cnt;
            std::uint64_t lg = 0;
            for (std::uint64_t x = c; x > 1; x /= p) ++lg;
            s.push_back(lg);
            if (s.back() == s[s.size() - 2]) break;
        }
        std::vector<std::uint64_t> exps;
        for (std::size_t e = 1; e < s.size(); ++e) {
            std::uint64_t at_least = s[e] - s[e - 1];
            std::uint64_t at_least_next = e + 1 < s.size() ? s[e + 1] - s[e] : 0;
            for (std::uint64_t i = 0; i < at_least - at_least_next; ++i) exps.push_back(e);
        }
        std::sort(exps.rbegin(), exps.rend());
        primary.push_back(exps);
    }
    std::size_t width = 0;
    for (const auto& e : primary) width = std::max(width, e.size());
    std::vector<std::uint64_t> out(width, 1);
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t t = 0; t < primary[i].size(); ++t)
            for (std::uint64_t e = 0; e < primary[i][t]; ++e) out[t] *= primes[i];
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<char> membership(std::size_t order, const std::vector<std::size_t>& members) {
    std::vector<char> in(order, 0);
    for (auto x : members) in[x] = 1;
    return in;
}

std::vector<std::size_t> derived_subgroup(const GroupOps& g) {
    const auto gens = g.generators();
    std::vector<std::size_t> s;
    for (auto a : gens)
        for (auto b : gens) {
            std::size_t c = g.multiply(g.multiply(a, b), g.multiply(g.inverse(a), g.inverse(b)));
            if (c != g.identity()) s.push_back(c);
        }
    for (;;) {
        auto members = subgroup_closure(g, s);
        auto in = membership(g.order(), members);
        bool changed = false;
        const std::size_t count = s.size();
        for (std::size_t i = 0; i < count; ++i)
            for (auto x : gens) {
                std::size_t c = g.multiply(g.multiply(x, s[i]), g.inverse(x));
                if (!in[c]) {
                    s.push_back(c);
                    in[c] = 1;
                    changed = true;
                }
            }
        if (!changed) return members;
    }
}

std::uint64_t count_of(const std::map<std::uint64_t, std::uint64_t>& hist, std::uint64_t o) {
    auto it = hist.find(o);
    return it == hist.end() ? 0 : it->second;
}

std::optional<std::string> recognize(const Fingerprint& f) {
    const std::uint64_t n = f.order;
    const std::uint64_t involutions = count_of(f.order_histogram, 2);
    if (f.derived_order == 1) return format_abelian(f.abelian_invariants);
    if (n == 6) return "S3";
    if (n == 8) {
        if (involutions == 5) return "D4";
        if (involutions == 1) return "Q8";
    }
    if (n == 12) {
        if (f.center_order == 1 && f.derived_order == 4) return "A4";
        if (involutions == 7) return "D6";
        if (involutions == 1) return "Dic3";
    }
    if (n == 16 && count_of(f.order_histogram, 8) > 0) {
        switch (involutions) {
            case 9: return "D8";
            case 5: return "SD16";
            case 3: return "M4(2)";
            case 1: return "Q16";
            default: break;
        }
    }
    if (n == 24 && f.center_order == 1 && f.derived_order == 12) return "S4";
    if (n == 60 && f.derived_order == 60) return "A5";
    return std::nullopt;
}

}  // namespace

std::string format_abelian(const std::vector<std::uint64_t>& invariants) {
    std::vector<std::uint64_t> v;
    for (auto d : invariants)
        if (d != 1) v.push_back(d);
    if (v.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        if (i > 0) os << " x ";
        os << 'Z' << v[i];
        if (j - i > 1) os << '^' << (j - i);
        i = j;
    }
    return os.str();
}

std::vector<std::uint64_t> abelian_invariants(const GroupOps& g) {
    std::map<std::uint64_t, std::uint64_t> hist;
    for (std::size_t x = 0; x < g.order(); ++x) ++hist[g.element_order(x)];
    return invariants_from_histogram(hist);
}

std::size_t derived_subgroup_order(const GroupOps& g) { return derived_subgroup(g).size(); }

std::size_t center_order(const GroupOps& g) {
    const auto gens = g.generators();
    std::size_t c = 0;
    for (std::size_t x = 0; x < g.order(); ++x) {
        bool central = true;
        for (auto s : gens)
            if (g.multiply(x, s) != g.multiply(s, x)) {
                central = false;
                break;
            }
        if (central) ++c;
    }
    return c;
}

bool Fingerprint::same_invariants(const Fingerprint& o) const {
    return order == o.order && abelian_invariants == o.abelian_invariants && order_histogram == o.order_histogram &&
           center_order == o.center_order && derived_order == o.derived_order;
}

std::string Fingerprint::to_string() const {
    std::ostringstream os;
    os << "order=" << order << " abelianization=[";
    for (std::size_t i = 0; i < abelian_invariants.size(); ++i) os << (i ? "," : "") << abelian_invariants[i];
    os << "] orders={";
    bool first = true;
    for (const auto& [o, c] : order_histogram) {
        os << (first ? "" : ",") << o << ':' << c;
        first = false;
    }
    os << "} center=" << center_order << " derived=" << derived_order;
    if (split) os << " split=" << (*split ? "yes" : "no");
    if (name) os << " name=" << *name;
    return os.str();
}

Fingerprint identify(const GroupOps& g, std::uint64_t budget) {
    if (g.order() > budget) throw Error(ErrorKind::budget_exceeded, "identify: group order exceeds the budget", g.order());
    Fingerprint f;
    f.order = g.order();
    for (std::size_t x = 0; x < g.order(); ++x) ++f.order_histogram[g.element_order(x)];
    f.center_order = center_order(g);

    auto derived = derived_subgroup(g);
    f.derived_order = derived.size();
    // G/[G,G]: element orders of cosets
    auto in = membership(g.order(), derived);
    std::vector<char> seen(g.order(), 0);
    std::map<std::uint64_t, std::uint64_t> qhist;
    for (std::size_t x = 0; x < g.order(); ++x) {
        if (seen[x]) continue;
        for (auto d : derived) seen[g.multiply(x, d)] = 1;
        std::uint64_t t = 1;
        for (std::size_t y = x; !in[y]; y = g.multiply(y, x)) ++t;
        ++qhist[t];
    }
    f.abelian_invariants = invariants_from_histogram(qhist);
    f.name = recognize(f);
    return f;
}

Fingerprint identify(const ExtGroup& g, std::optional<bool> split, std::uint64_t budget) {
    Fingerprint f = identify(static_cast<const GroupOps&>(g), budget);
    f.split = split;
    if (!f.name && split && *split) {
        std::vector<std::uint64_t> k;
        for (auto d : g.moduli()) k.push_back(static_cast<std::uint64_t>(d));
        Fingerprint base = identify(static_cast<const GroupOps&>(g.base()), budget);
        std::string lname = base.name ? *base.name : "L" + std::to_string(base.order);
        f.name = format_abelian(k) + " : " + lname;
    }
    return f;
}

}  // namespace homolift
