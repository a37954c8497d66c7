#include "homolift/group.hpp"

#include "homolift/error.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>

namespace homolift {

namespace {

constexpr std::size_t kTableLimit = 4096;

Permutation compose(const Permutation& p, const Permutation& q) {
    // (p q)(x) = p(q(x))
    Permutation r(q.size());
    for (std::size_t x = 0; x < q.size(); ++x) r[x] = p[q[x]];
    return r;
}

Permutation invert(const Permutation& p) {
    Permutation r(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) r[p[x]] = static_cast<std::uint32_t>(x);
    return r;
}

Permutation identity_perm(std::size_t d) {
    Permutation p(d);
    std::iota(p.begin(), p.end(), 0u);
    return p;
}

}  // namespace

// ---------------------------------------------------------------- GroupOps

std::size_t GroupOps::power(std::size_t a, std::uint64_t e) const {
    std::size_t r = identity(), b = a;
    while (e) {
        if (e & 1) r = multiply(r, b);
        e >>= 1;
        if (e) b = multiply(b, b);
    }
    return r;
}

std::size_t GroupOps::element_order(std::size_t a) const {
    std::size_t o = 1, x = a;
    while (x != identity()) {
        x = multiply(x, a);
        ++o;
    }
    return o;
}

// ---------------------------------------------------------------- permutations

Permutation parse_permutation(const std::string& text, std::size_t degree) {
    auto fail = [&](const std::string& why) {
        throw Error(ErrorKind::parse_error, "permutation '" + text + "': " + why);
    };
    std::vector<std::vector<std::size_t>> cycles;
    std::vector<std::size_t> images;
    bool list_form = false;
    std::size_t i = 0;
    auto read_number = [&]() {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) fail("expected a point");
        std::size_t v = std::stoul(text.substr(start, i - start));
        if (v == 0) fail("points are numbered from 1");
        return v - 1;
    };
    if (!text.empty() && text[0] == '[') {
        list_form = true;
        i = 1;
        while (i < text.size() && text[i] != ']') {
            images.push_back(read_number());
            if (i < text.size() && text[i] == ',') ++i;
        }
        if (i >= text.size()) fail("missing ']'");
        ++i;
    } else {
        while (i < text.size()) {
            if (text[i] != '(') fail("expected '('");
            ++i;
            std::vector<std::size_t> cyc;
            if (i < text.size() && text[i] == ')') {
                ++i;
                continue;
            }
            for (;;) {
                cyc.push_back(read_number());
                if (i < text.size() && text[i] == ',') {
                    ++i;
                    continue;
                }
                if (i < text.size() && text[i] == ')') {
                    ++i;
                    break;
                }
                fail("expected ',' or ')'");
            }
            cycles.push_back(std::move(cyc));
        }
    }
    if (i != text.size()) fail("trailing characters");

    std::size_t d = degree;
    if (list_form) {
        d = std::max(d, images.size());
        for (auto v : images) d = std::max(d, v + 1);
        Permutation p = identity_perm(d);
        std::vector<bool> hit(d, false);
        for (std::size_t x = 0; x < images.size(); ++x) p[x] = static_cast<std::uint32_t>(images[x]);
        for (auto v : p) {
            if (hit[v]) fail("not a bijection");
            hit[v] = true;
        }
        return p;
    }
    for (const auto& c : cycles)
        for (auto v : c) d = std::max(d, v + 1);
    Permutation p = identity_perm(d);
    std::vector<bool> seen(d, false);
    for (const auto& c : cycles) {
        for (auto v : c) {
            if (seen[v]) fail("point repeated across cycles");
            seen[v] = true;
        }
        for (std::size_t t = 0; t < c.size(); ++t) p[c[t]] = static_cast<std::uint32_t>(c[(t + 1) % c.size()]);
    }
    return p;
}

std::string format_permutation(const Permutation& p) {
    std::string out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (seen[x] || p[x] == x) continue;
        out += '(';
        std::size_t y = x;
        bool first = true;
        while (!seen[y]) {
            seen[y] = true;
            if (!first) out += ',';
            out += std::to_string(y + 1);
            first = false;
            y = p[y];
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<Permutation> gens, std::vector<Word> relators,
                         std::size_t max_order)
    : names_(std::move(names)), gens_(std::move(gens)), relators_(std::move(relators)) {
    if (names_.size() != gens_.size()) throw Error(ErrorKind::invalid_params, "group: name count differs from generators");
    std::size_t d = 0;
    for (const auto& g : gens_) d = std::max(d, g.size());
    for (auto& g : gens_) {
        std::size_t old = g.size();
        g.resize(d);
        for (std::size_t x = old; x < d; ++x) g[x] = static_cast<std::uint32_t>(x);
    }
    const std::size_t ng = names_.size();

    elements_.push_back(identity_perm(d));
    index_[elements_[0]] = 0;
    parent_.push_back(0);
    tree_gen_.push_back(0);
    words_.emplace_back();
    for (std::size_t head = 0; head < elements_.size(); ++head) {
        for (std::size_t j = 0; j < ng; ++j) {
            Permutation y = compose(elements_[head], gens_[j]);
            auto [it, fresh] = index_.emplace(y, elements_.size());
            if (fresh) {
                if (elements_.size() >= max_order)
                    throw Error(ErrorKind::group_too_large,
                                "group exceeds the order bound " + std::to_string(max_order), max_order);
                elements_.push_back(std::move(y));
                parent_.push_back(head);
                tree_gen_.push_back(j);
                Word w = words_[head];
                w.push_back(Letter{j, false});
                words_.push_back(std::move(w));
            }
            right_.push_back(it->second);
        }
    }
    const std::size_t n = elements_.size();
    right_inv_.assign(n * ng, 0);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < ng; ++j) right_inv_[right_[l * ng + j] * ng + j] = l;
    for (std::size_t j = 0; j < ng; ++j) generator_elements_.push_back(right_[j]);
    inverse_.resize(n);
    for (std::size_t l = 0; l < n; ++l) inverse_[l] = index_of(invert(elements_[l]));

    for (std::size_t r = 0; r < relators_.size(); ++r)
        if (evaluate(relators_[r]) != 0)
            throw Error(ErrorKind::relator_violated,
                        "relator " + std::to_string(r + 1) + " (" + format_word(relators_[r], names_) +
                            ") is not the identity on the permutation generators",
                        r);

    if (n <= kTableLimit) {
        table_.assign(n * n, 0);
        for (std::size_t a = 0; a < n; ++a) {
            table_[a * n] = static_cast<std::uint32_t>(a);
            for (std::size_t b = 1; b < n; ++b)
                table_[a * n + b] = static_cast<std::uint32_t>(right(table_[a * n + parent_[b]], tree_gen_[b]));
        }
    }
}

std::size_t FiniteGroup::multiply(std::size_t a, std::size_t b) const {
    const std::size_t n = elements_.size();
    if (!table_.empty()) return table_[a * n + b];
    std::size_t x = a;
    for (const auto& l : words_.at(b)) x = right(x, l.generator);
    return x;
}

std::size_t FiniteGroup::index_of(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw Error(ErrorKind::invalid_params, "permutation is not in the group");
    return it->second;
}

std::size_t FiniteGroup::evaluate(const Word& w) const {
    std::size_t x = 0;
    for (const auto& l : w) {
        if (l.generator >= names_.size()) throw Error(ErrorKind::invalid_params, "word uses an unknown generator");
        x = l.inverse ? right_inverse(x, l.generator) : right(x, l.generator);
    }
    return x;
}

// ---------------------------------------------------------------- coset enumeration

CosetResult coset_enumerate(const Presentation& pres, std::uint64_t budget) {
    const std::size_t ng = pres.generators;
    const std::size_t cols = 2 * ng;  // column 2j: g_j, column 2j+1: g_j^{-1}
    auto col_of = [](const Letter& l) { return 2 * l.generator + (l.inverse ? 1 : 0); };
    auto inv_col = [](std::size_t c) { return c ^ 1u; };
    constexpr std::int64_t undef = -1;

    std::vector<std::vector<std::int64_t>> rels;
    for (const auto& w : pres.relators) {
        std::vector<std::int64_t> r;
        for (const auto& l : w) {
            if (l.generator >= ng) throw Error(ErrorKind::invalid_params, "relator uses an unknown generator");
            r.push_back(static_cast<std::int64_t>(col_of(l)));
        }
        if (!r.empty()) rels.push_back(std::move(r));
    }

    std::vector<std::vector<std::int64_t>> table;
    std::vector<std::size_t> parent;
    CosetResult result;
    auto define = [&](std::size_t c, std::size_t x) {
        std::size_t d = table.size();
        table.emplace_back(cols, undef);
        parent.push_back(d);
        ++result.cosets_defined;
        table[c][x] = static_cast<std::int64_t>(d);
        table[d][inv_col(x)] = static_cast<std::int64_t>(c);
    };
    auto rep = [&](std::size_t c) {
        std::size_t r = c;
        while (parent[r] != r) r = parent[r];
        while (parent[c] != r) {
            std::size_t next = parent[c];
            parent[c] = r;
            c = next;
        }
        return r;
    };
    std::deque<std::size_t> queue;
    auto merge = [&](std::size_t a, std::size_t b) {
        std::size_t ra = rep(a), rb = rep(b);
        if (ra == rb) return;
        if (ra > rb) std::swap(ra, rb);
        parent[rb] = ra;
        queue.push_back(rb);
    };
    auto coincidence = [&](std::size_t a, std::size_t b) {
        merge(a, b);
        while (!queue.empty()) {
            std::size_t e = queue.front();
            queue.pop_front();
            for (std::size_t x = 0; x < cols; ++x) {
                if (table[e][x] == undef) continue;
                std::size_t f = static_cast<std::size_t>(table[e][x]);
                table[f][inv_col(x)] = undef;
                std::size_t e1 = rep(e), f1 = rep(f);
                if (table[e1][x] != undef) {
                    merge(f1, static_cast<std::size_t>(table[e1][x]));
                } else if (table[f1][inv_col(x)] != undef) {
                    merge(e1, static_cast<std::size_t>(table[f1][inv_col(x)]));
                } else {
                    table[e1][x] = static_cast<std::int64_t>(f1);
                    table[f1][inv_col(x)] = static_cast<std::int64_t>(e1);
                }
            }
        }
    };
    auto scan_and_fill = [&](std::size_t c, const std::vector<std::int64_t>& w) {
        std::size_t f = c, b = c;
        std::int64_t i = 0, j = static_cast<std::int64_t>(w.size()) - 1;
        for (;;) {
            while (i <= j && table[f][w[i]] != undef) f = static_cast<std::size_t>(table[f][w[i++]]);
            if (i > j) {
                if (f != b) coincidence(f, b);
                return;
            }
            while (j >= i && table[b][inv_col(w[j])] != undef) b = static_cast<std::size_t>(table[b][inv_col(w[j--])]);
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                table[f][w[i]] = static_cast<std::int64_t>(b);
                table[b][inv_col(w[i])] = static_cast<std::int64_t>(f);
                return;
            }
            if (result.cosets_defined >= budget) throw Error(ErrorKind::budget_exceeded, "", result.cosets_defined);
            define(f, static_cast<std::size_t>(w[i]));
        }
    };

    table.emplace_back(cols, undef);
    parent.push_back(0);
    result.cosets_defined = 1;
    try {
        for (std::size_t c = 0; c < table.size(); ++c) {
            for (const auto& w : rels) {
                if (rep(c) != c) break;
                scan_and_fill(c, w);
            }
            if (rep(c) != c) continue;
            for (std::size_t x = 0; x < cols; ++x) {
                if (table[c][x] != undef) continue;
                if (result.cosets_defined >= budget) throw Error(ErrorKind::budget_exceeded, "", result.cosets_defined);
                define(c, x);
            }
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::budget_exceeded) throw;
        result.decided = false;
        return result;
    }
    std::uint64_t live = 0;
    for (std::size_t c = 0; c < table.size(); ++c)
        if (parent[c] == c) ++live;
    result.decided = true;
    result.order = live;
    return result;
}

// ---------------------------------------------------------------- subgroups

std::vector<std::size_t> subgroup_closure(const GroupOps& g, const std::vector<std::size_t>& gens) {
    std::vector<char> in(g.order(), 0);
    std::vector<std::size_t> members{g.identity()};
    in[g.identity()] = 1;
    for (std::size_t head = 0; head < members.size(); ++head)
        for (auto s : gens) {
            std::size_t y = g.multiply(members[head], s);
            if (!in[y]) {
                in[y] = 1;
                members.push_back(y);
            }
        }
    std::sort(members.begin(), members.end());
    return members;
}

SubgroupView::SubgroupView(const GroupOps& parent, const std::vector<std::size_t>& gens) : parent_(parent) {
    std::vector<std::size_t> sorted = subgroup_closure(parent, gens);
    // identity first so that local index 0 is the identity
    members_.push_back(parent.identity());
    for (auto x : sorted)
        if (x != parent.identity()) members_.push_back(x);
    for (std::size_t i = 0; i < members_.size(); ++i) local_[members_[i]] = i;
    for (auto g : gens) gens_.push_back(local_.at(g));
}

std::size_t SubgroupView::multiply(std::size_t a, std::size_t b) const {
    return local_.at(parent_.multiply(members_.at(a), members_.at(b)));
}

std::size_t SubgroupView::inverse(std::size_t a) const { return local_.at(parent_.inverse(members_.at(a))); }

}  // namespace homolift
