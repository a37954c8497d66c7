#include "homolift/extension.hpp"

#include "homolift/error.hpp"

#include <limits>
#include <random>

namespace homolift {

namespace {

using Mat64 = std::vector<std::vector<std::int64_t>>;

std::int64_t mod_reduce(__int128 x, std::int64_t d) {
    __int128 r = x % d;
    if (r < 0) r += d;
    return static_cast<std::int64_t>(r);
}

QVec to_qvec(const std::vector<Integer>& v) {
    QVec out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_int64(x));
    return out;
}

Mat64 to_mat64(const std::vector<std::vector<Integer>>& m) {
    Mat64 out;
    for (const auto& row : m) out.push_back(to_qvec(row));
    return out;
}

// Matrix entries of row i live in Z_{d_i}.
Mat64 mat_mul(const Mat64& a, const Mat64& b, const std::vector<std::int64_t>& d) {
    const std::size_t r = d.size();
    Mat64 c(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            __int128 acc = 0;
            for (std::size_t t = 0; t < r; ++t) acc += static_cast<__int128>(a[i][t]) * b[t][j];
            c[i][j] = mod_reduce(acc, d[i]);
        }
    return c;
}

QVec mat_apply(const Mat64& a, const QVec& v, const std::vector<std::int64_t>& d) {
    QVec out(d.size(), 0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        __int128 acc = 0;
        for (std::size_t t = 0; t < d.size(); ++t) acc += static_cast<__int128>(a[i][t]) * v[t];
        out[i] = mod_reduce(acc, d[i]);
    }
    return out;
}

void check_presentation(const FiniteGroup& l) {
    Presentation p{l.generator_count(), l.relators()};
    CosetResult r = coset_enumerate(p, 1'000'000);
    if (!r.decided)
        throw Error(ErrorKind::validation_error, "could not verify that the relators present L (coset budget)",
                    r.cosets_defined);
    if (r.order != l.order())
        throw Error(ErrorKind::validation_error,
                    "relators do not present L: they define a group of order " + std::to_string(r.order) +
                        ", L has order " + std::to_string(l.order()),
                    r.order);
}

}  // namespace

void ExtensionSpec::validate() const {
    if (action.generator_count() != group.generator_count())
        throw Error(ErrorKind::dimension_mismatch, "extension: action and group have different generator counts");
    if (defects.size() != group.relators().size())
        throw Error(ErrorKind::dimension_mismatch, "extension: one defect per relator required");
    for (std::size_t i = 0; i < defects.size(); ++i) {
        if (!(defects[i].modulus() == action.modulus()))
            throw Error(ErrorKind::modulus_mismatch, "extension: defect modulus", i);
        if (defects[i].size() != action.rank()) throw Error(ErrorKind::dimension_mismatch, "extension: defect length", i);
    }
    for (std::size_t i = 0; i < group.relators().size(); ++i)
        if (!action.evaluate(group.relators()[i]).is_identity())
            throw Error(ErrorKind::relator_violated,
                        "extension: relator " + format_word(group.relators()[i], group.names()) +
                            " does not act trivially on M",
                        i);
}

EdgeDefectTable solve_edge_defects(const ExtensionSpec& spec, const SubgroupBasis& n) {
    spec.validate();
    const FiniteGroup& L = spec.group;
    check_presentation(L);

    QuotientAction qa = induced_quotient_action(spec.action, n);
    EdgeDefectTable t;
    t.generators = L.generator_count();
    t.moduli = to_qvec(qa.module.moduli());
    for (auto d : t.moduli)
        if (d <= 0) throw Error(ErrorKind::invalid_problem, "extension: M/N is infinite");
    const std::size_t r = t.moduli.size();
    const std::size_t ng = t.generators;
    const std::size_t order = L.order();

    std::vector<Mat64> gen_mats;
    for (const auto& m : qa.matrices) gen_mats.push_back(to_mat64(m));
    Mat64 ident(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i) ident[i][i] = 1 % t.moduli[i];

    // A_l along the BFS tree; elements are numbered in BFS order, so parents come first.
    t.element_action.assign(order, ident);
    for (std::size_t l = 1; l < order; ++l)
        t.element_action[l] = mat_mul(t.element_action[L.parent(l)], gen_mats[L.tree_generator(l)], t.moduli);
    for (std::size_t l = 0; l < order; ++l)
        for (std::size_t j = 0; j < ng; ++j)
            if (mat_mul(t.element_action[l], gen_mats[j], t.moduli) != t.element_action[L.right(l, j)])
                throw Error(ErrorKind::validation_error, "extension: action on M/N is not a homomorphism from L");

    // Unknowns: non-tree edges.
    std::vector<std::int64_t> unknown(order * ng, -1);
    std::size_t u = 0;
    for (std::size_t l = 0; l < order; ++l)
        for (std::size_t j = 0; j < ng; ++j) {
            std::size_t to = L.right(l, j);
            bool tree = to != 0 && L.parent(to) == l && L.tree_generator(to) == j;
            if (!tree) unknown[l * ng + j] = static_cast<std::int64_t>(u++);
        }

    const auto& rels = L.relators();
    std::vector<std::vector<std::int64_t>> coeff;
    std::vector<QVec> rhs;
    std::vector<QVec> defect_q;
    for (const auto& m : spec.defects) defect_q.push_back(to_qvec(qa.module.project(m)));
    for (std::size_t l = 0; l < order; ++l)
        for (std::size_t ri = 0; ri < rels.size(); ++ri) {
            std::vector<std::int64_t> row(u, 0);
            std::size_t cur = l;
            for (const auto& letter : rels[ri]) {
                if (!letter.inverse) {
                    auto e = unknown[cur * ng + letter.generator];
                    if (e >= 0) row[static_cast<std::size_t>(e)] += 1;
                    cur = L.right(cur, letter.generator);
                } else {
                    std::size_t prev = L.right_inverse(cur, letter.generator);
                    auto e = unknown[prev * ng + letter.generator];
                    if (e >= 0) row[static_cast<std::size_t>(e)] -= 1;
                    cur = prev;
                }
            }
            coeff.push_back(std::move(row));
            rhs.push_back(mat_apply(t.element_action[l], defect_q[ri], t.moduli));
        }

    // The incidence system has integer coefficients, so it decouples per quotient coordinate.
    std::vector<QVec> values(u, QVec(r, 0));
    if (u > 0) {
        for (std::size_t i = 0; i < r; ++i) {
            Modulus md(t.moduli[i]);
            MatrixZk a(md, coeff.size(), u);
            std::vector<std::int64_t> b;
            for (std::size_t e = 0; e < coeff.size(); ++e) {
                for (std::size_t c = 0; c < u; ++c)
                    if (coeff[e][c] != 0) a.set(e, c, Integer(coeff[e][c]));
                b.push_back(rhs[e][i]);
            }
            auto sol = solve_linear(a, ModuleVector(md, b));
            if (!sol)
                throw Error(ErrorKind::inconsistent_defects,
                            "extension: relator defects are inconsistent with an extension of L (coordinate " +
                                std::to_string(i) + ")",
                            i);
            if (!sol->kernel.is_trivial())
                throw Error(ErrorKind::internal, "extension: edge-defect system is not uniquely solvable");
            for (std::size_t c = 0; c < u; ++c) values[c][i] = to_int64(sol->particular[c]);
        }
    } else {
        for (const auto& v : rhs)
            for (auto x : v)
                if (x != 0) throw Error(ErrorKind::inconsistent_defects, "extension: relator defects are inconsistent");
    }

    t.f.assign(order * ng, QVec(r, 0));
    for (std::size_t e = 0; e < order * ng; ++e)
        if (unknown[e] >= 0) t.f[e] = values[static_cast<std::size_t>(unknown[e])];
    return t;
}

// ---------------------------------------------------------------- ExtGroup

ExtGroup::ExtGroup(const ExtensionSpec& spec, const SubgroupBasis& n)
    : spec_(spec), n_(n), quotient_(n), table_(solve_edge_defects(spec, n)) {
    for (auto d : table_.moduli) {
        if (module_order_ > kMaxOrder / static_cast<std::uint64_t>(d))
            throw Error(ErrorKind::group_too_large, "ExtGroup: |M/N| too large", module_order_);
        module_order_ *= static_cast<std::uint64_t>(d);
    }
    if (module_order_ > kMaxOrder / base().order())
        throw Error(ErrorKind::group_too_large, "ExtGroup: order too large", module_order_ * base().order());

    // F(l1, l2) = F(l1, parent(l2)) + f(l1 parent(l2), tree_generator(l2))
    const std::size_t ord = base().order();
    const std::size_t r = table_.moduli.size();
    factor_.assign(ord * ord, QVec(r, 0));
    for (std::size_t l1 = 0; l1 < ord; ++l1)
        for (std::size_t l2 = 1; l2 < ord; ++l2) {
            std::size_t p = base().parent(l2);
            const QVec& prev = factor_[l1 * ord + p];
            const QVec& edge = table_.at(base().multiply(l1, p), base().tree_generator(l2));
            QVec& out = factor_[l1 * ord + l2];
            for (std::size_t i = 0; i < r; ++i) out[i] = (prev[i] + edge[i]) % table_.moduli[i];
        }
}

const QVec& ExtGroup::factor(std::size_t l1, std::size_t l2) const { return factor_[l1 * base().order() + l2]; }

QVec ExtGroup::reduce(QVec v) const {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_reduce(v[i], table_.moduli[i]);
    return v;
}

ExtElement ExtGroup::one() const { return ExtElement{QVec(table_.moduli.size(), 0), 0}; }

ExtElement ExtGroup::mul(const ExtElement& a, const ExtElement& b) const {
    QVec v = mat_apply(table_.element_action[a.l], b.v, table_.moduli);
    const QVec& f = factor(a.l, b.l);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (v[i] + a.v[i] + f[i]) % table_.moduli[i];
    return ExtElement{std::move(v), base().multiply(a.l, b.l)};
}

ExtElement ExtGroup::inv(const ExtElement& a) const {
    std::size_t li = base().inverse(a.l);
    QVec s = a.v;
    const QVec& f = factor(a.l, li);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = (s[i] + f[i]) % table_.moduli[i];
    QVec w = mat_apply(table_.element_action[li], s, table_.moduli);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = mod_reduce(-w[i], table_.moduli[i]);
    return ExtElement{std::move(w), li};
}

std::size_t ExtGroup::encode(const ExtElement& e) const {
    std::uint64_t code = 0, radix = 1;
    for (std::size_t i = 0; i < e.v.size(); ++i) {
        code += static_cast<std::uint64_t>(e.v[i]) * radix;
        radix *= static_cast<std::uint64_t>(table_.moduli[i]);
    }
    return static_cast<std::size_t>(e.l * module_order_ + code);
}

ExtElement ExtGroup::decode(std::size_t idx) const {
    ExtElement e;
    e.l = static_cast<std::size_t>(idx / module_order_);
    std::uint64_t code = idx % module_order_;
    for (auto d : table_.moduli) {
        e.v.push_back(static_cast<std::int64_t>(code % static_cast<std::uint64_t>(d)));
        code /= static_cast<std::uint64_t>(d);
    }
    return e;
}

ExtElement ExtGroup::generator_lift(std::size_t j) const {
    return ExtElement{table_.at(0, j), base().generator_element(j)};
}

ExtElement ExtGroup::module_element(const ModuleVector& m) const {
    return ExtElement{reduce(to_qvec(quotient_.project(m))), 0};
}

ExtElement ExtGroup::evaluate(const Word& w, const std::vector<ExtElement>& images) const {
    ExtElement acc = one();
    std::vector<std::optional<ExtElement>> inverses(images.size());
    for (const auto& letter : w) {
        if (!letter.inverse) {
            acc = mul(acc, images.at(letter.generator));
        } else {
            auto& iv = inverses.at(letter.generator);
            if (!iv) iv = inv(images[letter.generator]);
            acc = mul(acc, *iv);
        }
    }
    return acc;
}

ExtElement ExtGroup::evaluate(const Word& w) const {
    std::vector<ExtElement> lifts;
    for (std::size_t j = 0; j < base().generator_count(); ++j) lifts.push_back(generator_lift(j));
    return evaluate(w, lifts);
}

std::vector<std::size_t> ExtGroup::generators() const {
    std::vector<std::size_t> gens;
    const std::size_t r = table_.moduli.size();
    for (std::size_t i = 0; i < r; ++i) {
        ExtElement e = one();
        e.v[i] = 1 % table_.moduli[i];
        gens.push_back(encode(e));
    }
    for (std::size_t j = 0; j < base().generator_count(); ++j) gens.push_back(encode(generator_lift(j)));
    return gens;
}

// ---------------------------------------------------------------- complements

std::optional<std::vector<ExtElement>> split_test(const ExtGroup& g, std::uint64_t budget) {
    const std::size_t ng = g.base().generator_count();
    const std::uint64_t q = g.module_order();
    std::uint64_t candidates = 1;
    bool overflow = false;
    for (std::size_t j = 0; j < ng; ++j) {
        if (candidates > std::numeric_limits<std::uint64_t>::max() / q) {
            overflow = true;
            break;
        }
        candidates *= q;
    }
    if (overflow || candidates > budget)
        throw Error(ErrorKind::budget_exceeded, "split_test: candidate tuples exceed the budget",
                    overflow ? std::numeric_limits<std::uint64_t>::max() : candidates);

    // Check each relator as soon as every generator it mentions is assigned.
    const auto& rels = g.base().relators();
    std::vector<std::vector<std::size_t>> due(ng);
    std::vector<std::size_t> always;  // relators with no letters
    for (std::size_t ri = 0; ri < rels.size(); ++ri) {
        if (rels[ri].empty()) {
            always.push_back(ri);
            continue;
        }
        std::size_t last = 0;
        for (const auto& letter : rels[ri]) last = std::max(last, letter.generator);
        due[last].push_back(ri);
    }
    for (auto ri : always)
        if (!(g.evaluate(rels[ri], {}) == g.one())) return std::nullopt;
    if (ng == 0) return std::vector<ExtElement>{};

    std::vector<ExtElement> images(ng);
    std::vector<std::uint64_t> code(ng, 0);
    const ExtElement id = g.one();
    auto assign = [&](std::size_t j) {
        images[j] = g.decode(static_cast<std::size_t>(code[j]));
        images[j].l = g.base().generator_element(j);
    };
    auto holds = [&](std::size_t j) {
        for (auto ri : due[j]) {
            std::vector<ExtElement> partial(images.begin(), images.begin() + static_cast<std::ptrdiff_t>(j + 1));
            if (!(g.evaluate(rels[ri], partial) == id)) return false;
        }
        return true;
    };
    // Iterative DFS in lexicographic order of the per-generator codes.
    std::size_t depth = 0;
    assign(0);
    for (;;) {
        if (holds(depth)) {
            if (depth + 1 == ng) return images;
            ++depth;
            code[depth] = 0;
            assign(depth);
            continue;
        }
        while (++code[depth] == q) {
            if (depth == 0) return std::nullopt;
            --depth;
        }
        assign(depth);
    }
}

std::optional<std::vector<ExtElement>> complement_solve(const ExtGroup& g) {
    const ExtensionSpec& spec = g.spec();
    const Action& act = spec.action;
    const Modulus& mod = act.modulus();
    const std::size_t n = act.rank();
    const std::size_t ng = act.generator_count();
    const auto& rels = spec.group.relators();
    const auto& nrows = g.subgroup().rows();
    const std::size_t vars = ng * n + rels.size() * nrows.size();
    const std::size_t eqs = rels.size() * n;
    if (eqs == 0) {
        std::vector<ExtElement> out;
        for (std::size_t j = 0; j < ng; ++j) out.push_back(g.generator_lift(j));
        return out;
    }

    // x_j = u_j psi_j; R(x) = sum of A_{prefix} (+/-) u_j + m_R, required to lie in N.
    MatrixZk a(mod, eqs, vars == 0 ? 1 : vars);
    std::vector<Integer> b(eqs);
    for (std::size_t ri = 0; ri < rels.size(); ++ri) {
        MatrixZk prefix = MatrixZk::identity(mod, n);
        std::vector<MatrixZk> block(ng, MatrixZk(mod, n, n));
        for (const auto& letter : rels[ri]) {
            if (!letter.inverse) {
                block[letter.generator] = block[letter.generator] + prefix;
                prefix = prefix * act.matrix(letter.generator);
            } else {
                prefix = prefix * act.inverse(letter.generator);
                block[letter.generator] = block[letter.generator] - prefix;
            }
        }
        for (std::size_t row = 0; row < n; ++row) {
            const std::size_t e = ri * n + row;
            for (std::size_t j = 0; j < ng; ++j)
                for (std::size_t c = 0; c < n; ++c) a.set(e, j * n + c, block[j].at(row, c));
            for (std::size_t s = 0; s < nrows.size(); ++s)
                a.set(e, ng * n + ri * nrows.size() + s, -nrows[s][row]);
            b[e] = -spec.defects[ri][row];
        }
    }
    auto sol = solve_linear(a, ModuleVector(mod, b));
    if (!sol) return std::nullopt;

    std::vector<ExtElement> out;
    for (std::size_t j = 0; j < ng; ++j) {
        std::vector<Integer> uj(sol->particular.coords().begin() + static_cast<std::ptrdiff_t>(j * n),
                                sol->particular.coords().begin() + static_cast<std::ptrdiff_t>((j + 1) * n));
        out.push_back(g.mul(g.module_element(ModuleVector(mod, uj)), g.generator_lift(j)));
    }
    for (std::size_t ri = 0; ri < rels.size(); ++ri)
        if (!(g.evaluate(rels[ri], out) == g.one()))
            throw Error(ErrorKind::internal, "complement_solve: linear solution fails relator check", ri);
    return out;
}

}  // namespace homolift

namespace homolift {

ExtensionSpec permute_generators(const ExtensionSpec& spec, const std::vector<std::size_t>& order) {
    const FiniteGroup& l = spec.group;
    const std::size_t ng = l.generator_count();
    if (order.size() != ng) throw Error(ErrorKind::invalid_params, "permute_generators: wrong length");
    std::vector<std::size_t> where(ng, ng);
    for (std::size_t i = 0; i < ng; ++i) {
        if (order[i] >= ng || where[order[i]] != ng) throw Error(ErrorKind::invalid_params, "permute_generators: not a permutation");
        where[order[i]] = i;
    }
    std::vector<std::string> names;
    std::vector<Permutation> perms;
    std::vector<MatrixZk> mats;
    for (auto j : order) {
        names.push_back(l.names()[j]);
        perms.push_back(l.element(l.generator_element(j)));
        mats.push_back(spec.action.matrix(j));
    }
    std::vector<Word> rels;
    for (const auto& r : l.relators()) {
        Word w;
        for (const auto& letter : r) w.push_back(Letter{where[letter.generator], letter.inverse});
        rels.push_back(std::move(w));
    }
    FiniteGroup g(names, perms, rels);
    Action act(spec.action.modulus(), spec.action.rank(), names, mats);
    return ExtensionSpec{std::move(g), std::move(act), spec.defects};
}

std::vector<InvariantCheck> verify_ext_group(const ExtGroup& g, std::uint64_t random_triples, std::uint32_t seed) {
    std::vector<InvariantCheck> out;
    const std::size_t n = g.order();
    auto add = [&](std::string name, bool pass, std::string detail) {
        out.push_back(InvariantCheck{std::move(name), pass, std::move(detail)});
    };

    add("order", n == g.module_order() * g.base().order(),
        std::to_string(n) + " = " + std::to_string(g.module_order()) + " * " + std::to_string(g.base().order()));

    bool ident = true, inverse = true;
    for (std::size_t x = 0; x < n && (ident || inverse); ++x) {
        ident = ident && g.multiply(g.identity(), x) == x && g.multiply(x, g.identity()) == x;
        std::size_t y = g.inverse(x);
        inverse = inverse && g.multiply(x, y) == g.identity() && g.multiply(y, x) == g.identity();
    }
    add("identity law", ident, "exhaustive");
    add("inverse law", inverse, "exhaustive");

    bool assoc = true;
    std::string how;
    if (n <= 64) {
        for (std::size_t a = 0; a < n && assoc; ++a)
            for (std::size_t b = 0; b < n && assoc; ++b) {
                std::size_t ab = g.multiply(a, b);
                for (std::size_t c = 0; c < n && assoc; ++c)
                    assoc = g.multiply(ab, c) == g.multiply(a, g.multiply(b, c));
            }
        how = "exhaustive";
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::uint64_t t = 0; t < random_triples && assoc; ++t) {
            std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
            assoc = g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c));
        }
        how = std::to_string(random_triples) + " random triples";
    }
    add("associativity", assoc, how);

    // projection (v, l) -> l
    bool hom = true;
    if (n <= 64) {
        for (std::size_t a = 0; a < n && hom; ++a)
            for (std::size_t b = 0; b < n && hom; ++b)
                hom = g.decode(g.multiply(a, b)).l == g.base().multiply(g.decode(a).l, g.decode(b).l);
    } else {
        std::mt19937_64 rng(seed + 1);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::uint64_t t = 0; t < random_triples && hom; ++t) {
            std::size_t a = pick(rng), b = pick(rng);
            hom = g.decode(g.multiply(a, b)).l == g.base().multiply(g.decode(a).l, g.decode(b).l);
        }
    }
    // kernel = module, multiplying as vector addition
    bool kernel = true;
    const std::uint64_t q = g.module_order();
    if (q <= 4096) {
        for (std::uint64_t a = 0; a < q && kernel; ++a)
            for (std::uint64_t b = 0; b < q && kernel; ++b) {
                ExtElement x = g.decode(static_cast<std::size_t>(a)), y = g.decode(static_cast<std::size_t>(b));
                ExtElement z = g.mul(x, y);
                for (std::size_t i = 0; i < z.v.size() && kernel; ++i)
                    kernel = z.l == 0 && z.v[i] == (x.v[i] + y.v[i]) % g.moduli()[i];
            }
    }
    add("projection homomorphism", hom && kernel, n <= 64 ? "all pairs" : "sampled pairs");

    bool rel = true;
    std::string bad;
    const auto& rels = g.base().relators();
    for (std::size_t i = 0; i < rels.size(); ++i) {
        ExtElement e = g.evaluate(rels[i]);
        if (!(e == g.module_element(g.spec().defects[i]))) {
            rel = false;
            bad = format_word(rels[i], g.base().names());
        }
    }
    add("relators on lifts", rel, rel ? std::to_string(rels.size()) + " relators" : "fails at " + bad);
    return out;
}

}  // namespace homolift
