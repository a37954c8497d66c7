#include "homolift/problem.hpp"

#include "homolift/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace homolift {

namespace {

const std::vector<std::string> kDirectives{"modulus", "rank", "gen", "action", "relator", "subgroup", "task"};

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
        ++n;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        Line line{n, {}};
        for (std::string tok; ls >> tok;) line.tokens.push_back(tok);
        if (!line.tokens.empty()) out.push_back(std::move(line));
    }
    return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& why) {
    throw Error(ErrorKind::parse_error, "line " + std::to_string(line) + ": " + why, line);
}

std::int64_t parse_int(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) fail(line, "bad integer '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        fail(line, "bad integer '" + s + "'");
    }
}

bool is_directive(const Line& l) {
    return std::find(kDirectives.begin(), kDirectives.end(), l.tokens[0]) != kDirectives.end();
}

std::vector<std::int64_t> parse_row(const Line& l, std::size_t width) {
    if (l.tokens.size() != width)
        fail(l.number, "expected " + std::to_string(width) + " integers, found " + std::to_string(l.tokens.size()));
    std::vector<std::int64_t> row;
    for (const auto& t : l.tokens) row.push_back(parse_int(t, l.number));
    return row;
}

}  // namespace

const SubgroupBasis* ProblemFile::find_subgroup(const std::string& name) const {
    for (const auto& [n, s] : subgroups)
        if (n == name) return &s;
    return nullptr;
}

ProblemFile parse_problem(const std::string& text) {
    auto lines = tokenize(text);
    std::optional<std::int64_t> modulus;
    std::optional<std::size_t> rank;
    std::vector<std::string> names;
    std::vector<Permutation> perms;
    std::vector<std::pair<std::size_t, std::size_t>> declared;  // generator, order
    std::map<std::string, std::vector<std::vector<std::int64_t>>> actions;
    std::vector<std::string> relator_text;
    std::vector<std::vector<std::int64_t>> defects;
    std::vector<std::pair<std::string, std::vector<std::vector<std::int64_t>>>> subgroups;
    ProblemFile pf;
    bool have_task = false;

    auto need_header = [&](std::size_t line) {
        if (!modulus || !rank) fail(line, "modulus and rank must come first");
    };

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const Line& l = lines[i];
        const auto& t = l.tokens;
        const std::string& d = t[0];
        if (d == "modulus") {
            if (t.size() != 2) fail(l.number, "usage: modulus K");
            if (modulus) fail(l.number, "modulus given twice");
            modulus = parse_int(t[1], l.number);
            if (*modulus < 0 || *modulus == 1) fail(l.number, "modulus must be 0 or at least 2");
        } else if (d == "rank") {
            if (t.size() != 2) fail(l.number, "usage: rank N");
            if (rank) fail(l.number, "rank given twice");
            auto r = parse_int(t[1], l.number);
            if (r < 1) fail(l.number, "rank must be positive");
            rank = static_cast<std::size_t>(r);
        } else if (d == "gen") {
            need_header(l.number);
            if (t.size() != 3 && !(t.size() == 5 && t[3] == "order")) fail(l.number, "usage: gen NAME PERM [order N]");
            if (std::find(names.begin(), names.end(), t[1]) != names.end()) fail(l.number, "generator defined twice");
            if (!relator_text.empty()) fail(l.number, "generators must precede relators");
            names.push_back(t[1]);
            try {
                perms.push_back(parse_permutation(t[2]));
            } catch (const Error& e) {
                fail(l.number, e.what());
            }
            if (t.size() == 5) {
                auto o = parse_int(t[4], l.number);
                if (o < 1) fail(l.number, "order must be positive");
                declared.emplace_back(names.size() - 1, static_cast<std::size_t>(o));
            }
        } else if (d == "action") {
            need_header(l.number);
            if (t.size() != 2) fail(l.number, "usage: action NAME");
            if (std::find(names.begin(), names.end(), t[1]) == names.end())
                fail(l.number, "action for undefined generator '" + t[1] + "'");
            if (actions.count(t[1])) fail(l.number, "action given twice");
            std::vector<std::vector<std::int64_t>> rows;
            for (std::size_t r = 0; r < *rank; ++r) {
                if (i + 1 >= lines.size() || is_directive(lines[i + 1]))
                    fail(l.number, "action needs " + std::to_string(*rank) + " rows");
                rows.push_back(parse_row(lines[++i], *rank));
            }
            actions[t[1]] = std::move(rows);
        } else if (d == "relator") {
            need_header(l.number);
            if (t.size() < 2) fail(l.number, "usage: relator WORD [defect V1 ... VN]");
            try {
                (void)parse_word(t[1], names);
            } catch (const Error& e) {
                fail(l.number, e.what());
            }
            std::vector<std::int64_t> v(*rank, 0);
            if (t.size() > 2) {
                if (t[2] != "defect" || t.size() != 3 + *rank)
                    fail(l.number, "expected 'defect' followed by " + std::to_string(*rank) + " integers");
                for (std::size_t c = 0; c < *rank; ++c) v[c] = parse_int(t[3 + c], l.number);
            }
            relator_text.push_back(t[1]);
            defects.push_back(std::move(v));
        } else if (d == "subgroup") {
            need_header(l.number);
            if (t.size() != 2) fail(l.number, "usage: subgroup NAME");
            for (const auto& [n, rows] : subgroups)
                if (n == t[1]) fail(l.number, "subgroup defined twice");
            std::vector<std::vector<std::int64_t>> rows;
            while (i + 1 < lines.size() && !is_directive(lines[i + 1])) rows.push_back(parse_row(lines[++i], *rank));
            subgroups.emplace_back(t[1], std::move(rows));
        } else if (d == "task") {
            if (t.size() < 2) fail(l.number, "usage: task KIND ARGS");
            if (have_task) fail(l.number, "task given twice");
            have_task = true;
            pf.task = t[1];
            pf.task_args.assign(t.begin() + 2, t.end());
        } else {
            fail(l.number, "unknown directive '" + d + "'");
        }
    }
    if (!modulus || !rank) throw Error(ErrorKind::parse_error, "missing modulus or rank", 0);

    pf.modulus = Modulus(*modulus);
    pf.rank = *rank;
    try {
        std::vector<MatrixZk> mats;
        for (const auto& n : names) {
            auto it = actions.find(n);
            if (it == actions.end()) throw Error(ErrorKind::validation_error, "no action given for generator '" + n + "'");
            mats.emplace_back(pf.modulus, *rank, it->second);
        }
        std::vector<Word> rels;
        std::vector<ModuleVector> defect_vectors;
        for (std::size_t i = 0; i < relator_text.size(); ++i) {
            rels.push_back(parse_word(relator_text[i], names));
            defect_vectors.emplace_back(pf.modulus, defects[i]);
        }
        FiniteGroup group(names, perms, rels);
        for (const auto& [j, o] : declared) {
            auto actual = group.element_order(group.generator_element(j));
            if (actual != o)
                throw Error(ErrorKind::validation_error, "generator '" + names[j] + "' has order " +
                                                             std::to_string(actual) + ", declared " + std::to_string(o));
        }
        Action act(pf.modulus, *rank, names, std::move(mats));
        pf.spec = ExtensionSpec{std::move(group), std::move(act), std::move(defect_vectors)};
        pf.spec.validate();
        for (auto& [n, rows] : subgroups) {
            std::vector<ModuleVector> gens;
            for (const auto& r : rows) gens.emplace_back(pf.modulus, r);
            pf.subgroups.emplace_back(n, SubgroupBasis::span(pf.modulus, *rank, gens));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::validation_error) throw;
        throw Error(ErrorKind::validation_error, e.what(), e.detail());
    }
    return pf;
}

}  // namespace homolift
