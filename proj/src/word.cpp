#include "homolift/word.hpp"

#include "homolift/error.hpp"

#include <algorithm>
#include <cctype>

namespace homolift {

namespace {

class WordParser {
public:
    WordParser(const std::string& text, const std::vector<std::string>& names) : s_(text), names_(names) {}

    Word parse() {
        if (s_ == "1") return {};
        Word w = word();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return w;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorKind::parse_error, "word '" + s_ + "': " + why);
    }

    Word word() {
        Word w = term();
        while (pos_ < s_.size() && s_[pos_] == '*') {
            ++pos_;
            Word t = term();
            w.insert(w.end(), t.begin(), t.end());
        }
        return w;
    }

    Word term() {
        Word a = atom();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            bool neg = false;
            if (pos_ < s_.size() && s_[pos_] == '-') {
                neg = true;
                ++pos_;
            }
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("missing exponent");
            long long e = std::stoll(s_.substr(start, pos_ - start));
            return power_word(a, neg ? -e : e);
        }
        return a;
    }

    Word atom() {
        if (pos_ >= s_.size()) fail("unexpected end");
        if (s_[pos_] == '(') {
            ++pos_;
            Word w = word();
            if (pos_ >= s_.size() || s_[pos_] != ')') fail("missing ')'");
            ++pos_;
            return w;
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        if (start == pos_) fail("expected a generator name");
        std::string name = s_.substr(start, pos_ - start);
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) fail("unknown generator '" + name + "'");
        return {Letter{static_cast<std::size_t>(it - names_.begin()), false}};
    }

    const std::string& s_;
    const std::vector<std::string>& names_;
    std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(const std::string& text, const std::vector<std::string>& names) {
    return WordParser(text, names).parse();
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += '*';
        out += names.at(w[i].generator);
        if (w[i].inverse) out += "^-1";
    }
    return out;
}

Word inverse_word(const Word& w) {
    Word r(w.rbegin(), w.rend());
    for (auto& l : r) l.inverse = !l.inverse;
    return r;
}

Word power_word(const Word& w, long long e) {
    Word base = e < 0 ? inverse_word(w) : w;
    Word out;
    for (long long i = 0; i < (e < 0 ? -e : e); ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
}

}  // namespace homolift
