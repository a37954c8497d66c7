#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace homolift {

struct Letter {
    std::size_t generator = 0;
    bool inverse = false;

    bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

// Grammar: word := term ('*' term)* | '1'
//          term := atom ('^' '-'? digits)?
//          atom := NAME | '(' word ')'
// e.g. "r^3", "(r*h)^2", "a*b*a^-1*b^-1".
Word parse_word(const std::string& text, const std::vector<std::string>& names);
std::string format_word(const Word& w, const std::vector<std::string>& names);
Word inverse_word(const Word& w);
Word power_word(const Word& w, long long e);

}  // namespace homolift
