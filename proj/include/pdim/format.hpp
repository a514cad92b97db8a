#pragma once

// Text rendering in the input grammar, so printed values parse back.

#include <sstream>
#include <string>
#include <vector>

#include "pdim/ratfunc.hpp"

namespace pdim {

namespace detail {

inline std::string monomial_text(const Exponent& e, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] == 0) continue;
        if (!out.empty()) out += "*";
        out += names[j];
        if (e[j] > 1) out += "^" + std::to_string(e[j]);
    }
    return out;
}

}  // namespace detail

/// Terms in descending graded-lex order, e.g. `t1^2*t2 + 1`.
inline std::string to_string(const SparsePoly& f, const std::vector<std::string>& names) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        std::int64_t c = it->second;
        const bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        const std::string mono = detail::monomial_text(it->first, names);
        if (mono.empty()) {
            out += std::to_string(c);
        } else if (c == 1) {
            out += mono;
        } else {
            out += std::to_string(c) + "*" + mono;
        }
    }
    return out;
}

inline std::string to_string(const RatFunc& f, const std::vector<std::string>& names) {
    if (f.is_polynomial()) return to_string(f.numerator(), names);
    const auto wrap = [&](const SparsePoly& g) {
        std::string s = to_string(g, names);
        return g.size() > 1 || s.find('*') != std::string::npos ? "(" + s + ")" : s;
    };
    return wrap(f.numerator()) + "/" + wrap(f.denominator());
}

inline std::string to_string(const RatFunc& f, const FieldDescriptor& field) {
    return to_string(f, field.var_names);
}

}  // namespace pdim
