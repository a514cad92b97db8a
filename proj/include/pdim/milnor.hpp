#pragma once

// k2 = K2/p as formal sums of symbols (a, b), decided through the
// differential symbol (a, b) -> dlog a ^ dlog b, which is injective.

#include <string>
#include <utility>
#include <vector>

#include "pdim/differentials.hpp"
#include "pdim/parse.hpp"

namespace pdim {

struct SymbolSum {
    std::int64_t p = 2;
    std::size_t nvars = 0;
    std::vector<std::pair<RatFunc, RatFunc>> entries;

    SymbolSum() = default;
    SymbolSum(std::int64_t prime, std::size_t n) : p(prime), nvars(n) {}
    explicit SymbolSum(const FieldDescriptor& f) : p(f.p), nvars(f.num_vars()) {}

    SymbolSum& add(RatFunc a, RatFunc b) {
        entries.emplace_back(std::move(a), std::move(b));
        return *this;
    }

    SymbolSum& operator+=(const SymbolSum& o) {
        if (o.p != p || o.nvars != nvars) throw FieldMismatch("symbol sums over different fields");
        entries.insert(entries.end(), o.entries.begin(), o.entries.end());
        return *this;
    }

    bool empty() const noexcept { return entries.empty(); }
};

inline Omega2Form h2p(const SymbolSum& s) {
    Omega2Form out(s.p, s.nvars);
    for (const auto& [a, b] : s.entries) {
        if (a.is_zero() || b.is_zero()) throw ZeroEntry();
        out += wedge(dlog(a), dlog(b));
    }
    return out;
}

inline bool k2_is_zero(const SymbolSum& s) { return h2p(s).is_zero(); }

/// Equality in k2 through the differential symbol.
inline bool k2_equal(const SymbolSum& a, const SymbolSum& b) { return h2p(a) == h2p(b); }

inline SymbolSum k2_restrict(const SymbolSum& s, const Embedding& e) {
    if (s.p != e.source.p || s.nvars != e.source.num_vars())
        throw FieldMismatch("symbol sum does not live in the embedding source");
    SymbolSum out(e.target);
    for (const auto& [a, b] : s.entries) out.add(embed_element(a, e), embed_element(b, e));
    return out;
}

inline SymbolSum parse_symbol_sum(std::string_view text, const FieldDescriptor& field) {
    SymbolSum out(field);
    for (const auto& [a, b] : parse_symbol_list(text)) out.add(to_ratfunc(a, field), to_ratfunc(b, field));
    return out;
}

inline std::string to_string(const SymbolSum& s, const std::vector<std::string>& names) {
    if (s.entries.empty()) return "0";
    std::string out;
    for (const auto& [a, b] : s.entries) {
        if (!out.empty()) out += " + ";
        out += "sym(" + to_string(a, names) + ", " + to_string(b, names) + ")";
    }
    return out;
}

}  // namespace pdim
