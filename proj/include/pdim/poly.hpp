#pragma once

// Sparse multivariate polynomials with coefficients in Z/m (m > 0) or in Z
// (m == 0). Terms are kept in a graded-lex ordered map; the leading term is
// the last entry.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "pdim/errors.hpp"

namespace pdim {

using Exponent = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Exponent& e) {
    return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

/// Graded lexicographic order with t1 > t2 > ... > tn.
struct GrlexLess {
    bool operator()(const Exponent& a, const Exponent& b) const {
        const auto da = total_degree(a);
        const auto db = total_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

namespace detail {

inline std::int64_t mod_norm(std::int64_t c, std::int64_t m) {
    if (m == 0) return c;
    c %= m;
    return c < 0 ? c + m : c;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error("integer coefficient overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("integer coefficient overflow");
    return r;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    if (m == 0) return checked_mul(a, b);
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

inline std::int64_t add_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    if (m == 0) return checked_add(a, b);
    return mod_norm(a + b, m);
}

/// Inverse of a modulo m; a must be coprime to m.
inline std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, a1 = mod_norm(a, m);
    while (a1 != 0) {
        const std::int64_t q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw DivisionByZero();
    return mod_norm(x, m);
}

}  // namespace detail

class SparsePoly {
public:
    using TermMap = std::map<Exponent, std::int64_t, GrlexLess>;

    SparsePoly() = default;
    SparsePoly(std::size_t nvars, std::int64_t modulus) : nvars_(nvars), modulus_(modulus) {}

    static SparsePoly constant(std::size_t nvars, std::int64_t modulus, std::int64_t c) {
        SparsePoly p(nvars, modulus);
        p.add_term(Exponent(nvars, 0), c);
        return p;
    }

    static SparsePoly variable(std::size_t nvars, std::int64_t modulus, std::size_t j) {
        Exponent e(nvars, 0);
        e.at(j) = 1;
        return monomial(nvars, modulus, std::move(e), 1);
    }

    static SparsePoly monomial(std::size_t nvars, std::int64_t modulus, Exponent e, std::int64_t c) {
        SparsePoly p(nvars, modulus);
        p.add_term(std::move(e), c);
        return p;
    }

    std::size_t nvars() const noexcept { return nvars_; }
    std::int64_t modulus() const noexcept { return modulus_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    std::int64_t constant_term() const { return coeff(Exponent(nvars_, 0)); }

    std::int64_t coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? 0 : it->second;
    }

    const Exponent& leading_exp() const { return terms_.rbegin()->first; }
    std::int64_t leading_coeff() const { return terms_.rbegin()->second; }

    std::uint64_t degree() const { return is_zero() ? 0 : total_degree(leading_exp()); }

    std::uint32_t degree_in(std::size_t v) const {
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
        return d;
    }

    bool involves(std::size_t v) const { return degree_in(v) > 0; }

    void add_term(Exponent e, std::int64_t c) {
        c = detail::mod_norm(c, modulus_);
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second = detail::add_mod(it->second, c, modulus_);
            if (it->second == 0) terms_.erase(it);
        }
    }

    SparsePoly operator-() const {
        SparsePoly r(nvars_, modulus_);
        for (const auto& [e, c] : terms_) r.add_term(e, modulus_ == 0 ? -c : modulus_ - c);
        return r;
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    SparsePoly& operator-=(const SparsePoly& o) { return *this += -o; }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        a.check_compatible(b);
        SparsePoly r(a.nvars_, a.modulus_);
        Exponent e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, detail::mul_mod(ca, cb, a.modulus_));
            }
        }
        return r;
    }

    SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

    SparsePoly scaled(std::int64_t k) const {
        SparsePoly r(nvars_, modulus_);
        for (const auto& [e, c] : terms_) r.add_term(e, detail::mul_mod(c, detail::mod_norm(k, modulus_), modulus_));
        return r;
    }

    SparsePoly times_monomial(const Exponent& m) const {
        SparsePoly r(nvars_, modulus_);
        for (const auto& [e, c] : terms_) {
            Exponent s = e;
            for (std::size_t i = 0; i < s.size(); ++i) s[i] += m[i];
            r.terms_.emplace(std::move(s), c);
        }
        return r;
    }

    SparsePoly pow(std::uint32_t k) const {
        SparsePoly result = constant(nvars_, modulus_, 1);
        SparsePoly base = *this;
        while (k > 0) {
            if (k & 1u) result *= base;
            k >>= 1u;
            if (k > 0) base *= base;
        }
        return result;
    }

    /// Formal partial derivative in variable j.
    SparsePoly derivative(std::size_t j) const {
        SparsePoly r(nvars_, modulus_);
        for (const auto& [e, c] : terms_) {
            if (e[j] == 0) continue;
            Exponent s = e;
            s[j] -= 1;
            r.add_term(std::move(s), detail::mul_mod(c, static_cast<std::int64_t>(e[j]), modulus_));
        }
        return r;
    }

    /// Same exponents, coefficients reinterpreted modulo a new modulus.
    SparsePoly with_modulus(std::int64_t m) const {
        SparsePoly r(nvars_, m);
        for (const auto& [e, c] : terms_) r.add_term(e, c);
        return r;
    }

    /// Coefficient-wise exact division by an integer d.
    SparsePoly divide_coefficients(std::int64_t d) const {
        SparsePoly r(nvars_, modulus_);
        for (const auto& [e, c] : terms_) {
            if (c % d != 0) throw Error("coefficient not divisible");
            r.add_term(e, c / d);
        }
        return r;
    }

    bool coefficients_divisible_by(std::int64_t d) const {
        return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.second % d == 0; });
    }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.nvars_ == b.nvars_ && a.modulus_ == b.modulus_ && a.terms_ == b.terms_;
    }

    /// Total ordering used for deterministic sorting (not a ring order).
    friend bool operator<(const SparsePoly& a, const SparsePoly& b) {
        return std::lexicographical_compare(a.terms_.rbegin(), a.terms_.rend(), b.terms_.rbegin(), b.terms_.rend(),
                                            [](const auto& x, const auto& y) {
                                                if (x.first != y.first) return GrlexLess{}(x.first, y.first);
                                                return x.second < y.second;
                                            });
    }

    void check_compatible(const SparsePoly& o) const {
        if (nvars_ != o.nvars_ || modulus_ != o.modulus_) throw FieldMismatch("polynomial ring mismatch");
    }

private:
    std::size_t nvars_ = 0;
    std::int64_t modulus_ = 0;
    TermMap terms_;
};

}  // namespace pdim
