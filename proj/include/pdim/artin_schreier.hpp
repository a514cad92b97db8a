#pragma once

// Artin-Schreier questions over F_2(t_1, ..., t_n), all of which are F_2-linear
// because c -> c^2 + c and x -> d x are additive in characteristic 2:
//   * is a in {c^2 + c}?
//   * is sum_j b_j dt_j/t_j in d(kappa) + {sum_j (c_j^2 + c_j) dt_j/t_j}?
// The unknowns get a common denominator B (the lcm of the data denominators)
// and numerators of bounded total degree, so a "yes" comes with a witness and
// a "no" means no witness inside that ansatz.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pdim/differentials.hpp"
#include "pdim/poly_gcd.hpp"

namespace pdim {

namespace detail {

class F2System {
public:
    explicit F2System(std::size_t ncols) : ncols_(ncols), words_((ncols + 1 + 63) / 64) {}

    std::size_t row(std::size_t eq, const Exponent& e) {
        auto [it, inserted] = index_.try_emplace({eq, e}, rows_.size());
        if (inserted) rows_.emplace_back(words_, 0);
        return it->second;
    }

    void flip(std::size_t r, std::size_t col) { rows_[r][col / 64] ^= std::uint64_t{1} << (col % 64); }

    void add_column(std::size_t col, std::size_t eq, const SparsePoly& image) {
        for (const auto& [e, c] : image.terms())
            if (c % 2 != 0) flip(row(eq, e), col);
    }

    void add_rhs(std::size_t eq, const SparsePoly& rhs) { add_column(ncols_, eq, rhs); }

    std::optional<std::vector<bool>> solve() {
        auto m = rows_;
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < ncols_ && r < m.size(); ++c) {
            const std::size_t w = c / 64;
            const std::uint64_t bit = std::uint64_t{1} << (c % 64);
            std::size_t k = r;
            while (k < m.size() && !(m[k][w] & bit)) ++k;
            if (k == m.size()) continue;
            std::swap(m[r], m[k]);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (i != r && (m[i][w] & bit))
                    for (std::size_t j = w; j < words_; ++j) m[i][j] ^= m[r][j];
            pivots.push_back(c);
            ++r;
        }
        const auto rhs = [&](std::size_t i) { return (m[i][ncols_ / 64] >> (ncols_ % 64)) & 1u; };
        for (std::size_t i = r; i < m.size(); ++i)
            if (rhs(i)) return std::nullopt;
        std::vector<bool> x(ncols_, false);
        for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = rhs(i) != 0;
        return x;
    }

private:
    std::size_t ncols_;
    std::size_t words_;
    std::map<std::pair<std::size_t, Exponent>, std::size_t> index_;
    std::vector<std::vector<std::uint64_t>> rows_;
};

inline std::vector<Exponent> monomials_up_to(std::size_t nvars, std::uint64_t deg) {
    std::vector<Exponent> out;
    Exponent e(nvars, 0);
    const auto rec = [&](auto&& self, std::size_t v, std::uint64_t left) -> void {
        if (v == nvars) {
            out.push_back(e);
            return;
        }
        for (std::uint64_t k = 0; k <= left; ++k) {
            e[v] = static_cast<std::uint32_t>(k);
            self(self, v + 1, left - k);
        }
        e[v] = 0;
    };
    rec(rec, 0, deg);
    return out;
}

inline SparsePoly lcm(const SparsePoly& a, const SparsePoly& b) { return divide_or_throw(a * b, gcd(a, b)); }

inline SparsePoly from_bits(const std::vector<bool>& x, std::size_t offset, const std::vector<Exponent>& mons,
                            std::size_t nvars) {
    SparsePoly r(nvars, 2);
    for (std::size_t k = 0; k < mons.size(); ++k)
        if (x[offset + k]) r.add_term(mons[k], 1);
    return r;
}

inline void require_char2(std::int64_t p) {
    if (p != 2) throw UnsupportedPrime("Artin-Schreier solving is implemented for p = 2 only");
}

}  // namespace detail

/// Some c with c^2 + c = a, searched with denominator den(a) (which is forced
/// when a solution exists) and numerator degree up to max(deg a, deg den).
inline std::optional<RatFunc> artin_schreier_root(const RatFunc& a) {
    detail::require_char2(a.prime());
    const std::size_t n = a.nvars();
    if (a.is_zero()) return a;
    const SparsePoly& q = a.denominator();
    // c = A/Q: A^2 + A Q = a Q^2 = N Q.
    const SparsePoly rhs = a.numerator() * q;
    const std::uint64_t deg = std::max(q.degree(), (rhs.degree() + 1) / 2) + 1;
    const auto mons = detail::monomials_up_to(n, deg);
    detail::F2System sys(mons.size());
    for (std::size_t k = 0; k < mons.size(); ++k) {
        const SparsePoly m = SparsePoly::monomial(n, 2, mons[k], 1);
        sys.add_column(k, 0, m * m + m * q);
    }
    sys.add_rhs(0, rhs);
    const auto x = sys.solve();
    if (!x) return std::nullopt;
    return RatFunc(detail::from_bits(*x, 0, mons, n), q);
}

/// Whether w lies in d(kappa) + (1 + C^-1) Omega^1, i.e. writing
/// w = sum_j b_j dt_j/t_j, whether b_j = t_j d_j x + c_j^2 + c_j for some x, c_j.
inline bool in_exact_plus_artin_schreier(const Omega1Form& w) {
    detail::require_char2(w.prime());
    if (w.is_zero()) return true;
    const std::size_t n = w.nvars();
    std::vector<RatFunc> b;
    SparsePoly den = SparsePoly::constant(n, 2, 1);
    for (std::size_t j = 0; j < n; ++j) {
        b.push_back(w[j] * RatFunc::variable(2, n, j));
        den = detail::lcm(den, b.back().denominator());
    }
    // Unknowns x = X/B, c_j = A_j/B; multiply each equation by B^2:
    //   t_j (d_j X B - X d_j B) + A_j^2 + A_j B = b_j B^2.
    std::vector<SparsePoly> rhs;
    std::uint64_t r = 0;
    for (std::size_t j = 0; j < n; ++j) {
        rhs.push_back(divide_or_throw(b[j].numerator() * den * den, b[j].denominator()));
        r = std::max(r, rhs.back().degree());
    }
    const std::uint64_t db = den.degree();
    const std::uint64_t deg_a = std::max(db, (r + 1) / 2) + 1;
    const std::uint64_t deg_x = std::max<std::uint64_t>(2 * deg_a > db ? 2 * deg_a - db : 0, r + 1);
    const auto mons_a = detail::monomials_up_to(n, deg_a);
    const auto mons_x = detail::monomials_up_to(n, deg_x);
    const std::size_t ncols = mons_x.size() + n * mons_a.size();
    detail::F2System sys(ncols);
    std::vector<SparsePoly> ddb;
    for (std::size_t j = 0; j < n; ++j) ddb.push_back(den.derivative(j));
    for (std::size_t k = 0; k < mons_x.size(); ++k) {
        const SparsePoly m = SparsePoly::monomial(n, 2, mons_x[k], 1);
        for (std::size_t j = 0; j < n; ++j) {
            const SparsePoly t = SparsePoly::variable(n, 2, j);
            sys.add_column(k, j, t * (m.derivative(j) * den + m * ddb[j]));
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t off = mons_x.size() + j * mons_a.size();
        for (std::size_t k = 0; k < mons_a.size(); ++k) {
            const SparsePoly m = SparsePoly::monomial(n, 2, mons_a[k], 1);
            sys.add_column(off + k, j, m * m + m * den);
        }
        sys.add_rhs(j, rhs[j]);
    }
    return sys.solve().has_value();
}

}  // namespace pdim
