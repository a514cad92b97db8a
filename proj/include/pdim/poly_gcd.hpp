#pragma once

// Exact division and multivariate GCD over F_p. The GCD is the classical
// recursive one: view the inputs as univariate in their highest variable,
// split off contents (recursively), and run a primitive pseudo-remainder
// sequence on the primitive parts. Over a prime field the work happens in
// a recursive dense form; the sparse version remains for other moduli.

#include <optional>

#include "pdim/poly.hpp"

namespace pdim {

namespace detail {

inline bool is_small_prime(std::int64_t m) {
    if (m < 2) return false;
    for (std::int64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

// Recursive dense form over F_p: a level-k value is a polynomial in t_k
// whose coefficients are level-(k-1) values; level 0 holds a constant.
// Zero at level k > 0 is the empty vector.
struct Dense {
    std::int64_t k = 0;
    std::vector<Dense> c;
};

class DenseField {
public:
    explicit DenseField(std::int64_t p) : p_(p) {}

    static bool zero(const Dense& a, int lev) { return lev == 0 ? a.k == 0 : a.c.empty(); }

    Dense constant(std::int64_t v, int lev) const {
        if (lev == 0) return Dense{mod_norm(v, p_), {}};
        if (mod_norm(v, p_) == 0) return {};
        Dense r;
        r.c.push_back(constant(v, lev - 1));
        return r;
    }

    /// The innermost leading constant.
    std::int64_t lead_const(const Dense& a, int lev) const {
        return lev == 0 ? a.k : lead_const(a.c.back(), lev - 1);
    }

    static void trim(Dense& a, int lev) {
        while (!a.c.empty() && zero(a.c.back(), lev - 1)) a.c.pop_back();
    }

    Dense add(const Dense& a, const Dense& b, int lev, bool subtract = false) const {
        if (lev == 0) return Dense{subtract ? mod_norm(a.k - b.k, p_) : mod_norm(a.k + b.k, p_), {}};
        Dense r;
        r.c.resize(std::max(a.c.size(), b.c.size()));
        for (std::size_t i = 0; i < r.c.size(); ++i) {
            if (i < a.c.size() && i < b.c.size()) {
                r.c[i] = add(a.c[i], b.c[i], lev - 1, subtract);
            } else if (i < a.c.size()) {
                r.c[i] = a.c[i];
            } else {
                r.c[i] = subtract ? scale(b.c[i], p_ - 1, lev - 1) : b.c[i];
            }
        }
        trim(r, lev);
        return r;
    }

    Dense scale(const Dense& a, std::int64_t s, int lev) const {
        if (lev == 0) return Dense{mul_mod(a.k, s, p_), {}};
        if (mod_norm(s, p_) == 0) return {};
        Dense r;
        r.c.reserve(a.c.size());
        for (const auto& x : a.c) r.c.push_back(scale(x, s, lev - 1));
        return r;
    }

    Dense mul(const Dense& a, const Dense& b, int lev) const {
        if (lev == 0) return Dense{mul_mod(a.k, b.k, p_), {}};
        if (a.c.empty() || b.c.empty()) return {};
        if (lev == 1) {
            Dense r;
            r.c.assign(a.c.size() + b.c.size() - 1, Dense{});
            std::vector<std::int64_t> acc(r.c.size(), 0);
            for (std::size_t i = 0; i < a.c.size(); ++i) {
                if (a.c[i].k == 0) continue;
                for (std::size_t j = 0; j < b.c.size(); ++j) acc[i + j] = (acc[i + j] + a.c[i].k * b.c[j].k) % p_;
            }
            for (std::size_t i = 0; i < acc.size(); ++i) r.c[i].k = acc[i];
            return r;
        }
        Dense r;
        r.c.assign(a.c.size() + b.c.size() - 1, Dense{});
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (zero(a.c[i], lev - 1)) continue;
            for (std::size_t j = 0; j < b.c.size(); ++j) {
                if (zero(b.c[j], lev - 1)) continue;
                r.c[i + j] = add(r.c[i + j], mul(a.c[i], b.c[j], lev - 1), lev - 1);
            }
        }
        trim(r, lev);
        return r;
    }

    /// Multiplies a level-lev value by a level-(lev-1) coefficient.
    Dense mul_coeff(const Dense& a, const Dense& s, int lev) const {
        if (zero(s, lev - 1)) return {};
        Dense r;
        r.c.reserve(a.c.size());
        for (const auto& x : a.c) r.c.push_back(mul(x, s, lev - 1));
        return r;
    }

    /// a / b when b divides a exactly.
    std::optional<Dense> divide(Dense a, const Dense& b, int lev) const {
        if (zero(b, lev)) throw DivisionByZero();
        if (lev == 0) return Dense{mul_mod(a.k, inv_mod(b.k, p_), p_), {}};
        if (a.c.empty()) return Dense{};
        if (a.c.size() < b.c.size()) return std::nullopt;
        Dense q;
        q.c.assign(a.c.size() - b.c.size() + 1, Dense{});
        const std::size_t db = b.c.size() - 1;
        while (!a.c.empty() && a.c.size() >= b.c.size()) {
            const std::size_t shift = a.c.size() - 1 - db;
            auto qc = divide(a.c.back(), b.c.back(), lev - 1);
            if (!qc) return std::nullopt;
            for (std::size_t i = 0; i <= db; ++i)
                if (!zero(b.c[i], lev - 1)) a.c[shift + i] = add(a.c[shift + i], mul(*qc, b.c[i], lev - 1), lev - 1, true);
            q.c[shift] = std::move(*qc);
            trim(a, lev);
        }
        if (!a.c.empty()) return std::nullopt;
        trim(q, lev);
        return q;
    }

    Dense divide_exact(const Dense& a, const Dense& b, int lev) const {
        auto q = divide(a, b, lev);
        if (!q) throw Error("inexact polynomial division");
        return std::move(*q);
    }

    Dense normalize(const Dense& a, int lev) const {
        if (zero(a, lev)) return a;
        return scale(a, inv_mod(lead_const(a, lev), p_), lev);
    }

    Dense content(const Dense& a, int lev) const {
        Dense g;
        if (lev - 1 == 0) return constant(1, 0);
        for (const auto& x : a.c) {
            g = gcd(g, x, lev - 1);
            if (g.c.size() == 1 && is_const(g, lev - 1)) break;
        }
        return g;
    }

    bool is_const(const Dense& a, int lev) const {
        if (lev == 0) return true;
        return a.c.size() <= 1 && (a.c.empty() || is_const(a.c[0], lev - 1));
    }

    Dense primitive(const Dense& a, int lev) const {
        if (a.c.empty()) return a;
        const Dense ct = content(a, lev);
        if (is_const(ct, lev - 1)) return a;
        Dense r;
        r.c.reserve(a.c.size());
        for (const auto& x : a.c) r.c.push_back(divide_exact(x, ct, lev - 1));
        return r;
    }

    Dense gcd(const Dense& a, const Dense& b, int lev) const {
        if (zero(a, lev)) return normalize(b, lev);
        if (zero(b, lev)) return normalize(a, lev);
        if (lev == 0) return constant(1, 0);
        if (lev == 1) return gcd_univariate(a, b);
        if (a.c.size() == 1) return lift_coeff(gcd(a.c[0], content(b, lev), lev - 1));
        if (b.c.size() == 1) return lift_coeff(gcd(content(a, lev), b.c[0], lev - 1));
        const Dense ca = content(a, lev);
        const Dense cb = content(b, lev);
        Dense x = strip(a, ca, lev);
        Dense y = strip(b, cb, lev);
        if (x.c.size() < y.c.size()) std::swap(x, y);
        const Dense cg = gcd(ca, cb, lev - 1);
        // A primitive divisor of the other input is the primitive gcd; a
        // primitive polynomial of degree one is irreducible.
        if (divide(x, y, lev)) return normalize(mul_coeff(y, cg, lev), lev);
        if (y.c.size() == 2) return normalize(lift_coeff(cg), lev);
        while (!y.c.empty()) {
            Dense r = pseudo_remainder(std::move(x), y, lev);
            x = std::move(y);
            y = primitive(r, lev);
            if (y.c.size() == 1) {
                x = constant(1, lev);
                break;
            }
        }
        return normalize(mul_coeff(primitive(x, lev), cg, lev), lev);
    }

private:
    Dense lift_coeff(Dense g) const {
        Dense r;
        r.c.push_back(std::move(g));
        return r;
    }

    Dense strip(const Dense& a, const Dense& ct, int lev) const {
        if (is_const(ct, lev - 1)) return a;
        Dense r;
        for (const auto& x : a.c) r.c.push_back(divide_exact(x, ct, lev - 1));
        return r;
    }

    Dense pseudo_remainder(Dense a, const Dense& b, int lev) const {
        const std::size_t db = b.c.size() - 1;
        const Dense& lb = b.c.back();
        while (!a.c.empty() && a.c.size() > db) {
            const std::size_t shift = a.c.size() - 1 - db;
            const Dense la = a.c.back();
            if (auto q = divide(la, lb, lev - 1)) {
                for (std::size_t i = 0; i <= db; ++i)
                    if (!zero(b.c[i], lev - 1)) a.c[shift + i] = add(a.c[shift + i], mul(*q, b.c[i], lev - 1), lev - 1, true);
            } else {
                a = mul_coeff(a, lb, lev);
                for (std::size_t i = 0; i <= db; ++i)
                    if (!zero(b.c[i], lev - 1)) a.c[shift + i] = add(a.c[shift + i], mul(la, b.c[i], lev - 1), lev - 1, true);
            }
            trim(a, lev);
        }
        return a;
    }

    Dense gcd_univariate(Dense a, Dense b) const {
        std::vector<std::int64_t> x, y;
        for (const auto& t : a.c) x.push_back(t.k);
        for (const auto& t : b.c) y.push_back(t.k);
        while (!y.empty()) {
            const std::int64_t inv = inv_mod(y.back(), p_);
            while (x.size() >= y.size()) {
                const std::int64_t q = mul_mod(x.back(), inv, p_);
                const std::size_t shift = x.size() - y.size();
                if (q != 0)
                    for (std::size_t i = 0; i < y.size(); ++i) x[shift + i] = mod_norm(x[shift + i] - q * y[i], p_);
                while (!x.empty() && x.back() == 0) x.pop_back();
            }
            std::swap(x, y);
        }
        Dense r;
        const std::int64_t inv = inv_mod(x.back(), p_);
        for (auto v : x) r.c.push_back(Dense{mul_mod(v, inv, p_), {}});
        return r;
    }

    std::int64_t p_;
};

/// Level k of the dense form holds variable vars[k - 1].
inline Dense to_dense(const SparsePoly& a, const std::vector<std::size_t>& vars) {
    Dense root;
    for (const auto& [e, c] : a.terms()) {
        Dense* node = &root;
        for (std::size_t lev = vars.size(); lev >= 1; --lev) {
            const auto d = e[vars[lev - 1]];
            if (node->c.size() <= d) node->c.resize(d + 1);
            node = &node->c[d];
        }
        node->k = c;
    }
    return root;
}

inline void from_dense_rec(const Dense& a, std::size_t lev, const std::vector<std::size_t>& vars, Exponent& e,
                           SparsePoly& out) {
    if (lev == 0) {
        if (a.k != 0) out.add_term(e, a.k);
        return;
    }
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        e[vars[lev - 1]] = static_cast<std::uint32_t>(i);
        from_dense_rec(a.c[i], lev - 1, vars, e, out);
    }
    e[vars[lev - 1]] = 0;
}

inline SparsePoly from_dense(const Dense& a, const std::vector<std::size_t>& vars, std::size_t nvars,
                             std::int64_t p) {
    SparsePoly out(nvars, p);
    Exponent e(nvars, 0);
    from_dense_rec(a, vars.size(), vars, e, out);
    return out;
}

/// Variables occurring in a or b, highest degree last (it becomes the main
/// variable of the recursion).
inline std::vector<std::size_t> dense_order(const SparsePoly& a, const SparsePoly& b) {
    std::vector<std::pair<std::uint32_t, std::size_t>> deg;
    for (std::size_t v = 0; v < a.nvars(); ++v) {
        const auto d = std::max(a.degree_in(v), b.degree_in(v));
        if (d > 0) deg.emplace_back(d, v);
    }
    std::sort(deg.begin(), deg.end());
    std::vector<std::size_t> out;
    for (const auto& [d, v] : deg) out.push_back(v);
    return out;
}

inline bool dense_applies(const SparsePoly& a) { return is_small_prime(a.modulus()); }

}  // namespace detail

/// Scales a nonzero polynomial over F_p so that its graded-lex leading
/// coefficient is 1. The zero polynomial is returned unchanged.
inline SparsePoly make_monic(const SparsePoly& a) {
    if (a.is_zero() || a.leading_coeff() == 1) return a;
    return a.scaled(detail::inv_mod(a.leading_coeff(), a.modulus()));
}

/// Returns q with a = q*b over F_p, or nothing if b does not divide a.
inline std::optional<SparsePoly> exact_divide(const SparsePoly& a, const SparsePoly& b) {
    if (b.is_zero()) throw DivisionByZero();
    a.check_compatible(b);
    const std::int64_t p = a.modulus();
    if (detail::dense_applies(a)) {
        const auto vars = detail::dense_order(a, b);
        const int n = static_cast<int>(vars.size());
        auto q = detail::DenseField(p).divide(detail::to_dense(a, vars), detail::to_dense(b, vars), n);
        if (!q) return std::nullopt;
        return detail::from_dense(*q, vars, a.nvars(), p);
    }
    SparsePoly q(a.nvars(), p);
    SparsePoly r = a;
    const Exponent& lb = b.leading_exp();
    const std::int64_t inv_lc = detail::inv_mod(b.leading_coeff(), p);
    Exponent m(a.nvars());
    while (!r.is_zero()) {
        const Exponent& lr = r.leading_exp();
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (lr[i] < lb[i]) return std::nullopt;
            m[i] = lr[i] - lb[i];
        }
        const std::int64_t c = detail::mul_mod(r.leading_coeff(), inv_lc, p);
        q.add_term(m, c);
        r -= b.times_monomial(m).scaled(c);
    }
    return q;
}

inline SparsePoly divide_or_throw(const SparsePoly& a, const SparsePoly& b) {
    auto q = exact_divide(a, b);
    if (!q) throw Error("inexact polynomial division");
    return std::move(*q);
}

namespace detail {

/// Coefficients of a as a polynomial in variable v, indexed by degree.
inline std::map<std::uint32_t, SparsePoly> coefficients_in(const SparsePoly& a, std::size_t v) {
    std::map<std::uint32_t, SparsePoly> out;
    for (const auto& [e, c] : a.terms()) {
        Exponent s = e;
        s[v] = 0;
        auto [it, _] = out.try_emplace(e[v], SparsePoly(a.nvars(), a.modulus()));
        it->second.add_term(std::move(s), c);
    }
    return out;
}

inline SparsePoly v_power(const SparsePoly& like, std::size_t v, std::uint32_t k) {
    Exponent e(like.nvars(), 0);
    e[v] = k;
    return SparsePoly::monomial(like.nvars(), like.modulus(), std::move(e), 1);
}

inline SparsePoly leading_in(const SparsePoly& a, std::size_t v) {
    return coefficients_in(a, v).rbegin()->second;
}

/// Pseudo-remainder of a by b with respect to variable v.
inline SparsePoly pseudo_remainder(SparsePoly a, const SparsePoly& b, std::size_t v) {
    const std::uint32_t db = b.degree_in(v);
    const SparsePoly lb = leading_in(b, v);
    while (!a.is_zero() && a.degree_in(v) >= db) {
        const std::uint32_t da = a.degree_in(v);
        const SparsePoly la = leading_in(a, v);
        a = lb * a - la * v_power(a, v, da - db) * b;
    }
    return a;
}

inline int highest_variable(const SparsePoly& a) {
    for (int v = static_cast<int>(a.nvars()) - 1; v >= 0; --v)
        if (a.involves(static_cast<std::size_t>(v))) return v;
    return -1;
}

}  // namespace detail

inline SparsePoly gcd(const SparsePoly& a, const SparsePoly& b);

/// GCD of the coefficients of a viewed as a polynomial in v (monic).
inline SparsePoly content_in(const SparsePoly& a, std::size_t v) {
    SparsePoly g(a.nvars(), a.modulus());
    for (const auto& [d, c] : detail::coefficients_in(a, v)) {
        g = gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

inline SparsePoly primitive_part_in(const SparsePoly& a, std::size_t v) {
    if (a.is_zero()) return a;
    return divide_or_throw(a, content_in(a, v));
}

/// Monic GCD over F_p; gcd(0, 0) = 0.
inline SparsePoly gcd(const SparsePoly& a, const SparsePoly& b) {
    a.check_compatible(b);
    if (a.is_zero()) return make_monic(b);
    if (b.is_zero()) return make_monic(a);
    const SparsePoly one = SparsePoly::constant(a.nvars(), a.modulus(), 1);
    if (a.is_constant() || b.is_constant()) return one;
    if (detail::dense_applies(a)) {
        const auto vars = detail::dense_order(a, b);
        const int n = static_cast<int>(vars.size());
        const detail::DenseField f(a.modulus());
        const auto g = f.gcd(detail::to_dense(a, vars), detail::to_dense(b, vars), n);
        return make_monic(detail::from_dense(g, vars, a.nvars(), a.modulus()));
    }

    const int va = detail::highest_variable(a);
    const int vb = detail::highest_variable(b);
    const auto v = static_cast<std::size_t>(std::max(va, vb));
    if (!a.involves(v)) return gcd(a, content_in(b, v));
    if (!b.involves(v)) return gcd(content_in(a, v), b);

    const SparsePoly ca = content_in(a, v);
    const SparsePoly cb = content_in(b, v);
    const SparsePoly c = gcd(ca, cb);
    SparsePoly x = divide_or_throw(a, ca);
    SparsePoly y = divide_or_throw(b, cb);
    if (x.degree_in(v) < y.degree_in(v)) std::swap(x, y);
    while (!y.is_zero()) {
        SparsePoly r = detail::pseudo_remainder(x, y, v);
        x = std::move(y);
        y = r.is_zero() ? std::move(r) : primitive_part_in(r, v);
    }
    return make_monic(c * primitive_part_in(x, v));
}

}  // namespace pdim
