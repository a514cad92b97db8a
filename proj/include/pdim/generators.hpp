#pragma once

// Random instances of the structured families the property checks use.

#include <vector>

#include "pdim/milnor.hpp"
#include "pdim/random.hpp"

namespace pdim {

/// (a, b) with b = sum_{i<=deg} lambda_i^p a^i, deg <= 3, b != 0: a
/// p-dependent pair.
inline std::pair<RatFunc, RatFunc> random_dependent_pair(Rng& rng, std::int64_t p, std::size_t nvars) {
    for (;;) {
        RatFunc a = random_nonzero_ratfunc(rng, p, nvars, 2, 2);
        const auto deg = uniform(rng, 1, 3);
        RatFunc b = RatFunc::zero(p, nvars);
        RatFunc apow = RatFunc::one(p, nvars);
        for (std::int64_t i = 0; i <= deg; ++i) {
            if (uniform(rng, 0, 3) != 0) b += random_ratfunc(rng, p, nvars, 1, 2).pow(p) * apow;
            apow *= a;
        }
        if (!b.is_zero()) return {std::move(a), std::move(b)};
    }
}

inline SymbolSum random_symbol_sum(Rng& rng, std::int64_t p, std::size_t nvars, std::size_t max_terms = 3) {
    SymbolSum s(p, nvars);
    const auto k = uniform(rng, 1, static_cast<std::int64_t>(max_terms));
    for (std::int64_t i = 0; i < k; ++i)
        s.add(random_nonzero_ratfunc(rng, p, nvars, 2, 2), random_nonzero_ratfunc(rng, p, nvars, 2, 2));
    return s;
}

inline Omega1Form random_omega1(Rng& rng, std::int64_t p, std::size_t nvars) {
    std::vector<RatFunc> c;
    for (std::size_t j = 0; j < nvars; ++j) c.push_back(random_ratfunc(rng, p, nvars, 2, 2));
    return Omega1Form(std::move(c), p);
}

/// Random 2-form; each coordinate is zero with probability `zero_percent`.
inline Omega2Form random_omega2(Rng& rng, std::int64_t p, std::size_t nvars, int zero_percent = 25) {
    Omega2Form a(p, nvars);
    for (std::size_t i = 0; i < nvars; ++i)
        for (std::size_t j = i + 1; j < nvars; ++j)
            if (uniform(rng, 0, 99) >= zero_percent) a.coeff(i, j) = random_ratfunc(rng, p, nvars, 2, 2);
    return a;
}

/// Rational function in the variables other than t_j.
inline RatFunc random_ratfunc_avoiding(Rng& rng, std::int64_t p, std::size_t nvars, std::size_t j, bool nonzero) {
    for (;;) {
        RatFunc f = nonzero ? random_nonzero_ratfunc(rng, p, nvars, 2, 2) : random_ratfunc(rng, p, nvars, 2, 2);
        // Substitute t_j -> 1 by dropping its exponent.
        const auto strip = [&](const SparsePoly& g) {
            SparsePoly r(nvars, p);
            for (const auto& [x, c] : g.terms()) {
                Exponent y = x;
                y[j] = 0;
                r.add_term(std::move(y), c);
            }
            return r;
        };
        SparsePoly num = strip(f.numerator());
        SparsePoly den = strip(f.denominator());
        if (den.is_zero() || (nonzero && num.is_zero())) continue;
        return RatFunc(std::move(num), std::move(den));
    }
}

/// Automorphism t_k -> t_k + q_k(t_{k+1}, ..., t_n) with polynomial q_k.
inline Embedding random_triangular_automorphism(Rng& rng, const FieldDescriptor& f) {
    const std::size_t n = f.num_vars();
    Embedding e = Embedding::identity(f);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        SparsePoly q = random_poly(rng, f.p, n, 2, 2);
        SparsePoly r(n, f.p);
        for (const auto& [x, c] : q.terms()) {
            Exponent y = x;
            for (std::size_t i = 0; i <= k; ++i) y[i] = 0;
            r.add_term(std::move(y), c);
        }
        e.var_images[k] += RatFunc(std::move(r));
    }
    return e;
}

/// Degree-p extension kappa(g^(1/p)) for a random g = b t_j + h, realized
/// as a rational relabeling and precomposed with a random automorphism, so
/// the adjoined element is a general non-p-th power.
inline Embedding random_degree_p_extension(Rng& rng, const FieldDescriptor& f) {
    const auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(f.num_vars()) - 1));
    RatFunc b = random_ratfunc_avoiding(rng, f.p, f.num_vars(), j, true);
    RatFunc h = random_ratfunc_avoiding(rng, f.p, f.num_vars(), j, false);
    Embedding root = Embedding::adjoin_root_linear(f, j, b, h);
    return compose(root, random_triangular_automorphism(rng, f));
}

}  // namespace pdim
