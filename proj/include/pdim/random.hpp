#pragma once

// Seeded generators for property checks. Everything is driven by an
// explicit std::mt19937_64 so runs are reproducible from the seed.

#include <random>
#include <vector>

#include "pdim/ratfunc.hpp"

namespace pdim {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Up to `max_terms` monomials of total degree <= max_deg (possibly zero).
inline SparsePoly random_poly(Rng& rng, std::int64_t p, std::size_t nvars, std::uint32_t max_deg,
                              std::size_t max_terms) {
    SparsePoly f(nvars, p);
    const auto terms = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_terms)));
    for (std::size_t k = 0; k < terms; ++k) {
        Exponent e(nvars, 0);
        std::uint32_t budget = static_cast<std::uint32_t>(uniform(rng, 0, max_deg));
        for (std::size_t j = 0; j < nvars && budget > 0; ++j) {
            const auto take = static_cast<std::uint32_t>(uniform(rng, 0, budget));
            e[(j + k) % nvars] += take;
            budget -= take;
        }
        f.add_term(std::move(e), uniform(rng, 1, p - 1));
    }
    return f;
}

inline SparsePoly random_nonzero_poly(Rng& rng, std::int64_t p, std::size_t nvars, std::uint32_t max_deg,
                                      std::size_t max_terms) {
    for (;;) {
        SparsePoly f = random_poly(rng, p, nvars, max_deg, max_terms);
        if (!f.is_zero()) return f;
    }
}

inline RatFunc random_ratfunc(Rng& rng, std::int64_t p, std::size_t nvars, std::uint32_t max_deg = 2,
                              std::size_t max_terms = 3) {
    SparsePoly num = random_poly(rng, p, nvars, max_deg, max_terms);
    SparsePoly den = uniform(rng, 0, 2) == 0 ? random_nonzero_poly(rng, p, nvars, max_deg, max_terms)
                                             : SparsePoly::constant(nvars, p, 1);
    return RatFunc(std::move(num), std::move(den));
}

inline RatFunc random_nonzero_ratfunc(Rng& rng, std::int64_t p, std::size_t nvars, std::uint32_t max_deg = 2,
                                      std::size_t max_terms = 3) {
    for (;;) {
        RatFunc f = random_ratfunc(rng, p, nvars, max_deg, max_terms);
        if (!f.is_zero()) return f;
    }
}

}  // namespace pdim
