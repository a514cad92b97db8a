#pragma once

// Random Brauer data over the p = 2 model for the property checks. Every
// residue drawn here is nonzero at t = (1, ..., 1), so the classes can be
// specialized at any odd point.

#include "pdim/brauer.hpp"
#include "pdim/generators.hpp"

namespace pdim {

namespace detail {

inline bool odd_at_ones(const SparsePoly& f) {
    std::int64_t s = 0;
    for (const auto& [e, c] : f.terms()) s += c;
    return s % 2 != 0;
}

}  // namespace detail

/// Residue whose numerator and denominator are both odd at (1, ..., 1).
inline RatFunc random_admissible_residue(Rng& rng, std::size_t n) {
    for (;;) {
        RatFunc f = random_nonzero_ratfunc(rng, 2, n, 2, 2);
        if (detail::odd_at_ones(f.numerator()) && detail::odd_at_ones(f.denominator())) return f;
    }
}

/// Higher digit: any residue whose denominator is odd at (1, ..., 1).
inline RatFunc random_admissible_digit(Rng& rng, std::size_t n) {
    for (;;) {
        RatFunc f = random_ratfunc(rng, 2, n, 1, 2);
        if (detail::odd_at_ones(f.denominator())) return f;
    }
}

/// Random element of U_1 other than 1.
inline TruncatedUnit random_u1(Rng& rng, const CdvfModel& m) {
    const std::size_t n = m.nvars();
    for (;;) {
        std::vector<RatFunc> d{RatFunc::one(2, n)};
        for (std::int64_t i = 1; i < m.L(); ++i) d.push_back(random_admissible_digit(rng, n));
        TruncatedUnit u(TruncatedElem::from_digits(std::move(d), m));
        if (!u.is_one()) return u;
    }
}

inline TruncatedUnit random_unit(Rng& rng, const CdvfModel& m) {
    TruncatedUnit u = lift_unit(random_admissible_residue(rng, m.nvars()), m);
    if (uniform(rng, 0, 1) == 1) u = u * random_u1(rng, m);
    return u;
}

/// A random class in br_1, built from shapes whose level-0 datum vanishes.
inline BrauerClass random_br1_piece(Rng& rng, const CdvfModel& m) {
    const std::size_t n = m.nvars();
    const auto lift = [&](const RatFunc& f) { return lift_unit(f, m); };
    const auto el = [](std::int64_t v, TruncatedUnit u) { return CdvfElement(v, std::move(u)); };
    BrauerClass c(m);
    switch (uniform(rng, 0, 5)) {
        case 0:  // (X, pi^v G) with X in U_1
            c.add(el(0, random_u1(rng, m)), el(uniform(rng, 0, 1), random_unit(rng, m)));
            break;
        case 1:  // (pi, W) with W in U_1
            c.add(CdvfElement::pi(m), el(0, random_u1(rng, m)));
            break;
        case 2: {  // (A, B) + (A g^2 X1, B^-1 h^2 X2)
            const TruncatedUnit a = random_unit(rng, m), b = random_unit(rng, m);
            const TruncatedUnit g = lift(random_admissible_residue(rng, n)).pow(2);
            const TruncatedUnit h = lift(random_admissible_residue(rng, n)).pow(2);
            c.add(el(0, a), el(0, b));
            c.add(el(0, a * g * random_u1(rng, m)), el(0, b.inverse() * h * random_u1(rng, m)));
            break;
        }
        case 3: {  // p-dependent residues b = l0^2 + l1^2 a
            for (;;) {
                const RatFunc a = random_admissible_residue(rng, n);
                const RatFunc l0(random_poly(rng, 2, n, 1, 2)), l1(random_poly(rng, 2, n, 1, 2));
                const RatFunc b = l0.pow(2) + l1.pow(2) * a;
                if (b.is_zero() || !detail::odd_at_ones(b.numerator()) || !detail::odd_at_ones(b.denominator()))
                    continue;
                c.add(el(0, lift(a) * random_u1(rng, m)), el(0, lift(b)));
                break;
            }
            break;
        }
        case 4: {  // (2U, 2U h^2 X)
            const TruncatedUnit u = random_unit(rng, m);
            const TruncatedUnit h = lift(random_admissible_residue(rng, n)).pow(2);
            c.add(el(1, u), el(1, u * h * random_u1(rng, m)));
            break;
        }
        default: {  // nonzero integers
            const auto draw = [&] {
                std::int64_t k = 0;
                while (k == 0) k = uniform(rng, -24, 24);
                return CdvfElement::integer(k, m);
            };
            c.add(draw(), draw());
            break;
        }
    }
    return c;
}

inline BrauerClass random_br1_class(Rng& rng, const CdvfModel& m) {
    BrauerClass c(m);
    const auto k = uniform(rng, 1, 3);
    for (std::int64_t i = 0; i < k; ++i) c += random_br1_piece(rng, m);
    return c;
}

inline GradedDatum0 random_datum0(Rng& rng, const CdvfModel& m) {
    const std::size_t n = m.nvars();
    GradedDatum0 d{SymbolSum(m.p(), n), random_nonzero_ratfunc(rng, m.p(), n, 2, 2)};
    const auto k = uniform(rng, 0, 2);
    for (std::int64_t i = 0; i < k; ++i)
        d.k2_part.add(random_nonzero_ratfunc(rng, m.p(), n, 2, 2), random_nonzero_ratfunc(rng, m.p(), n, 2, 2));
    return d;
}

inline GradedDatumI random_datumi(Rng& rng, const CdvfModel& m, std::int64_t level) {
    const std::size_t n = m.nvars();
    GradedDatumI d{level, random_omega1(rng, m.p(), n), random_ratfunc(rng, m.p(), n, 2, 2)};
    return d;
}

}  // namespace pdim
