#include <gtest/gtest.h>

#include "pdim/cdvf.hpp"
#include "pdim/hilbert.hpp"
#include "pdim/random.hpp"

using namespace pdim;

namespace {

const CdvfModel K0(FieldDescriptor::standard(2, 0));
const CdvfModel K1(FieldDescriptor(2, {"t"}));
const CdvfModel K2(FieldDescriptor::standard(2, 2));

CdvfElement el(const char* s, const CdvfModel& m) { return parse_cdvf(s, m); }
RatFunc rf(const char* s, const CdvfModel& m) { return parse_ratfunc(s, m.residue()); }

/// Oracle: the integer unit mod 8 as digits of its binary expansion.
std::int64_t as_int_mod8(const TruncatedUnit& u) {
    std::int64_t n = u.numerator().constant_term(), d = u.denominator().constant_term();
    for (std::int64_t k = 1; k < 8; k += 2)
        if ((d * k) % 8 == 1) return (n * k) % 8;
    return -1;
}

TruncatedUnit random_unit(Rng& rng, const CdvfModel& m) {
    const std::size_t n = m.nvars();
    for (;;) {
        SparsePoly num = random_poly(rng, 8, n, 2, 3);
        SparsePoly den = random_poly(rng, 8, n, 2, 3);
        for (auto* f : {&num, &den}) {
            SparsePoly g(n, 8);
            for (const auto& [e, c] : f->terms()) g.add_term(e, uniform(rng, 0, 7));
            *f = g;
        }
        if (num.with_modulus(2).is_zero() || den.with_modulus(2).is_zero()) continue;
        return TruncatedUnit(TruncatedElem::from_fraction(num, den, m));
    }
}

}  // namespace

TEST(Cutoff, Formula) {
    auto c2 = filtration_cutoff(K1);
    EXPECT_EQ(c2.n_num, 2);
    EXPECT_EQ(c2.n_den, 1);
    EXPECT_EQ(c2.M, 2);
    EXPECT_EQ(c2.L, 3);
    auto c3 = filtration_cutoff(CdvfModel(FieldDescriptor::standard(3, 1)));
    EXPECT_EQ(c3.n_num, 3);
    EXPECT_EQ(c3.n_den, 2);
    EXPECT_EQ(c3.M, 1);
    EXPECT_EQ(c3.L, 2);
    auto c5 = filtration_cutoff(CdvfModel(FieldDescriptor::standard(5, 1)));
    EXPECT_EQ(c5.n_num, 5);
    EXPECT_EQ(c5.n_den, 4);
    EXPECT_EQ(c5.M, 1);
    EXPECT_EQ(c5.L, 2);
    EXPECT_THROW(CdvfModel(FieldDescriptor::standard(2, 1), 2), Error);
    EXPECT_EQ(CdvfModel(FieldDescriptor::standard(2, 1), 5).modulus(), 32);
}

TEST(LiftReduce, WorkedExamples) {
    auto u = lift_unit(rf("t + 1", K1), K1);
    EXPECT_EQ(u.numerator(), parse_ratfunc("t+1", K1.residue()).numerator().with_modulus(8));
    EXPECT_EQ(u.numerator().modulus(), 8);
    EXPECT_EQ(reduce_unit(el("3", K1).unit()), rf("1", K1));
    EXPECT_EQ(reduce_unit(el("(t+3)/(t+1)", K1).unit()), rf("1", K1));
    EXPECT_THROW(lift_unit(rf("0", K1), K1), NonUnit);
    EXPECT_THROW(TruncatedElem::from_fraction(SparsePoly::constant(1, 0, 1), SparsePoly::constant(1, 0, 2), K1),
                 NonUnit);
    Rng rng(41);
    for (int k = 0; k < 50; ++k) {
        RatFunc f = random_nonzero_ratfunc(rng, 2, 2);
        EXPECT_EQ(reduce_unit(lift_unit(f, K2)), f);
    }
}

TEST(UnitLayers, WorkedExamples) {
    // Oracle: exhaustive search over (c1, c2) in {0,1}^2 of (1+2c1)(1+4c2) mod 8.
    const auto search = [](std::int64_t u) {
        for (int c1 = 0; c1 < 2; ++c1)
            for (int c2 = 0; c2 < 2; ++c2)
                if ((1 + 2 * c1) * (1 + 4 * c2) % 8 == u) return std::pair{c1, c2};
        return std::pair{-1, -1};
    };
    for (std::int64_t u : {1, 3, 5, 7}) {
        auto l = unit_layers(el(std::to_string(u).c_str(), K0).unit());
        ASSERT_EQ(l.layer_coeffs.size(), 2u);
        auto [c1, c2] = search(u);
        EXPECT_EQ(l.residue_part, RatFunc::one(2, 0));
        EXPECT_EQ(l.layer_coeffs[0], RatFunc::constant(2, 0, c1)) << u;
        EXPECT_EQ(l.layer_coeffs[1], RatFunc::constant(2, 0, c2)) << u;
    }
    auto l = unit_layers(el("t + 2", K1).unit());
    EXPECT_EQ(l.residue_part, rf("t", K1));
    EXPECT_EQ(l.layer_coeffs[0], rf("1/t", K1));
    EXPECT_TRUE(l.layer_coeffs[1].is_zero());
}

TEST(UnitLayers, ReconstructionAndUniqueness) {
    Rng rng(42);
    for (int k = 0; k < 200; ++k) {
        const CdvfModel& m = k % 2 ? K1 : K2;
        TruncatedUnit u = random_unit(rng, m);
        auto l = unit_layers(u);
        TruncatedUnit back = reconstruct(l, m);
        EXPECT_EQ(back, u);
        auto again = unit_layers(back);
        EXPECT_EQ(again.residue_part, l.residue_part);
        EXPECT_EQ(again.layer_coeffs, l.layer_coeffs);
    }
}

TEST(CdvfArith, WorkedExamples) {
    auto pi = CdvfElement::pi(K1);
    auto sq = cdvf_arith(CdvfOp::Mul, pi, pi);
    EXPECT_EQ(sq.val(), 2);
    EXPECT_TRUE(sq.unit().is_one());
    auto inv3 = cdvf_arith(CdvfOp::Inv, el("3", K0), el("3", K0));
    EXPECT_EQ(inv3.val(), 0);
    EXPECT_EQ(as_int_mod8(inv3.unit()), 3);
    auto prod = el("pi*t", K1) * el("pi^-1/t", K1);
    EXPECT_TRUE(prod.is_one());
}

TEST(CdvfArith, RingLaws) {
    Rng rng(43);
    for (int k = 0; k < 60; ++k) {
        const CdvfModel& m = k % 2 ? K1 : K2;
        CdvfElement a(uniform(rng, -2, 2), random_unit(rng, m));
        CdvfElement b(uniform(rng, -2, 2), random_unit(rng, m));
        CdvfElement c(uniform(rng, -2, 2), random_unit(rng, m));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE((a * a.inverse()).is_one());
        EXPECT_TRUE((a.inverse() * a).is_one());
        // Reduction is a ring homomorphism on integral elements.
        TruncatedElem x = a.unit().value(), y = b.unit().value();
        EXPECT_EQ((x + y).reduce(), x.reduce() + y.reduce());
        EXPECT_EQ((x * y).reduce(), x.reduce() * y.reduce());
    }
}

TEST(CdvfArith, TruncatedRing) {
    Rng rng(44);
    for (int k = 0; k < 40; ++k) {
        TruncatedElem a = random_unit(rng, K2).value(), b = random_unit(rng, K2).value();
        TruncatedElem c = random_unit(rng, K2).value();
        EXPECT_EQ((a + b) * c, a * c + b * c);
        EXPECT_EQ(a - a, TruncatedElem::zero(K2));
        EXPECT_EQ((a * c) / c, a);
        EXPECT_EQ(CdvfElement::from_truncated(a.shift_up(1)).val(), 1);
    }
}

TEST(CdvfParse, ValuationsAndRoundTrip) {
    EXPECT_EQ(el("2", K1).val(), 1);
    EXPECT_EQ(el("12", K1).val(), 2);
    EXPECT_EQ(el("(2t + 4)/(6)", K1).val(), 0);
    EXPECT_EQ(el("pi^3 * (t + 2)", K1).val(), 3);
    EXPECT_EQ(el("(2t^2+4)/(8t)", K1).val(), -2);
    EXPECT_EQ(el("pi^-1", K1).val(), -1);
    EXPECT_EQ(el("-1", K0).unit().value(), el("7", K0).unit().value());
    EXPECT_THROW(el("t - t", K1), ParseError);
    EXPECT_THROW(el("x", K1), ParseError);
    Rng rng(45);
    for (int k = 0; k < 40; ++k) {
        CdvfElement a(uniform(rng, -2, 2), random_unit(rng, K2));
        const std::string s = to_string(a, K2.residue().var_names);
        EXPECT_EQ(parse_cdvf(s, K2), a) << s;
    }
}

TEST(Hilbert, WorkedExamples) {
    EXPECT_EQ(hilbert_symbol_2(2, 5), -1);
    EXPECT_EQ(hilbert_symbol_2(5, 2), -1);
    EXPECT_EQ(hilbert_symbol_2(7, 2), 1);
    EXPECT_EQ(hilbert_symbol_2(-1, -1), -1);
    EXPECT_EQ(hilbert_symbol_2(3, 5), 1);
    EXPECT_EQ(hilbert_symbol_2(1, 2), 1);
}

TEST(Hilbert, MatchesClosedFormula) {
    // Oracle: (2^a u, 2^b v) = (-1)^(e(u)e(v) + a w(v) + b w(u)),
    // e(u) = (u-1)/2, w(u) = (u^2-1)/8 mod 2.
    const auto eps = [](std::int64_t u) { return (((u - 1) / 2) % 2 + 2) % 2; };
    const auto omega = [](std::int64_t u) { return (((u * u - 1) / 8) % 2 + 2) % 2; };
    for (std::int64_t a : {0, 1, 2, 3}) {
        for (std::int64_t b : {0, 1, 2}) {
            for (std::int64_t u : {1, 3, 5, 7, 9, -1, -3, 11, 13, 31}) {
                for (std::int64_t v : {1, 3, 5, 7, -5, 15, 17}) {
                    const std::int64_t e = eps(u) * eps(v) + a * omega(v) + b * omega(u);
                    const int expect = e % 2 ? -1 : 1;
                    EXPECT_EQ(hilbert_symbol_2((1LL << a) * u, (1LL << b) * v), expect);
                }
            }
        }
    }
}
