#include <gtest/gtest.h>

#include "pdim/brauer_generators.hpp"

using namespace pdim;

namespace {

const CdvfModel K0(FieldDescriptor::standard(2, 0));
const CdvfModel K1(FieldDescriptor(2, {"t"}));
const CdvfModel K2(FieldDescriptor::standard(2, 2));
const CdvfModel K4(FieldDescriptor::standard(2, 4));

BrauerClass cls(const char* s, const CdvfModel& m) { return parse_brauer_class(s, m); }
RatFunc rf(const char* s, const CdvfModel& m) { return parse_ratfunc(s, m.residue()); }
TruncatedUnit unit(const char* s, const CdvfModel& m) { return parse_cdvf(s, m).unit(); }

bool is_infinite(const BrauerClass& c) { return !filtration_level(c).has_value(); }

/// Hilbert-symbol agreement of two classes over the first `want` odd points
/// at which both specialize; returns the number of agreeing points, or -1
/// on any disagreement.
int agreeing_points(const BrauerClass& a, const BrauerClass& b, int want) {
    int agree = 0;
    for (const auto& pt : odd_points(a.model().nvars(), 400)) {
        int sa = 0, sb = 0;
        try {
            sa = hilbert_specialize(a, pt);
            sb = hilbert_specialize(b, pt);
        } catch (const BadSpecialization&) {
            continue;
        }
        if (sa != sb) return -1;
        if (++agree == want) break;
    }
    return agree;
}

}  // namespace

TEST(Rho0, ForwardExamples) {
    SymbolSum k(2, 2);
    k.add(rf("t1", K2), rf("t2", K2));
    const BrauerClass c = rho0_forward({k, rf("t1", K2)}, K2);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(to_string(c), "sym(t1, t2) + sym(pi, t1)");
    EXPECT_TRUE(rho0_forward({SymbolSum(2, 2), RatFunc::one(2, 2)}, K2).empty());

    SymbolSum tt(2, 1);
    tt.add(rf("t", K1), rf("t", K1));
    const BrauerClass c1 = rho0_forward({tt, RatFunc::one(2, 1)}, K1);
    EXPECT_EQ(c1.size(), 1u);
    EXPECT_TRUE(datum0_is_zero(rho0_extract(c1)));
}

TEST(Rho0, ExtractExamples) {
    const GradedDatum0 a = rho0_extract(cls("sym(2, t)", K1));
    EXPECT_TRUE(h2p(a.k2_part).is_zero());
    EXPECT_TRUE(is_pth_power(a.unit_class / rf("t", K1)));

    const GradedDatum0 b = rho0_extract(cls("sym(t1, t2)", K2));
    SymbolSum k(2, 2);
    k.add(rf("t1", K2), rf("t2", K2));
    EXPECT_TRUE(k2_equal(b.k2_part, k));
    EXPECT_TRUE(b.unit_class.is_one());

    const GradedDatum0 c = rho0_extract(cls("sym(2, 2)", K0));
    EXPECT_TRUE(datum0_is_zero(c));
}

TEST(Rho0, RoundTrip) {
    Rng rng(101);
    int checked = 0;
    for (std::int64_t p : {2, 3}) {
        for (std::size_t n : {1u, 2u}) {
            const CdvfModel m(FieldDescriptor::standard(p, n));
            for (int k = 0; k < 30; ++k) {
                const GradedDatum0 d = random_datum0(rng, m);
                EXPECT_TRUE(datum0_equal(rho0_extract(rho0_forward(d, m)), d));
                ++checked;
            }
        }
    }
    EXPECT_GE(checked, 100);
}

TEST(RhoI, ForwardExamples) {
    const GradedDatumI d1{1, Omega1Form::basis(2, 1, 0), RatFunc::zero(2, 1)};
    EXPECT_EQ(to_string(rhoi_forward(d1, K1)), "sym((2*t + 1), t)");

    const GradedDatumI d2{2, Omega1Form(2, 0), RatFunc::one(2, 0)};
    const BrauerClass c2 = rhoi_forward(d2, K0);
    EXPECT_EQ(to_string(c2), "sym(pi, 5)");
    EXPECT_EQ(hilbert_specialize(c2, {}), hilbert_symbol_2(2, 5));

    EXPECT_TRUE(rhoi_forward({1, Omega1Form(2, 1), RatFunc::zero(2, 1)}, K1).empty());
    EXPECT_THROW(rhoi_forward({3, Omega1Form(2, 1), RatFunc::zero(2, 1)}, K1), LevelOutOfRange);
    EXPECT_THROW(rhoi_forward({0, Omega1Form(2, 1), RatFunc::zero(2, 1)}, K1), LevelOutOfRange);
}

TEST(RhoI, ExtractExamples) {
    const GradedDatumI a = rhoi_extract(cls("sym(1+2*t, t)", K1), 1);
    EXPECT_EQ(a.form, Omega1Form::basis(2, 1, 0));
    EXPECT_TRUE(a.scalar.is_zero());

    const GradedDatumI b = rhoi_extract(cls("sym(3, t)", K1), 1);
    EXPECT_EQ(b.form[0], rf("1/t", K1));
    EXPECT_TRUE(b.scalar.is_zero());

    const GradedDatumI c = rhoi_extract(cls("sym(5, t)", K1), 2);
    EXPECT_EQ(c.form[0], rf("1/t", K1));
    EXPECT_TRUE(c.scalar.is_zero());

    EXPECT_THROW(rhoi_extract(cls("sym(3, t)", K1), 2), NotInLevel);
    EXPECT_THROW(rhoi_extract(cls("sym(t, 2)", K1), 1), NotInLevel);
    EXPECT_THROW(rhoi_extract(cls("sym(3, t)", K1), 3), LevelOutOfRange);
}

TEST(RhoI, OneSidedConsistency) {
    Rng rng(202);
    for (std::int64_t level : {1, 2}) {
        int checked = 0;
        for (std::size_t n : {1u, 2u}) {
            const CdvfModel m(FieldDescriptor::standard(2, n));
            for (int k = 0; k < 50; ++k) {
                const GradedDatumI d = random_datumi(rng, m, level);
                const BrauerClass c = rhoi_forward(d, m);
                const auto l = filtration_level(c);
                EXPECT_TRUE(!l || *l >= level) << to_string(c);
                const GradedDatumI e = rhoi_extract(c, level);
                const GradedDatumI diff{level, d.form - e.form, d.scalar - e.scalar};
                const auto r = filtration_level(rhoi_forward(diff, m));
                EXPECT_TRUE(!r || *r > level) << to_string(c);
                ++checked;
            }
        }
        EXPECT_GE(checked, 100);
    }
}

TEST(Filtration, Examples) {
    EXPECT_EQ(filtration_level(cls("sym(t1, t2)", K2)), 0);
    EXPECT_EQ(filtration_level(cls("sym(3, t)", K1)), 1);
    EXPECT_FALSE(filtration_level(BrauerClass(K1)).has_value());
}

TEST(Filtration, TopLevelRelations) {
    // 2(x, y) = 0 and (1 + 4x, x) = 0 are invisible digit by digit.
    EXPECT_TRUE(is_infinite(cls("sym(1+4*t, t)", K1)));
    EXPECT_TRUE(is_infinite(cls("sym(1+4*t^3, t)", K1)));
    EXPECT_TRUE(is_infinite(cls("sym(3+2*t, 1+t) + sym(3+2*t, 1+t)", K1)));
    EXPECT_TRUE(is_infinite(cls("sym(t^2+t+1, 5) + sym(t^2+t+1, 5)", K1)));
    // Genuinely nonzero top-level classes stay put.
    EXPECT_EQ(filtration_level(cls("sym(5, t)", K1)), 2);
    EXPECT_EQ(filtration_level(cls("sym(2, 5)", K0)), 2);
    EXPECT_EQ(filtration_level(cls("sym(2, 1+4*t)", K1)), 2);
    EXPECT_EQ(filtration_level(cls("sym(1+4*t1*t2, t2)", K2)), 2);
}

TEST(ArtinSchreier, RootsAndForms) {
    const RatFunc t = rf("t", K1);
    EXPECT_FALSE(artin_schreier_root(RatFunc::one(2, 1)).has_value());
    EXPECT_FALSE(artin_schreier_root(t).has_value());
    const RatFunc c = rf("(t^2+1)/(t^3+t+1)", K1);
    const auto r = artin_schreier_root(c * c + c);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r * *r + *r, c * c + c);

    EXPECT_TRUE(in_exact_plus_artin_schreier(d(rf("t^3/(t+1)", K1))));
    EXPECT_FALSE(in_exact_plus_artin_schreier(Omega1Form(std::vector<RatFunc>{rf("1/t", K1)}, 2)));
    EXPECT_THROW(artin_schreier_root(RatFunc::one(3, 1)), UnsupportedPrime);
}

TEST(ReduceToBr1, Examples) {
    const Br1Reduction a = lemma21_reduce(cls("sym(pi, t)", K1));
    EXPECT_EQ(a.u.residue(), rf("t", K1));
    EXPECT_TRUE(a.reduced.empty());

    const Br1Reduction b = lemma21_reduce(cls("sym(t1, t2)", K2));
    EXPECT_TRUE(b.u.is_one());
    EXPECT_TRUE(b.certified_br1);
    EXPECT_EQ(b.target.nvars(), 2u);

    const Br1Reduction c = lemma21_reduce(cls("sym(t1, t2) + sym(pi, 5)", K2));
    EXPECT_TRUE(c.u.residue().is_one());
    EXPECT_TRUE(c.certified_br1);
}

TEST(NormalForm, Examples) {
    const NormalForm a = normal_form(cls("sym(2, 5)", K0));
    EXPECT_EQ(a.pi_coeff, unit("5", K0));
    EXPECT_LE(a.sweeps, K0.M());
    EXPECT_EQ(hilbert_specialize(a.to_class(K0), {}), -1);

    EXPECT_THROW(normal_form(cls("sym(3*t, 2*t)", K1)), NotInBr1);

    const NormalForm c = normal_form(cls("sym(5*t^2, 3)", K1));
    EXPECT_TRUE(c.lambdas[0].is_one());
    EXPECT_TRUE(c.pi_coeff.is_one());

    EXPECT_THROW(normal_form(BrauerClass(CdvfModel(FieldDescriptor::standard(3, 1)))), UnsupportedPrime);
}

TEST(NormalForm, SoundnessAgainstHilbertOracle) {
    int certified = 0;
    for (std::size_t n : {0u, 1u, 2u}) {
        const CdvfModel m(FieldDescriptor::standard(2, n));
        Rng rng(300 + n);
        for (int k = 0; k < 45; ++k) {
            const BrauerClass c = random_br1_class(rng, m);
            const NormalForm nf = normal_form(c);
            EXPECT_LE(nf.sweeps, m.M());
            EXPECT_TRUE(normal_form_difference_vanishes(c, nf)) << to_string(c);
            const int agree = agreeing_points(c, nf.to_class(m), 20);
            EXPECT_GE(agree, 0) << to_string(c);
            if (agree >= (n == 0 ? 1 : 20)) ++certified;
        }
    }
    EXPECT_GE(certified, 100);
}

TEST(Symbols, BilinearityAndTorsion) {
    Rng rng(404);
    for (std::size_t n : {0u, 1u, 2u}) {
        const CdvfModel m(FieldDescriptor::standard(2, n));
        for (int k = 0; k < 20; ++k) {
            const CdvfElement x(uniform(rng, 0, 1), random_unit(rng, m));
            const CdvfElement y(uniform(rng, 0, 1), random_unit(rng, m));
            const CdvfElement z(uniform(rng, 0, 1), random_unit(rng, m));
            const CdvfElement y2z(2 * y.val() + z.val(), y.unit() * y.unit() * z.unit());
            BrauerClass a(m), b(m);
            a.add(x, y2z);
            b.add(x, z);
            EXPECT_TRUE(datum0_equal(rho0_extract(a), rho0_extract(b)));
            EXPECT_GE(agreeing_points(a, b, 20), n == 0 ? 1 : 20);
        }
    }
}

TEST(Symbols, SimplifyMergesFirstSlots) {
    const BrauerClass c = cls("sym(t, 3) + sym(t, 5) + sym(1, t) + sym(3, 1)", K1);
    const BrauerClass s = c.simplified();
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(to_string(s), "sym(t, 7)");
    EXPECT_THROW(BrauerClass(K1).add(CdvfElement::one(K2), CdvfElement::one(K2)), FieldMismatch);
}

TEST(SplittingField, Examples) {
    const SplittingField a = splitting_field(K0);
    ASSERT_EQ(a.generators.size(), 1u);
    EXPECT_EQ(to_string(a.generators[0]), "pi^(1/2)");
    EXPECT_EQ(a.degree, 2);

    const SplittingField b = splitting_field(K1);
    ASSERT_EQ(b.generators.size(), 2u);
    EXPECT_EQ(to_string(b.generators[0]), "t^(1/2)");
    EXPECT_EQ(b.degree, 4);

    const SplittingField c = splitting_field(K2);
    ASSERT_EQ(c.generators.size(), 3u);
    EXPECT_EQ(to_string(c.generators[0]), "t1^(1/4)");
    EXPECT_EQ(to_string(c.generators[1]), "t2^(1/2)");
    EXPECT_EQ(to_string(c.generators[2]), "pi^(1/2)");
    EXPECT_EQ(c.degree, 16);
}

TEST(IndexBounds, Examples) {
    const IndexBounds a = index_bounds(cls("sym(t1, t2)", K2));
    EXPECT_EQ(a.lower_exp, 1);
    EXPECT_EQ(a.upper_exp, 1);

    const IndexBounds b = index_bounds(cls("sym(t1, t2) + sym(t3, t4)", K4));
    EXPECT_EQ(b.lower_exp, 2);
    EXPECT_EQ(b.upper_exp, 2);

    const IndexBounds c = index_bounds(BrauerClass(K2));
    EXPECT_EQ(c.lower_exp, 0);
    EXPECT_EQ(c.upper_exp, 0);
}

TEST(IndexBounds, LowerNeverExceedsUpper) {
    Rng rng(505);
    for (std::size_t n : {0u, 1u, 2u}) {
        const CdvfModel m(FieldDescriptor::standard(2, n));
        for (int k = 0; k < 15; ++k) {
            const IndexBounds b = index_bounds(random_br1_class(rng, m));
            EXPECT_LE(b.lower_exp, b.upper_exp);
            EXPECT_LE(b.upper_exp, n + 1);
        }
    }
    const IndexBounds w = index_bounds(cls("sym(5, t)", K1));
    EXPECT_EQ(w.lower_exp, 1);
    EXPECT_EQ(w.upper_exp, 1);
}

TEST(PairedClassIndex, Exactness) {
    for (const auto* m : {&K2, &K4}) {
        const IndexBounds b = index_bounds(paired_basis_class(*m, m->nvars() / 2));
        EXPECT_EQ(b.lower_exp, b.upper_exp);
        EXPECT_EQ(b.lower_exp, static_cast<std::int64_t>(m->nvars() / 2));
    }
}

TEST(Hilbert, SpecializationExamples) {
    EXPECT_EQ(hilbert_specialize(cls("sym(2, 5)", K0), {}), -1);
    EXPECT_EQ(hilbert_specialize(cls("sym(t, 2)", K1), {5}), -1);
    EXPECT_EQ(hilbert_specialize(cls("sym(t, 2)", K1), {7}), 1);
    EXPECT_THROW(hilbert_specialize(cls("sym(t, 2)", K1), {4}), BadSpecialization);
    EXPECT_THROW(hilbert_specialize(cls("sym(1/(t+1), 2)", K1), {3}), BadSpecialization);
    EXPECT_THROW(hilbert_specialize(cls("sym(t, 2)", K1), {}), BadSpecialization);
}

TEST(Brdim, Examples) {
    const BrdimReport a = brdim_report(K0);
    EXPECT_EQ(a.lower, 0);
    EXPECT_EQ(a.upper, 1);
    const BrdimReport b = brdim_report(K1);
    EXPECT_EQ(b.lower, 1);
    EXPECT_EQ(b.upper, 2);
    const BrdimReport c = brdim_report(K4);
    EXPECT_EQ(c.lower, 2);
    EXPECT_EQ(c.upper, 8);
}

TEST(PeriodPowerBound, Examples) {
    EXPECT_EQ(period_power_bound(2, 3, 2), 6);
    EXPECT_EQ(period_power_bound(0, 5, 3), 0);
    EXPECT_EQ(period_power_bound(1, 1, 5), 1);
    EXPECT_THROW(period_power_bound(-1, 1, 2), Error);
}

TEST(BrauerParse, RoundTripAndErrors) {
    const BrauerClass c = cls("sym(pi*3, t) + sym(t^2+1, 1/t)", K1);
    EXPECT_EQ(to_string(cls(to_string(c).c_str(), K1)), to_string(c));
    EXPECT_EQ(to_string(BrauerClass(K1)), "0");
    EXPECT_THROW(cls("sym(t, )", K1), ParseError);
    EXPECT_THROW(cls("sym(0, t)", K1), Error);
}
