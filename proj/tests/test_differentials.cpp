#include <gtest/gtest.h>

#include "pdim/generators.hpp"

using namespace pdim;

namespace {

const FieldDescriptor F2t(2, {"t"});
const FieldDescriptor F2n2 = FieldDescriptor::standard(2, 2);
const FieldDescriptor F2n3 = FieldDescriptor::standard(2, 3);
const FieldDescriptor F2n4 = FieldDescriptor::standard(2, 4);

RatFunc rf(const char* s, const FieldDescriptor& f) { return parse_ratfunc(s, f); }

Omega2Form dd(const FieldDescriptor& f, std::size_t i, std::size_t j) {
    return Omega2Form::basis(f.p, f.num_vars(), i, j);
}

}  // namespace

TEST(D, WorkedExamples) {
    auto w = d(rf("t1*t2", F2n2));
    EXPECT_EQ(w[0], rf("t2", F2n2));
    EXPECT_EQ(w[1], rf("t1", F2n2));
    EXPECT_TRUE(d(rf("t^2", F2t)).is_zero());
    EXPECT_EQ(d(rf("1/t", F2t))[0], rf("1/t^2", F2t));
    EXPECT_EQ(to_string(d(rf("t1*t2", F2n2)), F2n2.var_names), "t2 * dt1 + t1 * dt2");
}

TEST(D, Dlog) {
    auto w = dlog(rf("t1*t2", F2n2));
    EXPECT_EQ(w, Omega1Form({rf("1/t1", F2n2), rf("1/t2", F2n2)}, 2));
    EXPECT_TRUE(dlog(rf("t^2 + t + 1", F2t).pow(2)).is_zero());
    EXPECT_EQ(dlog(rf("t + 1", F2t))[0], rf("1/(t+1)", F2t));
    EXPECT_THROW(dlog(rf("0", F2t)), DivisionByZero);
}

TEST(D, DerivationLaws) {
    Rng rng(21);
    int n = 0;
    for (std::int64_t p : {2, 3, 5}) {
        for (int k = 0; k < 70; ++k, ++n) {
            RatFunc f = random_ratfunc(rng, p, 3);
            RatFunc g = random_ratfunc(rng, p, 3);
            EXPECT_EQ(d(f * g), f * d(g) + g * d(f));
            EXPECT_EQ(d(f + g), d(f) + d(g));
            EXPECT_TRUE(d(f.pow(p)).is_zero());
            if (!f.is_zero() && !g.is_zero()) {
                EXPECT_EQ(dlog(f * g), dlog(f) + dlog(g));
            }
        }
    }
    EXPECT_GE(n, 200);
}

TEST(Wedge, WorkedExamples) {
    auto a = wedge(dlog(rf("t1", F2n2)), dlog(rf("t2", F2n2)));
    EXPECT_EQ(a.coeff(0, 1), rf("1/(t1*t2)", F2n2));
    EXPECT_EQ(to_string(a, F2n2.var_names), "(1/(t1*t2)) * dt1^dt2");
    Rng rng(22);
    auto w = random_omega1(rng, 3, 3);
    EXPECT_TRUE(wedge(w, w).is_zero());
    const auto f3 = FieldDescriptor::standard(3, 2);
    EXPECT_TRUE((dd(f3, 0, 1) + dd(f3, 1, 0)).is_zero());
    auto u = random_omega1(rng, 3, 3);
    EXPECT_EQ(wedge(w, u), RatFunc::constant(3, 3, -1) * wedge(u, w));
}

TEST(Restrict, WorkedExamples) {
    const auto e = Embedding::radical(F2n4, {1, 0, 0, 0});
    EXPECT_TRUE(restrict_omega2(dd(F2n4, 0, 1), e).is_zero());
    EXPECT_EQ(restrict_omega2(dd(F2n4, 2, 3), e), dd(e.target, 2, 3));
    EXPECT_EQ(restrict_omega2(dd(F2n4, 0, 1) + dd(F2n4, 2, 3), e), dd(e.target, 2, 3));
    EXPECT_EQ(to_string(restrict_omega2(dd(F2n4, 2, 3), e), e.target.var_names), "ds3^ds4");
}

TEST(Restrict, Functorial) {
    Rng rng(23);
    const auto e1 = Embedding::radical(F2n3, {1, 0, 0});
    const auto e2 = Embedding::radical(e1.target, {0, 1, 0}, FieldDescriptor::standard(2, 3, "u"));
    const auto both = compose(e2, e1);
    EXPECT_EQ(both.degree, 4u);
    for (int k = 0; k < 100; ++k) {
        Omega2Form a = random_omega2(rng, 2, 3);
        EXPECT_EQ(restrict_omega2(a, both), restrict_omega2(restrict_omega2(a, e1), e2));
    }
    // Non-monomial embeddings too.
    for (int k = 0; k < 20; ++k) {
        const auto g = random_degree_p_extension(rng, F2n3);
        const auto h = Embedding::radical(g.target, {0, 0, 1}, FieldDescriptor::standard(2, 3, "u"));
        Omega2Form a = random_omega2(rng, 2, 3);
        EXPECT_EQ(restrict_omega2(a, compose(h, g)), restrict_omega2(restrict_omega2(a, g), h));
    }
}

TEST(KernelDecompose, WorkedExamples) {
    auto f1 = kernel_decompose(dd(F2n3, 0, 1), {rf("t1", F2n3)});
    ASSERT_TRUE(f1.has_value());
    EXPECT_EQ((*f1)[0], Omega1Form::basis(2, 3, 1));

    auto f2 = kernel_decompose(rf("t3", F2n3) * dd(F2n3, 0, 2), {rf("t1", F2n3)});
    ASSERT_TRUE(f2.has_value());
    EXPECT_EQ((*f2)[0], rf("t3", F2n3) * Omega1Form::basis(2, 3, 2));

    EXPECT_FALSE(kernel_decompose(dd(F2n3, 1, 2), {rf("t1", F2n3)}).has_value());
    // Oracle for the negative case: the restriction to kappa(sqrt t1) is nonzero.
    EXPECT_FALSE(restrict_omega2(dd(F2n3, 1, 2), Embedding::radical(F2n3, {1, 0, 0})).is_zero());

    EXPECT_THROW(kernel_decompose(dd(F2n3, 0, 1), {rf("t1", F2n3), rf("t1^3", F2n3)}), DependentGenerators);
    EXPECT_THROW(kernel_decompose(dd(F2n3, 0, 1), {rf("t1^2", F2n3)}), DependentGenerators);
}

TEST(KernelDecompose, CompletenessAgainstRestriction) {
    Rng rng(24);
    const auto e = Embedding::radical(F2n3, {1, 0, 0});
    const std::vector<RatFunc> gens{rf("t1", F2n3)};
    int in_kernel = 0, outside = 0;
    while (in_kernel < 100) {
        Omega2Form a = random_omega2(rng, 2, 3, 40);
        const bool restricts_to_zero = restrict_omega2(a, e).is_zero();
        auto fs = kernel_decompose(a, gens);
        EXPECT_EQ(fs.has_value(), restricts_to_zero);
        if (fs) {
            EXPECT_EQ(expand_decomposition(gens, *fs, 2, 3), a);
            ++in_kernel;
        } else {
            ++outside;
        }
    }
    EXPECT_GT(outside, 0);
}

TEST(KernelDecompose, SoundnessTwoGenerators) {
    Rng rng(25);
    for (int k = 0; k < 40; ++k) {
        std::vector<RatFunc> gens{random_nonzero_ratfunc(rng, 3, 3), random_nonzero_ratfunc(rng, 3, 3)};
        if (!p_independence(gens, 3, 3).independent) continue;
        const Omega2Form a = wedge(d(gens[0]), random_omega1(rng, 3, 3)) + wedge(d(gens[1]), random_omega1(rng, 3, 3));
        auto fs = kernel_decompose(a, gens);
        ASSERT_TRUE(fs.has_value());
        EXPECT_EQ(expand_decomposition(gens, *fs, 3, 3), a);
    }
}

TEST(PairedFormBound, WorkedExamples) {
    const auto one = rf("1", F2n4);
    EXPECT_EQ(lemma16_lower_bound({one, one}, {rf("t1", F2n4), rf("t2", F2n4), rf("t3", F2n4), rf("t4", F2n4)},
                                  F2n4),
              2u);
    EXPECT_EQ(lemma16_lower_bound({rf("1", F2n2)}, {rf("t1", F2n2), rf("t2", F2n2)}, F2n2), 1u);
    EXPECT_THROW(lemma16_lower_bound({rf("1", F2t)}, {rf("t", F2t), rf("t+1", F2t)}, F2t), HypothesisFailed);
    EXPECT_THROW(lemma16_lower_bound({rf("0", F2n2)}, {rf("t1", F2n2), rf("t2", F2n2)}, F2n2), HypothesisFailed);
    EXPECT_THROW(lemma16_lower_bound({rf("1", F2n2)}, {rf("t1", F2n2)}, F2n2), HypothesisFailed);
}

TEST(PairedFormBound, DegreeTwoExtensionsKeepFormNonzero) {
    Rng rng(26);
    const auto one = rf("1", F2n4);
    const std::vector<RatFunc> gens{rf("t1", F2n4), rf("t2", F2n4), rf("t3", F2n4), rf("t4", F2n4)};
    const Omega2Form form = paired_form({one, one}, gens, 2, 4);
    EXPECT_EQ(form, dd(F2n4, 0, 1) + dd(F2n4, 2, 3));
    for (int k = 0; k < 50; ++k) {
        const auto e = random_degree_p_extension(rng, F2n4);
        EXPECT_EQ(e.degree, 2u);
        EXPECT_FALSE(restrict_omega2(form, e).is_zero());
    }
    // Degree 4 = p^m is allowed to kill it.
    EXPECT_TRUE(restrict_omega2(form, Embedding::radical(F2n4, {1, 0, 1, 0})).is_zero());
}
