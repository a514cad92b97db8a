#include <gtest/gtest.h>

#include <algorithm>

#include "pdim/format.hpp"
#include "pdim/parse.hpp"
#include "pdim/random.hpp"
#include "pdim/residue_field.hpp"

using namespace pdim;

namespace {

const FieldDescriptor F2t(2, {"t"});
const FieldDescriptor F2t12 = FieldDescriptor::standard(2, 2);

RatFunc rf(const char* s, const FieldDescriptor& f = F2t) { return parse_ratfunc(s, f); }

Exponent ex(std::initializer_list<std::uint32_t> e) { return Exponent(e); }

}  // namespace

TEST(Field, DescriptorValidation) {
    EXPECT_THROW(FieldDescriptor(4, {"t"}), UnsupportedPrime);
    EXPECT_THROW(FieldDescriptor(2, {"t", "t"}), Error);
    EXPECT_EQ(FieldDescriptor::standard(3, 4).p_rank(), 4u);
    EXPECT_EQ(FieldDescriptor::standard(5, 0).num_vars(), 0u);
}

TEST(Arith, WorkedExamples) {
    EXPECT_EQ(rf("t") * rf("t"), rf("t^2"));
    EXPECT_TRUE((rf("t") + rf("t")).is_zero());
    EXPECT_EQ(rf("(t+1)/t").inverse(), rf("t/(t+1)"));
    EXPECT_THROW(rf("0").inverse(), DivisionByZero);
    EXPECT_EQ(-rf("t"), rf("t"));
}

TEST(Arith, CanonicalForm) {
    const FieldDescriptor f3 = FieldDescriptor::standard(3, 2);
    RatFunc a = rf("(t1^2 - t2^2)/(2*t1 + 2*t2)", f3);
    // (t1-t2)(t1+t2) / 2(t1+t2) = 2(t1 - t2) = 2 t1 + t2
    EXPECT_EQ(a, rf("2*t1 + t2", f3));
    EXPECT_TRUE(a.is_polynomial());
    RatFunc b = rf("t1/(2*t1*t2 + 2)", f3);
    EXPECT_EQ(b.denominator().leading_coeff(), 1);
    // Idempotent: rebuilding from a canonical pair changes nothing.
    EXPECT_EQ(RatFunc(b.numerator(), b.denominator()), b);
}

TEST(Arith, Gcd) {
    const auto p = [](const char* s) { return parse_ratfunc(s, F2t12).numerator(); };
    EXPECT_EQ(gcd(p("t1^2 + t2^2"), p("t1 + t2")), p("t1 + t2"));
    EXPECT_EQ(gcd(p("t1*t2 + t1"), p("t2^2 + 1")), p("t2 + 1"));
    EXPECT_TRUE(gcd(p("t1"), p("t2")).is_constant());
}

TEST(Arith, FieldAxiomsRandom) {
    Rng rng(11);
    for (std::int64_t p : {2, 3, 5}) {
        for (int k = 0; k < 40; ++k) {
            RatFunc a = random_ratfunc(rng, p, 2);
            RatFunc b = random_ratfunc(rng, p, 2);
            RatFunc c = random_nonzero_ratfunc(rng, p, 2);
            EXPECT_EQ((a + b) * c, a * c + b * c);
            EXPECT_EQ(a * c / c, a);
            EXPECT_EQ(a - a, RatFunc::zero(p, 2));
            EXPECT_TRUE((c * c.inverse()).is_one());
        }
    }
}

TEST(PthRoot, WorkedExamples) {
    EXPECT_EQ(pth_root(rf("t^2")), rf("t"));
    EXPECT_FALSE(pth_root(rf("t")).has_value());
    EXPECT_EQ(pth_root(rf("t1^2*t2^2", F2t12)), rf("t1*t2", F2t12));
    EXPECT_EQ(pth_root(rf("1/(t^2+1)")), rf("1/(t+1)"));
}

TEST(PthRoot, Soundness) {
    Rng rng(12);
    for (std::int64_t p : {2, 3, 5}) {
        for (int k = 0; k < 60; ++k) {
            RatFunc f = random_ratfunc(rng, p, 2);
            auto r = pth_root(f.pow(p));
            ASSERT_TRUE(r.has_value());
            EXPECT_EQ(r->pow(p), f.pow(p));
            if (auto q = pth_root(f)) {
                EXPECT_EQ(q->pow(p), f);
            }
        }
    }
}

TEST(Frobenius, WorkedExamples) {
    auto d = frobenius_decompose(rf("t^3 + t"));
    ASSERT_EQ(d.components.size(), 1u);
    // Oracle: c_1 = t + 1 because (t+1)^2 * t expands to t^3 + t.
    EXPECT_EQ(d.coeff(ex({1})), rf("t+1"));
    EXPECT_EQ(rf("t+1") * rf("t+1") * rf("t"), rf("t^3 + t"));
    EXPECT_TRUE(d.coeff(ex({0})).is_zero());

    auto sq = frobenius_decompose(rf("t^2"));
    ASSERT_EQ(sq.components.size(), 1u);
    EXPECT_EQ(sq.coeff(ex({0})), rf("t"));

    auto basis = frobenius_decompose(rf("t"));
    ASSERT_EQ(basis.components.size(), 1u);
    EXPECT_EQ(basis.coeff(ex({1})), rf("1"));
}

TEST(Frobenius, RoundtripRandom) {
    Rng rng(13);
    int checked = 0;
    for (std::int64_t p : {2, 3, 5}) {
        for (std::size_t n : {1u, 2u, 3u}) {
            for (int k = 0; k < 25; ++k, ++checked) {
                RatFunc f = random_ratfunc(rng, p, n);
                auto d = frobenius_decompose(f);
                EXPECT_EQ(d.reconstruct(), f);
                for (const auto& [e, c] : d.components) {
                    EXPECT_FALSE(c.is_zero());
                    for (auto x : e) EXPECT_LT(x, static_cast<std::uint32_t>(p));
                }
            }
        }
    }
    EXPECT_GE(checked, 200);
}

TEST(PIndependence, WorkedExamples) {
    EXPECT_TRUE(p_independence({rf("t1", F2t12), rf("t2", F2t12)}, F2t12).independent);
    EXPECT_FALSE(p_independence({rf("t"), rf("t+1")}, F2t).independent);
    auto dep = p_independence({rf("t1", F2t12), rf("t1^2*t2^2", F2t12)}, F2t12);
    EXPECT_FALSE(dep.independent);
    EXPECT_EQ(dep.rank, 1u);
    EXPECT_EQ(dep.pivot_columns, std::vector<std::size_t>{0});
    EXPECT_THROW(p_independence({rf("0")}, F2t), HypothesisFailed);
    EXPECT_TRUE(p_independence({}, F2t).independent);
}

TEST(PIndependence, InvariantUnderReorderAndPthPowers) {
    Rng rng(14);
    for (int k = 0; k < 60; ++k) {
        const std::int64_t p = k % 2 ? 3 : 2;
        std::vector<RatFunc> v;
        for (int i = 0; i < 2; ++i) v.push_back(random_nonzero_ratfunc(rng, p, 3));
        const auto base = p_independence(v, p, 3);
        std::vector<RatFunc> w(v.rbegin(), v.rend());
        EXPECT_EQ(p_independence(w, p, 3).rank, base.rank);
        w[0] *= random_nonzero_ratfunc(rng, p, 3).pow(p);
        EXPECT_EQ(p_independence(w, p, 3).rank, base.rank);
    }
}

TEST(Embedding, WorkedExamples) {
    const auto e1 = Embedding::radical(F2t12, {1, 0});
    const auto& s = e1.target;
    EXPECT_EQ(e1.degree, 2u);
    EXPECT_EQ(embed_element(rf("t1", F2t12), e1), rf("s1^2", s));
    EXPECT_EQ(embed_element(rf("t1 + t2", F2t12), e1), rf("s1^2 + s2", s));
    EXPECT_EQ(embed_element(rf("1/t1", F2t12), e1), rf("1/s1^2", s));
    EXPECT_THROW(embed_element(rf("t"), e1), FieldMismatch);
}

TEST(Embedding, HomomorphismRandom) {
    Rng rng(15);
    const auto src = FieldDescriptor::standard(3, 2);
    const auto e = Embedding::radical(src, {1, 2});
    EXPECT_EQ(e.degree, 27u);
    for (int k = 0; k < 100; ++k) {
        RatFunc a = random_ratfunc(rng, 3, 2);
        RatFunc b = random_nonzero_ratfunc(rng, 3, 2);
        EXPECT_EQ(embed_element(a + b, e), embed_element(a, e) + embed_element(b, e));
        EXPECT_EQ(embed_element(a * b, e), embed_element(a, e) * embed_element(b, e));
        EXPECT_EQ(embed_element(b.inverse(), e), embed_element(b, e).inverse());
    }
}

TEST(Embedding, GeneralSubstitutionAndComposition) {
    // t -> s^2 + s realized as a general substitution; compose with s -> u^2.
    const FieldDescriptor S(2, {"s"});
    const FieldDescriptor U(2, {"u"});
    auto inner = Embedding::substitution(F2t, S, {rf("s^2 + s", S)}, 2);
    auto outer = Embedding::radical(S, {1}, U);
    auto both = compose(outer, inner);
    EXPECT_EQ(both.degree, 4u);
    RatFunc f = rf("(t + 1)/t");
    EXPECT_EQ(embed_element(f, both), embed_element(embed_element(f, inner), outer));
    EXPECT_EQ(embed_element(f, both), rf("(u^4 + u^2 + 1)/(u^4 + u^2)", U));
}

TEST(Format, RoundTrip) {
    Rng rng(16);
    for (std::int64_t p : {2, 3, 5}) {
        const auto f = FieldDescriptor::standard(p, 3);
        for (int k = 0; k < 50; ++k) {
            RatFunc a = random_ratfunc(rng, p, 3);
            EXPECT_EQ(parse_ratfunc(to_string(a, f), f), a) << to_string(a, f);
        }
    }
    EXPECT_EQ(to_string(rf("t1^2*t2 + 1", F2t12), F2t12), "t1^2*t2 + 1");
}

TEST(Parse, Diagnostics) {
    try {
        parse_ratfunc("t1 + \n  (t2", F2t12);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(parse_ratfunc("t3", F2t12), ParseError);
    EXPECT_THROW(parse_ratfunc("t1/(t1 + t1)", F2t12), ParseError);
    EXPECT_EQ(parse_ratfunc("2 t1 t2", FieldDescriptor::standard(3, 2)),
              parse_ratfunc("2*t1*t2", FieldDescriptor::standard(3, 2)));
    EXPECT_EQ(parse_ratfunc("t1^-2", F2t12), parse_ratfunc("1/t1^2", F2t12));
}
