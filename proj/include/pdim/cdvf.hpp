#pragma once

// Truncated model of the unramified complete discretely valued field with
// residue field F_p(t1..tn): pi = p, and the valuation ring modulo pi^L is
// (Z/p^L)[t1..tn] localized at the polynomials that are nonzero mod p.
//
// Elements of R/pi^L are kept by their pi-adic digits d_0..d_{L-1} in the
// residue field, x = sum lift(d_i) pi^i with the coefficientwise lift into
// {0..p-1}. The digits are unique, so they double as the canonical form.

#include <optional>
#include <string>
#include <vector>

#include "pdim/format.hpp"
#include "pdim/parse.hpp"
#include "pdim/residue_field.hpp"

namespace pdim {

struct Cutoff {
    std::int64_t n_num = 0;  // N = n_num / n_den in lowest terms
    std::int64_t n_den = 1;
    std::int64_t M = 0;
    std::int64_t L = 1;
};

class CdvfModel {
public:
    CdvfModel() = default;

    /// `precision` overrides L; it may not drop below M + 1.
    explicit CdvfModel(FieldDescriptor residue, std::optional<std::int64_t> precision = std::nullopt)
        : residue_(std::move(residue)) {
        const std::int64_t p = residue_.p;
        std::int64_t num = e_ * p, den = p - 1;
        const std::int64_t g = std::gcd(num, den);
        cut_ = Cutoff{num / g, den / g, num / den, num / den + 1};
        if (precision) {
            if (*precision < cut_.L)
                throw Error("precision " + std::to_string(*precision) + " is below the cutoff " +
                            std::to_string(cut_.L));
            if (*precision > 12) throw Error("precision above 12 is not supported");
            cut_.L = *precision;
        }
        modulus_ = 1;
        for (std::int64_t i = 0; i < cut_.L; ++i) modulus_ *= p;
    }

    const FieldDescriptor& residue() const noexcept { return residue_; }
    std::int64_t p() const noexcept { return residue_.p; }
    std::size_t nvars() const noexcept { return residue_.num_vars(); }
    std::int64_t e() const noexcept { return e_; }
    const Cutoff& cutoff() const noexcept { return cut_; }
    std::int64_t M() const noexcept { return cut_.M; }
    std::int64_t L() const noexcept { return cut_.L; }
    /// p^L, the coefficient modulus of the model ring.
    std::int64_t modulus() const noexcept { return modulus_; }

    friend bool operator==(const CdvfModel& a, const CdvfModel& b) {
        return a.residue_ == b.residue_ && a.e_ == b.e_ && a.cut_.L == b.cut_.L;
    }

private:
    FieldDescriptor residue_;
    std::int64_t e_ = 1;
    Cutoff cut_;
    std::int64_t modulus_ = 1;
};

inline Cutoff filtration_cutoff(const CdvfModel& m) { return m.cutoff(); }

/// Element of R/pi^L.
class TruncatedElem {
public:
    TruncatedElem() = default;

    static TruncatedElem zero(const CdvfModel& m) {
        TruncatedElem x(m);
        x.rebuild();
        return x;
    }
    static TruncatedElem one(const CdvfModel& m) { return lift(RatFunc::one(m.p(), m.nvars()), m); }

    /// Coefficientwise lift of a residue-field element.
    static TruncatedElem lift(const RatFunc& f, const CdvfModel& m) {
        TruncatedElem x(m);
        x.check_residue(f);
        x.digits_[0] = f;
        x.rebuild();
        return x;
    }

    /// sum lift(d_i) pi^i; missing digits are zero.
    static TruncatedElem from_digits(std::vector<RatFunc> digits, const CdvfModel& m) {
        TruncatedElem x(m);
        if (digits.size() > x.digits_.size()) digits.resize(x.digits_.size());
        for (std::size_t i = 0; i < digits.size(); ++i) {
            x.check_residue(digits[i]);
            x.digits_[i] = std::move(digits[i]);
        }
        x.rebuild();
        return x;
    }

    /// num/den with coefficients taken mod p^L; den must be nonzero mod p.
    static TruncatedElem from_fraction(const SparsePoly& num, const SparsePoly& den, const CdvfModel& m) {
        TruncatedElem x(m);
        x.extract_digits(num.with_modulus(m.modulus()), den.with_modulus(m.modulus()));
        x.rebuild();
        return x;
    }

    /// 1 + lift(c) pi^i.
    static TruncatedElem one_plus(const RatFunc& c, std::int64_t i, const CdvfModel& m) {
        std::vector<RatFunc> d(static_cast<std::size_t>(m.L()), RatFunc::zero(m.p(), m.nvars()));
        d[0] = RatFunc::one(m.p(), m.nvars());
        if (i < m.L()) d[static_cast<std::size_t>(i)] += c;
        return from_digits(std::move(d), m);
    }

    const CdvfModel& model() const noexcept { return model_; }
    const std::vector<RatFunc>& digits() const noexcept { return digits_; }
    const RatFunc& digit(std::size_t i) const { return digits_.at(i); }
    const SparsePoly& numerator() const noexcept { return num_; }
    const SparsePoly& denominator() const noexcept { return den_; }

    bool is_zero() const {
        for (const auto& d : digits_)
            if (!d.is_zero()) return false;
        return true;
    }
    bool is_unit() const { return !digits_[0].is_zero(); }
    bool is_one() const {
        if (!digits_[0].is_one()) return false;
        for (std::size_t i = 1; i < digits_.size(); ++i)
            if (!digits_[i].is_zero()) return false;
        return true;
    }

    /// Index of the first nonzero digit; L when the element is zero.
    std::int64_t valuation() const {
        for (std::size_t i = 0; i < digits_.size(); ++i)
            if (!digits_[i].is_zero()) return static_cast<std::int64_t>(i);
        return static_cast<std::int64_t>(digits_.size());
    }

    /// Largest i with x = 1 mod pi^i (L when x = 1); 0 unless the residue is 1.
    std::int64_t unit_level() const {
        if (!digits_[0].is_one()) return 0;
        for (std::size_t i = 1; i < digits_.size(); ++i)
            if (!digits_[i].is_zero()) return static_cast<std::int64_t>(i);
        return static_cast<std::int64_t>(digits_.size());
    }

    RatFunc reduce() const { return digits_[0]; }

    friend TruncatedElem operator+(const TruncatedElem& a, const TruncatedElem& b) {
        a.check(b);
        return from_fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, a.model_);
    }
    friend TruncatedElem operator-(const TruncatedElem& a, const TruncatedElem& b) {
        a.check(b);
        return from_fraction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_, a.model_);
    }
    TruncatedElem operator-() const { return from_fraction(-num_, den_, model_); }
    friend TruncatedElem operator*(const TruncatedElem& a, const TruncatedElem& b) {
        a.check(b);
        return from_fraction(a.num_ * b.num_, a.den_ * b.den_, a.model_);
    }
    /// Division by a unit.
    friend TruncatedElem operator/(const TruncatedElem& a, const TruncatedElem& b) {
        a.check(b);
        if (!b.is_unit()) throw NonUnit("division by a non-unit");
        return from_fraction(a.num_ * b.den_, a.den_ * b.num_, a.model_);
    }
    TruncatedElem inverse() const { return one(model_) / *this; }

    TruncatedElem pow(std::int64_t k) const {
        if (k < 0) return inverse().pow(-k);
        TruncatedElem r = one(model_), b = *this;
        while (k > 0) {
            if (k & 1) r = r * b;
            k >>= 1;
            if (k > 0) b = b * b;
        }
        return r;
    }

    /// Multiplies by pi^k (k >= 0), dropping digits past L.
    TruncatedElem shift_up(std::int64_t k) const {
        std::vector<RatFunc> d(digits_.size(), zero_digit());
        for (std::size_t i = 0; i + static_cast<std::size_t>(k) < digits_.size(); ++i)
            d[i + static_cast<std::size_t>(k)] = digits_[i];
        return from_digits(std::move(d), model_);
    }

    /// Divides by pi^k when the first k digits vanish. The k top digits are
    /// unknown afterwards and are filled with zeros.
    TruncatedElem shift_down(std::int64_t k) const {
        std::vector<RatFunc> d(digits_.size(), zero_digit());
        for (std::size_t i = static_cast<std::size_t>(k); i < digits_.size(); ++i) {
            d[i - static_cast<std::size_t>(k)] = digits_[i];
        }
        for (std::int64_t i = 0; i < k && i < static_cast<std::int64_t>(digits_.size()); ++i)
            if (!digits_[static_cast<std::size_t>(i)].is_zero()) throw Error("shift_down of a non-divisible element");
        return from_digits(std::move(d), model_);
    }

    /// Image under a monomial relabeling of the residue field, applied to
    /// the model ring coefficientwise.
    TruncatedElem embed(const Embedding& e, const CdvfModel& target) const {
        std::vector<RatFunc> d;
        for (const auto& x : digits_) d.push_back(embed_element(x, e));
        if (!e.monomial_images()) throw Error("only monomial embeddings extend to the model ring");
        return from_digits(std::move(d), target);
    }

    friend bool operator==(const TruncatedElem& a, const TruncatedElem& b) {
        return a.model_ == b.model_ && a.digits_ == b.digits_;
    }

    void check(const TruncatedElem& o) const {
        if (!(model_ == o.model_)) throw FieldMismatch("elements of different models");
    }

private:
    explicit TruncatedElem(const CdvfModel& m)
        : model_(m), digits_(static_cast<std::size_t>(m.L()), RatFunc::zero(m.p(), m.nvars())) {}

    RatFunc zero_digit() const { return RatFunc::zero(model_.p(), model_.nvars()); }

    void check_residue(const RatFunc& f) const {
        if (f.prime() != model_.p() || f.nvars() != model_.nvars())
            throw FieldMismatch("residue element from a different field");
    }

    SparsePoly lift_poly(const SparsePoly& f) const { return f.with_modulus(model_.modulus()); }

    // d_0 = x mod p; then x <- (x - lift(d_0)) / p, exactly, one digit at a time.
    void extract_digits(SparsePoly num, SparsePoly den) {
        const std::int64_t p = model_.p();
        if (den.with_modulus(p).is_zero()) throw NonUnit("denominator vanishes mod p");
        for (std::size_t i = 0; i < digits_.size(); ++i) {
            if (num.is_zero()) break;
            RatFunc d(num.with_modulus(p), den.with_modulus(p));
            if (i + 1 < digits_.size()) {
                SparsePoly diff = num * lift_poly(d.denominator()) - lift_poly(d.numerator()) * den;
                num = diff.divide_coefficients(p);
                den = den * lift_poly(d.denominator());
            }
            digits_[i] = std::move(d);
        }
    }

    void rebuild() {
        const std::int64_t q = model_.modulus();
        const std::size_t n = model_.nvars();
        num_ = SparsePoly(n, q);
        den_ = SparsePoly::constant(n, q, 1);
        std::int64_t scale = 1;
        for (const auto& d : digits_) {
            if (!d.is_zero()) {
                const SparsePoly dn = lift_poly(d.denominator());
                num_ = num_ * dn + (lift_poly(d.numerator()) * den_).scaled(scale);
                den_ = den_ * dn;
            }
            scale *= model_.p();
        }
    }

    CdvfModel model_;
    std::vector<RatFunc> digits_;
    SparsePoly num_, den_;
};

/// A unit of R/pi^L (its residue is nonzero).
class TruncatedUnit {
public:
    TruncatedUnit() = default;
    explicit TruncatedUnit(TruncatedElem x) : x_(std::move(x)) {
        if (!x_.is_unit()) throw NonUnit("element is not a unit");
    }

    static TruncatedUnit one(const CdvfModel& m) { return TruncatedUnit(TruncatedElem::one(m)); }

    const TruncatedElem& value() const noexcept { return x_; }
    const CdvfModel& model() const noexcept { return x_.model(); }
    const SparsePoly& numerator() const noexcept { return x_.numerator(); }
    const SparsePoly& denominator() const noexcept { return x_.denominator(); }
    const std::vector<RatFunc>& digits() const noexcept { return x_.digits(); }
    RatFunc residue() const { return x_.reduce(); }
    bool is_one() const { return x_.is_one(); }
    std::int64_t level() const { return x_.unit_level(); }

    friend TruncatedUnit operator*(const TruncatedUnit& a, const TruncatedUnit& b) {
        return TruncatedUnit(a.x_ * b.x_);
    }
    friend TruncatedUnit operator/(const TruncatedUnit& a, const TruncatedUnit& b) {
        return TruncatedUnit(a.x_ / b.x_);
    }
    TruncatedUnit inverse() const { return TruncatedUnit(x_.inverse()); }
    TruncatedUnit pow(std::int64_t k) const { return TruncatedUnit(x_.pow(k)); }
    TruncatedUnit operator-() const { return TruncatedUnit(-x_); }

    friend bool operator==(const TruncatedUnit& a, const TruncatedUnit& b) { return a.x_ == b.x_; }

private:
    TruncatedElem x_;
};

inline TruncatedUnit lift_unit(const RatFunc& f, const CdvfModel& m) {
    if (f.is_zero()) throw NonUnit("lift of zero is not a unit");
    return TruncatedUnit(TruncatedElem::lift(f, m));
}

inline RatFunc reduce_unit(const TruncatedUnit& u) { return u.residue(); }

/// Reduction mod p of an arbitrary num/den; throws NonUnit when den vanishes mod p.
inline RatFunc reduce_fraction(const SparsePoly& num, const SparsePoly& den, std::int64_t p) {
    SparsePoly d = den.with_modulus(p);
    if (d.is_zero()) throw NonUnit("denominator vanishes mod p");
    return RatFunc(num.with_modulus(p), std::move(d));
}

struct UnitLayers {
    RatFunc residue_part;
    /// c_1..c_{L-1}.
    std::vector<RatFunc> layer_coeffs;
};

/// u = lift(residue) * prod_i (1 + lift(c_i) pi^i) mod pi^L.
inline UnitLayers unit_layers(const TruncatedUnit& u) {
    const CdvfModel& m = u.model();
    UnitLayers out{u.residue(), {}};
    TruncatedElem w = (u / lift_unit(out.residue_part, m)).value();
    for (std::int64_t i = 1; i < m.L(); ++i) {
        RatFunc c = w.digit(static_cast<std::size_t>(i));
        if (!c.is_zero()) w = w / TruncatedElem::one_plus(c, i, m);
        out.layer_coeffs.push_back(std::move(c));
    }
    return out;
}

inline TruncatedUnit reconstruct(const UnitLayers& layers, const CdvfModel& m) {
    TruncatedUnit u = lift_unit(layers.residue_part, m);
    for (std::size_t i = 0; i < layers.layer_coeffs.size(); ++i)
        u = u * TruncatedUnit(TruncatedElem::one_plus(layers.layer_coeffs[i], static_cast<std::int64_t>(i + 1), m));
    return u;
}

/// pi^val * unit.
class CdvfElement {
public:
    CdvfElement() = default;
    CdvfElement(std::int64_t val, TruncatedUnit unit) : val_(val), unit_(std::move(unit)) {}

    static CdvfElement pi(const CdvfModel& m) { return CdvfElement(1, TruncatedUnit::one(m)); }
    static CdvfElement one(const CdvfModel& m) { return CdvfElement(0, TruncatedUnit::one(m)); }
    static CdvfElement lift(const RatFunc& f, const CdvfModel& m) { return CdvfElement(0, lift_unit(f, m)); }
    static CdvfElement integer(std::int64_t k, const CdvfModel& m) {
        if (k == 0) throw NonUnit("zero has no valuation");
        std::int64_t v = 0;
        while (k % m.p() == 0) {
            k /= m.p();
            ++v;
        }
        const std::size_t n = m.nvars();
        return CdvfElement(v, TruncatedUnit(TruncatedElem::from_fraction(SparsePoly::constant(n, 0, k),
                                                                         SparsePoly::constant(n, 0, 1), m)));
    }

    /// Splits a nonzero element of R/pi^L as pi^v * unit. Only L - v digits
    /// of the unit are determined; the rest are set to zero.
    static CdvfElement from_truncated(const TruncatedElem& x) {
        const std::int64_t v = x.valuation();
        if (v >= x.model().L()) throw NonUnit("element vanishes modulo pi^L");
        return CdvfElement(v, TruncatedUnit(x.shift_down(v)));
    }

    std::int64_t val() const noexcept { return val_; }
    const TruncatedUnit& unit() const noexcept { return unit_; }
    const CdvfModel& model() const noexcept { return unit_.model(); }
    bool is_unit() const noexcept { return val_ == 0; }
    bool is_one() const { return val_ == 0 && unit_.is_one(); }

    /// pi^val * unit mod pi^L; val must be >= 0.
    TruncatedElem to_truncated() const {
        if (val_ < 0) throw NonUnit("negative valuation");
        return unit_.value().shift_up(val_);
    }

    friend CdvfElement operator*(const CdvfElement& a, const CdvfElement& b) {
        return CdvfElement(a.val_ + b.val_, a.unit_ * b.unit_);
    }
    friend CdvfElement operator/(const CdvfElement& a, const CdvfElement& b) {
        return CdvfElement(a.val_ - b.val_, a.unit_ / b.unit_);
    }
    CdvfElement inverse() const { return CdvfElement(-val_, unit_.inverse()); }
    CdvfElement pow(std::int64_t k) const { return CdvfElement(val_ * k, unit_.pow(k)); }
    CdvfElement operator-() const { return CdvfElement(val_, -unit_); }

    friend bool operator==(const CdvfElement& a, const CdvfElement& b) {
        return a.val_ == b.val_ && a.unit_ == b.unit_;
    }

private:
    std::int64_t val_ = 0;
    TruncatedUnit unit_;
};

enum class CdvfOp { Mul, Inv };

inline CdvfElement cdvf_arith(CdvfOp op, const CdvfElement& x, const CdvfElement& y) {
    switch (op) {
        case CdvfOp::Mul: return x * y;
        case CdvfOp::Inv: return x.inverse();
    }
    (void)y;
    throw Error("unknown operation");
}

// Parsing: integer-coefficient expressions with `pi`, evaluated exactly over
// Q(t1..tn) before reduction, so valuations are read off correctly.

namespace detail {

struct IntFrac {
    SparsePoly num, den;

    IntFrac operator-() const { return {-num, den}; }
    friend IntFrac operator+(const IntFrac& a, const IntFrac& b) {
        if (a.den == b.den) return {a.num + b.num, a.den};
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend IntFrac operator-(const IntFrac& a, const IntFrac& b) { return a + (-b); }
    friend IntFrac operator*(const IntFrac& a, const IntFrac& b) { return {a.num * b.num, a.den * b.den}; }
    friend IntFrac operator/(const IntFrac& a, const IntFrac& b) {
        if (b.is_zero()) throw DivisionByZero();
        return {a.num * b.den, a.den * b.num};
    }
    IntFrac pow(std::int64_t k) const {
        if (k < 0) return IntFrac{den, num}.pow(-k);
        return {num.pow(static_cast<std::uint32_t>(k)), den.pow(static_cast<std::uint32_t>(k))};
    }
    bool is_zero() const { return num.is_zero(); }
};

/// Largest v with p^v dividing every coefficient.
inline std::int64_t content_valuation(const SparsePoly& f, std::int64_t p) {
    std::int64_t v = 0;
    SparsePoly g = f;
    while (!g.is_zero() && g.coefficients_divisible_by(p)) {
        g = g.divide_coefficients(p);
        ++v;
    }
    return v;
}

inline SparsePoly strip_content(const SparsePoly& f, std::int64_t p, std::int64_t v) {
    SparsePoly g = f;
    for (std::int64_t i = 0; i < v; ++i) g = g.divide_coefficients(p);
    return g;
}

}  // namespace detail

inline CdvfElement to_cdvf(const Expr& e, const CdvfModel& m) {
    const auto& field = m.residue();
    const std::size_t n = field.num_vars();
    using detail::IntFrac;
    const auto one = SparsePoly::constant(n, 0, 1);
    IntFrac x = evaluate<IntFrac>(
        e, [&](const Expr& t) { return IntFrac{SparsePoly::constant(n, 0, t.value), one}; },
        [&](const Expr& t) {
            if (t.name == "pi") return IntFrac{SparsePoly::constant(n, 0, m.p()), one};
            for (std::size_t j = 0; j < n; ++j)
                if (field.var_names[j] == t.name) return IntFrac{SparsePoly::variable(n, 0, j), one};
            throw ParseError("unknown variable '" + t.name + "'", t.line, t.column);
        });
    if (x.is_zero()) throw ParseError("element is zero", e.line, e.column);
    const std::int64_t p = m.p();
    const std::int64_t vn = detail::content_valuation(x.num, p);
    const std::int64_t vd = detail::content_valuation(x.den, p);
    const SparsePoly num = detail::strip_content(x.num, p, vn);
    const SparsePoly den = detail::strip_content(x.den, p, vd);
    return CdvfElement(vn - vd, TruncatedUnit(TruncatedElem::from_fraction(num, den, m)));
}

inline CdvfElement parse_cdvf(std::string_view text, const CdvfModel& m) {
    for (const auto& v : m.residue().var_names)
        if (v == "pi") throw Error("'pi' is reserved for the uniformizer");
    return to_cdvf(parse_expr(text), m);
}

/// `pi^v*(num)/(den)` with num, den over Z/p^L; parses back to the same element.
inline std::string to_string(const CdvfElement& x, const std::vector<std::string>& names) {
    const auto& u = x.unit();
    const auto wrap = [&](const SparsePoly& g) {
        std::string s = to_string(g, names);
        return g.size() > 1 || s.find('*') != std::string::npos ? "(" + s + ")" : s;
    };
    std::string unit;
    if (u.denominator().is_constant() && u.denominator().constant_term() == 1) {
        unit = wrap(u.numerator());
    } else {
        unit = wrap(u.numerator()) + "/" + wrap(u.denominator());
    }
    if (x.val() == 0) return unit;
    const std::string pi = x.val() == 1 ? "pi" : "pi^" + std::to_string(x.val());
    if (u.is_one()) return pi;
    return pi + "*" + unit;
}

inline std::string to_string(const TruncatedUnit& u, const std::vector<std::string>& names) {
    return to_string(CdvfElement(0, u), names);
}

}  // namespace pdim
