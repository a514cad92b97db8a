#pragma once

// Residue fields F_p(t1, ..., tn) and their elements.

#include <string>
#include <vector>

#include "pdim/poly_gcd.hpp"

namespace pdim {

inline bool is_supported_prime(std::int64_t p) { return p == 2 || p == 3 || p == 5; }

/// The rational function field F_p(t1..tn); the variables form a p-basis,
/// so n is the p-rank.
struct FieldDescriptor {
    std::int64_t p = 2;
    std::vector<std::string> var_names;

    FieldDescriptor() = default;
    FieldDescriptor(std::int64_t prime, std::vector<std::string> names) : p(prime), var_names(std::move(names)) {
        validate();
    }

    /// Field with variables named prefix1..prefixN.
    static FieldDescriptor standard(std::int64_t prime, std::size_t n, const std::string& prefix = "t") {
        std::vector<std::string> names;
        for (std::size_t i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
        return FieldDescriptor(prime, std::move(names));
    }

    std::size_t num_vars() const noexcept { return var_names.size(); }
    std::size_t p_rank() const noexcept { return var_names.size(); }

    void validate() const {
        if (!is_supported_prime(p)) throw UnsupportedPrime("prime must be 2, 3 or 5, got " + std::to_string(p));
        for (std::size_t i = 0; i < var_names.size(); ++i) {
            if (var_names[i].empty()) throw Error("empty variable name");
            for (std::size_t j = 0; j < i; ++j)
                if (var_names[i] == var_names[j]) throw Error("duplicate variable name " + var_names[i]);
        }
    }

    friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

/// Element of F_p(t1..tn) in canonical form: coprime numerator and
/// denominator, denominator with graded-lex leading coefficient 1, and
/// zero represented as 0/1.
class RatFunc {
public:
    RatFunc() = default;

    RatFunc(SparsePoly num, SparsePoly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

    explicit RatFunc(SparsePoly num)
        : num_(std::move(num)), den_(SparsePoly::constant(num_.nvars(), num_.modulus(), 1)) {}

    static RatFunc constant(std::int64_t p, std::size_t nvars, std::int64_t c) {
        return RatFunc(SparsePoly::constant(nvars, p, c));
    }
    static RatFunc zero(std::int64_t p, std::size_t nvars) { return constant(p, nvars, 0); }
    static RatFunc one(std::int64_t p, std::size_t nvars) { return constant(p, nvars, 1); }
    static RatFunc variable(std::int64_t p, std::size_t nvars, std::size_t j) {
        return RatFunc(SparsePoly::variable(nvars, p, j));
    }
    static RatFunc zero(const FieldDescriptor& f) { return zero(f.p, f.num_vars()); }
    static RatFunc one(const FieldDescriptor& f) { return one(f.p, f.num_vars()); }
    static RatFunc variable(const FieldDescriptor& f, std::size_t j) { return variable(f.p, f.num_vars(), j); }

    const SparsePoly& numerator() const noexcept { return num_; }
    const SparsePoly& denominator() const noexcept { return den_; }
    std::int64_t prime() const noexcept { return num_.modulus(); }
    std::size_t nvars() const noexcept { return num_.nvars(); }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const { return num_.is_constant() && num_.constant_term() == 1 && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }

    RatFunc operator-() const { return RatFunc(-num_, den_, Canonical{}); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_.is_constant() && b.den_.is_constant()) return RatFunc(a.num_ + b.num_, a.den_, Canonical{});
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        // With g = gcd(a.den, b.den), only factors of g can cancel.
        const SparsePoly g = gcd(a.den_, b.den_);
        if (g.is_constant())
            return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, Normalize{});
        const SparsePoly bd = divide_or_throw(b.den_, g);
        SparsePoly n = a.num_ * bd + b.num_ * divide_or_throw(a.den_, g);
        SparsePoly d = a.den_ * bd;
        if (n.is_zero()) return zero(a.prime(), a.nvars());
        const SparsePoly h = gcd(n, g);
        if (h.is_constant()) return RatFunc(std::move(n), std::move(d), Normalize{});
        return RatFunc(divide_or_throw(n, h), divide_or_throw(d, h), Normalize{});
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return zero(a.prime(), a.nvars());
        // Cross-cancel first so the products stay small.
        const SparsePoly g1 = gcd(a.num_, b.den_);
        const SparsePoly g2 = gcd(b.num_, a.den_);
        SparsePoly n = divide_or_throw(a.num_, g1) * divide_or_throw(b.num_, g2);
        SparsePoly d = divide_or_throw(a.den_, g2) * divide_or_throw(b.den_, g1);
        return RatFunc(std::move(n), std::move(d), Normalize{});
    }

    RatFunc inverse() const {
        if (is_zero()) throw DivisionByZero();
        return RatFunc(den_, num_, Normalize{});
    }

    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    RatFunc pow(std::int64_t k) const {
        if (k < 0) return inverse().pow(-k);
        return RatFunc(num_.pow(static_cast<std::uint32_t>(k)), den_.pow(static_cast<std::uint32_t>(k)), Normalize{});
    }

    /// Partial derivative d/dt_j.
    RatFunc partial(std::size_t j) const {
        SparsePoly n = num_.derivative(j) * den_ - num_ * den_.derivative(j);
        return RatFunc(std::move(n), den_ * den_);
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    friend bool operator<(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return a.num_ < b.num_;
        return a.den_ < b.den_;
    }

    void check_compatible(const RatFunc& o) const { num_.check_compatible(o.num_); }

private:
    struct Canonical {};
    struct Normalize {};

    RatFunc(SparsePoly num, SparsePoly den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
    // Coprime already; only the leading coefficient needs fixing.
    RatFunc(SparsePoly num, SparsePoly den, Normalize) : num_(std::move(num)), den_(std::move(den)) {
        normalize_leading();
    }

    void canonicalize() {
        num_.check_compatible(den_);
        if (den_.is_zero()) throw DivisionByZero();
        if (num_.is_zero()) {
            den_ = SparsePoly::constant(num_.nvars(), num_.modulus(), 1);
            return;
        }
        if (!den_.is_constant()) {
            const SparsePoly g = gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = divide_or_throw(num_, g);
                den_ = divide_or_throw(den_, g);
            }
        }
        normalize_leading();
    }

    void normalize_leading() {
        if (den_.is_zero()) throw DivisionByZero();
        if (num_.is_zero()) {
            den_ = SparsePoly::constant(num_.nvars(), num_.modulus(), 1);
            return;
        }
        const std::int64_t lc = den_.leading_coeff();
        if (lc != 1) {
            const std::int64_t inv = detail::inv_mod(lc, den_.modulus());
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    SparsePoly num_;
    SparsePoly den_;
};

}  // namespace pdim
