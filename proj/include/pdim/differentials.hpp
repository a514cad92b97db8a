#pragma once

// Kahler differentials of F_p(t1..tn) in coordinates: 1-forms on the basis
// dt_j and 2-forms on dt_i ^ dt_j (i < j).

#include <optional>
#include <string>
#include <vector>

#include "pdim/format.hpp"
#include "pdim/residue_field.hpp"

namespace pdim {

class Omega1Form {
public:
    Omega1Form() = default;
    Omega1Form(std::int64_t p, std::size_t nvars) : p_(p), coords_(nvars, RatFunc::zero(p, nvars)) {}
    explicit Omega1Form(std::vector<RatFunc> coords, std::int64_t p)
        : p_(p), coords_(std::move(coords)) {}

    /// dt_j.
    static Omega1Form basis(std::int64_t p, std::size_t nvars, std::size_t j) {
        Omega1Form w(p, nvars);
        w.coords_.at(j) = RatFunc::one(p, nvars);
        return w;
    }

    std::int64_t prime() const noexcept { return p_; }
    std::size_t nvars() const noexcept { return coords_.size(); }
    const std::vector<RatFunc>& coords() const noexcept { return coords_; }
    const RatFunc& operator[](std::size_t j) const { return coords_.at(j); }
    RatFunc& operator[](std::size_t j) { return coords_.at(j); }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (!c.is_zero()) return false;
        return true;
    }

    Omega1Form& operator+=(const Omega1Form& o) {
        check(o);
        for (std::size_t j = 0; j < coords_.size(); ++j) coords_[j] += o.coords_[j];
        return *this;
    }
    Omega1Form& operator-=(const Omega1Form& o) {
        check(o);
        for (std::size_t j = 0; j < coords_.size(); ++j) coords_[j] -= o.coords_[j];
        return *this;
    }
    friend Omega1Form operator+(Omega1Form a, const Omega1Form& b) { return a += b; }
    friend Omega1Form operator-(Omega1Form a, const Omega1Form& b) { return a -= b; }
    friend Omega1Form operator*(const RatFunc& f, Omega1Form w) {
        for (auto& c : w.coords_) c = f * c;
        return w;
    }

    friend bool operator==(const Omega1Form& a, const Omega1Form& b) {
        return a.p_ == b.p_ && a.coords_ == b.coords_;
    }

private:
    void check(const Omega1Form& o) const {
        if (p_ != o.p_ || coords_.size() != o.coords_.size()) throw FieldMismatch("1-forms over different fields");
    }

    std::int64_t p_ = 2;
    std::vector<RatFunc> coords_;
};

class Omega2Form {
public:
    Omega2Form() = default;
    Omega2Form(std::int64_t p, std::size_t nvars)
        : p_(p), n_(nvars), coords_(nvars * (nvars > 0 ? nvars - 1 : 0) / 2, RatFunc::zero(p, nvars)) {}

    /// dt_i ^ dt_j for i != j (sign folded in for i > j).
    static Omega2Form basis(std::int64_t p, std::size_t nvars, std::size_t i, std::size_t j) {
        Omega2Form a(p, nvars);
        if (i == j) return a;
        a.coords_[a.slot(std::min(i, j), std::max(i, j))] =
            RatFunc::constant(p, nvars, i < j ? 1 : -1);
        return a;
    }

    std::int64_t prime() const noexcept { return p_; }
    std::size_t nvars() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return coords_.size(); }

    /// Position of the (i, j) coordinate, i < j, in row-major order.
    std::size_t slot(std::size_t i, std::size_t j) const {
        if (!(i < j && j < n_)) throw Error("bad 2-form index");
        return i * n_ - i * (i + 1) / 2 + (j - i - 1);
    }

    const RatFunc& coeff(std::size_t i, std::size_t j) const { return coords_[slot(i, j)]; }
    RatFunc& coeff(std::size_t i, std::size_t j) { return coords_[slot(i, j)]; }
    const std::vector<RatFunc>& coords() const noexcept { return coords_; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (!c.is_zero()) return false;
        return true;
    }

    Omega2Form& operator+=(const Omega2Form& o) {
        check(o);
        for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] += o.coords_[k];
        return *this;
    }
    Omega2Form& operator-=(const Omega2Form& o) {
        check(o);
        for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] -= o.coords_[k];
        return *this;
    }
    friend Omega2Form operator+(Omega2Form a, const Omega2Form& b) { return a += b; }
    friend Omega2Form operator-(Omega2Form a, const Omega2Form& b) { return a -= b; }
    friend Omega2Form operator*(const RatFunc& f, Omega2Form a) {
        for (auto& c : a.coords_) c = f * c;
        return a;
    }

    friend bool operator==(const Omega2Form& a, const Omega2Form& b) {
        return a.p_ == b.p_ && a.n_ == b.n_ && a.coords_ == b.coords_;
    }

private:
    void check(const Omega2Form& o) const {
        if (p_ != o.p_ || n_ != o.n_) throw FieldMismatch("2-forms over different fields");
    }

    std::int64_t p_ = 2;
    std::size_t n_ = 0;
    std::vector<RatFunc> coords_;
};

inline Omega1Form d(const RatFunc& f) {
    std::vector<RatFunc> c;
    for (std::size_t j = 0; j < f.nvars(); ++j) c.push_back(f.partial(j));
    return Omega1Form(std::move(c), f.prime());
}

inline Omega1Form dlog(const RatFunc& f) {
    if (f.is_zero()) throw DivisionByZero();
    return f.inverse() * d(f);
}

inline Omega2Form wedge(const Omega1Form& w, const Omega1Form& v) {
    if (w.prime() != v.prime() || w.nvars() != v.nvars()) throw FieldMismatch("wedge of forms over different fields");
    const std::size_t n = w.nvars();
    Omega2Form out(w.prime(), n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out.coeff(i, j) = w[i] * v[j] - w[j] * v[i];
    return out;
}

inline Omega1Form restrict_omega1(const Omega1Form& w, const Embedding& e) {
    const std::size_t m = e.target.num_vars();
    Omega1Form out(e.target.p, m);
    for (std::size_t j = 0; j < w.nvars(); ++j) {
        if (w[j].is_zero()) continue;
        out += embed_element(w[j], e) * d(e.var_images[j]);
    }
    return out;
}

/// Pullback: each dt_j becomes d(image of t_j), which vanishes for
/// images s_j^(p^r), r >= 1.
inline Omega2Form restrict_omega2(const Omega2Form& a, const Embedding& e) {
    if (a.nvars() != e.source.num_vars() || a.prime() != e.source.p)
        throw FieldMismatch("form does not live in the embedding source");
    const std::size_t n = a.nvars();
    std::vector<Omega1Form> dimg;
    for (const auto& img : e.var_images) dimg.push_back(d(img));
    Omega2Form out(e.target.p, e.target.num_vars());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const RatFunc& c = a.coeff(i, j);
            if (c.is_zero() || dimg[i].is_zero() || dimg[j].is_zero()) continue;
            out += embed_element(c, e) * wedge(dimg[i], dimg[j]);
        }
    }
    return out;
}

/// Solves a = sum_i d(gens_i) ^ f_i for 1-forms f_i. Returns nothing when a
/// is outside the span.
inline std::optional<std::vector<Omega1Form>> kernel_decompose(const Omega2Form& a, const std::vector<RatFunc>& gens) {
    const std::int64_t p = a.prime();
    const std::size_t n = a.nvars();
    for (const auto& g : gens)
        if (g.is_zero()) throw DependentGenerators("zero generator");
    if (!p_independence(gens, p, n).independent) throw DependentGenerators("generators are not p-independent");

    const std::size_t k = gens.size();
    if (k == 0) {
        if (a.is_zero()) return std::vector<Omega1Form>{};
        return std::nullopt;
    }
    std::vector<Omega1Form> da;
    for (const auto& g : gens) da.push_back(d(g));

    // Unknown x[i*n + v] is the dt_v coordinate of f_i; the (u, v) coordinate
    // of da_i ^ f_i is da_i[u] f_i[v] - da_i[v] f_i[u].
    const RatFunc zero = RatFunc::zero(p, n);
    linalg::Matrix<RatFunc> m;
    std::vector<RatFunc> rhs;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            std::vector<RatFunc> row(k * n, zero);
            for (std::size_t i = 0; i < k; ++i) {
                row[i * n + v] += da[i][u];
                row[i * n + u] -= da[i][v];
            }
            m.push_back(std::move(row));
            rhs.push_back(a.coeff(u, v));
        }
    }
    auto x = linalg::solve(m, rhs, zero, GrlexPivotLess{});
    if (!x) return std::nullopt;
    std::vector<Omega1Form> out;
    for (std::size_t i = 0; i < k; ++i)
        out.emplace_back(std::vector<RatFunc>(x->begin() + static_cast<std::ptrdiff_t>(i * n),
                                              x->begin() + static_cast<std::ptrdiff_t>((i + 1) * n)),
                         p);
    return out;
}

/// sum_i d(gens_i) ^ fs_i.
inline Omega2Form expand_decomposition(const std::vector<RatFunc>& gens, const std::vector<Omega1Form>& fs,
                                       std::int64_t p, std::size_t nvars) {
    Omega2Form out(p, nvars);
    for (std::size_t i = 0; i < gens.size(); ++i) out += wedge(d(gens.at(i)), fs.at(i));
    return out;
}

/// sum_i lambda_i * d(gens_{2i-1}) ^ d(gens_{2i}).
inline Omega2Form paired_form(const std::vector<RatFunc>& lambdas, const std::vector<RatFunc>& gens, std::int64_t p,
                              std::size_t nvars) {
    Omega2Form out(p, nvars);
    for (std::size_t i = 0; i < lambdas.size() && 2 * i + 1 < gens.size(); ++i)
        out += lambdas[i] * wedge(d(gens[2 * i]), d(gens[2 * i + 1]));
    return out;
}

struct PairedFormCertificate {
    std::size_t m = 0;
    /// Pivot variables of the Jacobian of the generators.
    std::vector<std::size_t> pivot_columns;
};

/// Checks the hypotheses under which the paired form stays nonzero over
/// every extension of degree < p^m: 2m p-independent generators and
/// nonzero scalars.
inline PairedFormCertificate paired_form_certify(const std::vector<RatFunc>& lambdas, const std::vector<RatFunc>& gens,
                                          std::int64_t p, std::size_t nvars) {
    if (gens.size() != 2 * lambdas.size())
        throw HypothesisFailed("need exactly two generators per scalar, got " + std::to_string(gens.size()) +
                               " for " + std::to_string(lambdas.size()));
    for (const auto& l : lambdas)
        if (l.is_zero()) throw HypothesisFailed("zero scalar");
    for (const auto& g : gens)
        if (g.is_zero()) throw HypothesisFailed("zero generator");
    const auto ind = p_independence(gens, p, nvars);
    if (!ind.independent) throw HypothesisFailed("generators are p-dependent");
    return PairedFormCertificate{lambdas.size(), ind.pivot_columns};
}

inline std::size_t lemma16_lower_bound(const std::vector<RatFunc>& lambdas, const std::vector<RatFunc>& gens,
                                       std::int64_t p, std::size_t nvars) {
    return paired_form_certify(lambdas, gens, p, nvars).m;
}

inline std::size_t lemma16_lower_bound(const std::vector<RatFunc>& lambdas, const std::vector<RatFunc>& gens,
                                       const FieldDescriptor& field) {
    return lemma16_lower_bound(lambdas, gens, field.p, field.num_vars());
}

namespace detail {

inline std::string coeff_prefix(const RatFunc& c, const std::vector<std::string>& names) {
    if (c.is_one()) return "";
    std::string s = to_string(c, names);
    const bool atomic = s.find_first_of("+-/ ") == std::string::npos;
    return (atomic ? s : "(" + s + ")") + " * ";
}

}  // namespace detail

/// `f * dt1 + ...`, terms by increasing variable index.
inline std::string to_string(const Omega1Form& w, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t j = 0; j < w.nvars(); ++j) {
        if (w[j].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += detail::coeff_prefix(w[j], names) + "d" + names[j];
    }
    return out.empty() ? "0" : out;
}

/// `f * dt1^dt2 + ...`, terms by increasing (i, j).
inline std::string to_string(const Omega2Form& a, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < a.nvars(); ++i) {
        for (std::size_t j = i + 1; j < a.nvars(); ++j) {
            const RatFunc& c = a.coeff(i, j);
            if (c.is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += detail::coeff_prefix(c, names) + "d" + names[i] + "^d" + names[j];
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace pdim
