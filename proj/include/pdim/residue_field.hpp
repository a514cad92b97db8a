#pragma once

// p-power structure of F_p(t1..tn): p-th roots, the decomposition over the
// subfield of p-th powers, p-independence, and relabeling embeddings
// t_j -> s_j^(p^r_j) (or arbitrary substitutions) into a target field.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdim/linalg.hpp"
#include "pdim/ratfunc.hpp"

namespace pdim {

/// Orders candidate pivots by the graded-lex leading monomial of the
/// numerator, then of the denominator (smallest first).
struct GrlexPivotLess {
    bool operator()(const RatFunc& a, const RatFunc& b) const {
        const GrlexLess less;
        const auto& na = a.numerator().leading_exp();
        const auto& nb = b.numerator().leading_exp();
        if (na != nb) return less(na, nb);
        return less(a.denominator().leading_exp(), b.denominator().leading_exp());
    }
};

namespace detail {

inline std::optional<SparsePoly> poly_pth_root(const SparsePoly& f, std::int64_t p) {
    SparsePoly r(f.nvars(), f.modulus());
    const auto up = static_cast<std::uint32_t>(p);
    for (const auto& [e, c] : f.terms()) {
        Exponent s = e;
        for (auto& x : s) {
            if (x % up != 0) return std::nullopt;
            x /= up;
        }
        // c^p = c for c in F_p.
        r.add_term(std::move(s), c);
    }
    return r;
}

}  // namespace detail

/// g with g^p = f when f is a p-th power in F_p(t1..tn).
inline std::optional<RatFunc> pth_root(const RatFunc& f) {
    const std::int64_t p = f.prime();
    auto n = detail::poly_pth_root(f.numerator(), p);
    if (!n) return std::nullopt;
    auto d = detail::poly_pth_root(f.denominator(), p);
    if (!d) return std::nullopt;
    return RatFunc(std::move(*n), std::move(*d));
}

inline bool is_pth_power(const RatFunc& f) { return pth_root(f).has_value(); }

/// f = sum over e in [0,p)^n of coeff(e)^p * t^e; only nonzero coefficients
/// are stored.
struct FrobeniusDecomposition {
    std::int64_t p = 2;
    std::size_t nvars = 0;
    std::map<Exponent, RatFunc> components;

    RatFunc coeff(const Exponent& e) const {
        auto it = components.find(e);
        return it == components.end() ? RatFunc::zero(p, nvars) : it->second;
    }

    /// Expands sum c_e^p t^e back into a single element.
    RatFunc reconstruct() const {
        RatFunc acc = RatFunc::zero(p, nvars);
        for (const auto& [e, c] : components)
            acc += c.pow(p) * RatFunc(SparsePoly::monomial(nvars, p, e, 1));
        return acc;
    }
};

inline FrobeniusDecomposition frobenius_decompose(const RatFunc& f) {
    const std::int64_t p = f.prime();
    const std::size_t n = f.nvars();
    FrobeniusDecomposition out{p, n, {}};
    if (f.is_zero()) return out;
    const auto up = static_cast<std::uint32_t>(p);
    // f = num * den^(p-1) / den^p; split the new numerator by exponent residues.
    const SparsePoly& den = f.denominator();
    const SparsePoly num = f.numerator() * den.pow(up - 1);
    std::map<Exponent, SparsePoly> buckets;
    for (const auto& [e, c] : num.terms()) {
        Exponent residue(n), quotient(n);
        for (std::size_t i = 0; i < n; ++i) {
            residue[i] = e[i] % up;
            quotient[i] = e[i] / up;
        }
        auto [it, _] = buckets.try_emplace(residue, SparsePoly(n, p));
        it->second.add_term(std::move(quotient), c);
    }
    for (auto& [e, q] : buckets) out.components.emplace(e, RatFunc(std::move(q), den));
    return out;
}

struct PIndependence {
    bool independent = false;
    std::size_t rank = 0;
    /// Variables t_j whose columns carried the pivots of the Jacobian.
    std::vector<std::size_t> pivot_columns;
};

/// Elements are p-independent iff their differentials are linearly
/// independent, i.e. the Jacobian (d a_i / d t_j) has full row rank.
inline PIndependence p_independence(const std::vector<RatFunc>& elems, std::int64_t p, std::size_t nvars) {
    linalg::Matrix<RatFunc> jac;
    for (const auto& a : elems) {
        if (a.is_zero()) throw HypothesisFailed("p-independence of a zero element");
        std::vector<RatFunc> row;
        for (std::size_t j = 0; j < nvars; ++j) row.push_back(a.partial(j));
        jac.push_back(std::move(row));
    }
    PIndependence out;
    if (jac.empty()) {
        out.independent = true;
        return out;
    }
    auto e = linalg::echelon(std::move(jac), nvars, GrlexPivotLess{});
    out.rank = e.rank();
    out.pivot_columns = e.pivot_cols;
    out.independent = out.rank == elems.size();
    (void)p;
    return out;
}

inline PIndependence p_independence(const std::vector<RatFunc>& elems, const FieldDescriptor& field) {
    return p_independence(elems, field.p, field.num_vars());
}

struct Embedding;
inline RatFunc embed_element(const RatFunc& f, const Embedding& e);

/// A field embedding given by the images of the source variables. The
/// standard kind is the relabeling t_j -> s_j^(p^r_j), which realizes the
/// purely inseparable extension obtained by adjoining p^r_j-th roots of t_j.
struct Embedding {
    FieldDescriptor source;
    FieldDescriptor target;
    std::vector<RatFunc> var_images;
    std::uint64_t degree = 1;

    static Embedding identity(const FieldDescriptor& f) {
        Embedding e{f, f, {}, 1};
        for (std::size_t j = 0; j < f.num_vars(); ++j) e.var_images.push_back(RatFunc::variable(f, j));
        return e;
    }

    /// t_j -> s_j^(p^r_j); target variables are named prefix1..prefixN.
    static Embedding radical(const FieldDescriptor& source, const std::vector<std::uint32_t>& r,
                             const std::string& prefix = "s") {
        if (r.size() != source.num_vars()) throw Error("radical embedding needs one exponent per variable");
        const FieldDescriptor target = FieldDescriptor::standard(source.p, source.num_vars(), prefix);
        return radical(source, r, target);
    }

    static Embedding radical(const FieldDescriptor& source, const std::vector<std::uint32_t>& r,
                             const FieldDescriptor& target) {
        if (target.num_vars() != source.num_vars() || target.p != source.p)
            throw FieldMismatch("radical embedding target must match source shape");
        Embedding e{source, target, {}, 1};
        const std::size_t n = source.num_vars();
        for (std::size_t j = 0; j < n; ++j) {
            Exponent x(n, 0);
            std::uint32_t k = 1;
            for (std::uint32_t i = 0; i < r[j]; ++i) k *= static_cast<std::uint32_t>(source.p);
            x[j] = k;
            e.degree *= k;
            e.var_images.push_back(RatFunc(SparsePoly::monomial(n, source.p, std::move(x), 1)));
        }
        return e;
    }

    /// Adjoins p-th roots of t_1..t_k.
    static Embedding adjoin_roots_of_first(const FieldDescriptor& source, std::size_t k,
                                           const std::string& prefix = "s") {
        std::vector<std::uint32_t> r(source.num_vars(), 0);
        for (std::size_t j = 0; j < k && j < r.size(); ++j) r[j] = 1;
        return radical(source, r, prefix);
    }

    /// kappa(g^(1/p)) for g = b*t_j + h with b != 0 and b, h free of t_j.
    /// The extension is again rational: its variables are the t_k (k != j)
    /// and s_j = g^(1/p), with t_j = (s_j^p - h)/b.
    static Embedding adjoin_root_linear(const FieldDescriptor& source, std::size_t j, const RatFunc& b,
                                        const RatFunc& h, const std::string& prefix = "s") {
        const std::size_t n = source.num_vars();
        if (j >= n) throw Error("variable index out of range");
        if (b.is_zero()) throw HypothesisFailed("linear coefficient must be nonzero");
        if (b.numerator().involves(j) || b.denominator().involves(j) || h.numerator().involves(j) ||
            h.denominator().involves(j))
            throw HypothesisFailed("coefficients must not involve the adjoined variable");
        const FieldDescriptor target = FieldDescriptor::standard(source.p, n, prefix);
        const Embedding rename = radical(source, std::vector<std::uint32_t>(n, 0), target);
        Embedding e{source, target, rename.var_images, static_cast<std::uint64_t>(source.p)};
        const RatFunc s = RatFunc::variable(target, j);
        e.var_images[j] = (s.pow(source.p) - embed_element(h, rename)) / embed_element(b, rename);
        return e;
    }

    /// Arbitrary substitution with a declared degree [target : image].
    static Embedding substitution(const FieldDescriptor& source, const FieldDescriptor& target,
                                  std::vector<RatFunc> images, std::uint64_t degree) {
        if (images.size() != source.num_vars()) throw Error("substitution needs one image per variable");
        return Embedding{source, target, std::move(images), degree};
    }

    /// For monomial images s_k^m (coefficient 1) returns, per source
    /// variable, the pair (k, m); nothing otherwise.
    std::optional<std::vector<std::pair<std::size_t, std::uint32_t>>> monomial_images() const {
        std::vector<std::pair<std::size_t, std::uint32_t>> out;
        for (const auto& img : var_images) {
            if (!img.is_polynomial() || img.numerator().size() != 1) return std::nullopt;
            const auto& [e, c] = *img.numerator().terms().begin();
            if (c != 1) return std::nullopt;
            std::optional<std::size_t> var;
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                if (var) return std::nullopt;
                var = k;
            }
            if (!var) return std::nullopt;
            out.emplace_back(*var, e[*var]);
        }
        return out;
    }
};

namespace detail {

inline SparsePoly substitute_monomial(const SparsePoly& f, std::size_t target_vars,
                                      const std::vector<std::pair<std::size_t, std::uint32_t>>& images) {
    SparsePoly r(target_vars, f.modulus());
    for (const auto& [e, c] : f.terms()) {
        Exponent s(target_vars, 0);
        for (std::size_t j = 0; j < e.size(); ++j) s[images[j].first] += e[j] * images[j].second;
        r.add_term(std::move(s), c);
    }
    return r;
}

inline RatFunc substitute_general(const SparsePoly& f, const std::vector<RatFunc>& images, std::int64_t p,
                                  std::size_t target_vars) {
    RatFunc acc = RatFunc::zero(p, target_vars);
    for (const auto& [e, c] : f.terms()) {
        RatFunc term = RatFunc::constant(p, target_vars, c);
        for (std::size_t j = 0; j < e.size(); ++j)
            if (e[j] > 0) term *= images[j].pow(e[j]);
        acc += term;
    }
    return acc;
}

}  // namespace detail

inline RatFunc embed_element(const RatFunc& f, const Embedding& e) {
    if (f.nvars() != e.source.num_vars() || f.prime() != e.source.p)
        throw FieldMismatch("element does not live in the embedding source");
    const std::size_t m = e.target.num_vars();
    if (auto mono = e.monomial_images()) {
        return RatFunc(detail::substitute_monomial(f.numerator(), m, *mono),
                       detail::substitute_monomial(f.denominator(), m, *mono));
    }
    const RatFunc n = detail::substitute_general(f.numerator(), e.var_images, e.source.p, m);
    const RatFunc d = detail::substitute_general(f.denominator(), e.var_images, e.source.p, m);
    return n / d;
}

/// outer after inner.
inline Embedding compose(const Embedding& outer, const Embedding& inner) {
    if (!(inner.target == outer.source)) throw FieldMismatch("embeddings do not compose");
    Embedding e{inner.source, outer.target, {}, inner.degree * outer.degree};
    for (const auto& img : inner.var_images) e.var_images.push_back(embed_element(img, outer));
    return e;
}

}  // namespace pdim
