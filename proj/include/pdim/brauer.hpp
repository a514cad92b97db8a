#pragma once

// Period-p Brauer classes over the truncated CDVF as formal sums of symbols,
// the graded pieces of the unit filtration, and the normal-form sweep.
//
// Everything past level 0 is specific to p = 2 (pi = 2, M = 2, L = 3).
// The decomposition engine rewrites a class with the symbol calculus
//   (x, yz) = (x, y) + (x, z),  (x, y) = (y, x^-1),  (x, -x) = 0,
//   (x, 1 - x) = 0,  (x, h^2) = 0,
// bucketing terms by level:
//   level 0   k2 pairs (U, V) with residues != 1 and (pi, W) with W-bar != 1
//   level i   (X, t_j) with X in U_i  and  (pi, W) with W in U_i
// A pair with a U_1 slot against a general unit is split through the
// Frobenius components of the other slot; a pair of two U_1 units moves to
// the sum of their levels. Terms above level M are zero and get dropped.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdim/artin_schreier.hpp"
#include "pdim/cdvf.hpp"
#include "pdim/hilbert.hpp"
#include "pdim/milnor.hpp"

namespace pdim {

class BrauerClass {
public:
    BrauerClass() = default;
    explicit BrauerClass(CdvfModel m) : model_(std::move(m)) {}

    const CdvfModel& model() const noexcept { return model_; }
    const std::vector<std::pair<CdvfElement, CdvfElement>>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }

    BrauerClass& add(CdvfElement x, CdvfElement y) {
        if (!(x.model() == model_) || !(y.model() == model_)) throw FieldMismatch("symbol from a different model");
        entries_.emplace_back(std::move(x), std::move(y));
        return *this;
    }

    BrauerClass& operator+=(const BrauerClass& o) {
        if (!(o.model_ == model_)) throw FieldMismatch("classes over different models");
        entries_.insert(entries_.end(), o.entries_.begin(), o.entries_.end());
        return *this;
    }
    friend BrauerClass operator+(BrauerClass a, const BrauerClass& b) { return a += b; }

    /// -(x, y) = (x, y^-1).
    BrauerClass negated() const {
        BrauerClass out(model_);
        for (const auto& [x, y] : entries_) out.add(x, y.inverse());
        return out;
    }
    friend BrauerClass operator-(const BrauerClass& a, const BrauerClass& b) { return a + b.negated(); }

    /// Merges symbols with equal first slots and drops (x, 1), (1, y).
    BrauerClass simplified() const {
        BrauerClass out(model_);
        for (const auto& [x, y] : entries_) {
            auto it = std::find_if(out.entries_.begin(), out.entries_.end(),
                                   [&](const auto& e) { return e.first == x; });
            if (it == out.entries_.end()) {
                out.entries_.emplace_back(x, y);
            } else {
                it->second = it->second * y;
            }
        }
        std::erase_if(out.entries_, [](const auto& e) { return e.first.is_one() || e.second.is_one(); });
        return out;
    }

private:
    CdvfModel model_;
    std::vector<std::pair<CdvfElement, CdvfElement>> entries_;
};

struct GradedDatum0 {
    SymbolSum k2_part;
    RatFunc unit_class;
};

struct GradedDatumI {
    std::int64_t level = 1;
    Omega1Form form;
    RatFunc scalar;

    bool is_zero() const { return form.is_zero() && scalar.is_zero(); }
};

struct NormalForm {
    std::vector<TruncatedUnit> lambdas;
    TruncatedUnit pi_coeff;
    std::vector<TruncatedUnit> basis_lifts;
    std::int64_t sweeps = 0;

    /// (lambda_1, u_1) + ... + (lambda_n, u_n) + (pi, lambda).
    BrauerClass to_class(const CdvfModel& m) const {
        BrauerClass out(m);
        for (std::size_t j = 0; j < lambdas.size(); ++j) out.add(CdvfElement(0, lambdas[j]), CdvfElement(0, basis_lifts[j]));
        out.add(CdvfElement::pi(m), CdvfElement(0, pi_coeff));
        return out;
    }
};

struct IndexBounds {
    std::int64_t lower_exp = 0;
    std::int64_t upper_exp = 0;
    std::string lower_certificate;
    std::string upper_certificate;
};

inline bool datum0_is_zero(const GradedDatum0& d) {
    return h2p(d.k2_part).is_zero() && is_pth_power(d.unit_class);
}

/// Equality of level-0 data: k2 parts through h2p, unit classes modulo p-th powers.
inline bool datum0_equal(const GradedDatum0& a, const GradedDatum0& b) {
    return k2_equal(a.k2_part, b.k2_part) && is_pth_power(a.unit_class / b.unit_class);
}

namespace detail {

inline void require_p2(const CdvfModel& m, const char* what) {
    if (m.p() != 2) throw UnsupportedPrime(std::string(what) + " is implemented for p = 2 only");
}

inline TruncatedUnit unit_one(const CdvfModel& m) { return TruncatedUnit::one(m); }

inline TruncatedUnit basis_lift(const CdvfModel& m, std::size_t j) {
    return lift_unit(RatFunc::variable(m.p(), m.nvars(), j), m);
}

inline std::optional<RatFunc> residue_root(const TruncatedUnit& u) { return pth_root(u.residue()); }

class Decomposer {
public:
    /// With `full` unset only the level-0 buckets are filled, which works
    /// for every p.
    Decomposer(const CdvfModel& m, bool full) : m_(m), full_(full) {
        if (full_) require_p2(m, "the filtration engine");
        const std::size_t n = m.nvars();
        const auto M = static_cast<std::size_t>(m.M());
        const TruncatedUnit one = unit_one(m);
        q_.assign(M + 1, std::vector<TruncatedUnit>(n, one));
        pi_.assign(M + 1, one);
        lambdas_.assign(n, one);
        lambda_ = one;
        top_form_.assign(n, RatFunc::zero(m.p(), n));
        top_scalar_ = RatFunc::zero(m.p(), n);
        for (std::size_t j = 0; j < n; ++j) basis_.push_back(basis_lift(m, j));
    }

    void add_class(const BrauerClass& c) {
        for (const auto& [x, y] : c.entries()) add_symbol(x, y);
    }

    /// (pi^a U, pi^b V) = (pi, V^a U^-b (-1)^ab) + (U, V).
    void add_symbol(const CdvfElement& x, const CdvfElement& y) {
        const std::int64_t a = x.val(), b = y.val();
        TruncatedUnit w = y.unit().pow(a) * x.unit().pow(-b);
        if (((a * b) % 2 + 2) % 2 == 1) w = -w;
        push_pi(w);
        push_pair(x.unit(), y.unit());
    }

    GradedDatum0 datum0() const {
        GradedDatum0 d{SymbolSum(m_.p(), m_.nvars()), RatFunc::one(m_.p(), m_.nvars())};
        for (const auto& w : pi0_) d.unit_class *= w.residue();
        for (const auto& [u, v] : k2_) d.k2_part.add(u.residue(), v.residue());
        return d;
    }

    /// Rewrites a vanishing level-0 datum into explicit higher-level terms.
    void lower_level0() {
        const GradedDatum0 d = datum0();
        if (!datum0_is_zero(d))
            throw NotInBr1("class is not in br_1: level-0 datum " + describe(d));
        if (!pi0_.empty()) {
            TruncatedUnit w = unit_one(m_);
            for (const auto& x : pi0_) w = w * x;
            pi0_.clear();
            const auto h = residue_root(w);
            push_pi(w / lift_unit(*h, m_).pow(2));
        }
        resolve_k2();
    }

    bool higher_levels_trivial(std::int64_t from) const {
        if (!top_scalar_.is_zero()) return false;
        for (const auto& b : top_form_)
            if (!b.is_zero()) return false;
        for (auto i = static_cast<std::size_t>(from); i < q_.size(); ++i) {
            if (!pi_[i].is_one()) return false;
            for (const auto& x : q_[i])
                if (!x.is_one()) return false;
        }
        return true;
    }

    /// Reads the level-i datum, folds it into the normal-form coefficients
    /// and pushes the remainder one level up.
    GradedDatumI sweep(std::int64_t i) {
        const std::size_t n = m_.nvars();
        const auto li = static_cast<std::size_t>(i);
        GradedDatumI d{i, Omega1Form(m_.p(), n), RatFunc::zero(m_.p(), n)};
        if (i == M()) {
            for (std::size_t j = 0; j < n; ++j) {
                const RatFunc b = std::exchange(top_form_[j], RatFunc::zero(m_.p(), n));
                if (b.is_zero()) continue;
                lambdas_[j] = lambdas_[j] * TruncatedUnit(TruncatedElem::one_plus(b, i, m_));
                d.form[j] = b / RatFunc::variable(m_.p(), n, j);
            }
            d.scalar = std::exchange(top_scalar_, RatFunc::zero(m_.p(), n));
            if (!d.scalar.is_zero()) lambda_ = lambda_ * TruncatedUnit(TruncatedElem::one_plus(d.scalar, i, m_));
            return d;
        }
        for (std::size_t j = 0; j < n; ++j) {
            TruncatedUnit qj = q_[li][j];
            q_[li][j] = unit_one(m_);
            const RatFunc b = qj.value().digit(li);
            if (!b.is_zero()) {
                const TruncatedUnit e(TruncatedElem::one_plus(b, i, m_));
                lambdas_[j] = lambdas_[j] * e;
                qj = qj / e;
                d.form[j] = b / RatFunc::variable(m_.p(), n, j);
            }
            push_shape_b(qj, j);
        }
        TruncatedUnit w = pi_[li];
        pi_[li] = unit_one(m_);
        const RatFunc a = w.value().digit(li);
        if (!a.is_zero()) {
            const TruncatedUnit e(TruncatedElem::one_plus(a, i, m_));
            lambda_ = lambda_ * e;
            w = w / e;
            d.scalar = a;
        }
        push_pi(w);
        return d;
    }

    NormalForm normal_form(std::int64_t sweeps) const { return {lambdas_, lambda_, basis_, sweeps}; }

    std::string describe(const GradedDatum0& d) const {
        const auto& names = m_.residue().var_names;
        return "{k2: " + to_string(d.k2_part, names) + ", unit class: " + to_string(d.unit_class, names) + "}";
    }

private:
    std::int64_t M() const { return m_.M(); }

    void push_pi(const TruncatedUnit& w) {
        if (w.is_one()) return;
        const std::int64_t l = w.level();
        if (l == 0) {
            pi0_.push_back(w);
        } else if (full_ && l == M()) {
            top_scalar_ += w.value().digit(static_cast<std::size_t>(l));
        } else if (full_ && l < M()) {
            auto& slot = pi_[static_cast<std::size_t>(l)];
            slot = slot * w;
        }
    }

    void push_shape_b(const TruncatedUnit& x, std::size_t j) {
        if (x.is_one()) return;
        const std::int64_t l = x.level();
        if (l > M()) return;
        if (l == M()) {
            top_form_[j] += x.value().digit(static_cast<std::size_t>(l));
            return;
        }
        auto& slot = q_[static_cast<std::size_t>(l)][j];
        slot = slot * x;
    }

    void push_pair(const TruncatedUnit& u, const TruncatedUnit& v) {
        if (u.is_one() || v.is_one()) return;
        const std::int64_t lu = u.level(), lv = v.level();
        if (lu == 0 && lv == 0) {
            k2_.emplace_back(u, v);
            return;
        }
        if (!full_) return;
        if (lu > 0 && lv > 0) {
            if (lu + lv <= M()) one_by_one(u, v);
            return;
        }
        if (lu > 0) {
            if (lu <= M()) unit_slot(u, v);
        } else if (lv <= M()) {
            unit_slot(v, u.inverse());
        }
    }

    // (X, G) with X in U_l only sees G modulo U_{M+1-l}; on the top level it
    // is x dlog G-bar directly.
    void unit_slot(const TruncatedUnit& X, const TruncatedUnit& G) {
        const std::int64_t l = X.level();
        if (l == M()) {
            const RatFunc x = X.value().digit(static_cast<std::size_t>(l));
            const RatFunc g = G.residue();
            for (std::size_t j = 0; j < m_.nvars(); ++j) {
                const RatFunc dg = g.partial(j);
                if (!dg.is_zero()) top_form_[j] += x * RatFunc::variable(m_.p(), m_.nvars(), j) * dg / g;
            }
            return;
        }
        const auto keep = static_cast<std::size_t>(M() + 1 - l);
        if (keep >= G.digits().size()) {
            split_unit_slot(X, G);
            return;
        }
        std::vector<RatFunc> d(G.digits().begin(), G.digits().begin() + static_cast<std::ptrdiff_t>(keep));
        d.resize(G.digits().size(), RatFunc::zero(m_.p(), m_.nvars()));
        split_unit_slot(X, TruncatedUnit(TruncatedElem::from_digits(std::move(d), m_)));
    }

    // (X, Y) = (-x, 1 + w) + (Y, 1 + w) with X = 1 + x, Y = 1 + y, w = xy/X.
    void one_by_one(const TruncatedUnit& X, const TruncatedUnit& Y) {
        const TruncatedElem one = TruncatedElem::one(m_);
        const TruncatedElem x = X.value() - one;
        const TruncatedElem y = Y.value() - one;
        const TruncatedUnit w1(one + x * y / X.value());
        add_symbol(CdvfElement::from_truncated(-x), CdvfElement(0, w1));
        push_pair(Y, w1);
    }

    TruncatedUnit component_lift(const Exponent& e, const RatFunc& c) const {
        TruncatedUnit y = lift_unit(c, m_).pow(2);
        for (std::size_t j = 0; j < e.size(); ++j)
            if (e[j] != 0) y = y * basis_[j];
        return y;
    }

    // (X, G) with X in U_1: shape-B terms for the Frobenius components of G.
    void split_unit_slot(const TruncatedUnit& X, const TruncatedUnit& G) {
        const auto fd = frobenius_decompose(G.residue());
        const auto& comps = fd.components;
        const auto& [e0, c0] = *comps.begin();
        const TruncatedUnit Y = component_lift(e0, c0);
        if (comps.size() == 1) {
            push_pair(X, G / Y);
            for (std::size_t j = 0; j < e0.size(); ++j)
                if (e0[j] != 0) push_shape_b(X, j);
            return;
        }
        // G = S * (G/S) with S = Y + Z; with b = X - 1, u = Y/S, v = Z/S and
        // W = b^2 uv / X,
        //   (X, S) = (1 + bu, Y) + (1 + bv, Z) + (1 + W, -b) + (1 + W, S^-1).
        TruncatedElem z = TruncatedElem::zero(m_);
        for (auto it = std::next(comps.begin()); it != comps.end(); ++it)
            z = z + component_lift(it->first, it->second).value();
        const TruncatedUnit Z(z);
        const TruncatedUnit S(Y.value() + z);
        const TruncatedElem one = TruncatedElem::one(m_);
        const TruncatedElem b = X.value() - one;
        const TruncatedElem u = Y.value() / S.value();
        const TruncatedElem v = z / S.value();
        const TruncatedUnit W1(one + b * b * u * v / X.value());
        push_pair(X, G / S);
        push_pair(TruncatedUnit(one + b * u), Y);
        push_pair(TruncatedUnit(one + b * v), Z);
        add_symbol(CdvfElement(0, W1), CdvfElement::from_truncated(-b));
        push_pair(W1, S.inverse());
    }

    struct Dependence {
        RatFunc l0, l1;
    };

    // u = l0^2 + l1^2 v in the residue field, when {u, v} is p-dependent.
    std::optional<Dependence> dependence(const RatFunc& u, const RatFunc& v) const {
        for (std::size_t j = 0; j < m_.nvars(); ++j) {
            const RatFunc dv = v.partial(j);
            if (dv.is_zero()) continue;
            const auto l1 = pth_root(u.partial(j) / dv);
            if (!l1) return std::nullopt;
            const auto l0 = pth_root(u - l1->pow(2) * v);
            if (!l0) return std::nullopt;
            return Dependence{*l0, *l1};
        }
        return std::nullopt;
    }

    // One pass over the k2 bucket; returns false when nothing changed.
    bool resolve_step(std::vector<std::pair<TruncatedUnit, TruncatedUnit>>& pairs) {
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            auto [u, v] = pairs[k];
            if (auto h = residue_root(u)) {
                pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(k));
                push_pair(u / lift_unit(*h, m_).pow(2), v);
                return true;
            }
            if (auto h = residue_root(v)) {
                pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(k));
                push_pair(u, v / lift_unit(*h, m_).pow(2));
                return true;
            }
            if (auto dep = dependence(u.residue(), v.residue())) {
                pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(k));
                resolve_dependent(u, v, *dep);
                return true;
            }
        }
        // Two pairs sharing a slot modulo squares: orient both so the shared
        // slot is second, then (A, B) + (C, D) = (AC, B) + (C, D / (B h^2)).
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            for (std::size_t l = k + 1; l < pairs.size(); ++l) {
                for (int ok = 0; ok < 2; ++ok) {
                    for (int ol = 0; ol < 2; ++ol) {
                        const auto [A, B] = oriented(pairs[k], ok);
                        const auto [C, D] = oriented(pairs[l], ol);
                        const auto h = pth_root(D.residue() / B.residue());
                        if (!h) continue;
                        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(l));
                        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(k));
                        push_pair(C, D / (B * lift_unit(*h, m_).pow(2)));
                        const TruncatedUnit ac = A * C;
                        if (ac.level() == 0) {
                            pairs.emplace_back(ac, B);
                        } else {
                            push_pair(ac, B);
                        }
                        return true;
                    }
                }
            }
        }
        return false;
    }

    static std::pair<TruncatedUnit, TruncatedUnit> oriented(const std::pair<TruncatedUnit, TruncatedUnit>& uv,
                                                            int flip) {
        if (flip == 0) return uv;
        return {uv.second, uv.first.inverse()};
    }

    // (U, V) = (U/F, V) + (F, V) with F = L0^2 + L1^2 V.
    void resolve_dependent(const TruncatedUnit& u, const TruncatedUnit& v, const Dependence& dep) {
        const TruncatedUnit minus_one = -unit_one(m_);
        const TruncatedElem l1sq =
            dep.l1.is_zero() ? TruncatedElem::zero(m_) : lift_unit(dep.l1, m_).pow(2).value();
        if (dep.l0.is_zero()) {
            const TruncatedUnit f(l1sq * v.value());
            push_pair(u / f, v);
            push_pair(v, minus_one);
            return;
        }
        const TruncatedUnit l0sq = lift_unit(dep.l0, m_).pow(2);
        const TruncatedUnit f(l0sq.value() + l1sq * v.value());
        push_pair(u / f, v);
        // F = L0^2 (1 + mu^2 V) and (1 + mu^2 V, V) = (1 + mu^2 V, -1).
        if (!dep.l1.is_zero()) push_pair(f / l0sq, minus_one);
    }

    void resolve_k2() {
        std::vector<std::pair<TruncatedUnit, TruncatedUnit>> pairs = std::move(k2_);
        k2_.clear();
        while (!pairs.empty()) {
            if (!resolve_step(pairs)) {
                GradedDatum0 d{SymbolSum(m_.p(), m_.nvars()), RatFunc::one(m_.p(), m_.nvars())};
                for (const auto& [u, v] : pairs) d.k2_part.add(u.residue(), v.residue());
                throw UnresolvedRelation("cannot rewrite the vanishing k2 part " +
                                         to_string(d.k2_part, m_.residue().var_names));
            }
            // Pairs created while resolving land back in k2_.
            for (auto& pr : k2_) pairs.push_back(std::move(pr));
            k2_.clear();
        }
    }

    CdvfModel m_;
    bool full_;
    std::vector<TruncatedUnit> pi0_;
    std::vector<std::pair<TruncatedUnit, TruncatedUnit>> k2_;
    std::vector<std::vector<TruncatedUnit>> q_;  // [level][j]: (q, t_j)
    std::vector<TruncatedUnit> pi_;              // [level]: (pi, w)
    std::vector<TruncatedUnit> lambdas_;
    TruncatedUnit lambda_;
    std::vector<TruncatedUnit> basis_;
    std::vector<RatFunc> top_form_;  // level M, additive: sum b_j dt_j/t_j
    RatFunc top_scalar_;
};

}  // namespace detail

inline BrauerClass rho0_forward(const GradedDatum0& d, const CdvfModel& m) {
    BrauerClass out(m);
    for (const auto& [a, b] : d.k2_part.entries) out.add(CdvfElement::lift(a, m), CdvfElement::lift(b, m));
    if (!d.unit_class.is_one()) out.add(CdvfElement::pi(m), CdvfElement::lift(d.unit_class, m));
    return out;
}

inline GradedDatum0 rho0_extract(const BrauerClass& c) {
    detail::Decomposer e(c.model(), false);
    e.add_class(c);
    return e.datum0();
}

inline BrauerClass rhoi_forward(const GradedDatumI& d, const CdvfModel& m) {
    if (d.level < 1 || d.level > m.M())
        throw LevelOutOfRange("level " + std::to_string(d.level) + " outside 1.." + std::to_string(m.M()));
    BrauerClass out(m);
    for (std::size_t j = 0; j < m.nvars(); ++j) {
        const RatFunc b = d.form[j] * RatFunc::variable(m.p(), m.nvars(), j);
        if (b.is_zero()) continue;
        out.add(CdvfElement(0, TruncatedUnit(TruncatedElem::one_plus(b, d.level, m))),
                CdvfElement(0, detail::basis_lift(m, j)));
    }
    if (!d.scalar.is_zero())
        out.add(CdvfElement::pi(m), CdvfElement(0, TruncatedUnit(TruncatedElem::one_plus(d.scalar, d.level, m))));
    return out;
}

inline GradedDatumI rhoi_extract(const BrauerClass& c, std::int64_t i) {
    const CdvfModel& m = c.model();
    if (i < 1 || i > m.M())
        throw LevelOutOfRange("level " + std::to_string(i) + " outside 1.." + std::to_string(m.M()));
    detail::Decomposer e(m, true);
    e.add_class(c);
    if (!datum0_is_zero(e.datum0())) throw NotInLevel("nonzero datum at level 0");
    e.lower_level0();
    for (std::int64_t k = 1; k < i; ++k)
        if (!e.sweep(k).is_zero()) throw NotInLevel("nonzero datum at level " + std::to_string(k));
    return e.sweep(i);
}

/// Whether a nonzero naive datum at an odd level i < M is the image of the
/// zero class (1 + z pi^i, -z pi^i), which reads as (dz, z).
inline bool is_dlog_relation(const GradedDatumI& d) {
    return !d.scalar.is_zero() && d.form == pdim::d(d.scalar);
}

/// At the top level M (p = 2) the naive digits are only defined up to
/// 2(x, y) = 0 and (1 + 4x, x) = 0: the form modulo exact forms and
/// componentwise c^2 + c, the scalar modulo c^2 + c.
inline bool top_datum_trivial(const GradedDatumI& d) {
    if (!in_exact_plus_artin_schreier(d.form)) return false;
    return d.scalar.is_zero() || artin_schreier_root(d.scalar).has_value();
}

namespace detail {

struct LevelProbe {
    std::optional<std::int64_t> level;
    bool from_datum = true;  // false when the k2 rewriting got stuck
};

inline LevelProbe probe_level(const BrauerClass& c) {
    const CdvfModel& m = c.model();
    BrauerClass work = c;
    for (int attempt = 0;; ++attempt) {
        Decomposer e(m, m.p() == 2);
        e.add_class(work);
        if (!datum0_is_zero(e.datum0())) return {0};
        if (m.p() != 2) return {1, false};
        try {
            e.lower_level0();
        } catch (const UnresolvedRelation&) {
            // The class is in br_1 all the same.
            return {1, false};
        }
        bool retry = false;
        for (std::int64_t i = 1; i <= m.M() && !retry; ++i) {
            const GradedDatumI d = e.sweep(i);
            if (d.is_zero()) continue;
            if (i == m.M()) return {top_datum_trivial(d) ? std::nullopt : std::optional<std::int64_t>(i)};
            if (i % 2 == 0 || attempt >= 2 || !is_dlog_relation(d)) return {i};
            const TruncatedUnit x(TruncatedElem::one_plus(d.scalar, i, m));
            work.add(CdvfElement(0, x), CdvfElement(i, -lift_unit(d.scalar, m)));
            retry = true;
        }
        if (!retry) return {std::nullopt};
    }
}

}  // namespace detail

/// Smallest level carrying a nonzero datum; nullopt stands for infinity.
/// Level 0 is exact; a positive answer only certifies membership in that
/// level of the filtration.
inline std::optional<std::int64_t> filtration_level(const BrauerClass& c) { return detail::probe_level(c).level; }

/// Normal form of a class in br_1. Throws NotInBr1 otherwise.
inline NormalForm normal_form(const BrauerClass& c) {
    const CdvfModel& m = c.model();
    detail::require_p2(m, "normal_form");
    detail::Decomposer e(m, true);
    e.add_class(c);
    e.lower_level0();
    std::int64_t sweeps = 0;
    for (std::int64_t i = 1; i <= m.M(); ++i) {
        if (e.higher_levels_trivial(i)) break;
        e.sweep(i);
        ++sweeps;
    }
    return e.normal_form(sweeps);
}

/// c - NF(c) decomposes with nothing left at any level.
inline bool normal_form_difference_vanishes(const BrauerClass& c, const NormalForm& nf) {
    return !filtration_level(c - nf.to_class(c.model())).has_value();
}

struct Br1Reduction {
    TruncatedUnit u;
    Embedding base_change;
    CdvfModel target;
    BrauerClass reduced;
    bool certified_br1 = false;
};

inline CdvfElement base_change(const CdvfElement& x, const Embedding& e, const CdvfModel& target) {
    return CdvfElement(x.val(), TruncatedUnit(x.unit().value().embed(e, target)));
}

inline BrauerClass base_change(const BrauerClass& c, const Embedding& e, const CdvfModel& target) {
    BrauerClass out(target);
    for (const auto& [x, y] : c.entries()) out.add(base_change(x, e, target), base_change(y, e, target));
    return out;
}

/// Splits off (pi, u) and kills the k2 part by adjoining p-th roots of
/// t_1..t_{n-1}; the remainder lies in br_1 of the extension.
inline Br1Reduction lemma21_reduce(const BrauerClass& c) {
    const CdvfModel& m = c.model();
    const std::size_t n = m.nvars();
    const GradedDatum0 d = rho0_extract(c);
    Br1Reduction r;
    r.u = lift_unit(d.unit_class, m);
    r.base_change = Embedding::adjoin_roots_of_first(m.residue(), n == 0 ? 0 : n - 1);
    r.target = CdvfModel(r.base_change.target, m.L());
    BrauerClass rest = c;
    rest.add(CdvfElement::pi(m), CdvfElement(0, r.u.inverse()));
    r.reduced = base_change(rest, r.base_change, r.target).simplified();
    r.certified_br1 = datum0_is_zero(rho0_extract(r.reduced));
    return r;
}

struct RadicalGenerator {
    std::string base;
    std::int64_t root = 1;  // adjoin base^(1/root)
};

struct SplittingField {
    std::vector<RadicalGenerator> generators;
    std::int64_t degree = 1;
};

inline std::string to_string(const RadicalGenerator& g) {
    return g.base + "^(1/" + std::to_string(g.root) + ")";
}

/// Radical extension splitting every class of the model.
inline SplittingField splitting_field(const CdvfModel& m) {
    const std::int64_t p = m.p();
    const std::size_t n = m.nvars();
    SplittingField out;
    for (std::size_t j = 0; j + 1 < n; ++j) out.generators.push_back({m.residue().var_names[j], p * p});
    if (n >= 1) out.generators.push_back({m.residue().var_names[n - 1], p});
    out.generators.push_back({"pi", p});
    for (const auto& g : out.generators) out.degree *= g.root;
    return out;
}

inline SplittingField splitting_field(const BrauerClass& c) { return splitting_field(c.model()); }

/// Product of 2-adic Hilbert symbols after t_j -> point[j] (odd integers).
inline int hilbert_specialize(const BrauerClass& c, const std::vector<std::int64_t>& point);

namespace detail {

inline std::int64_t eval_mod8(const SparsePoly& f, const std::vector<std::int64_t>& point) {
    std::int64_t acc = 0;
    for (const auto& [e, coeff] : f.terms()) {
        std::int64_t t = ((coeff % 8) + 8) % 8;
        for (std::size_t j = 0; j < e.size(); ++j)
            for (std::uint32_t k = 0; k < e[j]; ++k) t = t * (((point[j] % 8) + 8) % 8) % 8;
        acc = (acc + t) % 8;
    }
    return acc;
}

/// Unit part mod 8 of a specialized unit: sum N_i(a)/D_i(a) 2^i.
inline std::int64_t specialize_unit(const TruncatedUnit& u, const std::vector<std::int64_t>& point) {
    std::int64_t acc = 0, scale = 1;
    const auto& digits = u.digits();
    for (std::size_t i = 0; i < digits.size() && scale < 8; ++i, scale *= 2) {
        const std::int64_t num = eval_mod8(digits[i].numerator(), point);
        const std::int64_t den = eval_mod8(digits[i].denominator(), point);
        if (den % 2 == 0) throw BadSpecialization("a denominator specializes to an even integer");
        if (i == 0 && num % 2 == 0) throw BadSpecialization("a unit specializes to an even integer");
        acc = (acc + scale * num * detail::inv_mod(den, 8)) % 8;
    }
    return acc;
}

}  // namespace detail

inline int hilbert_specialize(const BrauerClass& c, const std::vector<std::int64_t>& point) {
    detail::require_p2(c.model(), "hilbert_specialize");
    if (point.size() != c.model().nvars()) throw BadSpecialization("point has the wrong number of coordinates");
    for (auto a : point)
        if (a % 2 == 0) throw BadSpecialization("specialization points must be odd");
    int sign = 1;
    for (const auto& [x, y] : c.entries())
        sign *= hilbert_symbol_2(x.val(), detail::specialize_unit(x.unit(), point), y.val(),
                                 detail::specialize_unit(y.unit(), point));
    return sign;
}

/// Residues of the paired shape (u1, u2) + ... + (u_{2m-1}, u_{2m}).
inline std::optional<std::vector<RatFunc>> paired_unit_residues(const BrauerClass& c) {
    std::vector<RatFunc> gens;
    for (const auto& [x, y] : c.entries()) {
        if (x.val() != 0 || y.val() != 0) return std::nullopt;
        gens.push_back(x.unit().residue());
        gens.push_back(y.unit().residue());
    }
    if (gens.empty()) return std::nullopt;
    return gens;
}

/// Odd points in [1, 63]^n in a fixed order, at most `limit` of them.
inline std::vector<std::vector<std::int64_t>> odd_points(std::size_t n, std::size_t limit) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> pt(n, 1);
    while (out.size() < limit) {
        out.push_back(pt);
        std::size_t j = 0;
        while (j < n && pt[j] == 63) pt[j++] = 1;
        if (j == n) break;
        pt[j] += 2;
    }
    return out;
}

inline IndexBounds index_bounds(const BrauerClass& c) {
    const CdvfModel& m = c.model();
    detail::require_p2(m, "index_bounds");
    const auto n = static_cast<std::int64_t>(m.nvars());
    const BrauerClass s = c.simplified();
    IndexBounds b;

    b.upper_exp = n == 0 ? 1 : 2 * n;
    b.upper_certificate = n == 0 ? "p-dimension of K is at most 1" : "p-dimension of K is at most 2n";
    const detail::LevelProbe probe = detail::probe_level(s);
    const auto& level = probe.level;
    if ((!level || *level >= 1) && n + 1 < b.upper_exp) {
        b.upper_exp = n + 1;
        b.upper_certificate = "class lies in br_1, index divides p^(n+1)";
    }
    if (static_cast<std::int64_t>(s.size()) < b.upper_exp) {
        b.upper_exp = static_cast<std::int64_t>(s.size());
        b.upper_certificate = "sum of " + std::to_string(s.size()) + " symbols of degree p";
    }

    if (auto gens = paired_unit_residues(s); gens && p_independence(*gens, m.p(), m.nvars()).independent) {
        const std::vector<RatFunc> ones(gens->size() / 2, RatFunc::one(m.p(), m.nvars()));
        b.lower_exp = static_cast<std::int64_t>(lemma16_lower_bound(ones, *gens, m.p(), m.nvars()));
        b.lower_certificate = "paired symbols with p-independent residues (" + std::to_string(b.lower_exp) + " pairs)";
    } else if (level && *level == 0) {
        b.lower_exp = 1;
        b.lower_certificate = "nonzero level-0 datum";
    } else if (level) {
        for (const auto& pt : odd_points(m.nvars(), 64)) {
            try {
                if (hilbert_specialize(s, pt) != -1) continue;
            } catch (const BadSpecialization&) {
                continue;
            }
            b.lower_exp = 1;
            std::string where;
            for (std::size_t j = 0; j < pt.size(); ++j)
                where += (j ? ", " : "") + m.residue().var_names[j] + " = " + std::to_string(pt[j]);
            b.lower_certificate = "nontrivial 2-adic specialization" + (where.empty() ? "" : " at " + where);
            break;
        }
        if (b.lower_exp == 0 && probe.from_datum) {
            b.lower_exp = 1;
            b.lower_certificate = "nonzero level-" + std::to_string(*level) + " datum";
        }
    }
    if (b.lower_exp == 0) b.lower_certificate = "none";
    return b;
}

inline BrauerClass paired_basis_class(const CdvfModel& m, std::size_t pairs) {
    BrauerClass c(m);
    for (std::size_t i = 0; i < pairs; ++i)
        c.add(CdvfElement(0, detail::basis_lift(m, 2 * i)), CdvfElement(0, detail::basis_lift(m, 2 * i + 1)));
    return c;
}

struct BrdimReport {
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    std::string lower_certificate;
    std::string upper_certificate;
};

inline BrdimReport brdim_report(const CdvfModel& m) {
    const auto n = static_cast<std::int64_t>(m.nvars());
    if (n == 0) return {0, 1, "trivially nonnegative", "p-dimension at most 1 when n = 0"};
    BrdimReport r{(n + 1) / 2, 2 * n, "", "p-dimension at most 2n"};
    if (n % 2 == 0) {
        const IndexBounds w = index_bounds(paired_basis_class(m, static_cast<std::size_t>(n / 2)));
        r.lower = w.lower_exp;
        r.lower_certificate = "witness (t1, t2) + ... + (t" + std::to_string(n - 1) + ", t" + std::to_string(n) +
                              ") has period p and index p^" + std::to_string(w.lower_exp);
    } else {
        r.lower_certificate = "at least n/2, rounded up to an integer";
    }
    return r;
}

/// Period l^n with the period-l bound d forces index | l^(n d).
inline std::int64_t period_power_bound(std::int64_t d, std::int64_t n, std::int64_t ell) {
    if (d < 0 || n < 0) throw Error("exponents must be nonnegative");
    if (ell < 2) throw Error("not a prime");
    return n * d;
}

inline BrauerClass parse_brauer_class(std::string_view text, const CdvfModel& m) {
    for (const auto& v : m.residue().var_names)
        if (v == "pi") throw Error("'pi' is reserved for the uniformizer");
    BrauerClass c(m);
    for (const auto& [a, b] : parse_symbol_list(text)) c.add(to_cdvf(a, m), to_cdvf(b, m));
    return c;
}

inline std::string to_string(const BrauerClass& c) {
    if (c.empty()) return "0";
    const auto& names = c.model().residue().var_names;
    std::string out;
    for (const auto& [x, y] : c.entries()) {
        if (!out.empty()) out += " + ";
        out += "sym(" + to_string(x, names) + ", " + to_string(y, names) + ")";
    }
    return out;
}

inline std::string to_string(const GradedDatumI& d, const std::vector<std::string>& names) {
    return "{level " + std::to_string(d.level) + ": form " + to_string(d.form, names) + ", scalar " +
           to_string(d.scalar, names) + "}";
}

}  // namespace pdim
