#pragma once

// Fraction-free (Bareiss-style) row echelon form and linear solving over an
// exact field. Every update is R_i <- (pivot * R_i - a * R_pivot) / previous
// pivot, a nonzero rescaling of the textbook elimination step, so ranks,
// pivot columns and solution sets are those of ordinary Gaussian elimination.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace pdim::linalg {

template <class F>
using Matrix = std::vector<std::vector<F>>;

template <class F>
struct Echelon {
    Matrix<F> rows;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const { return pivot_cols.size(); }
};

/// Picks the pivot among candidate rows: the one whose entry is smallest
/// under `less`, first row on ties.
struct FirstNonzero {
    template <class F>
    bool operator()(const F&, const F&) const {
        return false;
    }
};

/// Reduces `m` (modified in place) to row echelon form. Columns at or beyond
/// `ncols_to_pivot` are carried along but never used as pivots.
template <class F, class Less = FirstNonzero>
Echelon<F> echelon(Matrix<F> m, std::size_t ncols_to_pivot, Less less = {}) {
    Echelon<F> out;
    const std::size_t nrows = m.size();
    if (nrows == 0) {
        out.rows = std::move(m);
        return out;
    }
    const std::size_t ncols = m.front().size();
    std::optional<F> prev;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols_to_pivot && r < nrows; ++c) {
        std::optional<std::size_t> best;
        for (std::size_t i = r; i < nrows; ++i) {
            if (m[i][c].is_zero()) continue;
            if (!best || less(m[i][c], m[*best][c])) best = i;
        }
        if (!best) continue;
        std::swap(m[r], m[*best]);
        const F pivot = m[r][c];
        for (std::size_t i = r + 1; i < nrows; ++i) {
            const F a = m[i][c];
            for (std::size_t j = c + 1; j < ncols; ++j) {
                F v = pivot * m[i][j];
                if (!a.is_zero()) v = v - a * m[r][j];
                m[i][j] = prev ? v / *prev : v;
            }
            m[i][c] = a - a;
        }
        prev = pivot;
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.rows = std::move(m);
    return out;
}

template <class F, class Less = FirstNonzero>
std::size_t rank(const Matrix<F>& m, Less less = {}) {
    if (m.empty()) return 0;
    return echelon(m, m.front().size(), less).rank();
}

/// Solves A x = b. Returns one solution (free variables set to zero), or
/// nothing when the system is inconsistent.
template <class F, class Less = FirstNonzero>
std::optional<std::vector<F>> solve(const Matrix<F>& a, const std::vector<F>& b, const F& zero, Less less = {}) {
    const std::size_t nrows = a.size();
    const std::size_t nvars = nrows == 0 ? 0 : a.front().size();
    Matrix<F> aug = a;
    for (std::size_t i = 0; i < nrows; ++i) aug[i].push_back(b[i]);
    Echelon<F> e = echelon(std::move(aug), nvars, less);
    for (std::size_t i = e.rank(); i < nrows; ++i)
        if (!e.rows[i][nvars].is_zero()) return std::nullopt;
    std::vector<F> x(nvars, zero);
    for (std::size_t k = e.rank(); k-- > 0;) {
        const auto& row = e.rows[k];
        const std::size_t c = e.pivot_cols[k];
        F acc = row[nvars];
        for (std::size_t j = c + 1; j < nvars; ++j)
            if (!row[j].is_zero() && !x[j].is_zero()) acc = acc - row[j] * x[j];
        x[c] = acc / row[c];
    }
    return x;
}

}  // namespace pdim::linalg
