#pragma once

// The quadratic Hilbert symbol over Q_2 by brute force: (a, b) = +1 iff
// a x^2 + b y^2 = z^2 has a primitive solution, and modulo 2^6 is enough
// to decide that for the representatives a, b in {1,3,5,7,2,6,10,14}.

#include <array>
#include <cstdint>
#include <utility>

#include "pdim/errors.hpp"

namespace pdim {

namespace detail {

/// Square class of a nonzero integer: (2-adic valuation mod 2, odd part mod 8).
inline std::pair<int, int> square_class_2(std::int64_t a) {
    if (a == 0) throw Error("Hilbert symbol of zero");
    int v = 0;
    while (a % 2 == 0) {
        a /= 2;
        ++v;
    }
    return {v % 2, static_cast<int>(((a % 8) + 8) % 8)};
}

inline bool primitive_solution_mod64(int a, int b) {
    for (int x = 0; x < 64; ++x) {
        const int ax2 = a * x * x;
        for (int y = 0; y < 64; ++y) {
            const int lhs = (ax2 + b * y * y) & 63;
            const bool xy_even = (x % 2 == 0) && (y % 2 == 0);
            for (int z = xy_even ? 1 : 0; z < 64; z += xy_even ? 2 : 1)
                if (((z * z) & 63) == lhs) return true;
        }
    }
    return false;
}

struct HilbertTable {
    // Index: 4 * valuation bit + (odd part mod 8) / 2.
    std::array<std::array<int, 8>, 8> sign{};

    HilbertTable() {
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) sign[i][j] = primitive_solution_mod64(rep(i), rep(j)) ? 1 : -1;
    }

    static int rep(int idx) { return (idx >= 4 ? 2 : 1) * (2 * (idx % 4) + 1); }
    static int index(std::pair<int, int> c) { return 4 * c.first + c.second / 2; }
};

inline const HilbertTable& hilbert_table() {
    static const HilbertTable table;
    return table;
}

}  // namespace detail

/// (a, b)_2 in {+1, -1} for nonzero integers a, b.
inline int hilbert_symbol_2(std::int64_t a, std::int64_t b) {
    const auto& t = detail::hilbert_table();
    return t.sign[detail::HilbertTable::index(detail::square_class_2(a))]
                 [detail::HilbertTable::index(detail::square_class_2(b))];
}

/// Same, for 2^va * ua and 2^vb * ub with ua, ub odd (only ua, ub mod 8 matter).
inline int hilbert_symbol_2(std::int64_t va, std::int64_t ua, std::int64_t vb, std::int64_t ub) {
    if (ua % 2 == 0 || ub % 2 == 0) throw Error("unit parts must be odd");
    const auto cls = [](std::int64_t v, std::int64_t u) {
        return std::pair<int, int>{static_cast<int>(((v % 2) + 2) % 2), static_cast<int>(((u % 8) + 8) % 8)};
    };
    const auto& t = detail::hilbert_table();
    return t.sign[detail::HilbertTable::index(cls(va, ua))][detail::HilbertTable::index(cls(vb, ub))];
}

}  // namespace pdim
