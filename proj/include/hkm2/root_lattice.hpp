#pragma once

#include "hkm2/cartan.hpp"
#include "hkm2/weyl_word.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace hkm2 {

/// F_0 = 0, F_1 = 1, F_{k+2} = a*F_{k+1} - F_k. Strictly increasing from k = 1
/// on; the positive real roots are exactly the pairs of consecutive values.
inline Int f_seq(const CartanParam& a, int k) {
    if (k < 0) throw std::invalid_argument("f_seq requires k >= 0");
    Int prev = 0, cur = 1;
    if (k == 0) return prev;
    for (int s = 1; s < k; ++s) {
        Int next = a.a * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

enum class RootKind { Alpha, Beta };

/// Positive real root (F_{i+1}, F_i) for AlphaType, (F_i, F_{i+1}) for BetaType.
struct RealRootDesc {
    RootCoord coord;
    RootKind kind;
    int index;
};

inline RootCoord alpha_root(const CartanParam& a, int i) {
    return {f_seq(a, i + 1), f_seq(a, i)};
}

inline RootCoord beta_root(const CartanParam& a, int j) {
    return {f_seq(a, j), f_seq(a, j + 1)};
}

inline RootCoord real_root_coord(const CartanParam& a, RootKind kind, int index) {
    return kind == RootKind::Alpha ? alpha_root(a, index) : beta_root(a, index);
}

/// The first n alpha-type then the first n beta-type positive real roots.
inline std::vector<RealRootDesc> enumerate_real_positive_roots(const CartanParam& a, int n) {
    if (n < 1) throw std::invalid_argument("enumerate_real_positive_roots requires n >= 1");
    std::vector<RealRootDesc> out;
    out.reserve(2 * static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back({alpha_root(a, i), RootKind::Alpha, i});
    for (int j = 0; j < n; ++j) out.push_back({beta_root(a, j), RootKind::Beta, j});
    return out;
}

/// Inverse lookup: which positive real root has these coordinates?
/// Coordinates are derived data; this is the only place they are parsed back.
inline std::optional<RealRootDesc> classify_positive_real_root(const CartanParam& a,
                                                               const RootCoord& c) {
    if (c.x < 0 || c.y < 0 || !is_real_root(a, c)) return std::nullopt;
    Int prev = 0, cur = 1;
    for (int i = 0;; ++i) {
        if (c.x == cur && c.y == prev) return RealRootDesc{c, RootKind::Alpha, i};
        if (c.x == prev && c.y == cur) return RealRootDesc{c, RootKind::Beta, i};
        if (prev > c.x && prev > c.y) return std::nullopt;
        Int next = a.a * cur - prev;
        prev = cur;
        cur = next;
    }
}

/// Maximum number of distinct points on a common affine line, among the first
/// n alpha-type and n beta-type positive roots together with their negatives.
/// Exact integer cross-products only; the hyperbola bound makes this <= 2.
inline int max_collinear_real_roots(const CartanParam& a, int n) {
    if (n < 3) throw std::invalid_argument("max_collinear_real_roots requires n >= 3");
    std::vector<RootCoord> pts;
    for (const auto& d : enumerate_real_positive_roots(a, n)) {
        pts.push_back(d.coord);
        pts.push_back(-d.coord);
    }
    const size_t p = pts.size();
    int best = 2;
    for (size_t i = 0; i < p; ++i) {
        for (size_t j = i + 1; j < p; ++j) {
            int on_line = 2;
            for (size_t k = 0; k < p; ++k) {
                if (k == i || k == j) continue;
                RootCoord u = pts[j] - pts[i], v = pts[k] - pts[i];
                if (u.x * v.y - u.y * v.x == 0) ++on_line;
            }
            if (on_line > best) best = on_line;
        }
    }
    return best;
}

} // namespace hkm2
