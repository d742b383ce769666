#pragma once

#include "hkm2/rational.hpp"

#include <compare>
#include <ostream>
#include <stdexcept>

namespace hkm2 {

/// The integer a >= 3 defining the rank-2 symmetric Cartan matrix
/// [[2, -a], [-a, 2]] (hyperbolic regime) and everything derived from it.
struct CartanParam {
    int a;

    explicit CartanParam(int a_) : a(a_) {
        if (a_ < 3) throw std::invalid_argument("CartanParam requires a >= 3");
    }

    /// Cartan matrix entry a_ij, i, j in {0, 1}.
    int entry(int i, int j) const { return i == j ? 2 : -a; }
};

/// Lattice point x*alpha0 + y*alpha1 in simple-root coordinates.
struct RootCoord {
    Int x;
    Int y;

    Int height() const { return x + y; }
    RootCoord operator-() const { return {-x, -y}; }
    friend RootCoord operator+(const RootCoord& a, const RootCoord& b) {
        return {a.x + b.x, a.y + b.y};
    }
    friend RootCoord operator-(const RootCoord& a, const RootCoord& b) {
        return {a.x - b.x, a.y - b.y};
    }
    friend bool operator==(const RootCoord& a, const RootCoord& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const RootCoord& a, const RootCoord& b) { return !(a == b); }
    friend bool operator<(const RootCoord& a, const RootCoord& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
    friend std::ostream& operator<<(std::ostream& os, const RootCoord& c) {
        return os << "(" << c.x << ", " << c.y << ")";
    }
};

/// x^2 - a*x*y + y^2; real roots are exactly the lattice points with value 1.
inline Int root_norm(const CartanParam& a, const RootCoord& c) {
    return c.x * c.x - a.a * c.x * c.y + c.y * c.y;
}

inline bool is_real_root(const CartanParam& a, const RootCoord& c) {
    return root_norm(a, c) == 1;
}

/// <h_i, x*alpha0 + y*alpha1> = sum_j coeff_j * a_ij.
inline Int pairing_h(const CartanParam& a, int i, const RootCoord& c) {
    if (i == 0) return Int(2 * c.x - a.a * c.y);
    return Int(-a.a * c.x + 2 * c.y);
}

/// Invariant symmetric bilinear form on the root lattice, normalized so that
/// (alpha_i | alpha_j) = a_ij. Real roots have (c|c) = 2.
inline Int root_bilinear(const CartanParam& a, const RootCoord& u, const RootCoord& v) {
    return 2 * u.x * v.x - a.a * (u.x * v.y + u.y * v.x) + 2 * u.y * v.y;
}

} // namespace hkm2
