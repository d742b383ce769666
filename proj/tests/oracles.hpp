#pragma once

// Test-only oracles, independent of the graded-algebra implementation path.

#include "hkm2/cartan.hpp"
#include "hkm2/rational.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace oracles {

using hkm2::Int;
using hkm2::Rational;

/// Root multiplicities of the rank-2 symmetric algebra via the Peterson
/// recurrence: (b|b - 2rho) c_b = sum_{b'+b''=b} (b'|b'') c_{b'} c_{b''},
/// with c_b = sum_{k | b} mult(b/k)/k and (rho|alpha_i) = 1. Lattice points
/// of norm > 1 are not roots and carry multiplicity 0.
class PetersonMult {
    int a_;
    std::map<std::pair<int, int>, Int> mult_;
    std::map<std::pair<int, int>, Rational> c_;

    Rational bilinear(int x1, int y1, int x2, int y2) const {
        return Rational(Int(2) * x1 * x2 - Int(a_) * (Int(x1) * y2 + Int(y1) * x2) +
                        Int(2) * y1 * y2);
    }

    Rational cval(int x, int y) {
        auto key = std::make_pair(x, y);
        if (auto it = c_.find(key); it != c_.end()) return it->second;
        Rational total(0);
        int g = std::gcd(x, y);
        for (int k = 1; k <= g; ++k)
            if (g % k == 0) total += Rational(mult(x / k, y / k)) / Rational(k);
        c_.emplace(key, total);
        return total;
    }

public:
    explicit PetersonMult(int a) : a_(a) {}

    Int mult(int x, int y) {
        if (x < 0 || y < 0 || x + y == 0) throw std::invalid_argument("need a positive point");
        auto key = std::make_pair(x, y);
        if (auto it = mult_.find(key); it != mult_.end()) return it->second;
        Int m;
        Int norm = Int(x) * x - Int(a_) * x * y + Int(y) * y;
        if (x + y == 1) {
            m = 1;
        } else if (norm > 1) {
            m = 0;  // neither real nor imaginary
        } else {
            Rational rhs(0);
            for (int x1 = 0; x1 <= x; ++x1)
                for (int y1 = 0; y1 <= y; ++y1) {
                    if (x1 + y1 == 0 || (x1 == x && y1 == y)) continue;
                    Rational c1 = cval(x1, y1);
                    if (c1.is_zero()) continue;
                    Rational c2 = cval(x - x1, y - y1);
                    if (c2.is_zero()) continue;
                    rhs += bilinear(x1, y1, x - x1, y - y1) * c1 * c2;
                }
            // (b|b) - (b|2rho) = 2*norm - 2*(x+y); nonzero whenever norm <= 1
            // and height > 1.
            Rational denom = Rational(2 * norm) - Rational(2 * (Int(x) + y));
            Rational cb = rhs / denom;
            Rational corrections(0);
            int g = std::gcd(x, y);
            for (int k = 2; k <= g; ++k)
                if (g % k == 0) corrections += Rational(mult(x / k, y / k)) / Rational(k);
            Rational mr = cb - corrections;
            if (!mr.is_integer() || mr.sign() < 0)
                throw std::logic_error("Peterson recurrence produced a non-integer");
            m = mr.num();
        }
        mult_.emplace(key, m);
        return m;
    }
};

} // namespace oracles
