#pragma once

#include "hkm2/cartan.hpp"

#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkm2 {

/// Word in the fundamental reflections r0, r1, stored as letters 0/1.
/// Words act as function composition: the rightmost letter acts first.
/// Normalization cancels adjacent equal letters (r_i r_i = id), so the
/// reduced form is alternating.
class WeylWord {
    std::vector<int> letters_;

    void normalize() {
        std::vector<int> out;
        for (int l : letters_) {
            if (!out.empty() && out.back() == l)
                out.pop_back();
            else
                out.push_back(l);
        }
        letters_ = std::move(out);
    }

public:
    WeylWord() = default;
    explicit WeylWord(std::vector<int> letters) : letters_(std::move(letters)) {
        for (int l : letters_)
            if (l != 0 && l != 1) throw std::invalid_argument("WeylWord letter must be 0 or 1");
        normalize();
    }
    WeylWord(std::initializer_list<int> letters) : WeylWord(std::vector<int>(letters)) {}

    const std::vector<int>& letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }
    size_t length() const { return letters_.size(); }

    /// Alternating word of the given length starting with the given letter,
    /// e.g. alternating(0, 3) = r0 r1 r0.
    static WeylWord alternating(int first_letter, size_t length) {
        std::vector<int> ls(length);
        for (size_t k = 0; k < length; ++k) ls[k] = (first_letter + static_cast<int>(k)) % 2;
        return WeylWord(std::move(ls));
    }

    WeylWord inverse() const {
        std::vector<int> rev(letters_.rbegin(), letters_.rend());
        return WeylWord(std::move(rev));
    }

    friend WeylWord operator*(const WeylWord& a, const WeylWord& b) {
        std::vector<int> ls = a.letters_;
        ls.insert(ls.end(), b.letters_.begin(), b.letters_.end());
        return WeylWord(std::move(ls));
    }

    std::string str() const {
        if (letters_.empty()) return "id";
        std::string s;
        for (int l : letters_) s += "r" + std::to_string(l);
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const WeylWord& w) {
        return os << w.str();
    }
};

/// Fundamental reflection on root coordinates:
/// r0(x, y) = (-x + a*y, y), r1(x, y) = (x, a*x - y).
inline RootCoord reflect_coord(const CartanParam& a, int i, const RootCoord& c) {
    if (i == 0) return {-c.x + a.a * c.y, c.y};
    return {c.x, a.a * c.x - c.y};
}

/// Apply a full word, rightmost letter first.
inline RootCoord weyl_on_coord(const CartanParam& a, const WeylWord& w, RootCoord c) {
    const auto& ls = w.letters();
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) c = reflect_coord(a, *it, c);
    return c;
}

} // namespace hkm2
