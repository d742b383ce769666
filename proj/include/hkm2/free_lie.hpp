#pragma once

#include "hkm2/rational.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hkm2 {

/// Binary word over the generator letters {0, 1}, packed into a uint64 with a
/// sentinel 1 bit above the letters (the empty word is 1, letters read
/// msb-first). Numeric order on equal lengths is lexicographic order.
struct Word {
    uint64_t bits = 1;

    static Word empty() { return Word{1}; }
    static Word letter(int b) { return Word{static_cast<uint64_t>(2 | (b & 1))}; }

    int length() const { return std::bit_width(bits) - 1; }
    bool is_empty() const { return bits == 1; }

    int letter_at(int pos) const { return static_cast<int>((bits >> (length() - 1 - pos)) & 1); }

    Word append(int b) const { return Word{(bits << 1) | static_cast<uint64_t>(b & 1)}; }

    friend Word concat(Word u, Word v) {
        int lv = v.length();
        uint64_t body = v.bits ^ (uint64_t(1) << lv);
        return Word{(u.bits << lv) | body};
    }

    /// (#zeros, #ones).
    std::pair<int, int> multidegree() const {
        int n = length();
        int ones = std::popcount(bits) - 1;
        return {n - ones, ones};
    }

    /// Proper suffix starting at position pos >= 1.
    Word suffix(int pos) const {
        int n = length();
        uint64_t body = bits ^ (uint64_t(1) << n);
        int keep = n - pos;
        return Word{(uint64_t(1) << keep) | (body & ((uint64_t(1) << keep) - 1))};
    }

    Word prefix(int len) const { return Word{bits >> (length() - len)}; }

    friend bool operator==(Word a, Word b) { return a.bits == b.bits; }
    friend bool operator<(Word a, Word b) { return a.bits < b.bits; }

    std::string str() const {
        std::string s;
        for (int i = 0; i < length(); ++i) s += char('0' + letter_at(i));
        return s;
    }
};

/// Lexicographic comparison across lengths (a proper prefix precedes its
/// extensions), as needed by the Lyndon machinery.
inline int cmp_lex(Word a, Word b) {
    int la = a.length(), lb = b.length(), n = std::min(la, lb);
    for (int i = 0; i < n; ++i) {
        int d = a.letter_at(i) - b.letter_at(i);
        if (d != 0) return d;
    }
    return la == lb ? 0 : (la < lb ? -1 : 1);
}

/// A word is Lyndon when it is nonempty and strictly smaller than each of its
/// proper suffixes.
inline bool is_lyndon(Word w) {
    int n = w.length();
    if (n == 0) return false;
    for (int p = 1; p < n; ++p)
        if (cmp_lex(w, w.suffix(p)) >= 0) return false;
    return true;
}

/// Standard factorization w = u v of a Lyndon word of length >= 2, with v the
/// longest proper Lyndon suffix; u is then Lyndon and u < v.
inline std::pair<Word, Word> std_factorization(Word w) {
    int n = w.length();
    if (n < 2) throw std::invalid_argument("std_factorization needs length >= 2");
    for (int p = 1; p < n; ++p) {
        Word v = w.suffix(p);
        if (is_lyndon(v)) return {w.prefix(p), v};
    }
    throw std::logic_error("no Lyndon suffix found; input was not Lyndon");
}

/// All words with x zeros and y ones, in lexicographic (= numeric) order.
inline std::vector<Word> words_of_degree(int x, int y) {
    std::vector<int> letters(static_cast<size_t>(x), 0);
    letters.insert(letters.end(), static_cast<size_t>(y), 1);
    std::vector<Word> out;
    do {
        Word w = Word::empty();
        for (int b : letters) w = w.append(b);
        out.push_back(w);
    } while (std::next_permutation(letters.begin(), letters.end()));
    return out;
}

inline std::vector<Word> lyndon_words_of_degree(int x, int y) {
    std::vector<Word> out;
    for (Word w : words_of_degree(x, y))
        if (is_lyndon(w)) out.push_back(w);
    return out;
}

/// Noncommutative polynomial in tensor-algebra (word) coordinates.
using WordPoly = std::map<uint64_t, Int>;

inline void poly_add_term(WordPoly& p, uint64_t w, const Int& c) {
    auto it = p.find(w);
    if (it == p.end()) {
        if (c != 0) p.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second == 0) p.erase(it);
}

inline WordPoly poly_mul(const WordPoly& p, const WordPoly& q) {
    WordPoly out;
    for (const auto& [wp, cp] : p)
        for (const auto& [wq, cq] : q)
            poly_add_term(out, concat(Word{wp}, Word{wq}).bits, cp * cq);
    return out;
}

inline WordPoly poly_commutator(const WordPoly& p, const WordPoly& q) {
    WordPoly out = poly_mul(p, q);
    for (const auto& [w, c] : poly_mul(q, p)) poly_add_term(out, w, -c);
    return out;
}

/// ad e_b applied in tensor coordinates: e_b * p - p * e_b.
inline WordPoly poly_ad_letter(int b, const WordPoly& p) {
    WordPoly gen;
    gen.emplace(Word::letter(b).bits, Int(1));
    return poly_commutator(gen, p);
}

/// Expansion of the Lyndon basis elements into tensor coordinates,
/// sigma(letter) = letter, sigma(uv) = [sigma(u), sigma(v)], memoized.
class LyndonExpander {
    std::unordered_map<uint64_t, WordPoly> cache_;

public:
    const WordPoly& sigma(Word w) {
        auto it = cache_.find(w.bits);
        if (it != cache_.end()) return it->second;
        WordPoly p;
        if (w.length() == 1) {
            p.emplace(w.bits, Int(1));
        } else {
            auto [u, v] = std_factorization(w);
            p = poly_commutator(sigma(u), sigma(v));
        }
        return cache_.emplace(w.bits, std::move(p)).first->second;
    }
};

/// The Serre element (ad e_i)^{1+a}(e_j) for j = 1 - i, in tensor coordinates.
inline WordPoly serre_element(int a, int i) {
    WordPoly p;
    p.emplace(Word::letter(1 - i).bits, Int(1));
    for (int k = 0; k <= a; ++k) p = poly_ad_letter(i, p);
    return p;
}

} // namespace hkm2
