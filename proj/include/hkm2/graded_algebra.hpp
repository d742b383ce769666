#pragma once

#include "hkm2/cartan.hpp"
#include "hkm2/errors.hpp"
#include "hkm2/free_lie.hpp"
#include "hkm2/linalg.hpp"
#include "hkm2/quad_scalar.hpp"
#include "hkm2/rational.hpp"
#include "hkm2/weyl_word.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

namespace hkm2 {

/// Height bound for all stored graded components (applied symmetrically to
/// negative roots). The ambient algebra is infinite-dimensional; every
/// realized computation happens inside this window.
struct TruncationWindow {
    int max_height;
};

struct BuildOptions {
    /// Guard against runaway windows; total root-space dimension cap.
    long max_total_dim = 20000;
};

/// Element of the truncated algebra over scalar K: a Cartan part in the
/// (h0, h1) basis plus finitely many root-space coordinate vectors, keyed by
/// root coordinate. Zero vectors are pruned.
template <typename K>
struct BasicElement {
    std::array<K, 2> h{K(0), K(0)};
    std::map<RootCoord, std::vector<K>> parts;

    bool is_zero() const { return h[0] == K(0) && h[1] == K(0) && parts.empty(); }

    void prune() {
        for (auto it = parts.begin(); it != parts.end();) {
            bool all_zero = true;
            for (const K& c : it->second)
                if (!(c == K(0))) {
                    all_zero = false;
                    break;
                }
            it = all_zero ? parts.erase(it) : std::next(it);
        }
    }

    /// Accumulate without pruning; callers prune once at the end.
    void add_scaled(const BasicElement& other, const K& s) {
        h[0] = h[0] + other.h[0] * s;
        h[1] = h[1] + other.h[1] * s;
        for (const auto& [coord, vec] : other.parts) {
            auto& dst = parts[coord];
            if (dst.empty()) dst.assign(vec.size(), K(0));
            for (size_t i = 0; i < vec.size(); ++i) dst[i] = dst[i] + vec[i] * s;
        }
    }

    void add_part(const RootCoord& coord, size_t p, size_t dim, const K& c) {
        auto& dst = parts[coord];
        if (dst.empty()) dst.assign(dim, K(0));
        dst[p] = dst[p] + c;
        prune();
    }

    BasicElement& operator+=(const BasicElement& o) {
        add_scaled(o, K(1));
        prune();
        return *this;
    }
    BasicElement& operator-=(const BasicElement& o) {
        add_scaled(o, K(-1));
        prune();
        return *this;
    }
    friend BasicElement operator+(BasicElement a, const BasicElement& b) { return a += b; }
    friend BasicElement operator-(BasicElement a, const BasicElement& b) { return a -= b; }
    friend BasicElement operator*(const K& s, BasicElement a) {
        a.h[0] = a.h[0] * s;
        a.h[1] = a.h[1] * s;
        for (auto& [coord, vec] : a.parts)
            for (K& c : vec) c = c * s;
        a.prune();
        return a;
    }
    BasicElement operator-() const { return K(-1) * *this; }

    friend bool operator==(const BasicElement& a, const BasicElement& b) {
        return a.h == b.h && a.parts == b.parts;
    }
    friend bool operator!=(const BasicElement& a, const BasicElement& b) { return !(a == b); }
};

using GradedElement = BasicElement<QuadScalar>;

namespace detail {

using RatElem = BasicElement<Rational>;

/// Sparse row in component word coordinates, sorted by column.
using SparseRow = std::vector<std::pair<uint32_t, Rational>>;

inline SparseRow row_axpy(const SparseRow& r, const Rational& c, const SparseRow& s) {
    SparseRow out;
    out.reserve(r.size() + s.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < s.size()) {
        if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || s[j].first < r[i].first) {
            Rational v = c * s[j].second;
            if (!v.is_zero()) out.emplace_back(s[j].first, v);
            ++j;
        } else {
            Rational v = r[i].second + c * s[j].second;
            if (!v.is_zero()) out.emplace_back(r[i].first, v);
            ++i, ++j;
        }
    }
    return out;
}

} // namespace detail

/// Truncated realization of the rank-2 hyperbolic Kac-Moody algebra g(A):
/// n+ as the free Lie algebra on {e0, e1} over the Lyndon basis, quotiented
/// per graded component by the Serre ideal via exact row reduction; n-
/// mirrored; exact brackets across the triangular decomposition derived by
/// structural recursion on the Lyndon factorization and memoized.
/// Immutable after construction; memo tables are internally synchronized,
/// so concurrent read-only use is safe.
class GradedAlgebra {
public:
    GradedAlgebra(CartanParam a, TruncationWindow window, BuildOptions opts = {})
        : a_(a), height_(window.max_height) {
        if (height_ < 2) throw std::invalid_argument("window max_height must be >= 2");
        build(opts);
    }

    // Movable (fresh memo lock on the destination); not copyable.
    GradedAlgebra(GradedAlgebra&& o) noexcept
        : a_(o.a_),
          height_(o.height_),
          comp_index_(std::move(o.comp_index_)),
          comps_(std::move(o.comps_)),
          pp_memo_(std::move(o.pp_memo_)),
          pm_memo_(std::move(o.pm_memo_)),
          gram_memo_(std::move(o.gram_memo_)) {}
    GradedAlgebra(const GradedAlgebra&) = delete;
    GradedAlgebra& operator=(const GradedAlgebra&) = delete;
    GradedAlgebra& operator=(GradedAlgebra&&) = delete;

    const CartanParam& cartan() const { return a_; }
    int max_height() const { return height_; }

    /// Root-space dimension; 0 outside the window or off the root cone.
    long dim(const RootCoord& coord) const {
        const Component* c = component(canonical(coord));
        return c ? static_cast<long>(c->reps.size()) : 0;
    }

    /// Positive root coordinates with nonzero root space, ordered by height.
    std::vector<RootCoord> positive_roots_in_window() const {
        std::vector<RootCoord> out;
        for (const auto& c : comps_)
            if (!c.reps.empty()) out.push_back(c.alpha);
        std::stable_sort(out.begin(), out.end(), [](const RootCoord& a, const RootCoord& b) {
            return a.height() < b.height();
        });
        return out;
    }

    /// dim h + both cones.
    long total_dim() const {
        long n = 2;
        for (const auto& c : comps_) n += 2 * static_cast<long>(c.reps.size());
        return n;
    }

    GradedElement zero() const { return GradedElement{}; }

    GradedElement cartan_h(int i) const {
        GradedElement x;
        x.h[i] = QuadScalar(Rational(1));
        return x;
    }
    GradedElement chevalley_e(int i) const { return basis_element(simple(i), 0); }
    GradedElement chevalley_f(int i) const { return basis_element(-simple(i), 0); }

    /// p-th basis vector of the root space at `coord` (either cone).
    GradedElement basis_element(const RootCoord& coord, size_t p) const {
        const Component* c = component(canonical(coord));
        if (!c || p >= c->reps.size())
            throw std::out_of_range("basis_element: no such basis vector");
        GradedElement x;
        x.add_part(coord, p, c->reps.size(), QuadScalar(Rational(1)));
        return x;
    }

    GradedElement bracket(const GradedElement& x, const GradedElement& y) const {
        return bracket_impl<QuadScalar>(x, y);
    }

    /// Structure constants for a single basis pair, as an element.
    GradedElement bracket_basis(const RootCoord& alpha, size_t p, const RootCoord& beta,
                                size_t q) const {
        GradedElement a = basis_element(alpha, p);
        GradedElement b = basis_element(beta, q);
        return bracket(a, b);
    }

    /// exp(ad u) for u a scalar multiple of a single Chevalley generator.
    /// The series must terminate by nilpotency strictly inside the window.
    GradedElement exp_ad(const GradedElement& u, const GradedElement& x) const {
        if (!(u.h[0] == QuadScalar(Rational(0))) || !(u.h[1] == QuadScalar(Rational(0))) ||
            u.parts.size() != 1)
            throw std::invalid_argument("exp_ad: u must be a multiple of e_i or f_i");
        const RootCoord& c = u.parts.begin()->first;
        if (!(canonical(c) == simple(0)) && !(canonical(c) == simple(1)))
            throw std::invalid_argument("exp_ad: u must be a multiple of e_i or f_i");
        GradedElement sum = x;
        GradedElement term = x;
        for (long k = 1; !term.is_zero(); ++k) {
            if (k > 4 * height_ + 8)
                throw VerificationFailed("exp_ad series failed to terminate");
            term = QuadScalar(Rational(Int(1), Int(k))) * bracket(u, term);
            sum += term;
        }
        return sum;
    }

    /// Weyl-group action r_i = exp(ad f_i) exp(ad -e_i) exp(ad f_i) per
    /// letter, rightmost letter first. Maps g_alpha into g_{w(alpha)}.
    GradedElement weyl(const WeylWord& w, GradedElement x) const {
        const auto& ls = w.letters();
        for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
            GradedElement e = chevalley_e(*it), f = chevalley_f(*it);
            x = exp_ad(f, exp_ad(-e, exp_ad(f, x)));
        }
        return x;
    }

    /// Chevalley involution: e_i -> -f_i, f_i -> -e_i, h -> -h, extended as
    /// an automorphism. On a graded basis vector this is (-1)^height times
    /// the mirrored basis vector of the opposite cone.
    GradedElement chevalley_involution(const GradedElement& x) const {
        GradedElement out;
        out.h[0] = -x.h[0];
        out.h[1] = -x.h[1];
        for (const auto& [coord, vec] : x.parts) {
            Int ht = coord.x + coord.y;
            if (ht < 0) ht = -ht;
            QuadScalar s(Rational(ht % 2 == 0 ? 1 : -1));
            auto& dst = out.parts[-coord];
            dst.assign(vec.size(), QuadScalar(Rational(0)));
            for (size_t i = 0; i < vec.size(); ++i) dst[i] = s * vec[i];
        }
        out.prune();
        return out;
    }

    /// Compact involution. Antilinear in general; all coefficients here are
    /// real, so it acts as the Chevalley involution on this coefficient
    /// domain (complex conjugation is the identity on QuadScalar).
    GradedElement compact_involution(const GradedElement& x) const {
        return chevalley_involution(x);
    }

    /// Invariant symmetric bilinear form, normalized by (h_i|h_j) = a_ij and
    /// (e_i|f_j) = delta_ij; g_alpha and g_beta pair only when alpha+beta = 0.
    QuadScalar standard_form(const GradedElement& x, const GradedElement& y) const {
        QuadScalar res(Rational(0));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                res += x.h[i] * y.h[j] * QuadScalar(Rational(a_.entry(i, j)));
        for (const auto& [coord, u] : x.parts) {
            auto it = y.parts.find(-coord);
            if (it == y.parts.end()) continue;
            const auto& v = it->second;
            const DenseMatrix<Rational>& g = gram(comp_index(canonical(coord)));
            bool x_positive = coord.height() > 0;
            for (size_t p = 0; p < u.size(); ++p)
                for (size_t q = 0; q < v.size(); ++q) {
                    const Rational& gpq = x_positive ? g.at(p, q) : g.at(q, p);
                    if (!gpq.is_zero()) res += u[p] * v[q] * QuadScalar(gpq);
                }
        }
        return res;
    }

    /// Hermitian form (x|y)_0 = -(w0(x)|y), expanded in place: it pairs
    /// identical components, with sign (-1)^{height+1} against the gram
    /// pairing and a plain Cartan block.
    QuadScalar hermitian_form(const GradedElement& x, const GradedElement& y) const {
        QuadScalar res(Rational(0));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                res += x.h[i] * y.h[j] * QuadScalar(Rational(a_.entry(i, j)));
        for (const auto& [coord, u] : x.parts) {
            auto it = y.parts.find(coord);
            if (it == y.parts.end()) continue;
            const auto& v = it->second;
            const DenseMatrix<Rational>& g = gram(comp_index(canonical(coord)));
            Int ht = coord.height() < 0 ? Int(-coord.height()) : coord.height();
            bool positive = coord.height() > 0;
            Rational sign(ht % 2 == 1 ? 1 : -1);
            for (size_t p = 0; p < u.size(); ++p) {
                if (u[p] == QuadScalar(Rational(0))) continue;
                for (size_t q = 0; q < v.size(); ++q) {
                    const Rational& gpq = positive ? g.at(q, p) : g.at(p, q);
                    if (!gpq.is_zero()) res += u[p] * v[q] * QuadScalar(sign * gpq);
                }
            }
        }
        return res;
    }

    /// Gram matrix G[p][q] = (basis(alpha, p) | basis(-alpha, q)) of the
    /// pairing between g_alpha and g_{-alpha}, alpha positive.
    DenseMatrix<Rational> gram_matrix(const RootCoord& alpha) const {
        return gram(comp_index(canonical(alpha)));
    }

    // --- serialization hooks (see cache.hpp) ---
    template <typename F>
    void visit_components(F&& f) const {
        for (const auto& c : comps_)
            f(c.alpha, c.ideal, c.ideal_pivots, c.reps, c.rep_ech, c.rep_expr, c.rep_words);
    }
    struct ComponentData {
        RootCoord alpha;
        std::vector<detail::SparseRow> ideal, reps, rep_ech;
        std::vector<uint32_t> ideal_pivots;
        std::vector<std::vector<Rational>> rep_expr;
        std::vector<uint64_t> rep_words;
    };
    GradedAlgebra(CartanParam a, TruncationWindow window, std::vector<ComponentData> data)
        : a_(a), height_(window.max_height) {
        for (auto& d : data) {
            Component c;
            c.alpha = d.alpha;
            auto [x, y] = coord_degrees(d.alpha);
            for (Word w : words_of_degree(x, y)) c.words.push_back(w.bits);
            c.ideal = std::move(d.ideal);
            c.ideal_pivots = std::move(d.ideal_pivots);
            for (size_t i = 0; i < c.ideal_pivots.size(); ++i)
                c.ideal_by_pivot[c.ideal_pivots[i]] = i;
            c.reps = std::move(d.reps);
            c.rep_ech = std::move(d.rep_ech);
            c.rep_expr = std::move(d.rep_expr);
            c.rep_words = std::move(d.rep_words);
            for (size_t i = 0; i < c.rep_ech.size(); ++i)
                c.rep_by_pivot[c.rep_ech[i].front().first] = i;
            comp_index_[c.alpha] = static_cast<int>(comps_.size());
            comps_.push_back(std::move(c));
        }
        fill_peels();
    }

private:
    struct Component {
        RootCoord alpha;
        std::vector<uint64_t> words;  // sorted packed words of this multidegree

        // Serre ideal, echelonized (leading coefficient 1, distinct pivots).
        std::vector<detail::SparseRow> ideal;
        std::vector<uint32_t> ideal_pivots;
        std::map<uint32_t, size_t> ideal_by_pivot;

        // Quotient basis: original Lyndon polynomials, their echelonized
        // remainders, and the expression of each remainder over the reps.
        std::vector<detail::SparseRow> reps;
        std::vector<detail::SparseRow> rep_ech;
        std::map<uint32_t, size_t> rep_by_pivot;
        std::vector<std::vector<Rational>> rep_expr;
        std::vector<uint64_t> rep_words;

        // Standard factorization of each rep, in quotient coordinates.
        struct Peel {
            RootCoord mu, nu;
            std::vector<Rational> cu, cv;
        };
        std::vector<Peel> peels;

        uint32_t rank_of(uint64_t wbits) const {
            auto it = std::lower_bound(words.begin(), words.end(), wbits);
            return static_cast<uint32_t>(it - words.begin());
        }
    };

    CartanParam a_;
    int height_;
    std::map<RootCoord, int> comp_index_;
    std::vector<Component> comps_;

    mutable std::mutex memo_mutex_;
    mutable std::map<uint64_t, std::vector<Rational>> pp_memo_;
    mutable std::map<uint64_t, detail::RatElem> pm_memo_;
    mutable std::map<int, DenseMatrix<Rational>> gram_memo_;

    static RootCoord simple(int i) { return i == 0 ? RootCoord{1, 0} : RootCoord{0, 1}; }

    static RootCoord canonical(const RootCoord& c) {
        return c.height() < 0 ? -c : c;
    }

    static std::pair<int, int> coord_degrees(const RootCoord& c) {
        return {static_cast<int>(c.x), static_cast<int>(c.y)};
    }

    /// The component is zero for every window size: coordinates of mixed
    /// sign, or positive norm above the real-root value.
    bool certainly_zero(const RootCoord& c) const {
        if ((c.x > 0 && c.y < 0) || (c.x < 0 && c.y > 0)) return true;
        return root_norm(a_, c) >= 2;
    }

    const Component* component(const RootCoord& positive) const {
        auto it = comp_index_.find(positive);
        return it == comp_index_.end() ? nullptr : &comps_[static_cast<size_t>(it->second)];
    }

    int comp_index(const RootCoord& positive) const {
        auto it = comp_index_.find(positive);
        if (it == comp_index_.end())
            throw std::out_of_range("no component at the given coordinate");
        return it->second;
    }

    static detail::SparseRow to_sparse(const WordPoly& p, const Component& comp) {
        detail::SparseRow row;
        row.reserve(p.size());
        for (const auto& [w, c] : p) row.emplace_back(comp.rank_of(w), Rational(c));
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return row;
    }

    void build(const BuildOptions& opts) {
        LyndonExpander sigma;
        long total = 0;
        for (int h = 1; h <= height_; ++h) {
            for (int x = 0; x <= h; ++x) {
                int y = h - x;
                auto lyndon = lyndon_words_of_degree(x, y);

                // Candidate ideal rows: Serre generators born here plus the
                // ad e_i images of the parent components' ideals.
                std::vector<WordPoly> candidates;
                if ((x == a_.a + 1 && y == 1) || (x == 1 && y == a_.a + 1))
                    candidates.push_back(serre_element(a_.a, x > y ? 0 : 1));
                for (int i = 0; i < 2; ++i) {
                    RootCoord parent{x - (i == 0 ? 1 : 0), y - (i == 1 ? 1 : 0)};
                    if (parent.x < 0 || parent.y < 0) continue;
                    const Component* pc = component(parent);
                    if (!pc) continue;
                    for (const auto& row : pc->ideal)
                        candidates.push_back(ad_letter_on_row(i, row, *pc));
                }
                if (lyndon.empty() && candidates.empty()) continue;

                Component comp;
                comp.alpha = RootCoord{x, y};
                for (Word w : words_of_degree(x, y)) comp.words.push_back(w.bits);

                // Echelonize the ideal.
                for (auto& cand : candidates) {
                    detail::SparseRow row = to_sparse(cand, comp);
                    reduce_by_ideal(comp, row);
                    if (row.empty()) continue;
                    Rational inv = row.front().second.reciprocal();
                    for (auto& [col, v] : row) v *= inv;
                    comp.ideal_by_pivot[row.front().first] = comp.ideal.size();
                    comp.ideal_pivots.push_back(row.front().first);
                    comp.ideal.push_back(std::move(row));
                }

                // Select quotient representatives among the Lyndon elements.
                for (Word w : lyndon) {
                    detail::SparseRow orig = to_sparse(sigma.sigma(w), comp);
                    detail::SparseRow rem = orig;
                    std::vector<Rational> expr(comp.reps.size(), Rational(0));
                    reduce_row(comp, rem, &expr);
                    if (rem.empty()) continue;
                    Rational lead = rem.front().second;
                    Rational inv = lead.reciprocal();
                    for (auto& [col, v] : rem) v *= inv;
                    // remainder = (sigma(w) - sum expr_k rep_k - ideal)/lead
                    for (auto& e : expr) e *= inv;
                    std::vector<Rational> full_expr = std::move(expr);
                    for (auto& e : full_expr) e = -e;
                    full_expr.push_back(inv);
                    comp.rep_by_pivot[rem.front().first] = comp.rep_ech.size();
                    comp.rep_ech.push_back(std::move(rem));
                    comp.rep_expr.push_back(std::move(full_expr));
                    comp.reps.push_back(std::move(orig));
                    comp.rep_words.push_back(w.bits);
                }
                for (auto& e : comp.rep_expr) e.resize(comp.reps.size(), Rational(0));

                if (comp.reps.size() + comp.ideal.size() != lyndon.size())
                    throw VerificationFailed("Serre quotient rank bookkeeping failed");

                total += 2 * static_cast<long>(comp.reps.size());
                if (total + 2 > opts.max_total_dim)
                    throw ResourceLimit("window dimension exceeds max_total_dim");

                comp_index_[comp.alpha] = static_cast<int>(comps_.size());
                comps_.push_back(std::move(comp));
            }
        }
        fill_peels();
    }

    void fill_peels() {
        for (auto& comp : comps_) {
            if (comp.alpha.height() <= 1) continue;
            for (uint64_t wbits : comp.rep_words) {
                auto [u, v] = std_factorization(Word{wbits});
                Component::Peel peel;
                auto [ux, uy] = u.multidegree();
                auto [vx, vy] = v.multidegree();
                peel.mu = RootCoord{ux, uy};
                peel.nu = RootCoord{vx, vy};
                LyndonExpander sigma;
                peel.cu = coords_mod_ideal(peel.mu, sigma.sigma(u));
                peel.cv = coords_mod_ideal(peel.nu, sigma.sigma(v));
                comp.peels.push_back(std::move(peel));
            }
        }
    }

    WordPoly ad_letter_on_row(int letter, const detail::SparseRow& row,
                              const Component& comp) const {
        WordPoly p;
        for (const auto& [col, c] : row) {
            Word w{comp.words[col]};
            Word gen = Word::letter(letter);
            poly_add_term(p, concat(gen, w).bits, c.num());  // rows are normalized;
            poly_add_term(p, concat(w, gen).bits, -c.num()); // see below for dens
        }
        // Echelon rows may carry denominators; redo exactly over rationals
        // when any entry is non-integral.
        bool integral = true;
        for (const auto& [col, c] : row)
            if (!c.is_integer()) {
                integral = false;
                break;
            }
        if (integral) return p;
        p.clear();
        // Scale by the common denominator; the ideal is a subspace, so
        // scaling does not change the span.
        Int common = 1;
        for (const auto& [col, c] : row) common = boost::multiprecision::lcm(common, c.den());
        for (const auto& [col, c] : row) {
            Word w{comp.words[col]};
            Word gen = Word::letter(letter);
            Int scaled = c.num() * (common / c.den());
            poly_add_term(p, concat(gen, w).bits, scaled);
            poly_add_term(p, concat(w, gen).bits, -scaled);
        }
        return p;
    }

    void reduce_by_ideal(const Component& comp, detail::SparseRow& row) const {
        while (!row.empty()) {
            auto it = comp.ideal_by_pivot.find(row.front().first);
            if (it == comp.ideal_by_pivot.end()) return;
            row = detail::row_axpy(row, -row.front().second, comp.ideal[it->second]);
        }
    }

    /// Reduce against ideal and rep echelons; if expr is given, accumulate
    /// the rep-basis expression of the removed rep_ech multiples.
    void reduce_row(const Component& comp, detail::SparseRow& row,
                    std::vector<Rational>* expr) const {
        while (!row.empty()) {
            uint32_t lead = row.front().first;
            Rational val = row.front().second;
            if (auto it = comp.ideal_by_pivot.find(lead); it != comp.ideal_by_pivot.end()) {
                row = detail::row_axpy(row, -val, comp.ideal[it->second]);
            } else if (auto jt = comp.rep_by_pivot.find(lead); jt != comp.rep_by_pivot.end()) {
                if (expr) {
                    const auto& e = comp.rep_expr[jt->second];
                    if (expr->size() < e.size()) expr->resize(e.size(), Rational(0));
                    for (size_t k = 0; k < e.size(); ++k) (*expr)[k] += val * e[k];
                }
                row = detail::row_axpy(row, -val, comp.rep_ech[jt->second]);
            } else {
                return;  // irreducible leading term stays with the caller
            }
        }
    }

    /// Quotient coordinates of a free-Lie element; the residual must vanish.
    std::vector<Rational> coords_mod_ideal(const RootCoord& alpha, const WordPoly& p) const {
        const Component* comp = component(alpha);
        if (!comp) {
            if (!p.empty())
                throw VerificationFailed("nonzero Lie element in an absent component");
            return {};
        }
        detail::SparseRow row = to_sparse(p, *comp);
        std::vector<Rational> expr(comp->reps.size(), Rational(0));
        reduce_row(*comp, row, &expr);
        if (!row.empty())
            throw VerificationFailed("element did not reduce to the quotient basis");
        // rep_expr is triangular over the reps: row reduced fully, so expr
        // already holds the quotient coordinates.
        expr.resize(comp->reps.size(), Rational(0));
        return expr;
    }

    // --- bracket tables ---

    static uint64_t pair_key(int ca, size_t p, int cb, size_t q) {
        return (static_cast<uint64_t>(ca) << 48) | (static_cast<uint64_t>(p) << 32) |
               (static_cast<uint64_t>(cb) << 16) | static_cast<uint64_t>(q);
    }

    /// [x^alpha_p, x^beta_q] in quotient coordinates at alpha + beta
    /// (both positive, result inside the window).
    const std::vector<Rational>& pp_bracket(const RootCoord& alpha, size_t p,
                                            const RootCoord& beta, size_t q) const {
        static const std::vector<Rational> kEmpty;
        RootCoord target = alpha + beta;
        if (target.height() > height_)
            throw TruncationExceeded("bracket escapes the window",
                                     static_cast<int>(target.height()));
        const Component* tc = component(target);
        if (!tc || tc->reps.empty()) return kEmpty;
        int ca = comp_index(alpha), cb = comp_index(beta);
        uint64_t key = pair_key(ca, p, cb, q);
        {
            std::scoped_lock lock(memo_mutex_);
            if (auto it = pp_memo_.find(key); it != pp_memo_.end()) return it->second;
        }
        const Component& A = comps_[static_cast<size_t>(ca)];
        const Component& B = comps_[static_cast<size_t>(cb)];
        WordPoly prod;
        for (const auto& [colA, cA] : A.reps[p])
            for (const auto& [colB, cB] : B.reps[q]) {
                Word wa{A.words[colA]}, wb{B.words[colB]};
                Rational c = cA * cB;
                // reps have integer coefficients (original sigma rows)
                poly_add_term(prod, concat(wa, wb).bits, c.num());
                poly_add_term(prod, concat(wb, wa).bits, -c.num());
            }
        std::vector<Rational> coords = coords_mod_ideal(target, prod);
        std::scoped_lock lock(memo_mutex_);
        return pp_memo_.emplace(key, std::move(coords)).first->second;
    }

    /// Chevalley involution on rational elements: h negates, the component
    /// at gamma moves to -gamma with sign (-1)^|height|.
    static detail::RatElem rat_involution(const detail::RatElem& e) {
        detail::RatElem out;
        out.h[0] = -e.h[0];
        out.h[1] = -e.h[1];
        for (const auto& [coord, vec] : e.parts) {
            Int ht = coord.x + coord.y;
            if (ht < 0) ht = -ht;
            Rational s(ht % 2 == 0 ? 1 : -1);
            auto& dst = out.parts[-coord];
            dst.reserve(vec.size());
            for (const Rational& c : vec) dst.push_back(s * c);
        }
        return out;
    }

    /// [x^alpha_p, y^beta_q], alpha and beta positive heights; always
    /// computable inside the window.
    const detail::RatElem& pm_bracket(const RootCoord& alpha, size_t p, const RootCoord& beta,
                                      size_t q) const {
        int ca = comp_index(alpha), cb = comp_index(beta);
        uint64_t key = pair_key(ca, p, cb, q);
        {
            std::scoped_lock lock(memo_mutex_);
            if (auto it = pm_memo_.find(key); it != pm_memo_.end()) return it->second;
        }
        // Mirror symmetry halves the recursion: [x^a_p, y^b_q] equals
        // -(-1)^{ht a + ht b} w([x^b_q, y^a_p]).
        if (pair_key(cb, q, ca, p) < key) {
            const detail::RatElem& mirror = pm_bracket(beta, q, alpha, p);
            detail::RatElem out = rat_involution(mirror);
            Int hts = alpha.height() + beta.height();
            if (hts % 2 == 0) out = Rational(-1) * out;
            out.prune();
            std::scoped_lock lock(memo_mutex_);
            return pm_memo_.emplace(key, std::move(out)).first->second;
        }
        detail::RatElem out;
        const Component& A = comps_[static_cast<size_t>(ca)];
        const Component& B = comps_[static_cast<size_t>(cb)];
        if (alpha.height() == 1 && beta.height() == 1) {
            if (alpha == beta) {
                int i = alpha == simple(0) ? 0 : 1;
                out.h[i] = Rational(1);  // [e_i, f_i] = h_i
            }
        } else if (alpha.height() == 1) {
            // [e_i, [yu, yv]] = [[e_i, yu], yv] + [yu, [e_i, yv]]
            const Component::Peel& peel = B.peels[q];
            detail::RatElem brkU, brkV, yU, yV;
            for (size_t s = 0; s < peel.cu.size(); ++s) {
                if (peel.cu[s].is_zero()) continue;
                brkU.add_scaled(pm_bracket(alpha, p, peel.mu, s), peel.cu[s]);
                yU.add_part(-peel.mu, s, peel.cu.size(), peel.cu[s]);
            }
            for (size_t t = 0; t < peel.cv.size(); ++t) {
                if (peel.cv[t].is_zero()) continue;
                brkV.add_scaled(pm_bracket(alpha, p, peel.nu, t), peel.cv[t]);
                yV.add_part(-peel.nu, t, peel.cv.size(), peel.cv[t]);
            }
            out = bracket_impl<Rational>(brkU, yV);
            out += bracket_impl<Rational>(yU, brkV);
        } else {
            // [[xu, xv], y] = [xu, [xv, y]] - [xv, [xu, y]]
            const Component::Peel& peel = A.peels[p];
            detail::RatElem xU, xV, brkU, brkV;
            for (size_t s = 0; s < peel.cu.size(); ++s) {
                if (peel.cu[s].is_zero()) continue;
                xU.add_part(peel.mu, s, peel.cu.size(), peel.cu[s]);
                brkU.add_scaled(pm_bracket(peel.mu, s, beta, q), peel.cu[s]);
            }
            for (size_t t = 0; t < peel.cv.size(); ++t) {
                if (peel.cv[t].is_zero()) continue;
                xV.add_part(peel.nu, t, peel.cv.size(), peel.cv[t]);
                brkV.add_scaled(pm_bracket(peel.nu, t, beta, q), peel.cv[t]);
            }
            out = bracket_impl<Rational>(xU, brkV);
            out -= bracket_impl<Rational>(xV, brkU);
        }
        out.prune();
        std::scoped_lock lock(memo_mutex_);
        return pm_memo_.emplace(key, std::move(out)).first->second;
    }

    template <typename K>
    void lift_add(BasicElement<K>& out, const detail::RatElem& e, const K& scale) const {
        out.h[0] = out.h[0] + K(e.h[0]) * scale;
        out.h[1] = out.h[1] + K(e.h[1]) * scale;
        for (const auto& [coord, vec] : e.parts) {
            auto& dst = out.parts[coord];
            if (dst.empty()) dst.assign(vec.size(), K(0));
            for (size_t i = 0; i < vec.size(); ++i) dst[i] = dst[i] + K(vec[i]) * scale;
        }
    }

    template <typename K>
    BasicElement<K> bracket_impl(const BasicElement<K>& x, const BasicElement<K>& y) const {
        BasicElement<K> out;
        // [h, z] and [z, h]: grading action.
        for (const auto& [coord, vec] : y.parts) {
            K lambda = x.h[0] * K(Rational(pairing_h(a_, 0, coord))) +
                       x.h[1] * K(Rational(pairing_h(a_, 1, coord)));
            if (lambda == K(0)) continue;
            auto& dst = out.parts[coord];
            if (dst.empty()) dst.assign(vec.size(), K(0));
            for (size_t i = 0; i < vec.size(); ++i) dst[i] = dst[i] + lambda * vec[i];
        }
        for (const auto& [coord, vec] : x.parts) {
            K lambda = y.h[0] * K(Rational(pairing_h(a_, 0, coord))) +
                       y.h[1] * K(Rational(pairing_h(a_, 1, coord)));
            if (lambda == K(0)) continue;
            auto& dst = out.parts[coord];
            if (dst.empty()) dst.assign(vec.size(), K(0));
            for (size_t i = 0; i < vec.size(); ++i) dst[i] = dst[i] - lambda * vec[i];
        }
        // Root-space pairs.
        for (const auto& [ga, va] : x.parts) {
            for (const auto& [gb, vb] : y.parts) {
                bool a_pos = ga.height() > 0, b_pos = gb.height() > 0;
                if (a_pos == b_pos) {
                    RootCoord target = ga + gb;
                    if (certainly_zero(target)) continue;
                    Int ht = target.height() < 0 ? Int(-target.height()) : target.height();
                    if (ht > height_)
                        throw TruncationExceeded("bracket escapes the window",
                                                 static_cast<int>(ht));
                    const Component* tc = component(canonical(target));
                    if (!tc || tc->reps.empty()) continue;
                    RootCoord pa = canonical(ga), pb = canonical(gb);
                    for (size_t p = 0; p < va.size(); ++p) {
                        if (va[p] == K(0)) continue;
                        for (size_t q = 0; q < vb.size(); ++q) {
                            if (vb[q] == K(0)) continue;
                            const auto& coords = pp_bracket(pa, p, pb, q);
                            if (coords.empty()) continue;
                            K c = va[p] * vb[q];
                            auto& dst = out.parts[target];
                            if (dst.empty()) dst.assign(coords.size(), K(0));
                            for (size_t r = 0; r < coords.size(); ++r)
                                if (!coords[r].is_zero()) dst[r] = dst[r] + K(coords[r]) * c;
                        }
                    }
                } else {
                    for (size_t p = 0; p < va.size(); ++p) {
                        if (va[p] == K(0)) continue;
                        for (size_t q = 0; q < vb.size(); ++q) {
                            if (vb[q] == K(0)) continue;
                            K c = va[p] * vb[q];
                            if (a_pos)
                                lift_add(out, pm_bracket(ga, p, -gb, q), c);
                            else
                                lift_add(out, pm_bracket(gb, q, -ga, p), -c);
                        }
                    }
                }
            }
        }
        out.prune();
        return out;
    }

    /// (x^alpha_p | y^alpha_q) for positive alpha, by form invariance down
    /// the Lyndon factorization.
    const DenseMatrix<Rational>& gram(int ci) const {
        {
            std::scoped_lock lock(memo_mutex_);
            if (auto it = gram_memo_.find(ci); it != gram_memo_.end()) return it->second;
        }
        const Component& comp = comps_[static_cast<size_t>(ci)];
        size_t n = comp.reps.size();
        DenseMatrix<Rational> g(n, n);
        if (comp.alpha.height() == 1) {
            g.at(0, 0) = Rational(1);
        } else {
            for (size_t p = 0; p < n; ++p) {
                const Component::Peel& peel = comp.peels[p];
                const DenseMatrix<Rational>& gmu = gram(comp_index(peel.mu));
                for (size_t q = 0; q < n; ++q) {
                    Rational total(0);
                    for (size_t t = 0; t < peel.cv.size(); ++t) {
                        if (peel.cv[t].is_zero()) continue;
                        const detail::RatElem& z = pm_bracket(peel.nu, t, comp.alpha, q);
                        auto it = z.parts.find(-peel.mu);
                        if (it == z.parts.end()) continue;
                        for (size_t s = 0; s < peel.cu.size(); ++s) {
                            if (peel.cu[s].is_zero()) continue;
                            for (size_t r = 0; r < it->second.size(); ++r) {
                                const Rational& zr = it->second[r];
                                if (!zr.is_zero())
                                    total += peel.cu[s] * peel.cv[t] * zr * gmu.at(s, r);
                            }
                        }
                    }
                    g.at(p, q) = total;
                }
            }
        }
        std::scoped_lock lock(memo_mutex_);
        return gram_memo_.emplace(ci, std::move(g)).first->second;
    }
};

/// Spec-level constructor name.
inline GradedAlgebra build_algebra(CartanParam a, TruncationWindow window,
                                   BuildOptions opts = {}) {
    return GradedAlgebra(a, window, opts);
}

} // namespace hkm2
