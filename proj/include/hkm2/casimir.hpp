#pragma once

#include "hkm2/linalg.hpp"
#include "hkm2/sl2.hpp"

#include <string>
#include <vector>

namespace hkm2 {

/// Closed-form data of the Casimir action on h for the (i, j) triple:
/// the matrix entries P, Q, R, S and the eigenvalues of the scaled matrix
/// (1/2)|c0|^2 [[P, Q], [R, S]], which are exactly {1, E+}.
struct CasimirReport {
    TripleIndices idx;
    int a;
    Rational P, Q, R, S;
    Rational B;
    Rational c_sq;
    Rational e_plus;  // -(B + 2)/(B - 2)
    Rational e_sl2;   // 1; the sl2 subalgebra itself
};

/// P, Q, R, S for an arbitrary integer quintuple.
inline std::array<Int, 4> casimir_pqrs(long a, const Int& k, const Int& l, const Int& m,
                                       const Int& n) {
    return {Int((a * l - 2 * k) * k + (a * n - 2 * m) * m),
            Int((a * k - 2 * l) * k + (a * m - 2 * n) * m),
            Int((a * l - 2 * k) * l + (a * n - 2 * m) * n),
            Int((a * k - 2 * l) * l + (a * m - 2 * n) * n)};
}

inline CasimirReport casimir_on_h(const CartanParam& a, const TripleIndices& idx) {
    auto [k, l, m, n] = quadruple_of(a, idx);
    auto pqrs = casimir_pqrs(a.a, k, l, m, n);
    Rational P(pqrs[0]), Q(pqrs[1]), R(pqrs[2]), S(pqrs[3]);
    Rational B = compute_B(a, idx);
    Rational c_sq = Rational(2) / (B - Rational(2));

    if (P + S != Rational(-4)) throw VerificationFailed("P + S != -4");
    if (Q * R - P * S != B * B - Rational(4))
        throw VerificationFailed("QR - PS != B^2 - 4");

    // Quadratic formula; the discriminant collapses to (2B)^2.
    Rational disc = (P + S) * (P + S) - Rational(4) * (P * S - Q * R);
    auto sq = rational_sqrt(disc);
    if (!sq) throw VerificationFailed("Casimir discriminant is not a perfect square");
    Rational scale = c_sq / Rational(2);
    Rational lo = ((P + S) - *sq) / Rational(2) * scale;
    Rational hi = ((P + S) + *sq) / Rational(2) * scale;
    if (hi != Rational(1)) throw VerificationFailed("Casimir eigenvalue 1 missing");
    Rational e_plus = -(B + Rational(2)) / (B - Rational(2));
    if (lo != e_plus) throw VerificationFailed("E+ disagrees with -(B+2)/(B-2)");
    return {idx, a.a, P, Q, R, S, B, c_sq, e_plus, Rational(1)};
}

/// The 2x2 matrix of the scaled Casimir action on h in the (h0, h1) basis;
/// column j holds the coordinates of c_L(h_j).
inline DenseMatrix<Rational> casimir_matrix(const CasimirReport& r) {
    DenseMatrix<Rational> m(2, 2);
    Rational scale = r.c_sq / Rational(2);
    m.at(0, 0) = r.P * scale;
    m.at(0, 1) = r.Q * scale;
    m.at(1, 0) = r.R * scale;
    m.at(1, 1) = r.S * scale;
    return m;
}

/// c_L = (1/8) ad H ad H + (1/4) ad X ad Y + (1/4) ad Y ad X applied to x.
inline GradedElement casimir_action_realized(const GradedAlgebra& g, const Sl2Triple& t,
                                             const GradedElement& x) {
    if (!t.verified) throw std::invalid_argument("triple must be realized");
    QuadScalar eighth(Rational(Int(1), Int(8)));
    QuadScalar quarter(Rational(Int(1), Int(4)));
    GradedElement hh = g.bracket(*t.H, g.bracket(*t.H, x));
    GradedElement xy = g.bracket(*t.X, g.bracket(*t.Y, x));
    GradedElement yx = g.bracket(*t.Y, g.bracket(*t.X, x));
    return eighth * hh + quarter * xy + quarter * yx;
}

/// The E+ table: alpha-type rows labeled (k, l) = (F_{i+1}, F_i),
/// beta-type columns labeled (m, n) = (F_j, F_{j+1}).
struct EPlusTable {
    std::vector<std::string> row_labels, col_labels;
    std::vector<std::vector<Rational>> exact;
    std::vector<std::vector<std::string>> rendered;
};

inline EPlusTable e_plus_table(const CartanParam& a, int rows, int cols, unsigned digits) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("table needs rows, cols >= 1");
    EPlusTable t;
    for (int i = 0; i < rows; ++i)
        t.row_labels.push_back("(" + f_seq(a, i + 1).str() + ", " + f_seq(a, i).str() + ")");
    for (int j = 0; j < cols; ++j)
        t.col_labels.push_back("(" + f_seq(a, j).str() + ", " + f_seq(a, j + 1).str() + ")");
    for (int i = 0; i < rows; ++i) {
        std::vector<Rational> exact_row;
        std::vector<std::string> rendered_row;
        for (int j = 0; j < cols; ++j) {
            Rational e = closed_triple(a, TripleIndices(i, j)).e_plus;
            rendered_row.push_back(e.to_decimal(digits));
            exact_row.push_back(std::move(e));
        }
        t.exact.push_back(std::move(exact_row));
        t.rendered.push_back(std::move(rendered_row));
    }
    return t;
}

/// Monotonicity and range of E+ over 0 <= i, j <= bound:
/// strictly increasing in each index, -(a+2)/(a-2) <= E+ < -1, and the
/// corner value witnesses the limit trend E+ -> -1.
struct EPlusRangeReport {
    bool monotone_in_i = true;
    bool monotone_in_j = true;
    bool bounds_hold = true;
    bool corner_near_limit = true;
    Rational min_e_plus, max_e_plus;
    bool ok() const { return monotone_in_i && monotone_in_j && bounds_hold && corner_near_limit; }
};

inline EPlusRangeReport e_plus_range_check(const CartanParam& a, int bound,
                                           Rational eps = Rational(Int(1), Int(1000000))) {
    if (bound < 2) throw std::invalid_argument("bound must be >= 2");
    EPlusRangeReport rep;
    std::vector<std::vector<Rational>> e(static_cast<size_t>(bound) + 1);
    for (int i = 0; i <= bound; ++i)
        for (int j = 0; j <= bound; ++j)
            e[static_cast<size_t>(i)].push_back(closed_triple(a, TripleIndices(i, j)).e_plus);
    Rational lower = -(Rational(a.a) + Rational(2)) / (Rational(a.a) - Rational(2));
    rep.min_e_plus = rep.max_e_plus = e[0][0];
    for (int i = 0; i <= bound; ++i)
        for (int j = 0; j <= bound; ++j) {
            const Rational& v = e[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (v < rep.min_e_plus) rep.min_e_plus = v;
            if (v > rep.max_e_plus) rep.max_e_plus = v;
            if (!(lower <= v && v < Rational(-1))) rep.bounds_hold = false;
            if (i < bound && !(e[static_cast<size_t>(i) + 1][static_cast<size_t>(j)] > v))
                rep.monotone_in_i = false;
            if (j < bound && !(e[static_cast<size_t>(i)][static_cast<size_t>(j) + 1] > v))
                rep.monotone_in_j = false;
        }
    rep.corner_near_limit =
        e[static_cast<size_t>(bound)][static_cast<size_t>(bound)] > Rational(-1) - eps;
    return rep;
}

} // namespace hkm2
