#pragma once

#include "hkm2/errors.hpp"
#include "hkm2/graded_algebra.hpp"
#include "hkm2/root_lattice.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace hkm2 {

/// Index pair of a mixed-type nilpositive element: the alpha-type root
/// (F_{i+1}, F_i) and the beta-type root (F_j, F_{j+1}).
struct TripleIndices {
    int i, j;
    TripleIndices(int i_, int j_) : i(i_), j(j_) {
        if (i_ < 0 || j_ < 0) throw std::invalid_argument("triple indices must be >= 0");
    }
};

/// The quadruple k = F_{i+1}, l = F_i, m = F_j, n = F_{j+1}.
struct RootQuadruple {
    Int k, l, m, n;
};

inline RootQuadruple quadruple_of(const CartanParam& a, const TripleIndices& idx) {
    return {f_seq(a, idx.i + 1), f_seq(a, idx.i), f_seq(a, idx.j), f_seq(a, idx.j + 1)};
}

/// B = a*l*m - 2*k*m + a*k*n - 2*l*n; always > 2 on F-quadruples.
inline Rational compute_B(const CartanParam& a, const TripleIndices& idx) {
    auto [k, l, m, n] = quadruple_of(a, idx);
    Rational B(Int(a.a * l * m - 2 * k * m + a.a * k * n - 2 * l * n));
    if (!(B > Rational(2)))
        throw VerificationFailed("B <= 2 on an F-quadruple; this contradicts the theory");
    return B;
}

/// The coefficients of the 2x2 system fixing |c0|^2, |c1|^2; named with a
/// _coef suffix to avoid clashing with the Cartan matrix symbol.
struct CoefTriple {
    Rational A_coef, B_coef, C_coef;
};

/// Computes (A, B, C) for an arbitrary integer quintuple and checks the
/// polynomial identity B^2 - AC = (a^2 - 4)(kn - lm)^2, which holds for all
/// inputs, not only F-quadruples.
inline CoefTriple coef_identities(long a, const Int& k, const Int& l, const Int& m,
                                  const Int& n) {
    Int A = 2 * a * k * l - 2 * k * k - 2 * l * l;
    Int B = a * l * m - 2 * k * m + a * k * n - 2 * l * n;
    Int C = 2 * a * m * n - 2 * m * m - 2 * n * n;
    Int lhs = B * B - A * C;
    Int kn_lm = k * n - l * m;
    Int rhs = (Int(a) * a - 4) * kn_lm * kn_lm;
    if (lhs != rhs) throw VerificationFailed("B^2 - AC identity failed");
    return {Rational(A), Rational(B), Rational(C)};
}

/// Weighted Dynkin diagram (alpha0(H), alpha1(H)) = (2(n-l), 2(k-m))/(kn-lm).
inline std::array<Rational, 2> weighted_dynkin(const CartanParam& a, const TripleIndices& idx) {
    auto [k, l, m, n] = quadruple_of(a, idx);
    Rational det(Int(k * n - l * m));
    return {Rational(Int(2 * (n - l))) / det, Rational(Int(2 * (k - m))) / det};
}

/// Would-be Dynkin weights when both roots are of the same type
/// (k = F_{i+1}, l = F_i, m = F_{j+1}, n = F_j). For i != j the two weights
/// always carry strictly opposite signs, so H is never dominant.
inline std::array<Rational, 2> same_type_nondominance(const CartanParam& a, int i, int j) {
    if (i == j) throw SameRootPair("same-type pair with i = j has kn - lm = 0");
    if (i < 0 || j < 0) throw std::invalid_argument("indices must be >= 0");
    Int k = f_seq(a, i + 1), l = f_seq(a, i), m = f_seq(a, j + 1), n = f_seq(a, j);
    Int det = k * n - l * m;
    if (det == 0) throw SameRootPair("degenerate same-type pair");
    std::array<Rational, 2> w{Rational(Int(2 * (n - l))) / Rational(det),
                              Rational(Int(2 * (k - m))) / Rational(det)};
    if (!(w[0].sign() * w[1].sign() < 0))
        throw VerificationFailed("same-type weights did not have opposite signs");
    return w;
}

/// One reflection applied to the index pair: r0 sends (i, j) to (j+1, i-1),
/// r1 sends (i, j) to (j-1, i+1); the type roles of the two roots swap.
inline TripleIndices reflect_indices(const TripleIndices& idx, int letter) {
    if (letter == 0) return TripleIndices(idx.j + 1, idx.i - 1);
    return TripleIndices(idx.j - 1, idx.i + 1);
}

struct NormalizeResult {
    WeylWord word;  // composition order; rightmost letter was applied first
    TripleIndices final_indices;
    int steps;
};

/// Repeated reflections until |i - j| <= 1 (the dominant range); |i - j|
/// drops by exactly 2 per step, so this takes ceil((|i-j| - 1)/2) steps.
inline NormalizeResult normalize_to_dominant(const TripleIndices& idx) {
    TripleIndices cur = idx;
    std::vector<int> applied;
    while (std::abs(cur.i - cur.j) >= 2) {
        int letter = cur.i - cur.j >= 2 ? 0 : 1;
        cur = reflect_indices(cur, letter);
        applied.push_back(letter);
    }
    std::vector<int> letters(applied.rbegin(), applied.rend());
    int steps = static_cast<int>(applied.size());
    int d = std::abs(idx.i - idx.j);
    if (steps != (d <= 1 ? 0 : (d - 1 + 1) / 2))
        throw VerificationFailed("normalization step count mismatch");
    return {WeylWord(std::move(letters)), cur, steps};
}

/// Weyl word and generator whose image is the alpha-type (resp. beta-type)
/// root vector of the given index: alternating words starting with r0
/// (resp. r1), applied to e_{i mod 2} (resp. e_{1 - (j mod 2)}).
inline std::pair<WeylWord, int> root_vector_recipe(RootKind kind, int index) {
    if (kind == RootKind::Alpha)
        return {WeylWord::alternating(0, static_cast<size_t>(index)), index % 2};
    return {WeylWord::alternating(1, static_cast<size_t>(index)), 1 - index % 2};
}

inline GradedElement realize_root_vector(const GradedAlgebra& g, RootKind kind, int index) {
    auto [word, gen] = root_vector_recipe(kind, index);
    GradedElement v = g.weyl(word, g.chevalley_e(gen));
    RootCoord expect = real_root_coord(g.cartan(), kind, index);
    if (v.parts.size() != 1 || v.parts.begin()->first != expect || v.is_zero())
        throw VerificationFailed("root vector landed in the wrong component");
    return v;
}

struct Sl2Triple {
    TripleIndices indices;
    int a;
    RootQuadruple quad;
    Rational B;
    Rational c_sq;                    // |c0|^2 = |c1|^2 = 2/(B - 2)
    Rational radicand;                // 2(B - 2); c0 = sqrt(radicand)/(B - 2)
    std::array<Rational, 2> h_coords; // H = r h0 + s h1
    std::array<Rational, 2> dynkin;
    Rational e_plus;                  // -(B + 2)/(B - 2)

    std::optional<GradedElement> X, Y, H;
    bool verified = false;

    bool dominant() const { return dynkin[0].sign() >= 0 && dynkin[1].sign() >= 0; }
};

/// Closed-form data of the (i, j) triple; no realization required.
inline Sl2Triple closed_triple(const CartanParam& a, const TripleIndices& idx) {
    RootQuadruple q = quadruple_of(a, idx);
    Rational B = compute_B(a, idx);
    Rational c_sq = Rational(2) / (B - Rational(2));
    Sl2Triple t{idx,
                a.a,
                q,
                B,
                c_sq,
                Rational(2) * (B - Rational(2)),
                {-Rational(Int(q.k + q.m)) * c_sq, -Rational(Int(q.l + q.n)) * c_sq},
                weighted_dynkin(a, idx),
                -(B + Rational(2)) / (B - Rational(2)),
                std::nullopt,
                std::nullopt,
                std::nullopt,
                false};
    return t;
}

/// Minimum window height needed to realize the (i, j) triple.
inline int required_height(const CartanParam& a, const TripleIndices& idx) {
    Int ha = f_seq(a, idx.i + 1) + f_seq(a, idx.i);
    Int hb = f_seq(a, idx.j) + f_seq(a, idx.j + 1);
    return static_cast<int>(ha > hb ? ha : hb);
}

/// Realize and exactly verify the mixed-type triple: X = c0 E0 + c1 E1 with
/// c0 = c1 = sqrt(2/(B-2)), Y = w0(X), H = [X, Y]; checks the three sl2
/// relations, H in h against the closed form, and the cross-bracket
/// vanishing [w(e_p), w'(f_q)] = 0 = [w'(e_q), w(f_p)].
inline Sl2Triple build_triple(const GradedAlgebra& g, const TripleIndices& idx) {
    const CartanParam& a = g.cartan();
    Sl2Triple t = closed_triple(a, idx);
    int need = required_height(a, idx);
    if (need > g.max_height())
        throw TruncationExceeded("window too small to realize the triple", need);

    GradedElement E0 = realize_root_vector(g, RootKind::Alpha, idx.i);
    GradedElement E1 = realize_root_vector(g, RootKind::Beta, idx.j);

    QuadScalar c0(Rational(0), (t.B - Rational(2)).reciprocal(), t.radicand);
    if (!((c0 * c0).as_rational() == t.c_sq))
        throw VerificationFailed("coefficient normalization |c0|^2 != 2/(B-2)");

    GradedElement X = c0 * (E0 + E1);
    GradedElement Y = g.compact_involution(X);
    GradedElement H = g.bracket(X, Y);

    // Cross brackets between the two legs must vanish for H to lie in h.
    GradedElement F0 = -g.compact_involution(E0);
    GradedElement F1 = -g.compact_involution(E1);
    if (!g.bracket(E0, F1).is_zero() || !g.bracket(E1, F0).is_zero())
        throw VerificationFailed("cross brackets [w(e_p), w'(f_q)] did not vanish");

    if (!H.parts.empty()) throw VerificationFailed("H leaked outside the Cartan subalgebra");
    if (!(H.h[0] == QuadScalar(t.h_coords[0])) || !(H.h[1] == QuadScalar(t.h_coords[1])))
        throw VerificationFailed("realized H disagrees with the closed form");

    QuadScalar two(Rational(2));
    if (!(g.bracket(H, X) == two * X)) throw VerificationFailed("[H, X] != 2X");
    if (!(g.bracket(H, Y) == -two * Y)) throw VerificationFailed("[H, Y] != -2Y");
    if (!(g.bracket(X, Y) == H)) throw VerificationFailed("[X, Y] != H");
    if (!(Y == g.compact_involution(X))) throw VerificationFailed("Y != w0(X)");

    t.X = std::move(X);
    t.Y = std::move(Y);
    t.H = std::move(H);
    t.verified = true;
    return t;
}

/// SO(1,2) dictionary: J3 = H/2, J+ = X/sqrt(2), J- = -Y/sqrt(2), built in
/// the coefficient field Q(sqrt(B-2)); checks [J3, J±] = ±J± and
/// [J+, J-] = -J3 exactly.
inline bool so12_dictionary_check(const GradedAlgebra& g, const Sl2Triple& t) {
    if (!t.verified) throw std::invalid_argument("triple must be realized");
    GradedElement E0 = realize_root_vector(g, RootKind::Alpha, t.indices.i);
    GradedElement E1 = realize_root_vector(g, RootKind::Beta, t.indices.j);
    // c0/sqrt(2) = sqrt(1/(B-2)) = sqrt(B-2)/(B-2).
    Rational rad = t.B - Rational(2);
    QuadScalar c(Rational(0), rad.reciprocal(), rad);
    GradedElement Jp = c * (E0 + E1);
    GradedElement Jm = -g.compact_involution(Jp);
    GradedElement J3;
    J3.h[0] = QuadScalar(t.h_coords[0] / Rational(2));
    J3.h[1] = QuadScalar(t.h_coords[1] / Rational(2));
    return g.bracket(J3, Jp) == Jp && g.bracket(J3, Jm) == -Jm &&
           g.bracket(Jp, Jm) == -J3;
}

/// Principal construction: p_i = -sum_j (A^-1)_ij = 1/(a-2), n_i = sqrt(p_i),
/// J3 = -sum p_j h_j, J± = sum n_j e_j (resp. f_j). Verifies the SO(1,2)
/// relations and that the converted sl2-triple coincides exactly with
/// build_triple(0, 0).
inline Sl2Triple principal_triple(const GradedAlgebra& g) {
    const CartanParam& a = g.cartan();
    // Exact 2x2 inversion of [[2, -a], [-a, 2]]: row sums of the inverse are
    // (2 + a)/(4 - a^2) = -1/(a - 2).
    Rational det = Rational(4) - Rational(Int(a.a) * a.a);
    Rational row_sum = (Rational(2) + Rational(a.a)) / det;
    Rational p = -row_sum;
    if (!(p == (Rational(a.a) - Rational(2)).reciprocal()))
        throw VerificationFailed("p_i != 1/(a-2)");

    // n_i = sqrt(p) in Q(sqrt(a-2)).
    Rational rad = Rational(a.a) - Rational(2);
    QuadScalar n(Rational(0), rad.reciprocal(), rad);
    if (!((n * n).as_rational() == p)) throw VerificationFailed("n_i^2 != p_i");

    GradedElement J3;
    J3.h[0] = QuadScalar(-p);
    J3.h[1] = QuadScalar(-p);
    GradedElement Jp = n * (g.chevalley_e(0) + g.chevalley_e(1));
    GradedElement Jm = n * (g.chevalley_f(0) + g.chevalley_f(1));
    if (!(g.bracket(J3, Jp) == Jp) || !(g.bracket(J3, Jm) == -Jm) ||
        !(g.bracket(Jp, Jm) == -J3))
        throw VerificationFailed("principal SO(1,2) relations failed");

    // Dictionary conversion X = sqrt(2) J+ done at the formula level:
    // coefficients sqrt(2 p) = sqrt(2/(a-2)) in Q(sqrt(2(a-2))).
    Sl2Triple t = build_triple(g, TripleIndices(0, 0));
    QuadScalar c0(Rational(0), (t.B - Rational(2)).reciprocal(), t.radicand);
    GradedElement X = c0 * (g.chevalley_e(0) + g.chevalley_e(1));
    if (!((c0 * c0).as_rational() == Rational(2) * p))
        throw VerificationFailed("sqrt(2 p_i) mismatch with 2/(B-2) at (0,0)");
    if (!(X == *t.X)) throw VerificationFailed("principal X != build_triple(0,0).X");
    GradedElement H;
    H.h[0] = QuadScalar(Rational(-2) * p);
    H.h[1] = QuadScalar(Rational(-2) * p);
    if (!(H == *t.H)) throw VerificationFailed("principal H != build_triple(0,0).H");
    return t;
}

/// For X = c w(e_p) of length 1, the relation [H, X] = 2X forces
/// |c|^2 = -1: no admissible coefficient exists. The report carries the
/// realized eigenvalue alpha(w(h_p)) = 2 behind that contradiction.
struct Length1Rejection {
    RootKind kind;
    int index;
    RootCoord coord;
    Rational eigenvalue;      // [w(h_p), w(e_p)] = eigenvalue * w(e_p), exactly 2
    Rational required_c_sq;   // -1
};

/// Closed-form rejection, valid for any index: w(h_p) transforms under the
/// same reflection formulas as root coordinates (A is symmetric), and the
/// pairing alpha(w(h_p)) = 2 survives the Weyl action exactly.
inline Length1Rejection reject_length_1(const CartanParam& a, RootKind kind, int index) {
    auto [word, gen] = root_vector_recipe(kind, index);
    RootCoord start = gen == 0 ? RootCoord{1, 0} : RootCoord{0, 1};
    RootCoord alpha = weyl_on_coord(a, word, start);
    if (alpha != real_root_coord(a, kind, index))
        throw VerificationFailed("word recipe landed on the wrong root");
    // Coordinates of w(h_p) in the (h0, h1) basis: the symmetric Cartan
    // matrix makes the coroot action follow the same reflection formulas,
    // and h_p starts at the same coordinate pair as alpha_p.
    RootCoord wh = alpha;
    Int eig = wh.x * pairing_h(a, 0, alpha) + wh.y * pairing_h(a, 1, alpha);
    if (eig != 2) throw VerificationFailed("alpha(w(h_p)) != 2");
    return {kind, index, alpha, Rational(2), Rational(-1)};
}

/// Realized rejection inside the window.
inline Length1Rejection reject_length_1(const GradedAlgebra& g, RootKind kind, int index) {
    GradedElement E = realize_root_vector(g, kind, index);
    GradedElement F = -g.compact_involution(E);  // w(f_p)
    GradedElement Hw = g.bracket(E, F);          // w(h_p)
    if (!Hw.parts.empty()) throw VerificationFailed("w(h_p) leaked outside h");
    GradedElement HE = g.bracket(Hw, E);
    if (!(HE == QuadScalar(Rational(2)) * E))
        throw VerificationFailed("[w(h_p), w(e_p)] != 2 w(e_p)");
    // H = [cE, w0(cE)] = -|c|^2 w(h_p), so [H, X] = 2X reads -2|c|^2 = 2.
    return {kind, index, real_root_coord(g.cartan(), kind, index), Rational(2), Rational(-1)};
}

/// Three or more distinct real roots can never satisfy the joint affine
/// condition p*alpha0(H) + q*alpha1(H) = 2: that would put them on a common
/// line, and a line meets the hyperbola of real roots at most twice.
struct Length3Rejection {
    std::array<RealRootDesc, 3> witness;
    Int cross;  // nonzero exact cross product of the witness triple
};

inline Length3Rejection reject_length_3(const CartanParam& a,
                                        const std::vector<RealRootDesc>& roots) {
    if (roots.size() < 3) throw std::invalid_argument("need at least 3 roots");
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j)
            if (roots[i].coord == roots[j].coord)
                throw std::invalid_argument("roots must be distinct");
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j)
            for (size_t k = j + 1; k < roots.size(); ++k) {
                RootCoord u = roots[j].coord - roots[i].coord;
                RootCoord v = roots[k].coord - roots[i].coord;
                Int cross = u.x * v.y - u.y * v.x;
                if (cross != 0) return {{roots[i], roots[j], roots[k]}, cross};
            }
    (void)a;
    throw VerificationFailed("all triples collinear; contradicts the hyperbola bound");
}

} // namespace hkm2
