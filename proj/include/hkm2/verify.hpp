#pragma once

#include "hkm2/cache.hpp"
#include "hkm2/decompose.hpp"
#include "hkm2/root_lattice.hpp"

#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace hkm2 {

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// Full cross-module invariant suite at the given window; reproducible for a
/// fixed seed. One result per named check.
inline std::vector<CheckResult> run_verification(
    const CartanParam& a, TruncationWindow w, uint64_t seed,
    const std::optional<std::filesystem::path>& cache_dir = {}) {
    std::vector<CheckResult> results;
    auto check = [&](const std::string& name, const std::function<std::string()>& body) {
        CheckResult r{name, false, ""};
        try {
            r.detail = body();
            r.ok = true;
        } catch (const std::exception& e) {
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    };
    std::mt19937_64 rng(seed);

    check("scalar.field-axioms", [&] {
        std::uniform_int_distribution<long> v(-20, 20);
        for (int t = 0; t < 300; ++t) {
            QuadScalar x(Rational(v(rng)), Rational(v(rng)), Rational(2));
            QuadScalar y(Rational(v(rng)), Rational(v(rng)), Rational(2));
            QuadScalar z(Rational(v(rng)), Rational(v(rng)), Rational(2));
            if (!((x + y) * z == x * z + y * z))
                throw VerificationFailed("distributivity failed");
            if (!x.is_zero() && !(x / x == QuadScalar(Rational(1))))
                throw VerificationFailed("inverse failed");
        }
        return "300 samples";
    });

    check("roots.hyperbola-identity", [&] {
        for (int k = 0; k <= 24; ++k) {
            RootCoord c{f_seq(a, k + 1), f_seq(a, k)};
            if (root_norm(a, c) != 1) throw VerificationFailed("F-pair off the hyperbola");
        }
        return "k <= 24";
    });

    check("roots.enumeration-vs-box-scan", [&] {
        std::set<std::pair<long, long>> scan;
        for (long x = -60; x <= 60; ++x)
            for (long y = -60; y <= 60; ++y)
                if (x * x - a.a * x * y + y * y == 1) scan.insert({x, y});
        std::set<std::pair<long, long>> enumerated;
        for (const auto& d : enumerate_real_positive_roots(a, 12))
            for (int sign : {1, -1}) {
                Int x = sign * d.coord.x, y = sign * d.coord.y;
                if (x >= -60 && x <= 60 && y >= -60 && y <= 60)
                    enumerated.insert({static_cast<long>(x), static_cast<long>(y)});
            }
        if (scan != enumerated) throw VerificationFailed("box scan disagrees");
        return std::to_string(scan.size()) + " lattice points";
    });

    check("roots.weyl-preserves-form", [&] {
        std::uniform_int_distribution<int> coord(-30, 30), letter(0, 1), len(0, 6);
        for (int t = 0; t < 300; ++t) {
            std::vector<int> ls(static_cast<size_t>(len(rng)));
            for (auto& l : ls) l = letter(rng);
            RootCoord c{coord(rng), coord(rng)};
            if (root_norm(a, weyl_on_coord(a, WeylWord(ls), c)) != root_norm(a, c))
                throw VerificationFailed("form not preserved");
        }
        return "300 samples";
    });

    check("roots.max-collinear", [&] {
        int m = max_collinear_real_roots(a, 12);
        if (m > 2) throw VerificationFailed("three collinear roots found");
        return "max = " + std::to_string(m) + " over 48 points";
    });

    GradedAlgebra g = load_or_build(a, w, {}, cache_dir);

    check("realization.real-root-multiplicity", [&] {
        int found = 0;
        for (const RootCoord& r : g.positive_roots_in_window())
            if (is_real_root(a, r)) {
                if (g.dim(r) != 1) throw VerificationFailed("real root multiplicity != 1");
                ++found;
            }
        return std::to_string(found) + " real roots in window";
    });

    check("realization.dim-symmetry", [&] {
        for (const RootCoord& r : g.positive_roots_in_window()) {
            if (g.dim(RootCoord{r.y, r.x}) != g.dim(r))
                throw VerificationFailed("diagram symmetry broken");
            if (g.dim(-r) != g.dim(r)) throw VerificationFailed("cone symmetry broken");
        }
        return "total dim " + std::to_string(g.total_dim());
    });

    auto labels = basis_labels(g);
    std::vector<GradedElement> basis;
    basis.reserve(labels.size());
    for (const auto& b : labels) basis.push_back(realize_label(g, b));
    std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);

    check("realization.jacobi", [&] {
        int target = 2000, done = 0;
        for (int t = 0; t < 40 * target && done < target; ++t) {
            const auto& x = basis[pick(rng)];
            const auto& y = basis[pick(rng)];
            const auto& z = basis[pick(rng)];
            try {
                GradedElement lhs = g.bracket(x, g.bracket(y, z));
                GradedElement rhs =
                    g.bracket(g.bracket(x, y), z) + g.bracket(y, g.bracket(x, z));
                if (!(lhs == rhs)) throw VerificationFailed("Jacobi identity failed");
                ++done;
            } catch (const TruncationExceeded&) {
            }
        }
        if (done < target) throw VerificationFailed("window too tight to sample Jacobi");
        return std::to_string(done) + " triples";
    });

    check("realization.serre-vanishing", [&] {
        for (int i = 0; i < 2; ++i) {
            GradedElement s = g.chevalley_e(1 - i);
            for (int k = 0; k <= a.a; ++k) s = g.bracket(g.chevalley_e(i), s);
            if (!s.is_zero()) throw VerificationFailed("Serre element survives");
        }
        return "both generators";
    });

    check("realization.involution", [&] {
        for (const auto& x : basis)
            if (!(g.compact_involution(g.compact_involution(x)) == x))
                throw VerificationFailed("w0 is not an involution");
        int done = 0;
        for (int t = 0; t < 1200; ++t) {
            const auto& x = basis[pick(rng)];
            const auto& y = basis[pick(rng)];
            try {
                GradedElement lhs = g.chevalley_involution(g.bracket(x, y));
                GradedElement rhs =
                    g.bracket(g.chevalley_involution(x), g.chevalley_involution(y));
                if (!(lhs == rhs)) throw VerificationFailed("w not an automorphism");
                ++done;
            } catch (const TruncationExceeded&) {
            }
        }
        return std::to_string(done) + " bracket samples";
    });

    check("realization.reflection-commutes-with-w0", [&] {
        int done = 0;
        for (int i = 0; i < 2; ++i)
            for (const auto& x : basis) {
                try {
                    GradedElement lhs = g.weyl(WeylWord{i}, g.compact_involution(x));
                    GradedElement rhs = g.compact_involution(g.weyl(WeylWord{i}, x));
                    if (!(lhs == rhs)) throw VerificationFailed("r_i w0 != w0 r_i");
                    ++done;
                } catch (const TruncationExceeded&) {
                }
            }
        if (done == 0) throw VerificationFailed("no basis vector fit the margin");
        return std::to_string(done) + " basis vectors";
    });

    check("realization.form-invariance", [&] {
        int done = 0;
        for (int t = 0; t < 2000; ++t) {
            const auto& x = basis[pick(rng)];
            const auto& y = basis[pick(rng)];
            const auto& z = basis[pick(rng)];
            try {
                QuadScalar lhs = g.standard_form(g.bracket(x, y), z);
                QuadScalar rhs = g.standard_form(x, g.bracket(y, z));
                if (!(lhs == rhs)) throw VerificationFailed("invariance failed");
                ++done;
            } catch (const TruncationExceeded&) {
            }
        }
        return std::to_string(done) + " triples";
    });

    check("realization.hermitian-adjointness", [&] {
        int done = 0;
        for (int t = 0; t < 2000; ++t) {
            const auto& u = basis[pick(rng)];
            const auto& x = basis[pick(rng)];
            const auto& y = basis[pick(rng)];
            try {
                QuadScalar lhs = g.hermitian_form(g.bracket(u, x), y);
                QuadScalar rhs =
                    -g.hermitian_form(x, g.bracket(g.compact_involution(u), y));
                if (!(lhs == rhs)) throw VerificationFailed("adjoint identity failed");
                ++done;
            } catch (const TruncationExceeded&) {
            }
        }
        return std::to_string(done) + " triples";
    });

    check("sl2.coefficient-identities", [&] {
        std::uniform_int_distribution<long> v(-50, 50);
        for (int t = 0; t < 3000; ++t)
            coef_identities(v(rng), Int(v(rng)), Int(v(rng)), Int(v(rng)), Int(v(rng)));
        for (int i = 0; i <= 12; ++i)
            for (int j = 0; j <= 12; ++j) {
                auto q = quadruple_of(a, TripleIndices(i, j));
                auto c = coef_identities(a.a, q.k, q.l, q.m, q.n);
                if (c.A_coef != Rational(-2) || c.C_coef != Rational(-2))
                    throw VerificationFailed("A = C = -2 failed on an F-quadruple");
            }
        return "3000 random + 169 F-quadruples";
    });

    check("sl2.B-monotone", [&] {
        for (int i = 0; i <= 12; ++i)
            for (int j = 0; j <= 12; ++j) {
                Rational b = compute_B(a, TripleIndices(i, j));
                if (!(compute_B(a, TripleIndices(i + 1, j)) > b) ||
                    !(compute_B(a, TripleIndices(i, j + 1)) > b))
                    throw VerificationFailed("B not strictly increasing");
            }
        return "i, j <= 12";
    });

    check("sl2.dominance-window", [&] {
        for (int i = 0; i <= 12; ++i)
            for (int j = 0; j <= 12; ++j) {
                auto d = weighted_dynkin(a, TripleIndices(i, j));
                bool dominant = d[0].sign() >= 0 && d[1].sign() >= 0;
                if (dominant != (std::abs(i - j) <= 1))
                    throw VerificationFailed("dominance window broken");
                if (i != j) {
                    auto s = same_type_nondominance(a, i, j);
                    if (s[0].sign() * s[1].sign() >= 0)
                        throw VerificationFailed("same-type weights not opposite");
                }
            }
        return "i, j <= 12";
    });

    check("sl2.normalization", [&] {
        for (int i = 0; i <= 12; ++i)
            for (int j = 0; j <= 12; ++j) {
                auto n = normalize_to_dominant(TripleIndices(i, j));
                int d = std::abs(i - j);
                if (n.steps != (d <= 1 ? 0 : d / 2))
                    throw VerificationFailed("wrong step count");
                if (std::abs(n.final_indices.i - n.final_indices.j) > 1)
                    throw VerificationFailed("not normalized");
            }
        return "i, j <= 12";
    });

    std::vector<Sl2Triple> triples;
    check("sl2.triples-verify", [&] {
        int built = 0;
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; j <= 3; ++j) {
                TripleIndices idx(i, j);
                if (required_height(a, idx) > g.max_height()) continue;
                Sl2Triple t = build_triple(g, idx);
                if (!t.verified) throw VerificationFailed("triple not verified");
                if (!so12_dictionary_check(g, t))
                    throw VerificationFailed("SO(1,2) dictionary failed");
                triples.push_back(std::move(t));
                ++built;
            }
        if (built == 0) throw VerificationFailed("window admits no triple");
        return std::to_string(built) + " triples in window";
    });

    check("sl2.principal-coincidence", [&] {
        principal_triple(g);  // throws on any mismatch with build_triple(0,0)
        return "exact";
    });

    check("sl2.length-1-rejected", [&] {
        for (int idx = 0; idx <= 6; ++idx)
            for (RootKind k : {RootKind::Alpha, RootKind::Beta}) {
                auto rej = reject_length_1(a, k, idx);
                if (rej.required_c_sq != Rational(-1))
                    throw VerificationFailed("contradiction scalar wrong");
            }
        int realized = 0;
        for (int idx = 0; idx <= 6; ++idx)
            for (RootKind k : {RootKind::Alpha, RootKind::Beta}) {
                RootCoord c = real_root_coord(a, k, idx);
                if (c.height() > g.max_height()) continue;
                auto rej = reject_length_1(g, k, idx);
                if (rej.required_c_sq != Rational(-1))
                    throw VerificationFailed("realized contradiction scalar wrong");
                ++realized;
            }
        return "indices <= 6 closed form, " + std::to_string(realized) + " realized";
    });

    check("sl2.length-3-rejected", [&] {
        auto roots = enumerate_real_positive_roots(a, 6);
        for (size_t i = 0; i < roots.size(); ++i)
            for (size_t j = i + 1; j < roots.size(); ++j)
                for (size_t k = j + 1; k < roots.size(); ++k)
                    reject_length_3(a, {roots[i], roots[j], roots[k]});
        return "all triples among the first 12 roots";
    });

    check("casimir.qrps-and-eigenvalues", [&] {
        for (int i = 0; i <= 12; ++i)
            for (int j = 0; j <= 12; ++j) casimir_on_h(a, TripleIndices(i, j));
        std::uniform_int_distribution<long> v(-40, 40);
        for (int t = 0; t < 3000; ++t) {
            long av = v(rng);
            Int k(v(rng)), l(v(rng)), m(v(rng)), n(v(rng));
            auto [P, Q, R, S] = casimir_pqrs(av, k, l, m, n);
            Int kn_lm = k * n - l * m;
            if (Q * R - P * S != (Int(av) * av - 4) * kn_lm * kn_lm)
                throw VerificationFailed("QR - PS identity failed");
        }
        return "169 F-pairs + 3000 random";
    });

    check("casimir.realized-matches-closed-form", [&] {
        int fixed_x = 0;
        for (const Sl2Triple& t : triples) {
            auto m = casimir_matrix(casimir_on_h(a, t.indices));
            for (int col = 0; col < 2; ++col) {
                GradedElement img = casimir_action_realized(g, t, g.cartan_h(col));
                if (!img.parts.empty() ||
                    !(img.h[0] == QuadScalar(m.at(0, static_cast<size_t>(col)))) ||
                    !(img.h[1] == QuadScalar(m.at(1, static_cast<size_t>(col)))))
                    throw VerificationFailed("realized Casimir disagrees on h");
            }
            // c_L(X) = X needs [X, X] whose component products reach twice
            // the root height before cancelling.
            if (2 * required_height(a, t.indices) <= g.max_height()) {
                if (!(casimir_action_realized(g, t, *t.X) == *t.X))
                    throw VerificationFailed("Casimir does not fix X");
                ++fixed_x;
            }
        }
        return std::to_string(triples.size()) + " triples on h, " +
               std::to_string(fixed_x) + " with the c_L(X) = X margin";
    });

    check("casimir.range", [&] {
        auto rep = e_plus_range_check(a, 10);
        if (!rep.ok()) throw VerificationFailed("E+ range/monotonicity failed");
        return "bound 10, min " + rep.min_e_plus.str();
    });

    check("decompose.eigenspaces", [&] {
        for (const Sl2Triple& t : triples) {
            if (std::abs(t.indices.i - t.indices.j) > 1) continue;
            h_eigendecompose(g, t);  // checks the dimension sum internally
        }
        return "dominant triples in window";
    });

    check("decompose.adjointness", [&] {
        for (const Sl2Triple& t : triples) {
            UnitarityReport rep = unitarity_check(g, t);
            if (!rep.adjointness_ok || !rep.j3_selfadjoint_ok)
                throw VerificationFailed("unitary condition (i) failed");
        }
        return std::to_string(triples.size()) + " triples, all window pairs";
    });

    return results;
}

} // namespace hkm2
