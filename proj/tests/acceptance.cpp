// Acceptance suite: one pass/fail line per criterion, with measured runtime.

#include "hkm2/cache.hpp"
#include "hkm2/decompose.hpp"
#include "hkm2/verify.hpp"

#include "oracles.hpp"

#include <chrono>
#include <optional>
#include <functional>
#include <iostream>
#include <random>
#include <vector>

using namespace hkm2;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, long budget_ms,
               const std::function<std::string()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    try {
        detail = body();
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (budget_ms > 0 && ms > budget_ms) {
        ok = false;
        detail += " [exceeded " + std::to_string(budget_ms) + " ms budget]";
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << title
              << " (" << ms << " ms)";
    if (!detail.empty()) std::cout << " - " << detail;
    std::cout << "\n"
              << std::flush;
    if (!ok) ++failures;
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw VerificationFailed(msg);
}

} // namespace

int main() {
    // 1. E+ reference table: all 25 frozen values at 6 decimal digits.
    criterion(1, "E+ reference table reproduction (5x5, a = 3)", 1000, [] {
        static const char* by_sum[] = {"-5.000000", "-1.800000", "-1.250000",
                                       "-1.088889", "-1.033058", "-1.012500",
                                       "-1.004756", "-1.001814", "-1.000693"};
        auto t = e_plus_table(CartanParam(3), 5, 5, 6);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                require(t.rendered[size_t(i)][size_t(j)] == by_sum[i + j],
                        "table entry mismatch at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
        return std::string("25/25 entries match");
    });

    // 2. Principal coincidence for a = 3..10.
    criterion(2, "principal triple coincides with build_triple(0,0)", 1000, [] {
        for (int a = 3; a <= 10; ++a) {
            GradedAlgebra g(CartanParam(a), TruncationWindow{4});
            Sl2Triple t = principal_triple(g);  // exact coincidence asserted inside
            Rational expect =
                -(Rational(a) + Rational(2)) / (Rational(a) - Rational(2));
            require(t.e_plus == expect, "E+(0,0) != -(a+2)/(a-2)");
        }
        return std::string("a = 3..10, exact");
    });

    // 3. Exact sl2 verification for every (i, j) fitting a window <= 14.
    std::vector<Sl2Triple> triples3, triples4;
    std::optional<GradedAlgebra> g3_opt, g4_opt;
    criterion(3, "exact sl2 verification across the window", 300000, [&] {
        g3_opt.emplace(CartanParam(3), TruncationWindow{12});
        g4_opt.emplace(CartanParam(4), TruncationWindow{7});
        int built = 0, skipped = 0;
        std::pair<GradedAlgebra*, std::vector<Sl2Triple>*> lanes[] = {{&*g3_opt, &triples3},
                                                                      {&*g4_opt, &triples4}};
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; j <= 2; ++j) {
                TripleIndices idx(i, j);
                for (auto& [g, bag] : lanes) {
                    if (required_height(g->cartan(), idx) > g->max_height()) {
                        ++skipped;
                        continue;
                    }
                    Sl2Triple t = build_triple(*g, idx);
                    require(t.verified, "triple failed verification");
                    require(so12_dictionary_check(*g, t), "SO(1,2) dictionary failed");
                    bag->push_back(std::move(t));
                    ++built;
                }
            }
        require(static_cast<int>(triples3.size()) == 9,
                "all 9 pairs must fit the a=3 window");
        for (const RootCoord& r : {RootCoord{1, 0}, RootCoord{0, 1}, RootCoord{3, 1},
                                   RootCoord{1, 3}, RootCoord{8, 3}, RootCoord{3, 8}})
            require(g3_opt->dim(r) == 1, "real root multiplicity != 1 in the a=3 window");
        return std::to_string(built) + " triples verified exactly, " +
               std::to_string(skipped) + " beyond the a=4 window";
    });

    // 4. Impossibility suite.
    criterion(4, "length-1 and length-3 impossibility", 10000, [&] {
        for (int a : {3, 4, 5}) {
            CartanParam cp(a);
            for (int idx = 0; idx <= 6; ++idx)
                for (RootKind k : {RootKind::Alpha, RootKind::Beta}) {
                    auto rej = reject_length_1(cp, k, idx);
                    require(rej.required_c_sq == Rational(-1), "contradiction scalar wrong");
                    require(rej.eigenvalue == Rational(2), "eigenvalue wrong");
                }
            require(max_collinear_real_roots(cp, 12) <= 2, "three collinear roots");
        }
        // Realized cross-checks inside the available windows.
        int realized = 0;
        for (auto* g : {&*g3_opt, &*g4_opt})
            for (int idx = 0; idx <= 6; ++idx)
                for (RootKind k : {RootKind::Alpha, RootKind::Beta}) {
                    if (real_root_coord(g->cartan(), k, idx).height() > g->max_height())
                        continue;
                    auto rej = reject_length_1(*g, k, idx);
                    require(rej.required_c_sq == Rational(-1), "realized scalar wrong");
                    ++realized;
                }
        return "indices <= 6 for a in {3,4,5}; " + std::to_string(realized) +
               " realized in-window; collinearity bound 2 over 48 points each";
    });

    // 5. Dominance and normalization.
    criterion(5, "dominance window and Weyl normalization", 5000, [] {
        for (int a : {3, 4, 5}) {
            CartanParam cp(a);
            for (int i = 0; i <= 12; ++i)
                for (int j = 0; j <= 12; ++j) {
                    auto d = weighted_dynkin(cp, TripleIndices(i, j));
                    bool dominant = d[0].sign() >= 0 && d[1].sign() >= 0;
                    require(dominant == (std::abs(i - j) <= 1), "dominance window broken");
                    auto n = normalize_to_dominant(TripleIndices(i, j));
                    int dd = std::abs(i - j);
                    require(n.steps == (dd <= 1 ? 0 : dd / 2), "step count wrong");
                    require(std::abs(n.final_indices.i - n.final_indices.j) <= 1,
                            "not normalized");
                    if (i != j) {
                        auto s = same_type_nondominance(cp, i, j);
                        require(s[0].sign() * s[1].sign() < 0,
                                "same-type weights not opposite");
                    }
                }
        }
        return std::string("i, j <= 12 for a in {3,4,5}");
    });

    // 6. Identity and structure suite.
    criterion(6, "polynomial identities and monotonicity", 10000, [] {
        std::mt19937_64 rng(424242);
        std::uniform_int_distribution<long> v(-60, 60);
        for (int t = 0; t < 10000; ++t)
            coef_identities(v(rng), Int(v(rng)), Int(v(rng)), Int(v(rng)), Int(v(rng)));
        for (int a : {3, 4, 5}) {
            CartanParam cp(a);
            for (int i = 0; i <= 12; ++i)
                for (int j = 0; j <= 12; ++j) {
                    TripleIndices idx(i, j);
                    auto q = quadruple_of(cp, idx);
                    auto c = coef_identities(a, q.k, q.l, q.m, q.n);
                    require(c.A_coef == Rational(-2) && c.C_coef == Rational(-2),
                            "A = C = -2 failed");
                    Rational B = compute_B(cp, idx);  // asserts B > 2
                    require(compute_B(cp, TripleIndices(i + 1, j)) > B &&
                                compute_B(cp, TripleIndices(i, j + 1)) > B,
                            "B not strictly monotone");
                    casimir_on_h(cp, idx);  // asserts P+S = -4, QR-PS = B^2-4
                }
        }
        return std::string("10^4 random quintuples; F-quadruples i, j <= 12, a in {3,4,5}");
    });

    // 7. Realization integrity at a = 3, max_height 10.
    criterion(7, "realization integrity", 600000, [] {
        CartanParam a(3);
        GradedAlgebra g(a, TruncationWindow{10});

        // Graded dimensions against the independent Peterson oracle.
        oracles::PetersonMult pm(3);
        for (int h = 1; h <= 10; ++h)
            for (int x = 0; x <= h; ++x)
                require(Int(g.dim(RootCoord{x, h - x})) == pm.mult(x, h - x),
                        "dimension disagrees with the Peterson oracle");
        for (const RootCoord& r : g.positive_roots_in_window())
            if (is_real_root(a, r)) require(g.dim(r) == 1, "real root multiplicity != 1");

        auto labels = basis_labels(g);
        std::vector<GradedElement> basis;
        for (const auto& b : labels) basis.push_back(realize_label(g, b));
        std::vector<Int> heights;
        for (const auto& b : labels)
            heights.push_back(b.cartan ? Int(0) : Int(b.coord.height()));

        std::mt19937_64 rng(20240901);
        std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
        auto fits = [&](const Int& h) {
            Int ah = h < 0 ? Int(-h) : h;
            return ah <= g.max_height();
        };
        long done = 0, attempts = 0;
        while (done < 10000 && attempts < 4000000) {
            ++attempts;
            size_t xi = pick(rng), yi = pick(rng), zi = pick(rng);
            const Int &h1 = heights[xi], &h2 = heights[yi], &h3 = heights[zi];
            if (!fits(h1 + h2) || !fits(h2 + h3) || !fits(h1 + h3) || !fits(h1 + h2 + h3))
                continue;
            GradedElement lhs = g.bracket(basis[xi], g.bracket(basis[yi], basis[zi]));
            GradedElement rhs = g.bracket(g.bracket(basis[xi], basis[yi]), basis[zi]) +
                                g.bracket(basis[yi], g.bracket(basis[xi], basis[zi]));
            require(lhs == rhs, "Jacobi identity failed");
            ++done;
        }
        require(done >= 10000, "failed to sample 10^4 admissible triples");

        // Compact involution: involutive and commutes with both reflections.
        int commuted = 0;
        for (const auto& x : basis) {
            require(g.compact_involution(g.compact_involution(x)) == x, "w0^2 != id");
            for (int i = 0; i < 2; ++i) {
                try {
                    GradedElement lhs = g.weyl(WeylWord{i}, g.compact_involution(x));
                    GradedElement rhs = g.compact_involution(g.weyl(WeylWord{i}, x));
                    require(lhs == rhs, "r_i w0 != w0 r_i");
                    ++commuted;
                } catch (const TruncationExceeded&) {
                }
            }
        }
        require(commuted > 40, "reflection margin too tight");
        return "dims == Peterson oracle through height 10; 10^4 Jacobi triples; " +
               std::to_string(commuted) + " commutation checks";
    });

    // 8. Unitarity condition: exact adjointness everywhere; principal Gram
    // blocks positive definite at heights <= 8.
    criterion(8, "unitarity condition and principal Gram positivity", 0, [&] {
        long pairs = 0;
        for (const auto* bag : {&triples3, &triples4}) {
            const GradedAlgebra& g = bag == &triples3 ? *g3_opt : *g4_opt;
            for (const Sl2Triple& t : *bag) {
                UnitarityReport rep = unitarity_check(g, t);
                require(rep.adjointness_ok, "adjointness failed");
                require(rep.j3_selfadjoint_ok, "ad J3 not self-adjoint");
                pairs += rep.pairs_checked;
            }
        }
        GradedAlgebra g8(CartanParam(3), TruncationWindow{8});
        Sl2Triple principal = build_triple(g8, TripleIndices(0, 0));
        UnitarityReport rep = unitarity_check(g8, principal, true);
        require(rep.adjointness_ok, "principal adjointness failed");
        for (const GramBlock& b : rep.gram_blocks) {
            require(b.inertia.neg == 0 && b.inertia.zero == 0,
                    "principal Gram block not positive definite");
            require(b.inertia.pos == static_cast<size_t>(b.complement_dim),
                    "Gram rank mismatch");
        }
        return std::to_string(pairs) + " adjointness pairs; " +
               std::to_string(rep.gram_blocks.size()) +
               " positive-definite Gram blocks at height 8";
    });

    std::cout << (failures == 0 ? "acceptance: all criteria passed\n"
                                : "acceptance: FAILURES\n");
    return failures == 0 ? 0 : 1;
}
