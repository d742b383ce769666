#include "hkm2/decompose.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace hkm2;

namespace {
Rational rat(long n, long d = 1) { return Rational(Int(n), Int(d)); }
} // namespace

TEST_CASE("H-eigenspace decomposition for the principal triple") {
    GradedAlgebra g(CartanParam(3), TruncationWindow{6});
    Sl2Triple t = build_triple(g, TripleIndices(0, 0));
    HEigenDecomposition dec = h_eigendecompose(g, t);
    CHECK(dec.total_dim == g.total_dim());

    // Weighted Dynkin (2,2): g_(1,0) and g_(0,1) both sit at eigenvalue 2.
    for (const EigenSpace& s : dec.spaces) {
        if (s.eigenvalue == rat(2)) {
            CHECK(s.members.size() == 2);
            for (const auto& b : s.members) CHECK(b.coord.height() == 1);
        }
        if (s.eigenvalue == rat(0)) {
            CHECK(s.contains_cartan);
            CHECK(s.members.empty());  // no root space annihilated by this H
        }
    }

    // Eigenvalue of g_alpha plus eigenvalue of g_{-alpha} is zero.
    for (const RootCoord& r : g.positive_roots_in_window()) {
        CHECK(h_eigenvalue_of(g, t, r) + h_eigenvalue_of(g, t, -r) == rat(0));
        CHECK(h_eigenvalue_of(g, t, r) == rat(2) * Rational(r.height()));
    }
}

TEST_CASE("ad X ladders eigenvalues up by 2") {
    GradedAlgebra g(CartanParam(3), TruncationWindow{6});
    Sl2Triple t = build_triple(g, TripleIndices(0, 0));
    for (const BasisLabel& b : basis_labels(g)) {
        GradedElement v = realize_label(g, b);
        Rational eig = b.cartan ? rat(0) : h_eigenvalue_of(g, t, b.coord);
        GradedElement img = bracket_within(g, *t.X, v);
        for (const auto& [coord, vec] : img.parts)
            CHECK(h_eigenvalue_of(g, t, coord) == eig + rat(2));
        GradedElement down = bracket_within(g, *t.Y, v);
        for (const auto& [coord, vec] : down.parts)
            CHECK(h_eigenvalue_of(g, t, coord) == eig - rat(2));
    }
}

TEST_CASE("two modules pass through h") {
    GradedAlgebra g(CartanParam(3), TruncationWindow{6});
    Sl2Triple t = build_triple(g, TripleIndices(0, 0));
    auto chains = modules_through_h(g, t);

    CHECK(chains[0].casimir_eigenvalue == rat(1));
    CHECK(chains[1].casimir_eigenvalue == rat(-5));

    // The sl2 chain terminates: H, then a multiple of X (resp. Y), then 0.
    CHECK(!chains[0].up_truncated);
    CHECK(!chains[0].down_truncated);
    CHECK(chains[0].up_chain.size() == 2);
    CHECK(chains[0].down_chain.size() == 2);
    // ad X image of the H line is proportional to X.
    const GradedElement& up1 = chains[0].up_chain[1];
    CHECK(up1.parts.size() == t.X->parts.size());

    // The E+ module keeps going to the window edge.
    CHECK(chains[1].up_truncated);
    CHECK(chains[1].down_truncated);
    CHECK(chains[1].up_chain.size() >= 3);

    // E+ line is orthogonal to H under the standard form in this example.
    GradedElement v;
    v.h[0] = QuadScalar(chains[1].h_direction[0]);
    v.h[1] = QuadScalar(chains[1].h_direction[1]);
    CHECK(g.standard_form(v, *t.H) == QuadScalar(rat(0)));
}

TEST_CASE("adjointness holds for constructed triples") {
    GradedAlgebra g(CartanParam(3), TruncationWindow{6});
    for (auto [i, j] : {std::pair{0, 0}, {0, 1}, {1, 0}}) {
        Sl2Triple t = build_triple(g, TripleIndices(i, j));
        UnitarityReport rep = unitarity_check(g, t);
        CHECK(rep.adjointness_ok);
        CHECK(rep.j3_selfadjoint_ok);
        CHECK(rep.pairs_checked > 0);
    }
}

TEST_CASE("an artificial Y breaks adjointness") {
    GradedAlgebra g(CartanParam(3), TruncationWindow{6});
    Sl2Triple t = build_triple(g, TripleIndices(0, 0));
    // Y' = w0(X) + f0 is not the compact-involution image of X.
    GradedElement y_bad = *t.Y + g.chevalley_f(0);
    auto labels = basis_labels(g);
    bool violated = false;
    for (const auto& bx : labels) {
        for (const auto& by : labels) {
            GradedElement x = realize_label(g, bx), y = realize_label(g, by);
            QuadScalar lhs = g.hermitian_form(bracket_within(g, *t.X, x), y);
            QuadScalar rhs = -g.hermitian_form(x, bracket_within(g, y_bad, y));
            if (!(lhs == rhs)) {
                violated = true;
                break;
            }
        }
        if (violated) break;
    }
    CHECK(violated);
}

TEST_CASE("principal gram blocks are positive definite at small heights") {
    GradedAlgebra g(CartanParam(3), TruncationWindow{5});
    Sl2Triple t = build_triple(g, TripleIndices(0, 0));
    UnitarityReport rep = unitarity_check(g, t, true);
    REQUIRE(!rep.gram_blocks.empty());
    long total = 0;
    for (const GramBlock& b : rep.gram_blocks) {
        CHECK(b.inertia.neg == 0);
        CHECK(b.inertia.zero == 0);
        CHECK(b.inertia.pos == static_cast<size_t>(b.complement_dim));
        CHECK(b.complement_dim + (b.eigenvalue == rat(0) || b.eigenvalue == rat(2) ||
                                          b.eigenvalue == rat(-2)
                                      ? 1
                                      : 0) ==
              b.space_dim);
        total += b.space_dim;
    }
    CHECK(total == g.total_dim());
}
