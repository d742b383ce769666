#pragma once

#include "hkm2/casimir.hpp"
#include "hkm2/linalg.hpp"
#include "hkm2/sl2.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace hkm2 {

/// One basis label of the truncated algebra: a Cartan generator or the p-th
/// vector of a root space.
struct BasisLabel {
    bool cartan = false;
    int cartan_index = 0;
    RootCoord coord{0, 0};
    size_t p = 0;
};

inline std::vector<BasisLabel> basis_labels(const GradedAlgebra& g) {
    std::vector<BasisLabel> out;
    out.push_back({true, 0, {0, 0}, 0});
    out.push_back({true, 1, {0, 0}, 0});
    for (const RootCoord& r : g.positive_roots_in_window())
        for (long p = 0; p < g.dim(r); ++p) {
            out.push_back({false, 0, r, static_cast<size_t>(p)});
            out.push_back({false, 0, -r, static_cast<size_t>(p)});
        }
    return out;
}

inline GradedElement realize_label(const GradedAlgebra& g, const BasisLabel& b) {
    return b.cartan ? g.cartan_h(b.cartan_index) : g.basis_element(b.coord, b.p);
}

/// [u, x] keeping only components that fit the window. A dropped component
/// sits beyond the height bound, so it pairs to zero with every window
/// element; pairings of the result against window elements are exact.
inline GradedElement bracket_within(const GradedAlgebra& g, const GradedElement& u,
                                    const GradedElement& x) {
    GradedElement out;
    auto pieces = [](const GradedElement& e) {
        std::vector<GradedElement> ps;
        if (!(e.h[0] == QuadScalar(Rational(0))) || !(e.h[1] == QuadScalar(Rational(0)))) {
            GradedElement h;
            h.h = e.h;
            ps.push_back(std::move(h));
        }
        for (const auto& [coord, vec] : e.parts) {
            GradedElement p;
            p.parts.emplace(coord, vec);
            ps.push_back(std::move(p));
        }
        return ps;
    };
    for (const GradedElement& pu : pieces(u))
        for (const GradedElement& px : pieces(x)) {
            try {
                out += g.bracket(pu, px);
            } catch (const TruncationExceeded&) {
                // component beyond the window; unpairable inside it
            }
        }
    return out;
}

/// Eigenspace of ad H: since H lies in h, every root space g_alpha is an
/// eigenspace with eigenvalue alpha(H), and h itself sits at eigenvalue 0.
struct EigenSpace {
    Rational eigenvalue;
    bool contains_cartan = false;
    std::vector<BasisLabel> members;  // root-space members only
    long dim() const {
        return static_cast<long>(members.size()) + (contains_cartan ? 2 : 0);
    }
};

struct HEigenDecomposition {
    TripleIndices indices;
    std::vector<EigenSpace> spaces;  // sorted by eigenvalue
    long total_dim = 0;
};

inline Rational h_eigenvalue_of(const GradedAlgebra& g, const Sl2Triple& t,
                                const RootCoord& coord) {
    return t.h_coords[0] * Rational(pairing_h(g.cartan(), 0, coord)) +
           t.h_coords[1] * Rational(pairing_h(g.cartan(), 1, coord));
}

inline HEigenDecomposition h_eigendecompose(const GradedAlgebra& g, const Sl2Triple& t) {
    if (!t.verified) throw std::invalid_argument("triple must be realized");
    std::map<Rational, EigenSpace> by_eig;
    auto& zero_space = by_eig[Rational(0)];
    zero_space.eigenvalue = Rational(0);
    zero_space.contains_cartan = true;
    for (const BasisLabel& b : basis_labels(g)) {
        if (b.cartan) continue;
        Rational eig = h_eigenvalue_of(g, t, b.coord);
        auto& space = by_eig[eig];
        space.eigenvalue = eig;
        space.members.push_back(b);
    }
    HEigenDecomposition out{t.indices, {}, 0};
    for (auto& [eig, space] : by_eig) {
        out.total_dim += space.dim();
        out.spaces.push_back(std::move(space));
    }
    if (out.total_dim != g.total_dim())
        throw VerificationFailed("eigenspace dimensions do not sum to the window dimension");
    return out;
}

/// A module chain through h: the Casimir eigenline and its images under
/// repeated ad X / ad Y, as far as the window allows.
struct ModuleChain {
    Rational casimir_eigenvalue;
    std::array<Rational, 2> h_direction;
    std::vector<GradedElement> up_chain;    // starts at the h vector
    std::vector<GradedElement> down_chain;  // same, under ad Y
    bool up_truncated = false;
    bool down_truncated = false;
};

/// The two irreducible modules meeting h: the sl2 itself (eigenvalue 1,
/// direction H) and the E+ module.
inline std::array<ModuleChain, 2> modules_through_h(const GradedAlgebra& g,
                                                    const Sl2Triple& t) {
    if (!t.verified) throw std::invalid_argument("triple must be realized");
    CasimirReport rep = casimir_on_h(g.cartan(), t.indices);
    DenseMatrix<Rational> m = casimir_matrix(rep);

    auto eigenline = [&](const Rational& lambda) {
        DenseMatrix<Rational> shifted = m;
        shifted.at(0, 0) -= lambda;
        shifted.at(1, 1) -= lambda;
        auto kern = kernel_basis(shifted);
        if (kern.size() != 1)
            throw VerificationFailed("Casimir eigenline on h is not one-dimensional");
        return std::array<Rational, 2>{kern[0][0], kern[0][1]};
    };

    auto build_chain = [&](const Rational& lambda) {
        ModuleChain chain;
        chain.casimir_eigenvalue = lambda;
        chain.h_direction = eigenline(lambda);
        GradedElement v;
        v.h[0] = QuadScalar(chain.h_direction[0]);
        v.h[1] = QuadScalar(chain.h_direction[1]);
        // Casimir stability of the line, exactly.
        Rational c0 = m.at(0, 0) * chain.h_direction[0] + m.at(0, 1) * chain.h_direction[1];
        Rational c1 = m.at(1, 0) * chain.h_direction[0] + m.at(1, 1) * chain.h_direction[1];
        if (c0 != lambda * chain.h_direction[0] || c1 != lambda * chain.h_direction[1])
            throw VerificationFailed("Casimir eigenline is not stable");
        for (auto [dir, chain_vec, truncated] :
             {std::tuple{&*t.X, &chain.up_chain, &chain.up_truncated},
              std::tuple{&*t.Y, &chain.down_chain, &chain.down_truncated}}) {
            GradedElement cur = v;
            chain_vec->push_back(cur);
            while (!cur.is_zero()) {
                try {
                    cur = g.bracket(*dir, cur);
                } catch (const TruncationExceeded&) {
                    *truncated = true;
                    break;
                }
                if (!cur.is_zero()) chain_vec->push_back(cur);
            }
        }
        return chain;
    };

    ModuleChain sl2_chain = build_chain(rep.e_sl2);
    // The eigenvalue-1 line is the direction of H.
    Rational cross = sl2_chain.h_direction[0] * t.h_coords[1] -
                     sl2_chain.h_direction[1] * t.h_coords[0];
    if (!cross.is_zero())
        throw VerificationFailed("eigenvalue-1 line is not the H direction");
    return {std::move(sl2_chain), build_chain(rep.e_plus)};
}

/// Gram-signature measurement of the Hermitian form on one H-eigenspace,
/// after removing the sl2 direction that meets it (if any).
struct GramBlock {
    Rational eigenvalue;
    long space_dim = 0;
    long complement_dim = 0;
    Inertia inertia;
};

struct UnitarityReport {
    bool adjointness_ok = true;
    bool j3_selfadjoint_ok = true;
    long pairs_checked = 0;
    std::vector<GramBlock> gram_blocks;  // filled only when requested
};

/// Verifies unitary condition (i) exactly on all window basis pairs:
/// ([X, x] | y)_0 = -(x | [Y, y])_0 (the sqrt(2) of the SO(1,2) dictionary
/// scales both sides identically) and self-adjointness of ad H. With
/// `with_gram`, also measures the inertia of the Hermitian form on every
/// H-eigenspace complement of the sl2 span. The signature counts are
/// reported as data; positivity is a theorem only in the principal case.
inline UnitarityReport unitarity_check(const GradedAlgebra& g, const Sl2Triple& t,
                                       bool with_gram = false) {
    if (!t.verified) throw std::invalid_argument("triple must be realized");
    UnitarityReport rep;
    auto labels = basis_labels(g);
    std::vector<GradedElement> basis;
    basis.reserve(labels.size());
    for (const auto& b : labels) basis.push_back(realize_label(g, b));

    std::vector<GradedElement> bx, by, bh;
    bx.reserve(basis.size());
    for (const auto& v : basis) {
        bx.push_back(bracket_within(g, *t.X, v));
        by.push_back(bracket_within(g, *t.Y, v));
        bh.push_back(g.bracket(*t.H, v));
    }
    // The Hermitian form pairs identical components only, and [X, x] and
    // [Y, y] shift components by the same root coordinates, so a pair whose
    // components cannot match under that shift vanishes identically on both
    // sides. Evaluating all structurally matching pairs therefore covers
    // every window basis pair.
    std::map<RootCoord, std::vector<size_t>> by_coord;
    std::vector<size_t> cartan_idx;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].cartan)
            cartan_idx.push_back(i);
        else
            by_coord[labels[i].coord].push_back(i);
    }
    std::vector<RootCoord> shift_coords;
    for (const auto& [coord, vec] : t.X->parts) shift_coords.push_back(coord);
    auto partners = [&](const BasisLabel& xl, bool shifted) {
        std::vector<size_t> out;
        auto add_coord = [&](const RootCoord& target) {
            if (target == RootCoord{0, 0}) {
                out.insert(out.end(), cartan_idx.begin(), cartan_idx.end());
                return;
            }
            auto it = by_coord.find(target);
            if (it != by_coord.end())
                out.insert(out.end(), it->second.begin(), it->second.end());
        };
        if (!shifted) {
            if (xl.cartan)
                out.insert(out.end(), cartan_idx.begin(), cartan_idx.end());
            else
                add_coord(xl.coord);
            return out;
        }
        for (const RootCoord& alpha : shift_coords)
            add_coord(xl.cartan ? alpha : xl.coord + alpha);
        return out;
    };
    for (size_t xi = 0; xi < basis.size(); ++xi) {
        for (size_t yi : partners(labels[xi], true)) {
            QuadScalar lhs = g.hermitian_form(bx[xi], basis[yi]);
            QuadScalar rhs = -g.hermitian_form(basis[xi], by[yi]);
            if (!(lhs == rhs)) rep.adjointness_ok = false;
            ++rep.pairs_checked;
        }
        for (size_t yi : partners(labels[xi], false)) {
            QuadScalar hl = g.hermitian_form(bh[xi], basis[yi]);
            QuadScalar hr = g.hermitian_form(basis[xi], bh[yi]);
            if (!(hl == hr)) rep.j3_selfadjoint_ok = false;
        }
    }

    if (!with_gram) return rep;

    HEigenDecomposition dec = h_eigendecompose(g, t);
    for (const EigenSpace& space : dec.spaces) {
        GramBlock block;
        block.eigenvalue = space.eigenvalue;
        block.space_dim = space.dim();

        std::vector<GradedElement> vecs;
        if (space.contains_cartan) {
            vecs.push_back(g.cartan_h(0));
            vecs.push_back(g.cartan_h(1));
        }
        for (const BasisLabel& b : space.members) vecs.push_back(realize_label(g, b));

        // The sl2 member meeting this eigenspace, if any.
        const GradedElement* s = nullptr;
        if (space.eigenvalue == Rational(2)) s = &*t.X;
        else if (space.eigenvalue == Rational(-2)) s = &*t.Y;
        else if (space.eigenvalue == Rational(0)) s = &*t.H;

        std::vector<GradedElement> complement;
        if (s) {
            QuadScalar ss = g.hermitian_form(*s, *s);
            if (ss == QuadScalar(Rational(0)))
                throw VerificationFailed("sl2 direction is null for the Hermitian form");
            DenseMatrix<QuadScalar> row(1, vecs.size());
            for (size_t i = 0; i < vecs.size(); ++i)
                row.at(0, i) = g.hermitian_form(vecs[i], *s);
            for (const auto& combo : kernel_basis(row)) {
                GradedElement w;
                for (size_t i = 0; i < vecs.size(); ++i)
                    if (!(combo[i] == QuadScalar(Rational(0)))) w += combo[i] * vecs[i];
                complement.push_back(std::move(w));
            }
        } else {
            complement = vecs;
        }
        block.complement_dim = static_cast<long>(complement.size());

        DenseMatrix<QuadScalar> gm(complement.size(), complement.size());
        for (size_t i = 0; i < complement.size(); ++i)
            for (size_t j = 0; j <= i; ++j) {
                QuadScalar v = g.hermitian_form(complement[i], complement[j]);
                gm.at(i, j) = v;
                gm.at(j, i) = v;
            }
        block.inertia = inertia_of_symmetric(gm);
        rep.gram_blocks.push_back(std::move(block));
    }
    return rep;
}

} // namespace hkm2
