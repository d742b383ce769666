// Command-line front door: real-root enumeration, triple construction and
// verification, weighted Dynkin diagrams, dominance normalization, the E+
// table, sl2-module decomposition, and the cross-module verification suite.

#include "hkm2/cache.hpp"
#include "hkm2/decompose.hpp"
#include "hkm2/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using nlohmann::json;
using namespace hkm2;

json rat_json(const Rational& r) { return json{{"num", r.num().str()}, {"den", r.den().str()}}; }

json rat_json_dec(const Rational& r, unsigned digits) {
    json j = rat_json(r);
    j["decimal"] = r.to_decimal(digits);
    return j;
}

json quad_json(const QuadScalar& q, unsigned digits) {
    return json{{"rat_part", rat_json(q.rat_part())},
                {"rad_part", rat_json(q.rad_part())},
                {"radicand", rat_json(q.radicand())},
                {"decimal", q.to_decimal(digits)}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

struct CliConfig {
    std::string format = "json";
    unsigned digits = 6;
    std::optional<std::string> cache_dir;

    std::optional<std::filesystem::path> cache_path_opt() const {
        if (cache_dir) return std::filesystem::path(*cache_dir);
        if (const char* env = std::getenv("HKM2_CACHE_DIR")) return std::filesystem::path(env);
        return std::nullopt;
    }
};

json triple_json(const Sl2Triple& t, unsigned digits) {
    json j;
    j["a"] = t.a;
    j["i"] = t.indices.i;
    j["j"] = t.indices.j;
    j["k"] = t.quad.k.str();
    j["l"] = t.quad.l.str();
    j["m"] = t.quad.m.str();
    j["n"] = t.quad.n.str();
    j["B"] = rat_json(t.B);
    j["c_sq"] = rat_json(t.c_sq);
    j["radicand"] = rat_json(t.radicand);
    QuadScalar c0(Rational(0), (t.B - Rational(2)).reciprocal(), t.radicand);
    j["c0"] = quad_json(c0, digits);
    j["h_coords"] = json::array({rat_json(t.h_coords[0]), rat_json(t.h_coords[1])});
    j["dynkin"] =
        json::array({rat_json_dec(t.dynkin[0], digits), rat_json_dec(t.dynkin[1], digits)});
    j["e_plus"] = rat_json_dec(t.e_plus, digits);
    j["dominant"] = t.dominant();
    j["realized"] = t.X.has_value();
    j["verified"] = t.verified;
    return j;
}

int run_roots(int a, int count, const CliConfig& cfg) {
    CartanParam cp(a);
    auto roots = enumerate_real_positive_roots(cp, count);
    if (cfg.format == "tsv") {
        std::cout << "kind\tindex\tx\ty\n";
        for (const auto& r : roots)
            std::cout << (r.kind == RootKind::Alpha ? "alpha" : "beta") << "\t" << r.index
                      << "\t" << r.coord.x.str() << "\t" << r.coord.y.str() << "\n";
        return 0;
    }
    json out;
    out["a"] = a;
    out["count"] = count;
    out["roots"] = json::array();
    for (const auto& r : roots)
        out["roots"].push_back(json{{"kind", r.kind == RootKind::Alpha ? "alpha" : "beta"},
                                    {"index", r.index},
                                    {"x", r.coord.x.str()},
                                    {"y", r.coord.y.str()}});
    emit(out);
    return 0;
}

int run_triple(int a, int i, int j, bool realize, int max_height, const CliConfig& cfg) {
    CartanParam cp(a);
    TripleIndices idx(i, j);
    Sl2Triple t = closed_triple(cp, idx);
    if (realize) {
        int h = max_height > 0 ? max_height : std::max(2, required_height(cp, idx));
        GradedAlgebra g = load_or_build(cp, TruncationWindow{h}, {}, cfg.cache_path_opt());
        t = build_triple(g, idx);
    }
    json out = triple_json(t, cfg.digits);
    if (cfg.format == "tsv") {
        std::cout << "field\tvalue\n";
        for (auto& [key, val] : out.items())
            std::cout << key << "\t" << (val.is_string() ? val.get<std::string>() : val.dump())
                      << "\n";
        return 0;
    }
    emit(out);
    return 0;
}

int run_dynkin(int a, int i, int j, const CliConfig& cfg) {
    CartanParam cp(a);
    auto d = weighted_dynkin(cp, TripleIndices(i, j));
    json out;
    out["a"] = a;
    out["i"] = i;
    out["j"] = j;
    out["dynkin"] = json::array({rat_json_dec(d[0], cfg.digits), rat_json_dec(d[1], cfg.digits)});
    out["dominant"] = d[0].sign() >= 0 && d[1].sign() >= 0;
    emit(out);
    return 0;
}

int run_normalize(int i, int j) {
    auto r = normalize_to_dominant(TripleIndices(i, j));
    json out;
    out["i"] = i;
    out["j"] = j;
    out["steps"] = r.steps;
    out["final_i"] = r.final_indices.i;
    out["final_j"] = r.final_indices.j;
    out["word"] = json::array();
    for (int l : r.word.letters()) out["word"].push_back("r" + std::to_string(l));
    emit(out);
    return 0;
}

int run_casimir_table(int a, int rows, int cols, unsigned digits, const CliConfig& cfg) {
    auto t = e_plus_table(CartanParam(a), rows, cols, digits);
    if (cfg.format == "tsv") {
        std::cout << "(k, l) \\ (m, n)";
        for (const auto& c : t.col_labels) std::cout << "\t" << c;
        std::cout << "\n";
        for (size_t r = 0; r < t.rendered.size(); ++r) {
            std::cout << t.row_labels[r];
            for (const auto& v : t.rendered[r]) std::cout << "\t" << v;
            std::cout << "\n";
        }
        return 0;
    }
    json out;
    out["a"] = a;
    out["rows"] = rows;
    out["cols"] = cols;
    out["digits"] = digits;
    out["row_labels"] = t.row_labels;
    out["col_labels"] = t.col_labels;
    out["entries"] = json::array();
    for (size_t r = 0; r < t.exact.size(); ++r) {
        json row = json::array();
        for (size_t c = 0; c < t.exact[r].size(); ++c) {
            json cell = rat_json(t.exact[r][c]);
            cell["decimal"] = t.rendered[r][c];
            row.push_back(cell);
        }
        out["entries"].push_back(row);
    }
    emit(out);
    return 0;
}

int run_decompose(int a, int i, int j, int max_height, bool with_gram, const CliConfig& cfg) {
    CartanParam cp(a);
    TripleIndices idx(i, j);
    GradedAlgebra g =
        load_or_build(cp, TruncationWindow{max_height}, {}, cfg.cache_path_opt());
    Sl2Triple t = build_triple(g, idx);
    HEigenDecomposition dec = h_eigendecompose(g, t);
    auto chains = modules_through_h(g, t);
    UnitarityReport rep = unitarity_check(g, t, with_gram);

    json out;
    out["triple"] = triple_json(t, cfg.digits);
    out["max_height"] = max_height;
    out["total_dim"] = dec.total_dim;
    out["eigenspaces"] = json::array();
    for (const auto& s : dec.spaces) {
        json js;
        js["eigenvalue"] = rat_json_dec(s.eigenvalue, cfg.digits);
        js["dim"] = s.dim();
        js["contains_cartan"] = s.contains_cartan;
        js["members"] = json::array();
        for (const auto& b : s.members)
            js["members"].push_back(
                json{{"x", b.coord.x.str()}, {"y", b.coord.y.str()}, {"p", b.p}});
        out["eigenspaces"].push_back(js);
    }
    out["modules_through_h"] = json::array();
    for (const auto& chain : chains) {
        json jc;
        jc["casimir_eigenvalue"] = rat_json_dec(chain.casimir_eigenvalue, cfg.digits);
        jc["h_direction"] =
            json::array({rat_json(chain.h_direction[0]), rat_json(chain.h_direction[1])});
        jc["up_chain_length"] = chain.up_chain.size();
        jc["down_chain_length"] = chain.down_chain.size();
        jc["up_truncated"] = chain.up_truncated;
        jc["down_truncated"] = chain.down_truncated;
        out["modules_through_h"].push_back(jc);
    }
    out["unitarity"] = json{{"adjointness_ok", rep.adjointness_ok},
                            {"j3_selfadjoint_ok", rep.j3_selfadjoint_ok},
                            {"pairs_checked", rep.pairs_checked}};
    if (with_gram) {
        out["gram_blocks"] = json::array();
        for (const auto& b : rep.gram_blocks)
            out["gram_blocks"].push_back(json{{"eigenvalue", rat_json(b.eigenvalue)},
                                              {"space_dim", b.space_dim},
                                              {"complement_dim", b.complement_dim},
                                              {"pos", b.inertia.pos},
                                              {"neg", b.inertia.neg},
                                              {"zero", b.inertia.zero}});
    }
    emit(out);
    return 0;
}

int run_verify(int a, int max_height, uint64_t seed, const CliConfig& cfg) {
    auto results = run_verification(CartanParam(a), TruncationWindow{max_height}, seed,
                                    cfg.cache_path_opt());
    bool all_ok = true;
    for (const auto& r : results) {
        std::cout << (r.ok ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) std::cout << ": " << r.detail;
        std::cout << "\n";
        all_ok = all_ok && r.ok;
    }
    std::cout << (all_ok ? "verify: all checks passed\n" : "verify: FAILURES\n");
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact sl2-triples in rank-2 symmetric hyperbolic Kac-Moody algebras"};
    app.require_subcommand(1);
    CliConfig cfg;

    std::string cache_dir;
    app.add_option("--cache-dir", cache_dir, "Directory for build-artifact caches")
        ->envname("HKM2_CACHE_DIR");

    int a = 3, i = 0, j = 0, count = 5, rows = 5, cols = 5, max_height = 0;
    bool realize = false, with_gram = false;
    unsigned digits = 6;
    uint64_t seed = 20240901;
    std::string format = "json";

    auto* roots = app.add_subcommand("roots", "Enumerate real positive roots");
    roots->add_option("--a", a, "Cartan parameter (>= 3)")->required();
    roots->add_option("--count", count, "Roots per type")->required();
    roots->add_option("--format", format)->check(CLI::IsMember({"json", "tsv"}));

    auto* triple = app.add_subcommand("triple", "Construct the (i, j) sl2-triple");
    triple->add_option("--a", a)->required();
    triple->add_option("--i", i)->required();
    triple->add_option("--j", j)->required();
    triple->add_flag("--realize", realize, "Realize and verify in the window");
    triple->add_option("--max-height", max_height, "Window height (default: fits the roots)");
    triple->add_option("--digits", digits);
    triple->add_option("--format", format)->check(CLI::IsMember({"json", "tsv"}));

    auto* dynkin = app.add_subcommand("dynkin", "Weighted Dynkin diagram of (i, j)");
    dynkin->add_option("--a", a)->required();
    dynkin->add_option("--i", i)->required();
    dynkin->add_option("--j", j)->required();
    dynkin->add_option("--digits", digits);

    auto* normalize = app.add_subcommand("normalize", "Weyl-normalize indices to dominance");
    normalize->add_option("--i", i)->required();
    normalize->add_option("--j", j)->required();

    auto* table = app.add_subcommand("casimir-table", "E+ table (alpha-type rows, beta-type columns)");
    table->add_option("--a", a)->required();
    table->add_option("--rows", rows)->required();
    table->add_option("--cols", cols)->required();
    table->add_option("--digits", digits);
    table->add_option("--format", format)->check(CLI::IsMember({"json", "tsv"}));

    auto* decompose = app.add_subcommand("decompose", "sl2-module decomposition data");
    decompose->add_option("--a", a)->required();
    decompose->add_option("--i", i)->required();
    decompose->add_option("--j", j)->required();
    decompose->add_option("--max-height", max_height)->required();
    decompose->add_flag("--gram", with_gram, "Measure Gram signatures");
    decompose->add_option("--digits", digits);
    decompose->add_option("--format", format)->check(CLI::IsMember({"json"}));

    auto* verify = app.add_subcommand("verify", "Run the full invariant suite");
    verify->add_option("--a", a)->required();
    verify->add_option("--max-height", max_height)->required();
    verify->add_option("--seed", seed, "PRNG seed for randomized checks");

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.format = format;
    cfg.digits = digits;
    if (!cache_dir.empty()) cfg.cache_dir = cache_dir;

    try {
        if (roots->parsed()) return run_roots(a, count, cfg);
        if (triple->parsed()) return run_triple(a, i, j, realize, max_height, cfg);
        if (dynkin->parsed()) return run_dynkin(a, i, j, cfg);
        if (normalize->parsed()) return run_normalize(i, j);
        if (table->parsed()) return run_casimir_table(a, rows, cols, digits, cfg);
        if (decompose->parsed()) return run_decompose(a, i, j, max_height, with_gram, cfg);
        if (verify->parsed()) return run_verify(a, max_height, seed, cfg);
    } catch (const TruncationExceeded& e) {
        json err{{"error", "TruncationExceeded"}, {"message", e.what()}};
        if (e.required_max_height) err["required_max_height"] = *e.required_max_height;
        emit(err);
        return 1;
    } catch (const VerificationFailed& e) {
        emit(json{{"error", "VerificationFailed"}, {"message", e.what()}});
        return 1;
    } catch (const ResourceLimit& e) {
        emit(json{{"error", "ResourceLimit"}, {"message", e.what()}});
        return 1;
    } catch (const std::invalid_argument& e) {
        emit(json{{"error", "InvalidArgument"}, {"message", e.what()}});
        return 2;
    }
    return 2;
}
