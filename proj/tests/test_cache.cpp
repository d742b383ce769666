#include "hkm2/cache.hpp"

#include "hkm2/sl2.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using namespace hkm2;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("hkm2-cache-test-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

} // namespace

TEST_CASE("cache round-trip reproduces the algebra") {
    TempDir tmp;
    CartanParam a(3);
    TruncationWindow w{7};
    GradedAlgebra built(a, w);
    fs::path file = cache_path(tmp.path, a, w);
    save_algebra(built, file);
    REQUIRE(fs::exists(file));

    auto loaded = load_algebra(file, a, w);
    REQUIRE(loaded.has_value());
    CHECK(loaded->total_dim() == built.total_dim());
    for (const RootCoord& r : built.positive_roots_in_window())
        CHECK(loaded->dim(r) == built.dim(r));

    // Structure constants and forms agree between the two instances.
    auto e0 = built.chevalley_e(0), f0 = built.chevalley_f(0);
    CHECK(loaded->bracket(e0, f0) == built.bracket(e0, f0));
    auto x = built.basis_element(RootCoord{2, 2}, 0);
    auto y = built.basis_element(-RootCoord{1, 2}, 0);
    CHECK(loaded->bracket(x, y) == built.bracket(x, y));
    CHECK(loaded->standard_form(x, built.compact_involution(x)) ==
          built.standard_form(x, built.compact_involution(x)));

    // A triple builds identically on the loaded instance.
    Sl2Triple t1 = build_triple(built, TripleIndices(1, 0));
    Sl2Triple t2 = build_triple(*loaded, TripleIndices(1, 0));
    CHECK(*t1.X == *t2.X);
    CHECK(*t1.H == *t2.H);
}

TEST_CASE("mismatched parameters and corruption are treated as absent") {
    TempDir tmp;
    CartanParam a(3);
    TruncationWindow w{6};
    GradedAlgebra built(a, w);
    fs::path file = cache_path(tmp.path, a, w);
    save_algebra(built, file);

    CHECK(!load_algebra(file, CartanParam(4), w).has_value());
    CHECK(!load_algebra(file, a, TruncationWindow{7}).has_value());
    CHECK(!load_algebra(tmp.path / "missing.cache", a, w).has_value());

    // Flip a payload byte: checksum must reject it.
    {
        std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(-1, std::ios::end);
        char c;
        f.seekg(-1, std::ios::end);
        f.get(c);
        f.seekp(-1, std::ios::end);
        f.put(static_cast<char>(c ^ 0x5a));
    }
    CHECK(!load_algebra(file, a, w).has_value());
}

TEST_CASE("load_or_build writes and reuses the cache") {
    TempDir tmp;
    CartanParam a(4);
    TruncationWindow w{6};
    GradedAlgebra g1 = load_or_build(a, w, {}, tmp.path);
    REQUIRE(fs::exists(cache_path(tmp.path, a, w)));
    GradedAlgebra g2 = load_or_build(a, w, {}, tmp.path);
    CHECK(g1.total_dim() == g2.total_dim());
    // Absent directory: never an error.
    GradedAlgebra g3 = load_or_build(a, w, {}, std::nullopt);
    CHECK(g3.total_dim() == g1.total_dim());
}
