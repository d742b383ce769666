#pragma once

#include "hkm2/graded_algebra.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace hkm2 {

inline constexpr uint32_t kCacheFormatVersion = 1;
inline constexpr char kCacheMagic[] = "HKM2CACHE";

namespace cache_detail {

inline uint64_t fnv1a(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline void put_u64(std::string& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_str(std::string& out, const std::string& s) {
    put_u64(out, s.size());
    out += s;
}

inline void put_rational(std::string& out, const Rational& r) {
    put_str(out, r.num().str());
    put_str(out, r.den().str());
}

inline void put_row(std::string& out, const detail::SparseRow& row) {
    put_u64(out, row.size());
    for (const auto& [col, val] : row) {
        put_u64(out, col);
        put_rational(out, val);
    }
}

struct Reader {
    const std::string& data;
    size_t pos = 0;

    uint64_t u64() {
        if (pos + 8 > data.size()) throw std::runtime_error("cache truncated");
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<uint64_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
        pos += 8;
        return v;
    }
    std::string str() {
        uint64_t n = u64();
        if (pos + n > data.size()) throw std::runtime_error("cache truncated");
        std::string s = data.substr(pos, n);
        pos += n;
        return s;
    }
    Rational rational() {
        Int num(str());
        Int den(str());
        return Rational(num, den);
    }
    detail::SparseRow row() {
        detail::SparseRow r;
        uint64_t n = u64();
        for (uint64_t i = 0; i < n; ++i) {
            uint32_t col = static_cast<uint32_t>(u64());
            Rational v = rational();
            r.emplace_back(col, std::move(v));
        }
        return r;
    }
};

} // namespace cache_detail

inline std::filesystem::path cache_path(const std::filesystem::path& dir, const CartanParam& a,
                                        const TruncationWindow& w) {
    return dir / ("hkm2-a" + std::to_string(a.a) + "-h" + std::to_string(w.max_height) +
                  ".cache");
}

/// Versioned binary dump of the build artifacts (quotient bases, Serre
/// echelons, rep bookkeeping) with an FNV-1a integrity checksum. Bracket
/// memos are cheap and stay lazy.
inline void save_algebra(const GradedAlgebra& g, const std::filesystem::path& file) {
    using namespace cache_detail;
    std::string payload;
    std::vector<std::string> comp_blobs;
    g.visit_components([&](const RootCoord& alpha, const auto& ideal, const auto& ideal_pivots,
                           const auto& reps, const auto& rep_ech, const auto& rep_expr,
                           const auto& rep_words) {
        std::string blob;
        put_str(blob, alpha.x.str());
        put_str(blob, alpha.y.str());
        put_u64(blob, ideal.size());
        for (const auto& r : ideal) put_row(blob, r);
        put_u64(blob, ideal_pivots.size());
        for (uint32_t p : ideal_pivots) put_u64(blob, p);
        put_u64(blob, reps.size());
        for (const auto& r : reps) put_row(blob, r);
        put_u64(blob, rep_ech.size());
        for (const auto& r : rep_ech) put_row(blob, r);
        put_u64(blob, rep_expr.size());
        for (const auto& e : rep_expr) {
            put_u64(blob, e.size());
            for (const auto& v : e) put_rational(blob, v);
        }
        put_u64(blob, rep_words.size());
        for (uint64_t w : rep_words) put_u64(blob, w);
        comp_blobs.push_back(std::move(blob));
    });
    put_u64(payload, comp_blobs.size());
    for (const auto& b : comp_blobs) payload += b;

    std::string header;
    header += kCacheMagic;
    put_u64(header, kCacheFormatVersion);
    put_u64(header, static_cast<uint64_t>(g.cartan().a));
    put_u64(header, static_cast<uint64_t>(g.max_height()));
    put_u64(header, fnv1a(payload));
    put_u64(header, payload.size());

    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << header << payload;
}

/// Returns the cached algebra when the file exists, matches (a, height,
/// version) and passes the checksum; nullopt otherwise.
inline std::optional<GradedAlgebra> load_algebra(const std::filesystem::path& file,
                                                 const CartanParam& a,
                                                 const TruncationWindow& w) {
    using namespace cache_detail;
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string all = buf.str();
    try {
        const size_t magic_len = sizeof(kCacheMagic) - 1;
        if (all.size() < magic_len || all.compare(0, magic_len, kCacheMagic) != 0)
            return std::nullopt;
        Reader hdr{all, magic_len};
        if (hdr.u64() != kCacheFormatVersion) return std::nullopt;
        if (hdr.u64() != static_cast<uint64_t>(a.a)) return std::nullopt;
        if (hdr.u64() != static_cast<uint64_t>(w.max_height)) return std::nullopt;
        uint64_t checksum = hdr.u64();
        uint64_t payload_size = hdr.u64();
        if (hdr.pos + payload_size != all.size()) return std::nullopt;
        std::string payload = all.substr(hdr.pos);
        if (fnv1a(payload) != checksum) return std::nullopt;

        Reader r{payload, 0};
        uint64_t ncomp = r.u64();
        std::vector<GradedAlgebra::ComponentData> comps;
        comps.reserve(ncomp);
        for (uint64_t c = 0; c < ncomp; ++c) {
            GradedAlgebra::ComponentData d;
            d.alpha.x = Int(r.str());
            d.alpha.y = Int(r.str());
            uint64_t n = r.u64();
            for (uint64_t i = 0; i < n; ++i) d.ideal.push_back(r.row());
            n = r.u64();
            for (uint64_t i = 0; i < n; ++i)
                d.ideal_pivots.push_back(static_cast<uint32_t>(r.u64()));
            n = r.u64();
            for (uint64_t i = 0; i < n; ++i) d.reps.push_back(r.row());
            n = r.u64();
            for (uint64_t i = 0; i < n; ++i) d.rep_ech.push_back(r.row());
            n = r.u64();
            for (uint64_t i = 0; i < n; ++i) {
                uint64_t len = r.u64();
                std::vector<Rational> e;
                e.reserve(len);
                for (uint64_t k = 0; k < len; ++k) e.push_back(r.rational());
                d.rep_expr.push_back(std::move(e));
            }
            n = r.u64();
            for (uint64_t i = 0; i < n; ++i) d.rep_words.push_back(r.u64());
            comps.push_back(std::move(d));
        }
        return GradedAlgebra(a, w, std::move(comps));
    } catch (const std::exception&) {
        return std::nullopt;  // treat any malformed cache as absent
    }
}

/// Cache-aware constructor: a missing or stale cache is never an error.
inline GradedAlgebra load_or_build(const CartanParam& a, const TruncationWindow& w,
                                   BuildOptions opts = {},
                                   const std::optional<std::filesystem::path>& cache_dir = {}) {
    if (cache_dir) {
        std::filesystem::path file = cache_path(*cache_dir, a, w);
        if (auto g = load_algebra(file, a, w)) return std::move(*g);
    }
    GradedAlgebra g(a, w, opts);
    if (cache_dir) {
        std::error_code ec;
        std::filesystem::create_directories(*cache_dir, ec);
        if (!ec) {
            try {
                save_algebra(g, cache_path(*cache_dir, a, w));
            } catch (const std::exception&) {
                // best effort; the cache is an optimization only
            }
        }
    }
    return g;
}

} // namespace hkm2
