#include "hkm2/quad_scalar.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using hkm2::Int;
using hkm2::QuadScalar;
using hkm2::Rational;

static Rational rat(long n, long d = 1) { return Rational(Int(n), Int(d)); }

TEST_CASE("norm form and identities") {
    QuadScalar x(rat(1), rat(1), rat(2));   // 1 + sqrt(2)
    QuadScalar y(rat(1), rat(-1), rat(2));  // 1 - sqrt(2)
    CHECK(x * y == QuadScalar(rat(-1)));
    CHECK(x + QuadScalar(rat(0)) == x);
    CHECK(x - x == QuadScalar(rat(0)));
}

TEST_CASE("|c0|^2 reproduces 2/(B-2)") {
    // c0 = sqrt(2/(B-2)) for B = 18, stored with radicand 2(B-2) = 32:
    // sqrt(2/16) = sqrt(32)/16.
    Rational B = rat(18);
    Rational r = rat(2) * (B - rat(2));
    QuadScalar c0(rat(0), (B - rat(2)).reciprocal(), r);
    QuadScalar sq = c0 * c0;
    CHECK(sq.is_rational());
    CHECK(sq.as_rational() == rat(2) / (B - rat(2)));
    CHECK(sq.as_rational() == rat(1, 8));
    // Same value expressed directly as sqrt(2/(B-2)).
    CHECK(QuadScalar::sqrt_of(rat(2) / (B - rat(2))) * QuadScalar::sqrt_of(rat(2, 16)) ==
          sq);
}

TEST_CASE("perfect-square radicands normalize to rationals") {
    CHECK(QuadScalar::sqrt_of(rat(9, 4)) == QuadScalar(rat(3, 2)));
    CHECK(QuadScalar::sqrt_of(rat(0)) == QuadScalar(rat(0)));
    CHECK(QuadScalar(rat(1), rat(2), rat(25)).is_rational());
    CHECK(QuadScalar(rat(1), rat(2), rat(25)).as_rational() == rat(11));
}

TEST_CASE("radicand mismatch is an error, pure rationals are compatible") {
    QuadScalar s2 = QuadScalar::sqrt_of(rat(2));
    QuadScalar s3 = QuadScalar::sqrt_of(rat(3));
    CHECK_THROWS_AS(s2 + s3, hkm2::RadicandMismatch);
    CHECK_THROWS_AS(s2 * s3, hkm2::RadicandMismatch);
    CHECK(s2 * QuadScalar(rat(2)) == QuadScalar(rat(0), rat(2), rat(2)));
    CHECK(QuadScalar(rat(5)) + s2 == QuadScalar(rat(5), rat(1), rat(2)));
}

TEST_CASE("field axioms on random samples in Q(sqrt(2))") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> coef(-9, 9);
    auto rnd = [&] { return QuadScalar(rat(coef(rng)), rat(coef(rng)), rat(2)); };
    for (int t = 0; t < 400; ++t) {
        QuadScalar x = rnd(), y = rnd(), z = rnd();
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        if (!x.is_zero()) CHECK(x / x == QuadScalar(rat(1)));
        CHECK(x.galois_conj().galois_conj() == x);
        CHECK((x * y).galois_conj() == x.galois_conj() * y.galois_conj());
    }
}

TEST_CASE("exact sign") {
    QuadScalar s2 = QuadScalar::sqrt_of(rat(2));
    CHECK((s2 - QuadScalar(rat(1))).sign() == 1);
    CHECK((QuadScalar(rat(1)) - s2).sign() == -1);
    CHECK((s2 - QuadScalar(rat(3, 2))).sign() == -1);
    CHECK((QuadScalar(rat(3)) - s2).sign() == 1);
    CHECK((-s2).sign() == -1);
    CHECK(QuadScalar(rat(0)).sign() == 0);
    CHECK(QuadScalar(rat(1)) < s2);
}

TEST_CASE("decimal rendering of irrational values") {
    QuadScalar s2 = QuadScalar::sqrt_of(rat(2));
    CHECK(s2.to_decimal(6) == "1.414214");
    CHECK((-s2).to_decimal(6) == "-1.414214");
    CHECK((QuadScalar(rat(1)) + s2).to_decimal(6) == "2.414214");
    CHECK(QuadScalar(rat(-9, 5)).to_decimal(6) == "-1.800000");
    CHECK(QuadScalar::sqrt_of(rat(1, 8)).to_decimal(6) == "0.353553");
}
