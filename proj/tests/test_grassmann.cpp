#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chs/grassmann.hpp"

using namespace chs;

namespace {

GrassmannNumber random_grassmann(std::mt19937_64& rng, int gens, bool nonzero_body = false) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    GrassmannNumber x(gens);
    for (uint32_t mask = 0; mask < (1u << gens); ++mask) {
        if (rng() % 3 == 0) x.set_coeff_mask(mask, Rational(num(rng), den(rng)));
    }
    if (nonzero_body && x.body() == 0) x.set_coeff_mask(0, Rational(num(rng) * 2 + 1));
    return x;
}

}  // namespace

TEST_CASE("basis products and anticommutation") {
    int n = 4;
    auto z1 = GrassmannNumber::generator(n, 1);
    auto z2 = GrassmannNumber::generator(n, 2);
    CHECK(z1 * z2 == GrassmannNumber::monomial(n, {1, 2}, 1));
    CHECK(z2 * z1 == GrassmannNumber::monomial(n, {1, 2}, -1));
    CHECK((z1 * z1).is_zero());
    // (1 + z1 z2)(1 - z1 z2) = 1
    GrassmannNumber one(n, 1);
    auto s = GrassmannNumber::monomial(n, {1, 2}, 1);
    CHECK((one + s) * (one - s) == one);
}

TEST_CASE("inverse via nilpotent series") {
    int n = 4;
    GrassmannNumber one(n, 1);
    auto s = GrassmannNumber::monomial(n, {1, 2}, 1);
    CHECK((one + s).inverse() == one - s);
    CHECK(GrassmannNumber(n, 2).inverse() == GrassmannNumber(n, Rational(1, 2)));
    CHECK_THROWS_AS(GrassmannNumber::generator(n, 1).inverse(), ZeroBodyError);
    CHECK_THROWS_AS(GrassmannNumber(n).inverse(), ZeroBodyError);
}

TEST_CASE("body and soul split") {
    int n = 4;
    GrassmannNumber x(n, 3);
    x.set_coeff_mask(0b0001, 2);
    x.set_coeff_mask(0b0011, 5);
    auto [b, s] = x.body_soul_split();
    CHECK(b == GrassmannNumber(n, 3));
    CHECK(b + s == x);
    CHECK(s.body() == 0);
    auto [zb, zs] = GrassmannNumber(n).body_soul_split();
    CHECK(zb.is_zero());
    CHECK(zs.is_zero());
}

TEST_CASE("coefficient extraction") {
    int n = 4;
    GrassmannNumber x(n, 3);
    x.set_coeff_mask(0b0011, 5);
    CHECK(x.coeff({1, 2}) == 5);
    CHECK(x.coeff({}) == 3);
    CHECK(GrassmannNumber::generator(n, 2).coeff({1}) == 0);
    CHECK_THROWS(x.coeff({9}));
}

TEST_CASE("parity detection") {
    int n = 4;
    CHECK(GrassmannNumber(n, 2).parity() == Parity::Even);
    CHECK(GrassmannNumber::generator(n, 3).parity() == Parity::Odd);
    auto mixed = GrassmannNumber(n, 1) + GrassmannNumber::generator(n, 1);
    CHECK(!mixed.parity().has_value());
}

TEST_CASE("associativity and distributivity on random triples") {
    std::mt19937_64 rng(12345);
    for (int it = 0; it < 200; ++it) {
        int gens = 3 + static_cast<int>(rng() % 2);
        auto a = random_grassmann(rng, gens);
        auto b = random_grassmann(rng, gens);
        auto c = random_grassmann(rng, gens);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) * c == a * c + b * c);
    }
}

TEST_CASE("inverse round trip on random invertible elements") {
    std::mt19937_64 rng(777);
    for (int it = 0; it < 100; ++it) {
        int gens = 4;
        auto x = random_grassmann(rng, gens, true);
        CHECK(x * x.inverse() == GrassmannNumber(gens, 1));
        CHECK(x.inverse() * x == GrassmannNumber(gens, 1));
    }
}

TEST_CASE("conjugation reverses products") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 100; ++it) {
        auto a = random_grassmann(rng, 4);
        auto b = random_grassmann(rng, 4);
        CHECK((a * b).conjugate() == b.conjugate() * a.conjugate());
        CHECK(a.conjugate().conjugate() == a);
    }
}
