#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <random>

#include "chs/supermatrix.hpp"

using namespace chs;

namespace {

// Random parity-consistent entry for position (r,c).
GrassmannNumber random_entry(std::mt19937_64& rng, int gens, Parity want) {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    GrassmannNumber x(gens);
    for (uint32_t mask = 0; mask < (1u << gens); ++mask) {
        Parity p = (std::popcount(mask) & 1) ? Parity::Odd : Parity::Even;
        if (p != want) continue;
        if (rng() % 3 == 0) x.set_coeff_mask(mask, Rational(num(rng), den(rng)));
    }
    return x;
}

SuperMatrix random_supermatrix(std::mt19937_64& rng, const std::vector<Parity>& rp,
                               const std::vector<Parity>& cp, int gens) {
    SuperMatrix m(rp, cp, gens);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m.set(i, j, random_entry(rng, gens, rp[i] + cp[j]));
    return m;
}

SuperMatrix random_invertible(std::mt19937_64& rng, int ne, int no, int gens) {
    std::vector<Parity> par(ne, Parity::Even);
    par.insert(par.end(), no, Parity::Odd);
    for (;;) {
        SuperMatrix m = random_supermatrix(rng, par, par, gens);
        try {
            // Lean on the singularity check inside sdet.
            superdeterminant(m);
            return m;
        } catch (const SingularBodyError&) {
            continue;
        }
    }
}

}  // namespace

TEST_CASE("parity consistency is enforced") {
    std::vector<Parity> par = {Parity::Even, Parity::Odd};
    SuperMatrix m(par, par, 2);
    CHECK_NOTHROW(m.set(0, 0, GrassmannNumber(2, 3)));
    CHECK_NOTHROW(m.set(0, 1, GrassmannNumber::generator(2, 1)));
    CHECK_THROWS_AS(m.set(0, 1, GrassmannNumber(2, 3)), ParityError);
    CHECK_THROWS_AS(m.set(1, 1, GrassmannNumber::generator(2, 1)), ParityError);
    auto mixed = GrassmannNumber(2, 1) + GrassmannNumber::generator(2, 1);
    CHECK_THROWS_AS(m.set(0, 0, mixed), ParityError);
}

TEST_CASE("supertrace of diagonal blocks") {
    std::vector<Parity> par = {Parity::Even, Parity::Odd};
    SuperMatrix m(par, par, 0);
    m.set(0, 0, GrassmannNumber(0, 3));
    m.set(1, 1, GrassmannNumber(0, 5));
    CHECK(supertrace(m) == GrassmannNumber(0, -2));
}

TEST_CASE("sdet on block-diagonal and soul-dressed matrices") {
    std::vector<Parity> par = {Parity::Even, Parity::Odd};
    SuperMatrix m(par, par, 2);
    m.set(0, 0, GrassmannNumber(2, 2));
    m.set(1, 1, GrassmannNumber(2, 4));
    CHECK(superdeterminant(m) == GrassmannNumber(2, Rational(1, 2)));

    // A=[2], Psi=[z1], Theta=[z2], B=[1] -> sdet = 2 - z1 z2
    SuperMatrix n(par, par, 2);
    n.set(0, 0, GrassmannNumber(2, 2));
    n.set(0, 1, GrassmannNumber::generator(2, 1));
    n.set(1, 0, GrassmannNumber::generator(2, 2));
    n.set(1, 1, GrassmannNumber(2, 1));
    auto expect = GrassmannNumber(2, 2) - GrassmannNumber::monomial(2, {1, 2}, 1);
    CHECK(superdeterminant(n) == expect);

    // multiply-and-check the block inverse on the same matrix
    auto ninv = smat_inverse(n);
    CHECK((n * ninv).is_identity());
    CHECK((ninv * n).is_identity());
}

TEST_CASE("transpose identities") {
    std::mt19937_64 rng(99);
    std::vector<Parity> par = {Parity::Even, Parity::Even, Parity::Odd};
    for (int it = 0; it < 50; ++it) {
        auto m = random_supermatrix(rng, par, par, 3);
        auto t2 = smat_transpose(smat_transpose(m));
        // transpose^2 fixes even blocks and negates odd blocks
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                if (par[i] == par[j])
                    CHECK(t2.at(i, j) == m.at(i, j));
                else
                    CHECK(t2.at(i, j) == m.at(i, j) * Rational(-1));
            }
        auto t4 = smat_transpose(smat_transpose(t2));
        CHECK(t4 == m);
        CHECK(smat_dagger(smat_dagger(m)) == m);
    }
}

TEST_CASE("dagger reverses products") {
    std::mt19937_64 rng(7);
    std::vector<Parity> par = {Parity::Even, Parity::Odd, Parity::Odd};
    for (int it = 0; it < 30; ++it) {
        auto a = random_supermatrix(rng, par, par, 3);
        auto b = random_supermatrix(rng, par, par, 3);
        CHECK(smat_dagger(a * b) == smat_dagger(b) * smat_dagger(a));
        CHECK(smat_transpose(a * b) == smat_transpose(b) * smat_transpose(a));
        CHECK(smat_conjugate(a * b) == smat_conjugate(a) * smat_conjugate(b));
    }
}

TEST_CASE("str cyclicity and sdet multiplicativity") {
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 40; ++it) {
        auto a = random_invertible(rng, 2, 1, 3);
        auto b = random_invertible(rng, 2, 1, 3);
        CHECK(supertrace(a * b) == supertrace(b * a));
        CHECK(superdeterminant(a * b) == superdeterminant(a) * superdeterminant(b));
    }
}

TEST_CASE("inverse round trip incl nilpotent series") {
    std::mt19937_64 rng(5150);
    for (int it = 0; it < 30; ++it) {
        auto m = random_invertible(rng, 2, 2, 3);
        auto minv = smat_inverse(m);
        CHECK((m * minv).is_identity());
        CHECK((minv * m).is_identity());
    }
    // identity + strictly-soul matrix
    std::vector<Parity> par = {Parity::Even, Parity::Even};
    SuperMatrix s(par, par, 2);
    s.set(0, 1, GrassmannNumber::monomial(2, {1, 2}, 3));
    auto one = SuperMatrix::identity(par, 2);
    auto inv = smat_inverse(one + s);
    CHECK(inv == one - s);  // s^2 = 0 here
}

TEST_CASE("sdet singular block error") {
    std::vector<Parity> par = {Parity::Even, Parity::Odd};
    SuperMatrix m(par, par, 2);
    m.set(1, 1, GrassmannNumber(2, 1));
    CHECK_THROWS_AS(superdeterminant(m), SingularBodyError);
    CHECK_THROWS_AS(smat_inverse(m), SingularBodyError);
}
