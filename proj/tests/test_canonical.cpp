#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <random>

#include "chs/canonical.hpp"

using namespace chs;

namespace {

GrassmannNumber random_entry(std::mt19937_64& rng, int gens, Parity want) {
    std::uniform_int_distribution<int> num(-4, 4);
    GrassmannNumber x(gens);
    for (uint32_t mask = 0; mask < (1u << gens); ++mask) {
        Parity p = (std::popcount(mask) & 1) ? Parity::Odd : Parity::Even;
        if (p != want) continue;
        if (rng() % 3 == 0) x.set_coeff_mask(mask, Rational(num(rng)));
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

// Random graded-antisymmetric square matrix over a mixed parity list.
SuperMatrix random_graded_antisym(std::mt19937_64& rng, const std::vector<Parity>& par, int gens) {
    SuperMatrix m(par, par, gens);
    int n = static_cast<int>(par.size());
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            int pa = static_cast<int>(par[a]), pb = static_cast<int>(par[b]);
            if (a == b) {
                if (pa == 1) m.set(a, a, random_entry(rng, gens, Parity::Even));
                continue;  // even diagonal must vanish
            }
            auto x = random_entry(rng, gens, par[a] + par[b]);
            m.set(a, b, x);
            int sign = ((pa * pb) & 1) ? 1 : -1;
            m.set(b, a, x * Rational(sign));
        }
    return m;
}

bool invertible(const SuperMatrix& m) {
    try {
        smat_inverse(m);
        return true;
    } catch (const Error&) {
        return false;
    }
}

void check_result(const SuperMatrix& input, const CanonicalFormResult& r) {
    CHECK(r.left * input * r.right == r.canonical);
    CHECK(invertible(r.left));
    CHECK(invertible(r.right));
}

}  // namespace

TEST_CASE("bosonic canonical form: rank-1 body") {
    auto m = SuperMatrix::from_rationals(2, {2, 4, 1, 2}, 2);
    auto r = canonical_form_generic(m);
    check_result(m, r);
    CHECK(r.rank_data.at("k") == 1);
    CHECK(r.canonical.at(0, 0).body() != 0);
    CHECK(r.canonical.at(0, 1).is_zero());
    CHECK(r.canonical.at(1, 0).is_zero());
    CHECK(r.canonical.at(1, 1).body() == 0);
}

TEST_CASE("identity is its own canonical form") {
    std::vector<Parity> par = {Parity::Even, Parity::Even};
    auto one = SuperMatrix::identity(par, 2);
    auto r = canonical_form_generic(one);
    CHECK(r.canonical == one);
    CHECK(r.left == one);
    CHECK(r.right == one);
    CHECK(r.rank_data.at("k") == 2);
}

TEST_CASE("generic supermatrix canonical form with odd couplings") {
    std::vector<Parity> par = {Parity::Even, Parity::Odd};
    SuperMatrix m(par, par, 2);
    m.set(0, 1, GrassmannNumber::generator(2, 1));
    m.set(1, 0, GrassmannNumber::generator(2, 2));
    m.set(1, 1, GrassmannNumber(2, 3));
    auto r = canonical_form_generic(m);
    check_result(m, r);
    CHECK(r.rank_data.at("k1") == 0);
    CHECK(r.rank_data.at("k2") == 1);
}

TEST_CASE("generic canonical form on random supermatrices") {
    std::mt19937_64 rng(404);
    for (int it = 0; it < 60; ++it) {
        int ne = 1 + static_cast<int>(rng() % 3), no = 1 + static_cast<int>(rng() % 3);
        std::vector<Parity> rp(ne, Parity::Even), cp(ne + 1, Parity::Even);
        rp.insert(rp.end(), no, Parity::Odd);
        cp.insert(cp.end(), no, Parity::Odd);
        auto m = random_supermatrix(rng, rp, cp, 3);
        auto r = canonical_form_generic(m);
        check_result(m, r);
        // pivot rows/cols carry exactly a unit entry; the rest is soul or odd
        int k1 = r.rank_data.at("k1"), k2 = r.rank_data.at("k2");
        for (int i = 0; i < k1; ++i) CHECK(r.canonical.at(i, i) == GrassmannNumber(3, 1));
        int odd_row0 = ne, odd_col0 = ne + 1;
        for (int i = 0; i < k2; ++i)
            CHECK(r.canonical.at(odd_row0 + i, odd_col0 + i) == GrassmannNumber(3, 1));
        for (int i = k1; i < r.canonical.rows(); ++i)
            for (int j = k1; j < r.canonical.cols(); ++j) {
                bool pivot_row = i >= odd_row0 && i < odd_row0 + k2;
                bool pivot_col = j >= odd_col0 && j < odd_col0 + k2;
                if (pivot_row || pivot_col) {
                    if (!(pivot_row && pivot_col && i - odd_row0 == j - odd_col0))
                        CHECK(r.canonical.at(i, j).is_zero());
                } else {
                    CHECK(r.canonical.at(i, j).body() == 0);
                }
            }
    }
}

TEST_CASE("desoul removes the soul exactly") {
    // A = (1 + z1 z2) * [[0,1],[-1,0]]
    std::vector<Parity> par = {Parity::Even, Parity::Even};
    SuperMatrix a(par, par, 2);
    auto dress = GrassmannNumber(2, 1) + GrassmannNumber::monomial(2, {1, 2}, 1);
    a.set(0, 1, dress);
    a.set(1, 0, -dress);
    auto r = desoul(a);
    check_result(a, r);
    CHECK(r.canonical == SuperMatrix::from_rationals(2, {0, 1, -1, 0}, 2));
    // P = (1 - 1/2 z1 z2) * 1
    auto expectP = GrassmannNumber(2, 1) - GrassmannNumber::monomial(2, {1, 2}, Rational(1, 2));
    CHECK(r.left.at(0, 0) == expectP);
    CHECK(r.left.at(1, 1) == expectP);

    // zero soul -> P = 1
    auto b = SuperMatrix::from_rationals(2, {0, 1, -1, 0}, 2);
    auto rb = desoul(b);
    CHECK(rb.left == SuperMatrix::identity(par, 2));

    // symmetric case
    SuperMatrix c(par, par, 2);
    c.set(0, 0, dress * Rational(2));
    c.set(1, 1, dress * Rational(2));
    auto rc = desoul(c);
    check_result(c, rc);
    CHECK(rc.canonical == SuperMatrix::from_rationals(2, {2, 0, 0, 2}, 2));
}

TEST_CASE("desoul on random dressed (anti)symmetric matrices") {
    std::mt19937_64 rng(606);
    for (int it = 0; it < 40; ++it) {
        int n = 2 + static_cast<int>(rng() % 2);
        bool antisym = rng() % 2;
        std::vector<Parity> par(n, Parity::Even);
        SuperMatrix a(par, par, 3);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                auto x = random_entry(rng, 3, Parity::Even);
                if (antisym && i == j) continue;
                a.set(i, j, x);
                a.set(j, i, antisym ? -x : x);
            }
        // ensure a body-invertible matrix
        for (int i = 0; i + 1 < n; i += 2) {
            if (antisym) {
                a.set(i, i + 1, a.at(i, i + 1) + GrassmannNumber(3, 7));
                a.set(i + 1, i, a.at(i + 1, i) - GrassmannNumber(3, 7));
            }
        }
        if (!antisym)
            for (int i = 0; i < n; ++i) a.set(i, i, a.at(i, i) + GrassmannNumber(3, 9));
        if (antisym && (n % 2)) continue;  // odd antisymmetric is singular
        if (!invertible(a)) continue;
        auto r = desoul(a);
        check_result(a, r);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) CHECK(r.canonical.at(i, j).soul().is_zero());
    }
}

TEST_CASE("antisym canonical form") {
    auto m = SuperMatrix::from_rationals(2, {0, 1, -1, 0}, 2);
    auto r = canonical_form_antisym(m);
    CHECK(r.canonical == m);
    CHECK(r.left == SuperMatrix::identity(m.row_parities(), 2));
    CHECK(r.rank_data.at("k") == 2);

    auto z = SuperMatrix::from_rationals(2, {0, 0, 0, 0}, 2);
    auto rz = canonical_form_antisym(z);
    CHECK(rz.rank_data.at("k") == 0);
    CHECK(rz.canonical == z);

    // padded matrix with a soul block outside the symplectic pair
    SuperMatrix p = SuperMatrix::from_rationals(3, {0, 1, 0, -1, 0, 0, 0, 0, 0}, 2);
    auto rp = canonical_form_antisym(p);
    check_result(p, rp);
    CHECK(rp.rank_data.at("k") == 2);
    CHECK(rp.canonical.at(0, 1) == GrassmannNumber(2, 1));
    CHECK(rp.canonical.at(1, 0) == GrassmannNumber(2, -1));
    CHECK(rp.canonical.at(2, 2).is_zero());
}

TEST_CASE("antisym/symmetric canonical forms on random even matrices") {
    std::mt19937_64 rng(808);
    for (int it = 0; it < 60; ++it) {
        int n = 2 + static_cast<int>(rng() % 3);
        bool antisym = rng() % 2;
        std::vector<Parity> par(n, Parity::Even);
        SuperMatrix a(par, par, 3);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                if (antisym && i == j) continue;
                auto x = random_entry(rng, 3, Parity::Even);
                a.set(i, j, x);
                a.set(j, i, antisym ? -x : x);
            }
        auto r = canonical_form_antisym(a);
        check_result(a, r);
        int k = r.rank_data.at("k");
        // b block pure body and invertible, s block pure soul, no coupling
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i < k && j < k)
                    CHECK(r.canonical.at(i, j).soul().is_zero());
                else if (i >= k && j >= k)
                    CHECK(r.canonical.at(i, j).body() == 0);
                else
                    CHECK(r.canonical.at(i, j).is_zero());
            }
        if (k > 0) {
            std::vector<Parity> bp(k, Parity::Even);
            SuperMatrix b(bp, bp, 3);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) b.set(i, j, r.canonical.at(i, j));
            CHECK(invertible(b));
        }
    }
}

TEST_CASE("graded antisymmetric canonical form (Fact 8)") {
    // one second-class pair
    auto m = SuperMatrix::from_rationals(2, {0, 1, -1, 0}, 2);
    auto r = canonical_form_antihermitian(m);
    CHECK(r.canonical == m);
    CHECK(r.rank_data.at("kminus") == 2);
    CHECK(r.rank_data.at("kplus") == 0);

    std::vector<Parity> par2 = {Parity::Even, Parity::Even};
    SuperMatrix z(par2, par2, 2);
    auto rz = canonical_form_antihermitian(z);
    CHECK(rz.rank_data.at("kminus") == 0);
    CHECK(rz.canonical.is_zero());
}

TEST_CASE("fact 8 on random graded antisymmetric supermatrices") {
    std::mt19937_64 rng(909);
    for (int it = 0; it < 60; ++it) {
        int ne = 1 + static_cast<int>(rng() % 3), no = 1 + static_cast<int>(rng() % 2);
        std::vector<Parity> par(ne, Parity::Even);
        par.insert(par.end(), no, Parity::Odd);
        auto m = random_graded_antisym(rng, par, 3);
        auto r = canonical_form_antihermitian(m);
        check_result(m, r);
        CHECK(is_graded_antisymmetric(r.canonical));
        int km = r.rank_data.at("kminus"), kp = r.rank_data.at("kplus");
        // block layout [b- | s- | b+ | s+]
        int s0 = km, b1 = ne, s1 = ne + kp;
        int n = static_cast<int>(par.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                bool i_piv = (i < km) || (i >= b1 && i < s1);
                bool j_piv = (j < km) || (j >= b1 && j < s1);
                bool same_block = (i < km && j < km) || (i >= b1 && i < s1 && j >= b1 && j < s1);
                if (same_block) {
                    CHECK(r.canonical.at(i, j).soul().is_zero());
                } else if (i_piv || j_piv) {
                    CHECK(r.canonical.at(i, j).is_zero());
                } else {
                    CHECK(r.canonical.at(i, j).body() == 0);
                }
            }
        (void)s0;
    }
}

TEST_CASE("fact1 graded Gram-Schmidt") {
    std::mt19937_64 rng(1111);
    for (int it = 0; it < 40; ++it) {
        int n = 2 + static_cast<int>(rng() % 2), m = 2 + static_cast<int>(rng() % 3);
        std::vector<Parity> rp(n, Parity::Even), cp(m, Parity::Even);
        auto mat = random_supermatrix(rng, rp, cp, 3);
        auto [q, mq] = fact1_orthogonalize(mat);
        CHECK(mat * q == mq);
        CHECK(invertible(q));
        // count body columns, verify orthogonality and soul tail
        int k = 0;
        for (int c = 0; c < m; ++c) {
            bool body = false;
            for (int r = 0; r < n; ++r)
                if (mq.at(r, c).body() != 0) body = true;
            if (body) {
                CHECK(c == k);  // body columns come first
                ++k;
            }
        }
        for (int c1 = 0; c1 < k; ++c1)
            for (int c2 = 0; c2 < k; ++c2) {
                if (c1 == c2) continue;
                GrassmannNumber dot(3);
                for (int r = 0; r < n; ++r)
                    dot = dot + mq.at(r, c1).conjugate() * mq.at(r, c2);
                CHECK(dot.is_zero());
            }
    }
}
