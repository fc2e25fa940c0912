#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "maxalg/matrix.hpp"

using namespace maxalg;
using testutil::M;
using testutil::R;
using testutil::V;

TEST_CASE("rational parsing is exact") {
    CHECK(R("0.72") == Rat(18, 25));
    CHECK(R("18/25") == Rat(18, 25));
    CHECK(R("4") == Rat(4));
    CHECK(R("1e-12") == Rat(1, 1'000'000'000'000L));
    CHECK(R("2.5e3") == Rat(2500));
    CHECK(R("0.72").str() == "18/25");
    CHECK(R("4").str() == "4");
    CHECK_THROWS_AS(R("-1"), error);
    CHECK_THROWS_AS(R("1/0"), error);
    CHECK_THROWS_AS(R("abc"), error);
    CHECK_THROWS_AS(R(""), error);
    CHECK_THROWS_AS(R("1.2.3"), error);
    CHECK_THROWS_AS(Rat(-3), error);
}

TEST_CASE("rational arithmetic") {
    CHECK(R("1/3") + R("1/6") == R("1/2"));
    CHECK(R("2/3") * R("9/4") == R("3/2"));
    CHECK(R("3") / R("4") == R("3/4"));
    CHECK_THROWS_AS(R("1") / R("0"), error);
    CHECK(abs_diff(R("1/3"), R("1/2")) == R("1/6"));
    CHECK(abs_diff(R("1/2"), R("1/3")) == R("1/6"));
}

TEST_CASE("root values compare by cross-powering") {
    // (8,3) and (4,2) are both 2
    CHECK(Root<Rat>(R("8"), 3).cmp(Root<Rat>(R("4"), 2)) == 0);
    // 27^(1/3) = 3 < 5 = 25^(1/2)
    CHECK(Root<Rat>(R("27"), 3).cmp(Root<Rat>(R("25"), 2)) < 0);
    // (w, l) ~ (w^2, 2l)
    const Root<Rat> a(R("12/5"), 3);
    CHECK(a.cmp(Root<Rat>(R("12/5") * R("12/5"), 6)) == 0);
    // canonicalization reduces perfect powers
    CHECK(Root<Rat>(R("16"), 2).is_scalar());
    CHECK(Root<Rat>(R("16"), 2).base == Rat(4));
    CHECK(Root<Rat>(R("3"), 2).deg == 2);
}

TEST_CASE("root order is total and agrees with floats") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(0, 20), deg(1, 6);
    for (int it = 0; it < 500; ++it) {
        const Root<Rat> x(Rat(num(rng), 1 + num(rng) % 5 ), static_cast<unsigned long>(deg(rng)));
        const Root<Rat> y(Rat(num(rng), 1 + num(rng) % 5), static_cast<unsigned long>(deg(rng)));
        const int c = x.cmp(y);
        CHECK(c == -y.cmp(x));
        const double fx = x.to_double(), fy = y.to_double();
        if (std::abs(fx - fy) > 1e-9 * (1 + std::abs(fx)))
            CHECK(c == (fx < fy ? -1 : 1));
    }
}

TEST_CASE("oplus") {
    CHECK(oplus(M({{"3", "0"}, {"0", "1"}}), M({{"2", "3"}, {"0", "2"}})) ==
          M({{"3", "3"}, {"0", "2"}}));
    const Mat<Rat> a = M({{"1", "2"}, {"3", "4"}});
    CHECK(oplus(a, a) == a);
    // the pointwise sum of the four pool matrices of the worked example
    const Mat<Rat> sum = oplus(
        oplus(M({{"3", "0", "2"}, {"0", "1", "0"}, {"0", "2", "4"}}),
              M({{"2", "3", "1"}, {"0", "2", "0"}, {"0", "1", "3"}})),
        oplus(M({{"1", "2", "3"}, {"0", "0", "0"}, {"0", "1", "2"}}),
              M({{"4", "1", "0"}, {"0", "1", "0"}, {"0", "3", "2"}})));
    CHECK(sum == M({{"4", "3", "3"}, {"0", "2", "0"}, {"0", "3", "4"}}));
    CHECK_THROWS_AS(oplus(a, Mat<Rat>::identity(3)), shape_error);
}

TEST_CASE("otimes") {
    CHECK(otimes(M({{"2", "3"}, {"1", "0"}}), M({{"1", "0"}, {"2", "4"}})) ==
          M({{"6", "12"}, {"1", "0"}}));
    const Mat<Rat> a = M({{"1", "2"}, {"3", "4"}});
    CHECK(otimes(Mat<Rat>::identity(2), a) == a);
    CHECK(otimes(a, Mat<Rat>::identity(2)) == a);
    // matrix-vector: the first block of the switched example fixes (1,1)
    const Mat<Rat> a1 = M({{"1", "1/2", "0", "0"},
                           {"3/10", "1", "0", "0"},
                           {"0", "0", "9/10", "7/10"},
                           {"0", "0", "1/2", "9/10"}});
    CHECK(otimes(a1, V({"1", "1", "0", "0"})) == V({"1", "1", "0", "0"}));
    CHECK_THROWS_AS(otimes(a, Mat<Rat>(3, 2)), shape_error);
}

TEST_CASE("mat_power") {
    const Mat<Rat> a = M({{"0", "2"}, {"8", "0"}});
    CHECK(mat_power(a, 0) == Mat<Rat>::identity(2));
    CHECK(mat_power(a, 2) == M({{"16", "0"}, {"0", "16"}}));
    CHECK(mat_power(M({{"0", "1"}, {"1", "0"}}), 2) == Mat<Rat>::identity(2));
    CHECK(mat_power(a, 5) == otimes(a, otimes(a, otimes(a, otimes(a, a)))));
    CHECK_THROWS_AS(mat_power(Mat<Rat>(2, 3), 2), shape_error);
}

TEST_CASE("scalar_scale") {
    const Mat<Rat> a = M({{"1", "3"}, {"0", "2"}});
    CHECK(scalar_scale(R("2"), a) == M({{"2", "6"}, {"0", "4"}}));
    CHECK(scalar_scale(R("1"), a) == a);
    CHECK(scalar_scale(R("0"), a) == Mat<Rat>::zeros(2, 2));
}

TEST_CASE("permute_similarity") {
    const Mat<Rat> a01 = M({{"3", "0", "2"}, {"0", "1", "0"}, {"0", "2", "4"}});
    const Perm swap23({0, 2, 1});
    CHECK(permute_similarity(a01, swap23) ==
          M({{"3", "2", "0"}, {"0", "4", "2"}, {"0", "0", "1"}}));
    CHECK(permute_similarity(a01, Perm::identity(3)) == a01);
    CHECK(permute_similarity(permute_similarity(a01, swap23), swap23.inverse()) == a01);
    CHECK_THROWS_AS(permute_similarity(a01, Perm::identity(2)), shape_error);
}

TEST_CASE("permutation matrices realize the similarity") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 20; ++it) {
        const Mat<Rat> a = testutil::rand_matrix(rng, 4);
        const Perm s = testutil::rand_perm(rng, 4);
        const Mat<Rat> p = perm_matrix<Rat>(s);
        const Mat<Rat> via_matrices =
            otimes(otimes(perm_matrix<Rat>(s.inverse()), a), p);
        CHECK(via_matrices == permute_similarity(a, s));
        CHECK(is_generalized_permutation(p));
    }
}

TEST_CASE("is_generalized_permutation") {
    CHECK(is_generalized_permutation(M({{"0", "2"}, {"5", "0"}})));
    CHECK(is_generalized_permutation(Mat<Rat>::identity(3)));
    CHECK_FALSE(is_generalized_permutation(M({{"1", "1"}, {"0", "1"}})));
    CHECK_FALSE(is_generalized_permutation(Mat<Rat>::zeros(2, 2)));
}

TEST_CASE("semiring properties on random exact matrices") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 40; ++it) {
        const Mat<Rat> a = testutil::rand_matrix(rng, 4);
        const Mat<Rat> b = testutil::rand_matrix(rng, 4);
        const Mat<Rat> c = testutil::rand_matrix(rng, 4);
        CHECK(otimes(otimes(a, b), c) == otimes(a, otimes(b, c)));
        CHECK(otimes(a, oplus(b, c)) == oplus(otimes(a, b), otimes(a, c)));
        CHECK(oplus(oplus(a, b), c) == oplus(a, oplus(b, c)));
        CHECK(oplus(a, b) == oplus(b, a));
        // monotonicity: enlarging both factors enlarges the product
        const Mat<Rat> a2 = oplus(a, testutil::rand_matrix(rng, 4));
        const Mat<Rat> b2 = oplus(b, testutil::rand_matrix(rng, 4));
        CHECK(entrywise_leq(otimes(a, b), otimes(a2, b2)));
        // permutation similarity is an automorphism
        const Perm s = testutil::rand_perm(rng, 4);
        CHECK(permute_similarity(otimes(a, b), s) ==
              otimes(permute_similarity(a, s), permute_similarity(b, s)));
    }
}
