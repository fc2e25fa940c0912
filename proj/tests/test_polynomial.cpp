#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "maxalg/polynomial.hpp"

using namespace maxalg;
using testutil::M;
using testutil::R;
using testutil::V;

namespace {

const Mat<Rat> kA01 = M({{"3", "0", "2"}, {"0", "1", "0"}, {"0", "2", "4"}});
const Mat<Rat> kA11 = M({{"2", "3", "1"}, {"0", "2", "0"}, {"0", "1", "3"}});
const Mat<Rat> kA02 = M({{"1", "2", "3"}, {"0", "0", "0"}, {"0", "1", "2"}});
const Mat<Rat> kA12 = M({{"4", "1", "0"}, {"0", "1", "0"}, {"0", "3", "2"}});

Poly<Rat> scalar_poly(std::vector<const char*> coeffs) {
    std::vector<Mat<Rat>> mats;
    for (const char* c : coeffs) mats.push_back(M({{c}}));
    return Poly<Rat>(std::move(mats));
}

// float bisection oracle for the unique positive solution of
// max_j alpha_j k^j = k^m (the ratio to k^m is strictly decreasing)
double scalar_root_bisect(const std::vector<double>& alpha, std::size_t m) {
    auto excess = [&](double k) {
        double lhs = 0;
        for (std::size_t j = 0; j < alpha.size(); ++j)
            lhs = std::max(lhs, alpha[j] * std::pow(k, static_cast<double>(j)));
        return lhs - std::pow(k, static_cast<double>(m));
    };
    double lo = 1e-9, hi = 1.0;
    while (excess(hi) > 0) hi *= 2;
    for (int it = 0; it < 200; ++it) {
        const double mid = (lo + hi) / 2;
        (excess(mid) > 0 ? lo : hi) = mid;
    }
    return hi;
}

std::mt19937_64& rng() {
    static std::mt19937_64 r(61);
    return r;
}

Poly<Rat> rand_poly(std::size_t n, std::size_t m) {
    std::vector<Mat<Rat>> coeffs;
    for (std::size_t j = 0; j < m; ++j) coeffs.push_back(testutil::rand_matrix(rng(), n));
    return Poly<Rat>(std::move(coeffs));
}

}  // namespace

TEST_CASE("poly_eval") {
    const Poly<Rat> p1({kA01, kA11});
    CHECK(poly_eval(p1, R("0")) == kA01);
    CHECK(poly_eval(scalar_poly({"4", "1"}), R("2")) == M({{"4"}}));
    // the triangularized polynomial of the worked example at lambda = 3
    const Poly<Rat> p1t({M({{"3", "2", "0"}, {"0", "4", "2"}, {"0", "0", "1"}}),
                         M({{"2", "1", "3"}, {"0", "3", "1"}, {"0", "0", "2"}})});
    CHECK(poly_eval(p1t, R("3")) == M({{"6", "3", "9"}, {"0", "9", "3"}, {"0", "0", "6"}}));
}

TEST_CASE("poly_multiply") {
    // (1 (+) 2x)(3 (+) x) = 3 (+) 6x (+) 2x^2
    const Poly<Rat> prod = poly_multiply(scalar_poly({"1", "2"}), scalar_poly({"3", "1"}));
    REQUIRE(prod.m() == 3);
    CHECK(prod.coeff(0) == M({{"3"}}));
    CHECK(prod.coeff(1) == M({{"6"}}));
    CHECK(prod.coeff(2) == M({{"2"}}));

    const Poly<Rat> p = rand_poly(3, 2);
    const Poly<Rat> unit({Mat<Rat>::identity(3)});
    CHECK(poly_multiply(p, unit).coeffs() == p.coeffs());

    for (int it = 0; it < 20; ++it) {
        const Poly<Rat> a = rand_poly(3, 1 + it % 3), b = rand_poly(3, 1 + (it / 3) % 3);
        for (const char* l : {"0", "1", "2", "1/3"})
            CHECK(poly_eval(poly_multiply(a, b), R(l)) ==
                  otimes(poly_eval(a, R(l)), poly_eval(b, R(l))));
    }
}

TEST_CASE("companion matrix") {
    const Mat<Rat> c = companion(scalar_poly({"5", "7"}));
    CHECK(c == M({{"0", "1"}, {"5", "7"}}));
    CHECK(companion(Poly<Rat>({kA01})) == kA01);

    // irreducible coefficients make the companion irreducible
    for (int it = 0; it < 20; ++it) {
        std::vector<Mat<Rat>> coeffs;
        for (int j = 0; j < 2 + it % 2; ++j)
            coeffs.push_back(testutil::rand_irreducible(rng(), 3));
        CHECK(is_irreducible(companion(Poly<Rat>(std::move(coeffs)))));
    }
}

TEST_CASE("scalar spectra") {
    const auto s1 = scalar_poly_spectrum(std::vector<Rat>{R("4"), R("1")}, 2);
    REQUIRE(s1.size() == 1);
    CHECK(s1[0] == Root<Rat>(R("2"), 1));  // max(sqrt 4, 1) = 2 and 4 = 2^2

    const auto s2 = scalar_poly_spectrum(std::vector<Rat>{R("3"), R("0")}, 2);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0] == Root<Rat>(R("3"), 2));  // sqrt(3)

    const auto s3 = scalar_poly_spectrum(std::vector<Rat>{R("0"), R("2")}, 2);
    REQUIRE(s3.size() == 2);
    CHECK(s3[0] == Root<Rat>(R("2"), 1));
    CHECK(s3[1].is_zero());

    const auto s4 = scalar_poly_spectrum(std::vector<Rat>{R("0"), R("0")}, 2);
    REQUIRE(s4.size() == 1);
    CHECK(s4[0].is_zero());

    CHECK_THROWS_AS(scalar_poly_spectrum(std::vector<Rat>{R("1")}, 2), precondition_error);
}

TEST_CASE("scalar spectrum matches a bisection oracle") {
    std::uniform_int_distribution<long> num(0, 9), den(1, 3);
    for (int it = 0; it < 60; ++it) {
        const std::size_t m = 2 + it % 3;
        std::vector<Rat> alpha;
        std::vector<double> alpha_f;
        bool any = false;
        for (std::size_t j = 0; j < m; ++j) {
            alpha.push_back(Rat(num(rng()), den(rng())));
            alpha_f.push_back(alpha.back().to_double());
            any = any || !alpha.back().is_zero();
        }
        if (!any) continue;
        const auto sp = scalar_poly_spectrum(alpha, m);
        const double oracle = scalar_root_bisect(alpha_f, m);
        CHECK(std::abs(sp.front().to_double() - oracle) <= 1e-9 * (1 + oracle));
        // substitution holds exactly: alpha_j k^j <= k^m with equality attained
        for (std::size_t j = 0; j < m; ++j)
            if (!alpha[j].is_zero())
                CHECK(Root<Rat>(alpha[j], m - j).cmp(sp.front()) <= 0);
    }
}

TEST_CASE("poly_spectrum") {
    // n = 1: 0 (+) 2x with m = 2 has spectrum {2, 0}
    const PolySpectrum<Rat> s = poly_spectrum(scalar_poly({"0", "2"}));
    REQUIRE(s.roots.size() == 2);
    CHECK(s.roots[0].k == Root<Rat>(R("2"), 1));
    CHECK(s.roots[1].k.is_zero());

    // the first polynomial of the worked example: {3, 2}
    const PolySpectrum<Rat> sp = poly_spectrum(Poly<Rat>({kA01, kA11}));
    REQUIRE(sp.roots.size() == 2);
    CHECK(sp.roots[0].k == Root<Rat>(R("3"), 1));
    CHECK(sp.roots[1].k == Root<Rat>(R("2"), 1));
    CHECK(sp.pool_triangularizable);
    CHECK(sp.union_excess.empty());
    REQUIRE(sp.diagonal_union.size() == 2);

    // constant polynomial: collapses to the eigen spectrum of A_0
    const PolySpectrum<Rat> sc = poly_spectrum(Poly<Rat>({M({{"2", "5"}, {"0", "3"}})}));
    REQUIRE(sc.roots.size() == 2);
    CHECK(sc.roots[0].k == Root<Rat>(R("3"), 1));
    CHECK(sc.roots[1].k == Root<Rat>(R("2"), 1));
}

TEST_CASE("poly_spectrum witnesses verify exactly") {
    for (int it = 0; it < 30; ++it) {
        const Poly<Rat> p = rand_poly(2 + it % 2, 2 + it % 2);
        for (const auto& root : poly_spectrum(p).roots) {
            if (!root.exact) continue;
            CHECK_FALSE(root.vec.is_zero());
            CHECK(otimes(poly_eval(p, root.k.base), root.vec) ==
                  scalar_scale(root.k.base.pow_ui(p.m()), root.vec));
        }
    }
}

TEST_CASE("diagonal coefficients: spectrum equals the scalar union exactly") {
    std::uniform_int_distribution<long> num(0, 6), den(1, 2);
    for (int it = 0; it < 30; ++it) {
        const std::size_t n = 2 + it % 2, m = 2 + it % 2;
        std::vector<Mat<Rat>> coeffs(m, Mat<Rat>::zeros(n, n));
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < n; ++i) coeffs[j](i, i) = Rat(num(rng()), den(rng()));
        const Poly<Rat> p(coeffs);
        const PolySpectrum<Rat> sp = poly_spectrum(p);
        REQUIRE(sp.pool_triangularizable);
        // verified spectrum == union of the scalar spectra over positions
        CHECK(sp.union_excess.empty());
        CHECK(sp.roots.size() == sp.diagonal_union.size());
        for (std::size_t i = 0; i < sp.roots.size(); ++i)
            CHECK(sp.roots[i].k.cmp(sp.diagonal_union[i]) == 0);
    }
}

TEST_CASE("union formula only ever overshoots, never undershoots") {
    for (int it = 0; it < 40; ++it) {
        std::vector<Mat<Rat>> coeffs;
        const std::size_t n = 3, m = 2;
        // generate upper-triangular coefficients, then conjugate by one permutation
        const Perm s = testutil::rand_perm(rng(), n);
        for (std::size_t j = 0; j < m; ++j) {
            Mat<Rat> u = testutil::rand_matrix(rng(), n, 6, 2, 0.4);
            for (std::size_t r = 1; r < n; ++r)
                for (std::size_t c = 0; c < r; ++c) u(r, c) = Rat(0);
            coeffs.push_back(permute_similarity(u, s.inverse()));
        }
        const PolySpectrum<Rat> sp = poly_spectrum(Poly<Rat>(coeffs));
        REQUIRE(sp.pool_triangularizable);
        for (const auto& root : sp.roots) {
            bool in_union = false;
            for (const auto& u : sp.diagonal_union) in_union = in_union || u.cmp(root.k) == 0;
            CHECK(in_union);
        }
    }
}

TEST_CASE("polynomial seminorms") {
    const Poly<Rat> p1({kA01, kA11});
    CHECK(poly_eta(p1, Norm::Sup) == R("4"));
    CHECK(poly_eta_hat(p1) == Root<Rat>(R("4"), 1));
    const Poly<Rat> zero({Mat<Rat>::zeros(2, 2)});
    CHECK(poly_eta(zero, Norm::Sup) == R("0"));
    CHECK(poly_eta_hat(zero).is_zero());
    CHECK(poly_norm(zero, Norm::Sup) == R("0"));
    // induced norms: row sums for sup, column sums for sum
    const Poly<Rat> q({M({{"1", "2"}, {"3", "0"}})});
    CHECK(poly_norm(q, Norm::Sup) == R("3"));
    CHECK(poly_norm(q, Norm::Sum) == R("4"));
}

TEST_CASE("chain inequality for a single polynomial") {
    const ChainReport<Rat> c = check_chain_single(Poly<Rat>({kA01, kA11}), Norm::Sup);
    CHECK(c.eta_hat_value == Root<Rat>(R("4"), 1));
    CHECK(c.rho == Root<Rat>(R("4"), 1));
    CHECK(c.eta_value == Root<Rat>(R("4"), 1));
    CHECK(c.holds);

    const Mat<Rat> ci = scalar_scale(R("5/2"), Mat<Rat>::identity(3));
    const ChainReport<Rat> c2 = check_chain_single(Poly<Rat>({ci, ci}), Norm::Sup);
    CHECK(c2.eta_hat_value == Root<Rat>(R("5/2"), 1));
    CHECK(c2.rho == Root<Rat>(R("5/2"), 1));
    CHECK(c2.eta_value == Root<Rat>(R("5/2"), 1));
    CHECK(c2.holds);

    for (int it = 0; it < 40; ++it) {
        const Poly<Rat> p = rand_poly(2 + it % 3, 1 + it % 3);
        CHECK(check_chain_single(p, Norm::Sup).holds);
        CHECK(check_chain_single(p, Norm::Sum).holds);
    }
}

TEST_CASE("family bounds") {
    const std::vector<Poly<Rat>> psi = {Poly<Rat>({kA01, kA11}), Poly<Rat>({kA02, kA12})};
    const FamilyBoundsReport<Rat> rep = check_family_bounds(psi, 3);
    CHECK(rep.rho_pool == Root<Rat>(R("4"), 1));
    CHECK(rep.holds);
    for (const auto& s : rep.steps) CHECK(rep.rho_pool.cmp(s.g_k) <= 0);

    // single constant polynomial: g_k collapses to eta(A^k)^(1/k)
    const Mat<Rat> a = M({{"0", "2"}, {"8", "0"}});
    const FamilyBoundsReport<Rat> single =
        check_family_bounds(std::vector<Poly<Rat>>{Poly<Rat>({a})}, 4);
    Mat<Rat> p = Mat<Rat>::identity(2);
    for (const auto& s : single.steps) {
        p = otimes(p, a);
        CHECK(s.g_k.cmp(Root<Rat>(eta(p, Norm::Sup), s.k)) == 0);
        CHECK(s.lower_ok);
    }
    CHECK(single.holds);

    // random triangular families
    for (int it = 0; it < 10; ++it) {
        std::vector<Poly<Rat>> fam;
        for (int f = 0; f < 2; ++f) {
            std::vector<Mat<Rat>> coeffs;
            for (int j = 0; j < 2 + it % 2; ++j) {
                Mat<Rat> u = testutil::rand_matrix(rng(), 3, 6, 2, 0.4);
                for (std::size_t r = 1; r < 3; ++r)
                    for (std::size_t c = 0; c < r; ++c) u(r, c) = Rat(0);
                coeffs.push_back(u);
            }
            fam.emplace_back(std::move(coeffs));
        }
        CHECK(check_family_bounds(fam, 4).holds);
    }

    CHECK_THROWS_AS(check_family_bounds(psi, 20), precondition_error);
}

TEST_CASE("triangular jsr") {
    const std::vector<Poly<Rat>> psi = {Poly<Rat>({kA01, kA11}), Poly<Rat>({kA02, kA12})};
    const TriangularJsrResult<Rat> t = triangular_jsr(psi);
    REQUIRE(t.pools.size() == 3);
    const std::vector<std::vector<const char*>> expected = {
        {"3", "2", "1", "4"}, {"4", "3", "2", "2"}, {"1", "2", "0", "1"}};
    for (std::size_t i = 0; i < 3; ++i) {
        REQUIRE(t.pools[i].size() == 4);
        for (std::size_t j = 0; j < 4; ++j) CHECK(t.pools[i][j] == R(expected[i][j]));
    }
    CHECK(t.sups == std::vector<Rat>{R("4"), R("4"), R("2")});
    CHECK(t.value == Root<Rat>(R("4"), 1));
    CHECK(t.certified);

    // all-diagonal pool: the answer is the max diagonal entry across the family
    const std::vector<Poly<Rat>> diag = {
        Poly<Rat>({M({{"2", "0"}, {"0", "1"}}), M({{"1/2", "0"}, {"0", "3"}})})};
    const TriangularJsrResult<Rat> td = triangular_jsr(diag);
    CHECK(td.value == Root<Rat>(R("3"), 1));
    CHECK(td.certified);

    // not triangularizable
    CHECK_THROWS_AS(triangular_jsr(std::vector<Poly<Rat>>{
                        Poly<Rat>({M({{"0", "1"}, {"1", "0"}})})}),
                    precondition_error);

    // random triangularizable families certify against the (+)-reduction
    for (int it = 0; it < 20; ++it) {
        const Perm s = testutil::rand_perm(rng(), 3);
        std::vector<Poly<Rat>> fam;
        for (int f = 0; f < 2; ++f) {
            std::vector<Mat<Rat>> coeffs;
            for (int j = 0; j < 2; ++j) {
                Mat<Rat> u = testutil::rand_matrix(rng(), 3, 9, 3, 0.35);
                for (std::size_t r = 1; r < 3; ++r)
                    for (std::size_t c = 0; c < r; ++c) u(r, c) = Rat(0);
                coeffs.push_back(permute_similarity(u, s.inverse()));
            }
            fam.emplace_back(std::move(coeffs));
        }
        CHECK(triangular_jsr(fam).certified);
    }
}

TEST_CASE("common eigenvector implies membership in the polynomial spectrum") {
    // coefficients sharing an eigenvector v: if q(k) = k^m then P(k)v = k^m v
    std::uniform_int_distribution<long> num(1, 4), den(1, 2);
    for (int it = 0; it < 20; ++it) {
        const std::size_t n = 3, m = 2;
        std::vector<Rat> v_entries;
        for (std::size_t i = 0; i < n; ++i) v_entries.push_back(Rat(num(rng()), den(rng())));
        const Mat<Rat> v = Mat<Rat>::column(v_entries);
        std::vector<Mat<Rat>> coeffs;
        std::vector<Rat> alphas;
        for (std::size_t j = 0; j < m; ++j) {
            // rank-one matrix a_ik = alpha v_i / v_k has eigenvector v
            const Rat alpha(num(rng()), den(rng()));
            Mat<Rat> a(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) a(i, k) = alpha * v.vec(i) / v.vec(k);
            coeffs.push_back(a);
            alphas.push_back(alpha);
        }
        const Poly<Rat> p(coeffs);
        for (const auto& k : scalar_poly_spectrum(alphas, m)) {
            if (!k.is_scalar() || k.is_zero()) continue;
            CHECK(otimes(poly_eval(p, k.base), v) == scalar_scale(k.base.pow_ui(m), v));
        }
    }
}
