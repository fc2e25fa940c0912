#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "maxalg/spectral.hpp"

using namespace maxalg;
using testutil::M;
using testutil::R;
using testutil::V;

namespace {

Family<Rat> fam(std::vector<Mat<Rat>> mats) {
    Family<Rat> f;
    for (std::size_t i = 0; i < mats.size(); ++i)
        f.add(std::to_string(i + 1), std::move(mats[i]));
    return f;
}

const Mat<Rat> kPool1 = M({{"3", "0", "2"}, {"0", "1", "0"}, {"0", "2", "4"}});
const Mat<Rat> kPool2 = M({{"2", "3", "1"}, {"0", "2", "0"}, {"0", "1", "3"}});
const Mat<Rat> kPool3 = M({{"1", "2", "3"}, {"0", "0", "0"}, {"0", "1", "2"}});
const Mat<Rat> kPool4 = M({{"4", "1", "0"}, {"0", "1", "0"}, {"0", "3", "2"}});

}  // namespace

TEST_CASE("eta closed forms") {
    const Mat<Rat> a = M({{"2", "3"}, {"1", "0"}});
    CHECK(eta(a, Norm::Sup) == R("3"));
    CHECK(eta(a, Norm::Sum) == R("3"));  // column sums 3 and 3
    CHECK(eta(Mat<Rat>::zeros(2, 2), Norm::Sup) == R("0"));
    CHECK(eta(Mat<Rat>::zeros(2, 2), Norm::Sum) == R("0"));
    CHECK(eta(Mat<Rat>::identity(3), Norm::Sup) == R("1"));
    CHECK(eta(Mat<Rat>::identity(3), Norm::Sum) == R("1"));
}

TEST_CASE("eta grid oracle") {
    const Mat<Rat> a = M({{"2", "3"}, {"1", "0"}});
    CHECK(eta_oracle(a, Norm::Sup, 1) == R("3"));
    CHECK(eta_oracle(a, Norm::Sum, 1) == R("3"));
    std::mt19937_64 rng(31);
    for (int it = 0; it < 15; ++it) {
        const Mat<Rat> m = testutil::rand_matrix(rng, 3, 6, 3, 0.3);
        for (Norm norm : {Norm::Sup, Norm::Sum}) {
            // attained at a grid-1 point for these norms, never above the closed form
            CHECK(eta_oracle(m, norm, 1) == eta(m, norm));
            CHECK(eta_oracle(m, norm, 3).cmp(eta(m, norm)) <= 0);
        }
    }
    CHECK_THROWS_AS(eta_oracle(Mat<Rat>::zeros(12, 12), Norm::Sup, 4),
                    precondition_error);
}

TEST_CASE("eta_hat equals the cycle mean, estimates dominate it") {
    const Mat<Rat> a = M({{"0", "2"}, {"8", "0"}});
    CHECK(eta_hat(a) == Root<Rat>(R("4"), 1));
    const auto est = eta_hat_estimate(a, 4);
    CHECK(est[1] == Root<Rat>(R("4"), 1));  // eta(A^2)^(1/2) = 16^(1/2)
    CHECK(eta_hat(Mat<Rat>::identity(3)) == Root<Rat>(R("1"), 1));
    CHECK(eta_hat(kPool2) == Root<Rat>(R("3"), 1));

    std::mt19937_64 rng(37);
    for (int it = 0; it < 25; ++it) {
        const Mat<Rat> m = testutil::rand_irreducible(rng, 4);
        const Root<Rat> mu = eta_hat(m);
        for (const auto& e : eta_hat_estimate(m, 9)) CHECK(mu.cmp(e) <= 0);
    }
}

TEST_CASE("eigen spectrum with constructive witnesses") {
    const auto sp = eigen_spectrum(M({{"2", "5"}, {"0", "3"}}));
    REQUIRE(sp.size() == 2);
    CHECK(sp[0].lambda == Root<Rat>(R("3"), 1));
    CHECK(sp[0].vec == V({"5/3", "1"}));
    CHECK(sp[1].lambda == Root<Rat>(R("2"), 1));
    CHECK(sp[1].vec == V({"1", "0"}));

    // lambda = 2 admits no witness here
    const auto sp2 = eigen_spectrum(M({{"3", "1"}, {"0", "2"}}));
    REQUIRE(sp2.size() == 1);
    CHECK(sp2[0].lambda == Root<Rat>(R("3"), 1));
    CHECK(sp2[0].vec == V({"1", "0"}));

    const auto sp3 = eigen_spectrum(M({{"0", "2"}, {"8", "0"}}));
    REQUIRE(sp3.size() == 1);
    CHECK(sp3[0].lambda == Root<Rat>(R("4"), 1));
    for (std::size_t i = 0; i < 2; ++i) CHECK_FALSE(sp3[0].vec.vec(i).is_zero());
}

TEST_CASE("eigen pairs verify their defining equation") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 50; ++it) {
        const Mat<Rat> a = testutil::rand_matrix(rng, 4, 8, 3, 0.4);
        const auto sp = eigen_spectrum(a);
        bool mu_admitted = false;
        const Root<Rat> mu = max_cycle_mean(a).value;
        for (const auto& p : sp) {
            if (p.lambda.cmp(mu) == 0) mu_admitted = true;
            if (!p.exact) continue;
            CHECK(otimes(a, p.vec) == scalar_scale(p.lambda.base, p.vec));
            CHECK_FALSE(p.vec.is_zero());
        }
        CHECK(mu_admitted);
        if (is_irreducible(a) && a.rows() > 1) {
            std::size_t distinct = 0;
            for (std::size_t i = 0; i < sp.size(); ++i) {
                bool dup = false;
                for (std::size_t j = 0; j < i; ++j)
                    dup = dup || sp[i].lambda.cmp(sp[j].lambda) == 0;
                if (!dup) ++distinct;
            }
            CHECK(distinct == 1);
            // every max-eigenvector of an irreducible matrix is positive
            for (const auto& p : sp) {
                if (p.exact)
                    for (std::size_t i = 0; i < a.rows(); ++i)
                        CHECK_FALSE(p.vec.vec(i).is_zero());
                else
                    for (double d : p.approx) CHECK(d > 0);
            }
        }
    }
}

TEST_CASE("irrational eigenvalues carry certified values and approximate witnesses") {
    // mu = sqrt(6): the value is exact, the witness is a flagged float
    const auto sp = eigen_spectrum(M({{"0", "2"}, {"3", "0"}}));
    REQUIRE(sp.size() == 1);
    CHECK(sp[0].lambda == Root<Rat>(R("6"), 2));
    CHECK(sp[0].lambda.deg == 2);
    CHECK_FALSE(sp[0].exact);
    REQUIRE(sp[0].approx.size() == 2);
    const double lam = sp[0].lambda.to_double();
    for (std::size_t i = 0; i < 2; ++i) CHECK(sp[0].approx[i] > 0);
    // float residual of the defining equation
    const double a01 = 2, a10 = 3;
    CHECK(std::abs(std::max(0.0, a01 * sp[0].approx[1]) - lam * sp[0].approx[0]) < 1e-9);
    CHECK(std::abs(std::max(0.0, a10 * sp[0].approx[0]) - lam * sp[0].approx[1]) < 1e-9);
}

TEST_CASE("eigenvectors_for") {
    const Mat<Rat> a = M({{"2", "5"}, {"0", "3"}});
    const auto gen = eigenvectors_for(a, R("3"));
    REQUIRE(gen.size() >= 1);
    bool found = false;
    for (const auto& v : gen) found = found || v == V({"5/3", "1"});
    CHECK(found);
    for (const auto& v : gen) CHECK(otimes(a, v) == scalar_scale(R("3"), v));

    const auto basis = eigenvectors_for(Mat<Rat>::identity(3), R("1"));
    CHECK(basis.size() == 3);

    CHECK(eigenvectors_for(M({{"3", "1"}, {"0", "2"}}), R("2")).empty());
    CHECK_THROWS_AS(eigenvectors_for(a, R("0")), precondition_error);
}

TEST_CASE("jsr by (+)-reduction") {
    const Family<Rat> pool = fam({kPool1, kPool2, kPool3, kPool4});
    const JsrReport<Rat> rep = jsr(pool);
    CHECK(rep.rho == Root<Rat>(R("4"), 1));
    // witness edges are realized by the assigned matrices
    const Mat<Rat> sum = pool.oplus_all();
    REQUIRE(rep.witness_assignment.size() == rep.witness_cycle.size());
    for (std::size_t t = 0; t < rep.witness_cycle.size(); ++t) {
        const std::size_t u = rep.witness_cycle[t];
        const std::size_t v = rep.witness_cycle[(t + 1) % rep.witness_cycle.size()];
        const std::size_t idx = pool.index_of(rep.witness_assignment[t]);
        CHECK(pool.mats[idx](u, v) == sum(u, v));
    }

    CHECK(jsr(fam({Mat<Rat>::identity(3)})).rho == Root<Rat>(R("1"), 1));
    CHECK(jsr(fam({M({{"2", "0"}, {"0", "1"}}), M({{"1", "0"}, {"0", "3"}})})).rho ==
          Root<Rat>(R("3"), 1));
    CHECK_THROWS_AS(jsr(Family<Rat>{}), precondition_error);
}

TEST_CASE("jsr brackets straddle the exact value") {
    const Family<Rat> pool = fam({kPool1, kPool2, kPool3, kPool4});
    const JsrReport<Rat> rep = jsr_bracket(pool, 3);
    CHECK(rep.certified);
    CHECK(rep.lower_attained_at >= 1);
    CHECK(rep.lower_attained_at <= 3);

    // singleton family: lower_k = mu(A) for every k
    const Mat<Rat> a = M({{"0", "2"}, {"8", "0"}});
    const JsrReport<Rat> single = jsr_bracket(fam({a}), 4);
    Mat<Rat> p = Mat<Rat>::identity(2);
    for (const auto& b : single.brackets) {
        p = otimes(p, a);
        CHECK(b.lower.cmp(single.rho) == 0);
        CHECK(b.upper.cmp(Root<Rat>(eta(p, Norm::Sup), b.k)) == 0);
    }

    // the switched family: brackets straddle 1 and the lower bound attains it
    const Family<Rat> sw = fam({M({{"1", "1/2", "0", "0"},
                                   {"3/10", "1", "0", "0"},
                                   {"0", "0", "9/10", "7/10"},
                                   {"0", "0", "1/2", "9/10"}}),
                                M({{"4/5", "1", "0", "0"},
                                   {"1", "2/5", "0", "0"},
                                   {"0", "0", "4/5", "3/5"},
                                   {"0", "0", "2/5", "4/5"}})});
    const JsrReport<Rat> swrep = jsr_bracket(sw, 4);
    const Root<Rat> one = Root<Rat>::from_scalar(R("1"));
    CHECK(swrep.rho.cmp(one) == 0);
    CHECK(swrep.certified);
    for (const auto& b : swrep.brackets) {
        CHECK(b.lower.cmp(one) <= 0);
        CHECK(one.cmp(b.upper) <= 0);
    }
    CHECK(swrep.lower_attained_at >= 1);

    CHECK_THROWS_AS(jsr_bracket(fam({kPool1, kPool2, kPool3, kPool4}), 12),
                    precondition_error);
}

TEST_CASE("eta is subadditive, submultiplicative, permutation invariant") {
    std::mt19937_64 rng(43);
    for (int it = 0; it < 40; ++it) {
        const Mat<Rat> x = testutil::rand_matrix(rng, 4);
        const Mat<Rat> y = testutil::rand_matrix(rng, 4);
        const Perm s = testutil::rand_perm(rng, 4);
        for (Norm norm : {Norm::Sup, Norm::Sum}) {
            CHECK(eta(oplus(x, y), norm).cmp(eta(x, norm) + eta(y, norm)) <= 0);
            CHECK(eta(otimes(x, y), norm).cmp(eta(x, norm) * eta(y, norm)) <= 0);
            CHECK(eta(permute_similarity(x, s), norm) == eta(x, norm));
        }
    }
}

TEST_CASE("jsr invariances") {
    std::mt19937_64 rng(47);
    for (int it = 0; it < 25; ++it) {
        Family<Rat> f;
        const std::size_t count = 2 + it % 2;
        for (std::size_t i = 0; i < count; ++i)
            f.add(std::to_string(i), testutil::rand_matrix(rng, 4));
        const Root<Rat> rho = jsr(f).rho;
        const Perm s = testutil::rand_perm(rng, 4);
        Family<Rat> conj;
        for (std::size_t i = 0; i < count; ++i)
            conj.add(f.names[i], permute_similarity(f.mats[i], s));
        CHECK(jsr(conj).rho.cmp(rho) == 0);
        const Rat c(3, 2);
        Family<Rat> scaled;
        for (std::size_t i = 0; i < count; ++i)
            scaled.add(f.names[i], scalar_scale(c, f.mats[i]));
        CHECK(jsr(scaled).rho.cmp(rho.mul_scalar(c)) == 0);
    }
}

TEST_CASE("gelfand lower bound mu <= eta(A^k)^(1/k)") {
    std::mt19937_64 rng(53);
    for (int it = 0; it < 20; ++it) {
        const Mat<Rat> a = testutil::rand_irreducible(rng, 4);
        const Root<Rat> mu = max_cycle_mean(a).value;
        for (const auto& e : eta_hat_estimate(a, 12)) CHECK(mu.cmp(e) <= 0);
    }
}
