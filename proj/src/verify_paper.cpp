#include <sstream>

#include "maxalg/cli.hpp"
#include "maxalg/dynamics.hpp"
#include "maxalg/polynomial.hpp"

namespace maxalg::cli {

namespace {

Mat<Rat> mat(std::vector<std::vector<const char*>> rows) {
    std::vector<Rat> entries;
    const std::size_t r = rows.size(), c = rows.front().size();
    for (const auto& row : rows)
        for (const char* e : row) entries.push_back(Rat::parse(e));
    return Mat<Rat>(r, c, std::move(entries));
}

Mat<Rat> vec(std::vector<const char*> entries) {
    std::vector<Rat> v;
    for (const char* e : entries) v.push_back(Rat::parse(e));
    return Mat<Rat>::column(std::move(v));
}

}  // namespace

VerifyPaperInputs paper_inputs() {
    VerifyPaperInputs in{
        .pool = {},
        .psi = {},
        .switching = {},
        .v1 = vec({"1", "1", "0", "0"}),
        .v2 = vec({"0", "0", "1", "1"}),
    };
    const Mat<Rat> a01 = mat({{"3", "0", "2"}, {"0", "1", "0"}, {"0", "2", "4"}});
    const Mat<Rat> a11 = mat({{"2", "3", "1"}, {"0", "2", "0"}, {"0", "1", "3"}});
    const Mat<Rat> a02 = mat({{"1", "2", "3"}, {"0", "0", "0"}, {"0", "1", "2"}});
    const Mat<Rat> a12 = mat({{"4", "1", "0"}, {"0", "1", "0"}, {"0", "3", "2"}});
    in.pool.add("A0_1", a01);
    in.pool.add("A1_1", a11);
    in.pool.add("A0_2", a02);
    in.pool.add("A1_2", a12);
    in.psi.push_back(Poly<Rat>({a01, a11}));
    in.psi.push_back(Poly<Rat>({a02, a12}));
    in.switching.add("1", mat({{"1", "1/2", "0", "0"},
                               {"3/10", "1", "0", "0"},
                               {"0", "0", "9/10", "7/10"},
                               {"0", "0", "1/2", "9/10"}}));
    in.switching.add("2", mat({{"4/5", "1", "0", "0"},
                               {"1", "2/5", "0", "0"},
                               {"0", "0", "4/5", "3/5"},
                               {"0", "0", "2/5", "4/5"}}));
    return in;
}

std::vector<CheckLine> verify_paper_checks(const VerifyPaperInputs& in) {
    std::vector<CheckLine> out;
    auto check = [&](const std::string& name, bool pass, std::string detail = "") {
        out.push_back({name, pass, std::move(detail)});
    };
    const Root<Rat> one = Root<Rat>::from_scalar(Rat(1));
    const Root<Rat> four = Root<Rat>::from_scalar(Rat(4));

    // ---- first worked example: triangularizable coefficient pool ----
    const TriangularizerResult trg = find_common_triangularizer(in.pool);
    check("eg1.pool-triangularizable", trg.sigma.has_value());
    if (trg.sigma) {
        bool all_ut = true;
        for (const auto& a : in.pool.mats)
            all_ut = all_ut && is_upper_triangular(permute_similarity(a, *trg.sigma));
        check("eg1.sigma-triangularizes-all", all_ut);
        const Perm transposition({0, 2, 1});
        check("eg1.sigma-is-the-displayed-transposition", *trg.sigma == transposition);
        const std::vector<Mat<Rat>> displayed = {
            mat({{"3", "2", "0"}, {"0", "4", "2"}, {"0", "0", "1"}}),
            mat({{"2", "1", "3"}, {"0", "3", "1"}, {"0", "0", "2"}}),
            mat({{"1", "3", "2"}, {"0", "2", "1"}, {"0", "0", "0"}}),
            mat({{"4", "0", "1"}, {"0", "2", "3"}, {"0", "0", "1"}})};
        bool forms_ok = true;
        for (std::size_t i = 0; i < in.pool.size(); ++i)
            forms_ok = forms_ok &&
                       permute_similarity(in.pool.mats[i], transposition) == displayed[i];
        check("eg1.triangular-forms-match", forms_ok);
    }
    try {
        const TriangularJsrResult<Rat> tj = triangular_jsr(in.psi);
        const std::vector<std::vector<const char*>> pools_expected = {
            {"3", "2", "1", "4"}, {"4", "3", "2", "2"}, {"1", "2", "0", "1"}};
        bool pools_ok = tj.pools.size() == 3;
        for (std::size_t i = 0; i < 3 && pools_ok; ++i) {
            pools_ok = tj.pools[i].size() == 4;
            for (std::size_t j = 0; j < 4 && pools_ok; ++j)
                pools_ok = tj.pools[i][j] == Rat::parse(pools_expected[i][j]);
        }
        check("eg1.diagonal-pools", pools_ok);
        check("eg1.pool-sups-4-4-2",
              tj.sups.size() == 3 && tj.sups[0] == Rat(4) && tj.sups[1] == Rat(4) &&
                  tj.sups[2] == Rat(2));
        check("eg1.triangular-jsr-4", tj.value.cmp(four) == 0);
        check("eg1.triangular-jsr-certified", tj.certified);
    } catch (const error& e) {
        check("eg1.diagonal-pools", false, e.what());
    }
    const Mat<Rat> sum = in.pool.oplus_all();
    check("eg1.oplus-sum-matches",
          sum == mat({{"4", "3", "3"}, {"0", "2", "0"}, {"0", "3", "4"}}));
    check("eg1.mu-of-sum-4", max_cycle_mean(sum).value.cmp(four) == 0);
    check("eg1.jsr-4", jsr(in.pool).rho.cmp(four) == 0);

    // ---- second worked example: switched family with common eigenvectors ----
    const Family<Rat>& f = in.switching;
    const EigenRowCheck<Rat> row1 = verify_common_eigenvector(f, in.v1);
    const EigenRowCheck<Rat> row2 = verify_common_eigenvector(f, in.v2);
    check("eg2.alpha-table",
          row1.ok && row2.ok && row1.alphas[0] == Rat(1) && row1.alphas[1] == Rat(1) &&
              row2.alphas[0] == Rat(9, 10) && row2.alphas[1] == Rat(4, 5));
    check("eg2.mu-of-sum-1", max_cycle_mean(f.oplus_all()).value.cmp(one) == 0,
          "mu = " + max_cycle_mean(f.oplus_all()).value.str());
    check("eg2.jsr-1", jsr(f).rho.cmp(one) == 0);
    const Word w = parse_word("12");
    const Mat<Rat> aw = word_product(f, w);
    check("eg2.word-contracts-v2",
          otimes(aw, in.v2) == scalar_scale(Rat(18, 25), in.v2));
    check("eg2.word-fixes-v1", otimes(aw, in.v1) == in.v1);

    const Mat<Rat> x = vec({"1", "1", "1", "1"});
    OrbitOptions<Rat> opts;  // epsilon 1e-12, generous budget
    opts.max_iter = 200;
    const OrbitReport<Rat> orb = orbit(aw, x, opts);
    const Mat<Rat> xi_expected = in.v1;
    {
        std::ostringstream det;
        det << orbit_mode_name(orb.mode) << " after " << orb.iterations << " iterations";
        const bool converged =
            orb.mode == OrbitMode::Converging && orb.has_xi && orb.xi == xi_expected &&
            orb.iterations <= 100 && orb.residual.cmp(Rat(1, 1'000'000'000'000L)) <= 0;
        check("eg2.orbit-converges-to-limit", converged, det.str());
        check("eg2.orbit-rate-18-25", orb.rate && *orb.rate == Rat(18, 25));
    }
    try {
        if (!row1.ok || !row2.ok)
            throw precondition_error("common eigenvector verification failed");
        CommonEigenSystem<Rat> sys;
        sys.vecs = {in.v1, in.v2};
        sys.alpha = {{row1.alphas[0], row2.alphas[0]}, {row1.alphas[1], row2.alphas[1]}};
        const LimitPrediction<Rat> pred = predicted_limit(x, w, sys, f);
        check("eg2.predicted-limit-matches-orbit",
              orb.has_xi && pred.xi == orb.xi && pred.word_fixed);
        bool common_fixed = pred.word_is_complete;
        for (bool b : pred.generator_fixed) common_fixed = common_fixed && b;
        check("eg2.limit-common-fixed-point", common_fixed);
        bool poly_fixed = true;
        const Mat<Rat>&a1 = f.mats[0], &a2 = f.mats[1];
        const std::vector<Poly<Rat>> polys = {
            Poly<Rat>({a1}), Poly<Rat>({a2}), Poly<Rat>({a1, a2}), Poly<Rat>({a2, a1}),
            Poly<Rat>({a1, a1, a2})};
        for (const auto& p : polys)
            poly_fixed = poly_fixed && check_poly_fixed_point(p, pred.xi);
        check("eg2.poly-fixed-point", poly_fixed);
    } catch (const error& e) {
        check("eg2.predicted-limit-matches-orbit", false, e.what());
    }
    return out;
}

}  // namespace maxalg::cli
