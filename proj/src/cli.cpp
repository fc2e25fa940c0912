#include "maxalg/cli.hpp"

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "maxalg/dynamics.hpp"
#include "maxalg/polynomial.hpp"

namespace maxalg::cli {

namespace {

using io::ordered_json;
using io::Scenario;

struct Opts {
    std::string input;
    std::string norm = "linf";
    bool norm_set = false;
    unsigned horizon = 0;
    bool horizon_set = false;
    std::string epsilon;
    unsigned max_iter = 0;
    bool max_iter_set = false;
    std::string lambda = "1";
    bool json = false;
    std::string backend = "exact";
};

struct HandlerResult {
    ordered_json payload;
    std::string human;
};

template <class S>
Mat<S> adapt(const Mat<Rat>& m);
template <>
Mat<Rat> adapt<Rat>(const Mat<Rat>& m) { return m; }
template <>
Mat<Fl> adapt<Fl>(const Mat<Rat>& m) { return io::to_float(m); }

template <class S>
Family<S> adapt(const Family<Rat>& f);
template <>
Family<Rat> adapt<Rat>(const Family<Rat>& f) { return f; }
template <>
Family<Fl> adapt<Fl>(const Family<Rat>& f) { return io::to_float(f); }

template <class S>
Poly<S> adapt(const Poly<Rat>& p);
template <>
Poly<Rat> adapt<Rat>(const Poly<Rat>& p) { return p; }
template <>
Poly<Fl> adapt<Fl>(const Poly<Rat>& p) { return io::to_float(p); }

template <class S>
S adapt_scalar(const Rat& r);
template <>
Rat adapt_scalar<Rat>(const Rat& r) { return r; }
template <>
Fl adapt_scalar<Fl>(const Rat& r) { return Fl::from_rat(r); }

template <class S>
ordered_json jval(const S& v) {
    return ordered_json{{"value", v.str()}, {"approx", v.to_double()}};
}

template <class S>
ordered_json jroot(const Root<S>& r) {
    return ordered_json{{"value", r.str()},
                        {"base", r.base.str()},
                        {"degree", r.deg},
                        {"approx", r.to_double()}};
}

template <class S>
ordered_json jvec(const Mat<S>& v) {
    ordered_json exact = ordered_json::array(), approx = ordered_json::array();
    for (std::size_t i = 0; i < v.rows(); ++i) {
        exact.push_back(v.vec(i).str());
        approx.push_back(v.vec(i).to_double());
    }
    return ordered_json{{"entries", std::move(exact)}, {"approx", std::move(approx)}};
}

template <class S>
ordered_json jmat(const Mat<S>& m) {
    ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    ordered_json data = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(i, c).str());
        data.push_back(std::move(row));
    }
    j["data"] = std::move(data);
    return j;
}

ordered_json jcycle(const std::vector<std::size_t>& cycle) {
    ordered_json arr = ordered_json::array();
    for (std::size_t v : cycle) arr.push_back(v + 1);
    return arr;
}

ordered_json jperm(const Perm& p) {
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < p.size(); ++i) arr.push_back(p(i) + 1);
    return arr;
}

template <class S>
std::string human_root(const Root<S>& r) {
    std::ostringstream os;
    os << r.str();
    if (!r.is_scalar()) os << " (~" << r.to_double() << ")";
    return os.str();
}

// --- per-command inputs -------------------------------------------------

const Mat<Rat>& expect_matrix(const Scenario& s) {
    if (s.family && s.family->size() == 1) return s.family->mats[0];
    throw precondition_error("this command expects a single matrix input file");
}

const Family<Rat>& expect_family(const Scenario& s) {
    if (!s.family) throw precondition_error("this command expects a family input file");
    return *s.family;
}

const std::vector<Poly<Rat>>& expect_polys(const Scenario& s) {
    if (s.polys.empty())
        throw precondition_error("this command expects polynomial input (coeffs/polys)");
    return s.polys;
}

const Poly<Rat>& expect_poly(const Scenario& s) {
    if (s.polys.size() != 1)
        throw precondition_error("this command expects exactly one polynomial");
    return s.polys[0];
}

Norm pick_norm(const Opts& o, const Scenario& s) {
    if (o.norm_set) return io::norm_from_string(o.norm, "--norm");
    return s.options.norm;
}

unsigned pick_horizon(const Opts& o, const Scenario& s) {
    return o.horizon_set ? o.horizon : s.options.horizon;
}

// --- command handlers ----------------------------------------------------

template <class S>
HandlerResult cmd_cyclemean(const Scenario& sc) {
    const Mat<S> a = adapt<S>(expect_matrix(sc));
    const CycleMean<S> cm = max_cycle_mean(a);
    HandlerResult r;
    r.payload["mu"] = jroot(cm.value);
    r.payload["witness_cycle"] = jcycle(cm.cycle);
    std::ostringstream os;
    os << "mu = " << human_root(cm.value);
    if (!cm.cycle.empty()) {
        os << "  (cycle";
        for (std::size_t v : cm.cycle) os << " " << v + 1;
        os << ")";
    } else {
        os << "  (acyclic)";
    }
    r.human = os.str();
    return r;
}

template <class S>
HandlerResult cmd_eig(const Scenario& sc) {
    const Mat<S> a = adapt<S>(expect_matrix(sc));
    HandlerResult r;
    ordered_json pairs = ordered_json::array();
    std::ostringstream os;
    for (const auto& p : eigen_spectrum(a)) {
        ordered_json e;
        e["lambda"] = jroot(p.lambda);
        e["exact"] = p.exact;
        if (p.exact) e["vec"] = jvec(p.vec);
        ordered_json approx = ordered_json::array();
        for (double d : p.approx) approx.push_back(d);
        e["approx_vec"] = std::move(approx);
        e["class"] = p.class_id;
        pairs.push_back(std::move(e));
        os << "lambda = " << human_root(p.lambda) << (p.exact ? "" : " (approx witness)")
           << "\n";
    }
    r.payload["eigenpairs"] = std::move(pairs);
    r.human = os.str();
    return r;
}

template <class S>
HandlerResult cmd_fnf(const Scenario& sc) {
    const Mat<S> a = adapt<S>(expect_matrix(sc));
    const FnfForm<S> f = frobenius_normal_form(a);
    HandlerResult r;
    r.payload["sigma"] = jperm(f.sigma);
    ordered_json blocks = ordered_json::array();
    for (std::size_t c = 0; c < f.block_count(); ++c) {
        ordered_json b = ordered_json::array();
        for (std::size_t p = f.block_start[c]; p < f.block_start[c + 1]; ++p)
            b.push_back(f.sigma(p) + 1);
        blocks.push_back(std::move(b));
    }
    r.payload["classes"] = std::move(blocks);
    r.payload["permuted"] = jmat(f.permuted);
    ordered_json acc = ordered_json::array();
    for (const auto& row : f.access) {
        ordered_json arow = ordered_json::array();
        for (bool b : row) arow.push_back(b);
        acc.push_back(std::move(arow));
    }
    r.payload["access"] = std::move(acc);
    std::ostringstream os;
    os << f.block_count() << " classes; sigma =";
    for (std::size_t i = 0; i < f.sigma.size(); ++i) os << " " << f.sigma(i) + 1;
    r.human = os.str();
    return r;
}

template <class S>
HandlerResult cmd_triangularize(const Scenario& sc) {
    const Family<S> f = adapt<S>(expect_family(sc));
    const TriangularizerResult t = find_common_triangularizer(f);
    HandlerResult r;
    if (t.sigma) {
        r.payload["sigma"] = jperm(*t.sigma);
        std::ostringstream os;
        os << "simultaneously triangularizable; sigma =";
        for (std::size_t i = 0; i < t.sigma->size(); ++i) os << " " << (*t.sigma)(i) + 1;
        r.human = os.str();
    } else {
        r.payload["sigma"] = nullptr;
        r.payload["cycle_witness"] = jcycle(t.cycle_witness);
        r.human = "not simultaneously triangularizable (off-diagonal support cycle)";
    }
    return r;
}

template <class S>
HandlerResult cmd_eta(const Scenario& sc, const Opts& o) {
    const Mat<S> a = adapt<S>(expect_matrix(sc));
    const Norm norm = pick_norm(o, sc);
    HandlerResult r;
    const S e = eta(a, norm);
    const Root<S> hat = eta_hat(a);
    r.payload["norm"] = norm_name(norm);
    r.payload["eta"] = jval(e);
    r.payload["eta_hat"] = jroot(hat);
    const unsigned K = o.horizon_set ? o.horizon : 0;
    if (K > 0) {
        ordered_json est = ordered_json::array();
        for (const auto& v : eta_hat_estimate(a, K, norm)) est.push_back(jroot(v));
        r.payload["eta_hat_estimates"] = std::move(est);
    }
    std::ostringstream os;
    os << "eta_" << norm_name(norm) << " = " << e.str() << "; eta_hat = mu = "
       << human_root(hat);
    r.human = os.str();
    return r;
}

template <class S>
HandlerResult cmd_jsr(const Scenario& sc, const Opts& o) {
    const Family<S> f = adapt<S>(expect_family(sc));
    const unsigned K = o.horizon_set ? o.horizon : 0;
    const JsrReport<S> rep = K > 0 ? jsr_bracket(f, K) : jsr(f);
    HandlerResult r;
    r.payload["rho"] = jroot(rep.rho);
    r.payload["witness_cycle"] = jcycle(rep.witness_cycle);
    ordered_json asg = ordered_json::array();
    for (const auto& n : rep.witness_assignment) asg.push_back(n);
    r.payload["witness_assignment"] = std::move(asg);
    if (K > 0) {
        ordered_json br = ordered_json::array();
        for (const auto& b : rep.brackets)
            br.push_back(ordered_json{
                {"k", b.k}, {"lower", jroot(b.lower)}, {"upper", jroot(b.upper)}});
        r.payload["brackets"] = std::move(br);
        r.payload["certified"] = rep.certified;
        r.payload["lower_attained_at"] = rep.lower_attained_at;
    }
    r.human = "rho = " + human_root(rep.rho);
    return r;
}

template <class S>
HandlerResult cmd_poly_eval(const Scenario& sc, const Opts& o) {
    const Poly<S> p = adapt<S>(expect_poly(sc));
    const S lambda = adapt_scalar<S>(Rat::parse(o.lambda));
    HandlerResult r;
    r.payload["lambda"] = jval(lambda);
    r.payload["result"] = jmat(poly_eval(p, lambda));
    r.human = "P(" + lambda.str() + ") evaluated";
    return r;
}

template <class S>
HandlerResult cmd_poly_spectrum(const Scenario& sc) {
    const Poly<S> p = adapt<S>(expect_poly(sc));
    const PolySpectrum<S> sp = poly_spectrum(p);
    HandlerResult r;
    ordered_json roots = ordered_json::array();
    std::ostringstream os;
    os << "sigma_m[P] = {";
    for (std::size_t i = 0; i < sp.roots.size(); ++i) {
        const auto& root = sp.roots[i];
        ordered_json e;
        e["k"] = jroot(root.k);
        e["exact"] = root.exact;
        if (root.exact) e["vec"] = jvec(root.vec);
        ordered_json approx = ordered_json::array();
        for (double d : root.approx) approx.push_back(d);
        e["approx_vec"] = std::move(approx);
        roots.push_back(std::move(e));
        os << (i ? ", " : "") << human_root(root.k);
    }
    os << "}";
    r.payload["roots"] = std::move(roots);
    r.payload["pool_triangularizable"] = sp.pool_triangularizable;
    if (sp.pool_triangularizable) {
        ordered_json u = ordered_json::array(), x = ordered_json::array();
        for (const auto& k : sp.diagonal_union) u.push_back(jroot(k));
        for (const auto& k : sp.union_excess) x.push_back(jroot(k));
        r.payload["diagonal_union"] = std::move(u);
        r.payload["union_excess"] = std::move(x);
        if (!sp.union_excess.empty())
            os << "  [diagonal union formula exceeds the verified spectrum]";
    }
    r.human = os.str();
    return r;
}

template <class S>
HandlerResult cmd_poly_bounds(const Scenario& sc, const Opts& o) {
    const Poly<S> p = adapt<S>(expect_poly(sc));
    const Norm norm = pick_norm(o, sc);
    const ChainReport<S> c = check_chain_single(p, norm);
    HandlerResult r;
    r.payload["norm"] = norm_name(norm);
    r.payload["eta_hat"] = jroot(c.eta_hat_value);
    r.payload["rho"] = jroot(c.rho);
    r.payload["eta"] = jroot(c.eta_value);
    r.payload["holds"] = c.holds;
    std::ostringstream os;
    os << "eta_hat(P) = " << human_root(c.eta_hat_value) << " <= rho(Sigma_P) = "
       << human_root(c.rho) << " <= eta(P) = " << human_root(c.eta_value) << " : "
       << (c.holds ? "holds" : "VIOLATED");
    r.human = os.str();
    return r;
}

template <class S>
HandlerResult cmd_family_bounds(const Scenario& sc, const Opts& o) {
    const std::vector<Poly<Rat>>& polys_exact = expect_polys(sc);
    std::vector<Poly<S>> polys;
    for (const auto& p : polys_exact) polys.push_back(adapt<S>(p));
    const Norm norm = pick_norm(o, sc);
    const unsigned K = pick_horizon(o, sc);
    const FamilyBoundsReport<S> rep = check_family_bounds(polys, K, norm);
    HandlerResult r;
    r.payload["norm"] = norm_name(norm);
    r.payload["rho_pool"] = jroot(rep.rho_pool);
    r.payload["m_max"] = rep.m_max;
    ordered_json steps = ordered_json::array();
    for (const auto& s : rep.steps)
        steps.push_back(ordered_json{{"k", s.k},
                                     {"g_k", jroot(s.g_k)},
                                     {"coeff_bound", jroot(s.coeff_bound)},
                                     {"upper_envelope", jroot(s.upper_envelope)},
                                     {"lower_ok", s.lower_ok},
                                     {"rho_ok", s.rho_ok},
                                     {"upper_ok", s.upper_ok}});
    r.payload["steps"] = std::move(steps);
    r.payload["holds"] = rep.holds;
    std::ostringstream os;
    os << "rho(pool) = " << human_root(rep.rho_pool) << "; bracket over k = 1.." << K
       << (rep.holds ? " holds" : " VIOLATED");
    r.human = os.str();
    return r;
}

template <class S>
HandlerResult cmd_triangular_jsr(const Scenario& sc) {
    const std::vector<Poly<Rat>>& polys_exact = expect_polys(sc);
    std::vector<Poly<S>> polys;
    for (const auto& p : polys_exact) polys.push_back(adapt<S>(p));
    const TriangularJsrResult<S> t = triangular_jsr(polys);
    HandlerResult r;
    r.payload["value"] = jroot(t.value);
    r.payload["sigma"] = jperm(t.sigma);
    ordered_json pools = ordered_json::array();
    for (const auto& pool : t.pools) {
        ordered_json p = ordered_json::array();
        for (const auto& x : pool) p.push_back(x.str());
        pools.push_back(std::move(p));
    }
    r.payload["pools"] = std::move(pools);
    ordered_json sups = ordered_json::array();
    for (const auto& s : t.sups) sups.push_back(jval(s));
    r.payload["sups"] = std::move(sups);
    r.payload["pool_jsr"] = jroot(t.pool_jsr);
    r.payload["certified"] = t.certified;
    std::ostringstream os;
    os << "triangular jsr = " << human_root(t.value)
       << (t.certified ? " (certified against the (+)-reduction)" : " [MISMATCH]");
    r.human = os.str();
    return r;
}

template <class S>
HandlerResult cmd_word(const Scenario& sc) {
    const Family<S> f = adapt<S>(expect_family(sc));
    if (!sc.word) throw precondition_error("word: scenario needs a 'word' field");
    HandlerResult r;
    r.payload["product"] = jmat(word_product(f, *sc.word));
    r.payload["complete"] = word_complete(f, *sc.word);
    r.human = "word product computed (" + std::to_string(sc.word->size()) + " letters)";
    return r;
}

template <class S>
HandlerResult cmd_orbit(const Scenario& sc, const Opts& o) {
    const Family<S> f = adapt<S>(expect_family(sc));
    Mat<S> t = sc.word ? word_product(f, *sc.word) : f.mats[0];
    if (!sc.word && f.size() != 1)
        throw precondition_error("orbit: scenario needs a 'word' or a single matrix");
    if (!sc.x) throw precondition_error("orbit: scenario needs a start vector 'x'");
    OrbitOptions<S> opts;
    opts.epsilon = adapt_scalar<S>(o.epsilon.empty() ? sc.options.epsilon
                                                     : Rat::parse(o.epsilon));
    opts.max_iter = o.max_iter_set ? o.max_iter : sc.options.max_iter;
    const OrbitReport<S> rep = orbit(t, adapt<S>(*sc.x), opts);
    HandlerResult r;
    r.payload["mode"] = orbit_mode_name(rep.mode);
    r.payload["iterations"] = rep.iterations;
    if (rep.mode == OrbitMode::ExactPeriodic || rep.mode == OrbitMode::ExactFixpoint)
        r.payload["period"] = rep.period;
    r.payload["state"] = jvec(rep.state);
    if (rep.has_xi) {
        r.payload["xi"] = jvec(rep.xi);
        r.payload["residual"] = jval(rep.residual);
        if (rep.rate) r.payload["rate"] = jval(*rep.rate);
        r.payload["rate_approx"] = rep.rate_approx;
    }
    std::ostringstream os;
    os << "orbit: " << orbit_mode_name(rep.mode) << " after " << rep.iterations
       << " iterations";
    if (rep.mode == OrbitMode::ExactPeriodic) os << " (period " << rep.period << ")";
    if (rep.has_xi) {
        os << "; xi = (";
        for (std::size_t i = 0; i < rep.xi.rows(); ++i)
            os << (i ? "," : "") << rep.xi.vec(i).str();
        os << ")";
        if (rep.rate) os << ", rate " << rep.rate->str();
    }
    r.human = os.str();
    return r;
}

template <class S>
HandlerResult cmd_period(const Scenario& sc) {
    const Mat<S> a = adapt<S>(expect_matrix(sc));
    const PeriodResult<S> p = matrix_period(a);
    HandlerResult r;
    r.payload["p"] = p.p;
    r.payload["k0"] = p.k0;
    r.payload["lambda"] = jroot(p.lambda);
    r.payload["robust"] = p.robust;
    r.payload["complete"] = p.complete;
    std::ostringstream os;
    if (p.complete)
        os << "per(A) = " << p.p << ", k0 = " << p.k0 << ", lambda = "
           << human_root(p.lambda) << (p.robust ? " (robust)" : "");
    else
        os << "period search hit the cap (partial report)";
    r.human = os.str();
    return r;
}

template <class S>
HandlerResult cmd_common_eig(const Scenario& sc) {
    const Family<S> f = adapt<S>(expect_family(sc));
    HandlerResult r;
    const CommonEigenSystem<S> sys = common_eigenvectors(f);
    ordered_json vecs = ordered_json::array();
    for (const auto& v : sys.vecs) vecs.push_back(jvec(v));
    r.payload["vectors"] = std::move(vecs);
    ordered_json alpha = ordered_json::array();
    for (const auto& row : sys.alpha) {
        ordered_json arow = ordered_json::array();
        for (const auto& a : row) arow.push_back(jval(a));
        alpha.push_back(std::move(arow));
    }
    r.payload["alpha"] = std::move(alpha);
    if (!sc.vectors.empty()) {
        ordered_json verif = ordered_json::array();
        for (const auto& v : sc.vectors) {
            const EigenRowCheck<S> row = verify_common_eigenvector(f, adapt<S>(v));
            ordered_json e;
            e["ok"] = row.ok;
            if (row.ok) {
                ordered_json alphas = ordered_json::array();
                for (const auto& a : row.alphas) alphas.push_back(jval(a));
                e["alphas"] = std::move(alphas);
            } else {
                e["fail_member"] = f.names[row.fail_member];
                e["fail_coord"] = row.fail_coord + 1;
            }
            verif.push_back(std::move(e));
        }
        r.payload["verified"] = std::move(verif);
    }
    r.human = "found " + std::to_string(sys.vecs.size()) + " common eigenvector(s)";
    return r;
}

template <class S>
CommonEigenSystem<S> eigen_system_for(const Scenario& sc, const Family<S>& f) {
    CommonEigenSystem<S> sys;
    if (!sc.vectors.empty()) {
        sys.alpha.assign(f.size(), {});
        for (const auto& vr : sc.vectors) {
            const Mat<S> v = adapt<S>(vr);
            const EigenRowCheck<S> row = verify_common_eigenvector(f, v);
            if (!row.ok)
                throw precondition_error(
                    "supplied vector is not a common eigenvector (member '" +
                    f.names[row.fail_member] + "', coordinate " +
                    std::to_string(row.fail_coord + 1) + ")");
            sys.vecs.push_back(v);
            for (std::size_t i = 0; i < f.size(); ++i)
                sys.alpha[i].push_back(row.alphas[i]);
        }
        return sys;
    }
    sys = common_eigenvectors(f);
    if (sys.vecs.empty())
        throw precondition_error("no common eigenvectors found; supply 'vectors'");
    return sys;
}

template <class S>
HandlerResult cmd_predict_limit(const Scenario& sc) {
    const Family<S> f = adapt<S>(expect_family(sc));
    if (!sc.word) throw precondition_error("predict-limit: scenario needs a 'word'");
    if (!sc.x) throw precondition_error("predict-limit: scenario needs a start vector 'x'");
    const CommonEigenSystem<S> sys = eigen_system_for(sc, f);
    const LimitPrediction<S> pred = predicted_limit(adapt<S>(*sc.x), *sc.word, sys, f);
    HandlerResult r;
    r.payload["xi"] = jvec(pred.xi);
    ordered_json beta = ordered_json::array(), gamma = ordered_json::array();
    for (const auto& b : pred.beta) beta.push_back(jval(b));
    for (const auto& g : pred.gamma) gamma.push_back(jval(g));
    r.payload["beta"] = std::move(beta);
    r.payload["gamma"] = std::move(gamma);
    r.payload["word_fixed"] = pred.word_fixed;
    r.payload["word_complete"] = pred.word_is_complete;
    ordered_json gen = ordered_json::array();
    for (bool b : pred.generator_fixed) gen.push_back(b);
    r.payload["generator_fixed"] = std::move(gen);
    std::ostringstream os;
    os << "xi = (";
    for (std::size_t i = 0; i < pred.xi.rows(); ++i)
        os << (i ? "," : "") << pred.xi.vec(i).str();
    os << "), A_w xi == xi: " << (pred.word_fixed ? "yes" : "NO");
    if (pred.word_is_complete) os << " (word complete: common fixed point)";
    r.human = os.str();
    return r;
}

template <class S>
HandlerResult cmd_decay(const Scenario& sc, const Opts& o) {
    const Family<S> f = adapt<S>(expect_family(sc));
    if (!sc.word) throw precondition_error("decay: scenario needs a 'word'");
    if (!sc.x) throw precondition_error("decay: scenario needs a start vector 'x'");
    const unsigned k = pick_horizon(o, sc);
    const DecayCertificate<S> cert = decay_certificate(f, *sc.word, adapt<S>(*sc.x), k);
    HandlerResult r;
    r.payload["rho"] = jroot(cert.rho);
    r.payload["r"] = jval(cert.r);
    r.payload["r_prime"] = jval(cert.r_prime);
    r.payload["envelope_constant"] = jval(cert.envelope_constant);
    r.payload["block_len"] = cert.block_len;
    r.payload["threshold"] = cert.threshold;
    ordered_json steps = ordered_json::array();
    for (const auto& s : cert.steps)
        steps.push_back(ordered_json{{"j", s.j},
                                     {"norm", jval(s.norm)},
                                     {"pure_bound", jval(s.pure_bound)},
                                     {"env_bound", jval(s.env_bound)},
                                     {"pure_applicable", s.pure_applicable},
                                     {"pure_ok", s.pure_ok},
                                     {"env_ok", s.env_ok}});
    r.payload["steps"] = std::move(steps);
    r.payload["orbit_mode"] = orbit_mode_name(cert.orbit_mode);
    r.payload["nonzero_periodic_found"] = cert.nonzero_periodic_found;
    r.payload["holds"] = cert.holds;
    std::ostringstream os;
    os << "decay certificate: rho = " << human_root(cert.rho) << " < r = " << cert.r.str()
       << " < 1; threshold K = " << cert.threshold << "; "
       << (cert.holds ? "holds at every step" : "VIOLATED");
    r.human = os.str();
    return r;
}

HandlerResult cmd_verify_paper() {
    const std::vector<CheckLine> checks = verify_paper_checks(paper_inputs());
    HandlerResult r;
    ordered_json arr = ordered_json::array();
    bool all = true;
    std::ostringstream os;
    for (const auto& c : checks) {
        arr.push_back(
            ordered_json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        all = all && c.pass;
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
           << (c.detail.empty() ? "" : "  -- " + c.detail) << "\n";
    }
    r.payload["checks"] = std::move(arr);
    r.payload["all_pass"] = all;
    os << (all ? "all checks passed" : "SOME CHECKS FAILED");
    r.human = os.str();
    return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("maxalg");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact max-times (tropical) linear algebra toolkit"};
    app.require_subcommand(1);
    Opts o;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input)
            sub->add_option("--input", o.input, "input JSON file")->required();
        sub->add_option("--norm", o.norm, "vector norm: linf or l1")
            ->check(CLI::IsMember({"linf", "l1"}))
            ->each([&](const std::string&) { o.norm_set = true; });
        sub->add_option("--horizon", o.horizon, "finite enumeration horizon K")
            ->each([&](const std::string&) { o.horizon_set = true; });
        sub->add_option("--epsilon", o.epsilon, "convergence tolerance (exact string)");
        sub->add_option("--max-iter", o.max_iter, "orbit iteration budget")
            ->each([&](const std::string&) { o.max_iter_set = true; });
        sub->add_flag("--json", o.json, "machine-readable output only");
        sub->add_option("--backend", o.backend, "numeric backend")
            ->check(CLI::IsMember({"exact", "float"}));
        return sub;
    };

    const std::vector<std::string> commands = {
        "cyclemean",   "eig",          "fnf",           "triangularize", "eta",
        "jsr",         "poly-eval",    "poly-spectrum", "poly-bounds",   "family-bounds",
        "triangular-jsr", "word",      "orbit",         "period",        "common-eig",
        "predict-limit",  "decay",     "verify-paper"};
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub, name != "verify-paper");
        if (name == "poly-eval")
            sub->add_option("--lambda", o.lambda, "evaluation point (exact string)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    const bool use_float = o.backend == "float";

    try {
        HandlerResult res;
        if (cmd == "verify-paper") {
            res = cmd_verify_paper();
        } else {
            const Scenario sc = io::load_scenario(o.input);
            auto dispatch = [&]<class S>() -> HandlerResult {
                if (cmd == "cyclemean") return cmd_cyclemean<S>(sc);
                if (cmd == "eig") return cmd_eig<S>(sc);
                if (cmd == "fnf") return cmd_fnf<S>(sc);
                if (cmd == "triangularize") return cmd_triangularize<S>(sc);
                if (cmd == "eta") return cmd_eta<S>(sc, o);
                if (cmd == "jsr") return cmd_jsr<S>(sc, o);
                if (cmd == "poly-eval") return cmd_poly_eval<S>(sc, o);
                if (cmd == "poly-spectrum") return cmd_poly_spectrum<S>(sc);
                if (cmd == "poly-bounds") return cmd_poly_bounds<S>(sc, o);
                if (cmd == "family-bounds") return cmd_family_bounds<S>(sc, o);
                if (cmd == "triangular-jsr") return cmd_triangular_jsr<S>(sc);
                if (cmd == "word") return cmd_word<S>(sc);
                if (cmd == "orbit") return cmd_orbit<S>(sc, o);
                if (cmd == "period") return cmd_period<S>(sc);
                if (cmd == "common-eig") return cmd_common_eig<S>(sc);
                if (cmd == "predict-limit") return cmd_predict_limit<S>(sc);
                if (cmd == "decay") return cmd_decay<S>(sc, o);
                throw error("unknown command " + cmd);
            };
            res = use_float ? dispatch.template operator()<Fl>()
                            : dispatch.template operator()<Rat>();
        }
        res.payload["command"] = cmd;
        res.payload["backend"] = use_float ? "float" : "exact";
        if (o.json)
            out << res.payload.dump(2) << "\n";
        else
            out << res.human << "\n";
        if (cmd == "verify-paper" && !res.payload["all_pass"].get<bool>()) return 2;
        return 0;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const precondition_error& e) {
        err << "precondition failed: " << e.what() << "\n";
        return 2;
    } catch (const shape_error& e) {
        err << "shape error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace maxalg::cli
