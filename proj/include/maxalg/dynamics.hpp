#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "maxalg/matrix.hpp"
#include "maxalg/polynomial.hpp"
#include "maxalg/spectral.hpp"

namespace maxalg {

// Switching sequence over the names of a family.
using Word = std::vector<std::string>;

// "12" -> {"1","2"}; "A1 A2" or "A1,A2" -> {"A1","A2"}.
inline Word parse_word(const std::string& text) {
    Word w;
    if (text.find(' ') != std::string::npos || text.find(',') != std::string::npos) {
        std::string cur;
        for (char c : text) {
            if (c == ' ' || c == ',') {
                if (!cur.empty()) w.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) w.push_back(cur);
    } else {
        for (char c : text) w.emplace_back(1, c);
    }
    if (w.empty()) throw precondition_error("parse_word: empty word");
    return w;
}

template <class S>
bool word_complete(const Family<S>& f, const Word& w) {
    for (const auto& name : f.names)
        if (std::find(w.begin(), w.end(), name) == w.end()) return false;
    return true;
}

// A_w = A_{w_p} (x) ... (x) A_{w_1}: the first letter acts first.
template <class S>
Mat<S> word_product(const Family<S>& f, const Word& w) {
    if (w.empty()) throw precondition_error("word_product: empty word");
    Mat<S> prod = f.mats[f.index_of(w.front())];
    for (std::size_t t = 1; t < w.size(); ++t)
        prod = otimes(f.mats[f.index_of(w[t])], prod);
    return prod;
}

enum class OrbitMode { ExactFixpoint, ExactPeriodic, Converging, Diverged, Inconclusive };

inline const char* orbit_mode_name(OrbitMode m) {
    switch (m) {
        case OrbitMode::ExactFixpoint: return "exact-fixpoint";
        case OrbitMode::ExactPeriodic: return "exact-periodic";
        case OrbitMode::Converging: return "converging";
        case OrbitMode::Diverged: return "diverged";
        case OrbitMode::Inconclusive: return "inconclusive";
    }
    return "?";
}

template <class S>
struct OrbitOptions {
    S epsilon = S(1, 1'000'000'000'000L);
    unsigned max_iter = 10'000;
    unsigned keep = 64;
};

template <class S>
struct OrbitReport {
    OrbitMode mode = OrbitMode::Inconclusive;
    unsigned iterations = 0;
    unsigned period = 0;  // q for exact-periodic
    Mat<S> state;         // periodic state entered / final iterate
    Mat<S> xi;            // verified fixed part, Converging only
    bool has_xi = false;
    std::optional<S> rate;  // exact geometric rate when residual ratios stabilize
    double rate_approx = 0.0;
    S residual;  // ||y - xi||_inf at stop
    std::vector<Mat<S>> kept;
};

namespace detail {

template <class S>
S residual_norm(const Mat<S>& a, const Mat<S>& b) {
    S best{};
    for (std::size_t i = 0; i < a.rows(); ++i)
        best = max_of(best, abs_diff(a.vec(i), b.vec(i)));
    return best;
}

}  // namespace detail

// Iterate y <- T (x) y with exact states. Detection order: exact fixpoint,
// exact period (Brent cycle detection), divergence, then epsilon-convergence
// toward an exactly verified fixed part extracted from the stabilized max
// terms of the window.
template <class S>
OrbitReport<S> orbit(const Mat<S>& t, const Mat<S>& x, OrbitOptions<S> opts = {}) {
    if (!t.is_square() || !x.is_vector() || t.cols() != x.rows())
        throw shape_error("orbit: T must be square and x a matching column vector");
    const std::size_t n = x.rows();
    constexpr std::size_t window_len = 8;
    OrbitReport<S> rep;
    const S huge = S(1) / opts.epsilon;

    Mat<S> y = x;
    rep.kept.push_back(y);
    Mat<S> tortoise = y;
    unsigned tortoise_idx = 0, power = 1;
    std::deque<Mat<S>> window{y};

    for (unsigned k = 0; k < opts.max_iter; ++k) {
        Mat<S> ynext = otimes(t, y);
        const unsigned idx = k + 1;
        if (rep.kept.size() < opts.keep) rep.kept.push_back(ynext);

        if (ynext == y) {
            rep.mode = OrbitMode::ExactFixpoint;
            rep.iterations = k;
            rep.period = 1;
            rep.state = y;
            return rep;
        }
        if (ynext == tortoise) {
            const unsigned q = idx - tortoise_idx;
            // locate the first state on the cycle
            Mat<S> a = x;
            for (unsigned s = 0; s < q; ++s) a = otimes(t, a);
            Mat<S> b = x;
            unsigned k0 = 0;
            while (!(a == b)) {
                a = otimes(t, a);
                b = otimes(t, b);
                ++k0;
            }
            rep.mode = q == 1 ? OrbitMode::ExactFixpoint : OrbitMode::ExactPeriodic;
            rep.iterations = k0;
            rep.period = q;
            rep.state = b;
            return rep;
        }
        if (idx - tortoise_idx == power) {
            tortoise = ynext;
            tortoise_idx = idx;
            power *= 2;
        }
        if (ynext.max_entry().cmp(huge) > 0) {
            rep.mode = OrbitMode::Diverged;
            rep.iterations = idx;
            rep.state = ynext;
            return rep;
        }

        window.push_back(ynext);
        if (window.size() > window_len) window.pop_front();
        if (window.size() == window_len) {
            bool ready = true;
            std::vector<S> entries(n);
            for (std::size_t i = 0; i < n && ready; ++i) {
                bool constant = true, decreasing = true;
                for (std::size_t w = 0; w + 1 < window.size(); ++w) {
                    const int c = window[w].vec(i).cmp(window[w + 1].vec(i));
                    constant = constant && c == 0;
                    decreasing = decreasing && c > 0;
                }
                if (constant)
                    entries[i] = window.back().vec(i);
                else if (decreasing)
                    entries[i] = S(0);
                else
                    ready = false;
            }
            if (ready) {
                Mat<S> xi = Mat<S>::column(std::move(entries));
                if (otimes(t, xi) == xi) {
                    const S res = detail::residual_norm(ynext, xi);
                    if (res.cmp(opts.epsilon) <= 0) {
                        rep.mode = OrbitMode::Converging;
                        rep.iterations = idx;
                        rep.state = ynext;
                        rep.xi = xi;
                        rep.has_xi = true;
                        rep.residual = res;
                        // geometric rate from the last residual ratios
                        std::vector<S> res_tail;
                        for (std::size_t w = window.size() - 4; w < window.size(); ++w)
                            res_tail.push_back(detail::residual_norm(window[w], xi));
                        bool exact_rate = true;
                        for (const auto& rv : res_tail) exact_rate = exact_rate && !rv.is_zero();
                        if (exact_rate) {
                            S ratio = res_tail[1] / res_tail[0];
                            for (std::size_t w = 1; w + 1 < res_tail.size(); ++w)
                                exact_rate = exact_rate &&
                                             (res_tail[w + 1] / res_tail[w]) == ratio;
                            if (exact_rate) {
                                rep.rate = ratio;
                                rep.rate_approx = ratio.to_double();
                            }
                        }
                        if (!rep.rate && res_tail.size() >= 2 &&
                            !res_tail[res_tail.size() - 2].is_zero())
                            rep.rate_approx = res_tail.back().to_double() /
                                              res_tail[res_tail.size() - 2].to_double();
                        return rep;
                    }
                }
            }
        }
        y = std::move(ynext);
    }
    rep.mode = OrbitMode::Inconclusive;
    rep.iterations = opts.max_iter;
    rep.state = y;
    return rep;
}

template <class S>
struct PeriodResult {
    unsigned p = 0;
    unsigned k0 = 0;
    Root<S> lambda;
    bool robust = false;   // p == 1
    bool complete = true;  // false when the power search hit the cap
};

namespace detail {

// Prefilter in log space before confirming A^t = lambda^(t-s) A^s exactly.
template <class S>
struct PowerEq {
    const std::vector<Mat<S>>& pw;
    const Root<S>& lambda;
    std::vector<std::vector<double>> logs;  // logs[t][idx], -inf for zero
    double log_lambda;

    PowerEq(const std::vector<Mat<S>>& powers, const Root<S>& lam)
        : pw(powers), lambda(lam) {
        log_lambda = lam.is_zero() ? -std::numeric_limits<double>::infinity()
                                   : std::log(lam.to_double());
    }
    void sync() {
        const std::size_t n = pw.front().rows();
        while (logs.size() < pw.size()) {
            const Mat<S>& m = pw[logs.size()];
            std::vector<double> row(n * n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    row[i * n + j] = m(i, j).is_zero()
                                         ? -std::numeric_limits<double>::infinity()
                                         : std::log(m(i, j).to_double());
            logs.push_back(std::move(row));
        }
    }
    bool close(unsigned t, unsigned s) const {
        const double shift = static_cast<double>(t - s) * log_lambda;
        for (std::size_t idx = 0; idx < logs[t].size(); ++idx) {
            const double a = logs[t][idx], b = logs[s][idx];
            if (std::isinf(a) != std::isinf(b + shift)) return false;
            if (!std::isinf(a) && std::abs(a - (b + shift)) > 1e-6) return false;
        }
        return true;
    }
    bool exact(unsigned t, unsigned s) const {
        const unsigned d = t - s;
        const Mat<S>&hi = pw[t], &lo = pw[s];
        for (std::size_t i = 0; i < hi.rows(); ++i)
            for (std::size_t j = 0; j < hi.cols(); ++j) {
                const bool zh = hi(i, j).is_zero(), zl = lo(i, j).is_zero();
                if (zh != (zl || lambda.is_zero())) return false;
                if (zh) continue;
                // hi = lo * lambda^d  <=>  hi^l = lo^l * w^d
                if (hi(i, j).pow_ui(lambda.deg)
                        .cmp(lo(i, j).pow_ui(lambda.deg) * lambda.base.pow_ui(d)) != 0)
                    return false;
            }
        return true;
    }
    bool eq(unsigned t, unsigned s) { return close(t, s) && exact(t, s); }
};

}  // namespace detail

// Smallest p and least k0 with A^(k+p) = lambda^p A^k for all k >= k0, where
// lambda = mu(A). Requires irreducible input; a cap on the power search gives
// a partial report, never a wrong period.
template <class S>
PeriodResult<S> matrix_period(const Mat<S>& a, unsigned cap = 512) {
    if (!is_irreducible(a))
        throw precondition_error("matrix_period: input is reducible");
    PeriodResult<S> r;
    r.lambda = max_cycle_mean(a).value;
    std::vector<Mat<S>> pw{Mat<S>::identity(a.rows())};
    detail::PowerEq<S> eq(pw, r.lambda);
    auto ensure = [&](unsigned t) {
        while (pw.size() <= t) pw.push_back(otimes(pw.back(), a));
        eq.sync();
    };
    unsigned s0 = 0, p0 = 0;
    for (unsigned t = 1; t <= cap && p0 == 0; ++t) {
        ensure(t);
        for (unsigned s = t; s-- > 0;)
            if (eq.eq(t, s)) {
                s0 = s;
                p0 = t - s;
                break;
            }
    }
    if (p0 == 0) {
        r.complete = false;
        return r;
    }
    ensure(s0 + 2 * p0);
    for (unsigned d = 1; d <= p0; ++d) {
        if (p0 % d != 0) continue;
        bool works = true;
        for (unsigned j = 0; j < p0 && works; ++j) works = eq.eq(s0 + j + d, s0 + j);
        if (works) {
            r.p = d;
            break;
        }
    }
    for (unsigned k = 0; k <= s0; ++k)
        if (eq.eq(k + r.p, k)) {
            r.k0 = k;
            break;
        }
    r.robust = r.p == 1;
    return r;
}

// Common max-eigenvectors v_j with the eigenvalue table alpha[i][j] such
// that A_i (x) v_j = alpha_ij v_j exactly for all members.
template <class S>
struct CommonEigenSystem {
    std::vector<Mat<S>> vecs;
    std::vector<std::vector<S>> alpha;  // alpha[member][vec]
};

template <class S>
struct EigenRowCheck {
    bool ok = false;
    std::vector<S> alphas;  // one eigenvalue per family member when ok
    std::size_t fail_member = 0;
    std::size_t fail_coord = 0;
};

// Exact test of a user-supplied candidate against every family member.
template <class S>
EigenRowCheck<S> verify_common_eigenvector(const Family<S>& f, const Mat<S>& v) {
    EigenRowCheck<S> r;
    if (!v.is_vector() || f.size() == 0 || v.rows() != f.dim())
        throw shape_error("verify_common_eigenvector: shape mismatch");
    if (v.is_zero()) return r;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Mat<S> w = otimes(f.mats[i], v);
        S alpha{};
        for (std::size_t c = 0; c < v.rows(); ++c)
            if (!v.vec(c).is_zero()) {
                alpha = w.vec(c) / v.vec(c);
                break;
            }
        for (std::size_t c = 0; c < v.rows(); ++c)
            if (!(w.vec(c) == alpha * v.vec(c))) {
                r.fail_member = i;
                r.fail_coord = c;
                return r;
            }
        r.alphas.push_back(alpha);
    }
    r.ok = true;
    return r;
}

namespace detail {

template <class S>
Mat<S> normalize_vec(const Mat<S>& v) {
    const S top = v.max_entry();
    if (top.is_zero() || top.is_one()) return v;
    std::vector<S> entries;
    entries.reserve(v.rows());
    for (std::size_t i = 0; i < v.rows(); ++i) entries.push_back(v.vec(i) / top);
    return Mat<S>::column(std::move(entries));
}

}  // namespace detail

// Best-effort search: candidates are the exact eigencone generators of each
// member together with their per-eigenvalue (+)-hulls, each tested exactly
// against all members. Completeness is not claimed; user-supplied vectors go
// through verify_common_eigenvector.
template <class S>
CommonEigenSystem<S> common_eigenvectors(const Family<S>& f) {
    CommonEigenSystem<S> sys;
    if (f.size() == 0) return sys;
    std::vector<Mat<S>> candidates;
    auto offer = [&](const Mat<S>& raw) {
        if (raw.is_zero()) return;
        Mat<S> v = detail::normalize_vec(raw);
        for (const auto& c : candidates)
            if (c == v) return;
        candidates.push_back(std::move(v));
    };
    for (const auto& a : f.mats) {
        const auto pairs = eigen_spectrum(a);
        // group the exact witnesses per eigenvalue, and offer their (+)-hull
        std::vector<Root<S>> lambdas;
        for (const auto& p : pairs) {
            if (!p.exact) continue;
            offer(p.vec);
            bool seen = false;
            for (const auto& l : lambdas) seen = seen || l.cmp(p.lambda) == 0;
            if (!seen) lambdas.push_back(p.lambda);
        }
        for (const auto& l : lambdas) {
            std::optional<Mat<S>> hull;
            for (const auto& p : pairs) {
                if (!p.exact || p.lambda.cmp(l) != 0) continue;
                hull = hull ? oplus(*hull, p.vec) : p.vec;
            }
            if (hull) offer(*hull);
        }
    }
    sys.alpha.assign(f.size(), {});
    for (const auto& v : candidates) {
        const EigenRowCheck<S> row = verify_common_eigenvector(f, v);
        if (!row.ok) continue;
        sys.vecs.push_back(v);
        for (std::size_t i = 0; i < f.size(); ++i) sys.alpha[i].push_back(row.alphas[i]);
    }
    return sys;
}

template <class S>
struct ConeDecomposition {
    bool in_cone = false;
    std::vector<S> gamma;
    std::size_t residual_coord = 0;  // witness coordinate when not in cone
};

// Principal solution by residuation: gamma_j = min over positive coordinates
// of x_i / v_{j,i}; in the cone iff the recomposition is exact.
template <class S>
ConeDecomposition<S> cone_decompose(const Mat<S>& x, const std::vector<Mat<S>>& e) {
    if (e.empty()) throw precondition_error("cone_decompose: empty generating set");
    for (const auto& v : e)
        if (!v.is_vector() || v.rows() != x.rows())
            throw shape_error("cone_decompose: shape mismatch");
    ConeDecomposition<S> r;
    for (const auto& v : e) {
        std::optional<S> g;
        for (std::size_t i = 0; i < x.rows(); ++i) {
            if (v.vec(i).is_zero()) continue;
            const S q = x.vec(i) / v.vec(i);
            if (!g || q.cmp(*g) < 0) g = q;
        }
        r.gamma.push_back(g.value_or(S(0)));
    }
    Mat<S> recomposed = Mat<S>::zeros(x.rows(), 1);
    for (std::size_t j = 0; j < e.size(); ++j)
        recomposed = oplus(recomposed, scalar_scale(r.gamma[j], e[j]));
    if (recomposed == x) {
        r.in_cone = true;
        return r;
    }
    for (std::size_t i = 0; i < x.rows(); ++i)
        if (!(recomposed.vec(i) == x.vec(i))) {
            r.residual_coord = i;
            break;
        }
    return r;
}

template <class S>
struct LimitPrediction {
    Mat<S> xi;
    std::vector<S> beta;   // beta_j(word) = prod_t alpha_{w_t, j}
    std::vector<S> gamma;  // cone coefficients of x
    bool word_is_complete = false;
    bool word_fixed = false;               // A_w (x) xi == xi
    std::vector<bool> generator_fixed;     // A_i (x) xi == xi per member
};

// Limit of A_w^k x for x in the cone of E under jsr(F) <= 1: keep exactly the
// generators whose beta equals one. The word-fixed-point property is checked
// exactly, and per-generator fixedness when the word is complete.
template <class S>
LimitPrediction<S> predicted_limit(const Mat<S>& x, const Word& w,
                                   const CommonEigenSystem<S>& sys, const Family<S>& f) {
    const Root<S> rho = jsr(f).rho;
    const Root<S> one = Root<S>::from_scalar(S(1));
    if (rho.cmp(one) > 0)
        throw precondition_error("predicted_limit: jsr(F) = " + rho.str() + " > 1");
    if (sys.vecs.empty())
        throw precondition_error("predicted_limit: empty common eigenvector set");
    const ConeDecomposition<S> dec = cone_decompose(x, sys.vecs);
    if (!dec.in_cone)
        throw precondition_error("predicted_limit: x is not in cone(E), residual at coordinate " +
                                 std::to_string(dec.residual_coord + 1));
    LimitPrediction<S> pred;
    pred.gamma = dec.gamma;
    for (std::size_t j = 0; j < sys.vecs.size(); ++j) {
        S beta(1);
        for (const auto& sym : w) {
            const S& a = sys.alpha[f.index_of(sym)][j];
            if (S(1).cmp(a) < 0)
                throw precondition_error("predicted_limit: alpha exceeds 1 at member '" +
                                         sym + "'");
            beta = beta * a;
        }
        pred.beta.push_back(std::move(beta));
    }
    Mat<S> xi = Mat<S>::zeros(x.rows(), 1);
    for (std::size_t j = 0; j < sys.vecs.size(); ++j)
        if (pred.beta[j].is_one())
            xi = oplus(xi, scalar_scale(pred.gamma[j], sys.vecs[j]));
    pred.xi = std::move(xi);
    const Mat<S> aw = word_product(f, w);
    pred.word_fixed = otimes(aw, pred.xi) == pred.xi;
    pred.word_is_complete = word_complete(f, w);
    for (const auto& m : f.mats)
        pred.generator_fixed.push_back(otimes(m, pred.xi) == pred.xi);
    return pred;
}

// P(1) (x) xi == xi, exactly.
template <class S>
bool check_poly_fixed_point(const Poly<S>& p, const Mat<S>& xi) {
    if (!xi.is_vector() || xi.rows() != p.n())
        throw shape_error("check_poly_fixed_point: shape mismatch");
    return otimes(poly_eval(p, S(1)), xi) == xi;
}

template <class S>
struct DecayStep {
    unsigned j = 0;
    S norm;        // ||A_w^j x||_inf
    S pure_bound;  // r^(jp) ||x||, applicable once jp >= K
    S env_bound;   // C r'^(jp) ||x||, applicable at every step
    bool pure_applicable = false;
    bool pure_ok = true;
    bool env_ok = true;
};

template <class S>
struct DecayCertificate {
    Root<S> rho;
    S r;        // rational with rho < r < 1
    S r_prime;  // tighter rational bound used to derive K
    S envelope_constant;  // C with sup eta over length-t products <= C r'^t
    unsigned block_len = 0;   // T: eta(S^T)^(1/T) <= r'
    unsigned threshold = 0;   // K: pure bound valid for product lengths >= K
    std::vector<DecayStep<S>> steps;
    OrbitMode orbit_mode = OrbitMode::Inconclusive;
    bool nonzero_periodic_found = false;
    bool holds = false;
};

// Certified geometric decay under jsr(F) < 1. Picks a rational r above rho,
// derives an exact envelope sup eta <= C r'^t from a power block of the
// (+)-sum, computes the threshold K with C <= (r/r')^K, and checks the
// per-step bounds exactly along the given orbit.
template <class S>
DecayCertificate<S> decay_certificate(const Family<S>& f, const Word& w, const Mat<S>& x,
                                      unsigned k) {
    DecayCertificate<S> cert;
    cert.rho = jsr(f).rho;
    const Root<S> one = Root<S>::from_scalar(S(1));
    if (!(cert.rho.cmp(one) < 0))
        throw precondition_error("decay_certificate: jsr(F) = " + cert.rho.str() + " >= 1");
    // bracket rho from above by a rational hi < 1, then spread r', r evenly
    // across the remaining gap so the envelope block stays short
    S lo(0), hi(1);
    unsigned updates = 0;
    for (unsigned it = 0; it < 200 && (updates < 12 || !(hi.cmp(S(1)) < 0)); ++it) {
        const S mid = (lo + hi) / S(2);
        if (cert.rho.cmp(Root<S>::from_scalar(mid)) < 0) {
            hi = mid;
            ++updates;
        } else {
            lo = mid;
        }
    }
    cert.r = (hi + S(1)) / S(2);
    cert.r_prime = (hi * S(3) + S(1)) / S(4);

    const Mat<S> sum = f.oplus_all();
    const S m_top = max_of(S(1), eta(sum, Norm::Sup));
    Mat<S> block = sum;
    unsigned t_len = 1;
    while (Root<S>(eta(block, Norm::Sup), t_len).cmp(Root<S>::from_scalar(cert.r_prime)) > 0) {
        if (t_len >= 4096)
            throw precondition_error("decay_certificate: spectral gap too small for the horizon");
        block = otimes(block, block);
        t_len *= 2;
    }
    cert.block_len = t_len;
    cert.envelope_constant =
        t_len == 1 ? S(1) : (m_top / cert.r_prime).pow_ui(t_len - 1);

    const S q = cert.r / cert.r_prime;  // > 1
    const double logq = std::log(q.to_double());
    double logc = (t_len - 1) * (std::log(m_top.to_double()) - std::log(cert.r_prime.to_double()));
    unsigned K = logc <= 0 ? 0 : static_cast<unsigned>(std::ceil(logc / logq));
    while (cert.envelope_constant.cmp(q.pow_ui(K)) > 0) ++K;
    while (K > 0 && cert.envelope_constant.cmp(q.pow_ui(K - 1)) <= 0) --K;
    cert.threshold = K;

    const Mat<S> aw = word_product(f, w);
    const unsigned p = static_cast<unsigned>(w.size());
    const S x_norm = x.max_entry();
    Mat<S> y = x;
    cert.holds = true;
    for (unsigned j = 1; j <= k; ++j) {
        y = otimes(aw, y);
        DecayStep<S> step;
        step.j = j;
        step.norm = y.max_entry();
        const unsigned len = j * p;
        step.pure_bound = cert.r.pow_ui(len) * x_norm;
        step.env_bound = cert.envelope_constant * cert.r_prime.pow_ui(len) * x_norm;
        step.pure_applicable = len >= K;
        if (step.pure_applicable) step.pure_ok = step.norm.cmp(step.pure_bound) <= 0;
        step.env_ok = step.norm.cmp(step.env_bound) <= 0;
        cert.holds = cert.holds && step.pure_ok && step.env_ok;
        cert.steps.push_back(std::move(step));
    }
    OrbitOptions<S> opts;
    opts.max_iter = std::max(200u, 4 * k);
    const OrbitReport<S> orb = orbit(aw, x, opts);
    cert.orbit_mode = orb.mode;
    cert.nonzero_periodic_found =
        (orb.mode == OrbitMode::ExactFixpoint || orb.mode == OrbitMode::ExactPeriodic) &&
        !orb.state.is_zero();
    cert.holds = cert.holds && !cert.nonzero_periodic_found;
    return cert;
}

template <class S>
struct PeriodicPointEvidence {
    bool coefficients_irreducible = false;
    bool y_nonzero = false;
    bool periodicity_holds = false;  // C_P^q (x) y = y
    Mat<S> orbit_hull;               // y (+) C_P y (+) ... (+) C_P^{q-1} y
    bool fixed_point_holds = false;  // C_P (x) hull = hull
    Root<S> mu;
    bool mu_is_one = false;
    bool verdict = false;
    std::string failure;
};

// From a nonzero periodic point of y -> C_P y with irreducible coefficients,
// build the (+)-orbit hull, check it is a fixed point, and confirm
// mu(C_P) = 1. Failures are reported, not thrown.
template <class S>
PeriodicPointEvidence<S> periodic_point_implies_unit_mu(const Poly<S>& p, const Mat<S>& y,
                                                        unsigned q) {
    PeriodicPointEvidence<S> ev;
    if (q == 0) {
        ev.failure = "period q must be >= 1";
        return ev;
    }
    ev.coefficients_irreducible = true;
    for (const auto& c : p.coeffs())
        ev.coefficients_irreducible = ev.coefficients_irreducible && is_irreducible(c);
    if (!ev.coefficients_irreducible) {
        ev.failure = "a coefficient is reducible";
        return ev;
    }
    const Mat<S> cp = companion(p);
    if (!y.is_vector() || y.rows() != cp.rows())
        throw shape_error("periodic_point_implies_unit_mu: y must live in the companion space");
    ev.y_nonzero = !y.is_zero();
    if (!ev.y_nonzero) {
        ev.failure = "y = 0 rejected (nonzero required)";
        return ev;
    }
    Mat<S> iter = y;
    Mat<S> hull = y;
    for (unsigned t = 1; t < q; ++t) {
        iter = otimes(cp, iter);
        hull = oplus(hull, iter);
    }
    ev.periodicity_holds = otimes(cp, iter) == y;
    if (!ev.periodicity_holds) {
        ev.failure = "C_P^q y != y";
        return ev;
    }
    ev.orbit_hull = hull;
    ev.fixed_point_holds = otimes(cp, hull) == hull;
    ev.mu = max_cycle_mean(cp).value;
    ev.mu_is_one = ev.mu.cmp(Root<S>::from_scalar(S(1))) == 0;
    ev.verdict = ev.fixed_point_holds && ev.mu_is_one;
    if (!ev.verdict) ev.failure = ev.fixed_point_holds ? "mu(C_P) != 1" : "hull not fixed";
    return ev;
}

}  // namespace maxalg
