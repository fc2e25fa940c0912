#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "maxalg/graph.hpp"
#include "maxalg/matrix.hpp"
#include "maxalg/root.hpp"

namespace maxalg {

// The two monotone, permutation-invariant norms with exact closed-form eta.
enum class Norm { Sup, Sum };

inline const char* norm_name(Norm n) { return n == Norm::Sup ? "linf" : "l1"; }

// Lur seminorm eta(A) = sup ||Ax||/||x|| over nonzero nonnegative x.
// Closed forms: max entry (sup norm), max column sum (sum norm).
template <class S>
S eta(const Mat<S>& a, Norm norm) {
    if (norm == Norm::Sup) return a.max_entry();
    S best{};
    for (std::size_t j = 0; j < a.cols(); ++j) {
        S col{};
        for (std::size_t i = 0; i < a.rows(); ++i) col = col + a(i, j);
        if (best.cmp(col) < 0) best = col;
    }
    return best;
}

template <class S>
S vector_norm(const Mat<S>& x, Norm norm) {
    if (!x.is_vector()) throw shape_error("vector_norm: not a column vector");
    if (norm == Norm::Sup) return x.max_entry();
    S s{};
    for (std::size_t i = 0; i < x.rows(); ++i) s = s + x.vec(i);
    return s;
}

// Brute-force grid oracle for eta: max of ||Ax||/||x|| over x with
// coordinates in {0, 1/grid, ..., 1}. Always <= the closed form.
template <class S>
S eta_oracle(const Mat<S>& a, Norm norm, unsigned grid, std::size_t guard = 2'000'000) {
    if (grid < 1) throw precondition_error("eta_oracle: grid must be >= 1");
    const std::size_t n = a.cols();
    double count = std::pow(static_cast<double>(grid) + 1.0, static_cast<double>(n));
    if (count > static_cast<double>(guard))
        throw precondition_error("eta_oracle: grid enumeration exceeds guard");
    std::vector<unsigned> idx(n, 0);
    S best{};
    while (true) {
        std::size_t pos = 0;
        while (pos < n && idx[pos] == grid) {
            idx[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
        ++idx[pos];
        std::vector<S> entries;
        entries.reserve(n);
        for (unsigned v : idx)
            entries.push_back(S(static_cast<long>(v), static_cast<long>(grid)));
        Mat<S> x = Mat<S>::column(std::move(entries));
        const S nx = vector_norm(x, norm);
        if (nx.is_zero()) continue;
        const S ratio = vector_norm(otimes(a, x), norm) / nx;
        if (best.cmp(ratio) < 0) best = ratio;
    }
    return best;
}

// eta-hat(A) = limsup eta(A^k)^(1/k) = mu(A), exactly.
template <class S>
Root<S> eta_hat(const Mat<S>& a) {
    return max_cycle_mean(a).value;
}

// Finite-k estimator eta(A^k)^(1/k), k = 1..K; each term dominates mu(A).
template <class S>
std::vector<Root<S>> eta_hat_estimate(const Mat<S>& a, unsigned K, Norm norm = Norm::Sup) {
    if (!a.is_square()) throw shape_error("eta_hat_estimate: non-square input");
    std::vector<Root<S>> out;
    Mat<S> p = Mat<S>::identity(a.rows());
    for (unsigned k = 1; k <= K; ++k) {
        p = otimes(p, a);
        out.emplace_back(eta(p, norm), k);
    }
    return out;
}

namespace detail {

// Value c * lambda^e for a shared lambda = w^{1/l}. All comparisons reduce
// to rational cross-powers, so eigen admission stays exact even when lambda
// is irrational.
template <class S>
struct Scaled {
    S c{};
    long e = 0;
    bool is_zero() const { return c.is_zero(); }
};

template <class S>
struct RootCtx {
    S w;
    unsigned long l = 1;

    int cmp(const Scaled<S>& x, const Scaled<S>& y) const {
        if (x.is_zero()) return y.is_zero() ? 0 : -1;
        if (y.is_zero()) return 1;
        S lhs = x.c.pow_ui(l), rhs = y.c.pow_ui(l);
        const long d = x.e - y.e;
        if (d > 0)
            lhs = lhs * w.pow_ui(static_cast<unsigned long>(d));
        else if (d < 0)
            rhs = rhs * w.pow_ui(static_cast<unsigned long>(-d));
        return lhs.cmp(rhs);
    }
    Scaled<S> mul(const Scaled<S>& x, const Scaled<S>& y) const {
        if (x.is_zero() || y.is_zero()) return {};
        return {x.c * y.c, x.e + y.e};
    }
    Scaled<S> div(const Scaled<S>& x, const Scaled<S>& y) const {
        return {x.c / y.c, x.e - y.e};
    }
    Scaled<S> one() const { return {S(1), 0}; }
    bool is_one(const Scaled<S>& x) const { return cmp(x, one()) == 0; }
    double to_double(const Scaled<S>& x) const {
        if (x.is_zero()) return 0.0;
        return x.c.to_double() *
               std::pow(w.to_double(), static_cast<double>(x.e) / static_cast<double>(l));
    }
    // c * w^(e/l) as an exact scalar; valid only when l == 1.
    S to_scalar(const Scaled<S>& x) const {
        if (x.is_zero()) return S{};
        if (x.e >= 0) return x.c * w.pow_ui(static_cast<unsigned long>(x.e));
        return x.c / w.pow_ui(static_cast<unsigned long>(-x.e));
    }
};

template <class S>
using SVec = std::vector<Scaled<S>>;

template <class S>
struct SMat {
    std::size_t n = 0;
    std::vector<Scaled<S>> e;
    SMat() = default;
    explicit SMat(std::size_t dim) : n(dim), e(dim * dim) {}
    Scaled<S>& at(std::size_t i, std::size_t j) { return e[i * n + j]; }
    const Scaled<S>& at(std::size_t i, std::size_t j) const { return e[i * n + j]; }
};

template <class S>
SMat<S> smat_otimes(const RootCtx<S>& ctx, const SMat<S>& a, const SMat<S>& b) {
    SMat<S> r(a.n);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t k = 0; k < a.n; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < a.n; ++j) {
                if (b.at(k, j).is_zero()) continue;
                Scaled<S> p = ctx.mul(a.at(i, k), b.at(k, j));
                if (ctx.cmp(r.at(i, j), p) < 0) r.at(i, j) = std::move(p);
            }
        }
    return r;
}

// Internal eigenpair in scaled form; lambda > 0.
template <class S>
struct ScaledEigen {
    Root<S> lambda;
    RootCtx<S> ctx;
    SVec<S> vec;
    std::size_t class_id = 0;
};

// Constructive admission for a positive candidate lambda: normalize B = A/lambda
// in scaled arithmetic, take Kleene-star columns at critical nodes, keep those
// that verify A (x) v = lambda v exactly.
template <class S>
std::vector<ScaledEigen<S>> admit_candidate(const Mat<S>& a, const Root<S>& lambda,
                                            const std::vector<std::size_t>& vertex_class) {
    const std::size_t n = a.rows();
    RootCtx<S> ctx{lambda.base, lambda.deg};
    SMat<S> b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!a(i, j).is_zero()) b.at(i, j) = {a(i, j), -1};
    std::vector<SMat<S>> pow;
    pow.push_back(SMat<S>(n));
    for (std::size_t i = 0; i < n; ++i) pow[0].at(i, i) = ctx.one();
    for (std::size_t k = 1; k <= n; ++k) pow.push_back(smat_otimes(ctx, pow.back(), b));
    SMat<S> star(n);
    for (std::size_t k = 0; k + 1 <= n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (ctx.cmp(star.at(i, j), pow[k].at(i, j)) < 0)
                    star.at(i, j) = pow[k].at(i, j);

    std::vector<ScaledEigen<S>> found;
    for (std::size_t i = 0; i < n; ++i) {
        bool critical = false;
        for (std::size_t k = 1; k <= n && !critical; ++k)
            critical = ctx.is_one(pow[k].at(i, i));
        if (!critical) continue;
        // raw star column: entry 1 at the critical node itself
        SVec<S> v(n);
        for (std::size_t r = 0; r < n; ++r) v[r] = star.at(r, i);
        std::size_t arg = 0;
        for (std::size_t r = 1; r < n; ++r)
            if (ctx.cmp(v[arg], v[r]) < 0) arg = r;
        if (v[arg].is_zero()) continue;
        // verify A (x) v = lambda v
        bool ok = true;
        for (std::size_t r = 0; r < n && ok; ++r) {
            Scaled<S> lhs{};
            for (std::size_t j = 0; j < n; ++j) {
                if (a(r, j).is_zero() || v[j].is_zero()) continue;
                Scaled<S> t{a(r, j) * v[j].c, v[j].e};
                if (ctx.cmp(lhs, t) < 0) lhs = std::move(t);
            }
            ok = ctx.cmp(lhs, Scaled<S>{v[r].c, v[r].e + 1}) == 0;
        }
        if (!ok) continue;
        // dedupe up to scaling: compare max-normalized copies
        auto normalized = [&](const SVec<S>& raw) {
            std::size_t top = 0;
            for (std::size_t r = 1; r < n; ++r)
                if (ctx.cmp(raw[top], raw[r]) < 0) top = r;
            SVec<S> out(n);
            for (std::size_t r = 0; r < n; ++r)
                if (!raw[r].is_zero()) out[r] = ctx.div(raw[r], raw[top]);
            return out;
        };
        const SVec<S> vn = normalized(v);
        bool duplicate = false;
        for (const auto& prev : found) {
            const SVec<S> pn = normalized(prev.vec);
            bool same = true;
            for (std::size_t r = 0; r < n && same; ++r) same = ctx.cmp(pn[r], vn[r]) == 0;
            if (same) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) found.push_back({lambda, ctx, std::move(v), vertex_class[i]});
    }
    return found;
}

template <class S>
std::vector<std::size_t> vertex_classes(const FnfForm<S>& fnf) {
    std::vector<std::size_t> cls(fnf.sigma.size());
    for (std::size_t c = 0; c < fnf.block_count(); ++c)
        for (std::size_t p = fnf.block_start[c]; p < fnf.block_start[c + 1]; ++p)
            cls[fnf.sigma(p)] = c;
    return cls;
}

}  // namespace detail

// One admitted max-eigenpair. The witness is exact when the eigenvalue is
// rational; for a true root the pair carries a certified lambda and a float
// witness flagged approximate.
template <class S>
struct EigenPair {
    Root<S> lambda;
    Mat<S> vec;  // valid when exact
    bool exact = true;
    std::vector<double> approx;
    std::size_t class_id = 0;
};

namespace detail {

template <class S>
EigenPair<S> render_eigen(const ScaledEigen<S>& se) {
    EigenPair<S> p;
    p.lambda = se.lambda;
    p.class_id = se.class_id;
    p.exact = se.lambda.is_scalar();
    p.approx.reserve(se.vec.size());
    for (const auto& x : se.vec) p.approx.push_back(se.ctx.to_double(x));
    if (p.exact) {
        std::vector<S> entries;
        entries.reserve(se.vec.size());
        for (const auto& x : se.vec) entries.push_back(se.ctx.to_scalar(x));
        p.vec = Mat<S>::column(std::move(entries));
    }
    return p;
}

}  // namespace detail

// Max-spectrum with constructive witnesses. Candidates are the cycle means
// of the FNF diagonal classes; a candidate is admitted iff a Kleene-star
// witness verifies. mu(A) is always admitted; irreducible matrices yield a
// single eigenvalue.
template <class S>
std::vector<EigenPair<S>> eigen_spectrum(const Mat<S>& a) {
    if (!a.is_square()) throw shape_error("eigen_spectrum: non-square input");
    const FnfForm<S> fnf = frobenius_normal_form(a);
    const std::vector<std::size_t> vclass = detail::vertex_classes(fnf);
    std::vector<Root<S>> candidates;
    for (std::size_t c = 0; c < fnf.block_count(); ++c) {
        Root<S> mu = max_cycle_mean(fnf.block(c)).value;
        bool dup = false;
        for (const auto& x : candidates)
            if (x.cmp(mu) == 0) dup = true;
        if (!dup) candidates.push_back(std::move(mu));
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Root<S>& x, const Root<S>& y) { return y.cmp(x) < 0; });
    std::vector<EigenPair<S>> out;
    for (const auto& lambda : candidates) {
        if (lambda.is_zero()) {
            for (std::size_t j = 0; j < a.cols(); ++j) {
                bool zero_col = true;
                for (std::size_t i = 0; i < a.rows() && zero_col; ++i)
                    zero_col = a(i, j).is_zero();
                if (!zero_col) continue;
                EigenPair<S> p;
                p.lambda = Root<S>(S(0), 1);
                Mat<S> v(a.rows(), 1);
                v(j, 0) = S(1);
                p.approx.assign(a.rows(), 0.0);
                p.approx[j] = 1.0;
                p.vec = std::move(v);
                p.class_id = vclass[j];
                out.push_back(std::move(p));
            }
            continue;
        }
        for (auto& se : detail::admit_candidate(a, lambda, vclass))
            out.push_back(detail::render_eigen(se));
    }
    return out;
}

namespace detail {

// Scaled-form spectrum for downstream exact re-verification (polynomials).
// Zero eigenpairs are returned through the public interface only.
template <class S>
std::vector<ScaledEigen<S>> eigen_spectrum_scaled(const Mat<S>& a) {
    const FnfForm<S> fnf = frobenius_normal_form(a);
    const std::vector<std::size_t> vclass = vertex_classes(fnf);
    std::vector<Root<S>> candidates;
    for (std::size_t c = 0; c < fnf.block_count(); ++c) {
        Root<S> mu = max_cycle_mean(fnf.block(c)).value;
        if (mu.is_zero()) continue;
        bool dup = false;
        for (const auto& x : candidates)
            if (x.cmp(mu) == 0) dup = true;
        if (!dup) candidates.push_back(std::move(mu));
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Root<S>& x, const Root<S>& y) { return y.cmp(x) < 0; });
    std::vector<ScaledEigen<S>> out;
    for (const auto& lambda : candidates)
        for (auto& se : admit_candidate(a, lambda, vclass)) out.push_back(std::move(se));
    return out;
}

}  // namespace detail

// Generating set of the eigencone for a positive rational lambda: verified
// critical columns of (A/lambda)*. Empty when lambda is not an eigenvalue.
template <class S>
std::vector<Mat<S>> eigenvectors_for(const Mat<S>& a, const S& lambda) {
    if (!a.is_square()) throw shape_error("eigenvectors_for: non-square input");
    if (lambda.is_zero())
        throw precondition_error("eigenvectors_for: lambda = 0 rejected");
    const FnfForm<S> fnf = frobenius_normal_form(a);
    std::vector<Mat<S>> out;
    for (auto& se : detail::admit_candidate(a, Root<S>::from_scalar(lambda),
                                            detail::vertex_classes(fnf))) {
        std::vector<S> entries;
        entries.reserve(se.vec.size());
        for (const auto& x : se.vec) entries.push_back(se.ctx.to_scalar(x));
        out.push_back(Mat<S>::column(std::move(entries)));
    }
    return out;
}

template <class S>
struct JsrBracket {
    unsigned k = 0;
    Root<S> lower;  // max mu(product)^(1/k)
    Root<S> upper;  // max eta_sup(product)^(1/k)
};

template <class S>
struct JsrReport {
    Root<S> rho;
    std::vector<std::size_t> witness_cycle;
    std::vector<std::string> witness_assignment;  // matrix name per cycle edge
    std::vector<JsrBracket<S>> brackets;
    bool certified = true;           // every bracket straddles rho
    unsigned lower_attained_at = 0;  // smallest k with lower_k == rho (0 if none)
};

// Exact joint spectral radius rho(F) = mu of the pointwise (+)-sum, with a
// witness cycle and a matrix assignment realizing each edge.
template <class S>
JsrReport<S> jsr(const Family<S>& f) {
    if (f.size() == 0) throw precondition_error("jsr: empty family");
    const Mat<S> sum = f.oplus_all();
    const CycleMean<S> cm = max_cycle_mean(sum);
    JsrReport<S> r;
    r.rho = cm.value;
    r.witness_cycle = cm.cycle;
    for (std::size_t t = 0; t < cm.cycle.size(); ++t) {
        const std::size_t u = cm.cycle[t], v = cm.cycle[(t + 1) % cm.cycle.size()];
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f.mats[i](u, v) == sum(u, v)) {
                r.witness_assignment.push_back(f.names[i]);
                break;
            }
    }
    return r;
}

// Finite-horizon brackets: for k = 1..K enumerate all |F|^k ordered products;
// lower_k = max mu^(1/k) <= rho <= upper_k = max eta^(1/k), with equality of
// some lower_k for k <= n.
template <class S>
JsrReport<S> jsr_bracket(const Family<S>& f, unsigned K, std::size_t guard = 100'000) {
    JsrReport<S> r = jsr(f);
    double total = 0, level = 1;
    for (unsigned k = 1; k <= K; ++k) {
        level *= static_cast<double>(f.size());
        total += level;
    }
    if (total > static_cast<double>(guard))
        throw precondition_error("jsr_bracket: |F|^K enumeration exceeds guard " +
                                 std::to_string(guard));
    std::vector<Mat<S>> current{Mat<S>::identity(f.dim())};
    for (unsigned k = 1; k <= K; ++k) {
        std::vector<Mat<S>> next;
        next.reserve(current.size() * f.size());
        for (const auto& p : current)
            for (const auto& m : f.mats) next.push_back(otimes(m, p));
        current = std::move(next);
        JsrBracket<S> br;
        br.k = k;
        bool first = true;
        for (const auto& p : current) {
            Root<S> lo = max_cycle_mean(p).value.root_ui(k);
            Root<S> hi(eta(p, Norm::Sup), k);
            if (first) {
                br.lower = std::move(lo);
                br.upper = std::move(hi);
                first = false;
            } else {
                if (br.lower.cmp(lo) < 0) br.lower = std::move(lo);
                if (br.upper.cmp(hi) < 0) br.upper = std::move(hi);
            }
        }
        if (!(br.lower.cmp(r.rho) <= 0 && r.rho.cmp(br.upper) <= 0)) r.certified = false;
        if (r.lower_attained_at == 0 && br.lower.cmp(r.rho) == 0) r.lower_attained_at = k;
        r.brackets.push_back(std::move(br));
    }
    return r;
}

}  // namespace maxalg
