#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "maxalg/graph.hpp"
#include "maxalg/matrix.hpp"
#include "maxalg/spectral.hpp"

namespace maxalg {

// Max-matrix polynomial P(lambda) = A_0 (+) lambda A_1 (+) ... with exactly m
// stored coefficients. Trailing zero matrices are kept: the spectrum depends
// on m, so m is data.
template <class S>
class Poly {
public:
    explicit Poly(std::vector<Mat<S>> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw shape_error("Poly: needs at least one coefficient");
        for (const auto& c : coeffs_) {
            if (!c.is_square()) throw shape_error("Poly: non-square coefficient");
            if (c.rows() != coeffs_.front().rows())
                throw shape_error("Poly: coefficient size mismatch");
        }
    }

    std::size_t m() const { return coeffs_.size(); }
    std::size_t n() const { return coeffs_.front().rows(); }
    const Mat<S>& coeff(std::size_t j) const { return coeffs_[j]; }
    const std::vector<Mat<S>>& coeffs() const { return coeffs_; }

    // Sigma_P: the distinct coefficients, in order of first appearance.
    std::vector<Mat<S>> sigma() const {
        std::vector<Mat<S>> out;
        for (const auto& c : coeffs_)
            if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
        return out;
    }

private:
    std::vector<Mat<S>> coeffs_;
};

template <class S>
Mat<S> poly_eval(const Poly<S>& p, const S& lambda) {
    Mat<S> r = p.coeff(0);
    S power(1);
    for (std::size_t j = 1; j < p.m(); ++j) {
        power = power * lambda;
        r = oplus(r, scalar_scale(power, p.coeff(j)));
    }
    return r;
}

// Coefficient s of PQ is (+) over i+j = s of A_i (x) B_j; evaluation is a
// homomorphism: (PQ)(lambda) = P(lambda) (x) Q(lambda).
template <class S>
Poly<S> poly_multiply(const Poly<S>& p, const Poly<S>& q) {
    if (p.n() != q.n()) throw shape_error("poly_multiply: size mismatch");
    const std::size_t m = p.m() + q.m() - 1;
    std::vector<Mat<S>> coeffs(m, Mat<S>::zeros(p.n(), p.n()));
    for (std::size_t i = 0; i < p.m(); ++i)
        for (std::size_t j = 0; j < q.m(); ++j)
            coeffs[i + j] = oplus(coeffs[i + j], otimes(p.coeff(i), q.coeff(j)));
    return Poly<S>(std::move(coeffs));
}

// Block companion matrix of order mn: identity blocks on the superdiagonal,
// bottom block row A_0 ... A_{m-1}.
template <class S>
Mat<S> companion(const Poly<S>& p) {
    const std::size_t m = p.m(), n = p.n();
    if (m == 1) return p.coeff(0);
    Mat<S> c(m * n, m * n);
    for (std::size_t b = 0; b + 1 < m; ++b)
        for (std::size_t i = 0; i < n; ++i) c(b * n + i, (b + 1) * n + i) = S(1);
    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                c((m - 1) * n + i, b * n + j) = p.coeff(b)(i, j);
    return c;
}

// One verified point of sigma_m[P] with its witness.
template <class S>
struct PolyRoot {
    Root<S> k;
    Mat<S> vec;  // valid when exact
    bool exact = true;
    std::vector<double> approx;
};

template <class S>
struct PolySpectrum {
    std::vector<PolyRoot<S>> roots;  // descending, one witness per value
    bool pool_triangularizable = false;
    std::vector<Root<S>> diagonal_union;  // union formula values, when applicable
    std::vector<Root<S>> union_excess;    // diagonal-union values with no witness
};

// Unique positive solution of max_j alpha_j k^j = k^m, plus 0 iff alpha_0 = 0.
// The left side over k^m is strictly decreasing, so the positive solution is
// max over positive alpha_j of alpha_j^(1/(m-j)).
template <class S>
std::vector<Root<S>> scalar_poly_spectrum(const std::vector<S>& alpha, std::size_t m) {
    if (alpha.empty() || m != alpha.size())
        throw precondition_error("scalar_poly_spectrum: m must equal the coefficient count");
    std::vector<Root<S>> out;
    bool any_positive = false;
    Root<S> best;
    for (std::size_t j = 0; j < m; ++j) {
        if (alpha[j].is_zero()) continue;
        Root<S> cand(alpha[j], static_cast<unsigned long>(m - j));
        if (!any_positive || best.cmp(cand) < 0) best = std::move(cand);
        any_positive = true;
    }
    if (any_positive) out.push_back(std::move(best));
    if (alpha[0].is_zero()) out.emplace_back(S(0), 1);
    return out;
}

namespace detail {

// Re-verify P(k) (x) v = k^m v for a companion eigenpair restricted to its
// first n-block, in scaled arithmetic (exact also for irrational k).
template <class S>
bool verify_poly_eigen(const Poly<S>& p, const RootCtx<S>& ctx, const SVec<S>& v) {
    const std::size_t n = p.n();
    const long m = static_cast<long>(p.m());
    for (std::size_t i = 0; i < n; ++i) {
        Scaled<S> lhs{};
        for (long d = 0; d < m; ++d)
            for (std::size_t j = 0; j < n; ++j) {
                const S& a = p.coeff(static_cast<std::size_t>(d))(i, j);
                if (a.is_zero() || v[j].is_zero()) continue;
                Scaled<S> t{a * v[j].c, v[j].e + d};
                if (ctx.cmp(lhs, t) < 0) lhs = std::move(t);
            }
        if (ctx.cmp(lhs, Scaled<S>{v[i].c, v[i].e + m}) != 0) return false;
    }
    return true;
}

}  // namespace detail

// sigma_m[P] through the companion matrix, every value carrying a witness
// verified against P(k) (x) v = k^m v. When the coefficient pool is
// simultaneously triangularizable the diagonal union formula is evaluated as
// a diagnostic; values it contributes beyond the verified spectrum are
// reported in union_excess rather than admitted.
template <class S>
PolySpectrum<S> poly_spectrum(const Poly<S>& p) {
    PolySpectrum<S> out;
    const Mat<S> cp = companion(p);
    for (auto& se : detail::eigen_spectrum_scaled(cp)) {
        bool seen = false;
        for (const auto& r : out.roots)
            if (r.k.cmp(se.lambda) == 0) seen = true;
        if (seen) continue;
        detail::SVec<S> v(se.vec.begin(), se.vec.begin() + static_cast<long>(p.n()));
        bool nonzero = false;
        for (const auto& x : v) nonzero = nonzero || !x.is_zero();
        if (!nonzero || !detail::verify_poly_eigen(p, se.ctx, v)) continue;
        PolyRoot<S> r;
        r.k = se.lambda;
        r.exact = se.lambda.is_scalar();
        for (const auto& x : v) r.approx.push_back(se.ctx.to_double(x));
        if (r.exact) {
            std::vector<S> entries;
            for (const auto& x : v) entries.push_back(se.ctx.to_scalar(x));
            r.vec = Mat<S>::column(std::move(entries));
        }
        out.roots.push_back(std::move(r));
    }
    // k = 0 belongs to the spectrum iff A_0 has a zero column
    for (std::size_t j = 0; j < p.n(); ++j) {
        bool zero_col = true;
        for (std::size_t i = 0; i < p.n() && zero_col; ++i)
            zero_col = p.coeff(0)(i, j).is_zero();
        if (zero_col) {
            PolyRoot<S> r;
            r.k = Root<S>(S(0), 1);
            Mat<S> v(p.n(), 1);
            v(j, 0) = S(1);
            r.vec = std::move(v);
            r.approx.assign(p.n(), 0.0);
            r.approx[j] = 1.0;
            out.roots.push_back(std::move(r));
            break;
        }
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const PolyRoot<S>& x, const PolyRoot<S>& y) { return y.k.cmp(x.k) < 0; });

    const TriangularizerResult trg = find_common_triangularizer(p.sigma());
    out.pool_triangularizable = trg.sigma.has_value();
    if (out.pool_triangularizable) {
        const std::size_t n = p.n();
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<S> diag;
            for (std::size_t j = 0; j < p.m(); ++j)
                diag.push_back(permute_similarity(p.coeff(j), *trg.sigma)(i, i));
            for (auto& k : scalar_poly_spectrum(diag, p.m())) {
                bool dup = false;
                for (const auto& x : out.diagonal_union)
                    if (x.cmp(k) == 0) dup = true;
                if (!dup) out.diagonal_union.push_back(std::move(k));
            }
        }
        std::sort(out.diagonal_union.begin(), out.diagonal_union.end(),
                  [](const Root<S>& x, const Root<S>& y) { return y.cmp(x) < 0; });
        for (const auto& k : out.diagonal_union) {
            bool verified = false;
            for (const auto& r : out.roots)
                if (r.k.cmp(k) == 0) verified = true;
            if (!verified) out.union_excess.push_back(k);
        }
    }
    return out;
}

template <class S>
S poly_eta(const Poly<S>& p, Norm norm) {
    S best{};
    for (const auto& c : p.coeffs()) best = max_of(best, eta(c, norm));
    return best;
}

template <class S>
Root<S> poly_eta_hat(const Poly<S>& p) {
    Root<S> best(S(0), 1);
    for (const auto& c : p.coeffs()) best = root_max(best, eta_hat(c));
    return best;
}

// Induced matrix norm of a coefficient: for nonnegative matrices the sup /
// sum vector norms induce the classical row-sum / column-sum norms.
template <class S>
S induced_norm(const Mat<S>& a, Norm norm) {
    S best{};
    if (norm == Norm::Sup) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            S row{};
            for (std::size_t j = 0; j < a.cols(); ++j) row = row + a(i, j);
            best = max_of(best, row);
        }
    } else {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            S col{};
            for (std::size_t i = 0; i < a.rows(); ++i) col = col + a(i, j);
            best = max_of(best, col);
        }
    }
    return best;
}

template <class S>
S poly_norm(const Poly<S>& p, Norm norm) {
    S best{};
    for (const auto& c : p.coeffs()) best = max_of(best, induced_norm(c, norm));
    return best;
}

template <class S>
Family<S> coefficient_pool(const std::vector<Poly<S>>& polys) {
    Family<S> pool;
    for (const auto& p : polys)
        for (const auto& c : p.coeffs()) {
            bool dup = false;
            for (const auto& m : pool.mats)
                if (m == c) dup = true;
            if (!dup) pool.add("C" + std::to_string(pool.size()), c);
        }
    return pool;
}

// eta-hat(P) <= rho(Sigma_P) <= eta(P), all three exact.
template <class S>
struct ChainReport {
    Root<S> eta_hat_value;
    Root<S> rho;
    Root<S> eta_value;
    bool holds = false;
};

template <class S>
ChainReport<S> check_chain_single(const Poly<S>& p, Norm norm) {
    Family<S> pool;
    std::size_t i = 0;
    for (const auto& c : p.sigma()) pool.add("A" + std::to_string(i++), c);
    ChainReport<S> r;
    r.eta_hat_value = poly_eta_hat(p);
    r.rho = jsr(pool).rho;
    r.eta_value = Root<S>::from_scalar(poly_eta(p, norm));
    r.holds = r.eta_hat_value.cmp(r.rho) <= 0 && r.rho.cmp(r.eta_value) <= 0;
    return r;
}

template <class S>
struct FamilyBoundsStep {
    unsigned k = 0;
    Root<S> g_k;           // (max eta over k-fold polynomial products)^(1/k)
    Root<S> coeff_bound;   // (max eta over k-fold coefficient products)^(1/k)
    Root<S> upper_envelope;  // m * coeff_bound
    bool lower_ok = false;   // g_k >= coeff_bound
    bool rho_ok = false;     // g_k >= rho(pool)
    bool upper_ok = false;   // g_k <= upper_envelope
};

template <class S>
struct FamilyBoundsReport {
    Root<S> rho_pool;
    std::size_t m_max = 0;
    Norm norm = Norm::Sup;
    std::vector<FamilyBoundsStep<S>> steps;
    bool holds = false;
};

// Per-k verification of the two-sided family bound: the set growth of Psi,
// measured through poly_eta, dominates every k-fold coefficient product and
// the pool's joint spectral radius, and stays below m times the coefficient
// bracket.
template <class S>
FamilyBoundsReport<S> check_family_bounds(const std::vector<Poly<S>>& polys, unsigned K,
                                          Norm norm = Norm::Sup,
                                          std::size_t guard = 100'000) {
    if (polys.empty()) throw precondition_error("check_family_bounds: empty family");
    double total = 0, level = 1;
    for (unsigned k = 1; k <= K; ++k) {
        level *= static_cast<double>(polys.size());
        total += level;
    }
    if (total > static_cast<double>(guard))
        throw precondition_error("check_family_bounds: |Psi|^K exceeds guard");
    const Family<S> pool = coefficient_pool(polys);
    FamilyBoundsReport<S> rep;
    rep.rho_pool = jsr(pool).rho;
    rep.norm = norm;
    for (const auto& p : polys) rep.m_max = std::max(rep.m_max, p.m());

    std::vector<Mat<S>> pool_products{Mat<S>::identity(pool.dim())};
    std::vector<Poly<S>> poly_products;    // current level of Psi^k
    for (unsigned k = 1; k <= K; ++k) {
        std::vector<Mat<S>> next_pool;
        next_pool.reserve(pool_products.size() * pool.size());
        for (const auto& q : pool_products)
            for (const auto& m : pool.mats) next_pool.push_back(otimes(m, q));
        pool_products = std::move(next_pool);
        if (k == 1) {
            poly_products = polys;
        } else {
            std::vector<Poly<S>> next;
            next.reserve(poly_products.size() * polys.size());
            for (const auto& q : poly_products)
                for (const auto& p : polys) next.push_back(poly_multiply(p, q));
            poly_products = std::move(next);
        }
        FamilyBoundsStep<S> step;
        step.k = k;
        S best_coeff{};
        for (const auto& q : pool_products) best_coeff = max_of(best_coeff, eta(q, norm));
        step.coeff_bound = Root<S>(best_coeff, k);
        S best_poly{};
        for (const auto& q : poly_products)
            best_poly = max_of(best_poly, poly_eta(q, norm));
        step.g_k = Root<S>(best_poly, k);
        step.upper_envelope =
            step.coeff_bound.mul_scalar(S(static_cast<long>(rep.m_max)));
        step.lower_ok = step.g_k.cmp(step.coeff_bound) >= 0;
        step.rho_ok = step.g_k.cmp(rep.rho_pool) >= 0;
        step.upper_ok = step.g_k.cmp(step.upper_envelope) <= 0;
        rep.steps.push_back(std::move(step));
    }
    rep.holds = true;
    for (const auto& s : rep.steps)
        rep.holds = rep.holds && s.lower_ok && s.rho_ok && s.upper_ok;
    return rep;
}

template <class S>
struct TriangularJsrResult {
    Root<S> value;
    Perm sigma;
    std::vector<std::vector<S>> pools;  // pools[i]: diagonal entries at position i
    std::vector<S> sups;
    Root<S> pool_jsr;
    bool certified = false;  // value equals jsr of the pool, exactly
};

// For a simultaneously triangularizable coefficient pool the joint spectral
// radius is the max over positions of the supremum of the diagonal pool;
// certified against the (+)-reduction value.
template <class S>
TriangularJsrResult<S> triangular_jsr(const std::vector<Poly<S>>& polys) {
    const Family<S> pool = coefficient_pool(polys);
    const TriangularizerResult trg = find_common_triangularizer(pool.mats);
    if (!trg.sigma) {
        std::string cyc;
        for (std::size_t v : trg.cycle_witness) cyc += std::to_string(v + 1) + " ";
        throw precondition_error(
            "triangular_jsr: coefficient pool is not simultaneously triangularizable "
            "(off-diagonal support cycle: " + cyc + ")");
    }
    TriangularJsrResult<S> r;
    r.sigma = *trg.sigma;
    const std::size_t n = pool.dim();
    r.pools.assign(n, {});
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& a : pool.mats)
            r.pools[i].push_back(permute_similarity(a, r.sigma)(i, i));
    S best{};
    for (std::size_t i = 0; i < n; ++i) {
        S sup{};
        for (const auto& x : r.pools[i]) sup = max_of(sup, x);
        r.sups.push_back(sup);
        best = max_of(best, sup);
    }
    r.value = Root<S>::from_scalar(best);
    r.pool_jsr = jsr(pool).rho;
    r.certified = r.value.cmp(r.pool_jsr) == 0;
    return r;
}

}  // namespace maxalg
