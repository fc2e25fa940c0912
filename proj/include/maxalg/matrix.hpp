#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "maxalg/root.hpp"
#include "maxalg/scalar.hpp"

namespace maxalg {

// Dense matrix over (R+, max, *). The zero matrix is the additive identity,
// the usual identity matrix the multiplicative one. Column vectors are n x 1.
template <class S>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {
        if (rows == 0 || cols == 0) throw shape_error("Mat: empty dimension");
    }
    Mat(std::size_t rows, std::size_t cols, std::vector<S> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (rows == 0 || cols == 0) throw shape_error("Mat: empty dimension");
        if (e_.size() != rows * cols) throw shape_error("Mat: entry count mismatch");
    }
    Mat(std::initializer_list<std::initializer_list<S>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        if (rows_ == 0 || cols_ == 0) throw shape_error("Mat: empty dimension");
        e_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw shape_error("Mat: ragged rows");
            for (const auto& x : r) e_.push_back(x);
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }
    static Mat zeros(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
    static Mat column(std::vector<S> entries) {
        const std::size_t n = entries.size();
        return Mat(n, 1, std::move(entries));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool is_vector() const { return cols_ == 1; }

    const S& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    S& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const S& vec(std::size_t i) const { return e_[i]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](const S& x) { return x.is_zero(); });
    }

    S max_entry() const {
        S best{};
        for (const S& x : e_)
            if (best.cmp(x) < 0) best = x;
        return best;
    }

private:
    std::size_t rows_, cols_;
    std::vector<S> e_;
};

template <class S>
bool entrywise_leq(const Mat<S>& a, const Mat<S>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j).cmp(b(i, j)) > 0) return false;
    return true;
}

// Entrywise max: (A (+) B)_ij = max(a_ij, b_ij).
template <class S>
Mat<S> oplus(const Mat<S>& a, const Mat<S>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw shape_error("oplus: shape mismatch " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                          "x" + std::to_string(b.cols()));
    Mat<S> r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(i, j) = max_of(a(i, j), b(i, j));
    return r;
}

// Max-of-products: (A (x) B)_ij = max_k a_ik * b_kj. Covers A (x) x for
// column vectors.
template <class S>
Mat<S> otimes(const Mat<S>& a, const Mat<S>& b) {
    if (a.cols() != b.rows())
        throw shape_error("otimes: inner dimension mismatch " +
                          std::to_string(a.cols()) + " vs " + std::to_string(b.rows()));
    Mat<S> r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (b(k, j).is_zero()) continue;
                S prod = a(i, k) * b(k, j);
                if (r(i, j).cmp(prod) < 0) r(i, j) = std::move(prod);
            }
        }
    return r;
}

// A^k by repeated squaring; A^0 is the identity.
template <class S>
Mat<S> mat_power(const Mat<S>& a, unsigned long k) {
    if (!a.is_square()) throw shape_error("mat_power: non-square input");
    Mat<S> result = Mat<S>::identity(a.rows());
    Mat<S> sq = a;
    while (k > 0) {
        if (k & 1) result = otimes(result, sq);
        k >>= 1;
        if (k) sq = otimes(sq, sq);
    }
    return result;
}

template <class S>
Mat<S> scalar_scale(const S& c, const Mat<S>& a) {
    Mat<S> r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = c * a(i, j);
    return r;
}

// True iff each row and each column has exactly one positive entry, i.e. A
// is the product of a diagonal matrix and a permutation matrix.
template <class S>
bool is_generalized_permutation(const Mat<S>& a) {
    if (!a.is_square()) throw shape_error("is_generalized_permutation: non-square input");
    const std::size_t n = a.rows();
    std::vector<std::size_t> row_count(n, 0), col_count(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!a(i, j).is_zero()) {
                ++row_count[i];
                ++col_count[j];
            }
    for (std::size_t i = 0; i < n; ++i)
        if (row_count[i] != 1 || col_count[i] != 1) return false;
    return true;
}

// Permutation of {0..n-1} as an image array.
struct Perm {
    std::vector<std::size_t> img;

    Perm() = default;
    explicit Perm(std::vector<std::size_t> image) : img(std::move(image)) {
        std::vector<bool> seen(img.size(), false);
        for (std::size_t v : img) {
            if (v >= img.size() || seen[v]) throw error("Perm: not a bijection");
            seen[v] = true;
        }
    }
    static Perm identity(std::size_t n) {
        std::vector<std::size_t> v(n);
        std::iota(v.begin(), v.end(), 0);
        return Perm(std::move(v));
    }

    std::size_t size() const { return img.size(); }
    std::size_t operator()(std::size_t i) const { return img[i]; }

    Perm inverse() const {
        std::vector<std::size_t> inv(img.size());
        for (std::size_t i = 0; i < img.size(); ++i) inv[img[i]] = i;
        return Perm(std::move(inv));
    }
    // (a.then(b))(i) = a(b(i)).
    Perm then(const Perm& b) const {
        std::vector<std::size_t> v(img.size());
        for (std::size_t i = 0; i < img.size(); ++i) v[i] = img[b.img[i]];
        return Perm(std::move(v));
    }
    bool operator==(const Perm& o) const = default;
};

// Permutation matrix P with P e_j = e_{sigma(j)}.
template <class S>
Mat<S> perm_matrix(const Perm& sigma) {
    Mat<S> p(sigma.size(), sigma.size());
    for (std::size_t j = 0; j < sigma.size(); ++j) p(sigma(j), j) = S(1);
    return p;
}

// P^{-1} A P for the permutation matrix of sigma: entry (i,j) of the result
// is a(sigma(i), sigma(j)).
template <class S>
Mat<S> permute_similarity(const Mat<S>& a, const Perm& sigma) {
    if (!a.is_square() || a.rows() != sigma.size())
        throw shape_error("permute_similarity: size mismatch");
    Mat<S> r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(sigma(i), sigma(j));
    return r;
}

template <class S>
bool is_upper_triangular(const Mat<S>& a) {
    if (!a.is_square()) return false;
    for (std::size_t i = 1; i < a.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!a(i, j).is_zero()) return false;
    return true;
}

// Named finite set of equal-size square matrices.
template <class S>
struct Family {
    std::vector<std::string> names;
    std::vector<Mat<S>> mats;

    std::size_t size() const { return mats.size(); }
    std::size_t dim() const { return mats.empty() ? 0 : mats.front().rows(); }

    void add(std::string name, Mat<S> m) {
        if (!m.is_square()) throw shape_error("Family: non-square member '" + name + "'");
        if (!mats.empty() && m.rows() != dim())
            throw shape_error("Family: size mismatch for member '" + name + "'");
        names.push_back(std::move(name));
        mats.push_back(std::move(m));
    }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        throw precondition_error("Family: unknown member '" + name + "'");
    }

    Mat<S> oplus_all() const {
        if (mats.empty()) throw precondition_error("Family: empty family");
        Mat<S> s = mats.front();
        for (std::size_t i = 1; i < mats.size(); ++i) s = oplus(s, mats[i]);
        return s;
    }
};

}  // namespace maxalg
