#pragma once

#include <random>
#include <vector>

#include "maxalg/graph.hpp"
#include "maxalg/matrix.hpp"
#include "maxalg/root.hpp"

namespace testutil {

using maxalg::Mat;
using maxalg::Rat;
using maxalg::Root;

inline Rat R(const char* s) { return Rat::parse(s); }

inline Mat<Rat> M(std::vector<std::vector<const char*>> rows) {
    std::vector<Rat> entries;
    for (const auto& r : rows)
        for (const char* e : r) entries.push_back(Rat::parse(e));
    return Mat<Rat>(rows.size(), rows.front().size(), std::move(entries));
}

inline Mat<Rat> V(std::vector<const char*> entries) {
    std::vector<Rat> v;
    for (const char* e : entries) v.push_back(Rat::parse(e));
    return Mat<Rat>::column(std::move(v));
}

// Random exact rational with numerator <= max_num, denominator <= max_den,
// zero with probability zero_density.
inline Rat rand_rat(std::mt19937_64& rng, long max_num = 16, long max_den = 4,
                    double zero_density = 0.3) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < zero_density) return Rat(0);
    std::uniform_int_distribution<long> num(1, max_num), den(1, max_den);
    return Rat(num(rng), den(rng));
}

inline Mat<Rat> rand_matrix(std::mt19937_64& rng, std::size_t n, long max_num = 16,
                            long max_den = 4, double zero_density = 0.3) {
    Mat<Rat> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = rand_rat(rng, max_num, max_den, zero_density);
    return m;
}

// Irreducible with a strongly connected digraph on at least one edge (so a
// 1x1 matrix must carry a positive entry).
inline Mat<Rat> rand_irreducible(std::mt19937_64& rng, std::size_t n) {
    for (;;) {
        Mat<Rat> m = rand_matrix(rng, n, 8, 3, 0.45);
        if (maxalg::is_irreducible(m) && (n > 1 || !m(0, 0).is_zero())) return m;
    }
}

inline maxalg::Perm rand_perm(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::shuffle(img.begin(), img.end(), rng);
    return maxalg::Perm(std::move(img));
}

// Independent mu oracle: every closed walk of length k through i has weight
// (A^k)_ii, and the maximum cycle mean equals max over k <= n and i of
// ((A^k)_ii)^(1/k).
inline Root<Rat> brute_mu(const Mat<Rat>& a) {
    Root<Rat> best(Rat(0), 1);
    Mat<Rat> p = Mat<Rat>::identity(a.rows());
    for (std::size_t k = 1; k <= a.rows(); ++k) {
        p = otimes(p, a);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (p(i, i).is_zero()) continue;
            Root<Rat> cand(p(i, i), k);
            if (best.cmp(cand) < 0) best = cand;
        }
    }
    return best;
}

}  // namespace testutil
