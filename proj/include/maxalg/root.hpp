#pragma once

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "maxalg/scalar.hpp"

namespace maxalg {

// Value of the form base^(1/deg) with base >= 0 and deg >= 1. Cycle means
// live here. Two representations (w, l) and (w^k, k*l) denote the same
// value; canonicalize() picks the minimal degree, so rational values always
// end up with deg == 1.
template <class S>
struct Root {
    S base{};
    unsigned long deg = 1;

    Root() = default;
    Root(S b, unsigned long d) : base(std::move(b)), deg(d) {
        if (deg == 0) throw error("Root: zero degree");
        canonicalize();
    }
    static Root from_scalar(S s) { return Root(std::move(s), 1); }

    bool is_scalar() const { return deg == 1; }
    bool is_zero() const { return base.is_zero(); }

    // Exact total order: a^(1/p) <= b^(1/q)  <=>  a^(q/g) <= b^(p/g).
    int cmp(const Root& o) const {
        const unsigned long g = std::gcd(deg, o.deg);
        return base.pow_ui(o.deg / g).cmp(o.base.pow_ui(deg / g));
    }
    bool operator==(const Root& o) const { return cmp(o) == 0; }
    bool operator<(const Root& o) const { return cmp(o) < 0; }
    bool operator<=(const Root& o) const { return cmp(o) <= 0; }

    Root pow_ui(unsigned long k) const { return Root(base.pow_ui(k), deg); }
    Root root_ui(unsigned long k) const {
        if (k == 0) throw error("Root: zeroth root");
        return Root(base, deg * k);
    }
    Root mul(const Root& o) const {
        const unsigned long l = std::lcm(deg, o.deg);
        return Root(base.pow_ui(l / deg) * o.base.pow_ui(l / o.deg), l);
    }
    Root mul_scalar(const S& c) const { return Root(c.pow_ui(deg) * base, deg); }

    double to_double() const {
        if (deg == 1) return base.to_double();
        return std::pow(base.to_double(), 1.0 / static_cast<double>(deg));
    }

    std::string str() const {
        if (deg == 1) return base.str();
        return base.str() + "^(1/" + std::to_string(deg) + ")";
    }

private:
    void canonicalize() {
        if constexpr (!S::is_exact) {
            if (deg > 1) {
                S r{};
                S::nth_root_exact(base, deg, r);
                base = r;
                deg = 1;
            }
            return;
        }
        if (base.is_zero() || base.is_one()) {
            deg = 1;
            return;
        }
        unsigned long p = 2;
        while (p <= deg && deg > 1) {
            if (deg % p == 0) {
                S r{};
                if (S::nth_root_exact(base, p, r)) {
                    base = r;
                    deg /= p;
                    continue;
                }
            }
            ++p;
        }
    }
};

template <class S>
const Root<S>& root_max(const Root<S>& a, const Root<S>& b) {
    return a.cmp(b) < 0 ? b : a;
}

template <class S>
const Root<S>& root_min(const Root<S>& a, const Root<S>& b) {
    return a.cmp(b) < 0 ? a : b;
}

}  // namespace maxalg
