#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdio>
#include <string>
#include <string_view>

#include "maxalg/errors.hpp"

namespace maxalg {

// Exact nonnegative rational, kept canonical (reduced, positive
// denominator). This is the default backend: every identity the library
// certifies is decided on these values.
class Rat {
public:
    static constexpr bool is_exact = true;

    Rat() : v_(0) {}
    Rat(int n) : v_(n) { check_sign(); }
    Rat(long n) : v_(n) { check_sign(); }
    Rat(long num, long den) : v_(num, den) {
        if (den == 0) throw error("Rat: zero denominator");
        v_.canonicalize();
        check_sign();
    }
    explicit Rat(const mpq_class& q) : v_(q) {
        v_.canonicalize();
        check_sign();
    }

    // Accepts "4", "18/25", "0.72", "1e-12", "2.5e3". Exact: decimals and
    // exponents become powers of ten, never floats.
    static Rat parse(std::string_view text);

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }

    int cmp(const Rat& o) const { return ::cmp(v_, o.v_); }
    bool operator==(const Rat& o) const { return v_ == o.v_; }
    std::strong_ordering operator<=>(const Rat& o) const {
        const int c = cmp(o);
        return c < 0   ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

    Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) throw error("Rat: division by zero");
        return Rat(mpq_class(v_ / o.v_));
    }

    Rat pow_ui(unsigned long e) const {
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), v_.get_num().get_mpz_t(), e);
        mpz_pow_ui(den.get_mpz_t(), v_.get_den().get_mpz_t(), e);
        mpq_class r(num, den);
        r.canonicalize();
        return Rat(r);
    }

    // True iff x has an exact rational n-th root; the root is written to out.
    static bool nth_root_exact(const Rat& x, unsigned long n, Rat& out) {
        mpz_class num, den;
        const int num_exact =
            mpz_root(num.get_mpz_t(), x.v_.get_num().get_mpz_t(), n);
        if (!num_exact) return false;
        const int den_exact =
            mpz_root(den.get_mpz_t(), x.v_.get_den().get_mpz_t(), n);
        if (!den_exact) return false;
        out = Rat(mpq_class(num, den));
        return true;
    }

    double to_double() const { return v_.get_d(); }
    std::string str() const { return v_.get_str(); }

    const mpq_class& raw() const { return v_; }

private:
    void check_sign() const {
        if (sgn(v_) < 0) throw error("Rat: negative value " + v_.get_str());
    }

    mpq_class v_;
};

inline Rat Rat::parse(std::string_view text) {
    auto bad = [&](const char* why) -> Rat {
        throw error(std::string("cannot parse '") + std::string(text) +
                    "' as a nonnegative rational: " + why);
    };
    if (text.empty()) return bad("empty token");
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        ++i;
    }
    auto digits = [&](std::string& out) {
        while (i < text.size() && text[i] >= '0' && text[i] <= '9')
            out.push_back(text[i++]);
    };
    std::string ip;
    digits(ip);
    if (i < text.size() && text[i] == '/') {
        ++i;
        std::string dp;
        digits(dp);
        if (ip.empty() || dp.empty() || i != text.size())
            return bad("expected 'p/q'");
        mpz_class num(ip), den(dp);
        if (den == 0) return bad("zero denominator");
        if (neg && num != 0) return bad("negative");
        mpq_class q(num, den);
        q.canonicalize();
        return Rat(q);
    }
    std::string fp;
    if (i < text.size() && text[i] == '.') {
        ++i;
        digits(fp);
    }
    if (ip.empty() && fp.empty()) return bad("no digits");
    long exp10 = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            eneg = text[i] == '-';
            ++i;
        }
        std::string ed;
        digits(ed);
        if (ed.empty() || ed.size() > 6) return bad("bad exponent");
        exp10 = std::stol(ed);
        if (eneg) exp10 = -exp10;
    }
    if (i != text.size()) return bad("trailing characters");
    mpz_class num(ip.empty() ? std::string("0") : ip);
    for (char c : fp) num = num * 10 + (c - '0');
    long den_pow = static_cast<long>(fp.size()) - exp10;
    mpz_class num_scale(1), den(1);
    if (den_pow > 0)
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(den_pow));
    else if (den_pow < 0)
        mpz_ui_pow_ui(num_scale.get_mpz_t(), 10,
                      static_cast<unsigned long>(-den_pow));
    if (neg && num != 0) return bad("negative");
    mpq_class q(num * num_scale, den);
    q.canonicalize();
    return Rat(q);
}

// Binary floating-point mirror of Rat. Same surface, double semantics;
// selected per computation for speed, never for certification.
class Fl {
public:
    static constexpr bool is_exact = false;

    Fl() : v_(0.0) {}
    Fl(int n) : v_(static_cast<double>(n)) { check_sign(); }
    Fl(long n) : v_(static_cast<double>(n)) { check_sign(); }
    Fl(long num, long den) : v_(static_cast<double>(num) / den) { check_sign(); }
    explicit Fl(double d) : v_(d) { check_sign(); }

    static Fl parse(std::string_view text) { return Fl(Rat::parse(text).to_double()); }
    static Fl from_rat(const Rat& r) { return Fl(r.to_double()); }

    bool is_zero() const { return v_ == 0.0; }
    bool is_one() const { return v_ == 1.0; }

    int cmp(const Fl& o) const { return v_ < o.v_ ? -1 : (v_ > o.v_ ? 1 : 0); }
    bool operator==(const Fl& o) const { return v_ == o.v_; }
    std::partial_ordering operator<=>(const Fl& o) const { return v_ <=> o.v_; }

    Fl operator+(const Fl& o) const { return Fl(v_ + o.v_); }
    Fl operator*(const Fl& o) const { return Fl(v_ * o.v_); }
    Fl operator/(const Fl& o) const {
        if (o.is_zero()) throw error("Fl: division by zero");
        return Fl(v_ / o.v_);
    }

    Fl pow_ui(unsigned long e) const { return Fl(std::pow(v_, static_cast<double>(e))); }

    static bool nth_root_exact(const Fl& x, unsigned long n, Fl& out) {
        out = Fl(std::pow(x.v_, 1.0 / static_cast<double>(n)));
        return true;
    }

    double to_double() const { return v_; }
    std::string str() const {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v_);
        return buf;
    }

private:
    void check_sign() const {
        if (!(v_ >= 0.0)) throw error("Fl: negative or NaN value");
    }

    double v_;
};

template <class S>
S abs_diff(const S& a, const S& b) {
    return a.cmp(b) < 0 ? detail_sub(b, a) : detail_sub(a, b);
}

inline Rat detail_sub(const Rat& a, const Rat& b) {
    return Rat(mpq_class(a.raw() - b.raw()));
}
inline Fl detail_sub(const Fl& a, const Fl& b) {
    return Fl(a.to_double() - b.to_double());
}

template <class S>
const S& max_of(const S& a, const S& b) {
    return a.cmp(b) < 0 ? b : a;
}

}  // namespace maxalg
