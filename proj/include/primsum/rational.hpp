// Exact rational arithmetic over 128-bit integers.
//
// Sieve bound comparisons are near-ties (e.g. a bound of 14647129.006...
// against q = 14647129), so every delta / theta / bound value is kept as an
// exact fraction and compared by cross multiplication.  128-bit components
// are enough: the largest intermediate product in the workload is below
// 2^90 (bracket numerators < 2^34 squared, times W(e)^4 <= 2^32).

#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace primsum {

using int128 = __int128;

std::string to_string_i128(int128 v);

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int64_t n) : num_(n), den_(1) {}
    Rational(int128 n, int128 d) : num_(n), den_(d) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }

    int128 num() const { return num_; }
    int128 den() const { return den_; }

    Rational operator+(const Rational& o) const {
        return Rational(checked_mul(num_, o.den_) + checked_mul(o.num_, den_),
                        checked_mul(den_, o.den_));
    }
    Rational operator-(const Rational& o) const {
        return Rational(checked_mul(num_, o.den_) - checked_mul(o.num_, den_),
                        checked_mul(den_, o.den_));
    }
    Rational operator*(const Rational& o) const {
        // cross-reduce before multiplying to keep components small
        int128 g1 = gcd128(abs128(num_), o.den_);
        int128 g2 = gcd128(abs128(o.num_), den_);
        return Rational(checked_mul(num_ / g1, o.num_ / g2),
                        checked_mul(den_ / g2, o.den_ / g1));
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::invalid_argument("Rational: division by zero");
        return *this * Rational(o.den_, o.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
    }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    bool positive() const { return num_ > 0; }
    bool negative() const { return num_ < 0; }

    // largest integer <= value
    int128 floor() const {
        int128 f = num_ / den_;
        if (num_ < 0 && num_ % den_ != 0) --f;
        return f;
    }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    Rational squared() const { return *this * *this; }

    std::string str() const;

    static int128 gcd128(int128 a, int128 b) {
        while (b != 0) { int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

private:
    static int128 abs128(int128 v) { return v < 0 ? -v : v; }

    static int128 checked_mul(int128 a, int128 b) {
        int128 r;
        if (__builtin_mul_overflow(a, b, &r))
            throw std::overflow_error("Rational: 128-bit overflow");
        return r;
    }

    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        if (num_ == 0) { den_ = 1; return; }
        int128 g = gcd128(abs128(num_), den_);
        num_ /= g;
        den_ /= g;
    }

    int128 num_;
    int128 den_;
};

}  // namespace primsum
