#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace unmate {

// Exact rational arithmetic on small denominators. All angle and
// eigenvector computations in this library go through this type; there is
// no floating point anywhere in the pipeline.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat::from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                            i128(a.den_) * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat::from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                            i128(a.den_) * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat::from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return Rat::from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rat operator-() const { return Rat(-num_, den_); }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    // Representative in [0,1).
    Rat mod1() const {
        long long r = num_ % den_;
        if (r < 0) r += den_;
        return Rat(r, den_);
    }

    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p/q" or a bare integer "p". Decimal notation is rejected so
    // exactness cannot be silently lost.
    static Rat parse(const std::string& s) {
        if (s.find('.') != std::string::npos)
            throw std::invalid_argument("decimal angle rejected, use p/q: " + s);
        size_t slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rat(std::stoll(s));
            long long p = std::stoll(s.substr(0, slash));
            long long q = std::stoll(s.substr(slash + 1));
            return Rat(p, q);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("bad rational literal: " + s);
        }
    }

private:
    using i128 = __int128;

    static Rat from128(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational overflow");
        Rat r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_;
    long long den_;
};

// The angle map t -> d*t mod 1 on Q/Z.
inline Rat mu(const Rat& theta, int d) {
    if (d < 2) throw std::invalid_argument("mu requires degree >= 2");
    return (theta * Rat(d)).mod1();
}

}  // namespace unmate
