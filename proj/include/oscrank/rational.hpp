#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oscrank {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational with arbitrary-precision integer parts.
/// Always stored reduced, denominator >= 1 (boost::rational maintains this).
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long long n) : v_(BigInt(n)) {}
    Rat(const BigInt& n) : v_(n) {}
    Rat(const BigInt& num, const BigInt& den) : v_(num, den) {}
    Rat(long long num, long long den) : v_(BigInt(num), BigInt(den)) {}

    const BigInt& num() const { return v_.numerator(); }
    const BigInt& den() const { return v_.denominator(); }

    Rat operator-() const { return Rat(-v_); }
    Rat operator+(const Rat& o) const { return Rat(v_ + o.v_); }
    Rat operator-(const Rat& o) const { return Rat(v_ - o.v_); }
    Rat operator*(const Rat& o) const { return Rat(v_ * o.v_); }
    Rat operator/(const Rat& o) const {
        if (o.v_.numerator() == 0) throw std::domain_error("Rat: division by zero");
        return Rat(v_ / o.v_);
    }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }
    bool operator<(const Rat& o) const { return v_ < o.v_; }
    bool operator<=(const Rat& o) const { return v_ <= o.v_; }
    bool operator>(const Rat& o) const { return v_ > o.v_; }
    bool operator>=(const Rat& o) const { return v_ >= o.v_; }

    bool is_integer() const { return v_.denominator() == 1; }

    /// max(|numerator|, denominator); the enumeration height of this value.
    BigInt height() const {
        BigInt a = abs(v_.numerator());
        return a > v_.denominator() ? a : v_.denominator();
    }

    /// Largest integer <= value.
    BigInt floor() const {
        BigInt q = v_.numerator() / v_.denominator();
        if (v_.numerator() < 0 && q * v_.denominator() != v_.numerator()) --q;
        return q;
    }

    /// "p/q", or just "p" for integers.
    std::string str() const {
        std::string s = v_.numerator().str();
        if (v_.denominator() != 1) s += "/" + v_.denominator().str();
        return s;
    }

    /// Parses "p" or "p/q"; q must be positive.
    static Rat parse(const std::string& s);

private:
    explicit Rat(boost::rational<BigInt> v) : v_(std::move(v)) {}
    boost::rational<BigInt> v_;
};

/// Simplest rational (smallest denominator, then smallest |numerator|,
/// then positive) strictly between lo and hi; unbounded side = nullopt.
/// Requires the open interval to be nonempty.
Rat simplest_between(const std::optional<Rat>& lo, const std::optional<Rat>& hi);

/// All values p/q with |p| <= level, 1 <= q <= level, deduplicated and sorted.
std::vector<Rat> level_cut_values(int level);

}  // namespace oscrank
