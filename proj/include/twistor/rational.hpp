#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistor {

/// Arbitrary-precision signed integer.
///
/// Sign-magnitude representation over 32-bit limbs, little-endian, with no
/// trailing zero limbs; zero is the empty limb vector with sign 0. All
/// arithmetic is exact. Division truncates toward zero, so (a/b)*b + a%b == a
/// and a%b has the sign of a.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long value);
    BigInt(int value) : BigInt(static_cast<long long>(value)) {}

    /// Parses an optionally signed decimal string. Throws std::invalid_argument
    /// on anything else.
    explicit BigInt(const std::string& decimal);

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    bool is_one() const;
    int signum() const { return sign_; }

    BigInt operator-() const;
    BigInt abs() const;

    BigInt& operator+=(const BigInt& rhs);
    BigInt& operator-=(const BigInt& rhs);
    BigInt& operator*=(const BigInt& rhs);
    BigInt& operator/=(const BigInt& rhs);
    BigInt& operator%=(const BigInt& rhs);

    friend BigInt operator+(BigInt lhs, const BigInt& rhs) { return lhs += rhs; }
    friend BigInt operator-(BigInt lhs, const BigInt& rhs) { return lhs -= rhs; }
    friend BigInt operator*(const BigInt& lhs, const BigInt& rhs);
    friend BigInt operator/(const BigInt& lhs, const BigInt& rhs);
    friend BigInt operator%(const BigInt& lhs, const BigInt& rhs);

    friend bool operator==(const BigInt& lhs, const BigInt& rhs);
    friend bool operator!=(const BigInt& lhs, const BigInt& rhs) { return !(lhs == rhs); }
    friend bool operator<(const BigInt& lhs, const BigInt& rhs);
    friend bool operator>(const BigInt& lhs, const BigInt& rhs) { return rhs < lhs; }
    friend bool operator<=(const BigInt& lhs, const BigInt& rhs) { return !(rhs < lhs); }
    friend bool operator>=(const BigInt& lhs, const BigInt& rhs) { return !(lhs < rhs); }

    /// Truncated quotient and remainder in one pass. Throws on zero divisor.
    static void divmod(const BigInt& num, const BigInt& den, BigInt& quot, BigInt& rem);

    static BigInt gcd(BigInt a, BigInt b);

    /// Binomial coefficient; zero when k < 0 or k > n. Requires n >= 0.
    static BigInt binomial(long long n, long long k);

    static BigInt pow(const BigInt& base, unsigned exponent);

    bool fits_int64() const;
    long long to_int64() const;  // throws std::overflow_error if out of range

    std::string to_string() const;
    friend std::ostream& operator<<(std::ostream& os, const BigInt& v);

private:
    int sign_ = 0;
    std::vector<uint32_t> mag_;

    void trim();
    static int compare_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r);
};

/// Exact rational number over BigInt, always kept in lowest terms with a
/// positive denominator; zero is 0/1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long value) : num_(value), den_(1) {}
    Rational(int value) : num_(value), den_(1) {}
    Rational(BigInt value) : num_(std::move(value)), den_(1) {}
    Rational(BigInt num, BigInt den);

    /// Parses "p" or "p/q". Throws std::invalid_argument on malformed input.
    static Rational parse(const std::string& text);

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_negative() const { return num_.is_negative(); }
    bool is_integer() const { return den_.is_one(); }

    Rational operator-() const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& lhs, const Rational& rhs);
    friend bool operator!=(const Rational& lhs, const Rational& rhs) { return !(lhs == rhs); }
    friend bool operator<(const Rational& lhs, const Rational& rhs);
    friend bool operator>(const Rational& lhs, const Rational& rhs) { return rhs < lhs; }
    friend bool operator<=(const Rational& lhs, const Rational& rhs) { return !(rhs < lhs); }
    friend bool operator>=(const Rational& lhs, const Rational& rhs) { return !(lhs < rhs); }

    /// "p" when integral, "p/q" otherwise.
    std::string to_string() const;
    friend std::ostream& operator<<(std::ostream& os, const Rational& v);

    long long to_int64() const;  // throws std::domain_error unless an int64 integer

private:
    BigInt num_;
    BigInt den_;

    void reduce();
};

}  // namespace twistor
