#include "twistor/rational.hpp"

#include <doctest.h>

#include <limits>

using twistor::BigInt;
using twistor::Rational;

namespace {

// deterministic xorshift for reproducible operand streams
struct Rng {
    uint64_t state = 0x243f6a8885a308d3ull;
    uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    long long signed_bits(int bits) {
        uint64_t mask = bits >= 64 ? ~0ull : (1ull << bits) - 1;
        long long v = static_cast<long long>(next() & mask);
        return (next() & 1) ? -v : v;
    }
};

BigInt from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt out(0), base(1);
    while (mag) {
        out += BigInt(static_cast<long long>(mag & 0xffffffffull)) * base;
        base *= BigInt(0x100000000LL);
        mag >>= 32;
    }
    return neg ? -out : out;
}

}  // namespace

TEST_CASE("BigInt matches int128 arithmetic on random operands") {
    Rng rng;
    for (int i = 0; i < 2000; ++i) {
        long long a = rng.signed_bits(62);
        long long b = rng.signed_bits(62);
        BigInt A(a), B(b);
        CHECK(A + B == from_i128(static_cast<__int128>(a) + b));
        CHECK(A - B == from_i128(static_cast<__int128>(a) - b));
        CHECK(A * B == from_i128(static_cast<__int128>(a) * b));
        if (b != 0) {
            CHECK(A / B == from_i128(static_cast<__int128>(a) / b));
            CHECK(A % B == from_i128(static_cast<__int128>(a) % b));
            // division identity
            CHECK((A / B) * B + (A % B) == A);
        }
    }
}

TEST_CASE("BigInt multi-limb products and decimal round trip") {
    BigInt fact(1);
    for (int i = 2; i <= 30; ++i) fact *= BigInt(i);
    CHECK(fact.to_string() == "265252859812191058636308480000000");
    CHECK(BigInt(fact.to_string()) == fact);
    CHECK((fact * -fact).to_string() ==
          "-70359079638545882374689246780656119576032161719910400000000000000");
    CHECK(BigInt("-000123") == BigInt(-123));
    CHECK_THROWS_AS(BigInt("12x3"), std::invalid_argument);
    CHECK_THROWS_AS(BigInt(""), std::invalid_argument);
}

TEST_CASE("BigInt comparisons, gcd, pow, binomial") {
    Rng rng;
    for (int i = 0; i < 500; ++i) {
        long long a = rng.signed_bits(40);
        long long b = rng.signed_bits(40);
        CHECK((BigInt(a) < BigInt(b)) == (a < b));
        CHECK((BigInt(a) == BigInt(b)) == (a == b));
    }
    CHECK(BigInt::gcd(BigInt(12), BigInt(-18)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(0), BigInt(5)) == BigInt(5));
    CHECK(BigInt::gcd(BigInt(0), BigInt(0)) == BigInt(0));
    CHECK(BigInt::pow(BigInt(3), 20) == BigInt(3486784401LL));
    CHECK(BigInt::pow(BigInt(10), 0) == BigInt(1));
    CHECK(BigInt::binomial(20, 10) == BigInt(184756));
    CHECK(BigInt::binomial(52, 5) == BigInt(2598960));
    CHECK(BigInt::binomial(3, 5) == BigInt(0));
    CHECK(BigInt::binomial(5, -1) == BigInt(0));
    CHECK(BigInt::binomial(0, 0) == BigInt(1));
}

TEST_CASE("BigInt int64 bounds") {
    const long long max = std::numeric_limits<long long>::max();
    const long long min = std::numeric_limits<long long>::min();
    CHECK(BigInt(max).to_int64() == max);
    CHECK(BigInt(min).to_int64() == min);
    CHECK(BigInt(min).to_string() == "-9223372036854775808");
    CHECK_FALSE((BigInt(max) + BigInt(1)).fits_int64());
    CHECK((BigInt(min)).fits_int64());
    CHECK_FALSE((BigInt(min) - BigInt(1)).fits_int64());
    CHECK_THROWS_AS((BigInt(max) * BigInt(2)).to_int64(), std::overflow_error);
}

TEST_CASE("Rational normalization and arithmetic") {
    CHECK(Rational(BigInt(6), BigInt(-4)).to_string() == "-3/2");
    CHECK(Rational(BigInt(0), BigInt(-7)) == Rational(0));
    CHECK(Rational(BigInt(2), BigInt(4)) == Rational(BigInt(1), BigInt(2)));
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);

    Rational half(BigInt(1), BigInt(2)), third(BigInt(1), BigInt(3));
    CHECK((half + third).to_string() == "5/6");
    CHECK((half - third).to_string() == "1/6");
    CHECK((half * third).to_string() == "1/6");
    CHECK((half / third).to_string() == "3/2");
    CHECK(-half < third);
    CHECK(half > third);

    Rng rng;
    for (int i = 0; i < 300; ++i) {
        long long p = rng.signed_bits(30);
        long long q = rng.signed_bits(30) | 1;  // nonzero
        long long r = rng.signed_bits(30);
        long long s = rng.signed_bits(30) | 1;
        Rational x{BigInt(p), BigInt(q)}, y{BigInt(r), BigInt(s)};
        CHECK(x + y == y + x);
        CHECK((x + y) - y == x);
        CHECK(x * y == y * x);
        if (!y.is_zero()) CHECK((x / y) * y == x);
        CHECK(x * (y + Rational(1)) == x * y + x);
    }
}

TEST_CASE("Rational parse and render") {
    CHECK(Rational::parse("5") == Rational(5));
    CHECK(Rational::parse("-7/14").to_string() == "-1/2");
    CHECK(Rational::parse("0/9") == Rational(0));
    CHECK_THROWS_AS(Rational::parse("a/b"), std::invalid_argument);
    CHECK(Rational(BigInt(22), BigInt(7)).to_string() == "22/7");
    CHECK(Rational(-9).to_string() == "-9");
    CHECK(Rational(4).is_integer());
    CHECK_FALSE(Rational(BigInt(1), BigInt(3)).is_integer());
    CHECK(Rational(12).to_int64() == 12);
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(2)).to_int64(), std::domain_error);
}
