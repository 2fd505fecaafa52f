#include "twistor/rational.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <ostream>

namespace twistor {

namespace {

constexpr uint64_t kBase = uint64_t(1) << 32;

// small-operand fast paths: nearly every value in this project fits a limb
bool fits_u64(const std::vector<uint32_t>& m) { return m.size() <= 2; }

uint64_t to_u64(const std::vector<uint32_t>& m) {
    uint64_t v = m.empty() ? 0 : m[0];
    if (m.size() == 2) v |= static_cast<uint64_t>(m[1]) << 32;
    return v;
}

std::vector<uint32_t> from_u64(uint64_t v) {
    std::vector<uint32_t> out;
    if (v) out.push_back(static_cast<uint32_t>(v & 0xffffffffu));
    if (v >> 32) out.push_back(static_cast<uint32_t>(v >> 32));
    return out;
}

}  // namespace

BigInt::BigInt(long long value) {
    if (value == 0) return;
    sign_ = value < 0 ? -1 : 1;
    // avoid overflow on LLONG_MIN
    uint64_t mag = value < 0 ? ~static_cast<uint64_t>(value) + 1 : static_cast<uint64_t>(value);
    mag_.push_back(static_cast<uint32_t>(mag & 0xffffffffu));
    if (mag >> 32) mag_.push_back(static_cast<uint32_t>(mag >> 32));
}

BigInt::BigInt(const std::string& decimal) {
    size_t pos = 0;
    bool neg = false;
    if (pos < decimal.size() && (decimal[pos] == '-' || decimal[pos] == '+')) {
        neg = decimal[pos] == '-';
        ++pos;
    }
    if (pos == decimal.size())
        throw std::invalid_argument("BigInt: empty numeral '" + decimal + "'");
    BigInt acc;
    for (; pos < decimal.size(); ++pos) {
        char c = decimal[pos];
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("BigInt: bad digit in '" + decimal + "'");
        acc *= BigInt(10);
        acc += BigInt(c - '0');
    }
    *this = neg ? -acc : acc;
}

bool BigInt::is_one() const {
    return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1;
}

BigInt BigInt::operator-() const {
    BigInt out = *this;
    out.sign_ = -out.sign_;
    return out;
}

BigInt BigInt::abs() const {
    BigInt out = *this;
    if (out.sign_ < 0) out.sign_ = 1;
    return out;
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::compare_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const std::vector<uint32_t>& lo = a.size() < b.size() ? a : b;
    const std::vector<uint32_t>& hi = a.size() < b.size() ? b : a;
    std::vector<uint32_t> out;
    out.reserve(hi.size() + 1);
    uint64_t carry = 0;
    for (size_t i = 0; i < hi.size(); ++i) {
        uint64_t sum = carry + hi[i] + (i < lo.size() ? lo[i] : 0);
        out.push_back(static_cast<uint32_t>(sum & 0xffffffffu));
        carry = sum >> 32;
    }
    if (carry) out.push_back(static_cast<uint32_t>(carry));
    return out;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> out;
    out.reserve(a.size());
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t diff = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? static_cast<int64_t>(b[i]) : 0);
        if (diff < 0) {
            diff += static_cast<int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out.push_back(static_cast<uint32_t>(diff));
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> out(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = static_cast<uint64_t>(a[i]) * b[j] + out[i + j] + carry;
            out[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t cur = out[k] + carry;
            out[k] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// Binary restoring division on magnitudes. Operand sizes in this project stay
// tiny, so the bit-serial loop is plenty; two-limb operands take the direct
// 64-bit path in divmod.
void BigInt::divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    q.assign(a.size(), 0);
    r.clear();
    if (compare_mag(a, b) < 0) {
        r = a;
        q.clear();
        return;
    }
    size_t bits = (a.size() - 1) * 32;
    for (uint32_t top = a.back(); top; top >>= 1) ++bits;
    for (size_t idx = bits; idx-- > 0;) {
        // r = (r << 1) | bit(a, idx)
        uint32_t carry = (a[idx / 32] >> (idx % 32)) & 1u;
        for (size_t i = 0; i < r.size(); ++i) {
            uint32_t next = r[i] >> 31;
            r[i] = (r[i] << 1) | carry;
            carry = next;
        }
        if (carry) r.push_back(carry);
        if (compare_mag(r, b) >= 0) {
            r = sub_mag(r, b);
            q[idx / 32] |= uint32_t(1) << (idx % 32);
        }
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
}

BigInt& BigInt::operator+=(const BigInt& rhs) {
    if (rhs.sign_ == 0) return *this;
    if (sign_ == 0) return *this = rhs;
    if (sign_ == rhs.sign_) {
        mag_ = add_mag(mag_, rhs.mag_);
        return *this;
    }
    int cmp = compare_mag(mag_, rhs.mag_);
    if (cmp == 0) {
        sign_ = 0;
        mag_.clear();
    } else if (cmp > 0) {
        mag_ = sub_mag(mag_, rhs.mag_);
    } else {
        mag_ = sub_mag(rhs.mag_, mag_);
        sign_ = rhs.sign_;
    }
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& rhs) { return *this += -rhs; }

BigInt& BigInt::operator*=(const BigInt& rhs) { return *this = *this * rhs; }

BigInt operator*(const BigInt& lhs, const BigInt& rhs) {
    BigInt out;
    out.sign_ = lhs.sign_ * rhs.sign_;
    if (out.sign_ != 0) out.mag_ = BigInt::mul_mag(lhs.mag_, rhs.mag_);
    out.trim();
    return out;
}

void BigInt::divmod(const BigInt& num, const BigInt& den, BigInt& quot, BigInt& rem) {
    if (den.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    std::vector<uint32_t> q, r;
    if (fits_u64(num.mag_) && fits_u64(den.mag_)) {
        uint64_t a = to_u64(num.mag_), b = to_u64(den.mag_);
        q = from_u64(a / b);
        r = from_u64(a % b);
    } else {
        divmod_mag(num.mag_, den.mag_, q, r);
    }
    quot.mag_ = std::move(q);
    quot.sign_ = num.sign_ * den.sign_;
    quot.trim();
    rem.mag_ = std::move(r);
    rem.sign_ = num.sign_;
    rem.trim();
}

BigInt operator/(const BigInt& lhs, const BigInt& rhs) {
    BigInt q, r;
    BigInt::divmod(lhs, rhs, q, r);
    return q;
}

BigInt operator%(const BigInt& lhs, const BigInt& rhs) {
    BigInt q, r;
    BigInt::divmod(lhs, rhs, q, r);
    return r;
}

BigInt& BigInt::operator/=(const BigInt& rhs) { return *this = *this / rhs; }
BigInt& BigInt::operator%=(const BigInt& rhs) { return *this = *this % rhs; }

bool operator==(const BigInt& lhs, const BigInt& rhs) {
    return lhs.sign_ == rhs.sign_ && lhs.mag_ == rhs.mag_;
}

bool operator<(const BigInt& lhs, const BigInt& rhs) {
    if (lhs.sign_ != rhs.sign_) return lhs.sign_ < rhs.sign_;
    int cmp = BigInt::compare_mag(lhs.mag_, rhs.mag_);
    return lhs.sign_ >= 0 ? cmp < 0 : cmp > 0;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        if (fits_u64(a.mag_) && fits_u64(b.mag_)) {
            uint64_t x = to_u64(a.mag_), y = to_u64(b.mag_);
            while (y) {
                uint64_t t = x % y;
                x = y;
                y = t;
            }
            BigInt out;
            out.mag_ = from_u64(x);
            out.sign_ = out.mag_.empty() ? 0 : 1;
            return out;
        }
        BigInt r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BigInt BigInt::binomial(long long n, long long k) {
    if (n < 0) throw std::invalid_argument("binomial: negative n");
    if (k < 0 || k > n) return BigInt(0);
    if (k > n - k) k = n - k;
    BigInt out(1);
    for (long long i = 1; i <= k; ++i) {
        out *= BigInt(n - k + i);
        out /= BigInt(i);
    }
    return out;
}

BigInt BigInt::pow(const BigInt& base, unsigned exponent) {
    BigInt out(1), acc = base;
    while (exponent) {
        if (exponent & 1u) out *= acc;
        exponent >>= 1u;
        if (exponent) acc *= acc;
    }
    return out;
}

bool BigInt::fits_int64() const {
    if (mag_.size() > 2) return false;
    uint64_t mag = 0;
    if (mag_.size() >= 1) mag = mag_[0];
    if (mag_.size() == 2) mag |= static_cast<uint64_t>(mag_[1]) << 32;
    if (sign_ >= 0) return mag <= static_cast<uint64_t>(std::numeric_limits<long long>::max());
    return mag <= static_cast<uint64_t>(std::numeric_limits<long long>::max()) + 1;
}

long long BigInt::to_int64() const {
    if (!fits_int64()) throw std::overflow_error("BigInt: value exceeds int64 range: " + to_string());
    uint64_t mag = 0;
    if (mag_.size() >= 1) mag = mag_[0];
    if (mag_.size() == 2) mag |= static_cast<uint64_t>(mag_[1]) << 32;
    return sign_ < 0 ? -static_cast<long long>(mag - 1) - 1 : static_cast<long long>(mag);
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    // peel 9 decimal digits at a time
    std::vector<uint32_t> chunks;
    BigInt cur = abs();
    const BigInt chunk(1000000000LL);
    while (!cur.is_zero()) {
        BigInt q, r;
        divmod(cur, chunk, q, r);
        chunks.push_back(r.mag_.empty() ? 0 : r.mag_[0]);
        cur = std::move(q);
    }
    std::string out;
    if (sign_ < 0) out.push_back('-');
    out += std::to_string(chunks.back());
    char buf[16];
    for (size_t i = chunks.size() - 1; i-- > 0;) {
        std::snprintf(buf, sizeof buf, "%09u", chunks[i]);
        out += buf;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const BigInt& v) { return os << v.to_string(); }

// ---------------------------------------------------------------------------

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    reduce();
}

void Rational::reduce() {
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (den_.is_one()) return;
    BigInt g = BigInt::gcd(num_, den_);
    if (!g.is_one()) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::parse(const std::string& text) {
    size_t slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigInt(text));
    return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
}

Rational Rational::operator-() const {
    Rational out = *this;
    out.num_ = -out.num_;
    return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ = den_ * rhs.den_;
    reduce();
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
    num_ *= rhs.num_;
    den_ *= rhs.den_;
    reduce();
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
    num_ *= rhs.den_;
    den_ *= rhs.num_;
    reduce();
    return *this;
}

bool operator==(const Rational& lhs, const Rational& rhs) {
    return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
}

bool operator<(const Rational& lhs, const Rational& rhs) {
    return lhs.num_ * rhs.den_ < rhs.num_ * lhs.den_;
}

std::string Rational::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.to_string(); }

long long Rational::to_int64() const {
    if (!is_integer()) throw std::domain_error("Rational: " + to_string() + " is not an integer");
    return num_.to_int64();
}

}  // namespace twistor
