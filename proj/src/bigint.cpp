#include "neron/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace neron {

Int::Int(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    unsigned long long u = v < 0 ? 0ULL - static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
    while (u) {
        mag_.push_back(static_cast<uint32_t>(u & 0xffffffffu));
        u >>= 32;
    }
}

Int::Int(const std::string& s) {
    size_t i = 0;
    int sgn = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') sgn = -1;
        ++i;
    }
    if (i >= s.size()) throw std::invalid_argument("Int: empty decimal string");
    Int acc;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("Int: bad digit");
        acc *= Int(10);
        acc += Int(s[i] - '0');
    }
    *this = acc;
    if (sgn < 0) sign_ = -sign_;
}

void Int::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int Int::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<uint32_t> Int::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const std::vector<uint32_t>& big = a.size() >= b.size() ? a : b;
    const std::vector<uint32_t>& sml = a.size() >= b.size() ? b : a;
    std::vector<uint32_t> r(big.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < big.size(); ++i) {
        uint64_t s = carry + big[i] + (i < sml.size() ? sml[i] : 0);
        r[i] = static_cast<uint32_t>(s);
        carry = s >> 32;
    }
    r[big.size()] = static_cast<uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// requires |a| >= |b|
std::vector<uint32_t> Int::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t d = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (d < 0) {
            d += (1LL << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<uint32_t>(d);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

Int Int::operator-() const {
    Int r = *this;
    r.sign_ = -r.sign_;
    return r;
}

Int Int::abs() const {
    Int r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

Int& Int::operator+=(const Int& o) {
    if (o.sign_ == 0) return *this;
    if (sign_ == 0) {
        *this = o;
        return *this;
    }
    if (sign_ == o.sign_) {
        mag_ = add_mag(mag_, o.mag_);
    } else {
        int c = cmp_mag(mag_, o.mag_);
        if (c == 0) {
            sign_ = 0;
            mag_.clear();
        } else if (c > 0) {
            mag_ = sub_mag(mag_, o.mag_);
        } else {
            mag_ = sub_mag(o.mag_, mag_);
            sign_ = o.sign_;
        }
    }
    trim();
    return *this;
}

Int& Int::operator-=(const Int& o) { return *this += -o; }

Int operator*(const Int& a, const Int& b) {
    Int r;
    if (a.sign_ == 0 || b.sign_ == 0) return r;
    r.sign_ = a.sign_ * b.sign_;
    r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
    for (size_t i = 0; i < a.mag_.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.mag_.size(); ++j) {
            uint64_t cur = r.mag_[i + j] + static_cast<uint64_t>(a.mag_[i]) * b.mag_[j] + carry;
            r.mag_[i + j] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        size_t k = i + b.mag_.size();
        while (carry) {
            uint64_t cur = r.mag_[k] + carry;
            r.mag_[k] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    r.trim();
    return r;
}

Int& Int::operator*=(const Int& o) {
    *this = *this * o;
    return *this;
}

// Binary long division on magnitudes; adequate for the matrix sizes here.
void Int::divmod(const Int& a, const Int& b, Int& quot, Int& rem) {
    if (b.sign_ == 0) throw std::domain_error("Int: division by zero");
    if (a.sign_ == 0) {
        quot = Int();
        rem = Int();
        return;
    }
    int c = cmp_mag(a.mag_, b.mag_);
    if (c < 0) {
        quot = Int();
        rem = a;
        return;
    }
    size_t abits = a.mag_.size() * 32;
    Int q, r;
    q.mag_.assign(a.mag_.size(), 0);
    for (size_t i = abits; i-- > 0;) {
        // r = r*2 + bit i of |a|
        uint32_t carry = 0;
        for (size_t k = 0; k < r.mag_.size(); ++k) {
            uint32_t nv = (r.mag_[k] << 1) | carry;
            carry = r.mag_[k] >> 31;
            r.mag_[k] = nv;
        }
        if (carry) r.mag_.push_back(carry);
        uint32_t bit = (a.mag_[i / 32] >> (i % 32)) & 1u;
        if (bit) {
            if (r.mag_.empty()) r.mag_.push_back(1);
            else {
                uint64_t s = static_cast<uint64_t>(r.mag_[0]) + 1;
                r.mag_[0] = static_cast<uint32_t>(s);
                size_t k = 1;
                uint64_t cy = s >> 32;
                while (cy) {
                    if (k == r.mag_.size()) { r.mag_.push_back(0); }
                    uint64_t s2 = static_cast<uint64_t>(r.mag_[k]) + cy;
                    r.mag_[k] = static_cast<uint32_t>(s2);
                    cy = s2 >> 32;
                    ++k;
                }
            }
        }
        if (cmp_mag(r.mag_, b.mag_) >= 0) {
            r.mag_ = sub_mag(r.mag_, b.mag_);
            q.mag_[i / 32] |= (1u << (i % 32));
        }
    }
    q.sign_ = 1;
    q.trim();
    r.sign_ = r.mag_.empty() ? 0 : 1;
    r.trim();
    // fix signs: truncated division
    if (q.sign_ != 0) q.sign_ = a.sign_ * b.sign_;
    if (r.sign_ != 0) r.sign_ = a.sign_;
    quot = q;
    rem = r;
}

Int operator/(const Int& a, const Int& b) {
    Int q, r;
    Int::divmod(a, b, q, r);
    return q;
}

Int operator%(const Int& a, const Int& b) {
    Int q, r;
    Int::divmod(a, b, q, r);
    return r;
}

Int Int::div_round(const Int& a, const Int& b) {
    Int q, r;
    divmod(a, b, q, r);
    // adjust toward nearest: |r|*2 > |b| -> move one step
    Int r2 = r.abs() + r.abs();
    if (cmp_mag(r2.mag_, b.mag_) > 0) {
        Int one(1);
        if ((a.sign_ < 0) == (b.sign_ < 0)) q += one;
        else q -= one;
    }
    return q;
}

bool operator==(const Int& a, const Int& b) { return a.sign_ == b.sign_ && a.mag_ == b.mag_; }

bool operator<(const Int& a, const Int& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    int c = Int::cmp_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? c < 0 : c > 0;
}

bool Int::fits_int64() const {
    if (mag_.size() > 2) return false;
    if (mag_.size() < 2) return true;
    uint64_t v = (static_cast<uint64_t>(mag_[1]) << 32) | mag_[0];
    if (sign_ > 0) return v <= 0x7fffffffffffffffULL;
    return v <= 0x8000000000000000ULL;
}

long long Int::to_int64() const {
    if (!fits_int64()) throw std::overflow_error("Int: does not fit int64");
    uint64_t v = 0;
    if (mag_.size() >= 1) v = mag_[0];
    if (mag_.size() >= 2) v |= static_cast<uint64_t>(mag_[1]) << 32;
    if (sign_ < 0) return -static_cast<long long>(v - 1) - 1;
    return static_cast<long long>(v);
}

std::string Int::str() const {
    if (sign_ == 0) return "0";
    std::vector<uint32_t> m = mag_;
    std::string digits;
    while (!m.empty()) {
        uint64_t rem = 0;
        for (size_t i = m.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | m[i];
            m[i] = static_cast<uint32_t>(cur / 1000000000u);
            rem = cur % 1000000000u;
        }
        while (!m.empty() && m.back() == 0) m.pop_back();
        for (int k = 0; k < 9; ++k) {
            digits.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    std::string out;
    if (sign_ < 0) out.push_back('-');
    out.append(digits.rbegin(), digits.rend());
    return out;
}

Int gcd(Int a, Int b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

Xgcd xgcd(const Int& a, const Int& b) {
    Int old_r = a, r = b;
    Int old_s(1), s(0), old_t(0), t(1);
    while (!r.is_zero()) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r.is_negative()) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

Int pow(Int base, unsigned long long exp) {
    Int r(1);
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

}  // namespace neron
