#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace neron {

// Signed arbitrary-precision integer, sign + base-2^32 magnitude.
// Sized for exact graph linear algebra at desk scale, not cryptography.
class Int {
  public:
    Int() = default;
    Int(long long v);
    explicit Int(const std::string& decimal);

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return sign_; }

    Int operator-() const;
    Int abs() const;

    Int& operator+=(const Int& o);
    Int& operator-=(const Int& o);
    Int& operator*=(const Int& o);

    friend Int operator+(Int a, const Int& b) { return a += b; }
    friend Int operator-(Int a, const Int& b) { return a -= b; }
    friend Int operator*(const Int& a, const Int& b);

    // Truncated division, like C++ integers: quot rounds toward zero,
    // rem has the sign of the dividend. b must be nonzero.
    static void divmod(const Int& a, const Int& b, Int& quot, Int& rem);
    friend Int operator/(const Int& a, const Int& b);
    friend Int operator%(const Int& a, const Int& b);

    // Quotient rounding to nearest (ties toward zero); used by the Smith
    // reduction steps to keep entries small.
    static Int div_round(const Int& a, const Int& b);

    friend bool operator==(const Int& a, const Int& b);
    friend bool operator!=(const Int& a, const Int& b) { return !(a == b); }
    friend bool operator<(const Int& a, const Int& b);
    friend bool operator>(const Int& a, const Int& b) { return b < a; }
    friend bool operator<=(const Int& a, const Int& b) { return !(b < a); }
    friend bool operator>=(const Int& a, const Int& b) { return !(a < b); }

    bool fits_int64() const;
    long long to_int64() const;  // throws std::overflow_error if out of range

    std::string str() const;

  private:
    int sign_ = 0;
    std::vector<uint32_t> mag_;  // little-endian limbs, no trailing zeros

    void trim();
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
};

Int gcd(Int a, Int b);

struct Xgcd {
    Int g, x, y;  // g = gcd(a,b) >= 0, g = a*x + b*y
};
Xgcd xgcd(const Int& a, const Int& b);

Int pow(Int base, unsigned long long exp);

}  // namespace neron
