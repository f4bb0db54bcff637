#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace neron {

class PrimeField;

// Element of F_p or F_{p^2} = F_p[t]/(t^2 - r), r the least positive
// quadratic non-residue mod p. Residues are canonical in [0, p).
// Elements carry (p, r) so values are self-contained and immutable.
struct Fq {
    uint32_t p = 0;
    uint32_t r = 0;
    uint32_t a = 0;  // constant coefficient
    uint32_t b = 0;  // coefficient of t

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }  // lies in F_p

    friend bool operator==(const Fq& x, const Fq& y) {
        return x.p == y.p && x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const Fq& x, const Fq& y) { return !(x == y); }
    // canonical order: (a, b) lexicographic
    friend bool operator<(const Fq& x, const Fq& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    }

    Fq operator-() const;
    friend Fq operator+(const Fq& x, const Fq& y);
    friend Fq operator-(const Fq& x, const Fq& y);
    friend Fq operator*(const Fq& x, const Fq& y);
    friend Fq operator/(const Fq& x, const Fq& y);  // throws on zero divisor

    Fq inv() const;                 // throws on zero
    Fq pow(long long e) const;      // negative e inverts first
    Fq frobenius() const;           // x^p; conjugation a + bt -> a - bt
    uint64_t norm_index() const { return static_cast<uint64_t>(a) + static_cast<uint64_t>(p) * b; }

    // "a" if rational, else "a+b*t"
    std::string str() const;
};

// Context for F_p and F_{p^2}. p must be an odd prime >= 5 at construction.
class PrimeField {
  public:
    explicit PrimeField(uint64_t p);

    uint32_t p() const { return p_; }
    uint32_t non_residue() const { return r_; }

    Fq elem(long long a) const;             // element of F_p
    Fq elem(long long a, long long b) const;  // a + b*t
    Fq zero() const { return elem(0); }
    Fq one() const { return elem(1); }

    // element with the given norm index a + p*b (inverse of Fq::norm_index)
    Fq from_index(uint64_t idx) const;

    // parse "a" or "a+b*t" (also accepts "-a", "a-b*t")
    Fq parse(const std::string& s) const;

  private:
    uint32_t p_, r_;
};

bool is_prime_u64(uint64_t n);

enum class WhichField { Fp, Fp2 };

// All roots in the requested field, with multiplicity, canonically sorted.
// coeffs is ascending degree; the zero polynomial is rejected.
// Exhaustive scan for small fields, gcd/Cantor-Zassenhaus splitting above.
std::vector<Fq> find_roots(const std::vector<Fq>& coeffs, WhichField field);

namespace detail {
std::vector<Fq> find_roots_exhaustive(const std::vector<Fq>& coeffs, WhichField field);
std::vector<Fq> find_roots_cz(const std::vector<Fq>& coeffs, WhichField field);
Fq horner(const std::vector<Fq>& coeffs, const Fq& x);
// coefficient of (X - x)^k in the polynomial, by repeated synthetic division
Fq taylor_coeff(const std::vector<Fq>& coeffs, const Fq& x, unsigned k);
}  // namespace detail

}  // namespace neron
