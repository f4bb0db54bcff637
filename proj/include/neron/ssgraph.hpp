#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "neron/ff.hpp"

namespace neron {

struct SupersingularPoint {
    Fq j;
    int e;          // 3 at j=0 when p = 2 mod 3, 2 at j=1728 when p = 3 mod 4, else 1
    bool rational;  // j in F_p
};

struct SupersingularLocus {
    uint32_t p;
    PrimeField field;
    // one entry per supersingular j in F_{p^2}; F_p-rational first by
    // ascending residue, then conjugate pairs
    std::vector<SupersingularPoint> points;

    bool contains(const Fq& j) const;
    const SupersingularPoint& at(const Fq& j) const;
};

// Enumerates the supersingular locus: F_p-rational invariants by the Hasse
// coefficient test, the rest by closure under the degree-2 modular
// correspondence; the exact mass-formula count pins completeness.
SupersingularLocus supersingular_j_invariants(uint64_t p);

// Exact rational sum of 1/e(x) over the locus, reduced; equals (p-1)/12.
struct Rat64 {
    long long num = 0;
    long long den = 1;
};
Rat64 mass_check(const SupersingularLocus& locus);

// Independent oracle: builds y^2 = x^3 + 3j(1728-j) x + 2j(1728-j)^2 (and
// y^2 = x^3 + 1, y^2 = x^3 + x for j = 0, 1728), counts points exhaustively
// over F_{p^2}, true iff the count is 1 mod p. Intended for p <= 300.
bool is_supersingular_oracle(const Fq& j);

// Same, with a precomputed table of the nonzero squares of F_{p^2} indexed
// by norm_index(); use for sweeps.
std::vector<bool> fp2_square_table(const PrimeField& F);
bool is_supersingular_oracle(const Fq& j, const std::vector<bool>& squares);

// F_p-level count for rational j: true iff #E(F_p) = p + 1.
bool is_supersingular_oracle_fp(const PrimeField& F, uint32_t j_residue);

// Coefficient-of-x^(p-1) Hasse test; O(p) setup per prime, O(p/6) per j.
class HasseTester {
  public:
    explicit HasseTester(const PrimeField& F);
    bool is_supersingular(const Fq& j) const;

  private:
    PrimeField F_;
    std::vector<uint32_t> fact_, inv_fact_;
};

}  // namespace neron
