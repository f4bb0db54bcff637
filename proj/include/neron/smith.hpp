#pragma once

#include <optional>
#include <vector>

#include "neron/bigint.hpp"

namespace neron {

// Dense integer matrix, row-major.
struct IMat {
    size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IMat() = default;
    IMat(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}
    Int& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    const Int& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

    static IMat identity(size_t n);
};

IMat mat_mul(const IMat& x, const IMat& y);

// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ... , di >= 0.
struct SmithResult {
    IMat d;        // rows x cols, diagonal
    IMat u;        // rows x rows
    IMat v;        // cols x cols
    size_t rank;   // number of nonzero diagonal entries
    std::vector<Int> diag() const;
};

SmithResult smith_normal_form(IMat m);

// Finitely generated abelian group presented as Z^n / (column span of R).
// Canonical coordinates come from the Smith transform of R.
class AbelianGroup {
  public:
    // relations: n x k matrix whose columns generate the relation lattice.
    static AbelianGroup from_relations(IMat relations);

    size_t ambient_rank() const { return n_; }
    size_t free_rank() const { return n_ - snf_.rank; }
    // invariant factors > 1, in divisibility order
    const std::vector<Int>& invariant_factors() const { return factors_; }
    bool is_trivial() const { return factors_.empty() && free_rank() == 0; }
    Int order() const;  // product of invariant factors; requires free_rank()==0

    // Canonical class of an ambient vector: torsion coordinates mod the
    // invariant factors (including the 1-factors, which are dropped), plus
    // free coordinates. Two vectors are congruent iff classes are equal.
    std::vector<Int> project(const std::vector<Int>& v) const;

    bool class_is_zero(const std::vector<Int>& cls) const;
    Int order_of(const std::vector<Int>& cls) const;  // requires free part zero

    // Smallest k >= 0 with k*target == value, if any.
    std::optional<Int> solve_multiple(const std::vector<Int>& target,
                                      const std::vector<Int>& value) const;

    // Order of the subgroup generated by the given classes (torsion groups only).
    Int subgroup_order(const std::vector<std::vector<Int>>& classes) const;

    const SmithResult& smith() const { return snf_; }

  private:
    size_t n_ = 0;
    SmithResult snf_;
    std::vector<Int> all_diag_;         // rank entries incl. 1s
    std::vector<Int> factors_;          // > 1 only
    std::vector<size_t> factor_index_;  // positions of entries > 1 in the diagonal
};

}  // namespace neron
