#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fusionlab/errors.hpp"

namespace fusionlab {

// sorted (index, value) pairs, value in [1, p). Index type is 32-bit: every
// budget-gated space has dimension below the cell cap, which is far under
// 2^31, and the narrower entries halve pivot storage.
using SpIdx = std::int32_t;
using SparseVec = std::vector<std::pair<SpIdx, std::uint8_t>>;

// prime field arithmetic for p < 256
struct Fp {
  int p = 2;
  std::vector<std::uint8_t> inv;

  explicit Fp(int prime) : p(prime), inv(prime, 0) {
    for (int a = 1; a < p; ++a)
      for (int b = 1; b < p; ++b)
        if (a * b % p == 1) { inv[a] = static_cast<std::uint8_t>(b); break; }
  }
  std::uint8_t add(std::uint8_t a, std::uint8_t b) const {
    int s = a + b;
    return static_cast<std::uint8_t>(s >= p ? s - p : s);
  }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const {
    int s = a - b;
    return static_cast<std::uint8_t>(s < 0 ? s + p : s);
  }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const {
    return static_cast<std::uint8_t>(a * b % p);
  }
  std::uint8_t neg(std::uint8_t a) const { return a ? static_cast<std::uint8_t>(p - a) : 0; }
};

// dense row-major matrix over F_p
struct FpMat {
  int rows = 0, cols = 0;
  std::vector<std::uint8_t> a;

  FpMat() = default;
  FpMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  static FpMat identity(int n) {
    FpMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  std::uint8_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  std::uint8_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  bool is_identity() const;
  std::size_t nnz() const;
  bool operator==(const FpMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

FpMat fp_mul(const Fp& f, const FpMat& x, const FpMat& y);
std::vector<std::uint8_t> fp_apply(const Fp& f, const FpMat& m, const std::vector<std::uint8_t>& v);
int fp_rank(const Fp& f, FpMat m);

// Streaming row echelon over F_p. Rows are fed one at a time; pivot choice is
// always the leading column, so results are input-order deterministic.
// Optional augmented columns record the expression of each pivot row in terms
// of the fed rows that were tagged with a unit aug vector.
class Echelon {
 public:
  Echelon(int p, std::int64_t ncols, int aug_cols = 0,
          std::uint64_t entry_cap = 80'000'000);

  // returns the pivot column, or -1 when the row reduced to zero
  std::int64_t add_row(const SparseVec& row);
  std::int64_t add_row(const SparseVec& row, const std::vector<std::uint8_t>& aug);

  std::int64_t rank() const { return static_cast<std::int64_t>(order_.size()); }
  std::int64_t ncols() const { return ncols_; }

  struct Reduction {
    bool zero = false;
    SparseVec residual;
    std::vector<std::uint8_t> aug;  // combination of tagged rows used
  };
  Reduction reduce(const SparseVec& row) const;

  void finalize_rref();

  // sorted pivot columns
  std::vector<std::int64_t> pivot_columns() const;
  // canonical kernel basis of the fed row set (requires finalize_rref)
  std::vector<SparseVec> kernel_basis() const;
  // pivot rows as sparse vectors (requires finalize_rref for canonical form)
  std::vector<SparseVec> rows() const;
  std::vector<std::vector<std::uint8_t>> row_augs() const;

 private:
  enum class Mode { Packed, Packed3, Dense, Sparse };
  SparseVec row_as_sparse(std::size_t slot) const;
  std::int64_t store_row(SparseVec row, std::vector<std::uint8_t> aug);
  void subtract_into_scratch(std::size_t slot, std::uint8_t coeff,
                             std::vector<std::int64_t>& heap) const;

  Fp fp_;
  std::int64_t ncols_;
  int aug_cols_;
  std::uint64_t entry_cap_;
  std::uint64_t entries_ = 0;
  Mode mode_;
  bool rref_done_ = false;

  std::vector<std::int32_t> pivot_of_col_;  // col -> slot or -1
  std::vector<std::int64_t> order_;         // slots in insertion order
  std::vector<std::int64_t> pivcol_;        // slot -> pivot column

  // sparse storage
  std::vector<SparseVec> srows_;
  // dense storage (odd p, small ncols)
  std::vector<std::vector<std::uint8_t>> drows_;
  // packed storage (p = 2: one bitplane; p = 3: two bitplanes lo,hi)
  std::vector<std::vector<std::uint64_t>> prows_;
  std::vector<std::uint64_t> pivbits_;  // pivot-column bitmap (packed modes)

  std::vector<std::vector<std::uint8_t>> augs_;

  // scratch, reused across add_row calls
  mutable std::vector<std::uint8_t> scratch_;
  mutable std::vector<std::uint64_t> pscratch_;
  mutable std::vector<std::uint8_t> aug_scratch_;
};

}  // namespace fusionlab
