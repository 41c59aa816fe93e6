#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "monoq2/sparse.hpp"

namespace monoq2 {

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Banded LU factorization with partial pivoting (LAPACK gbtrf layout:
/// lower bandwidth kl, upper bandwidth ku, fill confined to kl+ku
/// superdiagonals). Pivot choice is deterministic (first maximal entry),
/// so repeated factorizations of the same matrix are bitwise identical.
/// Solves are const and safe to run concurrently.
class BandedLU {
 public:
  static BandedLU factor(const SparseOperator& A);

  int size() const { return n_; }
  void solve_inplace(std::span<double> b) const;
  std::vector<double> solve(std::vector<double> b) const {
    solve_inplace(b);
    return b;
  }

 private:
  int n_ = 0, kl_ = 0, ku_ = 0, ldab_ = 0;
  std::vector<double> band_;
  std::vector<int> ipiv_;

  double& at(int i, int j) { return band_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)]; }
  double get(int i, int j) const {
    return band_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)];
  }
};

/// Column-by-column scan of the inverse against a shared factorization.
/// Minima are merged in column order, so results do not depend on the
/// thread count; `serial` is the reference path used by the tests.
struct InverseScan {
  double min_value = 0.0;
  int min_row = -1, min_col = -1;
  double max_abs = 0.0;
  bool has_interior = false;  ///< interior stats valid (grid metadata known)
  double interior_min = 0.0;
  int interior_row = -1, interior_col = -1;
};

InverseScan scan_inverse_columns(const BandedLU& lu, std::span<const char> interior_mask,
                                 bool parallel);

}  // namespace monoq2
