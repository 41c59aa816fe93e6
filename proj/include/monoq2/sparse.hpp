#pragma once

#include <optional>
#include <span>
#include <vector>

namespace monoq2 {

/// Which assembly produced an operator; fixes the stencil classes used by
/// the splitting.
enum class Scheme { Laplacian1D, Variable1D, Laplacian2D, Variable2D };

enum class BoundaryRows { Identity, Scaled };

/// Grid provenance attached to assembled operators. Operators read back
/// from files do not carry it; checks that need point classes refuse them.
struct OperatorMeta {
  Scheme scheme = Scheme::Laplacian1D;
  int dim = 1;
  int nx = 0;  ///< interior count in x (n in 1D)
  int ny = 0;  ///< interior count in y (0 in 1D)
  double h = 0.0;
  BoundaryRows boundary = BoundaryRows::Identity;

  int points_x() const { return nx + 2; }
  int size() const { return dim == 1 ? nx + 2 : (nx + 2) * (ny + 2); }
  bool is_boundary_index(int idx) const {
    if (dim == 1) return idx == 0 || idx == nx + 1;
    const int i = idx % points_x(), j = idx / points_x();
    return i == 0 || i == nx + 1 || j == 0 || j == ny + 1;
  }
};

struct Entry {
  int col;
  double value;
};

/// Square sparse matrix in compressed-row form; entries within a row are
/// sorted by column and exact zeros are dropped on construction.
class SparseOperator {
 public:
  SparseOperator() = default;

  /// Builds from per-row entry lists. Duplicate columns are summed in
  /// insertion order; entries equal to 0.0 are dropped.
  static SparseOperator from_rows(int n, std::vector<std::vector<Entry>> rows,
                                  std::optional<OperatorMeta> meta = std::nullopt);

  static SparseOperator identity(int n);

  int size() const { return n_; }
  std::size_t nnz() const { return col_.size(); }
  std::span<const Entry> row(int i) const;  // view over (col, value) pairs
  double coeff(int i, int j) const;          // 0 when absent

  std::vector<double> apply(std::span<const double> x) const;
  std::vector<double> row_sums() const;
  double max_abs() const;

  const std::optional<OperatorMeta>& meta() const { return meta_; }
  void set_meta(std::optional<OperatorMeta> m) { meta_ = std::move(m); }

  /// Interior-point mask from the grid metadata; empty when absent.
  std::vector<char> interior_mask() const;

  // Raw views (row-compressed storage)
  std::span<const int> row_ptr() const { return row_ptr_; }
  std::span<const int> col_idx() const { return col_; }
  std::span<const double> values() const { return val_; }

 private:
  int n_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> col_;
  std::vector<double> val_;
  // Entry storage mirrored as (col,value) pairs for row() views.
  std::vector<Entry> entries_;
  std::optional<OperatorMeta> meta_;

  void rebuild_entries();
  friend SparseOperator linear_combination(double, const SparseOperator&, double,
                                           const SparseOperator&);
  friend SparseOperator multiply(const SparseOperator&, const SparseOperator&, double);
};

/// alpha*A + beta*B (patterns merged, exact zeros dropped). Metadata is not
/// propagated.
SparseOperator linear_combination(double alpha, const SparseOperator& A, double beta,
                                  const SparseOperator& B);

inline SparseOperator add(const SparseOperator& A, const SparseOperator& B) {
  return linear_combination(1.0, A, 1.0, B);
}

/// A*B. Entries with |v| <= drop_tol * max|v| are dropped afterwards.
SparseOperator multiply(const SparseOperator& A, const SparseOperator& B, double drop_tol = 0.0);

SparseOperator scale(const SparseOperator& A, double s);

/// A * diag(d): scales column j by d[j].
SparseOperator scale_columns(const SparseOperator& A, std::span<const double> d);

double max_abs_diff(const SparseOperator& A, const SparseOperator& B);

/// True when every stored position of B is also stored in A.
bool pattern_superset(const SparseOperator& A, const SparseOperator& B);

}  // namespace monoq2
