#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monoq2/assembly.hpp"
#include "monoq2/sparse.hpp"

namespace monoq2 {

/// True iff every off-diagonal entry is <= 0.
bool is_z_pattern(const SparseOperator& A);

/// Directed graph over matrix indices: edge i -> k iff A(i,k) != 0, i != k.
/// Stores the reversed adjacency used by the reachability query.
struct ConnectivityGraph {
  int n = 0;
  std::size_t edge_count = 0;
  std::vector<int> rev_ptr;  ///< CSR over incoming edges
  std::vector<int> rev_adj;
};

ConnectivityGraph connectivity_graph(const SparseOperator& A);

/// True iff every vertex of `from` has a directed path to some vertex of
/// `to` (empty `from` connects trivially). One reverse breadth-first
/// search from `to`.
bool connects(const ConnectivityGraph& g, std::span<const int> from, std::span<const int> to);

/// Sign classification of a vector with a scale-aware tolerance:
/// N^+ = { i : v_i > tol }, N^0 = { i : |v_i| <= tol }.
struct SignSets {
  std::vector<int> zero;
  std::vector<int> positive;
  std::vector<int> negative;
};
SignSets classify_signs(std::span<const double> v, double tol);

/// M-matrix test: Z-pattern, positive diagonal, row sums >= 0 with at
/// least one positive, and every zero-sum row chained (through the
/// off-diagonal pattern) to a positive-sum row. The chaining repairs the
/// irreducibility that the plain row-sum criterion needs.
struct WcddReport {
  bool z_pattern = false;
  bool positive_diagonal = false;
  bool row_sums_nonnegative = false;
  bool has_positive_row_sum = false;
  bool chained = false;
  bool pass = false;
  double min_row_sum_normalized = 0.0;  ///< min row sum / row scale
  std::vector<int> failing_rows;        ///< first offenders (capped)
};

WcddReport is_m_matrix_wcdd(const SparseOperator& A, double tol_factor = 1e-13);

struct LorenzOptions {
  std::optional<double> epsilon;          ///< fixed; empty => bisection search
  std::optional<bool> c_strictly_positive;  ///< hint from the coefficient field
  double tol_factor = 1e-13;
};

struct LorenzReport {
  bool cond1_pass = false;  ///< A_d + A^z nonsingular M-matrix
  WcddReport cond1;
  bool cond2_pass = false;  ///< A_a^+ <= A^z A_d^{-1} A^s entrywise
  double cond2_worst_margin = 0.0;  ///< min (product - A_a^+) / scale over A_a^+ support
  bool cond2_vacuous = false;       ///< A_a^+ has no entries
  std::vector<std::pair<int, int>> cond2_failing;  ///< capped
  bool cond3_pass = false;
  std::string cond3_mode;  ///< "c>0" or "pattern+connectivity"
  std::optional<double> epsilon_used;
  bool epsilon_searched = false;
  bool overall = false;
};

/// Checks the three Lorenz conditions for an assembled operator. When no
/// epsilon is given, a concrete admissible one is located by bisection on
/// the entrywise condition (start 1/2, 40 steps).
LorenzReport lorenz_check(const SparseOperator& op, const LorenzOptions& opts = {});

struct InverseOptions {
  int cap = 20000;                  ///< refuse larger systems
  double threshold_factor = 1e-12;  ///< numerical zero = factor * max|inverse|
  std::optional<double> threshold_override;  ///< absolute override
  bool parallel = true;
};

struct InverseReport {
  int n = 0;
  double min_value = 0.0;
  int min_row = -1, min_col = -1;
  bool has_interior = false;
  double interior_min = 0.0;
  int interior_row = -1, interior_col = -1;
  double max_abs = 0.0;
  double threshold = 0.0;
  bool nonnegative = false;  ///< min >= -threshold
};

/// Factorizes once and solves all unit-vector systems to scan the full
/// inverse; the interior block is reported when grid metadata is present.
InverseReport inverse_min_entries(const SparseOperator& op, const InverseOptions& opts = {});

struct DmpReport {
  InverseReport inverse;
  bool row_sums_nonnegative = false;
  double min_row_sum_normalized = 0.0;
  bool pass = false;
};

/// Discrete maximum principle certificate: inverse nonnegativity plus
/// nonnegative row sums.
DmpReport dmp_certify(const SparseOperator& op, const InverseOptions& opts = {});

/// Classical second-order schemes; their off-diagonal pattern is the
/// connectivity skeleton the sufficient conditions lean on.
SparseOperator fd2_laplacian_1d(int n, double h);
SparseOperator fd2_laplacian_2d(int nx, int ny, double h);

}  // namespace monoq2
