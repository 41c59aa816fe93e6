#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "monoq2/assembly.hpp"
#include "monoq2/coefficient.hpp"
#include "monoq2/grid.hpp"
#include "monoq2/sparse.hpp"

namespace testutil {

using namespace monoq2;

inline double rel_diff(const SparseOperator& a, const SparseOperator& b) {
  const double scale = std::max(a.max_abs(), b.max_abs());
  return scale > 0.0 ? max_abs_diff(a, b) / scale : max_abs_diff(a, b);
}

/// Dense expected matrix holder for small hand-written oracles.
struct Dense {
  int n = 0;
  std::vector<double> v;
  explicit Dense(int n_) : n(n_), v(static_cast<std::size_t>(n_) * n_, 0.0) {}
  double& at(int i, int j) { return v[static_cast<std::size_t>(i) * n + j]; }
  double get(int i, int j) const { return v[static_cast<std::size_t>(i) * n + j]; }
};

inline double max_abs_diff_dense(const SparseOperator& a, const Dense& d) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a.coeff(i, j) - d.get(i, j)));
  return m;
}

/// The printed nine-point operator for n = 7 (interior rows carry 1/h^2).
inline Dense appendix_matrix_1d_n7(double h) {
  const double s = 1.0 / (h * h);
  Dense d(9);
  d.at(0, 0) = 1.0;
  d.at(8, 8) = 1.0;
  const auto center = [&](int i) {
    d.at(i, i - 1) = -1.0 * s;
    d.at(i, i) = 2.0 * s;
    d.at(i, i + 1) = -1.0 * s;
  };
  const auto end = [&](int i) {
    d.at(i, i - 2) = 0.25 * s;
    d.at(i, i - 1) = -2.0 * s;
    d.at(i, i) = 3.5 * s;
    d.at(i, i + 1) = -2.0 * s;
    d.at(i, i + 2) = 0.25 * s;
  };
  center(1);
  end(2);
  center(3);
  end(4);
  center(5);
  end(6);
  center(7);
  return d;
}

/// Printed two-factor decomposition for n = 7; m1 dimensionless, m2 with
/// 1/h^2 on interior rows.
inline Dense appendix_factor_m1_n7() {
  Dense d(9);
  for (int i = 0; i < 9; ++i) d.at(i, i) = 1.0;
  for (int i : {2, 4, 6}) {
    d.at(i, i - 1) = -0.25;
    d.at(i, i + 1) = -0.25;
  }
  return d;
}

inline Dense appendix_factor_m2_n7(double h) {
  const double s = 1.0 / (h * h);
  Dense d(9);
  d.at(0, 0) = 1.0;
  d.at(8, 8) = 1.0;
  for (int i : {1, 3, 5, 7}) {
    d.at(i, i - 1) = -1.0 * s;
    d.at(i, i) = 2.0 * s;
    d.at(i, i + 1) = -1.0 * s;
  }
  for (int i : {2, 4, 6}) {
    d.at(i, i - 1) = -1.5 * s;
    d.at(i, i) = 3.0 * s;
    d.at(i, i + 1) = -1.5 * s;
  }
  return d;
}

inline CoefficientField1D random_field_1d(const Grid1D& grid, double lo, double width, double c,
                                          std::uint64_t seed) {
  return random_coefficients(grid, lo, width, c, seed);
}

inline CoefficientField2D random_field_2d(const Grid2D& grid, double lo, double width, double c,
                                          std::uint64_t seed) {
  return random_coefficients(grid, lo, width, c, seed);
}

}  // namespace testutil
