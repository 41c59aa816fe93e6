#pragma once

#include "monoq2/grid.hpp"
#include "monoq2/matrix_analysis.hpp"
#include "monoq2/sparse.hpp"

namespace monoq2 {

/// Explicit two-factor M-matrix product for the constant-coefficient
/// operator: target = second * first (first applied to the vector first).
struct FactorPair {
  SparseOperator first;
  SparseOperator second;
};

/// 1D: L = M1 * M2 with M1 dimensionless (knot rows (-1/4, 1, -1/4),
/// identity elsewhere) and M2 carrying 1/h^2 on interior rows
/// (cell centers (-1,2,-1)/h^2, knots (-3/2,3,-3/2)/h^2).
/// Returned as {first = M2, second = M1}.
FactorPair factor_1d_laplacian(const Grid1D& grid);

/// 2D: L = A2 * A1. A1 is the dimensionless local averaging operator
/// (identity at knots and boundary; cell centers 2, -1/4 cross; edge rows
/// -1/6, 4/3, -1/6 along the edge). A2 is derived as L * A1^{-1} using the
/// exact finite Neumann series for A1^{-1}; away from the boundary its
/// rows are the fixed 13-point pattern (knot center 6/h^2, cell center 2
/// with -3/8 cross and -1/8 diagonal entries, edge rows -7/16, 15/4, -1,
/// -3/16, -1/32), and near the boundary the coefficients adapt because A1
/// degenerates to the identity there.
FactorPair factor_2d_laplacian(const Grid2D& grid);

struct FactorizationReport {
  double residual = 0.0;  ///< max|second*first - target| / max|target|
  bool product_matches = false;
  WcddReport first_m_matrix;
  WcddReport second_m_matrix;
  bool pass = false;
};

/// Verifies target = second*first to 1e-12 relative and that both factors
/// are nonsingular M-matrices.
FactorizationReport verify_factorization(const SparseOperator& target, const FactorPair& pair);

}  // namespace monoq2
