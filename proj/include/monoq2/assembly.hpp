#pragma once

#include "monoq2/coefficient.hpp"
#include "monoq2/grid.hpp"
#include "monoq2/sparse.hpp"

namespace monoq2 {

struct AssemblyOptions {
  bool parallel = true;  ///< row loop runs under OpenMP (2D assemblies only)
};

/// Full operator for -u'' with Dirichlet identity rows: cell-center rows
/// (-1, 2, -1)/h^2, interior cell-end rows (1/4, -2, 7/2, -2, 1/4)/h^2.
SparseOperator assemble_1d_laplacian(const Grid1D& grid);

/// Full operator for -(a u')' + c u.
SparseOperator assemble_1d_variable(const Grid1D& grid, const CoefficientField1D& coeff);

/// Full operator for -Laplace(u): 5-point rows at cell centers, 9-entry
/// cross stencils at knots (center 7/h^2) and edge centers (center 11/2/h^2).
SparseOperator assemble_2d_laplacian(const Grid2D& grid, const AssemblyOptions& opts = {});

/// Full operator for -div(a grad u) + c u.
SparseOperator assemble_2d_variable(const Grid2D& grid, const CoefficientField2D& coeff,
                                    const AssemblyOptions& opts = {});

/// Replaces identity boundary rows u = g by u/h^2 = g/h^2 so all nonzero
/// entries share magnitude. Refuses operators without grid metadata and
/// operators already scaled.
SparseOperator scale_boundary_rows(const SparseOperator& op);

/// The four-part decomposition L = A_d + A_a^+ + A^z + A^s used by the
/// Lorenz condition. A_a^+ holds the positive off-diagonal entries, A^z and
/// A^s are nonpositive with zero diagonal.
struct Splitting {
  double epsilon = 0.0;
  SparseOperator a_d;
  SparseOperator a_plus;
  SparseOperator a_z;
  SparseOperator a_s;
};

/// Builds the splitting for a fixed epsilon in (0, 1).
///
/// Cell-center-type couplings split as A^z = eps * entry, A^s = (1-eps) *
/// entry. At cell-end-type rows the second-neighbor negative parts go to
/// A^z wholly, while A^s takes the (.)^+ deductions on the first
/// neighbors. The constant-coefficient 1D Laplacian uses A^z = A^s =
/// A_a^-/2 instead. Requires grid metadata.
Splitting split_operator(const SparseOperator& op, double epsilon);

}  // namespace monoq2
