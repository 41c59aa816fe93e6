#pragma once

#include "monoq2/coefficient.hpp"
#include "monoq2/grid.hpp"
#include "monoq2/sparse.hpp"

namespace monoq2 {

/// Independent assembly route used as an oracle for the stencil assembly:
/// builds the stiffness matrix S and the mass matrix M of the bilinear
/// form with per-element 3-point Gauss-Lobatto quadrature (nodes = grid
/// points, weights (1/3, 4/3, 1/3) * h/ ... per axis), checks that M is
/// exactly diagonal under the collocation, and returns M^{-1} S with
/// boundary rows replaced by identity.
SparseOperator assemble_via_quadrature(const Grid1D& grid, const CoefficientField1D& coeff);
SparseOperator assemble_via_quadrature(const Grid2D& grid, const CoefficientField2D& coeff);

}  // namespace monoq2
