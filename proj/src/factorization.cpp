#include "monoq2/factorization.hpp"

#include <stdexcept>

#include "monoq2/assembly.hpp"

namespace monoq2 {

FactorPair factor_1d_laplacian(const Grid1D& grid) {
  const int n = grid.n;
  const int N = n + 2;
  const double h2 = grid.h * grid.h;
  std::vector<std::vector<Entry>> m1(static_cast<std::size_t>(N));
  std::vector<std::vector<Entry>> m2(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const PointClass cls = classify_1d(grid, i);
    if (cls == PointClass::CellEnd) {
      m1[static_cast<std::size_t>(i)] = {{i - 1, -0.25}, {i, 1.0}, {i + 1, -0.25}};
      m2[static_cast<std::size_t>(i)] = {{i - 1, -1.5 / h2}, {i, 3.0 / h2}, {i + 1, -1.5 / h2}};
    } else if (cls == PointClass::CellCenter) {
      m1[static_cast<std::size_t>(i)] = {{i, 1.0}};
      m2[static_cast<std::size_t>(i)] = {{i - 1, -1.0 / h2}, {i, 2.0 / h2}, {i + 1, -1.0 / h2}};
    } else {
      m1[static_cast<std::size_t>(i)] = {{i, 1.0}};
      m2[static_cast<std::size_t>(i)] = {{i, 1.0}};
    }
  }
  FactorPair pair;
  pair.first = SparseOperator::from_rows(N, std::move(m2));
  pair.second = SparseOperator::from_rows(N, std::move(m1));
  return pair;
}

FactorPair factor_2d_laplacian(const Grid2D& grid) {
  const int N = grid.num_points();
  std::vector<std::vector<Entry>> a1(static_cast<std::size_t>(N));
  // W = D^{-1}(D - A1) has depth two in the class order (cell centers ->
  // edges -> knots/boundary), so A1^{-1} = (I + W + W^2) D^{-1} exactly.
  std::vector<std::vector<Entry>> w(static_cast<std::size_t>(N));
  std::vector<double> dinv(static_cast<std::size_t>(N), 1.0);

  for (int j = 0; j <= grid.ny + 1; ++j) {
    for (int i = 0; i <= grid.nx + 1; ++i) {
      const int g = grid.index(i, j);
      auto& row = a1[static_cast<std::size_t>(g)];
      switch (classify_2d(grid, i, j)) {
        case PointClass::CellCenter:
          row = {{grid.index(i, j - 1), -0.25},
                 {grid.index(i - 1, j), -0.25},
                 {g, 2.0},
                 {grid.index(i + 1, j), -0.25},
                 {grid.index(i, j + 1), -0.25}};
          dinv[static_cast<std::size_t>(g)] = 0.5;
          w[static_cast<std::size_t>(g)] = {{grid.index(i, j - 1), 0.125},
                                            {grid.index(i - 1, j), 0.125},
                                            {grid.index(i + 1, j), 0.125},
                                            {grid.index(i, j + 1), 0.125}};
          break;
        case PointClass::EdgeCenterY:  // edge parallel to x-axis: along x
          row = {{grid.index(i - 1, j), -1.0 / 6.0}, {g, 4.0 / 3.0}, {grid.index(i + 1, j), -1.0 / 6.0}};
          dinv[static_cast<std::size_t>(g)] = 0.75;
          w[static_cast<std::size_t>(g)] = {{grid.index(i - 1, j), 0.125}, {grid.index(i + 1, j), 0.125}};
          break;
        case PointClass::EdgeCenterX:  // edge parallel to y-axis: along y
          row = {{grid.index(i, j - 1), -1.0 / 6.0}, {g, 4.0 / 3.0}, {grid.index(i, j + 1), -1.0 / 6.0}};
          dinv[static_cast<std::size_t>(g)] = 0.75;
          w[static_cast<std::size_t>(g)] = {{grid.index(i, j - 1), 0.125}, {grid.index(i, j + 1), 0.125}};
          break;
        default:  // knots and boundary points
          row = {{g, 1.0}};
          break;
      }
    }
  }

  const SparseOperator A1 = SparseOperator::from_rows(N, std::move(a1));
  const SparseOperator W = SparseOperator::from_rows(N, std::move(w));
  const SparseOperator T = add(add(SparseOperator::identity(N), W), multiply(W, W));
  const SparseOperator A1inv = scale_columns(T, dinv);

  const SparseOperator L = assemble_2d_laplacian(grid);
  // The tiny drop tolerance clears rounding residue of exact cancellations
  // when h^2 is not a power of two; true entries are >= 1/32 / h^2.
  SparseOperator A2 = multiply(L, A1inv, 1e-13);

  FactorPair pair;
  pair.first = A1;
  pair.second = A2;
  return pair;
}

FactorizationReport verify_factorization(const SparseOperator& target, const FactorPair& pair) {
  if (target.size() != pair.first.size() || target.size() != pair.second.size())
    throw std::invalid_argument("verify_factorization: dimension mismatch");
  FactorizationReport rep;
  const SparseOperator product = multiply(pair.second, pair.first);
  const double scale = target.max_abs();
  rep.residual = (scale > 0.0) ? max_abs_diff(product, target) / scale : max_abs_diff(product, target);
  rep.product_matches = rep.residual <= 1e-12;
  rep.first_m_matrix = is_m_matrix_wcdd(pair.first);
  rep.second_m_matrix = is_m_matrix_wcdd(pair.second);
  rep.pass = rep.product_matches && rep.first_m_matrix.pass && rep.second_m_matrix.pass;
  return rep;
}

}  // namespace monoq2
