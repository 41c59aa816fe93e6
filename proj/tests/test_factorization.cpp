#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "monoq2/assembly.hpp"
#include "monoq2/factorization.hpp"
#include "monoq2/matrix_analysis.hpp"

using namespace monoq2;
using namespace testutil;

TEST_CASE("1d factors match the printed matrices for n = 7") {
  const Grid1D g = build_grid_1d(7, 0.0, 1.0);
  const FactorPair pair = factor_1d_laplacian(g);
  CHECK(max_abs_diff_dense(pair.second, appendix_factor_m1_n7()) == 0.0);
  CHECK(max_abs_diff_dense(pair.first, appendix_factor_m2_n7(g.h)) == 0.0);

  const SparseOperator L = assemble_1d_laplacian(g);
  const FactorizationReport rep = verify_factorization(L, pair);
  CHECK(rep.pass);
  CHECK(rep.residual <= 1e-13);
  CHECK(rep.first_m_matrix.pass);
  CHECK(rep.second_m_matrix.pass);
}

TEST_CASE("1d factorization degenerates cleanly on the single-cell grid") {
  const Grid1D g = build_grid_1d(1, 0.0, 1.0);
  const FactorPair pair = factor_1d_laplacian(g);
  CHECK(pair.second.nnz() == 3);  // identity: no knot rows
  for (int i = 0; i < 3; ++i) CHECK(pair.second.coeff(i, i) == 1.0);
  CHECK(rel_diff(pair.first, assemble_1d_laplacian(g)) == 0.0);
  CHECK(verify_factorization(assemble_1d_laplacian(g), pair).pass);
}

TEST_CASE("1d product residual stays at rounding level for general n") {
  for (int n : {3, 5, 9, 15, 21}) {
    const Grid1D g = build_grid_1d(n, 0.0, 1.0);
    const FactorPair pair = factor_1d_laplacian(g);
    const SparseOperator L = assemble_1d_laplacian(g);
    const FactorizationReport rep = verify_factorization(L, pair);
    CHECK(rep.pass);
    CHECK(rep.residual <= 1e-13);
  }
}

TEST_CASE("2d factorization composes to the assembled operator") {
  for (int m : {1, 2, 3, 4, 8}) {
    const int n = 2 * m - 1;
    const Grid2D g = build_grid_2d(n, n, 0.0, 1.0, 0.0, 1.0);
    const FactorPair pair = factor_2d_laplacian(g);
    const SparseOperator L = assemble_2d_laplacian(g);
    const FactorizationReport rep = verify_factorization(L, pair);
    CHECK(rep.product_matches);
    CHECK(rep.residual <= 1e-12);
    CHECK(rep.first_m_matrix.pass);
    CHECK(rep.second_m_matrix.pass);
    CHECK(rep.pass);
  }
}

TEST_CASE("2d factor rows away from the boundary match the printed pattern") {
  const Grid2D g = build_grid_2d(7, 7, 0.0, 1.0, 0.0, 1.0);
  const FactorPair pair = factor_2d_laplacian(g);
  const SparseOperator& a1 = pair.first;
  const SparseOperator& a2 = pair.second;
  const double s = 1.0 / (g.h * g.h);

  SUBCASE("a1 stencils") {
    const int center = g.index(3, 3);
    CHECK(a1.coeff(center, center) == 2.0);
    CHECK(a1.coeff(center, g.index(2, 3)) == -0.25);
    CHECK(a1.coeff(center, g.index(3, 4)) == -0.25);
    const int knot = g.index(4, 4);
    CHECK(a1.coeff(knot, knot) == 1.0);
    CHECK(a1.row(knot).size() == 1);
    const int edge_x = g.index(3, 4);  // edge parallel to x-axis: along-x average
    CHECK(a1.coeff(edge_x, edge_x) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(a1.coeff(edge_x, g.index(2, 4)) == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
    CHECK(a1.coeff(edge_x, g.index(3, 3)) == 0.0);
  }
  SUBCASE("a2 interior rows") {
    const int knot = g.index(4, 4);
    CHECK(a2.coeff(knot, knot) == doctest::Approx(6.0 * s).epsilon(1e-14));
    CHECK(a2.coeff(knot, g.index(3, 4)) == doctest::Approx(-1.5 * s).epsilon(1e-14));
    CHECK(a2.coeff(knot, g.index(4, 5)) == doctest::Approx(-1.5 * s).epsilon(1e-14));
    const int center = g.index(3, 3);
    CHECK(a2.coeff(center, center) == doctest::Approx(2.0 * s).epsilon(1e-14));
    CHECK(a2.coeff(center, g.index(2, 3)) == doctest::Approx(-0.375 * s).epsilon(1e-14));
    CHECK(a2.coeff(center, g.index(2, 2)) == doctest::Approx(-0.125 * s).epsilon(1e-14));
    const int edge_x = g.index(3, 4);
    CHECK(a2.coeff(edge_x, edge_x) == doctest::Approx(3.75 * s).epsilon(1e-14));
    CHECK(a2.coeff(edge_x, g.index(2, 4)) == doctest::Approx(-7.0 / 16.0 * s).epsilon(1e-14));
    CHECK(a2.coeff(edge_x, g.index(3, 3)) == doctest::Approx(-1.0 * s).epsilon(1e-14));
    CHECK(a2.coeff(edge_x, g.index(2, 3)) == doctest::Approx(-3.0 / 16.0 * s).epsilon(1e-14));
    CHECK(a2.coeff(edge_x, g.index(2, 2)) == doctest::Approx(-1.0 / 32.0 * s).epsilon(1e-14));
  }
}

TEST_CASE("single-cell 2d factorization composes to the five-point row") {
  const Grid2D g = build_grid_2d(1, 1, 0.0, 1.0, 0.0, 1.0);
  const FactorPair pair = factor_2d_laplacian(g);
  const int c = g.index(1, 1);
  CHECK(pair.first.coeff(c, c) == 2.0);
  CHECK(pair.first.coeff(c, g.index(0, 1)) == -0.25);
  const SparseOperator prod = multiply(pair.second, pair.first);
  const double s = 1.0 / (g.h * g.h);
  CHECK(prod.coeff(c, c) == doctest::Approx(4.0 * s).epsilon(1e-14));
  CHECK(prod.coeff(c, g.index(1, 0)) == doctest::Approx(-1.0 * s).epsilon(1e-14));
  CHECK(verify_factorization(assemble_2d_laplacian(g), pair).pass);
}

TEST_CASE("verify_factorization rejects non-M-matrix factors") {
  const Grid1D g = build_grid_1d(7, 0.0, 1.0);
  const SparseOperator L = assemble_1d_laplacian(g);
  FactorPair trivial;
  trivial.first = L;
  trivial.second = SparseOperator::identity(L.size());
  const FactorizationReport rep = verify_factorization(L, trivial);
  CHECK(rep.product_matches);   // I * L reproduces L
  CHECK_FALSE(rep.first_m_matrix.pass);  // but L is not a Z-matrix
  CHECK_FALSE(rep.pass);
}

TEST_CASE("factorization success implies inverse nonnegativity") {
  const Grid1D g1 = build_grid_1d(7, 0.0, 1.0);
  const SparseOperator l1 = assemble_1d_laplacian(g1);
  CHECK(verify_factorization(l1, factor_1d_laplacian(g1)).pass);
  CHECK(inverse_min_entries(l1).nonnegative);

  const Grid2D g2 = build_grid_2d(5, 5, 0.0, 1.0, 0.0, 1.0);
  const SparseOperator l2 = assemble_2d_laplacian(g2);
  CHECK(verify_factorization(l2, factor_2d_laplacian(g2)).pass);
  CHECK(inverse_min_entries(l2).nonnegative);
}

TEST_CASE("rescaling h rescales the product exactly like the operator") {
  const Grid1D ga = build_grid_1d(5, 0.0, 1.0);
  const Grid1D gb = build_grid_1d(5, 0.0, 2.0);
  const FactorPair pa = factor_1d_laplacian(ga);
  const FactorPair pb = factor_1d_laplacian(gb);
  const SparseOperator prod_a = multiply(pa.second, pa.first);
  const SparseOperator prod_b = multiply(pb.second, pb.first);
  // interior entries scale by (h_a/h_b)^2 = 4
  CHECK(prod_a.coeff(1, 1) == doctest::Approx(4.0 * prod_b.coeff(1, 1)).epsilon(1e-14));
  CHECK(rel_diff(prod_a, assemble_1d_laplacian(ga)) <= 1e-14);
  CHECK(rel_diff(prod_b, assemble_1d_laplacian(gb)) <= 1e-14);
}
