#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "monoq2/assembly.hpp"
#include "monoq2/linsolve.hpp"

using namespace monoq2;
using namespace testutil;

namespace {

bool bitwise_equal(const SparseOperator& a, const SparseOperator& b) {
  if (a.size() != b.size() || a.nnz() != b.nnz()) return false;
  for (int i = 0; i < a.size(); ++i) {
    const auto ra = a.row(i);
    const auto rb = b.row(i);
    if (ra.size() != rb.size()) return false;
    for (std::size_t k = 0; k < ra.size(); ++k)
      if (ra[k].col != rb[k].col || ra[k].value != rb[k].value) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("1d Laplacian matches the printed nine-point matrix") {
  const Grid1D g = build_grid_1d(7, 0.0, 1.0);
  const SparseOperator L = assemble_1d_laplacian(g);
  const Dense expect = appendix_matrix_1d_n7(g.h);
  CHECK(max_abs_diff_dense(L, expect) == 0.0);  // h = 1/8 keeps every entry dyadic
  for (int i = 0; i < L.size(); ++i) CHECK(L.row(i).size() <= 5);
}

TEST_CASE("1d Laplacian smallest grid and row sums") {
  const Grid1D g = build_grid_1d(1, 0.0, 1.0);
  const SparseOperator L = assemble_1d_laplacian(g);
  CHECK(L.coeff(1, 0) == -4.0);  // -1/h^2 with h = 1/2
  CHECK(L.coeff(1, 1) == 8.0);
  CHECK(L.coeff(1, 2) == -4.0);

  const Grid1D g7 = build_grid_1d(7, 0.0, 1.0);
  const SparseOperator L7 = assemble_1d_laplacian(g7);
  const auto ones = std::vector<double>(9, 1.0);
  const auto prod = L7.apply(ones);
  for (int i = 0; i < 9; ++i) {
    const double expect = (i == 0 || i == 8) ? 1.0 : 0.0;
    CHECK(prod[static_cast<std::size_t>(i)] == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("1d variable assembly reduces bitwise to the Laplacian") {
  const Grid1D g = build_grid_1d(7, 0.0, 1.0);
  const auto unit = constant_coefficients(g, 1.0, 0.0);
  CHECK(bitwise_equal(assemble_1d_variable(g, unit), assemble_1d_laplacian(g)));
}

TEST_CASE("1d variable assembly adds the reaction term to the diagonal") {
  const Grid1D g = build_grid_1d(7, 0.0, 1.0);
  const SparseOperator lap = assemble_1d_laplacian(g);
  const SparseOperator shifted = assemble_1d_variable(g, constant_coefficients(g, 1.0, 10.0));
  for (int i = 1; i <= 7; ++i) {
    CHECK(shifted.coeff(i, i) == doctest::Approx(lap.coeff(i, i) + 10.0).epsilon(1e-15));
    CHECK(shifted.coeff(i, i - 1) == lap.coeff(i, i - 1));
  }
}

TEST_CASE("1d variable assembly rejects bad coefficient samples") {
  const Grid1D g = build_grid_1d(3, 0.0, 1.0);
  CoefficientField1D f = constant_coefficients(g, 1.0, 0.0);
  f.a[2] = 0.0;
  CHECK_THROWS_AS(assemble_1d_variable(g, f), std::invalid_argument);
  f.a[2] = 1.0;
  f.c[1] = -1.0;
  CHECK_THROWS_AS(assemble_1d_variable(g, f), std::invalid_argument);
}

TEST_CASE("1d variable row sums equal the reaction samples") {
  const Grid1D g = build_grid_1d(9, 0.0, 1.0);
  const auto coeff = sample_coefficients(
      g, [](double x) { return 2.0 + std::sin(3.0 * x); }, [](double x) { return 5.0 * x; });
  const SparseOperator L = assemble_1d_variable(g, coeff);
  const auto sums = L.row_sums();
  for (int i = 1; i <= g.n; ++i)
    CHECK(std::abs(sums[static_cast<std::size_t>(i)] - coeff.c_at(i)) <= L.max_abs() * 1e-14);
}

TEST_CASE("2d Laplacian stencils match the tabulated values") {
  const Grid2D g = build_grid_2d(7, 7, 0.0, 1.0, 0.0, 1.0);
  const double s = 1.0 / (g.h * g.h);
  const SparseOperator L = assemble_2d_laplacian(g);

  SUBCASE("cell center five-point row") {
    const int r = g.index(3, 3);
    CHECK(L.coeff(r, r) == doctest::Approx(4.0 * s).epsilon(1e-15));
    CHECK(L.coeff(r, g.index(2, 3)) == doctest::Approx(-s).epsilon(1e-15));
    CHECK(L.coeff(r, g.index(3, 4)) == doctest::Approx(-s).epsilon(1e-15));
    CHECK(L.row(r).size() == 5);
  }
  SUBCASE("knot row: center 7, arms -2 and 1/4 along both axes") {
    const int r = g.index(4, 4);
    CHECK(L.coeff(r, r) == doctest::Approx(7.0 * s).epsilon(1e-15));
    for (int d : {-1, 1}) {
      CHECK(L.coeff(r, g.index(4 + d, 4)) == doctest::Approx(-2.0 * s).epsilon(1e-15));
      CHECK(L.coeff(r, g.index(4, 4 + d)) == doctest::Approx(-2.0 * s).epsilon(1e-15));
      CHECK(L.coeff(r, g.index(4 + 2 * d, 4)) == doctest::Approx(0.25 * s).epsilon(1e-15));
      CHECK(L.coeff(r, g.index(4, 4 + 2 * d)) == doctest::Approx(0.25 * s).epsilon(1e-15));
    }
    CHECK(L.row(r).size() == 9);
  }
  SUBCASE("edge center for an edge parallel to the y-axis: long stencil in x") {
    const int r = g.index(4, 3);  // (even, odd)
    CHECK(L.coeff(r, r) == doctest::Approx(5.5 * s).epsilon(1e-15));
    CHECK(L.coeff(r, g.index(3, 3)) == doctest::Approx(-2.0 * s).epsilon(1e-15));
    CHECK(L.coeff(r, g.index(2, 3)) == doctest::Approx(0.25 * s).epsilon(1e-15));
    CHECK(L.coeff(r, g.index(4, 2)) == doctest::Approx(-s).epsilon(1e-15));
    CHECK(L.coeff(r, g.index(4, 4)) == doctest::Approx(-s).epsilon(1e-15));
    CHECK(L.row(r).size() == 7);
  }
  SUBCASE("edge center for an edge parallel to the x-axis: long stencil in y") {
    const int r = g.index(3, 4);  // (odd, even)
    CHECK(L.coeff(r, r) == doctest::Approx(5.5 * s).epsilon(1e-15));
    CHECK(L.coeff(r, g.index(3, 3)) == doctest::Approx(-2.0 * s).epsilon(1e-15));
    CHECK(L.coeff(r, g.index(3, 2)) == doctest::Approx(0.25 * s).epsilon(1e-15));
    CHECK(L.coeff(r, g.index(2, 4)) == doctest::Approx(-s).epsilon(1e-15));
  }
  SUBCASE("all-ones product is the boundary indicator") {
    const auto prod = L.apply(std::vector<double>(static_cast<std::size_t>(L.size()), 1.0));
    for (int j = 0; j <= 8; ++j)
      for (int i = 0; i <= 8; ++i) {
        const double expect = g.on_boundary(i, j) ? 1.0 : 0.0;
        CHECK(std::abs(prod[static_cast<std::size_t>(g.index(i, j))] - expect) <= 1e-13 * s);
      }
  }
}

TEST_CASE("2d variable assembly reduces bitwise and keeps row budgets") {
  const Grid2D g = build_grid_2d(7, 15, 0.0, 1.0, 0.0, 2.0);
  const auto unit = constant_coefficients(g, 1.0, 0.0);
  const SparseOperator var = assemble_2d_variable(g, unit);
  CHECK(bitwise_equal(var, assemble_2d_laplacian(g)));
  for (int i = 0; i < var.size(); ++i) CHECK(var.row(i).size() <= 9);

  const SparseOperator shifted = assemble_2d_variable(g, constant_coefficients(g, 1.0, 10.0));
  for (int j = 1; j <= g.ny; ++j)
    for (int i = 1; i <= g.nx; ++i) {
      const int r = g.index(i, j);
      CHECK(shifted.coeff(r, r) == doctest::Approx(var.coeff(r, r) + 10.0).epsilon(1e-15));
    }
}

TEST_CASE("2d assembly is symmetric under the collocation mass weights") {
  // L = M^{-1} S with S symmetric, so w_i L_ij = w_j L_ji where w is the
  // diagonal Gauss-Lobatto mass (L itself is not symmetric: the tabulated
  // stencils pair -2 against -1 across edge/center neighbors).
  const Grid2D g = build_grid_2d(5, 5, 0.0, 1.0, 0.0, 1.0);
  const auto w1 = [&](int i) {
    if (i == 0 || i == g.nx + 1) return g.h / 3.0;
    return (i % 2 == 1) ? 4.0 * g.h / 3.0 : 2.0 * g.h / 3.0;
  };
  const auto coeff = testutil::random_field_2d(g, 0.5, 2.0, 1.0, 21);
  const SparseOperator L = assemble_2d_variable(g, coeff);
  for (int rj = 1; rj <= g.ny; ++rj)
    for (int ri = 1; ri <= g.nx; ++ri) {
      const int r = g.index(ri, rj);
      const double wr = w1(ri) * w1(rj);
      for (const auto& e : L.row(r)) {
        const auto cij = g.coords(e.col);
        if (g.on_boundary(cij[0], cij[1])) continue;
        const double wc = w1(cij[0]) * w1(cij[1]);
        CHECK(std::abs(wr * e.value - wc * L.coeff(e.col, r)) <= 1e-13 * L.max_abs() * wr);
      }
    }
}

TEST_CASE("parallel and serial 2d assembly agree bitwise") {
  const Grid2D g = build_grid_2d(15, 15, 0.0, 1.0, 0.0, 1.0);
  const auto coeff = random_field_2d(g, 0.5, 2.0, 3.0, 42);
  AssemblyOptions serial;
  serial.parallel = false;
  CHECK(bitwise_equal(assemble_2d_variable(g, coeff, serial), assemble_2d_variable(g, coeff)));
}

TEST_CASE("boundary row rescaling") {
  SUBCASE("unit diagonal becomes 1/h^2") {
    const Grid1D g = build_grid_1d(1, 0.0, 1.0);
    const SparseOperator scaled = scale_boundary_rows(assemble_1d_laplacian(g));
    CHECK(scaled.coeff(0, 0) == 4.0);
    CHECK(scaled.coeff(2, 2) == 4.0);
    CHECK(scaled.meta()->boundary == BoundaryRows::Scaled);
    CHECK_THROWS_AS(scale_boundary_rows(scaled), std::invalid_argument);
  }
  SUBCASE("solutions are invariant under the rescaling") {
    const Grid2D g = build_grid_2d(5, 5, 0.0, 1.0, 0.0, 1.0);
    const auto coeff = random_field_2d(g, 1.0, 1.0, 2.0, 7);
    const SparseOperator plain = assemble_2d_variable(g, coeff);
    const SparseOperator scaled = scale_boundary_rows(plain);
    const double s = 1.0 / (g.h * g.h);
    std::vector<double> rhs(static_cast<std::size_t>(plain.size()));
    std::mt19937_64 gen(99);
    for (auto& v : rhs) v = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.25;
    std::vector<double> rhs_scaled = rhs;
    for (int j = 0; j <= g.ny + 1; ++j)
      for (int i = 0; i <= g.nx + 1; ++i)
        if (g.on_boundary(i, j)) rhs_scaled[static_cast<std::size_t>(g.index(i, j))] *= s;
    const auto u1 = BandedLU::factor(plain).solve(rhs);
    const auto u2 = BandedLU::factor(scaled).solve(rhs_scaled);
    double umax = 0.0, diff = 0.0;
    for (std::size_t k = 0; k < u1.size(); ++k) {
      umax = std::max(umax, std::abs(u1[k]));
      diff = std::max(diff, std::abs(u1[k] - u2[k]));
    }
    CHECK(diff <= 1e-12 * umax);
  }
}
