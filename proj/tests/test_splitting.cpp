#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "monoq2/assembly.hpp"

using namespace monoq2;
using namespace testutil;

namespace {

void check_splitting_shape(const SparseOperator& op, const Splitting& sp) {
  // signs and zero diagonals
  for (int i = 0; i < op.size(); ++i) {
    for (const auto& e : sp.a_plus.row(i)) {
      CHECK(e.col != i);
      CHECK(e.value > 0.0);
    }
    for (const auto& e : sp.a_z.row(i)) {
      CHECK(e.col != i);
      CHECK(e.value < 0.0);
    }
    for (const auto& e : sp.a_s.row(i)) {
      CHECK(e.col != i);
      CHECK(e.value < 0.0);
    }
    CHECK(sp.a_d.row(i).size() == 1);
  }
  // reconstruction
  const SparseOperator sum = add(add(sp.a_d, sp.a_plus), add(sp.a_z, sp.a_s));
  CHECK(rel_diff(sum, op) <= 1e-14);
}

}  // namespace

TEST_CASE("1d Laplacian splits into symmetric halves") {
  const Grid1D g = build_grid_1d(7, 0.0, 1.0);
  const SparseOperator L = assemble_1d_laplacian(g);
  const Splitting sp = split_operator(L, 0.25);
  check_splitting_shape(L, sp);
  for (int i = 1; i <= g.n; ++i)
    for (const auto& e : L.row(i)) {
      if (e.col == i) continue;
      if (e.value < 0.0) {
        CHECK(sp.a_z.coeff(i, e.col) == 0.5 * e.value);
        CHECK(sp.a_s.coeff(i, e.col) == 0.5 * e.value);
      } else {
        CHECK(sp.a_plus.coeff(i, e.col) == e.value);
      }
    }
}

TEST_CASE("1d variable splitting follows the displayed formulas") {
  const Grid1D g = build_grid_1d(7, 0.0, 1.0);
  const auto coeff = random_field_1d(g, 0.4, 2.0, 1.5, 11);
  const SparseOperator L = assemble_1d_variable(g, coeff);
  const double eps = 0.3;
  const Splitting sp = split_operator(L, eps);
  check_splitting_shape(L, sp);
  const double h2 = g.h * g.h;

  SUBCASE("cell-center rows scale by epsilon") {
    for (int i = 1; i <= g.n; i += 2) {
      const double left = -(3.0 * coeff.a_at(i - 1) + coeff.a_at(i + 1)) / (4.0 * h2);
      CHECK(sp.a_z.coeff(i, i - 1) == doctest::Approx(eps * left).epsilon(1e-15));
      CHECK(sp.a_s.coeff(i, i - 1) == doctest::Approx((1.0 - eps) * left).epsilon(1e-15));
    }
  }
  SUBCASE("cell-end rows put the positive-part deduction on first neighbors") {
    for (int i = 2; i <= g.n - 1; i += 2) {
      const double tl = 3.0 * coeff.a_at(i - 2) - 4.0 * coeff.a_at(i - 1) + 3.0 * coeff.a_at(i);
      const double pos = std::max(tl, 0.0) / (8.0 * h2);
      CHECK(sp.a_s.coeff(i, i - 1) == doctest::Approx(-pos).epsilon(1e-14));
      CHECK(sp.a_plus.coeff(i, i - 2) == doctest::Approx(pos).epsilon(1e-14));
      CHECK(sp.a_z.coeff(i, i - 1) ==
            doctest::Approx(L.coeff(i, i - 1) + pos).epsilon(1e-14));
      // second neighbor: negative part stays in A^z
      CHECK(sp.a_z.coeff(i, i - 2) == doctest::Approx(std::min(L.coeff(i, i - 2), 0.0)).epsilon(1e-14));
    }
  }
  SUBCASE("A^z covers the pattern of the negative part") {
    const SparseOperator a_minus = add(sp.a_z, sp.a_s);
    CHECK(pattern_superset(sp.a_z, a_minus));
  }
}

TEST_CASE("2d variable splitting reconstructs and keeps signs") {
  const Grid2D g = build_grid_2d(7, 7, 0.0, 1.0, 0.0, 1.0);
  for (std::uint64_t seed : {3u, 17u, 99u}) {
    const auto coeff = random_field_2d(g, 0.3, 2.0, (seed % 2) * 5.0, seed);
    const SparseOperator L = assemble_2d_variable(g, coeff);
    const Splitting sp = split_operator(L, 0.4);
    check_splitting_shape(L, sp);
  }
}

TEST_CASE("2d Laplacian splitting matches the constant-coefficient displays") {
  const Grid2D g = build_grid_2d(5, 5, 0.0, 1.0, 0.0, 1.0);
  const SparseOperator L = assemble_2d_laplacian(g);
  const double s = 1.0 / (g.h * g.h);
  const Splitting sp = split_operator(L, 0.5);
  check_splitting_shape(L, sp);
  // knot: (3a-4a+3a)^+ = 2a so the deduction on first neighbors is 1/(4h^2)
  const int knot = g.index(2, 2);
  CHECK(sp.a_s.coeff(knot, g.index(1, 2)) == doctest::Approx(-0.25 * s).epsilon(1e-15));
  CHECK(sp.a_z.coeff(knot, g.index(1, 2)) == doctest::Approx(-1.75 * s).epsilon(1e-15));
  CHECK(sp.a_z.coeff(knot, g.index(2, 1)) == doctest::Approx(-1.75 * s).epsilon(1e-15));
  CHECK(sp.a_plus.coeff(knot, g.index(4, 2)) == doctest::Approx(0.25 * s).epsilon(1e-15));
}

TEST_CASE("splitting input validation") {
  const Grid1D g = build_grid_1d(3, 0.0, 1.0);
  const SparseOperator L = assemble_1d_laplacian(g);
  CHECK_THROWS_AS(split_operator(L, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(split_operator(L, 1.0), std::invalid_argument);
  SparseOperator bare = L;
  bare.set_meta(std::nullopt);
  CHECK_THROWS_AS(split_operator(bare, 0.5), std::invalid_argument);
}
