#include "doctest.h"

#include <stdexcept>

#include "monoq2/grid.hpp"

using namespace monoq2;

TEST_CASE("1d grid construction") {
  const Grid1D g = build_grid_1d(7, 0.0, 1.0);
  CHECK(g.h == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(g.num_points() == 9);
  CHECK(g.num_cells() == 4);
  CHECK(g.x(0) == 0.0);
  CHECK(g.x(1) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(g.x(8) == doctest::Approx(1.0).epsilon(1e-15));
  for (int i = 0; i <= g.n; ++i)
    CHECK(g.x(i + 1) - g.x(i) == doctest::Approx(g.h).epsilon(1e-14));

  const Grid1D single = build_grid_1d(1, 0.0, 1.0);
  CHECK(single.h == 0.5);
  CHECK(single.num_cells() == 1);

  CHECK_THROWS_AS(build_grid_1d(4, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_grid_1d(-3, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_grid_1d(3, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("1d classification") {
  const Grid1D g = build_grid_1d(7, 0.0, 1.0);
  CHECK(classify_1d(g, 0) == PointClass::Boundary);
  CHECK(classify_1d(g, 8) == PointClass::Boundary);
  CHECK(classify_1d(g, 3) == PointClass::CellCenter);
  CHECK(classify_1d(g, 4) == PointClass::CellEnd);
  CHECK_THROWS_AS(classify_1d(g, 9), std::out_of_range);
  CHECK_THROWS_AS(classify_1d(g, -1), std::out_of_range);
}

TEST_CASE("2d grid construction") {
  const Grid2D g = build_grid_2d(7, 15, 0.0, 1.0, 0.0, 2.0);
  CHECK(g.h == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(g.num_points() == 9 * 17);
  CHECK(g.cells_x() == 4);
  CHECK(g.cells_y() == 8);

  const Grid2D single = build_grid_2d(1, 1, 0.0, 1.0, 0.0, 1.0);
  CHECK(single.h == 0.5);
  CHECK(single.num_points() == 9);

  CHECK_THROWS_AS(build_grid_2d(7, 7, 0.0, 1.0, 0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(build_grid_2d(6, 15, 0.0, 1.0, 0.0, 2.0), std::invalid_argument);
}

TEST_CASE("2d classification and index maps") {
  const Grid2D g = build_grid_2d(7, 7, 0.0, 1.0, 0.0, 1.0);
  CHECK(classify_2d(g, 1, 1) == PointClass::CellCenter);
  CHECK(classify_2d(g, 2, 2) == PointClass::Knot);
  // (odd, even): cell end in y, so the edge through it runs parallel to x.
  CHECK(classify_2d(g, 1, 2) == PointClass::EdgeCenterY);
  CHECK(classify_2d(g, 2, 1) == PointClass::EdgeCenterX);
  CHECK(classify_2d(g, 0, 3) == PointClass::Boundary);
  CHECK_THROWS_AS(classify_2d(g, 9, 1), std::out_of_range);

  const int idx = g.index(3, 5);
  const auto ij = g.coords(idx);
  CHECK(ij[0] == 3);
  CHECK(ij[1] == 5);
}

namespace {

// Independent classification: scan element boundary coordinates instead of
// using parity.
bool at_cell_end(int i, int m) {
  for (int k = 0; k <= m; ++k)
    if (i == 2 * k) return true;
  return false;
}

}  // namespace

TEST_CASE("2d classes partition the interior and match element counts") {
  for (int nx = 1; nx <= 9; nx += 2) {
    for (int ny = 1; ny <= 9; ny += 2) {
      const Grid2D g = build_grid_2d(nx, ny, 0.0, 1.0, 0.0, (ny + 1.0) / (nx + 1.0));
      const int mx = g.cells_x(), my = g.cells_y();
      int centers = 0, knots = 0, ex = 0, ey = 0;
      for (int j = 1; j <= ny; ++j) {
        for (int i = 1; i <= nx; ++i) {
          const PointClass cls = classify_2d(g, i, j);
          const bool end_x = at_cell_end(i, mx);
          const bool end_y = at_cell_end(j, my);
          PointClass expect;
          if (!end_x && !end_y)
            expect = PointClass::CellCenter;
          else if (end_x && end_y)
            expect = PointClass::Knot;
          else
            expect = end_x ? PointClass::EdgeCenterX : PointClass::EdgeCenterY;
          CHECK(cls == expect);
          switch (cls) {
            case PointClass::CellCenter: ++centers; break;
            case PointClass::Knot: ++knots; break;
            case PointClass::EdgeCenterX: ++ex; break;
            case PointClass::EdgeCenterY: ++ey; break;
            default: FAIL("interior point classified as boundary");
          }
        }
      }
      CHECK(centers == mx * my);
      CHECK(knots == (mx - 1) * (my - 1));
      CHECK(ex == (mx - 1) * my);
      CHECK(ey == mx * (my - 1));
      CHECK(centers + knots + ex + ey == nx * ny);
    }
  }
}
