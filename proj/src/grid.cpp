#include "monoq2/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace monoq2 {

const char* to_string(PointClass c) {
  switch (c) {
    case PointClass::Boundary: return "boundary";
    case PointClass::CellCenter: return "cell-center";
    case PointClass::CellEnd: return "cell-end";
    case PointClass::EdgeCenterX: return "edge-center-x";
    case PointClass::EdgeCenterY: return "edge-center-y";
    case PointClass::Knot: return "knot";
  }
  return "?";
}

Grid1D build_grid_1d(int n, double lo, double hi) {
  if (n < 1) throw std::invalid_argument("build_grid_1d: n must be positive, got " + std::to_string(n));
  if (n % 2 == 0) throw std::invalid_argument("build_grid_1d: n must be odd, got " + std::to_string(n));
  if (!(hi > lo)) throw std::invalid_argument("build_grid_1d: degenerate interval");
  Grid1D g;
  g.n = n;
  g.lo = lo;
  g.hi = hi;
  g.h = (hi - lo) / (n + 1);
  g.points.resize(static_cast<std::size_t>(n) + 2);
  for (int i = 0; i <= n + 1; ++i) g.points[static_cast<std::size_t>(i)] = lo + i * g.h;
  return g;
}

PointClass classify_1d(const Grid1D& grid, int i) {
  if (i < 0 || i > grid.n + 1)
    throw std::out_of_range("classify_1d: index " + std::to_string(i) + " out of range");
  if (i == 0 || i == grid.n + 1) return PointClass::Boundary;
  return (i % 2 == 1) ? PointClass::CellCenter : PointClass::CellEnd;
}

Grid2D build_grid_2d(int nx, int ny, double xlo, double xhi, double ylo, double yhi) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("build_grid_2d: interior counts must be positive");
  if (nx % 2 == 0 || ny % 2 == 0)
    throw std::invalid_argument("build_grid_2d: nx and ny must be odd, got " + std::to_string(nx) +
                                "," + std::to_string(ny));
  if (!(xhi > xlo) || !(yhi > ylo)) throw std::invalid_argument("build_grid_2d: degenerate rectangle");
  const double hx = (xhi - xlo) / (nx + 1);
  const double hy = (yhi - ylo) / (ny + 1);
  if (std::abs(hy - hx) > 1e-12 * hx)
    throw std::invalid_argument("build_grid_2d: mesh width mismatch, hx=" + std::to_string(hx) +
                                " hy=" + std::to_string(hy) + " (a single common h is required)");
  Grid2D g;
  g.nx = nx;
  g.ny = ny;
  g.h = hx;
  g.xlo = xlo;
  g.xhi = xhi;
  g.ylo = ylo;
  g.yhi = yhi;
  return g;
}

PointClass classify_2d(const Grid2D& grid, int i, int j) {
  if (i < 0 || i > grid.nx + 1 || j < 0 || j > grid.ny + 1)
    throw std::out_of_range("classify_2d: index (" + std::to_string(i) + "," + std::to_string(j) +
                            ") out of range");
  if (grid.on_boundary(i, j)) return PointClass::Boundary;
  const bool ox = (i % 2 == 1);
  const bool oy = (j % 2 == 1);
  if (ox && oy) return PointClass::CellCenter;
  if (!ox && !oy) return PointClass::Knot;
  // Odd i, even j: cell end in y, so the long stencil acts along y and the
  // edge through the point is parallel to the x-axis.
  return ox ? PointClass::EdgeCenterY : PointClass::EdgeCenterX;
}

}  // namespace monoq2
