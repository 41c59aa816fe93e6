#pragma once

#include <array>
#include <vector>

namespace monoq2 {

/// Roles a grid point plays in the Q2 lattice.
///
/// Interior points split into three classes by index parity. In 2D the
/// suffix of EdgeCenterX / EdgeCenterY names the axis in which the point
/// sits at a cell end, i.e. the axis the five-point one-dimensional
/// stencil acts along; the edge through the point is parallel to the
/// *other* axis.
enum class PointClass {
  Boundary,
  CellCenter,
  CellEnd,      ///< 1D only: even interior index
  EdgeCenterX,  ///< 2D (even i, odd j): center of an edge parallel to the y-axis
  EdgeCenterY,  ///< 2D (odd i, even j): center of an edge parallel to the x-axis
  Knot,         ///< 2D (even i, even j) interior
};

const char* to_string(PointClass c);

/// Uniform 1D grid on [lo, hi] with n interior points, n odd.
///
/// Points are x_i = lo + i*h for i = 0..n+1 with h = (hi-lo)/(n+1).
/// The finite element cells are [x_{2k}, x_{2k+2}], k = 0..(n+1)/2 - 1.
struct Grid1D {
  int n = 0;
  double h = 0.0;
  double lo = 0.0, hi = 0.0;
  std::vector<double> points;

  int num_points() const { return n + 2; }
  int num_cells() const { return (n + 1) / 2; }
  double x(int i) const { return points[static_cast<std::size_t>(i)]; }
};

Grid1D build_grid_1d(int n, double lo, double hi);

PointClass classify_1d(const Grid1D& grid, int i);

/// Uniform tensor-product grid on [xlo,xhi] x [ylo,yhi] with odd interior
/// counts nx, ny and one mesh width h shared by both axes.
struct Grid2D {
  int nx = 0, ny = 0;
  double h = 0.0;
  double xlo = 0.0, xhi = 0.0, ylo = 0.0, yhi = 0.0;

  int points_x() const { return nx + 2; }
  int points_y() const { return ny + 2; }
  int num_points() const { return points_x() * points_y(); }
  int cells_x() const { return (nx + 1) / 2; }
  int cells_y() const { return (ny + 1) / 2; }
  double x(int i) const { return xlo + i * h; }
  double y(int j) const { return ylo + j * h; }

  /// Row-major linearization (j outer, i inner), boundary points included.
  int index(int i, int j) const { return j * points_x() + i; }
  std::array<int, 2> coords(int idx) const {
    return {idx % points_x(), idx / points_x()};
  }
  bool on_boundary(int i, int j) const {
    return i == 0 || i == nx + 1 || j == 0 || j == ny + 1;
  }
};

Grid2D build_grid_2d(int nx, int ny, double xlo, double xhi, double ylo, double yhi);

PointClass classify_2d(const Grid2D& grid, int i, int j);

}  // namespace monoq2
