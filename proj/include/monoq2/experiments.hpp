#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "monoq2/grid.hpp"
#include "monoq2/matrix_analysis.hpp"

namespace monoq2 {

/// Finite element mesh shape, counted in cells per axis (the "2x4"
/// convention); interior point counts are n = 2m - 1.
struct MeshShape {
  int mx = 0, my = 0;

  std::string label() const { return std::to_string(mx) + "x" + std::to_string(my); }
};

/// One (mesh, parameter) cell of a study. Minima refer to the inverse of
/// the boundary-rescaled full operator and of its interior block.
struct ResultCell {
  MeshShape mesh;
  double param = 0.0;
  std::uint64_t seed = 0;
  double min_bar = 0.0;
  double min_interior = 0.0;
  double inverse_scale = 0.0;   ///< max |inverse entry|
  std::string min_bar_class;    ///< negative | zero | positive
  bool constraint_pass = false;
  std::string constraint_id;
  double seconds = 0.0;
};

struct ResultTable {
  std::string id;
  std::uint64_t base_seed = 0;
  bool boundary_scaled = true;
  std::vector<ResultCell> cells;

  std::vector<std::string> csv_header() const;
  std::vector<std::vector<std::string>> csv_rows() const;
};

/// Default study domain [0,1] x [0,2] and mesh ladder 2x4 .. 16x32.
std::vector<MeshShape> default_meshes();

/// a = 1 + d cos(pi x) cos(pi y), c = 10 on [0,1] x [0,2]; per cell runs
/// the rescaled inverse scan and the exact sample constraint check.
ResultTable run_smooth_coefficient(std::span<const double> d_values,
                                   std::span<const MeshShape> meshes);

/// a sampled i.i.d. uniform(d, d+1), c = 0; the certificate column is the
/// two-cell-union ratio bound with sample-exact region bounds.
ResultTable run_random_coefficient(std::span<const double> d_values,
                                   std::span<const MeshShape> meshes, std::uint64_t seed);

/// Backward Euler for the heat equation: a = 1, c = 1/dt with
/// dt = ratio * h^2; the certificate column is the constant-coefficient
/// threshold h^2 c < 3a/2.
ResultTable run_heat_backward_euler(std::span<const double> ratios,
                                    std::span<const MeshShape> meshes);

struct SweepPoint {
  double ratio = 0.0;
  double min_bar = 0.0;
  double min_interior = 0.0;
  double scale = 0.0;
};

struct SweepResult {
  MeshShape mesh;
  std::vector<SweepPoint> curve;
  bool found_sign_change = false;
  double sign_change_ratio = 0.0;  ///< bisected to 1e-3
};

/// Min-entry curves vs dt/h^2 on one mesh, plus the empirical boundary
/// between negative minima and numerical zero.
SweepResult sweep_dt_ratio(MeshShape mesh, double ratio_lo, double ratio_hi, int num_points);

/// Manufactured problem for the convergence study. The forcing f and
/// boundary data g = u are derived analytically by the caller.
struct ManufacturedCase {
  std::string name;
  int dim = 2;
  double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  std::function<double(double, double)> u;
  std::function<double(double, double)> a;
  std::function<double(double, double)> c;
  std::function<double(double, double)> f;
};

ManufacturedCase case_sine_1d();
ManufacturedCase case_sine_2d();
ManufacturedCase case_quadratic_2d();

struct ConvergenceRow {
  int cells_per_axis = 0;
  double h = 0.0;
  double max_error = 0.0;
  double observed_order = 0.0;  ///< 0 for the first row
};

struct ConvergenceTable {
  std::string case_name;
  std::vector<ConvergenceRow> rows;
};

/// Solves on successive meshes and reports max-norm errors over all grid
/// points with observed orders log2(e_h / e_{h/2}).
ConvergenceTable convergence_study(const ManufacturedCase& mc, std::span<const int> cells_per_axis);

/// Solves the assembled system for given interior forcing and boundary
/// data. Exposed for tests and the CLI.
std::vector<double> solve_manufactured(const ManufacturedCase& mc, int cells_per_axis,
                                       double* h_out);

}  // namespace monoq2
