#include "monoq2/experiments.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "monoq2/assembly.hpp"
#include "monoq2/coefficient.hpp"
#include "monoq2/linsolve.hpp"
#include "monoq2/mesh_constraints.hpp"

namespace monoq2 {

namespace {

constexpr double kDomainXLo = 0.0, kDomainXHi = 1.0;
constexpr double kDomainYLo = 0.0, kDomainYHi = 2.0;

Grid2D study_grid(MeshShape mesh) {
  return build_grid_2d(2 * mesh.mx - 1, 2 * mesh.my - 1, kDomainXLo, kDomainXHi, kDomainYLo,
                       kDomainYHi);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::string classify_min(double min_value, double threshold) {
  if (min_value < -threshold) return "negative";
  if (min_value > threshold) return "positive";
  return "zero";
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

ResultCell run_cell(const Grid2D& grid, const CoefficientField2D& coeff, MeshShape mesh,
                    double param, std::uint64_t seed, const ConstraintReport& constraint) {
  const double t0 = now_seconds();
  const SparseOperator op = scale_boundary_rows(assemble_2d_variable(grid, coeff));
  const InverseReport inv = inverse_min_entries(op);
  ResultCell cell;
  cell.mesh = mesh;
  cell.param = param;
  cell.seed = seed;
  cell.min_bar = inv.min_value;
  cell.min_interior = inv.interior_min;
  cell.inverse_scale = inv.max_abs;
  cell.min_bar_class = classify_min(inv.min_value, inv.threshold);
  cell.constraint_pass = constraint.pass;
  cell.constraint_id = constraint.id;
  cell.seconds = now_seconds() - t0;
  return cell;
}

}  // namespace

std::vector<MeshShape> default_meshes() {
  return {{2, 4}, {4, 8}, {8, 16}, {16, 32}};
}

std::vector<std::string> ResultTable::csv_header() const {
  return {"mesh", "param", "seed", "min_bar", "min_interior", "min_bar_class",
          "constraint_id", "constraint_pass", "scaled_boundary", "seconds"};
}

std::vector<std::vector<std::string>> ResultTable::csv_rows() const {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(cells.size());
  char buf[64];
  const auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return std::string(buf);
  };
  for (const auto& c : cells) {
    rows.push_back({c.mesh.label(), fmt(c.param), std::to_string(c.seed), fmt(c.min_bar),
                    fmt(c.min_interior), c.min_bar_class, c.constraint_id,
                    c.constraint_pass ? "pass" : "fail", boundary_scaled ? "yes" : "no",
                    fmt(c.seconds)});
  }
  return rows;
}

ResultTable run_smooth_coefficient(std::span<const double> d_values,
                                   std::span<const MeshShape> meshes) {
  ResultTable table;
  table.id = "smooth";
  for (double d : d_values) {
    if (!(d >= 0.0 && d < 1.0))
      throw std::invalid_argument("run_smooth_coefficient: d must lie in [0,1)");
    for (const MeshShape mesh : meshes) {
      const Grid2D grid = study_grid(mesh);
      const auto coeff = sample_coefficients(
          grid,
          [d](double x, double y) { return 1.0 + d * std::cos(M_PI * x) * std::cos(M_PI * y); },
          [](double, double) { return 10.0; });
      const ConstraintReport cons = check_2d_samples(grid, coeff);
      table.cells.push_back(run_cell(grid, coeff, mesh, d, 0, cons));
    }
  }
  return table;
}

ResultTable run_random_coefficient(std::span<const double> d_values,
                                   std::span<const MeshShape> meshes, std::uint64_t seed) {
  ResultTable table;
  table.id = "random";
  table.base_seed = seed;
  int pidx = 0;
  for (double d : d_values) {
    if (!(d > 0.0)) throw std::invalid_argument("run_random_coefficient: d must be positive");
    int midx = 0;
    for (const MeshShape mesh : meshes) {
      const Grid2D grid = study_grid(mesh);
      const std::uint64_t cell_seed =
          splitmix64(seed ^ (static_cast<std::uint64_t>(pidx) << 32) ^
                     static_cast<std::uint64_t>(midx));
      const auto coeff = random_coefficients(grid, d, 1.0, 0.0, cell_seed);
      const ConstraintReport cons =
          check_2d_theorem(grid, coeff, region_bounds_from_samples(grid, coeff), Variant2D::Thm46);
      table.cells.push_back(run_cell(grid, coeff, mesh, d, cell_seed, cons));
      ++midx;
    }
    ++pidx;
  }
  return table;
}

ResultTable run_heat_backward_euler(std::span<const double> ratios,
                                    std::span<const MeshShape> meshes) {
  ResultTable table;
  table.id = "heat";
  for (double ratio : ratios) {
    if (!(ratio > 0.0)) throw std::invalid_argument("run_heat_backward_euler: ratio must be positive");
    for (const MeshShape mesh : meshes) {
      const Grid2D grid = study_grid(mesh);
      const double c = 1.0 / (ratio * grid.h * grid.h);  // c = 1/dt, dt = ratio h^2
      const auto coeff = constant_coefficients(grid, 1.0, c);
      const ConstraintReport cons = check_2d_theorem(
          grid, coeff,
          [](int, int) {
            RegionBounds b;
            b.a_min = b.a_max = 1.0;
            return b;
          },
          Variant2D::Thm47ConstantA);
      table.cells.push_back(run_cell(grid, coeff, mesh, ratio, 0, cons));
    }
  }
  return table;
}

namespace {

SweepPoint sweep_point(const Grid2D& grid, MeshShape, double ratio) {
  const double c = 1.0 / (ratio * grid.h * grid.h);
  const auto coeff = constant_coefficients(grid, 1.0, c);
  const SparseOperator op = scale_boundary_rows(assemble_2d_variable(grid, coeff));
  const InverseReport inv = inverse_min_entries(op);
  SweepPoint p;
  p.ratio = ratio;
  p.min_bar = inv.min_value;
  p.min_interior = inv.interior_min;
  p.scale = inv.max_abs;
  return p;
}

bool is_negative(const SweepPoint& p, double threshold_factor = 1e-12) {
  return p.min_bar < -threshold_factor * p.scale;
}

}  // namespace

SweepResult sweep_dt_ratio(MeshShape mesh, double ratio_lo, double ratio_hi, int num_points) {
  if (!(ratio_lo > 0.0 && ratio_hi > ratio_lo))
    throw std::invalid_argument("sweep_dt_ratio: need 0 < lo < hi");
  if (num_points < 2) throw std::invalid_argument("sweep_dt_ratio: need at least two points");
  const Grid2D grid = study_grid(mesh);
  SweepResult res;
  res.mesh = mesh;
  for (int k = 0; k < num_points; ++k) {
    const double r = ratio_lo + (ratio_hi - ratio_lo) * k / (num_points - 1);
    res.curve.push_back(sweep_point(grid, mesh, r));
  }
  // Bisect the first negative -> nonnegative transition along the curve.
  double lo = 0.0, hi = 0.0;
  for (std::size_t k = 0; k + 1 < res.curve.size(); ++k) {
    if (is_negative(res.curve[k]) && !is_negative(res.curve[k + 1])) {
      lo = res.curve[k].ratio;
      hi = res.curve[k + 1].ratio;
      break;
    }
  }
  if (hi > lo) {
    while (hi - lo > 1e-3) {
      const double mid = 0.5 * (lo + hi);
      if (is_negative(sweep_point(grid, mesh, mid)))
        lo = mid;
      else
        hi = mid;
    }
    res.found_sign_change = true;
    res.sign_change_ratio = 0.5 * (lo + hi);
  }
  return res;
}

ManufacturedCase case_sine_1d() {
  ManufacturedCase mc;
  mc.name = "sine1d";
  mc.dim = 1;
  mc.u = [](double x, double) { return std::sin(M_PI * x); };
  mc.a = [](double, double) { return 1.0; };
  mc.c = [](double, double) { return 0.0; };
  mc.f = [](double x, double) { return M_PI * M_PI * std::sin(M_PI * x); };
  return mc;
}

ManufacturedCase case_sine_2d() {
  ManufacturedCase mc;
  mc.name = "sine2d";
  mc.dim = 2;
  mc.u = [](double x, double y) { return std::sin(M_PI * x) * std::sin(M_PI * y); };
  mc.a = [](double, double) { return 1.0; };
  mc.c = [](double, double) { return 0.0; };
  mc.f = [](double x, double y) { return 2.0 * M_PI * M_PI * std::sin(M_PI * x) * std::sin(M_PI * y); };
  return mc;
}

ManufacturedCase case_quadratic_2d() {
  // u in the Q2 space with a linear diffusion coefficient: every quadrature
  // in the scheme is exact for this data, so the discrete solution must
  // reproduce u to rounding.
  ManufacturedCase mc;
  mc.name = "quadratic";
  mc.dim = 2;
  mc.u = [](double x, double y) { return x * x + y * y; };
  mc.a = [](double x, double y) { return 1.0 + 0.5 * x + 0.25 * y; };
  mc.c = [](double, double) { return 0.0; };
  // f = -div(a grad u) = -(4a + 2x a_x + 2y a_y)
  mc.f = [](double x, double y) {
    const double a = 1.0 + 0.5 * x + 0.25 * y;
    return -(4.0 * a + 2.0 * x * 0.5 + 2.0 * y * 0.25);
  };
  return mc;
}

std::vector<double> solve_manufactured(const ManufacturedCase& mc, int cells_per_axis,
                                       double* h_out) {
  if (mc.dim == 1) {
    const int n = 2 * cells_per_axis - 1;
    const Grid1D grid = build_grid_1d(n, mc.xlo, mc.xhi);
    if (h_out) *h_out = grid.h;
    const auto coeff = sample_coefficients(
        grid, [&](double x) { return mc.a(x, 0.0); }, [&](double x) { return mc.c(x, 0.0); });
    const SparseOperator op = scale_boundary_rows(assemble_1d_variable(grid, coeff));
    std::vector<double> rhs(static_cast<std::size_t>(grid.num_points()));
    const double s = 1.0 / (grid.h * grid.h);
    for (int i = 0; i <= n + 1; ++i) {
      const bool bdry = (i == 0 || i == n + 1);
      rhs[static_cast<std::size_t>(i)] = bdry ? s * mc.u(grid.x(i), 0.0) : mc.f(grid.x(i), 0.0);
    }
    return BandedLU::factor(op).solve(std::move(rhs));
  }
  const int n = 2 * cells_per_axis - 1;
  const Grid2D grid = build_grid_2d(n, n, mc.xlo, mc.xhi, mc.ylo, mc.yhi);
  if (h_out) *h_out = grid.h;
  const auto coeff = sample_coefficients(grid, mc.a, mc.c);
  const SparseOperator op = scale_boundary_rows(assemble_2d_variable(grid, coeff));
  std::vector<double> rhs(static_cast<std::size_t>(grid.num_points()));
  const double s = 1.0 / (grid.h * grid.h);
  for (int j = 0; j <= n + 1; ++j)
    for (int i = 0; i <= n + 1; ++i) {
      const double x = grid.x(i), y = grid.y(j);
      rhs[static_cast<std::size_t>(grid.index(i, j))] =
          grid.on_boundary(i, j) ? s * mc.u(x, y) : mc.f(x, y);
    }
  return BandedLU::factor(op).solve(std::move(rhs));
}

ConvergenceTable convergence_study(const ManufacturedCase& mc,
                                   std::span<const int> cells_per_axis) {
  ConvergenceTable table;
  table.case_name = mc.name;
  double prev_err = 0.0;
  for (std::size_t k = 0; k < cells_per_axis.size(); ++k) {
    const int m = cells_per_axis[k];
    double h = 0.0;
    const auto sol = solve_manufactured(mc, m, &h);
    double err = 0.0;
    if (mc.dim == 1) {
      const Grid1D grid = build_grid_1d(2 * m - 1, mc.xlo, mc.xhi);
      for (int i = 0; i < grid.num_points(); ++i)
        err = std::max(err, std::abs(sol[static_cast<std::size_t>(i)] - mc.u(grid.x(i), 0.0)));
    } else {
      const int n = 2 * m - 1;
      const Grid2D grid = build_grid_2d(n, n, mc.xlo, mc.xhi, mc.ylo, mc.yhi);
      for (int j = 0; j <= n + 1; ++j)
        for (int i = 0; i <= n + 1; ++i)
          err = std::max(err, std::abs(sol[static_cast<std::size_t>(grid.index(i, j))] -
                                       mc.u(grid.x(i), grid.y(j))));
    }
    ConvergenceRow row;
    row.cells_per_axis = m;
    row.h = h;
    row.max_error = err;
    row.observed_order = (k > 0 && err > 0.0) ? std::log2(prev_err / err) : 0.0;
    table.rows.push_back(row);
    prev_err = err;
  }
  return table;
}

}  // namespace monoq2
