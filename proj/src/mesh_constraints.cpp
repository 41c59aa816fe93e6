#include "monoq2/mesh_constraints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace monoq2 {

namespace {

constexpr std::size_t kMaxFailures = 64;

// Records one strict inequality lhs > rhs into the report; margin is
// (lhs - rhs)/rhs (rhs > 0 whenever a guard fired).
void record_strict(ConstraintReport& rep, int i, int j, const std::string& which, double lhs,
                   double rhs) {
  const double margin = (rhs != 0.0) ? (lhs - rhs) / std::abs(rhs) : lhs;
  if (!rep.worst_margin || margin < *rep.worst_margin) rep.worst_margin = margin;
  if (!(lhs > rhs)) rep.record(i, j, which, margin);
}

double lambda_grid_point(double lo, int k, int count) {
  return lo + (1.0 - lo) * (k + 0.5) / count;
}

}  // namespace

void ConstraintReport::record(int i_, int j_, const std::string& which, double margin) {
  pass = false;
  if (failures.size() < kMaxFailures) failures.push_back({i_, j_, which, margin});
}

ConstraintReport check_1d_samples(const Grid1D& grid, const CoefficientField1D& coeff) {
  validate(grid, coeff);
  ConstraintReport rep;
  rep.id = "1d-cell-4.4";
  const double h2 = grid.h * grid.h;
  for (int i = 1; i <= grid.n; i += 2) {
    ++rep.points_checked;
    const double am = coeff.a_at(i - 1), a0 = coeff.a_at(i), ap = coeff.a_at(i + 1);
    const double guard = 3.0 * am - 4.0 * a0 + 3.0 * ap;
    if (guard <= 0.0) continue;  // holds trivially
    const double rhs = 4.0 * (am + ap + h2 * coeff.c_at(i)) * guard;
    // Arm through this center owned by the cell end on the right (i+1):
    // coefficient of u_{i-1} there.
    if (i + 1 <= grid.n)
      record_strict(rep, i, 0, "4.4", (3.0 * am + ap) * (am + 4.0 * a0 + 9.0 * ap), rhs);
    // Mirrored arm owned by the cell end on the left (i-1).
    if (i - 1 >= 1)
      record_strict(rep, i, 0, "4.4-mirror", (am + 3.0 * ap) * (9.0 * am + 4.0 * a0 + ap), rhs);
  }
  return rep;
}

ConstraintReport check_2d_samples(const Grid2D& grid, const CoefficientField2D& coeff) {
  validate(grid, coeff);
  ConstraintReport rep;
  rep.id = "2d-samples";
  const double h2 = grid.h * grid.h;
  const int nx = grid.nx, ny = grid.ny;
  const auto a = [&](int i, int j) { return coeff.a_at(i, j); };

  for (int j = 1; j <= ny; ++j) {
    for (int i = 1; i <= nx; ++i) {
      const PointClass cls = classify_2d(grid, i, j);
      if (cls == PointClass::CellCenter) {
        ++rep.points_checked;
        const double denom =
            4.0 * (a(i - 1, j) + a(i + 1, j) + a(i, j - 1) + a(i, j + 1) + h2 * coeff.c_at(i, j));
        {  // x-direction, Eq. (4.8a), both orientations
          const double am = a(i - 1, j), a0 = a(i, j), ap = a(i + 1, j);
          const double guard = 3.0 * am - 4.0 * a0 + 3.0 * ap;
          if (guard > 0.0) {
            const double rhs = denom * guard;
            if (i + 1 <= nx)
              record_strict(rep, i, j, "4.8a", (am + 4.0 * a0 + 9.0 * ap) * (3.0 * am + ap), rhs);
            if (i - 1 >= 1)
              record_strict(rep, i, j, "4.8a-mirror", (9.0 * am + 4.0 * a0 + ap) * (am + 3.0 * ap), rhs);
          }
        }
        {  // y-direction, Eq. (4.8b)
          const double am = a(i, j - 1), a0 = a(i, j), ap = a(i, j + 1);
          const double guard = 3.0 * am - 4.0 * a0 + 3.0 * ap;
          if (guard > 0.0) {
            const double rhs = denom * guard;
            if (j + 1 <= ny)
              record_strict(rep, i, j, "4.8b", (am + 4.0 * a0 + 9.0 * ap) * (3.0 * am + ap), rhs);
            if (j - 1 >= 1)
              record_strict(rep, i, j, "4.8b-mirror", (9.0 * am + 4.0 * a0 + ap) * (am + 3.0 * ap), rhs);
          }
        }
      } else if (cls == PointClass::EdgeCenterY) {
        // Edge parallel to the x-axis: x-direction arms of the adjacent
        // knots pass through here, Eq. (4.9a).
        ++rep.points_checked;
        const double am = a(i - 1, j), a0 = a(i, j), ap = a(i + 1, j);
        const double guard = 3.0 * am - 4.0 * a0 + 3.0 * ap;
        if (guard > 0.0) {
          const double denom = (a(i, j - 2) + 4.0 * a(i, j - 1) + 18.0 * a0 + 4.0 * a(i, j + 1) +
                                a(i, j + 2)) +
                               8.0 * (am + ap) + 8.0 * h2 * coeff.c_at(i, j);
          const double rhs = denom * guard;
          if (i + 1 <= nx)
            record_strict(rep, i, j, "4.9a", 2.0 * (am + 4.0 * a0 + 9.0 * ap) * (3.0 * am + ap), rhs);
          if (i - 1 >= 1)
            record_strict(rep, i, j, "4.9a-mirror", 2.0 * (9.0 * am + 4.0 * a0 + ap) * (am + 3.0 * ap),
                          rhs);
        }
      } else if (cls == PointClass::EdgeCenterX) {
        // Edge parallel to the y-axis: y-direction arms of the adjacent
        // knots, Eq. (4.9b).
        ++rep.points_checked;
        const double am = a(i, j - 1), a0 = a(i, j), ap = a(i, j + 1);
        const double guard = 3.0 * am - 4.0 * a0 + 3.0 * ap;
        if (guard > 0.0) {
          const double denom = (a(i - 2, j) + 4.0 * a(i - 1, j) + 18.0 * a0 + 4.0 * a(i + 1, j) +
                                a(i + 2, j)) +
                               8.0 * (am + ap) + 8.0 * h2 * coeff.c_at(i, j);
          const double rhs = denom * guard;
          if (j + 1 <= ny)
            record_strict(rep, i, j, "4.9b", 2.0 * (am + 4.0 * a0 + 9.0 * ap) * (3.0 * am + ap), rhs);
          if (j - 1 >= 1)
            record_strict(rep, i, j, "4.9b-mirror", 2.0 * (9.0 * am + 4.0 * a0 + ap) * (am + 3.0 * ap),
                          rhs);
        }
      }
    }
  }
  return rep;
}

namespace {

const char* variant_id(Variant1D v) {
  switch (v) {
    case Variant1D::Thm43Lambda: return "1d-thm4.3-lambda";
    case Variant1D::Thm43Combined: return "1d-thm4.3-combined";
    case Variant1D::Thm43GradientOnly: return "1d-thm4.3-gradient";
    case Variant1D::Thm43ConstantA: return "1d-thm4.3-const-a";
    case Variant1D::Thm44: return "1d-thm4.4-4.6a";
    case Variant1D::Thm44Concave: return "1d-thm4.4-concave";
  }
  return "?";
}

const char* variant_id(Variant2D v) {
  switch (v) {
    case Variant2D::Thm46: return "2d-thm4.6";
    case Variant2D::Thm47Lambda: return "2d-thm4.7-lambda";
    case Variant2D::Thm47Combined: return "2d-thm4.7-combined";
    case Variant2D::Thm47GradientOnly: return "2d-thm4.7-gradient";
    case Variant2D::Thm47ConstantA: return "2d-thm4.7-const-a";
  }
  return "?";
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Best margin over a lambda scan of a pair of strict constraints
// c_bound(lambda) > h2c and g_bound(lambda) > hg; records against the
// worst (largest feasible) slack found.
void record_lambda_pair(ConstraintReport& rep, int i, int j, const std::string& which,
                        double lambda_lo, double h2c, double hg,
                        const std::function<double(double)>& c_bound,
                        const std::function<double(double)>& g_bound) {
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100; ++k) {
    const double lam = lambda_grid_point(lambda_lo, k, 100);
    const double cb = c_bound(lam);
    const double gb = g_bound(lam);
    const double m1 = (cb - h2c) / std::abs(cb);
    const double m2 = (gb - hg) / std::abs(gb);
    best = std::max(best, std::min(m1, m2));
  }
  if (!rep.worst_margin || best < *rep.worst_margin) rep.worst_margin = best;
  if (!(best > 0.0)) rep.record(i, j, which, best);
}

}  // namespace

ConstraintReport check_1d_theorem(const Grid1D& grid, const CoefficientField1D& coeff,
                                  std::span<const CellBounds> per_cell, Variant1D variant) {
  validate(grid, coeff);
  require(static_cast<int>(per_cell.size()) == grid.num_cells(),
          "check_1d_theorem: need bounds for every finite element cell");
  ConstraintReport rep;
  rep.id = variant_id(variant);
  const double h = grid.h;
  const double h2 = h * h;
  const double sqrt39 = std::sqrt(39.0);

  for (int k = 0; k < grid.num_cells(); ++k) {
    const int center = 2 * k + 1;
    const CellBounds& b = per_cell[static_cast<std::size_t>(k)];
    require(b.a_min > 0.0 && b.a_max >= b.a_min, "check_1d_theorem: invalid a bounds");
    const double ci = coeff.c_at(center);
    const double sample_min = std::min({coeff.a_at(center - 1), coeff.a_at(center), coeff.a_at(center + 1)});
    ++rep.points_checked;
    switch (variant) {
      case Variant1D::Thm43Lambda: {
        require(b.has_da, "check_1d_theorem: variant needs max|a'| bounds");
        record_lambda_pair(
            rep, center, 0, "thm4.3-lambda", 3.0 / 13.0, h2 * ci, h * b.da_max / b.a_min,
            [&](double lam) {
              return 13.0 * (1.0 - lam) * b.a_min * b.a_min / (6.0 * b.a_max - 4.0 * b.a_min);
            },
            [&](double lam) { return (std::sqrt(39.0 * lam) - 3.0) / 6.0; });
        break;
      }
      case Variant1D::Thm43Combined: {
        require(b.has_da, "check_1d_theorem: variant needs max|a'| bounds");
        const double lhs = 2.0 * h * b.da_max +
                           h2 * ci * (1.0 - (2.0 / 3.0) * (b.a_min / b.a_max));
        const double rhs = (5.0 / 3.0) * b.a_min * b.a_min / b.a_max;
        record_strict(rep, center, 0, "thm4.3-combined", rhs, lhs);
        break;
      }
      case Variant1D::Thm43GradientOnly: {
        require(b.has_da, "check_1d_theorem: variant needs max|a'| bounds");
        require(ci == 0.0, "check_1d_theorem: gradient-only variant requires c == 0");
        record_strict(rep, center, 0, "thm4.3-gradient", (sqrt39 - 3.0) / 6.0,
                      h * b.da_max / b.a_min);
        break;
      }
      case Variant1D::Thm43ConstantA: {
        require(b.a_max - b.a_min <= 1e-14 * b.a_max,
                "check_1d_theorem: constant-a variant requires constant a on the cell");
        record_strict(rep, center, 0, "thm4.3-const-a", 5.0 * b.a_min, h2 * ci);
        break;
      }
      case Variant1D::Thm44: {
        require(b.has_d2a, "check_1d_theorem: variant needs max a'' bounds");
        const double lhs = h2 * (1.5 * ci + b.d2a_max);
        record_strict(rep, center, 0, "thm4.4-4.6a", (74.0 / 45.0) * sample_min, lhs);
        break;
      }
      case Variant1D::Thm44Concave: {
        record_strict(rep, center, 0, "thm4.4-concave", 3.0 * sample_min, h2 * ci);
        break;
      }
    }
  }
  return rep;
}

ConstraintReport check_2d_theorem(const Grid2D& grid, const CoefficientField2D& coeff,
                                  const RegionBoundsProvider& bounds, Variant2D variant) {
  validate(grid, coeff);
  ConstraintReport rep;
  rep.id = variant_id(variant);
  const double h = grid.h;
  const double h2 = h * h;
  const double sqrt122 = std::sqrt(122.0);
  const double seven_sqrt2 = 7.0 * std::sqrt(2.0);

  for (int j = 1; j <= grid.ny; ++j) {
    for (int i = 1; i <= grid.nx; ++i) {
      const PointClass cls = classify_2d(grid, i, j);
      if (cls != PointClass::EdgeCenterX && cls != PointClass::EdgeCenterY) continue;
      const RegionBounds b = bounds(i, j);
      require(b.a_min > 0.0 && b.a_max >= b.a_min, "check_2d_theorem: invalid a bounds");
      const double cij = coeff.c_at(i, j);
      ++rep.points_checked;
      switch (variant) {
        case Variant2D::Thm46: {
          const double lhs = 61.0 * b.a_min * b.a_min;
          const double rhs = 49.0 * b.a_max * b.a_max +
                             8.0 * (3.0 * b.a_max - 2.0 * b.a_min) * h2 * cij;
          record_strict(rep, i, j, "thm4.6", lhs, rhs);
          break;
        }
        case Variant2D::Thm47Lambda: {
          require(b.has_grad, "check_2d_theorem: variant needs max|grad a| bounds");
          record_lambda_pair(
              rep, i, j, "thm4.7-lambda", 49.0 / 61.0, h2 * cij, h * b.grad_max / b.a_min,
              [&](double lam) {
                return 61.0 * (1.0 - lam) * b.a_min * b.a_min /
                       (8.0 * (3.0 * b.a_max - 2.0 * b.a_min));
              },
              [&](double lam) { return (std::sqrt(122.0 * lam) - seven_sqrt2) / 28.0; });
          break;
        }
        case Variant2D::Thm47Combined: {
          require(b.has_grad, "check_2d_theorem: variant needs max|grad a| bounds");
          const double lhs = (49.0 * std::sqrt(2.0) / 3.0) * h * b.grad_max +
                             2.0 * h2 * cij * (1.0 - (2.0 / 3.0) * (b.a_min / b.a_max));
          const double rhs = b.a_min * b.a_min / b.a_max;
          record_strict(rep, i, j, "thm4.7-combined", rhs, lhs);
          break;
        }
        case Variant2D::Thm47GradientOnly: {
          require(b.has_grad, "check_2d_theorem: variant needs max|grad a| bounds");
          require(cij == 0.0, "check_2d_theorem: gradient-only variant requires c == 0");
          record_strict(rep, i, j, "thm4.7-gradient", (sqrt122 - seven_sqrt2) / 28.0,
                        h * b.grad_max / b.a_min);
          break;
        }
        case Variant2D::Thm47ConstantA: {
          require(b.a_max - b.a_min <= 1e-14 * b.a_max,
                  "check_2d_theorem: constant-a variant requires constant a on the region");
          // Written as 2 h^2 c < 3 a so the threshold case is exact.
          record_strict(rep, i, j, "thm4.7-const-a", 3.0 * b.a_min, 2.0 * h2 * cij);
          break;
        }
      }
    }
  }
  return rep;
}

RegionBoundsProvider region_bounds_from_samples(const Grid2D& grid,
                                                const CoefficientField2D& coeff) {
  return [grid, coeff](int i, int j) -> RegionBounds {
    const PointClass cls = classify_2d(grid, i, j);
    int ilo, ihi, jlo, jhi;
    if (cls == PointClass::EdgeCenterY) {  // edge parallel to x-axis
      ilo = i - 1;
      ihi = i + 1;
      jlo = j - 2;
      jhi = j + 2;
    } else if (cls == PointClass::EdgeCenterX) {  // edge parallel to y-axis
      ilo = i - 2;
      ihi = i + 2;
      jlo = j - 1;
      jhi = j + 1;
    } else {
      throw std::invalid_argument("region_bounds_from_samples: (i,j) is not an edge center");
    }
    RegionBounds b;
    b.a_min = std::numeric_limits<double>::infinity();
    b.a_max = -std::numeric_limits<double>::infinity();
    for (int jj = jlo; jj <= jhi; ++jj)
      for (int ii = ilo; ii <= ihi; ++ii) {
        const double v = coeff.a_at(ii, jj);
        b.a_min = std::min(b.a_min, v);
        b.a_max = std::max(b.a_max, v);
      }
    return b;
  };
}

RegionBoundsProvider region_bounds_from_function(const Grid2D& grid,
                                                 std::function<double(double, double)> a_fn,
                                                 int samples_per_axis, double safety) {
  return [grid, a_fn, samples_per_axis, safety](int i, int j) -> RegionBounds {
    const PointClass cls = classify_2d(grid, i, j);
    double xlo, xhi, ylo, yhi;
    if (cls == PointClass::EdgeCenterY) {
      xlo = grid.x(i - 1);
      xhi = grid.x(i + 1);
      ylo = grid.y(j - 2);
      yhi = grid.y(j + 2);
    } else if (cls == PointClass::EdgeCenterX) {
      xlo = grid.x(i - 2);
      xhi = grid.x(i + 2);
      ylo = grid.y(j - 1);
      yhi = grid.y(j + 1);
    } else {
      throw std::invalid_argument("region_bounds_from_function: (i,j) is not an edge center");
    }
    RegionBounds b;
    b.a_min = std::numeric_limits<double>::infinity();
    b.a_max = -std::numeric_limits<double>::infinity();
    double grad = 0.0;
    const int m = samples_per_axis;
    const double dx = (xhi - xlo) / m;
    const double dy = (yhi - ylo) / m;
    for (int q = 0; q <= m; ++q)
      for (int p = 0; p <= m; ++p) {
        const double x = xlo + p * dx, y = ylo + q * dy;
        const double v = a_fn(x, y);
        b.a_min = std::min(b.a_min, v);
        b.a_max = std::max(b.a_max, v);
        const double gx = (a_fn(std::min(x + dx, xhi), y) - a_fn(std::max(x - dx, xlo), y)) /
                          (std::min(x + dx, xhi) - std::max(x - dx, xlo));
        const double gy = (a_fn(x, std::min(y + dy, yhi)) - a_fn(x, std::max(y - dy, ylo))) /
                          (std::min(y + dy, yhi) - std::max(y - dy, ylo));
        grad = std::max(grad, std::hypot(gx, gy));
      }
    b.grad_max = safety * grad;
    b.has_grad = true;
    return b;
  };
}

std::vector<CellBounds> cell_bounds_from_function(const Grid1D& grid,
                                                  std::function<double(double)> a_fn,
                                                  int samples_per_cell, double safety) {
  std::vector<CellBounds> out(static_cast<std::size_t>(grid.num_cells()));
  for (int k = 0; k < grid.num_cells(); ++k) {
    const double xlo = grid.x(2 * k), xhi = grid.x(2 * k + 2);
    const double dx = (xhi - xlo) / samples_per_cell;
    CellBounds b;
    b.a_min = std::numeric_limits<double>::infinity();
    b.a_max = -std::numeric_limits<double>::infinity();
    double da = 0.0, d2a = -std::numeric_limits<double>::infinity();
    for (int p = 0; p <= samples_per_cell; ++p) {
      const double x = xlo + p * dx;
      const double v = a_fn(x);
      b.a_min = std::min(b.a_min, v);
      b.a_max = std::max(b.a_max, v);
      const double xl = std::max(x - dx, xlo), xr = std::min(x + dx, xhi);
      da = std::max(da, std::abs((a_fn(xr) - a_fn(xl)) / (xr - xl)));
      if (p > 0 && p < samples_per_cell) {
        const double second = (a_fn(x + dx) - 2.0 * v + a_fn(x - dx)) / (dx * dx);
        d2a = std::max(d2a, second);
      }
    }
    b.da_max = safety * da;
    b.has_da = true;
    b.d2a_max = (d2a > 0.0) ? safety * d2a : d2a / safety;
    b.has_d2a = true;
    out[static_cast<std::size_t>(k)] = b;
  }
  return out;
}

}  // namespace monoq2
