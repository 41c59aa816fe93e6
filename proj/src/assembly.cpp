#include "monoq2/assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace monoq2 {

namespace {

// Three-point second-order part acting through a cell center: the
// direction in which the point sits mid-cell.
template <class Idx, class Coef>
void add_center_direction(std::vector<Entry>& row, const Idx& idx, const Coef& a, double h2) {
  const double am = a(-1), ap = a(+1);
  row.push_back({idx(-1), -(3.0 * am + ap) / (4.0 * h2)});
  row.push_back({idx(0), 4.0 * (am + ap) / (4.0 * h2)});
  row.push_back({idx(+1), -(am + 3.0 * ap) / (4.0 * h2)});
}

// Five-point fourth-order part acting through a cell end.
template <class Idx, class Coef>
void add_end_direction(std::vector<Entry>& row, const Idx& idx, const Coef& a, double h2) {
  const double amm = a(-2), am = a(-1), a0 = a(0), ap = a(+1), app = a(+2);
  row.push_back({idx(-2), (3.0 * amm - 4.0 * am + 3.0 * a0) / (8.0 * h2)});
  row.push_back({idx(-1), -(4.0 * amm + 12.0 * a0) / (8.0 * h2)});
  row.push_back({idx(0), (amm + 4.0 * am + 18.0 * a0 + 4.0 * ap + app) / (8.0 * h2)});
  row.push_back({idx(+1), -(12.0 * a0 + 4.0 * app) / (8.0 * h2)});
  row.push_back({idx(+2), (3.0 * app - 4.0 * ap + 3.0 * a0) / (8.0 * h2)});
}

template <class AF, class CF>
SparseOperator assemble_1d_core(const Grid1D& grid, const AF& af, const CF& cf, Scheme scheme) {
  const int n = grid.n;
  const double h2 = grid.h * grid.h;
  std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(n) + 2);
  for (int i = 0; i <= n + 1; ++i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    const PointClass cls = classify_1d(grid, i);
    if (cls == PointClass::Boundary) {
      row.push_back({i, 1.0});
      continue;
    }
    const auto idx = [i](int d) { return i + d; };
    const auto a = [&](int d) { return af(i + d); };
    if (cls == PointClass::CellCenter)
      add_center_direction(row, idx, a, h2);
    else
      add_end_direction(row, idx, a, h2);
    row.push_back({i, cf(i)});
  }
  OperatorMeta meta;
  meta.scheme = scheme;
  meta.dim = 1;
  meta.nx = n;
  meta.h = grid.h;
  return SparseOperator::from_rows(n + 2, std::move(rows), meta);
}

template <class AF, class CF>
SparseOperator assemble_2d_core(const Grid2D& grid, const AF& af, const CF& cf, Scheme scheme,
                                const AssemblyOptions& opts) {
  const int npx = grid.points_x();
  const int N = grid.num_points();
  const double h2 = grid.h * grid.h;
  std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(N));

#pragma omp parallel for schedule(static) if (opts.parallel)
  for (int idx_flat = 0; idx_flat < N; ++idx_flat) {
    const int i = idx_flat % npx;
    const int j = idx_flat / npx;
    auto& row = rows[static_cast<std::size_t>(idx_flat)];
    const PointClass cls = classify_2d(grid, i, j);
    if (cls == PointClass::Boundary) {
      row.push_back({idx_flat, 1.0});
      continue;
    }
    const auto idx_x = [&](int d) { return grid.index(i + d, j); };
    const auto idx_y = [&](int d) { return grid.index(i, j + d); };
    const auto a_x = [&](int d) { return af(i + d, j); };
    const auto a_y = [&](int d) { return af(i, j + d); };
    switch (cls) {
      case PointClass::CellCenter:
        add_center_direction(row, idx_x, a_x, h2);
        add_center_direction(row, idx_y, a_y, h2);
        break;
      case PointClass::Knot:
        add_end_direction(row, idx_x, a_x, h2);
        add_end_direction(row, idx_y, a_y, h2);
        break;
      case PointClass::EdgeCenterX:  // long stencil along x
        add_end_direction(row, idx_x, a_x, h2);
        add_center_direction(row, idx_y, a_y, h2);
        break;
      case PointClass::EdgeCenterY:  // long stencil along y
        add_center_direction(row, idx_x, a_x, h2);
        add_end_direction(row, idx_y, a_y, h2);
        break;
      default:
        break;
    }
    row.push_back({idx_flat, cf(i, j)});
  }
  OperatorMeta meta;
  meta.scheme = scheme;
  meta.dim = 2;
  meta.nx = grid.nx;
  meta.ny = grid.ny;
  meta.h = grid.h;
  return SparseOperator::from_rows(N, std::move(rows), meta);
}

}  // namespace

SparseOperator assemble_1d_laplacian(const Grid1D& grid) {
  return assemble_1d_core(
      grid, [](int) { return 1.0; }, [](int) { return 0.0; }, Scheme::Laplacian1D);
}

SparseOperator assemble_1d_variable(const Grid1D& grid, const CoefficientField1D& coeff) {
  validate(grid, coeff);
  return assemble_1d_core(
      grid, [&](int i) { return coeff.a_at(i); }, [&](int i) { return coeff.c_at(i); },
      Scheme::Variable1D);
}

SparseOperator assemble_2d_laplacian(const Grid2D& grid, const AssemblyOptions& opts) {
  return assemble_2d_core(
      grid, [](int, int) { return 1.0; }, [](int, int) { return 0.0; }, Scheme::Laplacian2D, opts);
}

SparseOperator assemble_2d_variable(const Grid2D& grid, const CoefficientField2D& coeff,
                                    const AssemblyOptions& opts) {
  validate(grid, coeff);
  return assemble_2d_core(
      grid, [&](int i, int j) { return coeff.a_at(i, j); },
      [&](int i, int j) { return coeff.c_at(i, j); }, Scheme::Variable2D, opts);
}

SparseOperator scale_boundary_rows(const SparseOperator& op) {
  if (!op.meta()) throw std::invalid_argument("scale_boundary_rows: operator has no grid metadata");
  if (op.meta()->boundary == BoundaryRows::Scaled)
    throw std::invalid_argument("scale_boundary_rows: boundary rows already scaled");
  const auto& meta = *op.meta();
  const double s = 1.0 / (meta.h * meta.h);
  std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(op.size()));
  for (int i = 0; i < op.size(); ++i) {
    auto& r = rows[static_cast<std::size_t>(i)];
    if (meta.is_boundary_index(i)) {
      r.push_back({i, s});
    } else {
      for (const auto& e : op.row(i)) r.push_back(e);
    }
  }
  OperatorMeta m = meta;
  m.boundary = BoundaryRows::Scaled;
  return SparseOperator::from_rows(op.size(), std::move(rows), m);
}

namespace {

// Whether the coupling leaving `cls` along `axis` (0 = x, 1 = y) is of
// cell-end type, i.e. carries the five-point pattern with its (.)^+
// second-neighbor bookkeeping.
bool axis_is_end_type(PointClass cls, int axis) {
  switch (cls) {
    case PointClass::CellEnd: return true;
    case PointClass::Knot: return true;
    case PointClass::EdgeCenterX: return axis == 0;
    case PointClass::EdgeCenterY: return axis == 1;
    default: return false;
  }
}

double entry_at(std::span<const Entry> row, int col) {
  for (const auto& e : row)
    if (e.col == col) return e.value;
  return 0.0;
}

}  // namespace

Splitting split_operator(const SparseOperator& op, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("split_operator: epsilon must lie in (0,1), got " +
                                std::to_string(epsilon));
  if (!op.meta())
    throw std::invalid_argument("split_operator: operator has no grid metadata (point classes unknown)");
  const OperatorMeta& meta = *op.meta();
  const int N = op.size();
  std::vector<std::vector<Entry>> rows_d(static_cast<std::size_t>(N));
  std::vector<std::vector<Entry>> rows_p(static_cast<std::size_t>(N));
  std::vector<std::vector<Entry>> rows_z(static_cast<std::size_t>(N));
  std::vector<std::vector<Entry>> rows_s(static_cast<std::size_t>(N));

  const int npx = meta.points_x();
  for (int r = 0; r < N; ++r) {
    const auto row = op.row(r);
    const int ri = (meta.dim == 1) ? r : r % npx;
    const int rj = (meta.dim == 1) ? 0 : r / npx;
    PointClass cls;
    if (meta.dim == 1) {
      if (ri == 0 || ri == meta.nx + 1)
        cls = PointClass::Boundary;
      else
        cls = (ri % 2 == 1) ? PointClass::CellCenter : PointClass::CellEnd;
    } else {
      const bool bdry = (ri == 0 || ri == meta.nx + 1 || rj == 0 || rj == meta.ny + 1);
      if (bdry)
        cls = PointClass::Boundary;
      else if (ri % 2 == 1 && rj % 2 == 1)
        cls = PointClass::CellCenter;
      else if (ri % 2 == 0 && rj % 2 == 0)
        cls = PointClass::Knot;
      else
        cls = (ri % 2 == 0) ? PointClass::EdgeCenterX : PointClass::EdgeCenterY;
    }

    for (const auto& e : row) {
      if (e.col == r) {
        rows_d[static_cast<std::size_t>(r)].push_back(e);
        continue;
      }
      if (meta.scheme == Scheme::Laplacian1D) {
        if (e.value > 0.0) {
          rows_p[static_cast<std::size_t>(r)].push_back(e);
        } else {
          rows_z[static_cast<std::size_t>(r)].push_back({e.col, 0.5 * e.value});
          rows_s[static_cast<std::size_t>(r)].push_back({e.col, 0.5 * e.value});
        }
        continue;
      }
      const int ci = (meta.dim == 1) ? e.col : e.col % npx;
      const int cj = (meta.dim == 1) ? 0 : e.col / npx;
      const int di = ci - ri, dj = cj - rj;
      const int axis = (dj == 0) ? 0 : 1;
      const int dist = std::abs(di) + std::abs(dj);
      if (axis_is_end_type(cls, axis)) {
        if (dist == 2) {
          // (.)^+ second neighbor goes to A_a^+, negative part to A^z.
          if (e.value > 0.0)
            rows_p[static_cast<std::size_t>(r)].push_back(e);
          else
            rows_z[static_cast<std::size_t>(r)].push_back(e);
        } else {
          // first neighbor: A^s takes -(.)^+ of the second neighbor on the
          // same side, A^z the remainder
          const int step_i = (axis == 0) ? 2 * di : 0;
          const int step_j = (axis == 1) ? 2 * dj : 0;
          const int second = (rj + step_j) * npx + (ri + step_i);
          const double pos2 = std::max(entry_at(row, second), 0.0);
          if (pos2 > 0.0) rows_s[static_cast<std::size_t>(r)].push_back({e.col, -pos2});
          const double rem = e.value + pos2;
          if (rem != 0.0) rows_z[static_cast<std::size_t>(r)].push_back({e.col, rem});
        }
      } else {
        rows_z[static_cast<std::size_t>(r)].push_back({e.col, epsilon * e.value});
        rows_s[static_cast<std::size_t>(r)].push_back({e.col, (1.0 - epsilon) * e.value});
      }
    }
  }

  Splitting sp;
  sp.epsilon = epsilon;
  sp.a_d = SparseOperator::from_rows(N, std::move(rows_d), meta);
  sp.a_plus = SparseOperator::from_rows(N, std::move(rows_p), meta);
  sp.a_z = SparseOperator::from_rows(N, std::move(rows_z), meta);
  sp.a_s = SparseOperator::from_rows(N, std::move(rows_s), meta);
  return sp;
}

}  // namespace monoq2
