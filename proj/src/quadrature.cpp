#include "monoq2/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace monoq2 {

namespace {

// Quadratic Lagrange basis on the reference interval [-1, 1] with nodes
// {-1, 0, 1}; these nodes are also the 3-point Gauss-Lobatto rule.
double shape(int p, double xi) {
  switch (p) {
    case 0: return 0.5 * xi * (xi - 1.0);
    case 1: return (1.0 - xi) * (1.0 + xi);
    default: return 0.5 * xi * (xi + 1.0);
  }
}

double shape_deriv(int p, double xi) {
  switch (p) {
    case 0: return xi - 0.5;
    case 1: return -2.0 * xi;
    default: return xi + 0.5;
  }
}

constexpr std::array<double, 3> kNodes = {-1.0, 0.0, 1.0};
constexpr std::array<double, 3> kWeights = {1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0};

void assert_diagonal_mass(const std::vector<std::vector<double>>& mass_offdiag_abs) {
  for (const auto& row : mass_offdiag_abs)
    for (double v : row)
      if (v != 0.0 && std::abs(v) > 1e-14)
        throw std::logic_error("quadrature oracle: mass matrix is not diagonal under Gauss-Lobatto collocation");
}

}  // namespace

SparseOperator assemble_via_quadrature(const Grid1D& grid, const CoefficientField1D& coeff) {
  validate(grid, coeff);
  const int n = grid.n;
  const int N = n + 2;
  const double h = grid.h;

  std::vector<std::vector<double>> S(static_cast<std::size_t>(N), std::vector<double>(5, 0.0));
  // Dense-per-band storage: S[i] holds columns i-2..i+2.
  auto sref = [&](int i, int j) -> double& {
    return S[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - i + 2)];
  };
  std::vector<double> Mdiag(static_cast<std::size_t>(N), 0.0);
  std::vector<std::vector<double>> Moff(static_cast<std::size_t>(N), std::vector<double>(5, 0.0));

  for (int k = 0; k < grid.num_cells(); ++k) {
    const int base = 2 * k;  // global index of local node 0
    for (int q = 0; q < 3; ++q) {
      const double w = kWeights[static_cast<std::size_t>(q)] * h;  // jacobian dx/dxi = h
      const double aq = coeff.a_at(base + q);
      const double cq = coeff.c_at(base + q);
      for (int p = 0; p < 3; ++p) {
        const double dp = shape_deriv(p, kNodes[static_cast<std::size_t>(q)]) / h;
        const double np = shape(p, kNodes[static_cast<std::size_t>(q)]);
        for (int r = 0; r < 3; ++r) {
          const double dr = shape_deriv(r, kNodes[static_cast<std::size_t>(q)]) / h;
          const double nr = shape(r, kNodes[static_cast<std::size_t>(q)]);
          sref(base + p, base + r) += w * (aq * dp * dr + cq * np * nr);
          if (p == r)
            Mdiag[static_cast<std::size_t>(base + p)] += w * np * nr;
          else
            Moff[static_cast<std::size_t>(base + p)][static_cast<std::size_t>(base + r - (base + p) + 2)] += w * np * nr;
        }
      }
    }
  }
  assert_diagonal_mass(Moff);

  std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    if (i == 0 || i == n + 1) {
      row.push_back({i, 1.0});
      continue;
    }
    for (int j = std::max(0, i - 2); j <= std::min(N - 1, i + 2); ++j) {
      const double v = sref(i, j) / Mdiag[static_cast<std::size_t>(i)];
      if (v != 0.0) row.push_back({j, v});
    }
  }
  return SparseOperator::from_rows(N, std::move(rows));
}

SparseOperator assemble_via_quadrature(const Grid2D& grid, const CoefficientField2D& coeff) {
  validate(grid, coeff);
  const int N = grid.num_points();
  const double h = grid.h;

  // Stiffness kept in per-row maps over the 25-point neighborhood.
  std::vector<std::vector<Entry>> srows(static_cast<std::size_t>(N));
  std::vector<double> Mdiag(static_cast<std::size_t>(N), 0.0);
  double mass_offdiag_max = 0.0;

  for (int ky = 0; ky < grid.cells_y(); ++ky) {
    for (int kx = 0; kx < grid.cells_x(); ++kx) {
      const int bx = 2 * kx, by = 2 * ky;
      // 2D quadrature points are the 9 element nodes.
      for (int qy = 0; qy < 3; ++qy) {
        for (int qx = 0; qx < 3; ++qx) {
          const double w = kWeights[static_cast<std::size_t>(qx)] * kWeights[static_cast<std::size_t>(qy)] * h * h;
          const double aq = coeff.a_at(bx + qx, by + qy);
          const double cq = coeff.c_at(bx + qx, by + qy);
          const double xiq = kNodes[static_cast<std::size_t>(qx)];
          const double etq = kNodes[static_cast<std::size_t>(qy)];
          for (int py = 0; py < 3; ++py) {
            for (int px = 0; px < 3; ++px) {
              const double np = shape(px, xiq) * shape(py, etq);
              const double dpx = shape_deriv(px, xiq) / h * shape(py, etq);
              const double dpy = shape(px, xiq) * shape_deriv(py, etq) / h;
              const int gp = grid.index(bx + px, by + py);
              for (int ry = 0; ry < 3; ++ry) {
                for (int rx = 0; rx < 3; ++rx) {
                  const double nr = shape(rx, xiq) * shape(ry, etq);
                  const double drx = shape_deriv(rx, xiq) / h * shape(ry, etq);
                  const double dry = shape(rx, xiq) * shape_deriv(ry, etq) / h;
                  const int gr = grid.index(bx + rx, by + ry);
                  const double sval = w * (aq * (dpx * drx + dpy * dry) + cq * np * nr);
                  if (sval != 0.0) srows[static_cast<std::size_t>(gp)].push_back({gr, sval});
                  const double mval = w * np * nr;
                  if (gp == gr)
                    Mdiag[static_cast<std::size_t>(gp)] += mval;
                  else
                    mass_offdiag_max = std::max(mass_offdiag_max, std::abs(mval));
                }
              }
            }
          }
        }
      }
    }
  }
  if (mass_offdiag_max > 1e-14)
    throw std::logic_error("quadrature oracle: mass matrix is not diagonal under Gauss-Lobatto collocation");

  std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(N));
  for (int j = 0; j < grid.points_y(); ++j) {
    for (int i = 0; i < grid.points_x(); ++i) {
      const int g = grid.index(i, j);
      auto& row = rows[static_cast<std::size_t>(g)];
      if (grid.on_boundary(i, j)) {
        row = {{g, 1.0}};
        continue;
      }
      // Sum duplicate stiffness contributions, then divide by the mass.
      auto& acc = srows[static_cast<std::size_t>(g)];
      std::stable_sort(acc.begin(), acc.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
      std::size_t k = 0;
      while (k < acc.size()) {
        const int c = acc[k].col;
        double v = 0.0;
        while (k < acc.size() && acc[k].col == c) v += acc[k++].value;
        v /= Mdiag[static_cast<std::size_t>(g)];
        if (v != 0.0) row.push_back({c, v});
      }
    }
  }
  return SparseOperator::from_rows(N, std::move(rows));
}

}  // namespace monoq2
