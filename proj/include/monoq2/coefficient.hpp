#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "monoq2/grid.hpp"

namespace monoq2 {

/// Grid samples of the diffusion coefficient a > 0 and reaction term c >= 0.
struct CoefficientField1D {
  std::vector<double> a;  ///< size n+2
  std::vector<double> c;  ///< size n+2

  double a_at(int i) const { return a[static_cast<std::size_t>(i)]; }
  double c_at(int i) const { return c[static_cast<std::size_t>(i)]; }
};

/// 2D samples, row-major (j outer, i inner) over all (nx+2)*(ny+2) points.
struct CoefficientField2D {
  int stride = 0;  ///< nx+2
  std::vector<double> a;
  std::vector<double> c;

  double a_at(int i, int j) const { return a[static_cast<std::size_t>(j) * stride + i]; }
  double c_at(int i, int j) const { return c[static_cast<std::size_t>(j) * stride + i]; }
};

/// Throws std::invalid_argument on a size mismatch, a <= 0 or c < 0 sample.
void validate(const Grid1D& grid, const CoefficientField1D& coeff);
void validate(const Grid2D& grid, const CoefficientField2D& coeff);

CoefficientField1D sample_coefficients(const Grid1D& grid,
                                       const std::function<double(double)>& a_fn,
                                       const std::function<double(double)>& c_fn);
CoefficientField2D sample_coefficients(const Grid2D& grid,
                                       const std::function<double(double, double)>& a_fn,
                                       const std::function<double(double, double)>& c_fn);

CoefficientField1D constant_coefficients(const Grid1D& grid, double a, double c);
CoefficientField2D constant_coefficients(const Grid2D& grid, double a, double c);

/// a samples i.i.d. uniform on (lo, lo+width), c constant. The generator is
/// mt19937_64 with explicit 53-bit scaling so draws are reproducible bitwise.
CoefficientField1D random_coefficients(const Grid1D& grid, double lo, double width, double c,
                                       std::uint64_t seed);
CoefficientField2D random_coefficients(const Grid2D& grid, double lo, double width, double c,
                                       std::uint64_t seed);

}  // namespace monoq2
