#include "monoq2/coefficient.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace monoq2 {

namespace {

void check_samples(const std::vector<double>& a, const std::vector<double>& c, std::size_t expect) {
  if (a.size() != expect || c.size() != expect)
    throw std::invalid_argument("coefficient field: expected " + std::to_string(expect) +
                                " samples, got a=" + std::to_string(a.size()) +
                                " c=" + std::to_string(c.size()));
  for (std::size_t k = 0; k < expect; ++k) {
    if (!(a[k] > 0.0))
      throw std::invalid_argument("coefficient field: non-positive a sample at flat index " +
                                  std::to_string(k));
    if (c[k] < 0.0)
      throw std::invalid_argument("coefficient field: negative c sample at flat index " +
                                  std::to_string(k));
  }
}

double uniform01(std::mt19937_64& gen) {
  // 53-bit mantissa scaling, value in [0, 1)
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

void validate(const Grid1D& grid, const CoefficientField1D& coeff) {
  check_samples(coeff.a, coeff.c, static_cast<std::size_t>(grid.num_points()));
}

void validate(const Grid2D& grid, const CoefficientField2D& coeff) {
  if (coeff.stride != grid.points_x())
    throw std::invalid_argument("coefficient field: stride mismatch");
  check_samples(coeff.a, coeff.c, static_cast<std::size_t>(grid.num_points()));
}

CoefficientField1D sample_coefficients(const Grid1D& grid,
                                       const std::function<double(double)>& a_fn,
                                       const std::function<double(double)>& c_fn) {
  CoefficientField1D f;
  f.a.resize(static_cast<std::size_t>(grid.num_points()));
  f.c.resize(f.a.size());
  for (int i = 0; i < grid.num_points(); ++i) {
    f.a[static_cast<std::size_t>(i)] = a_fn(grid.x(i));
    f.c[static_cast<std::size_t>(i)] = c_fn(grid.x(i));
  }
  validate(grid, f);
  return f;
}

CoefficientField2D sample_coefficients(const Grid2D& grid,
                                       const std::function<double(double, double)>& a_fn,
                                       const std::function<double(double, double)>& c_fn) {
  CoefficientField2D f;
  f.stride = grid.points_x();
  f.a.resize(static_cast<std::size_t>(grid.num_points()));
  f.c.resize(f.a.size());
  for (int j = 0; j < grid.points_y(); ++j)
    for (int i = 0; i < grid.points_x(); ++i) {
      const std::size_t k = static_cast<std::size_t>(grid.index(i, j));
      f.a[k] = a_fn(grid.x(i), grid.y(j));
      f.c[k] = c_fn(grid.x(i), grid.y(j));
    }
  validate(grid, f);
  return f;
}

CoefficientField1D constant_coefficients(const Grid1D& grid, double a, double c) {
  CoefficientField1D f;
  f.a.assign(static_cast<std::size_t>(grid.num_points()), a);
  f.c.assign(f.a.size(), c);
  validate(grid, f);
  return f;
}

CoefficientField2D constant_coefficients(const Grid2D& grid, double a, double c) {
  CoefficientField2D f;
  f.stride = grid.points_x();
  f.a.assign(static_cast<std::size_t>(grid.num_points()), a);
  f.c.assign(f.a.size(), c);
  validate(grid, f);
  return f;
}

CoefficientField1D random_coefficients(const Grid1D& grid, double lo, double width, double c,
                                       std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  CoefficientField1D f;
  f.a.resize(static_cast<std::size_t>(grid.num_points()));
  f.c.assign(f.a.size(), c);
  for (auto& v : f.a) v = lo + width * uniform01(gen);
  validate(grid, f);
  return f;
}

CoefficientField2D random_coefficients(const Grid2D& grid, double lo, double width, double c,
                                       std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  CoefficientField2D f;
  f.stride = grid.points_x();
  f.a.resize(static_cast<std::size_t>(grid.num_points()));
  f.c.assign(f.a.size(), c);
  for (auto& v : f.a) v = lo + width * uniform01(gen);
  validate(grid, f);
  return f;
}

}  // namespace monoq2
