#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monoq2/coefficient.hpp"
#include "monoq2/grid.hpp"

namespace monoq2 {

/// Outcome of one closed-form sufficient-condition sweep. All inequalities
/// are strict: equality is a fail with margin 0. Margins are positive on
/// pass, normalized so that (pass side - fail side) / fail side is
/// reported; worst_margin is absent when no point needed checking (every
/// guard was nonpositive).
struct ConstraintReport {
  std::string id;
  bool pass = true;
  std::optional<double> worst_margin;
  int points_checked = 0;

  struct Failure {
    int i = 0, j = 0;
    std::string which;
    double margin = 0.0;
  };
  std::vector<Failure> failures;  ///< capped at 64

  void record(int i, int j, const std::string& which, double margin);
};

/// Exact sample inequality at every cell center: guarded by the sign of
/// 3a_{i-1} - 4a_i + 3a_{i+1}; both second-neighbor orientations are
/// required (each one serves the cell end on one side).
ConstraintReport check_1d_samples(const Grid1D& grid, const CoefficientField1D& coeff);

/// Exact sample inequalities at cell centers and edge centers (both
/// orientations at each point, skipping arms owned by boundary rows).
ConstraintReport check_2d_samples(const Grid2D& grid, const CoefficientField2D& coeff);

/// Analytic bounds over one finite element cell, supplied by the caller
/// and treated as exact.
struct CellBounds {
  double a_min = 0.0;
  double a_max = 0.0;
  double da_max = -1.0;   ///< max |a'|; negative = not provided
  double d2a_max = 0.0;
  bool has_da = false;
  bool has_d2a = false;
};

enum class Variant1D {
  Thm43Lambda,        ///< lambda-parameterized pair, lambda scanned in (3/13, 1)
  Thm43Combined,      ///< 2h max|a'| + h^2 c (1 - 2min/3max) < (5/3) min^2/max
  Thm43GradientOnly,  ///< c == 0 case
  Thm43ConstantA,     ///< h^2 c < 5a
  Thm44,              ///< h^2 (3c/2 + max a'') < 74/45 min sample
  Thm44Concave,       ///< concave a: h^2 c < 3 min sample
};

ConstraintReport check_1d_theorem(const Grid1D& grid, const CoefficientField1D& coeff,
                                  std::span<const CellBounds> per_cell, Variant1D variant);

/// Bounds over the two-cell union J_ij attached to an edge center.
struct RegionBounds {
  double a_min = 0.0;
  double a_max = 0.0;
  double grad_max = -1.0;  ///< max |grad a|; negative = not provided
  bool has_grad = false;
};

/// Provider maps an edge-center grid point (i, j) to bounds over its J_ij.
using RegionBoundsProvider = std::function<RegionBounds(int, int)>;

enum class Variant2D {
  Thm46,              ///< 61 min^2 > 49 max^2 + 8 (3max - 2min) h^2 c
  Thm47Lambda,        ///< lambda scanned in (49/61, 1)
  Thm47Combined,
  Thm47GradientOnly,  ///< c == 0 case
  Thm47ConstantA,     ///< h^2 c < 3a/2
};

ConstraintReport check_2d_theorem(const Grid2D& grid, const CoefficientField2D& coeff,
                                  const RegionBoundsProvider& bounds, Variant2D variant);

/// Exact bounds taken from the samples inside each J_ij (the right notion
/// for fields defined by their samples); no gradient information.
RegionBoundsProvider region_bounds_from_samples(const Grid2D& grid,
                                                const CoefficientField2D& coeff);

/// Approximate bounds by dense sampling of an analytic coefficient with a
/// safety factor of 1.1 on the derivative estimates. Not a certificate.
RegionBoundsProvider region_bounds_from_function(const Grid2D& grid,
                                                 std::function<double(double, double)> a_fn,
                                                 int samples_per_axis = 24, double safety = 1.1);

/// 1D counterpart of the dense-sampling estimator.
std::vector<CellBounds> cell_bounds_from_function(const Grid1D& grid,
                                                  std::function<double(double)> a_fn,
                                                  int samples_per_cell = 64, double safety = 1.1);

}  // namespace monoq2
