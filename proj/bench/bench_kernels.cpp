// Serial vs OpenMP timings for the two data-parallel kernels: the inverse
// column scan against a shared factorization, and the 2D row assembly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "monoq2/assembly.hpp"
#include "monoq2/coefficient.hpp"
#include "monoq2/linsolve.hpp"
#include "monoq2/threads.hpp"

using namespace monoq2;

namespace {

template <class F>
double time_best_of(int reps, const F& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best,
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main() {
  apply_thread_cap_from_env();
  std::printf("threads: %d (cap via MONOTONE_Q2_THREADS)\n\n", max_threads());

  {
    const Grid2D grid = build_grid_2d(31, 63, 0.0, 1.0, 0.0, 2.0);  // the 16x32 study mesh
    const double ratio = 1.5;
    const auto coeff = constant_coefficients(grid, 1.0, 1.0 / (ratio * grid.h * grid.h));
    const SparseOperator op = scale_boundary_rows(assemble_2d_variable(grid, coeff));
    const BandedLU lu = BandedLU::factor(op);
    const auto mask = op.interior_mask();

    InverseScan serial{}, parallel{};
    const double t_serial = time_best_of(3, [&] { serial = scan_inverse_columns(lu, mask, false); });
    const double t_parallel = time_best_of(3, [&] { parallel = scan_inverse_columns(lu, mask, true); });
    const bool same = serial.min_value == parallel.min_value && serial.min_row == parallel.min_row &&
                      serial.min_col == parallel.min_col;
    std::printf("inverse column scan, n = %d\n", op.size());
    std::printf("  serial   %8.4f s\n", t_serial);
    std::printf("  openmp   %8.4f s   speedup %.2fx   results %s\n\n", t_parallel,
                t_serial / t_parallel, same ? "identical" : "DIFFER");
  }

  {
    const Grid2D grid = build_grid_2d(255, 255, 0.0, 1.0, 0.0, 1.0);
    const auto coeff = sample_coefficients(
        grid, [](double x, double y) { return 1.0 + 0.5 * std::cos(M_PI * x) * std::cos(M_PI * y); },
        [](double, double) { return 10.0; });
    AssemblyOptions serial_opts;
    serial_opts.parallel = false;
    SparseOperator a, b;
    const double t_serial = time_best_of(3, [&] { a = assemble_2d_variable(grid, coeff, serial_opts); });
    const double t_parallel = time_best_of(3, [&] { b = assemble_2d_variable(grid, coeff); });
    std::printf("2d variable assembly, n = %d (%zu nonzeros)\n", a.size(), a.nnz());
    std::printf("  serial   %8.4f s\n", t_serial);
    std::printf("  openmp   %8.4f s   speedup %.2fx   results %s\n", t_parallel,
                t_serial / t_parallel, max_abs_diff(a, b) == 0.0 ? "identical" : "DIFFER");
  }
  return 0;
}
