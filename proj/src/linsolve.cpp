#include "monoq2/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace monoq2 {

BandedLU BandedLU::factor(const SparseOperator& A) {
  const int n = A.size();
  if (n == 0) throw std::invalid_argument("BandedLU: empty matrix");
  int kl = 0, ku = 0;
  for (int i = 0; i < n; ++i)
    for (const auto& e : A.row(i)) {
      kl = std::max(kl, i - e.col);
      ku = std::max(ku, e.col - i);
    }
  BandedLU lu;
  lu.n_ = n;
  lu.kl_ = kl;
  lu.ku_ = ku;
  lu.ldab_ = 2 * kl + ku + 1;
  const std::uint64_t need = static_cast<std::uint64_t>(lu.ldab_) * static_cast<std::uint64_t>(n);
  if (need > (1ull << 26))
    throw std::runtime_error("BandedLU: band storage too large (" + std::to_string(need) +
                             " entries); matrix bandwidth " + std::to_string(kl + ku));
  lu.band_.assign(need, 0.0);
  lu.ipiv_.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (const auto& e : A.row(i)) lu.at(i, e.col) = e.value;

  for (int j = 0; j < n; ++j) {
    const int last_row = std::min(j + kl, n - 1);
    int p = j;
    double best = std::abs(lu.get(j, j));
    for (int i = j + 1; i <= last_row; ++i) {
      const double v = std::abs(lu.get(i, j));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0)
      throw SingularMatrixError("BandedLU: zero pivot at column " + std::to_string(j));
    lu.ipiv_[static_cast<std::size_t>(j)] = p;
    const int last_col = std::min(j + kl + ku, n - 1);
    if (p != j)
      for (int c = j; c <= last_col; ++c) std::swap(lu.at(j, c), lu.at(p, c));
    const double piv = lu.get(j, j);
    for (int i = j + 1; i <= last_row; ++i) {
      const double m = lu.get(i, j) / piv;
      lu.at(i, j) = m;
      if (m != 0.0)
        for (int c = j + 1; c <= last_col; ++c) lu.at(i, c) -= m * lu.get(j, c);
    }
  }
  return lu;
}

void BandedLU::solve_inplace(std::span<double> b) const {
  if (static_cast<int>(b.size()) != n_) throw std::invalid_argument("BandedLU::solve: size mismatch");
  for (int j = 0; j < n_; ++j) {
    const int p = ipiv_[static_cast<std::size_t>(j)];
    if (p != j) std::swap(b[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(p)]);
    const double bj = b[static_cast<std::size_t>(j)];
    if (bj != 0.0) {
      const int last_row = std::min(j + kl_, n_ - 1);
      for (int i = j + 1; i <= last_row; ++i) b[static_cast<std::size_t>(i)] -= get(i, j) * bj;
    }
  }
  for (int j = n_ - 1; j >= 0; --j) {
    const double xj = b[static_cast<std::size_t>(j)] / get(j, j);
    b[static_cast<std::size_t>(j)] = xj;
    if (xj != 0.0) {
      const int first_row = std::max(0, j - (kl_ + ku_));
      for (int i = first_row; i < j; ++i) b[static_cast<std::size_t>(i)] -= get(i, j) * xj;
    }
  }
}

namespace {

struct ColumnStats {
  double min_value;
  int min_row;
  double max_abs;
  double interior_min;
  int interior_row;  // -1 when the column carries no interior stats
};

ColumnStats scan_column(const BandedLU& lu, int col, std::span<const char> mask,
                        std::vector<double>& work) {
  const int n = lu.size();
  std::fill(work.begin(), work.end(), 0.0);
  work[static_cast<std::size_t>(col)] = 1.0;
  lu.solve_inplace(work);
  ColumnStats st{work[0], 0, 0.0, 0.0, -1};
  const bool interior_col = !mask.empty() && mask[static_cast<std::size_t>(col)];
  for (int i = 0; i < n; ++i) {
    const double v = work[static_cast<std::size_t>(i)];
    if (v < st.min_value) {
      st.min_value = v;
      st.min_row = i;
    }
    st.max_abs = std::max(st.max_abs, std::abs(v));
    if (interior_col && mask[static_cast<std::size_t>(i)]) {
      if (st.interior_row < 0 || v < st.interior_min) {
        st.interior_min = v;
        st.interior_row = i;
      }
    }
  }
  return st;
}

}  // namespace

InverseScan scan_inverse_columns(const BandedLU& lu, std::span<const char> interior_mask,
                                 bool parallel) {
  const int n = lu.size();
  std::vector<ColumnStats> per_col(static_cast<std::size_t>(n));

#pragma omp parallel if (parallel)
  {
    std::vector<double> work(static_cast<std::size_t>(n));
#pragma omp for schedule(static)
    for (int j = 0; j < n; ++j)
      per_col[static_cast<std::size_t>(j)] = scan_column(lu, j, interior_mask, work);
  }

  InverseScan out;
  out.min_value = per_col[0].min_value;
  out.min_row = per_col[0].min_row;
  out.min_col = 0;
  for (int j = 0; j < n; ++j) {
    const auto& st = per_col[static_cast<std::size_t>(j)];
    if (st.min_value < out.min_value) {
      out.min_value = st.min_value;
      out.min_row = st.min_row;
      out.min_col = j;
    }
    out.max_abs = std::max(out.max_abs, st.max_abs);
    if (st.interior_row >= 0) {
      if (!out.has_interior || st.interior_min < out.interior_min) {
        out.has_interior = true;
        out.interior_min = st.interior_min;
        out.interior_row = st.interior_row;
        out.interior_col = j;
      }
    }
  }
  return out;
}

}  // namespace monoq2
