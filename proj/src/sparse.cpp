#include "monoq2/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace monoq2 {

SparseOperator SparseOperator::from_rows(int n, std::vector<std::vector<Entry>> rows,
                                         std::optional<OperatorMeta> meta) {
  if (static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("SparseOperator::from_rows: row count mismatch");
  SparseOperator A;
  A.n_ = n;
  A.meta_ = std::move(meta);
  A.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
  std::size_t total = 0;
  for (auto& r : rows) total += r.size();
  A.col_.reserve(total);
  A.val_.reserve(total);
  for (int i = 0; i < n; ++i) {
    auto& r = rows[static_cast<std::size_t>(i)];
    std::stable_sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    std::size_t k = 0;
    while (k < r.size()) {
      const int c = r[k].col;
      if (c < 0 || c >= n) throw std::invalid_argument("SparseOperator::from_rows: column out of range");
      double v = r[k].value;
      ++k;
      while (k < r.size() && r[k].col == c) {
        v += r[k].value;
        ++k;
      }
      if (v != 0.0) {
        A.col_.push_back(c);
        A.val_.push_back(v);
      }
    }
    A.row_ptr_[static_cast<std::size_t>(i) + 1] = static_cast<int>(A.col_.size());
  }
  A.rebuild_entries();
  return A;
}

SparseOperator SparseOperator::identity(int n) {
  std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = {{i, 1.0}};
  return from_rows(n, std::move(rows));
}

void SparseOperator::rebuild_entries() {
  entries_.resize(col_.size());
  for (std::size_t k = 0; k < col_.size(); ++k) entries_[k] = {col_[k], val_[k]};
}

std::span<const Entry> SparseOperator::row(int i) const {
  const auto b = static_cast<std::size_t>(row_ptr_[static_cast<std::size_t>(i)]);
  const auto e = static_cast<std::size_t>(row_ptr_[static_cast<std::size_t>(i) + 1]);
  return {entries_.data() + b, e - b};
}

double SparseOperator::coeff(int i, int j) const {
  const auto r = row(i);
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const Entry& e, int c) { return e.col < c; });
  return (it != r.end() && it->col == j) ? it->value : 0.0;
}

std::vector<double> SparseOperator::apply(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("apply: size mismatch");
  std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (const auto& e : row(i)) s += e.value * x[static_cast<std::size_t>(e.col)];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

std::vector<double> SparseOperator::row_sums() const {
  std::vector<double> s(static_cast<std::size_t>(n_), 0.0);
  for (int i = 0; i < n_; ++i)
    for (const auto& e : row(i)) s[static_cast<std::size_t>(i)] += e.value;
  return s;
}

double SparseOperator::max_abs() const {
  double m = 0.0;
  for (double v : val_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<char> SparseOperator::interior_mask() const {
  std::vector<char> mask;
  if (!meta_) return mask;
  mask.resize(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i) mask[static_cast<std::size_t>(i)] = meta_->is_boundary_index(i) ? 0 : 1;
  return mask;
}

SparseOperator linear_combination(double alpha, const SparseOperator& A, double beta,
                                  const SparseOperator& B) {
  if (A.size() != B.size()) throw std::invalid_argument("linear_combination: dimension mismatch");
  SparseOperator C;
  C.n_ = A.size();
  C.row_ptr_.assign(static_cast<std::size_t>(C.n_) + 1, 0);
  C.col_.reserve(A.nnz() + B.nnz());
  C.val_.reserve(A.nnz() + B.nnz());
  for (int i = 0; i < C.n_; ++i) {
    const auto ra = A.row(i);
    const auto rb = B.row(i);
    std::size_t ka = 0, kb = 0;
    while (ka < ra.size() || kb < rb.size()) {
      int c;
      double v;
      if (kb >= rb.size() || (ka < ra.size() && ra[ka].col < rb[kb].col)) {
        c = ra[ka].col;
        v = alpha * ra[ka].value;
        ++ka;
      } else if (ka >= ra.size() || rb[kb].col < ra[ka].col) {
        c = rb[kb].col;
        v = beta * rb[kb].value;
        ++kb;
      } else {
        c = ra[ka].col;
        v = alpha * ra[ka].value + beta * rb[kb].value;
        ++ka;
        ++kb;
      }
      if (v != 0.0) {
        C.col_.push_back(c);
        C.val_.push_back(v);
      }
    }
    C.row_ptr_[static_cast<std::size_t>(i) + 1] = static_cast<int>(C.col_.size());
  }
  C.rebuild_entries();
  return C;
}

SparseOperator multiply(const SparseOperator& A, const SparseOperator& B, double drop_tol) {
  if (A.size() != B.size()) throw std::invalid_argument("multiply: dimension mismatch");
  const int n = A.size();
  SparseOperator C;
  C.n_ = n;
  C.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
  std::vector<double> acc(static_cast<std::size_t>(n), 0.0);
  std::vector<int> mark(static_cast<std::size_t>(n), -1);
  std::vector<int> marked;
  marked.reserve(64);
  for (int i = 0; i < n; ++i) {
    marked.clear();
    for (const auto& ea : A.row(i)) {
      for (const auto& eb : B.row(ea.col)) {
        const auto c = static_cast<std::size_t>(eb.col);
        if (mark[c] != i) {
          mark[c] = i;
          acc[c] = 0.0;
          marked.push_back(eb.col);
        }
        acc[c] += ea.value * eb.value;
      }
    }
    std::sort(marked.begin(), marked.end());
    for (int c : marked) {
      const double v = acc[static_cast<std::size_t>(c)];
      if (v != 0.0) {
        C.col_.push_back(c);
        C.val_.push_back(v);
      }
    }
    C.row_ptr_[static_cast<std::size_t>(i) + 1] = static_cast<int>(C.col_.size());
  }
  if (drop_tol > 0.0) {
    double m = 0.0;
    for (double v : C.val_) m = std::max(m, std::abs(v));
    const double cut = drop_tol * m;
    SparseOperator D;
    D.n_ = n;
    D.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
      for (int k = C.row_ptr_[static_cast<std::size_t>(i)]; k < C.row_ptr_[static_cast<std::size_t>(i) + 1]; ++k) {
        if (std::abs(C.val_[static_cast<std::size_t>(k)]) > cut) {
          D.col_.push_back(C.col_[static_cast<std::size_t>(k)]);
          D.val_.push_back(C.val_[static_cast<std::size_t>(k)]);
        }
      }
      D.row_ptr_[static_cast<std::size_t>(i) + 1] = static_cast<int>(D.col_.size());
    }
    D.rebuild_entries();
    return D;
  }
  C.rebuild_entries();
  return C;
}

SparseOperator scale(const SparseOperator& A, double s) {
  return linear_combination(s, A, 0.0, A);
}

SparseOperator scale_columns(const SparseOperator& A, std::span<const double> d) {
  if (static_cast<int>(d.size()) != A.size())
    throw std::invalid_argument("scale_columns: size mismatch");
  std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(A.size()));
  for (int i = 0; i < A.size(); ++i) {
    auto& r = rows[static_cast<std::size_t>(i)];
    for (const auto& e : A.row(i)) r.push_back({e.col, e.value * d[static_cast<std::size_t>(e.col)]});
  }
  return SparseOperator::from_rows(A.size(), std::move(rows));
}

double max_abs_diff(const SparseOperator& A, const SparseOperator& B) {
  if (A.size() != B.size()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (int i = 0; i < A.size(); ++i) {
    const auto ra = A.row(i);
    const auto rb = B.row(i);
    std::size_t ka = 0, kb = 0;
    while (ka < ra.size() || kb < rb.size()) {
      double d;
      if (kb >= rb.size() || (ka < ra.size() && ra[ka].col < rb[kb].col)) {
        d = ra[ka++].value;
      } else if (ka >= ra.size() || rb[kb].col < ra[ka].col) {
        d = rb[kb++].value;
      } else {
        d = ra[ka].value - rb[kb].value;
        ++ka;
        ++kb;
      }
      m = std::max(m, std::abs(d));
    }
  }
  return m;
}

bool pattern_superset(const SparseOperator& A, const SparseOperator& B) {
  if (A.size() != B.size()) return false;
  for (int i = 0; i < B.size(); ++i) {
    const auto ra = A.row(i);
    std::size_t ka = 0;
    for (const auto& eb : B.row(i)) {
      while (ka < ra.size() && ra[ka].col < eb.col) ++ka;
      if (ka >= ra.size() || ra[ka].col != eb.col) return false;
    }
  }
  return true;
}

}  // namespace monoq2
