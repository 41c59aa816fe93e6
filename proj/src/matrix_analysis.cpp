#include "monoq2/matrix_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "monoq2/linsolve.hpp"

namespace monoq2 {

namespace {
constexpr std::size_t kMaxReported = 32;
}

bool is_z_pattern(const SparseOperator& A) {
  for (int i = 0; i < A.size(); ++i)
    for (const auto& e : A.row(i))
      if (e.col != i && e.value > 0.0) return false;
  return true;
}

ConnectivityGraph connectivity_graph(const SparseOperator& A) {
  ConnectivityGraph g;
  g.n = A.size();
  std::vector<int> indeg(static_cast<std::size_t>(g.n), 0);
  for (int i = 0; i < g.n; ++i)
    for (const auto& e : A.row(i))
      if (e.col != i) {
        ++indeg[static_cast<std::size_t>(e.col)];
        ++g.edge_count;
      }
  g.rev_ptr.assign(static_cast<std::size_t>(g.n) + 1, 0);
  for (int v = 0; v < g.n; ++v)
    g.rev_ptr[static_cast<std::size_t>(v) + 1] = g.rev_ptr[static_cast<std::size_t>(v)] + indeg[static_cast<std::size_t>(v)];
  g.rev_adj.resize(g.edge_count);
  std::vector<int> fill(g.rev_ptr.begin(), g.rev_ptr.end() - 1);
  for (int i = 0; i < g.n; ++i)
    for (const auto& e : A.row(i))
      if (e.col != i) g.rev_adj[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.col)]++)] = i;
  return g;
}

bool connects(const ConnectivityGraph& g, std::span<const int> from, std::span<const int> to) {
  if (from.empty()) return true;
  std::vector<char> reached(static_cast<std::size_t>(g.n), 0);
  std::deque<int> queue;
  for (int v : to) {
    if (v < 0 || v >= g.n) throw std::out_of_range("connects: target index out of range");
    if (!reached[static_cast<std::size_t>(v)]) {
      reached[static_cast<std::size_t>(v)] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int k = g.rev_ptr[static_cast<std::size_t>(v)]; k < g.rev_ptr[static_cast<std::size_t>(v) + 1]; ++k) {
      const int u = g.rev_adj[static_cast<std::size_t>(k)];
      if (!reached[static_cast<std::size_t>(u)]) {
        reached[static_cast<std::size_t>(u)] = 1;
        queue.push_back(u);
      }
    }
  }
  for (int v : from) {
    if (v < 0 || v >= g.n) throw std::out_of_range("connects: source index out of range");
    if (!reached[static_cast<std::size_t>(v)]) return false;
  }
  return true;
}

SignSets classify_signs(std::span<const double> v, double tol) {
  SignSets s;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    const double x = v[static_cast<std::size_t>(i)];
    if (x > tol)
      s.positive.push_back(i);
    else if (x < -tol)
      s.negative.push_back(i);
    else
      s.zero.push_back(i);
  }
  return s;
}

WcddReport is_m_matrix_wcdd(const SparseOperator& A, double tol_factor) {
  WcddReport rep;
  rep.z_pattern = is_z_pattern(A);
  rep.positive_diagonal = true;
  rep.row_sums_nonnegative = true;
  rep.min_row_sum_normalized = 0.0;
  const int n = A.size();
  std::vector<int> zero_rows, pos_rows;
  bool first = true;
  for (int i = 0; i < n; ++i) {
    double diag = 0.0, sum = 0.0, scale = 0.0;
    for (const auto& e : A.row(i)) {
      if (e.col == i) diag = e.value;
      sum += e.value;
      scale = std::max(scale, std::abs(e.value));
    }
    if (!(diag > 0.0)) {
      rep.positive_diagonal = false;
      if (rep.failing_rows.size() < kMaxReported) rep.failing_rows.push_back(i);
    }
    const double tol = tol_factor * scale;
    const double normalized = (scale > 0.0) ? sum / scale : sum;
    if (first || normalized < rep.min_row_sum_normalized) {
      rep.min_row_sum_normalized = normalized;
      first = false;
    }
    if (sum < -tol) {
      rep.row_sums_nonnegative = false;
      if (rep.failing_rows.size() < kMaxReported) rep.failing_rows.push_back(i);
    } else if (sum > tol) {
      pos_rows.push_back(i);
    } else {
      zero_rows.push_back(i);
    }
  }
  rep.has_positive_row_sum = !pos_rows.empty();
  rep.chained = false;
  if (rep.has_positive_row_sum) {
    const auto g = connectivity_graph(A);
    rep.chained = connects(g, zero_rows, pos_rows);
  }
  rep.pass = rep.z_pattern && rep.positive_diagonal && rep.row_sums_nonnegative &&
             rep.has_positive_row_sum && rep.chained;
  return rep;
}

namespace {

// Entrywise test A_a^+ <= A^z A_d^{-1} A^s. Returns the worst normalized
// margin over the support of A_a^+ and the failing positions.
struct Cond2Result {
  bool pass = true;
  bool vacuous = true;
  double worst_margin = 0.0;
  std::vector<std::pair<int, int>> failing;
};

Cond2Result check_cond2(const Splitting& sp, double tol_factor) {
  Cond2Result res;
  std::vector<double> dinv(static_cast<std::size_t>(sp.a_d.size()), 0.0);
  for (int i = 0; i < sp.a_d.size(); ++i) {
    const double d = sp.a_d.coeff(i, i);
    if (!(d > 0.0)) throw std::runtime_error("lorenz_check: nonpositive diagonal entry in A_d");
    dinv[static_cast<std::size_t>(i)] = 1.0 / d;
  }
  const SparseOperator prod = multiply(scale_columns(sp.a_z, dinv), sp.a_s);
  const double scale = std::max(sp.a_plus.max_abs(), prod.max_abs());
  const double tol = tol_factor * scale;
  bool first = true;
  for (int i = 0; i < sp.a_plus.size(); ++i) {
    for (const auto& e : sp.a_plus.row(i)) {
      res.vacuous = false;
      const double gap = prod.coeff(i, e.col) - e.value;
      const double normalized = (scale > 0.0) ? gap / scale : gap;
      if (first || normalized < res.worst_margin) {
        res.worst_margin = normalized;
        first = false;
      }
      if (gap < -tol) {
        res.pass = false;
        if (res.failing.size() < kMaxReported) res.failing.emplace_back(i, e.col);
      }
    }
  }
  return res;
}

}  // namespace

LorenzReport lorenz_check(const SparseOperator& op, const LorenzOptions& opts) {
  if (!op.meta())
    throw std::invalid_argument("lorenz_check: operator has no grid metadata (splitting undefined)");
  LorenzReport rep;

  double eps = 0.5;
  if (opts.epsilon) {
    eps = *opts.epsilon;
    if (!(eps > 0.0 && eps < 1.0))
      throw std::invalid_argument("lorenz_check: epsilon must lie in (0,1)");
    rep.epsilon_used = eps;
  } else {
    rep.epsilon_searched = true;
    double lo = 0.0, hi = 1.0;
    for (int step = 0; step < 40; ++step) {
      const double mid = 0.5 * (lo + hi);
      const Splitting sp = split_operator(op, mid);
      const Cond2Result c2 = check_cond2(sp, opts.tol_factor);
      if (c2.pass)
        lo = mid;
      else
        hi = mid;
    }
    if (lo > 0.0) {
      eps = lo;
      rep.epsilon_used = eps;
    } else {
      eps = hi;  // smallest probe; report the failure margins there
    }
  }

  const Splitting sp = split_operator(op, eps);
  const Cond2Result c2 = check_cond2(sp, opts.tol_factor);
  rep.cond2_pass = c2.pass;
  rep.cond2_vacuous = c2.vacuous;
  rep.cond2_worst_margin = c2.worst_margin;
  rep.cond2_failing = c2.failing;

  rep.cond1 = is_m_matrix_wcdd(add(sp.a_d, sp.a_z), opts.tol_factor);
  rep.cond1_pass = rep.cond1.pass;

  bool c_positive;
  if (opts.c_strictly_positive) {
    c_positive = *opts.c_strictly_positive;
  } else {
    // Interior row sums of the full operator equal the c samples.
    const auto sums = op.apply(std::vector<double>(static_cast<std::size_t>(op.size()), 1.0));
    const double tol = opts.tol_factor * op.max_abs();
    c_positive = true;
    for (int i = 0; i < op.size(); ++i)
      if (!op.meta()->is_boundary_index(i) && !(sums[static_cast<std::size_t>(i)] > tol)) {
        c_positive = false;
        break;
      }
  }
  if (c_positive) {
    rep.cond3_pass = true;
    rep.cond3_mode = "c>0";
  } else {
    rep.cond3_mode = "pattern+connectivity";
    const SparseOperator a_minus = add(sp.a_z, sp.a_s);
    const bool pattern_ok = pattern_superset(sp.a_z, a_minus);
    const auto ones = std::vector<double>(static_cast<std::size_t>(op.size()), 1.0);
    const auto av = op.apply(ones);
    const auto sets = classify_signs(av, opts.tol_factor * op.max_abs());
    const bool conn = connects(connectivity_graph(sp.a_z), sets.zero, sets.positive);
    rep.cond3_pass = pattern_ok && conn;
  }

  rep.overall = rep.cond1_pass && rep.cond2_pass && rep.cond3_pass && rep.epsilon_used.has_value();
  return rep;
}

InverseReport inverse_min_entries(const SparseOperator& op, const InverseOptions& opts) {
  if (op.size() > opts.cap)
    throw std::invalid_argument("inverse_min_entries: dimension " + std::to_string(op.size()) +
                                " exceeds cap " + std::to_string(opts.cap));
  const BandedLU lu = BandedLU::factor(op);
  const auto mask = op.interior_mask();
  const InverseScan scan = scan_inverse_columns(lu, mask, opts.parallel);
  InverseReport rep;
  rep.n = op.size();
  rep.min_value = scan.min_value;
  rep.min_row = scan.min_row;
  rep.min_col = scan.min_col;
  rep.max_abs = scan.max_abs;
  if (scan.has_interior) {
    rep.has_interior = true;
    rep.interior_min = scan.interior_min;
    rep.interior_row = scan.interior_row;
    rep.interior_col = scan.interior_col;
  } else {
    // No grid metadata distinguishes boundary rows; the interior block is
    // the whole matrix.
    rep.has_interior = true;
    rep.interior_min = scan.min_value;
    rep.interior_row = scan.min_row;
    rep.interior_col = scan.min_col;
  }
  rep.threshold = opts.threshold_override ? *opts.threshold_override
                                          : opts.threshold_factor * scan.max_abs;
  rep.nonnegative = rep.min_value >= -rep.threshold;
  return rep;
}

DmpReport dmp_certify(const SparseOperator& op, const InverseOptions& opts) {
  DmpReport rep;
  rep.inverse = inverse_min_entries(op, opts);
  rep.row_sums_nonnegative = true;
  bool first = true;
  for (int i = 0; i < op.size(); ++i) {
    double sum = 0.0, scale = 0.0;
    for (const auto& e : op.row(i)) {
      sum += e.value;
      scale = std::max(scale, std::abs(e.value));
    }
    const double normalized = (scale > 0.0) ? sum / scale : sum;
    if (first || normalized < rep.min_row_sum_normalized) {
      rep.min_row_sum_normalized = normalized;
      first = false;
    }
    if (sum < -1e-13 * scale) rep.row_sums_nonnegative = false;
  }
  rep.pass = rep.inverse.nonnegative && rep.row_sums_nonnegative;
  return rep;
}

SparseOperator fd2_laplacian_1d(int n, double h) {
  const double h2 = h * h;
  std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(n) + 2);
  for (int i = 0; i <= n + 1; ++i) {
    auto& r = rows[static_cast<std::size_t>(i)];
    if (i == 0 || i == n + 1) {
      r.push_back({i, 1.0});
    } else {
      r.push_back({i - 1, -1.0 / h2});
      r.push_back({i, 2.0 / h2});
      r.push_back({i + 1, -1.0 / h2});
    }
  }
  return SparseOperator::from_rows(n + 2, std::move(rows));
}

SparseOperator fd2_laplacian_2d(int nx, int ny, double h) {
  const double h2 = h * h;
  const int npx = nx + 2;
  const int N = npx * (ny + 2);
  std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(N));
  for (int j = 0; j <= ny + 1; ++j)
    for (int i = 0; i <= nx + 1; ++i) {
      const int g = j * npx + i;
      auto& r = rows[static_cast<std::size_t>(g)];
      if (i == 0 || i == nx + 1 || j == 0 || j == ny + 1) {
        r.push_back({g, 1.0});
      } else {
        r.push_back({g - npx, -1.0 / h2});
        r.push_back({g - 1, -1.0 / h2});
        r.push_back({g, 4.0 / h2});
        r.push_back({g + 1, -1.0 / h2});
        r.push_back({g + npx, -1.0 / h2});
      }
    }
  return SparseOperator::from_rows(N, std::move(rows));
}

}  // namespace monoq2
