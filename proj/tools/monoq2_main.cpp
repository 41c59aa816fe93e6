#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "monoq2/assembly.hpp"
#include "monoq2/coefficient.hpp"
#include "monoq2/experiments.hpp"
#include "monoq2/factorization.hpp"
#include "monoq2/io.hpp"
#include "monoq2/matrix_analysis.hpp"
#include "monoq2/mesh_constraints.hpp"
#include "monoq2/quadrature.hpp"
#include "monoq2/threads.hpp"

using namespace monoq2;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerificationFailed = 2;

struct MeshFlag {
  int mx = 0, my = 0;  // finite element cells per axis (my = 0 in 1D)
};

MeshFlag parse_mesh(const std::string& text, int dim) {
  MeshFlag m;
  const auto xpos = text.find('x');
  if (dim == 1) {
    if (xpos != std::string::npos) throw CLI::ValidationError("--mesh", "1D mesh takes a single cell count");
    m.mx = std::stoi(text);
  } else {
    if (xpos == std::string::npos) throw CLI::ValidationError("--mesh", "2D mesh must look like MxN");
    m.mx = std::stoi(text.substr(0, xpos));
    m.my = std::stoi(text.substr(xpos + 1));
  }
  if (m.mx < 1 || (dim == 2 && m.my < 1)) throw CLI::ValidationError("--mesh", "cell counts must be positive");
  return m;
}

struct CoefFlag {
  std::string kind;  // const | smooth | random | file
  double a = 1.0, c = 0.0, d = 0.0;
  std::uint64_t seed = 1;
  std::string path;
};

CoefFlag parse_coef(const std::string& text) {
  CoefFlag f;
  const auto colon = text.find(':');
  f.kind = text.substr(0, colon);
  const std::string rest = (colon == std::string::npos) ? "" : text.substr(colon + 1);
  const auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
      const auto comma = s.find(',', start);
      out.push_back(s.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  };
  if (f.kind == "const") {
    const auto parts = split(rest);
    if (parts.empty() || parts[0].empty()) throw CLI::ValidationError("--coef", "const needs a value: const:a[,c]");
    f.a = std::stod(parts[0]);
    if (parts.size() > 1) f.c = std::stod(parts[1]);
  } else if (f.kind == "smooth") {
    if (rest.empty()) throw CLI::ValidationError("--coef", "smooth needs d: smooth:d");
    f.d = std::stod(rest);
  } else if (f.kind == "random") {
    const auto parts = split(rest);
    if (parts.empty() || parts[0].empty()) throw CLI::ValidationError("--coef", "random needs d: random:d[,seed]");
    f.d = std::stod(parts[0]);
    if (parts.size() > 1) f.seed = std::stoull(parts[1]);
  } else if (f.kind == "file") {
    if (rest.empty()) throw CLI::ValidationError("--coef", "file needs a path: file:PATH");
    f.path = rest;
  } else {
    throw CLI::ValidationError("--coef", "unknown kind '" + f.kind + "' (const|smooth|random|file)");
  }
  return f;
}

std::string describe(const CoefFlag& f) {
  switch (f.kind[0]) {
    case 'c': return "const a=" + std::to_string(f.a) + " c=" + std::to_string(f.c);
    case 's': return "smooth d=" + std::to_string(f.d) + " (a=1+d cos(pi x)cos(pi y), c=10)";
    case 'r': return "random uniform(" + std::to_string(f.d) + "," + std::to_string(f.d + 1.0) +
                     ") seed=" + std::to_string(f.seed) + " c=0";
    default: return "file " + f.path;
  }
}

CoefficientField1D make_coeff_1d(const Grid1D& grid, const CoefFlag& f) {
  if (f.kind == "const") return constant_coefficients(grid, f.a, f.c);
  if (f.kind == "smooth")
    return sample_coefficients(
        grid, [&](double x) { return 1.0 + f.d * std::cos(M_PI * x); }, [](double) { return 10.0; });
  if (f.kind == "random") return random_coefficients(grid, f.d, 1.0, 0.0, f.seed);
  std::ifstream in(f.path);
  if (!in) throw std::runtime_error("cannot open coefficient file '" + f.path + "'");
  nlohmann::json doc;
  in >> doc;
  CoefficientField1D out;
  out.a = doc.at("a").get<std::vector<double>>();
  out.c = doc.at("c").get<std::vector<double>>();
  validate(grid, out);
  return out;
}

CoefficientField2D make_coeff_2d(const Grid2D& grid, const CoefFlag& f) {
  if (f.kind == "const") return constant_coefficients(grid, f.a, f.c);
  if (f.kind == "smooth")
    return sample_coefficients(
        grid,
        [&](double x, double y) { return 1.0 + f.d * std::cos(M_PI * x) * std::cos(M_PI * y); },
        [](double, double) { return 10.0; });
  if (f.kind == "random") return random_coefficients(grid, f.d, 1.0, 0.0, f.seed);
  std::ifstream in(f.path);
  if (!in) throw std::runtime_error("cannot open coefficient file '" + f.path + "'");
  nlohmann::json doc;
  in >> doc;
  CoefficientField2D out;
  out.stride = grid.points_x();
  out.a = doc.at("a").get<std::vector<double>>();
  out.c = doc.at("c").get<std::vector<double>>();
  validate(grid, out);
  return out;
}

// The x-extent is [0,1]; the y-extent follows from the mesh shape so both
// axes share one h (the study domain [0,1]x[0,2] is the my = 2 mx case).
Grid2D grid_for(const MeshFlag& mesh) {
  const double ylen = static_cast<double>(mesh.my) / mesh.mx;
  return build_grid_2d(2 * mesh.mx - 1, 2 * mesh.my - 1, 0.0, 1.0, 0.0, ylen);
}

struct AssembledProblem {
  int dim = 2;
  SparseOperator op;
  std::optional<Grid1D> grid1;
  std::optional<Grid2D> grid2;
  std::optional<CoefficientField1D> coeff1;
  std::optional<CoefficientField2D> coeff2;
};

AssembledProblem assemble_from_flags(int dim, const std::string& mesh_text,
                                     const std::string& coef_text, bool scale) {
  AssembledProblem prob;
  prob.dim = dim;
  const MeshFlag mesh = parse_mesh(mesh_text, dim);
  const CoefFlag coef = parse_coef(coef_text);
  if (dim == 1) {
    prob.grid1 = build_grid_1d(2 * mesh.mx - 1, 0.0, 1.0);
    prob.coeff1 = make_coeff_1d(*prob.grid1, coef);
    prob.op = assemble_1d_variable(*prob.grid1, *prob.coeff1);
    std::printf("config: dim=1 mesh=%d cells (n=%d, h=%.6g) coef=%s scale-boundary=%s\n", mesh.mx,
                prob.grid1->n, prob.grid1->h, describe(coef).c_str(), scale ? "yes" : "no");
  } else {
    prob.grid2 = grid_for(mesh);
    prob.coeff2 = make_coeff_2d(*prob.grid2, coef);
    prob.op = assemble_2d_variable(*prob.grid2, *prob.coeff2);
    std::printf("config: dim=2 mesh=%dx%d cells (nx=%d ny=%d, h=%.6g) coef=%s scale-boundary=%s\n",
                mesh.mx, mesh.my, prob.grid2->nx, prob.grid2->ny, prob.grid2->h,
                describe(coef).c_str(), scale ? "yes" : "no");
  }
  if (scale) prob.op = scale_boundary_rows(prob.op);
  return prob;
}

void print_wcdd(const char* label, const WcddReport& rep) {
  std::printf("  %s: %s (z=%d diag>0=%d rowsums>=0=%d chained=%d)\n", label,
              rep.pass ? "PASS" : "FAIL", rep.z_pattern, rep.positive_diagonal,
              rep.row_sums_nonnegative, rep.chained);
}

int run_verify(const AssembledProblem& prob, bool do_lorenz, bool do_inverse, bool do_dmp,
               std::optional<double> epsilon, const std::string& json_path) {
  bool all_pass = true;
  if (do_lorenz) {
    LorenzOptions opts;
    opts.epsilon = epsilon;
    const LorenzReport rep = lorenz_check(prob.op, opts);
    std::printf("lorenz: %s\n", rep.overall ? "PASS" : "FAIL");
    print_wcdd("cond1 (A_d + A^z M-matrix)", rep.cond1);
    std::printf("  cond2 (A_a+ <= A^z A_d^-1 A^s): %s, worst margin %.3e%s\n",
                rep.cond2_pass ? "PASS" : "FAIL", rep.cond2_worst_margin,
                rep.cond2_vacuous ? " (no positive entries)" : "");
    std::printf("  cond3 (%s): %s\n", rep.cond3_mode.c_str(), rep.cond3_pass ? "PASS" : "FAIL");
    if (rep.epsilon_used) std::printf("  epsilon = %.12g%s\n", *rep.epsilon_used,
                                      rep.epsilon_searched ? " (found by bisection)" : "");
    if (!json_path.empty()) append_json_line(json_path, to_json(rep));
    all_pass = all_pass && rep.overall;
  }
  if (do_inverse) {
    const InverseReport rep = inverse_min_entries(prob.op);
    std::printf("inverse: %s  min %.6e at (%d,%d)", rep.nonnegative ? "PASS" : "FAIL",
                rep.min_value, rep.min_row, rep.min_col);
    if (rep.has_interior)
      std::printf("  interior min %.6e at (%d,%d)", rep.interior_min, rep.interior_row,
                  rep.interior_col);
    std::printf("  threshold %.3e\n", rep.threshold);
    if (!json_path.empty()) append_json_line(json_path, to_json(rep));
    all_pass = all_pass && rep.nonnegative;
  }
  if (do_dmp) {
    const DmpReport rep = dmp_certify(prob.op);
    std::printf("dmp: %s (inverse %s, row sums %s)\n", rep.pass ? "PASS" : "FAIL",
                rep.inverse.nonnegative ? "ok" : "negative entries",
                rep.row_sums_nonnegative ? "ok" : "negative");
    if (!json_path.empty()) append_json_line(json_path, to_json(rep));
    all_pass = all_pass && rep.pass;
  }
  return all_pass ? kExitOk : kExitVerificationFailed;
}

void print_constraint(const ConstraintReport& rep) {
  std::printf("constraint %s: %s  points=%d", rep.id.c_str(), rep.pass ? "PASS" : "FAIL",
              rep.points_checked);
  if (rep.worst_margin) std::printf("  worst margin %.6e", *rep.worst_margin);
  std::printf("\n");
  for (const auto& f : rep.failures)
    std::printf("  fail at (%d,%d) [%s], margin %.3e\n", f.i, f.j, f.which.c_str(), f.margin);
}

int run_constraints(const AssembledProblem& prob, const std::string& which,
                    const std::string& json_path) {
  ConstraintReport rep;
  if (prob.dim == 1) {
    const auto& grid = *prob.grid1;
    const auto& coeff = *prob.coeff1;
    if (which == "samples") {
      rep = check_1d_samples(grid, coeff);
    } else if (which == "thm43" || which == "thm44") {
      // Bounds taken from the node samples; exact for fields that are
      // defined by their samples, a convenience estimate otherwise.
      std::vector<CellBounds> bounds(static_cast<std::size_t>(grid.num_cells()));
      for (int k = 0; k < grid.num_cells(); ++k) {
        CellBounds b;
        b.a_min = std::min({coeff.a_at(2 * k), coeff.a_at(2 * k + 1), coeff.a_at(2 * k + 2)});
        b.a_max = std::max({coeff.a_at(2 * k), coeff.a_at(2 * k + 1), coeff.a_at(2 * k + 2)});
        b.da_max = std::max(std::abs(coeff.a_at(2 * k + 1) - coeff.a_at(2 * k)),
                            std::abs(coeff.a_at(2 * k + 2) - coeff.a_at(2 * k + 1))) /
                   grid.h;
        b.has_da = true;
        b.d2a_max = (coeff.a_at(2 * k) - 2.0 * coeff.a_at(2 * k + 1) + coeff.a_at(2 * k + 2)) /
                    (grid.h * grid.h);
        b.has_d2a = true;
        bounds[static_cast<std::size_t>(k)] = b;
      }
      rep = check_1d_theorem(grid, coeff, bounds,
                             which == "thm43" ? Variant1D::Thm43Lambda : Variant1D::Thm44);
    } else {
      throw CLI::ValidationError("--which", "1D supports samples|thm43|thm44");
    }
  } else {
    const auto& grid = *prob.grid2;
    const auto& coeff = *prob.coeff2;
    if (which == "samples") {
      rep = check_2d_samples(grid, coeff);
    } else if (which == "thm46") {
      rep = check_2d_theorem(grid, coeff, region_bounds_from_samples(grid, coeff), Variant2D::Thm46);
    } else if (which == "thm47") {
      bool const_a = true;
      for (std::size_t k = 1; k < coeff.a.size(); ++k)
        if (coeff.a[k] != coeff.a[0]) const_a = false;
      if (!const_a) throw CLI::ValidationError("--which", "thm47 via the CLI expects a constant a field");
      const double a0 = coeff.a[0];
      rep = check_2d_theorem(
          grid, coeff,
          [a0](int, int) {
            RegionBounds b;
            b.a_min = b.a_max = a0;
            return b;
          },
          Variant2D::Thm47ConstantA);
    } else {
      throw CLI::ValidationError("--which", "2D supports samples|thm46|thm47");
    }
  }
  print_constraint(rep);
  if (!json_path.empty()) append_json_line(json_path, to_json(rep));
  return rep.pass ? kExitOk : kExitVerificationFailed;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    out.push_back(std::stod(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<MeshShape> parse_mesh_list(const std::string& text) {
  std::vector<MeshShape> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const MeshFlag m = parse_mesh(text.substr(start, comma - start), 2);
    out.push_back({m.mx, m.my});
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void print_table(const ResultTable& table) {
  std::printf("%-8s %-10s %-20s %-14s %-14s %-9s %-10s %s\n", "mesh", "param", "seed", "min_bar",
              "min_interior", "class", "certified", "seconds");
  for (const auto& c : table.cells)
    std::printf("%-8s %-10.4g %-20llu %-14.4e %-14.4e %-9s %-10s %.3f\n", c.mesh.label().c_str(),
                c.param, static_cast<unsigned long long>(c.seed), c.min_bar, c.min_interior,
                c.min_bar_class.c_str(), c.constraint_pass ? "yes" : "no", c.seconds);
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap_from_env();
  CLI::App app{"Fourth-order C0-Q2 finite difference assembly and monotonicity certification"};
  app.require_subcommand(1);

  int dim = 2;
  std::string mesh_text, coef_text = "const:1,0", in_path, out_path, json_path, which = "samples";
  bool scale_boundary = false;

  auto* assemble = app.add_subcommand("assemble", "assemble the full operator and export it");
  assemble->add_option("--dim", dim, "1 or 2")->check(CLI::IsMember({1, 2}));
  assemble->add_option("--mesh", mesh_text, "finite element cells: M (1D) or MxN (2D)")->required();
  assemble->add_option("--coef", coef_text, "const:a[,c] | smooth:d | random:d[,seed] | file:PATH");
  assemble->add_flag("--scale-boundary", scale_boundary, "replace boundary 1s by 1/h^2");
  assemble->add_option("--out", out_path, "Matrix Market output path")->required();

  bool do_lorenz = false, do_inverse = false, do_dmp = false;
  double epsilon_flag = 0.0;
  auto* verify = app.add_subcommand("verify", "run monotonicity certificates");
  verify->add_option("--dim", dim, "1 or 2")->check(CLI::IsMember({1, 2}));
  verify->add_option("--mesh", mesh_text, "finite element cells: M (1D) or MxN (2D)");
  verify->add_option("--coef", coef_text, "coefficient spec");
  verify->add_option("--in", in_path, "read the operator from a Matrix Market file instead");
  verify->add_flag("--scale-boundary", scale_boundary, "rescale boundary rows before checking");
  verify->add_flag("--lorenz", do_lorenz, "three-condition factorization certificate");
  verify->add_flag("--inverse", do_inverse, "exact inverse minima");
  verify->add_flag("--dmp", do_dmp, "discrete maximum principle certificate");
  verify->add_option("--epsilon", epsilon_flag, "fixed splitting epsilon in (0,1); default: search");
  verify->add_option("--json", json_path, "append JSON-line reports to this path");

  auto* constraints = app.add_subcommand("constraints", "closed-form mesh-constraint checks");
  constraints->add_option("--dim", dim, "1 or 2")->check(CLI::IsMember({1, 2}));
  constraints->add_option("--mesh", mesh_text, "finite element cells")->required();
  constraints->add_option("--coef", coef_text, "coefficient spec");
  constraints->add_option("--which", which, "samples|thm43|thm44|thm46|thm47");
  constraints->add_option("--json", json_path, "append JSON-line reports to this path");

  std::string out_prefix;
  auto* factorize = app.add_subcommand("factorize", "explicit M-matrix factorization of the Laplacian");
  factorize->add_option("--dim", dim, "1 or 2")->check(CLI::IsMember({1, 2}));
  factorize->add_option("--mesh", mesh_text, "finite element cells")->required();
  factorize->add_option("--out-prefix", out_prefix, "write factors to PREFIX.first.mtx / PREFIX.second.mtx");

  std::string table_id = "smooth", params_text, meshes_text = "2x4,4x8,8x16,16x32";
  std::uint64_t seed = 1;
  auto* table = app.add_subcommand("table", "reproduce a study table");
  table->add_option("--id", table_id, "smooth|random|heat")->check(CLI::IsMember({"smooth", "random", "heat"}));
  table->add_option("--params", params_text, "comma list: d values (smooth/random) or dt/h^2 ratios (heat)");
  table->add_option("--meshes", meshes_text, "comma list of MxN element meshes");
  table->add_option("--seed", seed, "base seed (random)");
  table->add_option("--out", out_path, "CSV output path");

  std::string ratios_text = "0.15:1.0:12";
  auto* sweep = app.add_subcommand("sweep", "min-entry curve vs dt/h^2 on one mesh");
  sweep->add_option("--mesh", mesh_text, "element mesh MxN")->required();
  sweep->add_option("--ratios", ratios_text, "lo:hi:n");
  sweep->add_option("--out", out_path, "two-column data file for the curve");

  std::string case_name = "sine2d";
  std::string conv_meshes;
  auto* converge = app.add_subcommand("converge", "manufactured-solution convergence study");
  converge->add_option("--case", case_name, "sine2d|sine1d|quadratic")
      ->check(CLI::IsMember({"sine2d", "sine1d", "quadratic"}));
  converge->add_option("--meshes", conv_meshes, "comma list of cells per axis (default 2,4,8,16)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*assemble) {
      const AssembledProblem prob = assemble_from_flags(dim, mesh_text, coef_text, scale_boundary);
      write_matrix_market(prob.op, out_path);
      std::printf("wrote %s (%d x %d, %zu nonzeros)\n", out_path.c_str(), prob.op.size(),
                  prob.op.size(), prob.op.nnz());
      return kExitOk;
    }
    if (*verify) {
      const bool explicit_lorenz = verify->count("--lorenz") > 0;
      if (!do_lorenz && !do_inverse && !do_dmp) do_lorenz = do_inverse = do_dmp = true;
      std::optional<double> eps;
      if (verify->count("--epsilon")) eps = epsilon_flag;
      if (!in_path.empty()) {
        if (explicit_lorenz)
          throw std::runtime_error("--lorenz needs an assembled operator (grid metadata is absent in files)");
        std::printf("config: operator from %s scale-boundary=%s\n", in_path.c_str(),
                    scale_boundary ? "yes" : "no");
        AssembledProblem prob;
        prob.op = read_matrix_market(in_path);
        if (scale_boundary) prob.op = scale_boundary_rows(prob.op);
        return run_verify(prob, false, do_inverse, do_dmp, eps, json_path);
      }
      if (mesh_text.empty()) throw CLI::ValidationError("verify", "need --mesh/--coef or --in FILE");
      const AssembledProblem prob = assemble_from_flags(dim, mesh_text, coef_text, scale_boundary);
      return run_verify(prob, do_lorenz, do_inverse, do_dmp, eps, json_path);
    }
    if (*constraints) {
      const AssembledProblem prob = assemble_from_flags(dim, mesh_text, coef_text, false);
      return run_constraints(prob, which, json_path);
    }
    if (*factorize) {
      const MeshFlag mesh = parse_mesh(mesh_text, dim);
      FactorPair pair;
      SparseOperator target;
      if (dim == 1) {
        const Grid1D grid = build_grid_1d(2 * mesh.mx - 1, 0.0, 1.0);
        std::printf("config: dim=1 mesh=%d cells (n=%d)\n", mesh.mx, grid.n);
        pair = factor_1d_laplacian(grid);
        target = assemble_1d_laplacian(grid);
      } else {
        const Grid2D grid = grid_for(mesh);
        std::printf("config: dim=2 mesh=%dx%d cells (nx=%d ny=%d)\n", mesh.mx, mesh.my, grid.nx,
                    grid.ny);
        pair = factor_2d_laplacian(grid);
        target = assemble_2d_laplacian(grid);
      }
      const FactorizationReport rep = verify_factorization(target, pair);
      std::printf("factorization: %s  residual %.3e\n", rep.pass ? "PASS" : "FAIL", rep.residual);
      print_wcdd("first factor", rep.first_m_matrix);
      print_wcdd("second factor", rep.second_m_matrix);
      if (!out_prefix.empty()) {
        write_matrix_market(pair.first, out_prefix + ".first.mtx");
        write_matrix_market(pair.second, out_prefix + ".second.mtx");
        std::printf("wrote %s.first.mtx and %s.second.mtx\n", out_prefix.c_str(), out_prefix.c_str());
      }
      return rep.pass ? kExitOk : kExitVerificationFailed;
    }
    if (*table) {
      const auto meshes = parse_mesh_list(meshes_text);
      ResultTable result;
      if (table_id == "smooth") {
        const std::string ptext = params_text.empty() ? "0.5,0.9,0.99" : params_text;
        const auto params = parse_list(ptext);
        std::printf("config: table smooth d={%s} meshes=%s\n", ptext.c_str(), meshes_text.c_str());
        result = run_smooth_coefficient(params, meshes);
      } else if (table_id == "random") {
        const std::string ptext = params_text.empty() ? "0.1,1,10" : params_text;
        const auto params = parse_list(ptext);
        std::printf("config: table random d={%s} meshes=%s seed=%llu\n", ptext.c_str(),
                    meshes_text.c_str(), static_cast<unsigned long long>(seed));
        result = run_random_coefficient(params, meshes, seed);
      } else {
        const std::string ptext = params_text.empty() ? "1.5,0.5,0.25" : params_text;
        const auto params = parse_list(ptext);
        std::printf("config: table heat ratios={%s} meshes=%s\n", ptext.c_str(), meshes_text.c_str());
        result = run_heat_backward_euler(params, meshes);
      }
      print_table(result);
      if (!out_path.empty()) {
        write_csv(out_path, result.csv_header(), result.csv_rows());
        std::printf("wrote %s\n", out_path.c_str());
      }
      return kExitOk;
    }
    if (*sweep) {
      const MeshFlag mesh = parse_mesh(mesh_text, 2);
      double lo = 0.0, hi = 0.0;
      int npoints = 0;
      if (std::sscanf(ratios_text.c_str(), "%lf:%lf:%d", &lo, &hi, &npoints) != 3)
        throw CLI::ValidationError("--ratios", "expected lo:hi:n");
      std::printf("config: sweep mesh=%dx%d ratios=%g..%g (%d points)\n", mesh.mx, mesh.my, lo, hi,
                  npoints);
      const SweepResult res = sweep_dt_ratio({mesh.mx, mesh.my}, lo, hi, npoints);
      std::printf("%-10s %-14s %-14s\n", "ratio", "min_bar", "min_interior");
      for (const auto& p : res.curve)
        std::printf("%-10.5f %-14.4e %-14.4e\n", p.ratio, p.min_bar, p.min_interior);
      if (res.found_sign_change)
        std::printf("sign change of min(Lbar^-1) near dt/h^2 = %.4f\n", res.sign_change_ratio);
      else
        std::printf("no sign change inside the sweep range\n");
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << "# ratio min_bar min_interior\n";
        for (const auto& p : res.curve)
          out << p.ratio << ' ' << p.min_bar << ' ' << p.min_interior << '\n';
        std::printf("wrote %s\n", out_path.c_str());
      }
      return kExitOk;
    }
    if (*converge) {
      const ManufacturedCase mc = case_name == "sine1d"   ? case_sine_1d()
                                  : case_name == "sine2d" ? case_sine_2d()
                                                          : case_quadratic_2d();
      std::vector<int> cells;
      if (conv_meshes.empty()) {
        cells = (mc.dim == 1) ? std::vector<int>{4, 8, 16, 32} : std::vector<int>{2, 4, 8, 16};
      } else {
        for (double v : parse_list(conv_meshes)) cells.push_back(static_cast<int>(v));
      }
      std::printf("config: converge case=%s meshes=", case_name.c_str());
      for (int m : cells) std::printf("%d ", m);
      std::printf("\n%-8s %-12s %-14s %-8s\n", "cells", "h", "max_error", "order");
      const ConvergenceTable t = convergence_study(mc, cells);
      for (const auto& row : t.rows)
        std::printf("%-8d %-12.6g %-14.6e %-8.3f\n", row.cells_per_axis, row.h, row.max_error,
                    row.observed_order);
      return kExitOk;
    }
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitOk;
}
