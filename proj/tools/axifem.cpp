// Command-line front end: mesh export, mixed convergence tables, multigrid
// contraction rates and structural checks.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "axifem/error.hpp"
#include "axifem/mixed.hpp"
#include "axifem/multigrid.hpp"
#include "axifem/verify.hpp"

namespace {

using namespace axifem;

struct UsageError : Error {
  using Error::Error;
};

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << text;
}

void check_level(int level, int cap, const char* what) {
  if (level < 1 || level > cap) {
    throw UsageError(std::string(what) + " must lie in [1, " + std::to_string(cap) + "], got " + std::to_string(level));
  }
}

FourierMode checked_mode(int k) {
  if (k == 0) throw UsageError("--mode must satisfy |k| >= 1");
  return FourierMode(k);
}

struct MeshArgs {
  std::string domain = "square";
  int level = 1;
  std::string out;
};

int run_mesh(const MeshArgs& a, int cap) {
  check_level(a.level, cap, "--level");
  const MeshHierarchy h(parse_domain(a.domain), a.level);
  emit(mesh_to_json(h.finest()) + "\n", a.out);
  return 0;
}

struct MixedArgs {
  std::string domain = "square";
  int mode = 1;
  int max_level = 8;
  std::string out;
};

int run_mixed(const MixedArgs& a, int cap) {
  check_level(a.max_level, cap, "--max-level");
  const FourierMode k = checked_mode(a.mode);
  const auto rows = error_table(parse_domain(a.domain), k, a.max_level);
  emit(mixed_csv(rows), a.out);
  std::ostream& log = a.out.empty() ? std::cerr : std::cout;
  for (const auto& r : rows) {
    char buf[160];
    if (std::isnan(r.rate_z)) {
      std::snprintf(buf, sizeof buf, "level %d  z %.4e  p %.4e  PiSp %.4e", r.level, r.err_z, r.err_p, r.err_pis);
    } else {
      std::snprintf(buf, sizeof buf, "level %d  z %.4e (%.2f)  p %.4e (%.2f)  PiSp %.4e (%.2f)", r.level, r.err_z,
                    r.rate_z, r.err_p, r.rate_p, r.err_pis, r.rate_pis);
    }
    log << buf << '\n';
  }
  return 0;
}

struct MgArgs {
  std::string domain = "square";
  std::vector<int> modes{1};
  int max_level = 0;
  double tol = 1e-7;
  std::uint64_t seed = 7;
  std::string smoother = "multiplicative";
  std::string rate_stat = "arithmetic";
  int max_iters = 200;
  bool trace = false;
  bool dump_matrix = false;
  std::string out;
};

int run_mg(const MgArgs& a, int cap) {
  const Domain domain = parse_domain(a.domain);
  const int max_level = a.max_level > 0 ? a.max_level : (domain == Domain::Square ? 9 : 8);
  check_level(max_level, cap, "--max-level");
  if (!(a.tol > 0.0 && a.tol < 1.0)) throw UsageError("--tol must lie in (0, 1)");
  std::vector<FourierMode> modes;
  for (int m : a.modes) modes.push_back(checked_mode(m));
  MultigridOptions mg_options;
  mg_options.smoother = parse_smoother(a.smoother);
  SolveOptions solve;
  solve.tolerance = a.tol;
  solve.max_iterations = a.max_iters;
  solve.statistic = parse_rate_statistic(a.rate_stat);

  std::ostringstream csv;
  std::ostringstream trace;
  csv << "level";
  for (const FourierMode& k : modes) csv << ",rate_k" << k.value();
  csv << '\n';
  trace << "mode,level,iteration,norm\n";
  std::ostream& log = a.out.empty() ? std::cerr : std::cout;
  bool failed = false;

  for (int l = 2; l <= max_level; ++l) {
    const MeshHierarchy hierarchy(domain, l);
    csv << l;
    for (const FourierMode& k : modes) {
      const VCycle mg(hierarchy, k, mg_options);
      const Vector x0 = random_vector(mg.dim(l), a.seed);
      const SolveReport report = solve_mg(mg, Vector::Zero(mg.dim(l)), x0, solve);
      csv << ',' << full(report.rate);
      for (std::size_t i = 0; i < report.norms.size(); ++i) {
        trace << k.value() << ',' << l << ',' << i << ',' << full(report.norms[i]) << '\n';
      }
      char buf[160];
      std::snprintf(buf, sizeof buf, "level %d  k %+d  rate %.2f  iterations %d%s", l, k.value(), report.rate,
                    report.iterations, report.converged ? "" : "  (not converged)");
      log << buf << '\n';
      if (!report.converged) failed = true;
      if (a.dump_matrix && l == max_level) {
        const std::string path = "lambda_k" + std::to_string(k.value()) + "_level" + std::to_string(l) + ".txt";
        std::ofstream m(path);
        if (!m) throw Error("cannot open " + path + " for writing");
        SparseOperator op;
        op.matrix = mg.lambda(l);
        write_coordinate(op, m);
        log << "wrote " << path << '\n';
      }
    }
    csv << '\n';
  }
  emit(csv.str(), a.out);
  if (a.trace) {
    if (a.out.empty()) {
      std::cout << '\n' << trace.str();
    } else {
      emit(trace.str(), a.out + ".trace.csv");
    }
  }
  if (failed) {
    std::cerr << "error: multigrid did not reach the tolerance within " << a.max_iters << " iterations\n";
    return 1;
  }
  return 0;
}

struct VerifyArgs {
  std::string suite = "complex";
  std::string domain = "square";
  int mode = 1;
  int level = 3;
};

int run_verify(const VerifyArgs& a, int cap) {
  check_level(a.level, cap, "--level");
  const FourierMode k = checked_mode(a.mode);
  const Domain domain = parse_domain(a.domain);
  const MeshHierarchy hierarchy(domain, a.level);
  const MeshLevel& level = hierarchy.finest();
  std::vector<CheckResult> results;
  if (a.suite == "complex") {
    results = check_complex(level, k);
  } else if (a.suite == "interp") {
    const ManufacturedSolution s = manufactured_solution(k);
    results.push_back(check_commuting_interp(level, k, s.z, s.f));
  } else if (a.suite == "helmholtz") {
    results = check_helmholtz(level, k);
  } else if (a.suite == "transfer") {
    results = check_transfer(hierarchy, a.level, k);
  } else {
    throw UsageError("unknown suite '" + a.suite + "'");
  }
  bool ok = true;
  for (const CheckResult& c : results) {
    std::cout << format_check(c) << '\n';
    ok = ok && c.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted H(div) finite elements and multigrid for axisymmetric Fourier modes"};
  app.require_subcommand(1);
  int cap = 10;
  app.add_option("--level-cap", cap, "Largest admissible mesh level")->capture_default_str();

  MeshArgs mesh_args;
  auto* mesh = app.add_subcommand("mesh", "Write one mesh level as JSON (vertices, triangles, edges, tags)");
  mesh->add_option("--domain", mesh_args.domain, "square|lshape")->capture_default_str();
  mesh->add_option("--level", mesh_args.level, "Mesh level, 1 = coarse")->capture_default_str();
  mesh->add_option("--out", mesh_args.out, "Output path (default stdout)");

  MixedArgs mixed_args;
  auto* mixed = app.add_subcommand(
      "mixed", "Mixed-method error table. CSV columns: level,err_z,rate_z,err_p,rate_p,err_PiSp,rate_PiSp");
  mixed->add_option("--domain", mixed_args.domain, "square|lshape")->capture_default_str();
  mixed->add_option("--mode", mixed_args.mode, "Fourier mode k, |k| >= 1")->capture_default_str();
  mixed->add_option("--max-level", mixed_args.max_level, "Finest level")->capture_default_str();
  mixed->add_option("--out", mixed_args.out, "CSV path (default stdout)");

  MgArgs mg_args;
  auto* mg = app.add_subcommand(
      "mg", "V-cycle contraction rates. CSV columns: level, then rate_k<K> for each --mode in order");
  mg->add_option("--domain", mg_args.domain, "square|lshape")->capture_default_str();
  mg->add_option("--mode", mg_args.modes, "Fourier mode k (repeatable)")->capture_default_str();
  mg->add_option("--max-level", mg_args.max_level, "Finest level (default 9 square, 8 lshape)");
  mg->add_option("--tol", mg_args.tol, "Relative Lambda-norm reduction to stop at")->capture_default_str();
  mg->add_option("--seed", mg_args.seed, "Seed of the random initial iterate")->capture_default_str();
  mg->add_option("--smoother", mg_args.smoother, "multiplicative|additive")->capture_default_str();
  mg->add_option("--rate-stat", mg_args.rate_stat, "arithmetic|geometric mean of norm ratios")
      ->capture_default_str();
  mg->add_option("--max-iters", mg_args.max_iters, "Iteration limit")->capture_default_str();
  mg->add_flag("--trace", mg_args.trace, "Also emit per-iteration norms (mode,level,iteration,norm)");
  mg->add_flag("--dump-matrix", mg_args.dump_matrix, "Write the finest Lambda as 'row col value' text");
  mg->add_option("--out", mg_args.out, "CSV path (default stdout); trace goes to <out>.trace.csv");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Structural checks; exit status 1 if any check fails");
  verify->add_option("--suite", verify_args.suite, "complex|interp|helmholtz|transfer")->capture_default_str();
  verify->add_option("--domain", verify_args.domain, "square|lshape")->capture_default_str();
  verify->add_option("--mode", verify_args.mode, "Fourier mode k")->capture_default_str();
  verify->add_option("--level", verify_args.level, "Mesh level")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*mesh) return run_mesh(mesh_args, cap);
    if (*mixed) return run_mixed(mixed_args, cap);
    if (*mg) return run_mg(mg_args, cap);
    if (*verify) return run_verify(verify_args, cap);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    const std::string msg = e.what();
    // Bad names for domain, smoother or rate statistic are usage errors.
    if (msg.rfind("unknown", 0) == 0) {
      std::cerr << "usage error: " << msg << '\n';
      return 2;
    }
    std::cerr << "error: " << msg << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
