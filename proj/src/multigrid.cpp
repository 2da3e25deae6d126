#include "axifem/multigrid.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/SparseCholesky>

#include "axifem/error.hpp"

namespace axifem {

SmootherKind parse_smoother(const std::string& name) {
  if (name == "multiplicative") return SmootherKind::Multiplicative;
  if (name == "additive") return SmootherKind::Additive;
  throw Error("unknown smoother '" + name + "' (expected multiplicative|additive)");
}

RateStatistic parse_rate_statistic(const std::string& name) {
  if (name == "arithmetic") return RateStatistic::Arithmetic;
  if (name == "geometric") return RateStatistic::Geometric;
  throw Error("unknown rate statistic '" + name + "' (expected arithmetic|geometric)");
}

SparseOperator build_prolongation(const MeshLevel& coarse, const MeshLevel& fine,
                                  const RefinementMap& map, FourierMode k) {
  if (map.triangle_parent.size() != fine.triangles.size()) {
    throw Error("refinement map does not match the fine level");
  }
  const CSpace coarse_space(coarse, k);
  const CSpace fine_space(fine, k);
  std::vector<Eigen::Triplet<double>> triplets;
  for (Index tf = 0; tf < fine.num_triangles(); ++tf) {
    const Index tc = map.triangle_parent[tf];
    const auto basis = coarse_space.local_basis(tc);
    const auto coarse_ids = coarse_space.local_dofs(tc);
    const auto fine_ids = fine_space.local_dofs(tf);
    for (int j = 0; j < 4; ++j) {
      const auto dofs = fine_space.global_dofs_on(basis[j], tf);
      for (int i = 0; i < 3; ++i) {
        // Each fine edge row is written once, from its first adjacent triangle.
        if (fine.edge_triangles[fine.triangle_edges[tf][i]][0] != tf) continue;
        if (std::abs(dofs[i]) > 1e-15) triplets.emplace_back(fine_ids[i], coarse_ids[j], dofs[i]);
      }
      if (std::abs(dofs[3]) > 1e-15) triplets.emplace_back(fine_ids[3], coarse_ids[j], dofs[3]);
    }
  }
  SparseOperator op;
  op.matrix.resize(fine_space.dim(), coarse_space.dim());
  op.matrix.setFromTriplets(triplets.begin(), triplets.end());
  op.matrix.makeCompressed();
  return op;
}

// --- smoother ---------------------------------------------------------------

PatchSmoother::PatchSmoother(const CSpace& space, const SparseMatrix& lambda) : lambda_(&lambda) {
  const MeshLevel& level = space.level();
  const auto patches = vertex_patches(level);
  blocks_.reserve(patches.size());
  for (const VertexPatch& patch : patches) {
    Block block;
    block.center = patch.center;
    for (Index e : patch.edges) block.dofs.push_back(space.edge_dof(e));
    for (Index t : patch.triangles) block.dofs.push_back(space.triangle_dof(t));
    std::sort(block.dofs.begin(), block.dofs.end());
    const auto n = static_cast<Eigen::Index>(block.dofs.size());
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) local(a, b) = lambda.coeff(block.dofs[a], block.dofs[b]);
    }
    block.factor.compute(local);
    if (block.factor.info() != Eigen::Success) {
      throw Error("patch matrix at vertex " + std::to_string(patch.center) + " is not positive definite");
    }
    blocks_.push_back(std::move(block));
  }
}

void PatchSmoother::correct(Vector& x, const Vector& f, const Block& block) const {
  const auto n = static_cast<Eigen::Index>(block.dofs.size());
  Vector r(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const Index row = block.dofs[a];
    double s = f[row];
    for (SparseMatrix::InnerIterator it(*lambda_, row); it; ++it) s -= it.value() * x[it.col()];
    r[a] = s;
  }
  const Vector dx = block.factor.solve(r);
  for (Eigen::Index a = 0; a < n; ++a) x[block.dofs[a]] += dx[a];
}

void PatchSmoother::sweep(Vector& x, const Vector& f, SweepDirection direction) const {
  if (direction == SweepDirection::Forward) {
    for (const Block& block : blocks_) correct(x, f, block);
  } else {
    for (auto it = blocks_.rbegin(); it != blocks_.rend(); ++it) correct(x, f, *it);
  }
}

void PatchSmoother::additive(Vector& x, const Vector& f, double damping) const {
  const Vector r = f - (*lambda_) * x;
  Vector dx = Vector::Zero(x.size());
  for (const Block& block : blocks_) {
    const auto n = static_cast<Eigen::Index>(block.dofs.size());
    Vector rb(n);
    for (Eigen::Index a = 0; a < n; ++a) rb[a] = r[block.dofs[a]];
    const Vector d = block.factor.solve(rb);
    for (Eigen::Index a = 0; a < n; ++a) dx[block.dofs[a]] += d[a];
  }
  x += damping * dx;
}

// --- V-cycle ----------------------------------------------------------------

VCycle::Level::Level(SparseOperator lambda_op, SparseOperator prolongation_op, const CSpace& space)
    : lambda(std::move(lambda_op)), prolongation(std::move(prolongation_op)), smoother(space, lambda.matrix) {}

VCycle::VCycle(const MeshHierarchy& hierarchy, FourierMode k, MultigridOptions options)
    : k_(k), options_(options) {
  for (int l = 1; l <= hierarchy.num_levels(); ++l) {
    const CSpace space(hierarchy.level(l), k);
    SparseOperator p;
    if (l >= 2) p = build_prolongation(hierarchy.level(l - 1), hierarchy.level(l), hierarchy.map_to(l), k);
    levels_.push_back(std::make_unique<Level>(assemble_lambda(space), std::move(p), space));
  }
  coarse_factor_.compute(Eigen::MatrixXd(levels_.front()->lambda.matrix));
  if (coarse_factor_.info() != Eigen::Success) throw Error("coarse Lambda is not positive definite");
}

Vector VCycle::coarse_solve(const Vector& f) const { return coarse_factor_.solve(f); }

void VCycle::smooth(int l, Vector& x, const Vector& f, SweepDirection direction) const {
  if (options_.smoother == SmootherKind::Multiplicative) {
    at(l).smoother.sweep(x, f, direction);
  } else {
    at(l).smoother.additive(x, f, options_.additive_damping);
  }
}

Vector VCycle::cycle(int l, const Vector& u, const Vector& f) const {
  if (l < 1 || l > num_levels()) throw Error("level " + std::to_string(l) + " outside the hierarchy");
  if (u.size() != dim(l) || f.size() != dim(l)) throw Error("vector size does not match level dimension");
  if (l == 1) return coarse_solve(f);
  const Level& lev = at(l);
  Vector x = u;
  smooth(l, x, f, SweepDirection::Forward);
  const Vector r = lev.prolongation.matrix.transpose() * (f - lev.lambda.matrix * x);
  const Vector e = cycle(l - 1, Vector::Zero(r.size()), r);
  x += lev.prolongation.matrix * e;
  smooth(l, x, f, SweepDirection::Backward);
  return x;
}

double VCycle::lambda_inner(int l, const Vector& x, const Vector& y) const {
  return x.dot(at(l).lambda.matrix * y);
}

double VCycle::lambda_norm(int l, const Vector& x) const { return std::sqrt(std::max(0.0, lambda_inner(l, x, x))); }

// --- driver -----------------------------------------------------------------

double contraction_rate(const std::vector<double>& norms, RateStatistic statistic) {
  if (norms.size() < 2) return 0.0;
  const std::size_t n = norms.size() - 1;
  if (statistic == RateStatistic::Geometric) {
    if (norms.front() == 0.0) return 0.0;
    return std::pow(norms.back() / norms.front(), 1.0 / static_cast<double>(n));
  }
  double sum = 0.0;
  for (std::size_t i = 1; i <= n; ++i) sum += norms[i - 1] > 0.0 ? norms[i] / norms[i - 1] : 0.0;
  return sum / static_cast<double>(n);
}

SolveReport solve_mg(const VCycle& mg, const Vector& f, const Vector& x0, const SolveOptions& options) {
  if (!(options.tolerance > 0.0 && options.tolerance < 1.0)) throw Error("tolerance must lie in (0, 1)");
  const int l = mg.num_levels();
  if (x0.size() != mg.dim(l) || f.size() != mg.dim(l)) throw Error("vector size does not match finest level");
  // With f = 0 the iterate is the error; otherwise successive updates obey
  // the same error recursion and are tracked instead.
  const bool homogeneous = f.isZero(0.0);
  SolveReport report;
  Vector x = x0;
  if (homogeneous) {
    report.norms.push_back(mg.lambda_norm(l, x));
    if (report.norms[0] == 0.0) {
      report.converged = true;
      return report;
    }
  }
  for (int it = 1; it <= options.max_iterations; ++it) {
    Vector next = mg.cycle(l, x, f);
    const double norm = homogeneous ? mg.lambda_norm(l, next) : mg.lambda_norm(l, next - x);
    x = std::move(next);
    report.norms.push_back(norm);
    if (!homogeneous && report.norms.size() == 1) {
      if (norm == 0.0) {
        report.converged = true;
        break;
      }
      continue;
    }
    report.iterations = homogeneous ? it : it - 1;
    if (!std::isfinite(norm)) break;
    if (norm < options.tolerance * report.norms.front()) {
      report.converged = true;
      break;
    }
  }
  report.rate = contraction_rate(report.norms, options.statistic);
  return report;
}

Vector random_vector(Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Vector v(n);
  // Top 53 bits -> [0, 1), then affine to [-1, 1]; portable across libraries.
  for (Index i = 0; i < n; ++i) v[i] = 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;
  return v;
}

double estimate_contraction(const VCycle& mg, int l, int iterations, int probes, std::uint64_t seed) {
  double best = 0.0;
  for (int p = 0; p < probes; ++p) {
    Vector u = random_vector(mg.dim(l), seed + static_cast<std::uint64_t>(p));
    u /= mg.lambda_norm(l, u);
    for (int it = 0; it < iterations; ++it) {
      const Vector eu = mg.error_operator(l, u);
      best = std::max(best, mg.lambda_inner(l, eu, u));
      const double norm = mg.lambda_norm(l, eu);
      if (norm == 0.0) break;
      u = eu / norm;
    }
  }
  return best;
}

Vector grad_h(const CSpace& space, const Vector& d) {
  if (d.size() != space.level().num_triangles()) throw Error("D_h vector has the wrong size");
  const SparseOperator mass = assemble_mass_c(space);
  const SparseOperator div = assemble_div(space);
  Eigen::SparseMatrix<double> m = mass.matrix;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(m);
  if (solver.info() != Eigen::Success) throw Error("C_h mass matrix factorization failed");
  const Vector rhs = -(div.matrix.transpose() * d);
  return solver.solve(rhs);
}

}  // namespace axifem
