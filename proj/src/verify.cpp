#include "axifem/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseQR>

#include "axifem/assembly.hpp"
#include "axifem/multigrid.hpp"
#include "axifem/error.hpp"
#include "axifem/quadrature.hpp"

namespace axifem {

namespace {

using ColMatrix = Eigen::SparseMatrix<double>;

double max_abs(const SparseMatrix& a) {
  double m = 0.0;
  for (Index i = 0; i < a.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(a, i); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

double max_abs(const std::array<double, 6>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double coeff_size(const CElementCoeffs& c) {
  return std::max({std::abs(c.g1), std::abs(c.g2), std::abs(c.g3), std::abs(c.g4)});
}

}  // namespace

CheckResult make_check(std::string name, double residual, double tolerance) {
  return {std::move(name), std::isfinite(residual) && residual <= tolerance, residual, tolerance};
}

Index numerical_rank(const ColMatrix& a, double threshold) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  double largest = 0.0;
  for (Eigen::Index j = 0; j < a.outerSize(); ++j) largest = std::max(largest, a.col(j).norm());
  if (largest == 0.0) return 0;
  Eigen::SparseQR<ColMatrix, Eigen::COLAMDOrdering<int>> qr;
  qr.setPivotThreshold(threshold * largest);
  ColMatrix copy = a;
  copy.makeCompressed();
  qr.compute(copy);
  return static_cast<Index>(qr.rank());
}

std::vector<CheckResult> check_complex(const MeshLevel& level, FourierMode k) {
  const ASpace a_space(level);
  const BSpace b_space(level, k);
  const CSpace c_space(level, k);
  const DSpace d_space(level);
  const SparseMatrix grad = assemble_grad(a_space, b_space).matrix;
  const SparseMatrix curl = assemble_curl(b_space, c_space).matrix;
  const SparseMatrix div = assemble_div_values(c_space).matrix;

  std::vector<CheckResult> out;
  const SparseMatrix dc = div * curl;
  const SparseMatrix cg = curl * grad;
  const double global = std::max(max_abs(dc) / std::max(1.0, max_abs(div) * max_abs(curl)),
                                 max_abs(cg) / std::max(1.0, max_abs(curl) * max_abs(grad)));
  out.push_back(make_check("complex.global_div_curl_grad", global, 1e-12));

  // Local symbolic and pointwise checks on every element basis.
  double local = 0.0;
  const Point2 probe_bary{0.2, 0.3};
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const Triangle tri = level.corners(t);
    const Point2 p = map_point(tri, {1.0 - probe_bary.r - probe_bary.z, probe_bary.r, probe_bary.z});
    for (const BElementCoeffs& b : b_local_basis(tri, k)) {
      const CElementCoeffs c = curl_k(b, k);
      local = std::max(local, std::abs(div_k(c, k)) / std::max(1.0, coeff_size(c)));
      const Vec3 symbolic = eval_c(c, k, p);
      const Vec3 pointwise = curl_k_b(b, k, p);
      const double scale = std::max(1.0, max_abs(b.beta));
      for (int i = 0; i < 3; ++i) local = std::max(local, std::abs(symbolic[i] - pointwise[i]) / scale);
    }
    for (const AElementCoeffs& a : a_local_basis(tri)) {
      const BElementCoeffs g = grad_k(a, k);
      const CElementCoeffs c = curl_k(g, k);
      local = std::max(local, coeff_size(c) / std::max(1.0, max_abs(g.beta)));
      const Vec3 symbolic = eval_b(g, k, p);
      const Vec3 pointwise = grad_k_a(a, k, p);
      for (int i = 0; i < 3; ++i) local = std::max(local, std::abs(symbolic[i] - pointwise[i]) / std::max(1.0, max_abs(g.beta)));
    }
  }
  out.push_back(make_check("complex.local_div_curl_grad", local, 1e-12));

  const long alt = static_cast<long>(a_space.dim()) - b_space.dim() + c_space.dim() - d_space.dim();
  out.push_back(make_check("complex.alternating_sum", std::abs(static_cast<double>(alt)), 0.0));

  const Index rank_grad = numerical_rank(ColMatrix(grad));
  const Index rank_curl = numerical_rank(ColMatrix(curl));
  const Index rank_div = numerical_rank(ColMatrix(div));
  out.push_back(make_check("complex.div_surjective", std::abs(d_space.dim() - rank_div), 0.0));
  out.push_back(make_check("complex.grad_injective", std::abs(a_space.dim() - rank_grad), 0.0));
  // ker curl = im grad and ker div = im curl.
  out.push_back(make_check("complex.exact_at_B", std::abs(b_space.dim() - rank_curl - rank_grad), 0.0));
  out.push_back(make_check("complex.exact_at_C", std::abs(c_space.dim() - rank_div - rank_curl), 0.0));
  return out;
}

CheckResult check_commuting_interp(const MeshLevel& level, FourierMode k, const VectorField3& u,
                                   const ScalarField& div_u, double tolerance) {
  DofQuadrature quad;
  quad.edge_points = 12;
  quad.triangle_degree = 14;
  quad.triangle_depth = 2;
  const CSpace space(level, k);
  const Vector coeffs = interp_canonical_c(level, k, u, quad);
  const QuadratureRule rule = QuadratureRule::triangle(quad.triangle_degree);
  double residual = 0.0;
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const Triangle tri = level.corners(t);
    const double lhs = div_k(space.restrict_to(coeffs, t), k);
    const double rhs = integrate_composite(rule, tri, div_u, quad.triangle_depth) / triangle_area(tri);
    residual = std::max(residual, std::abs(lhs - rhs));
  }
  return make_check("interp.commuting_div", residual, tolerance);
}

std::vector<CheckResult> check_helmholtz(const MeshLevel& level, FourierMode k, std::uint64_t seed) {
  const BSpace b_space(level, k);
  const CSpace c_space(level, k);
  const SparseMatrix curl = assemble_curl(b_space, c_space).matrix;
  const SparseMatrix mass = assemble_mass_c(c_space).matrix;
  std::vector<CheckResult> out;

  double worst = 0.0;
  for (int probe = 0; probe < 3; ++probe) {
    const Vector b = random_vector(b_space.dim(), seed + 2 * static_cast<std::uint64_t>(probe));
    const Vector d = random_vector(level.num_triangles(), seed + 2 * static_cast<std::uint64_t>(probe) + 1);
    const Vector cb = curl * b;
    const Vector g = grad_h(c_space, d);
    const double inner = cb.dot(mass * g);
    const double scale = std::sqrt(cb.dot(mass * cb) * g.dot(mass * g));
    worst = std::max(worst, scale > 0.0 ? std::abs(inner) / scale : std::abs(inner));
  }
  out.push_back(make_check("helmholtz.orthogonality", worst, 1e-10));

  // grad_h = -M_C^{-1} B^T has the rank of B.
  const Index rank_curl = numerical_rank(ColMatrix(curl));
  const Index rank_grad_h = numerical_rank(ColMatrix(assemble_div(c_space).matrix));
  out.push_back(make_check("helmholtz.dimension", std::abs(c_space.dim() - rank_curl - rank_grad_h), 0.0));
  return out;
}

std::vector<CheckResult> check_transfer(const MeshHierarchy& hierarchy, int l, FourierMode k, std::uint64_t seed) {
  std::vector<CheckResult> out;
  if (l < 1 || l > hierarchy.num_levels()) throw Error("level outside the hierarchy");
  const MeshLevel& fine = hierarchy.level(l);
  const CSpace fine_space(fine, k);
  const SparseMatrix lambda_fine = assemble_lambda(fine_space).matrix;
  if (l == 1) {
    // Degenerate transfer P = I.
    const SparseMatrix diff = lambda_fine - lambda_fine;
    out.push_back(make_check("transfer.galerkin", max_abs(diff), 1e-10 * max_abs(lambda_fine)));
    out.push_back(make_check("transfer.reproduction", 0.0, 1e-12));
    return out;
  }
  const MeshLevel& coarse = hierarchy.level(l - 1);
  const RefinementMap& map = hierarchy.map_to(l);
  const CSpace coarse_space(coarse, k);
  const SparseMatrix p = build_prolongation(coarse, fine, map, k).matrix;
  const SparseMatrix lambda_coarse = assemble_lambda(coarse_space).matrix;
  const SparseMatrix galerkin = SparseMatrix(p.transpose()) * lambda_fine * p;
  const SparseMatrix diff = lambda_coarse - galerkin;
  out.push_back(make_check("transfer.galerkin", max_abs(diff) / max_abs(lambda_coarse), 1e-10));

  const Vector uc = random_vector(coarse_space.dim(), seed);
  const Vector uf = p * uc;
  std::mt19937_64 gen(seed + 17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  double scale = 0.0;
  for (Index tf = 0; tf < fine.num_triangles(); ++tf) {
    const Triangle tri = fine.corners(tf);
    for (int s = 0; s < 3; ++s) {
      double a = unit(gen);
      double b = unit(gen);
      if (a + b > 1.0) {
        a = 1.0 - a;
        b = 1.0 - b;
      }
      const Point2 x = map_point(tri, {1.0 - a - b, a, b});
      const Vec3 vf = eval(fine_space, uf, tf, x);
      const Vec3 vc = eval(coarse_space, uc, map.triangle_parent[tf], x);
      for (int i = 0; i < 3; ++i) {
        worst = std::max(worst, std::abs(vf[i] - vc[i]));
        scale = std::max(scale, std::abs(vc[i]));
      }
    }
  }
  out.push_back(make_check("transfer.reproduction", worst / std::max(1.0, scale), 1e-12));
  return out;
}

std::string format_check(const CheckResult& c) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-32s %s residual=%.3e tolerance=%.3e", c.name.c_str(), c.passed ? "PASS" : "FAIL",
                c.residual, c.tolerance);
  return buf;
}

}  // namespace axifem
