#include "axifem/mixed.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/SparseLU>

#include "axifem/error.hpp"

namespace axifem {

ManufacturedSolution manufactured_solution(FourierMode k) {
  constexpr double pi = std::numbers::pi;
  const double kk = k.k();
  ManufacturedSolution s;
  s.p = [](Point2 x) { return x.r * x.r * std::cos(0.5 * pi * x.r) * std::sin(pi * x.z); };
  s.z = [kk](Point2 x) -> Vec3 {
    const double r = x.r;
    const double c = std::cos(0.5 * pi * r);
    const double sn = std::sin(0.5 * pi * r);
    const double sz = std::sin(pi * x.z);
    return {-2.0 * r * c * sz + 0.5 * r * r * pi * sn * sz, -kk * r * sz * c, -r * r * pi * c * std::cos(pi * x.z)};
  };
  s.f = [kk](Point2 x) {
    const double r = x.r;
    const double c = std::cos(0.5 * pi * r);
    const double sn = std::sin(0.5 * pi * r);
    return std::sin(pi * x.z) * ((kk * kk - 4.0) * c + 1.25 * pi * pi * r * r * c + 2.5 * pi * r * sn);
  };
  return s;
}

MixedSolution solve_mixed(const CSpace& space, const ScalarField& f) {
  return solve_mixed_load(space, assemble_load_d(space.level(), f));
}

MixedSolution solve_mixed_load(const CSpace& space, const Vector& load) {
  const SparseMatrix mass = assemble_mass_c(space).matrix;
  const SparseMatrix div = assemble_div(space).matrix;
  const Index nc = space.dim();
  const Index nd = space.level().num_triangles();
  if (load.size() != nd) throw Error("load vector has the wrong size");

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(mass.nonZeros() + 2 * div.nonZeros()));
  for (Index i = 0; i < mass.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(mass, i); it; ++it) triplets.emplace_back(it.row(), it.col(), it.value());
  }
  for (Index i = 0; i < div.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(div, i); it; ++it) {
      triplets.emplace_back(nc + it.row(), it.col(), -it.value());
      triplets.emplace_back(it.col(), nc + it.row(), -it.value());
    }
  }
  Eigen::SparseMatrix<double> system(nc + nd, nc + nd);
  system.setFromTriplets(triplets.begin(), triplets.end());
  system.makeCompressed();

  Vector rhs = Vector::Zero(nc + nd);
  rhs.tail(nd) = -load;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
  solver.compute(system);
  if (solver.info() != Eigen::Success) throw Error("mixed system factorization failed: " + solver.lastErrorMessage());
  const Vector x = solver.solve(rhs);
  if (solver.info() != Eigen::Success) throw Error("mixed system solve failed");

  MixedSolution out;
  out.z = x.head(nc);
  out.p = x.tail(nd);
  const Vector r1 = mass * out.z - div.transpose() * out.p;
  const Vector r2 = div * out.z - load;
  const double scale1 = std::max(1.0, (mass * out.z).norm());
  out.residual_flux = r1.norm() / scale1;
  out.residual_div = load.norm() > 0.0 ? r2.norm() / load.norm() : r2.norm();
  return out;
}

std::vector<MixedErrorRow> error_table(Domain domain, FourierMode k, int max_level, int min_level) {
  if (max_level < 1 || min_level < 1 || min_level > max_level) throw Error("invalid level range");
  const ManufacturedSolution exact = manufactured_solution(k);
  MeshHierarchy hierarchy(domain, min_level);
  std::vector<MixedErrorRow> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int l = min_level; l <= max_level; ++l) {
    if (l > hierarchy.num_levels()) hierarchy.add_level();
    const MeshLevel& level = hierarchy.level(l);
    const CSpace space(level, k);
    const MixedSolution sol = solve_mixed(space, exact.f);
    const DSpace d_space(level);
    MixedErrorRow row;
    row.level = l;
    row.err_z = l2r_error(space, sol.z, exact.z);
    row.err_p = l2r_error(d_space, sol.p, exact.p);
    const Vector pis = pi_s(level, exact.p);
    row.err_pis = l2r_error(d_space, pis - sol.p, [](Point2) { return 0.0; });
    if (rows.empty()) {
      row.rate_z = row.rate_p = row.rate_pis = nan;
    } else {
      const MixedErrorRow& prev = rows.back();
      row.rate_z = std::log2(prev.err_z / row.err_z);
      row.rate_p = std::log2(prev.err_p / row.err_p);
      row.rate_pis = std::log2(prev.err_pis / row.err_pis);
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string mixed_csv(const std::vector<MixedErrorRow>& rows) {
  std::ostringstream out;
  out << "level,err_z,rate_z,err_p,rate_p,err_PiSp,rate_PiSp\n";
  for (const auto& r : rows) {
    out << r.level << ',' << fmt(r.err_z) << ',' << fmt(r.rate_z) << ',' << fmt(r.err_p) << ',' << fmt(r.rate_p)
        << ',' << fmt(r.err_pis) << ',' << fmt(r.rate_pis) << '\n';
  }
  return out.str();
}

}  // namespace axifem
