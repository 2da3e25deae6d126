#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include <Eigen/SparseCholesky>

#include "axifem/assembly.hpp"

using namespace axifem;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

Vector random_vec(Index n, unsigned seed) {
  std::srand(seed);
  return Vector::Random(n);
}

}  // namespace

TEST_CASE("element matrices are exact with the assembly rule") {
  const Triangle tri{{{0.0, 0.2}, {0.6, 0.1}, {0.3, 0.7}}};
  for (int kv : {1, -2}) {
    const FourierMode k(kv);
    const Eigen::Matrix4d low = lambda_element(tri, k);
    const Eigen::Matrix4d high = lambda_element(tri, k, QuadratureRule::triangle(8));
    CHECK(max_abs(low - high) < 1e-13 * max_abs(high));
    CHECK(max_abs(low - low.transpose()) < 1e-14 * max_abs(low));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(low);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("Lambda, mass and divergence operators") {
  MeshHierarchy h(Domain::LShape, 3);
  const MeshLevel& m = h.finest();
  const FourierMode k(1);
  const CSpace cs(m, k);
  const SparseMatrix lambda = assemble_lambda(cs).matrix;
  const SparseMatrix mass = assemble_mass_c(cs).matrix;
  const SparseMatrix div = assemble_div(cs).matrix;
  const SparseMatrix md = assemble_mass_d(m).matrix;
  CHECK(asymmetry(lambda) < 1e-14);
  CHECK(asymmetry(mass) < 1e-14);

  // Lambda = M_C + B^T M_D^{-1} B.
  Vector inv_md(m.num_triangles());
  for (Index t = 0; t < m.num_triangles(); ++t) inv_md[t] = 1.0 / md.coeff(t, t);
  const Eigen::MatrixXd split =
      Eigen::MatrixXd(mass) + Eigen::MatrixXd(div).transpose() * inv_md.asDiagonal() * Eigen::MatrixXd(div);
  CHECK(max_abs(split - Eigen::MatrixXd(lambda)) < 1e-12 * max_abs(Eigen::MatrixXd(lambda)));

  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt{Eigen::SparseMatrix<double>(lambda)};
  CHECK(llt.info() == Eigen::Success);

  // Lambda and M_C do not depend on the sign of k.
  const CSpace cm(m, FourierMode(-1));
  CHECK(max_abs(Eigen::MatrixXd(assemble_lambda(cm).matrix - lambda)) < 1e-13);
}

TEST_CASE("load vector and divergence of a global C_1 field") {
  MeshHierarchy h(Domain::Square, 3);
  const MeshLevel& m = h.finest();
  const FourierMode k(2);
  const CSpace cs(m, k);
  const CElementCoeffs c{0.3, -0.5, 0.8, 0.1};
  const VectorField3 u = [&](Point2 x) { return eval_c(c, k, x); };
  const Vector coeffs = interp_canonical_c(m, k, u);
  const Vector load = assemble_load(cs, u);
  const SparseMatrix mass = assemble_mass_c(cs).matrix;
  CHECK((mass * coeffs - load).cwiseAbs().maxCoeff() < 1e-13);

  const Vector d = assemble_div_values(cs).matrix * coeffs;
  for (Index t = 0; t < m.num_triangles(); ++t) CHECK(d[t] == doctest::Approx(div_k(c, k)));
  CHECK(l2r_error(cs, coeffs, u) < 1e-12);
}

TEST_CASE("discrete complex: curl grad and div curl vanish") {
  for (Domain dom : {Domain::Square, Domain::LShape}) {
    MeshHierarchy h(dom, 3);
    const MeshLevel& m = h.finest();
    for (int kv : {1, 2, -1, -2}) {
      const FourierMode k(kv);
      const ASpace as(m);
      const BSpace bs(m, k);
      const CSpace cs(m, k);
      const SparseMatrix grad = assemble_grad(as, bs).matrix;
      const SparseMatrix curl = assemble_curl(bs, cs).matrix;
      const SparseMatrix div = assemble_div_values(cs).matrix;
      CHECK(Eigen::MatrixXd(curl * grad).cwiseAbs().maxCoeff() < 1e-11);
      CHECK(Eigen::MatrixXd(div * curl).cwiseAbs().maxCoeff() < 1e-11);

      // The assembled operators act pointwise like the symbolic ones.
      const Vector a = random_vec(as.dim(), 3);
      const Vector b = grad * a;
      const Vector c = curl * random_vec(bs.dim(), 5);
      for (Index t = 0; t < m.num_triangles(); t += 7) {
        const Point2 x = map_point(m.corners(t), {0.25, 0.35, 0.4});
        const Vec3 gb = eval(bs, b, t, x);
        const Vec3 ga = grad_k_a(as.restrict_to(a, t), k, x);
        for (int i = 0; i < 3; ++i) CHECK(gb[i] == doctest::Approx(ga[i]).epsilon(1e-10));
        CHECK(std::abs(div_k(cs.restrict_to(c, t), k)) < 1e-10);
      }
    }
  }
}

TEST_CASE("error norms and coordinate output") {
  MeshHierarchy h(Domain::Square, 2);
  const MeshLevel& m = h.finest();
  const DSpace ds(m);
  const Vector ones = Vector::Ones(m.num_triangles());
  // || 1 - 0 ||_{L^2_r} over the unit square is sqrt(1/2).
  CHECK(l2r_error(ds, ones, [](Point2) { return 0.0; }) == doctest::Approx(std::sqrt(0.5)));
  const Vector vals = Vector::Ones(m.num_vertices());
  CHECK(weighted_error_p1(m, vals, [](Point2) { return 0.0; }, 3) == doctest::Approx(0.5));

  std::ostringstream out;
  write_coordinate(assemble_mass_d(m), out);
  int lines = 0;
  for (char ch : out.str()) lines += ch == '\n';
  CHECK(lines == m.num_triangles());
}
