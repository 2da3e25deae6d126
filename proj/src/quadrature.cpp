#include "axifem/quadrature.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "axifem/error.hpp"

namespace axifem {

LineRule LineRule::gauss(int num_points) {
  if (num_points < 1) throw Error("Gauss rule needs at least one point");
  // Golub-Welsch: eigenvalues of the Legendre Jacobi matrix.
  const int n = num_points;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  LineRule rule;
  rule.points.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double v0 = eig.eigenvectors()(0, i);
    rule.points[i] = 0.5 * (eig.eigenvalues()(i) + 1.0);
    rule.weights[i] = v0 * v0;  // 2 v0^2 on [-1,1], halved for [0,1]
  }
  return rule;
}

QuadratureRule QuadratureRule::triangle(int degree) {
  if (degree < 0) throw Error("negative quadrature degree");
  // Duffy collapse x = u, y = v (1 - u): the Jacobian adds one degree in u,
  // so n points must integrate degree + 1 exactly.
  const int n = (degree + 3) / 2;
  const LineRule line = LineRule::gauss(n);
  QuadratureRule rule;
  rule.degree = degree;
  for (int i = 0; i < n; ++i) {
    const double u = line.points[i];
    for (int j = 0; j < n; ++j) {
      const double v = line.points[j];
      const double x = u;
      const double y = v * (1.0 - u);
      rule.points.push_back({1.0 - x - y, x, y});
      // Reference area is 1/2; weights normalized to sum to one.
      rule.weights.push_back(2.0 * line.weights[i] * line.weights[j] * (1.0 - u));
    }
  }
  return rule;
}

int weighted_mass_degree() { return 3; }

const QuadratureRule& assembly_rule() {
  static const QuadratureRule rule = QuadratureRule::triangle(kAssemblyDegree);
  return rule;
}

const QuadratureRule& error_rule() {
  static const QuadratureRule rule = QuadratureRule::triangle(kErrorDegree);
  return rule;
}

Point2 map_point(const std::array<Point2, 3>& c, const std::array<double, 3>& l) {
  return {l[0] * c[0].r + l[1] * c[1].r + l[2] * c[2].r,
          l[0] * c[0].z + l[1] * c[1].z + l[2] * c[2].z};
}

namespace {

double triangle_area(const std::array<Point2, 3>& c) {
  return 0.5 * std::abs((c[1].r - c[0].r) * (c[2].z - c[0].z) - (c[2].r - c[0].r) * (c[1].z - c[0].z));
}

}  // namespace

double integrate(const QuadratureRule& rule, const std::array<Point2, 3>& corners,
                 const std::function<double(Point2)>& f) {
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) sum += rule.weights[q] * f(map_point(corners, rule.points[q]));
  return triangle_area(corners) * sum;
}

double integrate_composite(const QuadratureRule& rule, const std::array<Point2, 3>& corners,
                           const std::function<double(Point2)>& f, int depth) {
  if (depth <= 0) return integrate(rule, corners, f);
  const Point2 m0 = midpoint(corners[1], corners[2]);
  const Point2 m1 = midpoint(corners[2], corners[0]);
  const Point2 m2 = midpoint(corners[0], corners[1]);
  return integrate_composite(rule, {corners[0], m2, m1}, f, depth - 1) +
         integrate_composite(rule, {m2, corners[1], m0}, f, depth - 1) +
         integrate_composite(rule, {m1, m0, corners[2]}, f, depth - 1) +
         integrate_composite(rule, {m2, m0, m1}, f, depth - 1);
}

double integrate_segment(const LineRule& rule, Point2 a, Point2 b,
                         const std::function<double(Point2)>& f) {
  const double len = std::hypot(b.r - a.r, b.z - a.z);
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const double s = rule.points[q];
    sum += rule.weights[q] * f({a.r + s * (b.r - a.r), a.z + s * (b.z - a.z)});
  }
  return len * sum;
}

}  // namespace axifem
