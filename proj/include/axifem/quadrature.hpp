#pragma once

#include <array>
#include <functional>
#include <vector>

#include "axifem/mesh.hpp"

namespace axifem {

/// Integration rule on a triangle in barycentric form.
///
/// Weights sum to one; the integral over K is |K| * sum_q w_q f(x_q).
struct QuadratureRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int degree = 0;

  /// Collapsed Gauss-Legendre rule exact for polynomials of total degree
  /// <= `degree`.
  static QuadratureRule triangle(int degree);

  std::size_t size() const { return weights.size(); }
};

/// Gauss-Legendre nodes and weights on [0, 1].
struct LineRule {
  std::vector<double> points;
  std::vector<double> weights;

  static LineRule gauss(int num_points);
};

/// Degree of the rule used for element matrices.
inline constexpr int kAssemblyDegree = 4;
/// Degree of the rule used for load vectors and error norms.
inline constexpr int kErrorDegree = 10;

/// Minimal exactness degree for the weighted element integrals: affine
/// components give degree-2 products, times the weight r.
int weighted_mass_degree();

const QuadratureRule& assembly_rule();
const QuadratureRule& error_rule();

Point2 map_point(const std::array<Point2, 3>& corners, const std::array<double, 3>& lambda);

double integrate(const QuadratureRule& rule, const std::array<Point2, 3>& corners,
                 const std::function<double(Point2)>& f);

/// Integrate by splitting the triangle into 4^depth red-refined pieces.
double integrate_composite(const QuadratureRule& rule, const std::array<Point2, 3>& corners,
                           const std::function<double(Point2)>& f, int depth);

/// Integral of f along the segment a -> b (with respect to arc length).
double integrate_segment(const LineRule& rule, Point2 a, Point2 b,
                         const std::function<double(Point2)>& f);

}  // namespace axifem
