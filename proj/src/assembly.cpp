#include "axifem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <vector>

#include "axifem/error.hpp"

namespace axifem {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SparseOperator from_triplets(Index rows, Index cols, const Triplets& triplets, bool symmetric) {
  SparseOperator op;
  op.matrix.resize(rows, cols);
  op.matrix.setFromTriplets(triplets.begin(), triplets.end());
  op.matrix.makeCompressed();
  op.symmetric = symmetric;
  return op;
}

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double weight_pow(double r, int power) {
  switch (power) {
    case 1: return r;
    case 3: return r * r * r;
    default: return std::pow(r, power);
  }
}

template <class Element>
SparseOperator assemble_c_bilinear(const CSpace& space, Element element) {
  const MeshLevel& level = space.level();
  Triplets triplets;
  triplets.reserve(static_cast<std::size_t>(16 * level.num_triangles()));
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const Eigen::Matrix4d local = element(level.corners(t), space.mode());
    const auto ids = space.local_dofs(t);
    const auto signs = space.local_signs(t);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) triplets.emplace_back(ids[i], ids[j], signs[i] * signs[j] * local(i, j));
    }
  }
  return from_triplets(space.dim(), space.dim(), triplets, true);
}

}  // namespace

Eigen::Matrix4d mass_c_element(const Triangle& tri, FourierMode k, const QuadratureRule& rule) {
  const auto basis = c_local_basis(tri, k);
  const double area = triangle_area(tri);
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Point2 p = map_point(tri, rule.points[q]);
    std::array<Vec3, 4> values;
    for (int i = 0; i < 4; ++i) values[i] = eval_c(basis[i], k, p);
    const double w = area * rule.weights[q] * p.r;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) m(i, j) += w * dot3(values[i], values[j]);
    }
  }
  return m;
}

Eigen::Matrix4d lambda_element(const Triangle& tri, FourierMode k, const QuadratureRule& rule) {
  Eigen::Matrix4d m = mass_c_element(tri, k, rule);
  const auto basis = c_local_basis(tri, k);
  const double r_moment = integrate(rule, tri, [](Point2 p) { return p.r; });
  Eigen::Vector4d div;
  for (int i = 0; i < 4; ++i) div[i] = div_k(basis[i], k);
  m += r_moment * div * div.transpose();
  return m;
}

SparseOperator assemble_lambda(const CSpace& space) {
  return assemble_c_bilinear(space, [](const Triangle& tri, FourierMode k) { return lambda_element(tri, k); });
}

SparseOperator assemble_mass_c(const CSpace& space) {
  return assemble_c_bilinear(space, [](const Triangle& tri, FourierMode k) { return mass_c_element(tri, k); });
}

SparseOperator assemble_mass_d(const MeshLevel& level) {
  Triplets triplets;
  for (Index t = 0; t < level.num_triangles(); ++t) {
    triplets.emplace_back(t, t, integrate(assembly_rule(), level.corners(t), [](Point2 p) { return p.r; }));
  }
  return from_triplets(level.num_triangles(), level.num_triangles(), triplets, true);
}

SparseOperator assemble_div(const CSpace& space) {
  const MeshLevel& level = space.level();
  Triplets triplets;
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const auto basis = space.local_basis(t);
    const auto ids = space.local_dofs(t);
    const double r_moment = integrate(assembly_rule(), level.corners(t), [](Point2 p) { return p.r; });
    for (int i = 0; i < 4; ++i) triplets.emplace_back(t, ids[i], r_moment * div_k(basis[i], space.mode()));
  }
  return from_triplets(level.num_triangles(), space.dim(), triplets, false);
}

SparseOperator assemble_div_values(const CSpace& space) {
  const MeshLevel& level = space.level();
  Triplets triplets;
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const auto basis = space.local_basis(t);
    const auto ids = space.local_dofs(t);
    for (int i = 0; i < 4; ++i) triplets.emplace_back(t, ids[i], div_k(basis[i], space.mode()));
  }
  return from_triplets(level.num_triangles(), space.dim(), triplets, false);
}

SparseOperator assemble_curl(const BSpace& b_space, const CSpace& c_space) {
  const MeshLevel& level = c_space.level();
  const FourierMode k = c_space.mode();
  Triplets triplets;
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const auto basis = b_space.local_basis(t);
    const auto b_ids = b_space.local_dofs(t);
    const auto c_ids = c_space.local_dofs(t);
    for (int j = 0; j < 6; ++j) {
      const auto dofs = c_space.global_dofs_on(curl_k(basis[j], k), t);
      for (int i = 0; i < 3; ++i) {
        // Edge rows once, from the first adjacent triangle.
        if (level.edge_triangles[level.triangle_edges[t][i]][0] != t) continue;
        if (dofs[i] != 0.0) triplets.emplace_back(c_ids[i], b_ids[j], dofs[i]);
      }
      if (dofs[3] != 0.0) triplets.emplace_back(c_ids[3], b_ids[j], dofs[3]);
    }
  }
  return from_triplets(c_space.dim(), b_space.dim(), triplets, false);
}

SparseOperator assemble_grad(const ASpace& a_space, const BSpace& b_space) {
  const MeshLevel& level = a_space.level();
  const FourierMode k = b_space.mode();
  std::vector<char> vertex_done(static_cast<std::size_t>(level.num_vertices()), 0);
  Triplets triplets;
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const Triangle corners = level.corners(t);
    const auto basis = a_local_basis(corners);
    const auto a_ids = a_space.local_dofs(t);
    const auto b_ids = b_space.local_dofs(t);
    for (int j = 0; j < 3; ++j) {
      auto dofs = b_dofs(grad_k(basis[j], k), corners, k);
      for (int i = 0; i < 3; ++i) {
        const Index v = level.triangles[t][i];
        if (!vertex_done[v] && dofs[i] != 0.0) triplets.emplace_back(b_ids[i], a_ids[j], dofs[i]);
        const Index e = level.triangle_edges[t][i];
        if (level.edge_triangles[e][0] == t && dofs[3 + i] != 0.0) {
          triplets.emplace_back(b_ids[3 + i], a_ids[j], level.triangle_edge_signs[t][i] * dofs[3 + i]);
        }
      }
    }
    for (Index v : level.triangles[t]) vertex_done[v] = 1;
  }
  return from_triplets(b_space.dim(), a_space.dim(), triplets, false);
}

Vector assemble_load(const CSpace& space, const VectorField3& f) {
  const MeshLevel& level = space.level();
  const QuadratureRule& rule = error_rule();
  Vector load = Vector::Zero(space.dim());
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const Triangle corners = level.corners(t);
    const auto basis = space.local_basis(t);
    const auto ids = space.local_dofs(t);
    const double area = triangle_area(corners);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point2 p = map_point(corners, rule.points[q]);
      const Vec3 fv = f(p);
      const double w = area * rule.weights[q] * p.r;
      for (int i = 0; i < 4; ++i) load[ids[i]] += w * dot3(fv, eval_c(basis[i], space.mode(), p));
    }
  }
  return load;
}

Vector assemble_load_d(const MeshLevel& level, const ScalarField& f) {
  Vector load(level.num_triangles());
  for (Index t = 0; t < level.num_triangles(); ++t) {
    load[t] = integrate(error_rule(), level.corners(t), [&](Point2 p) { return f(p) * p.r; });
  }
  return load;
}

double l2r_error(const CSpace& space, const Vector& coeffs, const VectorField3& exact) {
  const MeshLevel& level = space.level();
  double sum = 0.0;
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const CElementCoeffs c = space.restrict_to(coeffs, t);
    sum += integrate(error_rule(), level.corners(t), [&](Point2 p) {
      const Vec3 uh = eval_c(c, space.mode(), p);
      const Vec3 u = exact(p);
      const Vec3 d{uh[0] - u[0], uh[1] - u[1], uh[2] - u[2]};
      return dot3(d, d) * p.r;
    });
  }
  return std::sqrt(sum);
}

double l2r_error(const BSpace& space, const Vector& coeffs, const VectorField3& exact) {
  const MeshLevel& level = space.level();
  double sum = 0.0;
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const BElementCoeffs b = space.restrict_to(coeffs, t);
    sum += integrate(error_rule(), level.corners(t), [&](Point2 p) {
      const Vec3 uh = eval_b(b, space.mode(), p);
      const Vec3 u = exact(p);
      const Vec3 d{uh[0] - u[0], uh[1] - u[1], uh[2] - u[2]};
      return dot3(d, d) * p.r;
    });
  }
  return std::sqrt(sum);
}

double l2r_error(const DSpace& space, const Vector& coeffs, const ScalarField& exact) {
  const MeshLevel& level = space.level();
  double sum = 0.0;
  for (Index t = 0; t < level.num_triangles(); ++t) {
    sum += integrate(error_rule(), level.corners(t), [&](Point2 p) {
      const double d = coeffs[t] - exact(p);
      return d * d * p.r;
    });
  }
  return std::sqrt(sum);
}

double weighted_error_p1(const MeshLevel& level, const Vector& vertex_values,
                         const ScalarField& exact, int power) {
  double sum = 0.0;
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const auto lambda = barycentric_functions(level.corners(t));
    const auto& tri = level.triangles[t];
    sum += integrate(error_rule(), level.corners(t), [&](Point2 p) {
      double uh = 0.0;
      for (int i = 0; i < 3; ++i) uh += vertex_values[tri[i]] * lambda[i](p);
      const double d = uh - exact(p);
      return d * d * weight_pow(p.r, power);
    });
  }
  return std::sqrt(sum);
}

double weighted_error_nedelec(const MeshLevel& level, const Vector& edge_moments,
                              const VectorField2& exact, int power) {
  double sum = 0.0;
  for (Index t = 0; t < level.num_triangles(); ++t) {
    sum += integrate(error_rule(), level.corners(t), [&](Point2 p) {
      const Vec2 vh = eval_nedelec(level, edge_moments, t, p);
      const Vec2 v = exact(p);
      const double d0 = vh[0] - v[0];
      const double d1 = vh[1] - v[1];
      return (d0 * d0 + d1 * d1) * weight_pow(p.r, power);
    });
  }
  return std::sqrt(sum);
}

double asymmetry(const SparseMatrix& a) {
  const SparseMatrix diff = a - SparseMatrix(a.transpose());
  double m = 0.0;
  for (Index i = 0; i < diff.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(diff, i); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

void write_coordinate(const SparseOperator& op, std::ostream& out) {
  out << std::setprecision(17);
  for (Index i = 0; i < op.matrix.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(op.matrix, i); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
}

}  // namespace axifem
