#include "axifem/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include "axifem/error.hpp"
#include "axifem/quadrature.hpp"

namespace axifem {

FourierMode::FourierMode(int k) : k_(k) {
  if (std::abs(k) < 1) throw Error("Fourier mode must satisfy |k| >= 1, got " + std::to_string(k));
}

// --- C_1 --------------------------------------------------------------------

double div_k(const CElementCoeffs& c, FourierMode k) {
  // d_r u_r + (u_r - k u_theta)/r + d_z u_z = g2 + (g2 - k g3) + g2.
  return 3.0 * c.g2 - k.k() * c.g3;
}

Vec3 eval_c(const CElementCoeffs& c, FourierMode k, Point2 p) {
  return {k.k() * c.g1 + c.g2 * p.r, c.g1 + c.g3 * p.r, c.g4 + c.g2 * p.z};
}

double c_axial_ratio(const CElementCoeffs& c, FourierMode k) { return k.k() * c.g3 - c.g2; }

RaviartThomasCoeffs c_flux_part(const CElementCoeffs& c, FourierMode k) {
  return {k.k() * c.g1, c.g4, c.g2};
}

// --- B_1 --------------------------------------------------------------------

Vec3 eval_b(const BElementCoeffs& b, FourierMode k, Point2 p) {
  const auto& [b1, b2, b3, b4, b5, b6] = b.beta;
  const double kk = k.k();
  return {b1 + b4 * p.r + b3 * p.z - b6 * p.r * p.z,
          -kk * b1 + b2 * p.r - kk * b3 * p.z,
          b5 * p.r + b6 * p.r * p.r};
}

NedelecCoeffs b_nedelec_part(const BElementCoeffs& b, FourierMode k) {
  const auto& [b1, b2, b3, b4, b5, b6] = b.beta;
  const double kk = k.k();
  // ((k u_r + u_theta)/r, k u_z/r) = (k b4 + b2 - k b6 z, k b5 + k b6 r).
  return {kk * b6, kk * b4 + b2, kk * b5};
}

Affine b_theta_part(const BElementCoeffs& b, FourierMode k) {
  const double kk = k.k();
  return {-kk * b.beta[0], b.beta[1], -kk * b.beta[2]};
}

BElementCoeffs b_from_parts(const Affine& theta, const NedelecCoeffs& w, FourierMode k) {
  const double kk = k.k();
  BElementCoeffs b;
  b.beta[0] = -theta.c0 / kk;
  b.beta[1] = theta.c1;
  b.beta[2] = -theta.c2 / kk;
  b.beta[5] = w.a / kk;
  b.beta[3] = (w.b - theta.c1) / kk;
  b.beta[4] = w.c / kk;
  return b;
}

CElementCoeffs curl_k(const BElementCoeffs& b, FourierMode k) {
  const auto& [b1, b2, b3, b4, b5, b6] = b.beta;
  const double kk = k.k();
  // curl_r = k(b3 - b5) - k b6 r, curl_theta = (b3 - b5) - 3 b6 r,
  // curl_z = k b4 + 2 b2 - k b6 z.
  (void)b1;
  return {b3 - b5, -kk * b6, -3.0 * b6, kk * b4 + 2.0 * b2};
}

Vec3 curl_k_b(const BElementCoeffs& b, FourierMode k, Point2 p) {
  const auto& [b1, b2, b3, b4, b5, b6] = b.beta;
  const double kk = k.k();
  const double r = p.r;
  const double z = p.z;
  // Each 1/r term is divided out analytically.
  const double uz_over_r = b5 + b6 * r;
  const double dz_utheta = -kk * b3;
  const double dz_ur = b3 - b6 * r;
  const double dr_uz = b5 + 2.0 * b6 * r;
  const double k_ur_plus_utheta_over_r = kk * b4 + b2 - kk * b6 * z;
  const double dr_utheta = b2;
  (void)b1;
  return {-(kk * uz_over_r + dz_utheta), dz_ur - dr_uz, k_ur_plus_utheta_over_r + dr_utheta};
}

// --- A_1 --------------------------------------------------------------------

double eval_a(const AElementCoeffs& a, Point2 p) {
  return p.r * (a.alpha[0] + a.alpha[1] * p.r + a.alpha[2] * p.z);
}

BElementCoeffs grad_k(const AElementCoeffs& a, FourierMode k) {
  const auto& [a1, a2, a3] = a.alpha;
  BElementCoeffs b;
  b.beta = {a1, -k.k() * a2, a3, 2.0 * a2, a3, 0.0};
  return b;
}

Vec3 grad_k_a(const AElementCoeffs& a, FourierMode k, Point2 p) {
  const auto& [a1, a2, a3] = a.alpha;
  return {a1 + 2.0 * a2 * p.r + a3 * p.z, -k.k() * (a1 + a2 * p.r + a3 * p.z), a3 * p.r};
}

// --- local elements ---------------------------------------------------------

double triangle_area(const Triangle& c) {
  return 0.5 * std::abs((c[1].r - c[0].r) * (c[2].z - c[0].z) - (c[2].r - c[0].r) * (c[1].z - c[0].z));
}

namespace {

double signed_area(const Triangle& c) {
  return 0.5 * ((c[1].r - c[0].r) * (c[2].z - c[0].z) - (c[2].r - c[0].r) * (c[1].z - c[0].z));
}

double checked_twice_area(const Triangle& tri) {
  const double a2 = 2.0 * signed_area(tri);
  const double scale = std::max({std::abs(tri[1].r - tri[0].r), std::abs(tri[1].z - tri[0].z),
                                 std::abs(tri[2].r - tri[0].r), std::abs(tri[2].z - tri[0].z)});
  if (!(std::abs(a2) > 1e-14 * scale * scale) || !std::isfinite(a2)) {
    throw Error("degenerate triangle: local element system is singular");
  }
  return a2;
}

}  // namespace

std::array<Affine, 3> barycentric_functions(const Triangle& tri) {
  const double a2 = checked_twice_area(tri);
  std::array<Affine, 3> out;
  for (int i = 0; i < 3; ++i) {
    const Point2& pj = tri[(i + 1) % 3];
    const Point2& pk = tri[(i + 2) % 3];
    out[i] = {(pj.r * pk.z - pk.r * pj.z) / a2, (pj.z - pk.z) / a2, (pk.r - pj.r) / a2};
  }
  return out;
}

std::array<RaviartThomasCoeffs, 3> raviart_thomas_basis(const Triangle& tri) {
  // Unsigned area: fluxes are measured along the outward normal either way.
  const double a2 = std::abs(checked_twice_area(tri));
  std::array<RaviartThomasCoeffs, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = {-tri[i].r / a2, -tri[i].z / a2, 1.0 / a2};
  return out;
}

std::array<NedelecCoeffs, 3> nedelec_basis(const Triangle& tri) {
  const double a2 = checked_twice_area(tri);
  std::array<NedelecCoeffs, 3> out;
  // Rotation by +90 degrees of the RT basis: (x - p_i) -> (-(z - p_z), r - p_r).
  for (int i = 0; i < 3; ++i) out[i] = {1.0 / a2, tri[i].z / a2, -tri[i].r / a2};
  return out;
}

std::array<Point2, 2> local_edge(const Triangle& tri, int i) {
  return {tri[(i + 1) % 3], tri[(i + 2) % 3]};
}

Vec2 outward_normal(const Triangle& tri, int i) {
  const auto [a, b] = local_edge(tri, i);
  const double len = std::hypot(b.r - a.r, b.z - a.z);
  const double s = signed_area(tri) > 0.0 ? 1.0 : -1.0;
  return {s * (b.z - a.z) / len, -s * (b.r - a.r) / len};
}

std::array<double, 4> c_dofs(const VectorField3& u, const Triangle& tri, FourierMode k,
                             const DofQuadrature& quad) {
  const LineRule line = LineRule::gauss(quad.edge_points);
  std::array<double, 4> dofs{};
  for (int i = 0; i < 3; ++i) {
    const auto [a, b] = local_edge(tri, i);
    const Vec2 n = outward_normal(tri, i);
    dofs[i] = integrate_segment(line, a, b, [&](Point2 p) {
      const Vec3 v = u(p);
      return v[0] * n[0] + v[2] * n[1];
    });
  }
  const QuadratureRule rule = QuadratureRule::triangle(quad.triangle_degree);
  const double kk = k.k();
  dofs[3] = integrate_composite(rule, tri, [&](Point2 p) {
              const Vec3 v = u(p);
              return (kk * v[1] - v[0]) / p.r;
            }, quad.triangle_depth) /
            triangle_area(tri);
  for (double d : dofs) {
    if (!std::isfinite(d)) throw Error("non-finite DOF integral: field is not admissible");
  }
  return dofs;
}

std::array<double, 4> c_dofs(const CElementCoeffs& c, const Triangle& tri, FourierMode k) {
  const RaviartThomasCoeffs rt = c_flux_part(c, k);
  std::array<double, 4> dofs{};
  for (int i = 0; i < 3; ++i) {
    const auto [a, b] = local_edge(tri, i);
    const Vec2 n = outward_normal(tri, i);
    const Vec2 v = rt(midpoint(a, b));
    dofs[i] = std::hypot(b.r - a.r, b.z - a.z) * (v[0] * n[0] + v[1] * n[1]);
  }
  dofs[3] = c_axial_ratio(c, k);
  return dofs;
}

CElementCoeffs reconstruct_c(const std::array<double, 4>& dofs, const Triangle& tri, FourierMode k) {
  const auto basis = raviart_thomas_basis(tri);
  RaviartThomasCoeffs rt;
  for (int i = 0; i < 3; ++i) {
    rt.a += dofs[i] * basis[i].a;
    rt.b += dofs[i] * basis[i].b;
    rt.c += dofs[i] * basis[i].c;
  }
  const double kk = k.k();
  CElementCoeffs c;
  c.g1 = rt.a / kk;
  c.g2 = rt.c;
  c.g4 = rt.b;
  c.g3 = (dofs[3] + c.g2) / kk;
  return c;
}

std::array<CElementCoeffs, 4> c_local_basis(const Triangle& tri, FourierMode k) {
  std::array<CElementCoeffs, 4> out;
  for (int i = 0; i < 4; ++i) {
    std::array<double, 4> unit{};
    unit[i] = 1.0;
    out[i] = reconstruct_c(unit, tri, k);
  }
  return out;
}

std::array<double, 6> b_dofs(const BElementCoeffs& b, const Triangle& tri, FourierMode k) {
  const Affine theta = b_theta_part(b, k);
  const NedelecCoeffs w = b_nedelec_part(b, k);
  std::array<double, 6> dofs{};
  for (int i = 0; i < 3; ++i) dofs[i] = theta(tri[i]);
  for (int i = 0; i < 3; ++i) {
    const auto [p, q] = local_edge(tri, i);
    const Vec2 v = w(midpoint(p, q));
    dofs[3 + i] = v[0] * (q.r - p.r) + v[1] * (q.z - p.z);
  }
  return dofs;
}

std::array<BElementCoeffs, 6> b_local_basis(const Triangle& tri, FourierMode k) {
  const auto lambda = barycentric_functions(tri);
  const auto psi = nedelec_basis(tri);
  std::array<BElementCoeffs, 6> out;
  for (int i = 0; i < 3; ++i) {
    out[i] = b_from_parts(lambda[i], NedelecCoeffs{}, k);
    out[3 + i] = b_from_parts(Affine{}, psi[i], k);
  }
  return out;
}

std::array<AElementCoeffs, 3> a_local_basis(const Triangle& tri) {
  const auto lambda = barycentric_functions(tri);
  std::array<AElementCoeffs, 3> out;
  for (int i = 0; i < 3; ++i) out[i].alpha = {lambda[i].c0, lambda[i].c1, lambda[i].c2};
  return out;
}

// --- global spaces ----------------------------------------------------------

AElementCoeffs ASpace::restrict_to(const Vector& coeffs, Index t) const {
  const auto basis = a_local_basis(level_->corners(t));
  const auto dofs = local_dofs(t);
  AElementCoeffs out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.alpha[j] += coeffs[dofs[i]] * basis[i].alpha[j];
  }
  return out;
}

std::array<Index, 6> BSpace::local_dofs(Index t) const {
  const auto& tri = level_->triangles[t];
  const auto& te = level_->triangle_edges[t];
  return {vertex_dof(tri[0]), vertex_dof(tri[1]), vertex_dof(tri[2]),
          edge_dof(te[0]),    edge_dof(te[1]),    edge_dof(te[2])};
}

std::array<BElementCoeffs, 6> BSpace::local_basis(Index t) const {
  auto basis = b_local_basis(level_->corners(t), k_);
  for (int i = 0; i < 3; ++i) {
    const double s = level_->triangle_edge_signs[t][i];
    for (double& b : basis[3 + i].beta) b *= s;
  }
  return basis;
}

BElementCoeffs BSpace::restrict_to(const Vector& coeffs, Index t) const {
  const auto basis = local_basis(t);
  const auto dofs = local_dofs(t);
  BElementCoeffs out;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) out.beta[j] += coeffs[dofs[i]] * basis[i].beta[j];
  }
  return out;
}

std::array<Index, 4> CSpace::local_dofs(Index t) const {
  const auto& te = level_->triangle_edges[t];
  return {edge_dof(te[0]), edge_dof(te[1]), edge_dof(te[2]), triangle_dof(t)};
}

std::array<double, 4> CSpace::local_signs(Index t) const {
  const auto& s = level_->triangle_edge_signs[t];
  return {double(s[0]), double(s[1]), double(s[2]), 1.0};
}

std::array<CElementCoeffs, 4> CSpace::local_basis(Index t) const {
  auto basis = c_local_basis(level_->corners(t), k_);
  const auto signs = local_signs(t);
  for (int i = 0; i < 4; ++i) {
    basis[i].g1 *= signs[i];
    basis[i].g2 *= signs[i];
    basis[i].g3 *= signs[i];
    basis[i].g4 *= signs[i];
  }
  return basis;
}

CElementCoeffs CSpace::restrict_to(const Vector& coeffs, Index t) const {
  const auto basis = local_basis(t);
  const auto dofs = local_dofs(t);
  CElementCoeffs out;
  for (int i = 0; i < 4; ++i) {
    const double c = coeffs[dofs[i]];
    out.g1 += c * basis[i].g1;
    out.g2 += c * basis[i].g2;
    out.g3 += c * basis[i].g3;
    out.g4 += c * basis[i].g4;
  }
  return out;
}

std::array<double, 4> CSpace::global_dofs_on(const CElementCoeffs& c, Index t) const {
  auto dofs = c_dofs(c, level_->corners(t), k_);
  const auto signs = local_signs(t);
  for (int i = 0; i < 4; ++i) dofs[i] *= signs[i];
  return dofs;
}

// --- interpolants -----------------------------------------------------------

Vector interp_canonical_c(const MeshLevel& level, FourierMode k, const VectorField3& u,
                          const DofQuadrature& quad) {
  const CSpace space(level, k);
  Vector out = Vector::Zero(space.dim());
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const auto dofs = c_dofs(u, level.corners(t), k, quad);
    const auto signs = space.local_signs(t);
    const auto ids = space.local_dofs(t);
    for (int i = 0; i < 3; ++i) {
      // Each edge once, from its first adjacent triangle.
      if (level.edge_triangles[level.triangle_edges[t][i]][0] == t) out[ids[i]] = signs[i] * dofs[i];
    }
    out[ids[3]] = dofs[3];
  }
  return out;
}

Index axis_vertex_edge(const MeshLevel& level, Index v) {
  for (Index e : level.vertex_edges[v]) {
    if (level.edge_tags[e] != BoundaryTag::Gamma0) return e;
  }
  throw Error("axis vertex without an off-axis edge");
}

Vector interp_tilde_d(const MeshLevel& level, FourierMode k, const VectorField3& u,
                      const DofQuadrature& quad) {
  const CSpace space(level, k);
  const LineRule line = LineRule::gauss(quad.edge_points);
  const QuadratureRule rule = QuadratureRule::triangle(quad.triangle_degree);
  const double kk = k.k();
  const Index ne = level.num_edges();

  auto on_axis = [&](Index v) { return level.vertices[v].r == 0.0; };
  auto flux = [&](Index e, bool weighted) {
    const Point2 a = level.vertices[level.edges[e][0]];
    const Point2 b = level.vertices[level.edges[e][1]];
    const Vec2 n = level.edge_normal(e);
    return integrate_segment(line, a, b, [&](Point2 p) {
      const Vec3 v = u(p);
      return (v[0] * n[0] + v[2] * n[1]) * (weighted ? p.r : 1.0);
    });
  };

  Vector out = Vector::Zero(space.dim());
  // 0: undetermined, 1: plain flux, 2: axis-vertex edge.
  std::vector<int> status(static_cast<std::size_t>(ne), 0);
  for (Index e = 0; e < ne; ++e) {
    if (!on_axis(level.edges[e][0]) && !on_axis(level.edges[e][1])) {
      out[space.edge_dof(e)] = flux(e, false);
      status[e] = 1;
    }
  }
  for (Index v = 0; v < level.num_vertices(); ++v) {
    if (!on_axis(v)) continue;
    const Index e = axis_vertex_edge(level, v);
    const Point2 m = midpoint(level.vertices[level.edges[e][0]], level.vertices[level.edges[e][1]]);
    // The global basis of e has normal component 1/|e| along e.
    out[space.edge_dof(e)] = flux(e, true) / m.r;
    status[e] = 2;
  }

  // Remaining axis-touching edges from r-weighted divergence moments on the
  // triangles meeting the axis.
  std::vector<Index> unknown_id(static_cast<std::size_t>(ne), kNoIndex);
  Index num_unknown = 0;
  for (Index e = 0; e < ne; ++e) {
    if (status[e] == 0) unknown_id[e] = num_unknown++;
  }
  std::vector<Index> axis_triangles;
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const auto& tri = level.triangles[t];
    if (on_axis(tri[0]) || on_axis(tri[1]) || on_axis(tri[2])) axis_triangles.push_back(t);
  }
  if (static_cast<Index>(axis_triangles.size()) != num_unknown) {
    throw Error("axis functionals do not match the number of axis edges");
  }
  if (num_unknown > 0) {
    std::vector<Eigen::Triplet<double>> triplets;
    Vector rhs = Vector::Zero(num_unknown);
    for (Index row = 0; row < num_unknown; ++row) {
      const Index t = axis_triangles[row];
      const Triangle corners = level.corners(t);
      const double area = triangle_area(corners);
      const double r_moment = integrate(rule, corners, [](Point2 p) { return p.r; });
      // int_K r div_rz u = oint r u.n - int_K u_r.
      double target = -integrate_composite(rule, corners, [&](Point2 p) { return u(p)[0]; },
                                           quad.triangle_depth);
      for (int i = 0; i < 3; ++i) {
        const auto [a, b] = local_edge(corners, i);
        const Vec2 n = outward_normal(corners, i);
        target += integrate_segment(line, a, b, [&](Point2 p) {
          const Vec3 v = u(p);
          return p.r * (v[0] * n[0] + v[2] * n[1]);
        });
      }
      for (int i = 0; i < 3; ++i) {
        const Index e = level.triangle_edges[t][i];
        const double coeff = level.triangle_edge_signs[t][i] * r_moment / area;
        if (unknown_id[e] == kNoIndex) {
          target -= coeff * out[space.edge_dof(e)];
        } else {
          triplets.emplace_back(row, unknown_id[e], coeff);
        }
      }
      rhs[row] = target;
    }
    Eigen::SparseMatrix<double> system(num_unknown, num_unknown);
    system.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(system);
    if (lu.info() != Eigen::Success) throw Error("axis interpolation system is singular");
    const Vector sol = lu.solve(rhs);
    for (Index e = 0; e < ne; ++e) {
      if (unknown_id[e] != kNoIndex) out[space.edge_dof(e)] = sol[unknown_id[e]];
    }
  }

  for (Index t = 0; t < level.num_triangles(); ++t) {
    const Triangle corners = level.corners(t);
    const double num = integrate_composite(rule, corners, [&](Point2 p) {
      const Vec3 v = u(p);
      return p.r * p.r * (kk * v[1] - v[0]);
    }, quad.triangle_depth);
    const double den = integrate(rule, corners, [](Point2 p) { return p.r * p.r * p.r; });
    out[space.triangle_dof(t)] = num / den;
  }
  for (Index i = 0; i < out.size(); ++i) {
    if (!std::isfinite(out[i])) throw Error("non-finite DOF integral: field is not admissible");
  }
  return out;
}

Vector weighted_clement(const MeshLevel& level, const ScalarField& u, const DofQuadrature& quad) {
  const QuadratureRule rule = QuadratureRule::triangle(quad.triangle_degree);
  Vector out = Vector::Zero(level.num_vertices());
  for (Index v = 0; v < level.num_vertices(); ++v) {
    const Index t = level.vertex_triangles[v].front();
    const Triangle corners = level.corners(t);
    const auto lambda = barycentric_functions(corners);
    Eigen::Matrix3d gram;
    Eigen::Vector3d rhs;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        gram(a, b) = integrate(rule, corners, [&](Point2 p) { return lambda[a](p) * lambda[b](p) * p.r; });
      }
      rhs[a] = integrate_composite(rule, corners, [&](Point2 p) { return u(p) * lambda[a](p) * p.r; },
                                   quad.triangle_depth);
    }
    const Eigen::LLT<Eigen::Matrix3d> llt(gram);
    if (llt.info() != Eigen::Success) throw Error("singular weighted Clement Gram matrix");
    const Eigen::Vector3d coeffs = llt.solve(rhs);
    const auto& tri = level.triangles[t];
    for (int a = 0; a < 3; ++a) {
      if (tri[a] == v) out[v] = coeffs[a];
    }
  }
  return out;
}

Vector clement_nedelec(const MeshLevel& level, const VectorField2& field, const DofQuadrature& quad) {
  const QuadratureRule rule = QuadratureRule::triangle(quad.triangle_degree);
  Vector out = Vector::Zero(level.num_edges());
  for (Index e = 0; e < level.num_edges(); ++e) {
    const Index t = level.edge_triangles[e][0];
    const Triangle corners = level.corners(t);
    const auto psi = nedelec_basis(corners);
    Eigen::Matrix3d gram;
    Eigen::Vector3d rhs;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        gram(a, b) = integrate(rule, corners, [&](Point2 p) {
          const Vec2 x = psi[a](p);
          const Vec2 y = psi[b](p);
          return (x[0] * y[0] + x[1] * y[1]) * p.r * p.r * p.r;
        });
      }
      rhs[a] = integrate_composite(rule, corners, [&](Point2 p) {
        const Vec2 x = psi[a](p);
        const Vec2 y = field(p);
        return (x[0] * y[0] + x[1] * y[1]) * p.r * p.r * p.r;
      }, quad.triangle_depth);
    }
    const Eigen::LLT<Eigen::Matrix3d> llt(gram);
    if (llt.info() != Eigen::Success) throw Error("singular r^3-weighted Nedelec Gram matrix");
    const Eigen::Vector3d coeffs = llt.solve(rhs);
    for (int i = 0; i < 3; ++i) {
      if (level.triangle_edges[t][i] == e) out[e] = level.triangle_edge_signs[t][i] * coeffs[i];
    }
  }
  return out;
}

Vector interp_tilde_c(const MeshLevel& level, FourierMode k, const VectorField3& u,
                      const DofQuadrature& quad) {
  const double kk = k.k();
  const Vector theta = weighted_clement(level, [&](Point2 p) { return u(p)[1]; }, quad);
  const Vector moments = clement_nedelec(level, [&](Point2 p) {
    const Vec3 v = u(p);
    return Vec2{(kk * v[0] + v[1]) / p.r, kk * v[2] / p.r};
  }, quad);
  const BSpace space(level, k);
  Vector out(space.dim());
  out << theta, moments;
  return out;
}

Vector pi_s(const MeshLevel& level, const ScalarField& p, const DofQuadrature& quad) {
  const QuadratureRule rule = QuadratureRule::triangle(quad.triangle_degree);
  Vector out(level.num_triangles());
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const Triangle corners = level.corners(t);
    const double num = integrate_composite(rule, corners, [&](Point2 x) { return p(x) * x.r; },
                                           quad.triangle_depth);
    const double den = integrate(rule, corners, [](Point2 x) { return x.r; });
    out[t] = num / den;
  }
  return out;
}

// --- evaluation -------------------------------------------------------------

Vec3 eval(const CSpace& space, const Vector& coeffs, Index t, Point2 p) {
  return eval_c(space.restrict_to(coeffs, t), space.mode(), p);
}

Vec3 eval(const BSpace& space, const Vector& coeffs, Index t, Point2 p) {
  return eval_b(space.restrict_to(coeffs, t), space.mode(), p);
}

double eval_p1(const MeshLevel& level, const Vector& vertex_values, Index t, Point2 p) {
  const auto lambda = barycentric_functions(level.corners(t));
  double out = 0.0;
  for (int i = 0; i < 3; ++i) out += vertex_values[level.triangles[t][i]] * lambda[i](p);
  return out;
}

Vec2 eval_nedelec(const MeshLevel& level, const Vector& edge_moments, Index t, Point2 p) {
  const auto psi = nedelec_basis(level.corners(t));
  Vec2 out{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    const double c = level.triangle_edge_signs[t][i] * edge_moments[level.triangle_edges[t][i]];
    const Vec2 v = psi[i](p);
    out[0] += c * v[0];
    out[1] += c * v[1];
  }
  return out;
}

}  // namespace axifem
