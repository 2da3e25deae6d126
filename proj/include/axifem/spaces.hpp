#pragma once

#include <array>
#include <functional>

#include <Eigen/Core>

#include "axifem/mesh.hpp"

namespace axifem {

using Vector = Eigen::VectorXd;
using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

using ScalarField = std::function<double(Point2)>;
using VectorField2 = std::function<Vec2(Point2)>;
/// Components (u_r, u_theta, u_z).
using VectorField3 = std::function<Vec3(Point2)>;

/// Fourier mode index, |k| >= 1.
class FourierMode {
 public:
  explicit FourierMode(int k);
  int value() const { return k_; }
  double k() const { return static_cast<double>(k_); }

 private:
  int k_;
};

/// (u_r, u_theta, u_z) = (k g1 + g2 r, g1 + g3 r, g4 + g2 z).
struct CElementCoeffs {
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
  double g4 = 0.0;
};

/// (u_r, u_theta, u_z) = (b1 + b4 r + b3 z - b6 r z, -k b1 + b2 r - k b3 z, b5 r + b6 r^2),
/// stored as beta[0..5] = b1..b6.
struct BElementCoeffs {
  std::array<double, 6> beta{};
};

/// u = a1 r + a2 r^2 + a3 r z, stored as alpha[0..2].
struct AElementCoeffs {
  std::array<double, 3> alpha{};
};

/// Affine function c0 + c1 r + c2 z.
struct Affine {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double operator()(Point2 p) const { return c0 + c1 * p.r + c2 * p.z; }
};

/// Lowest-order Nedelec field (b - a z, c + a r).
struct NedelecCoeffs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  Vec2 operator()(Point2 p) const { return {b - a * p.z, c + a * p.r}; }
};

/// Lowest-order Raviart-Thomas field (a + c r, b + c z).
struct RaviartThomasCoeffs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  Vec2 operator()(Point2 p) const { return {a + c * p.r, b + c * p.z}; }
};

using Triangle = std::array<Point2, 3>;

// --- local shape spaces -----------------------------------------------------

/// Weighted divergence; constant on C_1.
double div_k(const CElementCoeffs& c, FourierMode k);
Vec3 eval_c(const CElementCoeffs& c, FourierMode k, Point2 p);
/// (k u_theta - u_r) / r, constant on C_1.
double c_axial_ratio(const CElementCoeffs& c, FourierMode k);
RaviartThomasCoeffs c_flux_part(const CElementCoeffs& c, FourierMode k);

Vec3 eval_b(const BElementCoeffs& b, FourierMode k, Point2 p);
/// ((k u_r + u_theta)/r, k u_z / r) of a B_1 function.
NedelecCoeffs b_nedelec_part(const BElementCoeffs& b, FourierMode k);
Affine b_theta_part(const BElementCoeffs& b, FourierMode k);
BElementCoeffs b_from_parts(const Affine& theta, const NedelecCoeffs& w, FourierMode k);
/// Symbolic curl^k: maps B_1 into C_1.
CElementCoeffs curl_k(const BElementCoeffs& b, FourierMode k);
/// Pointwise curl^k of a B_1 function from the defining formula.
Vec3 curl_k_b(const BElementCoeffs& b, FourierMode k, Point2 p);

double eval_a(const AElementCoeffs& a, Point2 p);
/// Symbolic grad^k: maps A_1 into B_1.
BElementCoeffs grad_k(const AElementCoeffs& a, FourierMode k);
/// Pointwise grad^k of an A_1 function from the defining formula.
Vec3 grad_k_a(const AElementCoeffs& a, FourierMode k, Point2 p);

// --- local elements ---------------------------------------------------------

double triangle_area(const Triangle& tri);
/// Barycentric coordinate functions as affine maps.
std::array<Affine, 3> barycentric_functions(const Triangle& tri);
/// RT basis with unit outward flux through local edge i (opposite vertex i).
std::array<RaviartThomasCoeffs, 3> raviart_thomas_basis(const Triangle& tri);
/// Nedelec basis with unit tangential moment along local edge i, traversed
/// counterclockwise.
std::array<NedelecCoeffs, 3> nedelec_basis(const Triangle& tri);
/// Local edge i endpoints in counterclockwise order.
std::array<Point2, 2> local_edge(const Triangle& tri, int i);
/// Outward unit normal of local edge i.
Vec2 outward_normal(const Triangle& tri, int i);

/// Quadrature accuracy used by DOF functionals of non-polynomial fields.
struct DofQuadrature {
  int edge_points = 8;
  int triangle_degree = 10;
  int triangle_depth = 1;
};

/// Canonical C_1 DOFs: outward fluxes of u_rz through local edges 0..2, then
/// the mean of (k u_theta - u_r)/r.
std::array<double, 4> c_dofs(const VectorField3& u, const Triangle& tri, FourierMode k,
                             const DofQuadrature& quad = {});
/// Exact canonical DOFs of a C_1 function.
std::array<double, 4> c_dofs(const CElementCoeffs& c, const Triangle& tri, FourierMode k);
CElementCoeffs reconstruct_c(const std::array<double, 4>& dofs, const Triangle& tri, FourierMode k);
/// Dual basis of the canonical DOFs.
std::array<CElementCoeffs, 4> c_local_basis(const Triangle& tri, FourierMode k);

/// B_1 DOFs: u_theta at the three vertices, then tangential moments of the
/// derived Nedelec field along local edges (counterclockwise).
std::array<double, 6> b_dofs(const BElementCoeffs& b, const Triangle& tri, FourierMode k);
std::array<BElementCoeffs, 6> b_local_basis(const Triangle& tri, FourierMode k);

/// A_1 basis r * lambda_i; DOFs are values of u / r at the vertices.
std::array<AElementCoeffs, 3> a_local_basis(const Triangle& tri);

// --- global spaces ----------------------------------------------------------

enum class SpaceTag { A, B, C, D };

/// A_h: r times continuous P1. One DOF per vertex.
class ASpace {
 public:
  explicit ASpace(const MeshLevel& level) : level_(&level) {}
  SpaceTag tag() const { return SpaceTag::A; }
  Index dim() const { return level_->num_vertices(); }
  const MeshLevel& level() const { return *level_; }
  std::array<Index, 3> local_dofs(Index t) const { return level_->triangles[t]; }
  AElementCoeffs restrict_to(const Vector& coeffs, Index t) const;

 private:
  const MeshLevel* level_;
};

/// B_h: vertex DOFs (u_theta) first, then edge DOFs (Nedelec moments along the
/// global tangent).
class BSpace {
 public:
  BSpace(const MeshLevel& level, FourierMode k) : level_(&level), k_(k) {}
  SpaceTag tag() const { return SpaceTag::B; }
  Index dim() const { return level_->num_vertices() + level_->num_edges(); }
  FourierMode mode() const { return k_; }
  const MeshLevel& level() const { return *level_; }
  Index vertex_dof(Index v) const { return v; }
  Index edge_dof(Index e) const { return level_->num_vertices() + e; }
  std::array<Index, 6> local_dofs(Index t) const;
  /// Global basis functions restricted to t, in local_dofs order.
  std::array<BElementCoeffs, 6> local_basis(Index t) const;
  BElementCoeffs restrict_to(const Vector& coeffs, Index t) const;

 private:
  const MeshLevel* level_;
  FourierMode k_;
};

/// C_h: edge DOFs (flux along the global normal) first, then one DOF per
/// triangle (the constant (k u_theta - u_r)/r).
class CSpace {
 public:
  CSpace(const MeshLevel& level, FourierMode k) : level_(&level), k_(k) {}
  SpaceTag tag() const { return SpaceTag::C; }
  Index dim() const { return level_->num_edges() + level_->num_triangles(); }
  FourierMode mode() const { return k_; }
  const MeshLevel& level() const { return *level_; }
  Index edge_dof(Index e) const { return e; }
  Index triangle_dof(Index t) const { return level_->num_edges() + t; }
  std::array<Index, 4> local_dofs(Index t) const;
  std::array<double, 4> local_signs(Index t) const;
  std::array<CElementCoeffs, 4> local_basis(Index t) const;
  CElementCoeffs restrict_to(const Vector& coeffs, Index t) const;
  /// Global DOF values of a C_1 function living on triangle t (edge DOFs use
  /// the global normal).
  std::array<double, 4> global_dofs_on(const CElementCoeffs& c, Index t) const;

 private:
  const MeshLevel* level_;
  FourierMode k_;
};

/// D_h: piecewise constants.
class DSpace {
 public:
  explicit DSpace(const MeshLevel& level) : level_(&level) {}
  SpaceTag tag() const { return SpaceTag::D; }
  Index dim() const { return level_->num_triangles(); }
  const MeshLevel& level() const { return *level_; }

 private:
  const MeshLevel* level_;
};

// --- interpolants -----------------------------------------------------------

/// Canonical interpolant onto C_h.
Vector interp_canonical_c(const MeshLevel& level, FourierMode k, const VectorField3& u,
                          const DofQuadrature& quad = {});

/// Interpolant onto C_h built from r^3-weighted triangle moments and
/// axis-aware edge functionals.
Vector interp_tilde_d(const MeshLevel& level, FourierMode k, const VectorField3& u,
                      const DofQuadrature& quad = {});

/// Weighted Clement quasi-interpolant onto continuous P1 (vertex values).
Vector weighted_clement(const MeshLevel& level, const ScalarField& u,
                        const DofQuadrature& quad = {});

/// r^3-weighted Clement-type quasi-interpolant onto the lowest-order Nedelec
/// space (moments along the global edge tangent).
Vector clement_nedelec(const MeshLevel& level, const VectorField2& v,
                       const DofQuadrature& quad = {});

/// Quasi-interpolant onto B_h from the two Clement operators.
Vector interp_tilde_c(const MeshLevel& level, FourierMode k, const VectorField3& u,
                      const DofQuadrature& quad = {});

/// L^2_r projection onto piecewise constants.
Vector pi_s(const MeshLevel& level, const ScalarField& p, const DofQuadrature& quad = {});

/// Edge associated with an axis vertex by the weighted interpolant: the
/// incident edge not lying on the axis with the smallest index.
Index axis_vertex_edge(const MeshLevel& level, Index v);

// --- evaluation of global functions -----------------------------------------

Vec3 eval(const CSpace& space, const Vector& coeffs, Index t, Point2 p);
Vec3 eval(const BSpace& space, const Vector& coeffs, Index t, Point2 p);
double eval_p1(const MeshLevel& level, const Vector& vertex_values, Index t, Point2 p);
Vec2 eval_nedelec(const MeshLevel& level, const Vector& edge_moments, Index t, Point2 p);

}  // namespace axifem
