#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "axifem/error.hpp"
#include "axifem/quadrature.hpp"
#include "axifem/spaces.hpp"

using namespace axifem;

namespace {

constexpr double kStep = 1e-5;

// Central differences of a vector field, used as an oracle independent of the
// symbolic formulas.
Vec3 d_dr(const VectorField3& u, Point2 p) {
  const Vec3 a = u({p.r + kStep, p.z});
  const Vec3 b = u({p.r - kStep, p.z});
  return {(a[0] - b[0]) / (2 * kStep), (a[1] - b[1]) / (2 * kStep), (a[2] - b[2]) / (2 * kStep)};
}

Vec3 d_dz(const VectorField3& u, Point2 p) {
  const Vec3 a = u({p.r, p.z + kStep});
  const Vec3 b = u({p.r, p.z - kStep});
  return {(a[0] - b[0]) / (2 * kStep), (a[1] - b[1]) / (2 * kStep), (a[2] - b[2]) / (2 * kStep)};
}

double fd_div(const VectorField3& u, double k, Point2 p) {
  const Vec3 v = u(p);
  return d_dr(u, p)[0] + (v[0] - k * v[1]) / p.r + d_dz(u, p)[2];
}

Vec3 fd_curl(const VectorField3& u, double k, Point2 p) {
  const Vec3 v = u(p);
  const Vec3 dr = d_dr(u, p);
  const Vec3 dz = d_dz(u, p);
  return {-(k * v[2] / p.r + dz[1]), dz[0] - dr[2], (k * v[0] + v[1]) / p.r + dr[1]};
}

std::mt19937_64 rng(42);
double uniform() { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng); }

CElementCoeffs random_c() { return {uniform(), uniform(), uniform(), uniform()}; }

BElementCoeffs random_b() {
  BElementCoeffs b;
  for (double& x : b.beta) x = uniform();
  return b;
}

const Triangle kTri{{{0.3, 0.2}, {0.9, 0.35}, {0.5, 0.8}}};
const Triangle kAxisTri{{{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}}};

}  // namespace

TEST_CASE("Fourier mode validation") {
  CHECK_THROWS_AS(FourierMode(0), Error);
  CHECK(FourierMode(-2).value() == -2);
}

TEST_CASE("weighted operators agree with finite differences") {
  for (int kv : {1, 2, -1, -2, 3}) {
    const FourierMode k(kv);
    const Point2 p{0.6, 0.4};
    for (int trial = 0; trial < 5; ++trial) {
      const CElementCoeffs c = random_c();
      const VectorField3 uc = [&](Point2 x) { return eval_c(c, k, x); };
      CHECK(div_k(c, k) == doctest::Approx(fd_div(uc, k.k(), p)).epsilon(1e-7));
      const Vec3 v = eval_c(c, k, p);
      CHECK(c_axial_ratio(c, k) == doctest::Approx((k.k() * v[1] - v[0]) / p.r).epsilon(1e-12));

      const BElementCoeffs b = random_b();
      const VectorField3 ub = [&](Point2 x) { return eval_b(b, k, x); };
      const Vec3 fd = fd_curl(ub, k.k(), p);
      const Vec3 sym = eval_c(curl_k(b, k), k, p);
      const Vec3 pw = curl_k_b(b, k, p);
      for (int i = 0; i < 3; ++i) {
        CHECK(sym[i] == doctest::Approx(fd[i]).epsilon(1e-7));
        CHECK(pw[i] == doctest::Approx(sym[i]).epsilon(1e-12));
      }

      AElementCoeffs a;
      a.alpha = {uniform(), uniform(), uniform()};
      const Vec3 g = grad_k_a(a, k, p);
      const double h = kStep;
      CHECK(g[0] == doctest::Approx((eval_a(a, {p.r + h, p.z}) - eval_a(a, {p.r - h, p.z})) / (2 * h)).epsilon(1e-7));
      CHECK(g[1] == doctest::Approx(-k.k() * eval_a(a, p) / p.r));
      CHECK(g[2] == doctest::Approx((eval_a(a, {p.r, p.z + h}) - eval_a(a, {p.r, p.z - h})) / (2 * h)).epsilon(1e-7));
      const Vec3 gs = eval_b(grad_k(a, k), k, p);
      for (int i = 0; i < 3; ++i) CHECK(gs[i] == doctest::Approx(g[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("the local complex is exact on polynomials") {
  const FourierMode k(2);
  for (int trial = 0; trial < 10; ++trial) {
    CHECK(std::abs(div_k(curl_k(random_b(), k), k)) < 1e-13);
    AElementCoeffs a;
    a.alpha = {uniform(), uniform(), uniform()};
    const CElementCoeffs c = curl_k(grad_k(a, k), k);
    CHECK(std::abs(c.g1) + std::abs(c.g2) + std::abs(c.g3) + std::abs(c.g4) < 1e-13);
  }
}

TEST_CASE("B_1 split into u_theta and the Nedelec part") {
  for (int kv : {1, -2}) {
    const FourierMode k(kv);
    const BElementCoeffs b = random_b();
    const BElementCoeffs back = b_from_parts(b_theta_part(b, k), b_nedelec_part(b, k), k);
    for (int i = 0; i < 6; ++i) CHECK(back.beta[i] == doctest::Approx(b.beta[i]).epsilon(1e-13));
    const Point2 p{0.7, 0.3};
    const Vec3 u = eval_b(b, k, p);
    const Vec2 w = b_nedelec_part(b, k)(p);
    CHECK(w[0] == doctest::Approx((k.k() * u[0] + u[1]) / p.r));
    CHECK(w[1] == doctest::Approx(k.k() * u[2] / p.r));
    CHECK(b_theta_part(b, k)(p) == doctest::Approx(u[1]));
  }
}

TEST_CASE("canonical C_1 DOFs: round trip and dual basis") {
  for (const Triangle& tri : {kTri, kAxisTri}) {
    for (int kv : {1, 2, -1}) {
      const FourierMode k(kv);
      const CElementCoeffs c = random_c();
      const auto dofs = c_dofs(c, tri, k);
      const CElementCoeffs back = reconstruct_c(dofs, tri, k);
      CHECK(back.g1 == doctest::Approx(c.g1).epsilon(1e-12));
      CHECK(back.g2 == doctest::Approx(c.g2).epsilon(1e-12));
      CHECK(back.g3 == doctest::Approx(c.g3).epsilon(1e-12));
      CHECK(back.g4 == doctest::Approx(c.g4).epsilon(1e-12));

      const auto field = c_dofs([&](Point2 x) { return eval_c(c, k, x); }, tri, k);
      for (int i = 0; i < 4; ++i) CHECK(field[i] == doctest::Approx(dofs[i]).epsilon(1e-12));

      const auto basis = c_local_basis(tri, k);
      for (int j = 0; j < 4; ++j) {
        const auto d = c_dofs(basis[j], tri, k);
        for (int i = 0; i < 4; ++i) CHECK(d[i] == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0));
      }
      // Edge basis functions have div^k = 1/|K|; the triangle one has -1.
      const double area = triangle_area(tri);
      for (int j = 0; j < 3; ++j) CHECK(div_k(basis[j], k) == doctest::Approx(1.0 / area));
      CHECK(div_k(basis[3], k) == doctest::Approx(-1.0));
    }
  }
}

TEST_CASE("B_1 DOFs: dual basis") {
  const FourierMode k(-1);
  for (const Triangle& tri : {kTri, kAxisTri}) {
    const auto basis = b_local_basis(tri, k);
    for (int j = 0; j < 6; ++j) {
      const auto d = b_dofs(basis[j], tri, k);
      for (int i = 0; i < 6; ++i) CHECK(d[i] == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0));
    }
  }
}

TEST_CASE("degenerate triangles are rejected") {
  const Triangle flat{{{0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}}};
  CHECK_THROWS_AS(c_local_basis(flat, FourierMode(1)), Error);
  CHECK_THROWS_AS(b_local_basis(flat, FourierMode(1)), Error);
}

TEST_CASE("global spaces: dimensions and interelement continuity") {
  MeshHierarchy h(Domain::LShape, 3);
  const MeshLevel& m = h.finest();
  const FourierMode k(2);
  const CSpace cs(m, k);
  const BSpace bs(m, k);
  CHECK(cs.dim() == m.num_edges() + m.num_triangles());
  CHECK(bs.dim() == m.num_vertices() + m.num_edges());
  CHECK(ASpace(m).dim() == m.num_vertices());
  CHECK(DSpace(m).dim() == m.num_triangles());

  Vector cc(cs.dim());
  Vector bc(bs.dim());
  for (Index i = 0; i < cs.dim(); ++i) cc[i] = uniform();
  for (Index i = 0; i < bs.dim(); ++i) bc[i] = uniform();
  for (Index e = 0; e < m.num_edges(); ++e) {
    const auto& adj = m.edge_triangles[e];
    if (adj[1] == kNoIndex) continue;
    const Point2 a = m.vertices[m.edges[e][0]];
    const Point2 b = m.vertices[m.edges[e][1]];
    const Point2 x{0.3 * a.r + 0.7 * b.r, 0.3 * a.z + 0.7 * b.z};
    const auto n = m.edge_normal(e);
    const auto t = m.edge_tangent(e);
    const Vec3 u0 = eval(cs, cc, adj[0], x);
    const Vec3 u1 = eval(cs, cc, adj[1], x);
    CHECK(u0[0] * n[0] + u0[2] * n[1] == doctest::Approx(u1[0] * n[0] + u1[2] * n[1]).epsilon(1e-10));
    const Vec3 v0 = eval(bs, bc, adj[0], x);
    const Vec3 v1 = eval(bs, bc, adj[1], x);
    CHECK(v0[1] == doctest::Approx(v1[1]).epsilon(1e-10));
    const double w0 = k.k() * v0[0] + v0[1];
    const double w1 = k.k() * v1[0] + v1[1];
    CHECK(w0 * t[0] + k.k() * v0[2] * t[1] == doctest::Approx(w1 * t[0] + k.k() * v1[2] * t[1]).epsilon(1e-10));
  }
}

TEST_CASE("interpolants reproduce their target spaces") {
  MeshHierarchy h(Domain::Square, 3);
  const MeshLevel& m = h.finest();
  for (int kv : {1, -2}) {
    const FourierMode k(kv);
    const CElementCoeffs c = random_c();
    const VectorField3 uc = [&](Point2 x) { return eval_c(c, k, x); };
    const CSpace cs(m, k);
    for (const Vector& coeffs : {interp_canonical_c(m, k, uc), interp_tilde_d(m, k, uc)}) {
      for (Index t = 0; t < m.num_triangles(); ++t) {
        const CElementCoeffs r = cs.restrict_to(coeffs, t);
        CHECK(r.g1 == doctest::Approx(c.g1).epsilon(1e-10));
        CHECK(r.g2 == doctest::Approx(c.g2).epsilon(1e-10));
        CHECK(r.g3 == doctest::Approx(c.g3).epsilon(1e-10));
        CHECK(r.g4 == doctest::Approx(c.g4).epsilon(1e-10));
      }
    }

    const BElementCoeffs b = random_b();
    const BSpace bs(m, k);
    const Vector bcoef = interp_tilde_c(m, k, [&](Point2 x) { return eval_b(b, k, x); });
    for (Index t = 0; t < m.num_triangles(); ++t) {
      const BElementCoeffs r = bs.restrict_to(bcoef, t);
      for (int i = 0; i < 6; ++i) CHECK(r.beta[i] == doctest::Approx(b.beta[i]).epsilon(1e-10));
    }
  }

  const Affine f{0.3, -1.2, 0.7};
  const Vector vals = weighted_clement(m, [&](Point2 x) { return f(x); });
  for (Index v = 0; v < m.num_vertices(); ++v) CHECK(vals[v] == doctest::Approx(f(m.vertices[v])).epsilon(1e-11));

  const NedelecCoeffs w{0.4, -0.2, 0.9};
  const Vector mom = clement_nedelec(m, [&](Point2 x) { return w(x); });
  for (Index t = 0; t < m.num_triangles(); ++t) {
    const Point2 x = map_point(m.corners(t), {0.2, 0.5, 0.3});
    const Vec2 a = eval_nedelec(m, mom, t, x);
    const Vec2 e = w(x);
    CHECK(a[0] == doctest::Approx(e[0]).epsilon(1e-11));
    CHECK(a[1] == doctest::Approx(e[1]).epsilon(1e-11));
  }

  const Vector pis = pi_s(m, [](Point2) { return 2.5; });
  for (Index t = 0; t < m.num_triangles(); ++t) CHECK(pis[t] == doctest::Approx(2.5));
}

TEST_CASE("axis vertices get an off-axis edge") {
  MeshHierarchy h(Domain::LShape, 2);
  const MeshLevel& m = h.finest();
  for (Index v = 0; v < m.num_vertices(); ++v) {
    if (m.vertex_tags[v] != BoundaryTag::Gamma0) continue;
    const Index e = axis_vertex_edge(m, v);
    CHECK(m.edge_tags[e] != BoundaryTag::Gamma0);
    CHECK((m.edges[e][0] == v || m.edges[e][1] == v));
  }
}

TEST_CASE("worked examples of the weighted operators") {
  for (int kv : {1, 3, -2}) {
    const FourierMode k(kv);
    // (0, r, 0) has curl (0, 0, 2) for every k.
    BElementCoeffs b;
    b.beta[1] = 1.0;
    const CElementCoeffs c = curl_k(b, k);
    CHECK(c.g1 == 0.0);
    CHECK(c.g2 == 0.0);
    CHECK(c.g3 == 0.0);
    CHECK(c.g4 == doctest::Approx(2.0));
    const Vec3 v = eval_c(c, k, {0.4, 0.7});
    CHECK(v[2] == doctest::Approx(2.0));

    // grad of r is (1, -k, 0).
    AElementCoeffs a;
    a.alpha[0] = 1.0;
    const Vec3 g = eval_b(grad_k(a, k), k, {0.6, 0.2});
    CHECK(g[0] == doctest::Approx(1.0));
    CHECK(g[1] == doctest::Approx(-k.k()));
    CHECK(g[2] == doctest::Approx(0.0));
  }
}

TEST_CASE("C_1 DOFs are unisolvent on random triangles") {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int tested = 0;
  while (tested < 100) {
    Triangle tri;
    for (Point2& p : tri) p = {unit(rng), unit(rng)};
    if (std::abs(triangle_area(tri)) < 1e-3) continue;
    ++tested;
    const FourierMode k(tested % 2 == 0 ? 2 : -1);
    const CElementCoeffs c = random_c();
    const CElementCoeffs back = reconstruct_c(c_dofs(c, tri, k), tri, k);
    CHECK(back.g1 == doctest::Approx(c.g1).epsilon(1e-9));
    CHECK(back.g2 == doctest::Approx(c.g2).epsilon(1e-9));
    CHECK(back.g3 == doctest::Approx(c.g3).epsilon(1e-9));
    CHECK(back.g4 == doctest::Approx(c.g4).epsilon(1e-9));
    const auto cb = c_local_basis(tri, k);
    const auto bb = b_local_basis(tri, k);
    for (int j = 0; j < 4; ++j) {
      const auto d = c_dofs(cb[j], tri, k);
      for (int i = 0; i < 4; ++i) CHECK(d[i] == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0));
    }
    for (int j = 0; j < 6; ++j) {
      const auto d = b_dofs(bb[j], tri, k);
      for (int i = 0; i < 6; ++i) CHECK(d[i] == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0));
    }
  }
}

TEST_CASE("pi_s is the weighted mean on each triangle") {
  const MeshHierarchy h(Domain::LShape, 2);
  const MeshLevel& level = h.finest();
  const ScalarField p = [](Point2 x) { return std::exp(x.r) * std::cos(3.0 * x.z); };
  const Vector ps = pi_s(level, p);
  const QuadratureRule rule = QuadratureRule::triangle(14);
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const Triangle tri = level.corners(t);
    const double residual =
        integrate_composite(rule, tri, [&](Point2 x) { return x.r * (p(x) - ps[t]); }, 2);
    CHECK(std::abs(residual) < 1e-12);
  }
}
