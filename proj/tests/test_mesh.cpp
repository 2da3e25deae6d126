#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "axifem/error.hpp"
#include "axifem/mesh.hpp"

using namespace axifem;

namespace {

double total_area(const MeshLevel& m) {
  double a = 0.0;
  for (Index t = 0; t < m.num_triangles(); ++t) a += m.area(t);
  return a;
}

bool before(Point2 a, Point2 b) { return a.z < b.z || (a.z == b.z && a.r < b.r); }

Point2 centroid(const MeshLevel& m, Index t) {
  const auto c = m.corners(t);
  return {(c[0].r + c[1].r + c[2].r) / 3.0, (c[0].z + c[1].z + c[2].z) / 3.0};
}

}  // namespace

TEST_CASE("coarse meshes") {
  const MeshLevel sq = build_coarse(Domain::Square);
  CHECK(sq.num_vertices() == 4);
  CHECK(sq.num_triangles() == 2);
  CHECK(sq.num_edges() == 5);
  CHECK(total_area(sq) == doctest::Approx(1.0));

  const MeshLevel l = build_coarse(Domain::LShape);
  CHECK(l.num_vertices() == 8);
  CHECK(l.num_triangles() == 6);
  CHECK(total_area(l) == doctest::Approx(0.75));

  CHECK_THROWS_AS(parse_domain("disk"), Error);
  CHECK(parse_domain(to_string(Domain::LShape)) == Domain::LShape);
}

TEST_CASE("refinement counts and Euler characteristic") {
  for (Domain d : {Domain::Square, Domain::LShape}) {
    MeshHierarchy h(d, 5);
    for (int l = 2; l <= 5; ++l) {
      const MeshLevel& c = h.level(l - 1);
      const MeshLevel& f = h.level(l);
      CHECK(f.num_vertices() == c.num_vertices() + c.num_edges());
      CHECK(f.num_triangles() == 4 * c.num_triangles());
      CHECK(f.num_edges() == 2 * c.num_edges() + 3 * c.num_triangles());
      CHECK(f.num_vertices() - f.num_edges() + f.num_triangles() == 1);
      CHECK(f.mesh_size() == doctest::Approx(0.5 * c.mesh_size()));
    }
  }
}

TEST_CASE("orientation, numbering and signs") {
  MeshHierarchy h(Domain::LShape, 4);
  const MeshLevel& m = h.finest();
  for (Index v = 1; v < m.num_vertices(); ++v) CHECK_FALSE(before(m.vertices[v], m.vertices[v - 1]));
  for (Index t = 1; t < m.num_triangles(); ++t) CHECK_FALSE(before(centroid(m, t), centroid(m, t - 1)));
  for (Index e = 1; e < m.num_edges(); ++e) {
    const Point2 a = midpoint(m.vertices[m.edges[e - 1][0]], m.vertices[m.edges[e - 1][1]]);
    const Point2 b = midpoint(m.vertices[m.edges[e][0]], m.vertices[m.edges[e][1]]);
    CHECK_FALSE(before(b, a));
  }
  for (Index t = 0; t < m.num_triangles(); ++t) {
    CHECK(m.signed_area(t) > 0.0);
    const auto& tri = m.triangles[t];
    CHECK(tri[0] < tri[1]);
    CHECK(tri[0] < tri[2]);
    for (int i = 0; i < 3; ++i) {
      // Local edge i is opposite local vertex i.
      const auto& ev = m.edges[m.triangle_edges[t][i]];
      CHECK(ev[0] != tri[i]);
      CHECK(ev[1] != tri[i]);
    }
  }
  for (Index e = 0; e < m.num_edges(); ++e) {
    CHECK(m.edges[e][0] < m.edges[e][1]);
    const auto& adj = m.edge_triangles[e];
    if (adj[1] == kNoIndex) continue;
    int s[2];
    for (int j = 0; j < 2; ++j) {
      const auto& te = m.triangle_edges[adj[j]];
      const int i = static_cast<int>(std::find(te.begin(), te.end(), e) - te.begin());
      s[j] = m.triangle_edge_signs[adj[j]][i];
    }
    CHECK(s[0] == -s[1]);
  }
}

TEST_CASE("boundary tags") {
  MeshHierarchy h(Domain::Square, 3);
  const MeshLevel& m = h.finest();
  int axis_edges = 0;
  for (Index e = 0; e < m.num_edges(); ++e) {
    const Point2 a = m.vertices[m.edges[e][0]];
    const Point2 b = m.vertices[m.edges[e][1]];
    if (a.r == 0.0 && b.r == 0.0) {
      CHECK(m.edge_tags[e] == BoundaryTag::Gamma0);
      ++axis_edges;
    } else if (m.is_boundary_edge(e)) {
      CHECK(m.edge_tags[e] == BoundaryTag::Gamma1);
    } else {
      CHECK(m.edge_tags[e] == BoundaryTag::Interior);
    }
  }
  CHECK(axis_edges == 4);
  for (Index v = 0; v < m.num_vertices(); ++v) {
    if (m.vertices[v].r == 0.0) CHECK(m.vertex_tags[v] == BoundaryTag::Gamma0);
  }
}

TEST_CASE("parent-child relations") {
  const MeshLevel c = build_coarse(Domain::LShape);
  const RefinedLevel r = refine(c);
  for (Index t = 0; t < c.num_triangles(); ++t) {
    double a = 0.0;
    for (Index child : r.map.triangle_children[t]) {
      CHECK(r.map.triangle_parent[child] == t);
      a += r.level.area(child);
      const auto lam = barycentric(c, t, centroid(r.level, child));
      for (double x : lam) CHECK(x > 0.0);
    }
    CHECK(a == doctest::Approx(c.area(t)));
  }
  for (Index v = 0; v < c.num_vertices(); ++v) {
    const Point2 p = r.level.vertices[r.map.vertex_to_fine[v]];
    CHECK(p.r == c.vertices[v].r);
    CHECK(p.z == c.vertices[v].z);
  }
  for (Index e = 0; e < c.num_edges(); ++e) {
    const Point2 m = r.level.vertices[r.map.edge_midpoint[e]];
    const Point2 x = midpoint(c.vertices[c.edges[e][0]], c.vertices[c.edges[e][1]]);
    CHECK(m.r == doctest::Approx(x.r));
    CHECK(m.z == doctest::Approx(x.z));
  }
}

TEST_CASE("vertex patches cover every edge and triangle") {
  MeshHierarchy h(Domain::Square, 3);
  const MeshLevel& m = h.finest();
  const auto patches = vertex_patches(m);
  CHECK(patches.size() == static_cast<std::size_t>(m.num_vertices()));
  std::set<Index> edges;
  std::set<Index> tris;
  for (const auto& p : patches) {
    edges.insert(p.edges.begin(), p.edges.end());
    tris.insert(p.triangles.begin(), p.triangles.end());
    for (Index e : m.vertex_edges[p.center]) CHECK(std::binary_search(p.edges.begin(), p.edges.end(), e));
  }
  CHECK(edges.size() == static_cast<std::size_t>(m.num_edges()));
  CHECK(tris.size() == static_cast<std::size_t>(m.num_triangles()));

  // The coarse square has a vertex shared by both triangles: its patch is everything.
  const MeshLevel c = build_coarse(Domain::Square);
  const auto cp = vertex_patches(c);
  const bool full = std::any_of(cp.begin(), cp.end(), [&](const VertexPatch& p) {
    return p.edges.size() == 5 && p.triangles.size() == 2;
  });
  CHECK(full);
}

TEST_CASE("locate and json export") {
  MeshHierarchy h(Domain::LShape, 2);
  const MeshLevel& m = h.finest();
  CHECK(locate(m, {0.9, 0.9}) == kNoIndex);
  const Index t = locate(m, {0.2, 0.7});
  REQUIRE(t != kNoIndex);
  const auto json = nlohmann::json::parse(mesh_to_json(m));
  CHECK(json["vertices"].size() == static_cast<std::size_t>(m.num_vertices()));
  CHECK(json["triangles"].size() == static_cast<std::size_t>(m.num_triangles()));
  CHECK(json["edges"].size() == static_cast<std::size_t>(m.num_edges()));
  CHECK(json["tags"]["edges"].size() == static_cast<std::size_t>(m.num_edges()));
  CHECK(json["tags"]["vertices"].size() == static_cast<std::size_t>(m.num_vertices()));
}
