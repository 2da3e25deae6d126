#include "axifem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "json.hpp"

#include "axifem/error.hpp"

namespace axifem {

Domain parse_domain(const std::string& name) {
  if (name == "square") return Domain::Square;
  if (name == "lshape") return Domain::LShape;
  throw Error("unknown domain '" + name + "' (expected square|lshape)");
}

std::string to_string(Domain domain) {
  return domain == Domain::Square ? "square" : "lshape";
}

std::string to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::Interior: return "interior";
    case BoundaryTag::Gamma0: return "gamma0";
    case BoundaryTag::Gamma1: return "gamma1";
  }
  return "interior";
}

std::array<Point2, 3> MeshLevel::corners(Index t) const {
  const auto& tri = triangles[t];
  return {vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]};
}

double MeshLevel::signed_area(Index t) const {
  const auto [a, b, c] = corners(t);
  return 0.5 * ((b.r - a.r) * (c.z - a.z) - (c.r - a.r) * (b.z - a.z));
}

double MeshLevel::area(Index t) const { return std::abs(signed_area(t)); }

double MeshLevel::edge_length(Index e) const {
  const Point2& a = vertices[edges[e][0]];
  const Point2& b = vertices[edges[e][1]];
  return std::hypot(b.r - a.r, b.z - a.z);
}

std::array<double, 2> MeshLevel::edge_tangent(Index e) const {
  const Point2& a = vertices[edges[e][0]];
  const Point2& b = vertices[edges[e][1]];
  const double len = std::hypot(b.r - a.r, b.z - a.z);
  return {(b.r - a.r) / len, (b.z - a.z) / len};
}

std::array<double, 2> MeshLevel::edge_normal(Index e) const {
  const auto t = edge_tangent(e);
  return {t[1], -t[0]};
}

double MeshLevel::mesh_size() const {
  double h = 0.0;
  for (Index e = 0; e < num_edges(); ++e) h = std::max(h, edge_length(e));
  return h;
}

namespace {

// Lexicographic (z, r) order with creation order as the tie breaker.
std::vector<Index> lexicographic_order(const std::vector<Point2>& keys) {
  std::vector<Index> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (keys[a].z != keys[b].z) return keys[a].z < keys[b].z;
    return keys[a].r < keys[b].r;
  });
  return order;
}

std::vector<Index> invert(const std::vector<Index>& order) {
  std::vector<Index> inverse(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) inverse[order[i]] = static_cast<Index>(i);
  return inverse;
}

}  // namespace

MeshLevel build_level(const std::vector<Point2>& raw_vertices,
                      const std::vector<std::array<Index, 3>>& raw_triangles,
                      std::vector<Index>* vertex_permutation,
                      std::vector<Index>* triangle_permutation) {
  MeshLevel level;

  for (const Point2& p : raw_vertices) {
    if (p.r < 0.0) throw Error("mesh vertex with negative r");
  }

  const std::vector<Index> vorder = lexicographic_order(raw_vertices);
  const std::vector<Index> vnew = invert(vorder);
  level.vertices.resize(raw_vertices.size());
  for (std::size_t i = 0; i < vorder.size(); ++i) level.vertices[i] = raw_vertices[vorder[i]];

  std::vector<Point2> centroids(raw_triangles.size());
  for (std::size_t t = 0; t < raw_triangles.size(); ++t) {
    Point2 c;
    for (Index v : raw_triangles[t]) {
      c.r += raw_vertices[v].r / 3.0;
      c.z += raw_vertices[v].z / 3.0;
    }
    centroids[t] = c;
  }
  const std::vector<Index> torder = lexicographic_order(centroids);
  level.triangles.resize(raw_triangles.size());
  for (std::size_t i = 0; i < torder.size(); ++i) {
    std::array<Index, 3> tri{};
    for (int j = 0; j < 3; ++j) tri[j] = vnew[raw_triangles[torder[i]][j]];
    // Rotate so that the smallest vertex index comes first; keeps orientation.
    const auto first = std::min_element(tri.begin(), tri.end());
    std::rotate(tri.begin(), first, tri.end());
    level.triangles[i] = tri;
  }
  for (Index t = 0; t < level.num_triangles(); ++t) {
    if (!(level.signed_area(t) > 0.0)) throw Error("triangle with non-positive signed area");
  }

  // Collect unique edges in creation order, then renumber by midpoint.
  std::map<std::pair<Index, Index>, Index> edge_id;
  std::vector<std::array<Index, 2>> raw_edges;
  for (const auto& tri : level.triangles) {
    for (int i = 0; i < 3; ++i) {
      Index a = tri[(i + 1) % 3];
      Index b = tri[(i + 2) % 3];
      if (a > b) std::swap(a, b);
      if (edge_id.emplace(std::make_pair(a, b), static_cast<Index>(raw_edges.size())).second) {
        raw_edges.push_back({a, b});
      }
    }
  }
  std::vector<Point2> mids(raw_edges.size());
  for (std::size_t e = 0; e < raw_edges.size(); ++e) {
    mids[e] = midpoint(level.vertices[raw_edges[e][0]], level.vertices[raw_edges[e][1]]);
  }
  const std::vector<Index> eorder = lexicographic_order(mids);
  const std::vector<Index> enew = invert(eorder);
  level.edges.resize(raw_edges.size());
  for (std::size_t i = 0; i < eorder.size(); ++i) level.edges[i] = raw_edges[eorder[i]];

  const Index ne = level.num_edges();
  level.triangle_edges.resize(level.triangles.size());
  level.triangle_edge_signs.resize(level.triangles.size());
  level.edge_triangles.assign(static_cast<std::size_t>(ne), {kNoIndex, kNoIndex});
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const auto& tri = level.triangles[t];
    for (int i = 0; i < 3; ++i) {
      const Index a = tri[(i + 1) % 3];
      const Index b = tri[(i + 2) % 3];
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      const Index e = enew[edge_id.at(key)];
      level.triangle_edges[t][i] = e;
      // Counterclockwise traversal a -> b has outward normal = (b-a) rotated -90.
      level.triangle_edge_signs[t][i] = a < b ? 1 : -1;
      auto& slots = level.edge_triangles[e];
      if (slots[0] == kNoIndex) {
        slots[0] = t;
      } else if (slots[1] == kNoIndex) {
        slots[1] = t;
      } else {
        throw Error("non-manifold edge in triangulation");
      }
    }
  }

  level.edge_tags.assign(static_cast<std::size_t>(ne), BoundaryTag::Interior);
  level.vertex_tags.assign(level.vertices.size(), BoundaryTag::Interior);
  for (Index e = 0; e < ne; ++e) {
    if (!level.is_boundary_edge(e)) continue;
    const auto [a, b] = level.edges[e];
    const bool on_axis = level.vertices[a].r == 0.0 && level.vertices[b].r == 0.0;
    level.edge_tags[e] = on_axis ? BoundaryTag::Gamma0 : BoundaryTag::Gamma1;
    for (Index v : {a, b}) {
      if (level.vertex_tags[v] == BoundaryTag::Interior) level.vertex_tags[v] = BoundaryTag::Gamma1;
    }
  }
  for (Index v = 0; v < level.num_vertices(); ++v) {
    if (level.vertices[v].r == 0.0) level.vertex_tags[v] = BoundaryTag::Gamma0;
  }

  level.vertex_triangles.assign(level.vertices.size(), {});
  for (Index t = 0; t < level.num_triangles(); ++t) {
    for (Index v : level.triangles[t]) level.vertex_triangles[v].push_back(t);
  }
  level.vertex_edges.assign(level.vertices.size(), {});
  for (Index e = 0; e < ne; ++e) {
    for (Index v : level.edges[e]) level.vertex_edges[v].push_back(e);
  }

  if (vertex_permutation) *vertex_permutation = vnew;
  if (triangle_permutation) *triangle_permutation = invert(torder);
  return level;
}

MeshLevel build_coarse(Domain domain) {
  if (domain == Domain::Square) {
    // Unit square split by the diagonal (0,0)-(1,1).
    return build_level({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
  }
  // [0,1]^2 \ [0.5,1]^2, three half-unit squares with diagonals through the
  // reentrant corner (0.5, 0.5).
  const std::vector<Point2> v = {{0, 0},   {0.5, 0},   {1, 0},  {0, 0.5},
                                 {0.5, 0.5}, {1, 0.5}, {0, 1},  {0.5, 1}};
  const std::vector<std::array<Index, 3>> t = {
      {0, 1, 4}, {0, 4, 3},   // [0,.5]x[0,.5], diagonal (0,0)-(.5,.5)
      {1, 2, 4}, {2, 5, 4},   // [.5,1]x[0,.5], diagonal (1,0)-(.5,.5)
      {3, 4, 6}, {4, 7, 6}};  // [0,.5]x[.5,1], diagonal (.5,.5)-(0,1)
  return build_level(v, t);
}

RefinedLevel refine(const MeshLevel& coarse) {
  std::vector<Point2> verts = coarse.vertices;
  std::vector<Index> mid(static_cast<std::size_t>(coarse.num_edges()));
  for (Index e = 0; e < coarse.num_edges(); ++e) {
    mid[e] = static_cast<Index>(verts.size());
    verts.push_back(midpoint(coarse.vertices[coarse.edges[e][0]], coarse.vertices[coarse.edges[e][1]]));
  }

  std::vector<std::array<Index, 3>> tris;
  tris.reserve(4 * coarse.triangles.size());
  for (Index t = 0; t < coarse.num_triangles(); ++t) {
    const auto& tri = coarse.triangles[t];
    const auto& te = coarse.triangle_edges[t];
    // Local edge i is opposite vertex i.
    const Index m0 = mid[te[0]];  // between v1, v2
    const Index m1 = mid[te[1]];  // between v2, v0
    const Index m2 = mid[te[2]];  // between v0, v1
    tris.push_back({tri[0], m2, m1});
    tris.push_back({m2, tri[1], m0});
    tris.push_back({m1, m0, tri[2]});
    tris.push_back({m2, m0, m1});
  }

  RefinedLevel out;
  std::vector<Index> vperm;
  std::vector<Index> tperm;
  out.level = build_level(verts, tris, &vperm, &tperm);
  const MeshLevel& fine = out.level;

  RefinementMap& map = out.map;
  map.vertex_to_fine.resize(coarse.vertices.size());
  for (Index v = 0; v < coarse.num_vertices(); ++v) map.vertex_to_fine[v] = vperm[v];
  map.edge_midpoint.resize(mid.size());
  for (std::size_t e = 0; e < mid.size(); ++e) map.edge_midpoint[e] = vperm[mid[e]];

  map.triangle_children.resize(coarse.triangles.size());
  map.triangle_parent.assign(fine.triangles.size(), kNoIndex);
  for (Index t = 0; t < coarse.num_triangles(); ++t) {
    for (int c = 0; c < 4; ++c) {
      const Index child = tperm[4 * t + c];
      map.triangle_children[t][c] = child;
      map.triangle_parent[child] = t;
    }
  }

  std::map<std::pair<Index, Index>, Index> fine_edge;
  for (Index e = 0; e < fine.num_edges(); ++e) fine_edge[{fine.edges[e][0], fine.edges[e][1]}] = e;
  auto find_edge = [&](Index a, Index b) {
    return fine_edge.at({std::min(a, b), std::max(a, b)});
  };
  map.edge_children.resize(coarse.edges.size());
  for (Index e = 0; e < coarse.num_edges(); ++e) {
    const Index a = map.vertex_to_fine[coarse.edges[e][0]];
    const Index b = map.vertex_to_fine[coarse.edges[e][1]];
    const Index m = map.edge_midpoint[e];
    map.edge_children[e] = {find_edge(a, m), find_edge(m, b)};
  }
  return out;
}

MeshHierarchy::MeshHierarchy(Domain domain, int num_levels)
    : MeshHierarchy(build_coarse(domain), num_levels) {}

MeshHierarchy::MeshHierarchy(MeshLevel coarse, int num_levels) {
  if (num_levels < 1) throw Error("a mesh hierarchy needs at least one level");
  levels_.push_back(std::move(coarse));
  while (static_cast<int>(levels_.size()) < num_levels) add_level();
}

void MeshHierarchy::add_level() {
  RefinedLevel next = refine(levels_.back());
  levels_.push_back(std::move(next.level));
  maps_.push_back(std::move(next.map));
}

std::vector<VertexPatch> vertex_patches(const MeshLevel& level) {
  std::vector<VertexPatch> patches(level.vertices.size());
  std::vector<char> in_patch(level.triangles.size(), 0);
  for (Index v = 0; v < level.num_vertices(); ++v) {
    VertexPatch& patch = patches[v];
    patch.center = v;
    patch.triangles = level.vertex_triangles[v];
    for (Index t : patch.triangles) in_patch[t] = 1;
    std::vector<Index> candidates;
    for (Index t : patch.triangles) {
      for (Index e : level.triangle_edges[t]) candidates.push_back(e);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (Index e : candidates) {
      const auto& adj = level.edge_triangles[e];
      const bool inside = in_patch[adj[0]] && (adj[1] == kNoIndex || in_patch[adj[1]]);
      if (inside) patch.edges.push_back(e);
    }
    for (Index t : patch.triangles) in_patch[t] = 0;
  }
  return patches;
}

std::array<double, 3> barycentric(const MeshLevel& level, Index t, Point2 p) {
  const auto [a, b, c] = level.corners(t);
  const double det = (b.r - a.r) * (c.z - a.z) - (c.r - a.r) * (b.z - a.z);
  const double l1 = ((p.r - a.r) * (c.z - a.z) - (c.r - a.r) * (p.z - a.z)) / det;
  const double l2 = ((b.r - a.r) * (p.z - a.z) - (p.r - a.r) * (b.z - a.z)) / det;
  return {1.0 - l1 - l2, l1, l2};
}

Index locate(const MeshLevel& level, Point2 p, double tolerance) {
  for (Index t = 0; t < level.num_triangles(); ++t) {
    const auto lambda = barycentric(level, t, p);
    if (lambda[0] >= -tolerance && lambda[1] >= -tolerance && lambda[2] >= -tolerance) return t;
  }
  return kNoIndex;
}

std::string mesh_to_json(const MeshLevel& level) {
  nlohmann::json j;
  auto& verts = j["vertices"] = nlohmann::json::array();
  for (const Point2& p : level.vertices) verts.push_back({p.r, p.z});
  auto& tris = j["triangles"] = nlohmann::json::array();
  for (const auto& t : level.triangles) tris.push_back({t[0], t[1], t[2]});
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const auto& e : level.edges) edges.push_back({e[0], e[1]});
  auto& tags = j["tags"];
  tags["vertices"] = nlohmann::json::array();
  for (BoundaryTag tag : level.vertex_tags) tags["vertices"].push_back(to_string(tag));
  tags["edges"] = nlohmann::json::array();
  for (BoundaryTag tag : level.edge_tags) tags["edges"].push_back(to_string(tag));
  return j.dump();
}

}  // namespace axifem
