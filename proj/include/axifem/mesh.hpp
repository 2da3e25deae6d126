#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace axifem {

using Index = int;
inline constexpr Index kNoIndex = -1;

/// A point of the meridian half-plane, r >= 0.
struct Point2 {
  double r = 0.0;
  double z = 0.0;
};

inline Point2 midpoint(const Point2& a, const Point2& b) {
  return {0.5 * (a.r + b.r), 0.5 * (a.z + b.z)};
}

enum class BoundaryTag : std::uint8_t { Interior, Gamma0, Gamma1 };
enum class Domain { Square, LShape };

Domain parse_domain(const std::string& name);
std::string to_string(Domain domain);
std::string to_string(BoundaryTag tag);

/// One triangulation of the meridian domain.
///
/// Triangles are counterclockwise. Local edge i of a triangle is the edge
/// opposite local vertex i. Global edges run from the lower to the higher
/// vertex index; the global edge normal is that direction rotated by -90
/// degrees. `triangle_edge_signs[t][i]` is +1 when the outward normal of
/// local edge i agrees with the global normal.
struct MeshLevel {
  std::vector<Point2> vertices;
  std::vector<std::array<Index, 3>> triangles;
  std::vector<std::array<Index, 2>> edges;
  std::vector<std::array<Index, 3>> triangle_edges;
  std::vector<std::array<int, 3>> triangle_edge_signs;
  /// Second entry is kNoIndex for boundary edges.
  std::vector<std::array<Index, 2>> edge_triangles;
  std::vector<BoundaryTag> edge_tags;
  std::vector<BoundaryTag> vertex_tags;
  /// Triangles incident to each vertex, ascending.
  std::vector<std::vector<Index>> vertex_triangles;
  /// Edges incident to each vertex, ascending.
  std::vector<std::vector<Index>> vertex_edges;

  Index num_vertices() const { return static_cast<Index>(vertices.size()); }
  Index num_triangles() const { return static_cast<Index>(triangles.size()); }
  Index num_edges() const { return static_cast<Index>(edges.size()); }

  std::array<Point2, 3> corners(Index t) const;
  double area(Index t) const;
  double signed_area(Index t) const;
  double edge_length(Index e) const;
  /// Unit tangent from the lower to the higher vertex index.
  std::array<double, 2> edge_tangent(Index e) const;
  /// Unit tangent rotated by -90 degrees.
  std::array<double, 2> edge_normal(Index e) const;
  bool is_boundary_edge(Index e) const { return edge_triangles[e][1] == kNoIndex; }
  /// Largest edge length.
  double mesh_size() const;
};

/// Build a level from raw vertices and counterclockwise triangles.
///
/// Entities are renumbered lexicographically by (z, r) of the vertex, edge
/// midpoint, or triangle centroid, ties broken by creation order. When the
/// permutation outputs are non-null they receive old -> new index maps.
MeshLevel build_level(const std::vector<Point2>& vertices,
                      const std::vector<std::array<Index, 3>>& triangles,
                      std::vector<Index>* vertex_permutation = nullptr,
                      std::vector<Index>* triangle_permutation = nullptr);

MeshLevel build_coarse(Domain domain);

/// Parent/child bookkeeping between a level and its red refinement.
struct RefinementMap {
  /// Coarse vertex -> fine vertex.
  std::vector<Index> vertex_to_fine;
  /// Coarse edge -> fine vertex at its midpoint.
  std::vector<Index> edge_midpoint;
  /// Coarse edge -> its two fine halves.
  std::vector<std::array<Index, 2>> edge_children;
  /// Coarse triangle -> its four fine children; index 3 is the middle one.
  std::vector<std::array<Index, 4>> triangle_children;
  /// Fine triangle -> coarse parent.
  std::vector<Index> triangle_parent;
};

struct RefinedLevel {
  MeshLevel level;
  RefinementMap map;
};

/// Uniform red refinement by edge midpoints.
RefinedLevel refine(const MeshLevel& coarse);

class MeshHierarchy {
 public:
  /// Levels 1..num_levels, level 1 being the coarse mesh of `domain`.
  MeshHierarchy(Domain domain, int num_levels);
  explicit MeshHierarchy(MeshLevel coarse, int num_levels = 1);

  int num_levels() const { return static_cast<int>(levels_.size()); }
  /// 1-based.
  const MeshLevel& level(int l) const { return levels_.at(static_cast<std::size_t>(l - 1)); }
  /// Map from level l-1 to level l, for l >= 2.
  const RefinementMap& map_to(int l) const { return maps_.at(static_cast<std::size_t>(l - 2)); }
  const MeshLevel& finest() const { return levels_.back(); }
  void add_level();

 private:
  std::vector<MeshLevel> levels_;
  std::vector<RefinementMap> maps_;
};

/// A vertex patch D_v and the C_h degrees of freedom supported in it.
struct VertexPatch {
  Index center = kNoIndex;
  std::vector<Index> triangles;
  /// Edges all of whose adjacent triangles lie in the patch.
  std::vector<Index> edges;
};

std::vector<VertexPatch> vertex_patches(const MeshLevel& level);

/// Barycentric coordinates of p in triangle t.
std::array<double, 3> barycentric(const MeshLevel& level, Index t, Point2 p);

/// Index of a triangle containing p (linear search), or kNoIndex.
Index locate(const MeshLevel& level, Point2 p, double tolerance = 1e-12);

std::string mesh_to_json(const MeshLevel& level);

}  // namespace axifem
