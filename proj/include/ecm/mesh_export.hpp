#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ecm/complex.hpp"

namespace ecm {

struct TriMesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::size_t, 3>> triangles;  // 0-based
};

/// Fans every boundary 2-cell from its smallest vertex key. Vertices are
/// deduplicated by key and listed in key order; positions = key / 4.
/// Throws InvariantError on a vertex cycle shorter than 3.
TriMesh triangulate_boundary(const PolyComplex& k);

/// `v x y z` lines with two decimals, then 1-based `f a b c` lines.
std::string write_obj(const TriMesh& mesh);
/// Reads back the `v` / `f` subset; `#` comments and blank lines are
/// skipped. Throws ParseError.
TriMesh read_obj(std::string_view text);

struct MeshManifoldReport {
  std::size_t non_manifold_edges = 0;     // edges not bordering exactly 2 triangles
  std::size_t non_manifold_vertices = 0;  // vertices whose triangle fan is not a single cycle
  std::size_t components = 0;             // connected components of the triangle graph
  bool manifold() const { return non_manifold_edges == 0 && non_manifold_vertices == 0; }
};

MeshManifoldReport check_mesh_manifold(const TriMesh& mesh);

}  // namespace ecm
