#include "ecm/mesh_export.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "ecm/errors.hpp"

namespace ecm {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

TriMesh triangulate_boundary(const PolyComplex& k) {
  const PolyComplex b = boundary_subcomplex(k);
  TriMesh mesh;
  std::map<Point, std::size_t> index;
  for (const auto& [key, cell] : b.cells()) {
    if (cell.dim != 0) continue;
    index.emplace(key, mesh.vertices.size());
    mesh.vertices.push_back({key.x / 4.0, key.y / 4.0, key.z / 4.0});
  }
  for (const auto& [key, cell] : b.cells()) {
    if (cell.dim != 2) continue;
    const auto& cyc = cell.cycle;
    if (cyc.size() < 3) throw InvariantError("2-cell with a vertex cycle shorter than 3");
    // Cycles start at their smallest vertex.
    for (std::size_t i = 1; i + 1 < cyc.size(); ++i) {
      mesh.triangles.push_back({index.at(cyc[0]), index.at(cyc[i]), index.at(cyc[i + 1])});
    }
  }
  return mesh;
}

std::string write_obj(const TriMesh& mesh) {
  std::string out;
  char buf[96];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.2f %.2f %.2f\n", v[0], v[1], v[2]);
    out += buf;
  }
  for (const auto& t : mesh.triangles) {
    std::snprintf(buf, sizeof buf, "f %zu %zu %zu\n", t[0] + 1, t[1] + 1, t[2] + 1);
    out += buf;
  }
  return out;
}

TriMesh read_obj(std::string_view text) {
  TriMesh mesh;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag.starts_with('#')) continue;
    if (tag == "v") {
      std::array<double, 3> v{};
      if (!(ls >> v[0] >> v[1] >> v[2])) throw ParseError("malformed vertex record", line_no);
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::array<std::size_t, 3> t{};
      if (!(ls >> t[0] >> t[1] >> t[2])) throw ParseError("malformed face record", line_no);
      for (auto& i : t) {
        if (i == 0 || i > mesh.vertices.size()) throw ParseError("face index out of range", line_no);
        --i;
      }
      mesh.triangles.push_back(t);
    } else {
      throw ParseError("unsupported record '" + tag + "'", line_no);
    }
  }
  return mesh;
}

MeshManifoldReport check_mesh_manifold(const TriMesh& mesh) {
  MeshManifoldReport r;
  std::map<std::pair<std::size_t, std::size_t>, int> edge_count;
  std::vector<std::vector<std::size_t>> fan(mesh.vertices.size());
  UnionFind tris(mesh.triangles.size());
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> first_tri;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int i = 0; i < 3; ++i) {
      const std::size_t a = tri[i];
      const std::size_t b = tri[(i + 1) % 3];
      const auto e = std::minmax(a, b);
      ++edge_count[e];
      auto [it, inserted] = first_tri.emplace(e, t);
      if (!inserted) tris.unite(it->second, t);
      fan[a].push_back(t);
    }
  }
  for (const auto& [e, n] : edge_count) {
    if (n != 2) ++r.non_manifold_edges;
  }
  // The triangles around a vertex must form one cycle through shared edges.
  for (std::size_t v = 0; v < fan.size(); ++v) {
    const auto& ts = fan[v];
    if (ts.empty()) continue;
    std::map<std::size_t, std::vector<std::size_t>> by_neighbor;  // other vertex -> triangle slots
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (std::size_t w : mesh.triangles[ts[i]]) {
        if (w != v) by_neighbor[w].push_back(i);
      }
    }
    UnionFind uf(ts.size());
    std::size_t comps = ts.size();
    bool bad = false;
    for (const auto& [w, slots] : by_neighbor) {
      if (slots.size() != 2) {
        bad = true;
        continue;
      }
      if (uf.unite(slots[0], slots[1])) --comps;
    }
    if (bad || comps != 1) ++r.non_manifold_vertices;
  }
  std::vector<bool> seen(mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const std::size_t root = tris.find(t);
    if (!seen[root]) {
      seen[root] = true;
      ++r.components;
    }
  }
  return r;
}

}  // namespace ecm
