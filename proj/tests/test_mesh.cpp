#include <set>

#include "doctest.h"
#include "ecm/errors.hpp"
#include "ecm/homology.hpp"
#include "ecm/mesh_export.hpp"
#include "support.hpp"

using namespace ecm;
using ecm::test::build_all;

namespace {

std::size_t edge_count(const TriMesh& m) {
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& t : m.triangles) {
    for (int i = 0; i < 3; ++i) edges.insert(std::minmax(t[i], t[(i + 1) % 3]));
  }
  return edges.size();
}

std::size_t expected_triangles(const PolyComplex& k) {
  const PolyComplex boundary = boundary_subcomplex(k);
  std::size_t n = 0;
  for (const Point& key : boundary.keys_of_dim(2)) n += boundary.at(key).cycle.size() - 2;
  return n;
}

}  // namespace

TEST_CASE("single voxel mesh") {
  const TriMesh m = triangulate_boundary(build_q_complex(build_q_grid(BinaryImage({{0, 0, 0}}))));
  CHECK(m.vertices.size() == 8);
  CHECK(m.triangles.size() == 12);
  CHECK(static_cast<long long>(m.vertices.size()) - static_cast<long long>(edge_count(m)) +
            static_cast<long long>(m.triangles.size()) ==
        2);
  const std::string obj = write_obj(m);
  CHECK(obj.starts_with("v -0.50 -0.50 -0.50\n"));
  CHECK(check_mesh_manifold(m).manifold());
  CHECK(check_mesh_manifold(m).components == 1);
  for (const auto& t : m.triangles) {
    CHECK(t[0] != t[1]);
    CHECK(t[1] != t[2]);
    CHECK(t[0] != t[2]);
  }
}

TEST_CASE("OBJ round trip") {
  const auto b = build_all(BinaryImage({{0, 0, 0}, {1, 1, 1}}));
  const TriMesh m = triangulate_boundary(b.p);
  const std::string obj = write_obj(m);
  const TriMesh back = read_obj(obj);
  CHECK(back.vertices == m.vertices);
  CHECK(back.triangles == m.triangles);
  CHECK(write_obj(back) == obj);
  CHECK(write_obj(triangulate_boundary(build_all(BinaryImage({{0, 0, 0}, {1, 1, 1}})).p)) == obj);
  // Quarter positions survive the two-decimal format.
  CHECK(obj.find("0.25") != std::string::npos);

  CHECK_THROWS_AS(read_obj("v 1 2\n"), ParseError);
  CHECK_THROWS_AS(read_obj("v 0 0 0\nf 1 2 3\n"), ParseError);
  CHECK_THROWS_AS(read_obj("f 1 1 x\n"), ParseError);
  CHECK(read_obj("# comment\n\n").vertices.empty());
}

TEST_CASE("empty complex gives an empty mesh") {
  const TriMesh m = triangulate_boundary(PolyComplex{});
  CHECK(m.vertices.empty());
  CHECK(m.triangles.empty());
  CHECK(write_obj(m).empty());
}

TEST_CASE("short cycle is rejected") {
  PolyComplex k = build_q_complex(build_q_grid(BinaryImage({{0, 0, 0}})));
  Cell broken = k.at({0, 0, 2});
  broken.cycle.resize(2);
  k.put(broken);
  CHECK_THROWS_AS(triangulate_boundary(k), InvariantError);
}

TEST_CASE("diagonal pair: P is manifold, Q is not") {
  const auto b = build_all(BinaryImage({{0, 0, 0}, {1, 1, 1}}));
  const MeshManifoldReport q = check_mesh_manifold(triangulate_boundary(b.q));
  CHECK_FALSE(q.manifold());
  CHECK(q.non_manifold_vertices == 1);
  const MeshManifoldReport p = check_mesh_manifold(triangulate_boundary(b.p));
  CHECK(p.manifold());
  CHECK(p.components == 1);
  CHECK(p.components == static_cast<std::size_t>(betti(b.p)[0]));
}

TEST_CASE("meshes on the corpus") {
  for (const BinaryImage& img : ecm::test::corpus(40, 23)) {
    const auto b = build_all(img);
    CAPTURE(serialize_coords(img));
    const TriMesh mp = triangulate_boundary(b.p), mq = triangulate_boundary(b.q);
    const MeshManifoldReport rp = check_mesh_manifold(mp), rq = check_mesh_manifold(mq);
    CHECK(rp.manifold());
    CHECK(rq.manifold() == b.outcome.critical.empty());
    CHECK(mp.triangles.size() == expected_triangles(b.p));
    CHECK(mq.triangles.size() == expected_triangles(b.q));
    // One outer surface per component plus one per cavity.
    const Betti bp = betti(b.p);
    CHECK(rp.components == static_cast<std::size_t>(bp[0] + bp[2]));
  }
}
