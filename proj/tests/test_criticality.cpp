#include <random>
#include <set>

#include "doctest.h"
#include "ecm/criticality.hpp"
#include "support.hpp"

using namespace ecm;

namespace {

std::uint8_t pattern_of(std::initializer_list<Point> dirs) {
  std::uint8_t p = 0;
  for (const Point& d : dirs) p |= static_cast<std::uint8_t>(1u << octant_bit(d));
  return p;
}

}  // namespace

TEST_CASE("table against the explicit-complex oracle") {
  const CriticalityTable& table = default_criticality_table();
  CHECK(table == build_criticality_table());
  CHECK_FALSE(table[0]);
  CHECK_FALSE(table[255]);
  for (int pat = 0; pat < 256; ++pat) {
    const bool oracle = test::oracle_critical(test::pattern_image(static_cast<std::uint8_t>(pat))).contains({2, 2, 2});
    CHECK_MESSAGE(table[static_cast<std::uint8_t>(pat)] == oracle, "pattern " << pat);
  }
}

TEST_CASE("named configurations") {
  const CriticalityTable& t = default_criticality_table();
  CHECK(t[pattern_of({{-1, -1, -1}, {1, 1, -1}})]);   // share an edge
  CHECK_FALSE(t[pattern_of({{-1, -1, -1}, {1, -1, -1}})]);  // share a face
  CHECK(t[pattern_of({{-1, -1, -1}, {1, 1, 1}})]);     // share only the vertex
}

TEST_CASE("symmetry group") {
  const SymmetryGroup& g = cube_symmetries();
  CHECK(g.order() == 48);
  std::set<Symmetry> all(g.elements().begin(), g.elements().end());
  CHECK(all.size() == 48);
  CHECK(all.contains(Symmetry{}));
  for (const Symmetry& a : g.elements()) {
    for (const Symmetry& b : g.elements()) CHECK(all.contains(compose(a, b)));
  }
  const CriticalityTable& t = default_criticality_table();
  for (int pat = 0; pat < 256; ++pat) {
    for (const Symmetry& s : g.elements()) CHECK(t[s.apply(static_cast<std::uint8_t>(pat))] == t[static_cast<std::uint8_t>(pat)]);
  }
}

TEST_CASE("pattern census") {
  const PatternCensus c = classify_patterns(default_criticality_table(), cube_symmetries());
  CHECK(c.total_classes == 22);
  CHECK(c.critical_classes == 11);
  CHECK(cube_symmetries().canonical(0) == 0);
  CHECK(critical_class_representatives(default_criticality_table(), cube_symmetries()).size() == 11);
}

TEST_CASE("critical structuring elements") {
  const CriticalityTable& t = default_criticality_table();
  const auto els = critical_elements(t);
  CHECK(els.size() == t.critical_count());
  for (const auto& se : els) {
    CHECK(se.size() == 17);
    CHECK(se.origin_value() == 0);
  }
  const StructuringElement edge = pattern_element(pattern_of({{-1, -1, -1}, {1, 1, -1}}));
  std::vector<Point> corners;
  for (const auto& [o, v] : edge.entries()) {
    if (v == 3) corners.push_back(o);
  }
  REQUIRE(corners.size() == 2);
  int differing = 0;
  for (int a = 0; a < 3; ++a) differing += corners[0][a] != corners[1][a];
  CHECK(differing == 2);
}

TEST_CASE("detection") {
  CHECK(detect_critical(build_q_grid(BinaryImage({{0, 0, 0}}))).empty());
  CHECK(detect_critical(build_q_grid(BinaryImage({{0, 0, 0}, {1, 1, 0}}))) == std::vector<Point>{{2, 2, -2}, {2, 2, 2}});
  CHECK(detect_critical(build_q_grid(BinaryImage({{0, 0, 0}, {1, 1, 1}}))) == std::vector<Point>{{2, 2, 2}});
}

TEST_CASE("detection matches elements, oracle, translation and threads") {
  std::mt19937_64 rng(3);
  const auto els = critical_elements(default_criticality_table());
  for (int i = 0; i < 60; ++i) {
    const BinaryImage img = test::random_image(rng, 2 + i % 4, 0.2 + 0.3 * (i % 3));
    const GrayscaleGrid g = build_q_grid(img);
    const std::vector<Point> found = detect_critical(g);
    CHECK(std::is_sorted(found.begin(), found.end()));
    const auto oracle = test::oracle_critical(img);
    CHECK(std::set<Point>(found.begin(), found.end()) == oracle);
    CHECK(detect_critical(g, 4) == found);

    std::vector<Point> by_elements;
    for (const Point& p : g.cell_points()) {
      if (g.at(p) != 0) continue;
      for (const Point& o : neighborhood({NeighborhoodKind::N8, 1}, p)) CHECK(g.at(o) == kNoCell);
      for (const auto& se : els) {
        if (fits(g, p, se)) by_elements.push_back(p);
      }
    }
    std::sort(by_elements.begin(), by_elements.end());
    CHECK(by_elements == found);

    std::vector<Point> shifted;
    for (const Point& p : img.foreground()) shifted.push_back(p + Point{3, -2, 5});
    std::vector<Point> expect;
    for (const Point& p : found) expect.push_back(p + Point{12, -8, 20});
    CHECK(detect_critical(build_q_grid(BinaryImage(shifted))) == expect);
  }
}

TEST_CASE("table dump") {
  const std::string d = default_criticality_table().dump();
  CHECK(d.size() == 257);
  CHECK(d.back() == '\n');
  CHECK(std::count(d.begin(), d.end(), '1') == 128);
}
