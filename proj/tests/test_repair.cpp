#include <random>
#include <set>

#include "doctest.h"
#include "ecm/criticality.hpp"
#include "ecm/errors.hpp"
#include "ecm/repair.hpp"
#include "support.hpp"

using namespace ecm;

namespace {

int chebyshev(const Point& a, const Point& b) {
  const Point d = a - b;
  return std::max({std::abs(d.x), std::abs(d.y), std::abs(d.z)});
}

}  // namespace

TEST_CASE("vertex-only contact") {
  const BinaryImage img({{0, 0, 0}, {1, 1, 1}});
  const GrayscaleGrid g = build_q_grid(img);
  const RepairOutcome r = repair_grid(g, detect_critical(g));
  CHECK(r.critical == std::vector<Point>{{2, 2, 2}});
  CHECK(r.g_p.at({2, 2, 2}) == 3);
  CHECK(r.g_p.at({3, 2, 2}) == 2);
  CHECK(r.g_p.at({3, 3, 2}) == 1);
  CHECK(r.g_p.at({3, 3, 3}) == 0);
  // The cubes share no edge or square: every star cell belongs to one cube.
  const auto& star = r.stars.at({2, 2, 2});
  CHECK(star.size() == 14);
  for (const Point& q : star) {
    const bool in_first = std::max({q.x, q.y, q.z}) <= 2;
    const bool in_second = std::min({q.x, q.y, q.z}) >= 2;
    CHECK(in_first != in_second);
  }

  // Hand-derived change set: the vertex op plus, per cube, three edge ops
  // and three square ops; cubes keep their color.
  std::set<Point> expected;
  const auto add_ops = [&](const std::vector<ColorWrite>& ws) {
    for (const ColorWrite& w : ws) {
      if (g.at(w.point) != w.value) expected.insert(w.point);
    }
  };
  add_ops(recolor_writes(g, {2, 2, 2}, vertex_star(g, {2, 2, 2})));
  std::set<Point> changed;
  for (const Point& p : r.g_p.cell_points()) {
    if (g.at(p) != r.g_p.at(p)) changed.insert(p);
  }
  for (const Point& p : g.cell_points()) {
    if (g.at(p) != r.g_p.at(p)) changed.insert(p);
  }
  CHECK(changed == expected);
  CHECK(r.touched == changed.size());
  // 27 for c(v); per edge 1 + 4 + 4; per square 1 + 2.
  CHECK(changed.size() == 27 + 6 * 9 + 6 * 3);
}

TEST_CASE("no critical vertex leaves the grid untouched") {
  const GrayscaleGrid g = build_q_grid(BinaryImage({{0, 0, 0}}));
  const RepairOutcome r = repair_grid(g, {});
  CHECK(r.g_p == g);
  CHECK(r.touched == 0);
}

TEST_CASE("edge shared by two critical endpoints") {
  const BinaryImage img({{0, 0, 0}, {1, 1, 0}});
  const GrayscaleGrid g = build_q_grid(img);
  const auto crit = detect_critical(g);
  CHECK(crit.size() == 2);
  const auto w1 = recolor_writes(g, crit[0], {{2, 2, 0}});
  const auto w2 = recolor_writes(g, crit[1], {{2, 2, 0}});
  std::set<std::pair<Point, int>> edge1, edge2;
  for (const auto& w : w1) {
    if (w.trigger == Point{2, 2, 0}) edge1.emplace(w.point, w.value);
  }
  for (const auto& w : w2) {
    if (w.trigger == Point{2, 2, 0}) edge2.emplace(w.point, w.value);
  }
  CHECK(edge1 == edge2);
  CHECK(edge1.size() == 9);
  CHECK(verify_welldefined(g, crit).ok);
}

TEST_CASE("repair properties on random images") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const BinaryImage img = test::random_image(rng, 5, 0.2 + 0.3 * (i % 3));
    const GrayscaleGrid g = build_q_grid(img);
    const auto crit = detect_critical(g);
    RepairOptions audit;
    audit.audit_conflicts = true;
    const RepairOutcome r = repair_grid(g, crit, audit);
    CHECK(verify_welldefined(g, crit, 4, static_cast<std::uint64_t>(i)).ok);
    for (const Point& p : crit) CHECK(r.g_p.at(p) == 3);

    // Locality and residue discipline of every write.
    for (const Point& p : crit) {
      for (const ColorWrite& w : recolor_writes(g, p, vertex_star(g, p))) {
        CHECK(chebyshev(w.point, p) <= 3);
        CHECK(chebyshev(w.point, w.trigger) <= 1);
        CHECK(residue_class(w.trigger) == w.trigger_dim);
        CHECK(g.at(w.point) >= -1);
      }
    }
    for (std::size_t idx = 0; idx < g.volume(); ++idx) {
      const Point q = g.point(idx);
      if (g.at(q) == r.g_p.at(q)) continue;
      const bool near = std::any_of(crit.begin(), crit.end(), [&](const Point& p) { return chebyshev(p, q) <= 3; });
      CHECK(near);
    }

    // Idempotent, order- and thread-independent.
    std::vector<Point> rev(crit.rbegin(), crit.rend());
    RepairOptions threaded;
    threaded.threads = 4;
    threaded.star_mode = StarMode::separate;
    CHECK(repair_grid(g, crit, threaded).g_p == r.g_p);
    GrayscaleGrid twice = r.g_p;
    for (const Point& p : crit) {
      for (const ColorWrite& w : recolor_writes(g, p, vertex_star(g, p))) twice.set(w.point, w.value);
    }
    CHECK(twice == r.g_p);
  }
}

TEST_CASE("star modes agree") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const GrayscaleGrid g = build_q_grid(test::random_image(rng, 4, 0.5));
    for (const Point& p : g.cell_points()) {
      if (g.at(p) == 0) CHECK(vertex_star(g, p, StarMode::fused) == vertex_star(g, p, StarMode::separate));
    }
  }
}

TEST_CASE("conflicting writes are detected") {
  // Not an E_Q grid: two vertex points one unit apart, so each small cube
  // overwrites the other's center.
  GrayscaleGrid g({-4, -4, -4}, {12, 12, 12});
  g.set({2, 2, 2}, 0);
  g.set({3, 2, 2}, 0);
  RepairOptions audit;
  audit.audit_conflicts = true;
  CHECK_THROWS_AS(repair_grid(g, {{2, 2, 2}, {3, 2, 2}}, audit), InvariantError);
  const WellDefinedReport w = verify_welldefined(g, {{2, 2, 2}, {3, 2, 2}}, 2);
  CHECK_FALSE(w.ok);
  CHECK(w.conflict.has_value());

  // On a real E_Q even arbitrary vertex pairs never clash.
  const GrayscaleGrid q = build_q_grid(BinaryImage({{0, 0, 0}, {1, 1, 1}}));
  std::vector<Point> verts;
  for (const Point& p : q.cell_points()) {
    if (q.at(p) == 0) verts.push_back(p);
  }
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) CHECK_NOTHROW(repair_grid(q, {verts[i], verts[j]}, audit));
  }
}
