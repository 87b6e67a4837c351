#include "ecm/repair.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "ecm/errors.hpp"

namespace ecm {

namespace {

const std::vector<Point>& offsets(NeighborhoodKind kind) {
  static const std::vector<Point> n6 = neighborhood_offsets({NeighborhoodKind::N6, 1});
  static const std::vector<Point> n12 = neighborhood_offsets({NeighborhoodKind::N12, 1});
  static const std::vector<Point> n8 = neighborhood_offsets({NeighborhoodKind::N8, 1});
  static const std::vector<Point> shell = neighborhood_offsets({NeighborhoodKind::Shell, 1});
  switch (kind) {
    case NeighborhoodKind::N6: return n6;
    case NeighborhoodKind::N12: return n12;
    case NeighborhoodKind::N8: return n8;
    default: return shell;
  }
}

// s in N^1(c): Chebyshev distance exactly 1.
bool in_shell(const Point& s, const Point& c) {
  const Point d = s - c;
  const int m = std::max({std::abs(d.x), std::abs(d.y), std::abs(d.z)});
  return m == 1;
}

bool in_any_shell(const Point& s, const std::vector<Point>& centers) {
  return std::any_of(centers.begin(), centers.end(), [&](const Point& c) { return in_shell(s, c); });
}

}  // namespace

std::vector<Point> vertex_star(const GrayscaleGrid& grid_q, const Point& p, StarMode mode) {
  std::vector<Point> star;
  if (mode == StarMode::separate) {
    for (const Coface& c : cofaces_of_vertex(grid_q, p)) star.push_back(c.key);
  } else {
    for (const Point& u : offsets(NeighborhoodKind::Shell)) {
      const Point q = p + 2 * u;
      if (grid_q.at(q) >= 0) star.push_back(q);
    }
  }
  std::sort(star.begin(), star.end());
  return star;
}

std::vector<ColorWrite> recolor_writes(const GrayscaleGrid& grid_q, const Point& p, const std::vector<Point>& star) {
  std::vector<ColorWrite> writes;
  // Vertex op: the small cube c(v) with all its faces.
  writes.push_back({p, 3, p, 0});
  for (const Point& o : offsets(NeighborhoodKind::N6)) writes.push_back({p + o, 2, p, 0});
  for (const Point& o : offsets(NeighborhoodKind::N12)) writes.push_back({p + o, 1, p, 0});
  for (const Point& o : offsets(NeighborhoodKind::N8)) writes.push_back({p + o, 0, p, 0});

  for (const Point& q : star) {
    const Color dim = grid_q.at(q);
    if (dim == 1) {
      const Point other = q + (q - p);
      const std::vector<Point> excluded{p, other};
      writes.push_back({q, 3, q, 1});
      for (const Point& o : offsets(NeighborhoodKind::N6)) {
        if (!in_any_shell(q + o, excluded)) writes.push_back({q + o, 2, q, 1});
      }
      for (const Point& o : offsets(NeighborhoodKind::N12)) {
        if (!in_any_shell(q + o, excluded)) writes.push_back({q + o, 1, q, 1});
      }
    } else if (dim == 2) {
      const std::vector<Point> edges = faces_of(grid_q, q, q_face_elements());
      writes.push_back({q, 3, q, 2});
      for (const Point& o : offsets(NeighborhoodKind::N6)) {
        if (!in_any_shell(q + o, edges)) writes.push_back({q + o, 2, q, 2});
      }
    }
    // Cubes keep their color.
  }
  return writes;
}

RepairOutcome repair_grid(const GrayscaleGrid& grid_q, const std::vector<Point>& critical,
                          const RepairOptions& options) {
  RepairOutcome out;
  out.g_p = grid_q;
  out.critical = critical;
  std::sort(out.critical.begin(), out.critical.end());

  const std::size_t n = out.critical.size();
  std::vector<std::vector<Point>> stars(n);
  std::vector<std::vector<ColorWrite>> writes(n);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      stars[i] = vertex_star(grid_q, out.critical[i], options.star_mode);
      writes[i] = recolor_writes(grid_q, out.critical[i], stars[i]);
    }
  };
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = std::min(n, t * chunk), e = std::min(n, b + chunk);
      pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }

  // Applied sequentially so the result never depends on the schedule.
  std::vector<bool> written;
  if (options.audit_conflicts) written.assign(out.g_p.volume(), false);
  auto values = out.g_p.mutable_values();
  for (std::size_t i = 0; i < n; ++i) {
    for (const ColorWrite& w : writes[i]) {
      if (!out.g_p.in_bounds(w.point)) {
        std::ostringstream os;
        os << "repair write outside the grid at " << w.point;
        throw InvariantError(os.str());
      }
      const std::size_t idx = out.g_p.index(w.point);
      if (options.audit_conflicts) {
        if (written[idx] && values[idx] != w.value) {
          std::ostringstream os;
          os << "conflicting repair writes at " << w.point << ": " << int(values[idx]) << " vs " << int(w.value);
          throw InvariantError(os.str());
        }
        written[idx] = true;
      }
      values[idx] = w.value;
    }
    out.stars.emplace(out.critical[i], std::move(stars[i]));
  }

  const auto before = grid_q.values();
  for (std::size_t i = 0; i < values.size(); ++i) out.touched += values[i] != before[i];
  return out;
}

WellDefinedReport verify_welldefined(const GrayscaleGrid& grid_q, const std::vector<Point>& critical,
                                     std::size_t orderings, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::unordered_map<Point, Color, PointHash> reference;
  for (std::size_t run = 0; run < std::max<std::size_t>(orderings, 1); ++run) {
    std::vector<Point> order = critical;
    std::shuffle(order.begin(), order.end(), rng);
    std::unordered_map<Point, Color, PointHash> assigned;
    for (const Point& p : order) {
      std::vector<Point> star = vertex_star(grid_q, p, run % 2 ? StarMode::separate : StarMode::fused);
      std::shuffle(star.begin(), star.end(), rng);
      for (const ColorWrite& w : recolor_writes(grid_q, p, star)) {
        const auto [it, inserted] = assigned.emplace(w.point, w.value);
        if (!inserted && it->second != w.value) return {false, w.point};
      }
    }
    if (run == 0) {
      reference = std::move(assigned);
      continue;
    }
    if (assigned.size() != reference.size()) {
      for (const auto& [pt, v] : assigned) {
        if (!reference.contains(pt)) return {false, pt};
      }
      for (const auto& [pt, v] : reference) {
        if (!assigned.contains(pt)) return {false, pt};
      }
    }
    for (const auto& [pt, v] : assigned) {
      const auto it = reference.find(pt);
      if (it == reference.end() || it->second != v) return {false, pt};
    }
  }
  return {};
}

}  // namespace ecm
