#include "ecm/criticality.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <thread>

namespace ecm {

std::size_t CriticalityTable::critical_count() const {
  return static_cast<std::size_t>(std::count(entries_.begin(), entries_.end(), true));
}

std::string CriticalityTable::dump() const {
  std::string out(256, '0');
  for (std::size_t i = 0; i < 256; ++i) {
    if (entries_[i]) out[i] = '1';
  }
  out += '\n';
  return out;
}

std::uint8_t Symmetry::apply(std::uint8_t pattern) const {
  std::uint8_t out = 0;
  for (int bit = 0; bit < 8; ++bit) {
    if (pattern & (1u << bit)) out |= static_cast<std::uint8_t>(1u << octant_bit(apply(octant_direction(bit))));
  }
  return out;
}

Symmetry compose(const Symmetry& a, const Symmetry& b) {
  // a(b(p))[i] = a.sign[i] * b(p)[a.perm[i]] = a.sign[i] * b.sign[a.perm[i]] * p[b.perm[a.perm[i]]]
  Symmetry c;
  for (int i = 0; i < 3; ++i) {
    c.perm[i] = b.perm[a.perm[i]];
    c.sign[i] = a.sign[i] * b.sign[a.perm[i]];
  }
  return c;
}

SymmetryGroup::SymmetryGroup() {
  std::array<int, 3> perm{0, 1, 2};
  do {
    for (int mask = 0; mask < 8; ++mask) {
      Symmetry s;
      s.perm = perm;
      for (int i = 0; i < 3; ++i) s.sign[i] = (mask & (1 << i)) ? -1 : 1;
      elements_.push_back(s);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

std::uint8_t SymmetryGroup::canonical(std::uint8_t pattern) const {
  std::uint8_t best = pattern;
  for (const Symmetry& s : elements_) best = std::min(best, s.apply(pattern));
  return best;
}

const SymmetryGroup& cube_symmetries() {
  static const SymmetryGroup group;
  return group;
}

// ---------------------------------------------------------------------------
// Local oracle. Coordinates are doubled and centered on the vertex: cube
// centers sit at (+-1,+-1,+-1), edges at v are (+-1,0,0)-type points and
// squares at v are (+-1,+-1,0)-type points.

namespace {

bool cube_present(std::uint8_t pattern, const Point& center) {
  return (pattern >> octant_bit(center)) & 1u;
}

// Number of present cubes having this square (at v) as a face.
int square_cofaces(std::uint8_t pattern, const Point& square) {
  int normal = 0;
  for (int a = 0; a < 3; ++a) {
    if (square[a] == 0) normal = a;
  }
  int n = 0;
  for (int s : {-1, 1}) {
    Point c = square;
    c[normal] = s;
    n += cube_present(pattern, c);
  }
  return n;
}

std::vector<Point> squares_at_vertex() {
  std::vector<Point> out;
  for (int normal = 0; normal < 3; ++normal) {
    for (int s1 : {-1, 1}) {
      for (int s2 : {-1, 1}) {
        Point p;
        p[(normal + 1) % 3] = s1;
        p[(normal + 2) % 3] = s2;
        out.push_back(p);
      }
    }
  }
  return out;
}

std::vector<Point> edges_at_vertex() {
  std::vector<Point> out;
  for (int a = 0; a < 3; ++a) {
    for (int s : {-1, 1}) out.push_back(unit(a, s));
  }
  return out;
}

bool edge_of_square(const Point& edge, const Point& square) {
  for (int a = 0; a < 3; ++a) {
    if (edge[a] != 0 && edge[a] != square[a]) return false;
  }
  return true;
}

}  // namespace

bool pattern_is_critical(std::uint8_t pattern) {
  const std::vector<Point> squares = squares_at_vertex();
  const std::vector<Point> edges = edges_at_vertex();

  std::vector<Point> free_squares;
  for (const Point& s : squares) {
    if (square_cofaces(pattern, s) == 1) free_squares.push_back(s);
  }
  if (free_squares.empty()) return false;  // vertex not on the boundary

  // Boundary edges at v and their boundary 2-coface counts.
  std::vector<Point> boundary_edges;
  for (const Point& e : edges) {
    int count = 0;
    for (const Point& s : free_squares) count += edge_of_square(e, s);
    if (count == 0) continue;
    if (count != 2) return true;  // E1
    boundary_edges.push_back(e);
  }

  // E2: link graph on boundary edges, arcs through free squares.
  std::vector<int> parent(boundary_edges.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const Point& s : free_squares) {
    int first = -1;
    for (std::size_t i = 0; i < boundary_edges.size(); ++i) {
      if (!edge_of_square(boundary_edges[i], s)) continue;
      if (first < 0) {
        first = static_cast<int>(i);
      } else {
        parent[find(static_cast<int>(i))] = find(first);
      }
    }
  }
  std::set<int> roots;
  for (std::size_t i = 0; i < boundary_edges.size(); ++i) roots.insert(find(static_cast<int>(i)));
  return roots.size() != 1;
}

CriticalityTable build_criticality_table() {
  std::array<bool, 256> entries{};
  for (int p = 0; p < 256; ++p) entries[p] = pattern_is_critical(static_cast<std::uint8_t>(p));
  return CriticalityTable(entries);
}

const CriticalityTable& default_criticality_table() {
  static const CriticalityTable table = build_criticality_table();
  return table;
}

StructuringElement pattern_element(std::uint8_t pattern) {
  std::vector<StructuringElement::Entry> entries{{Point{}, 0}};
  for (int bit = 0; bit < 8; ++bit) {
    const Point d = octant_direction(bit);
    entries.push_back({d, -1});
    entries.push_back({2 * d, static_cast<Color>((pattern >> bit) & 1u ? 3 : -1)});
  }
  return StructuringElement(std::move(entries));
}

std::vector<StructuringElement> critical_elements(const CriticalityTable& table) {
  std::vector<StructuringElement> out;
  for (int p = 0; p < 256; ++p) {
    if (table[static_cast<std::uint8_t>(p)]) out.push_back(pattern_element(static_cast<std::uint8_t>(p)));
  }
  return out;
}

std::uint8_t vertex_pattern(const GrayscaleGrid& grid, const Point& p) {
  std::uint8_t pattern = 0;
  for (int bit = 0; bit < 8; ++bit) {
    if (grid.at(p + 2 * octant_direction(bit)) == 3) pattern |= static_cast<std::uint8_t>(1u << bit);
  }
  return pattern;
}

std::vector<Point> detect_critical(const GrayscaleGrid& grid, const CriticalityTable& table, unsigned threads) {
  const Point lo = grid.origin();
  const Point hi = grid.origin() + grid.extent();  // exclusive
  // First coordinate >= lo with residue 2 mod 4.
  auto first_vertex = [](int v) { return v + floor_mod(2 - v, 4); };
  std::vector<int> zs;
  for (int z = first_vertex(lo.z); z < hi.z; z += 4) zs.push_back(z);

  auto scan = [&](std::size_t begin, std::size_t end, std::vector<Point>& out) {
    for (std::size_t iz = begin; iz < end; ++iz) {
      const int z = zs[iz];
      for (int y = first_vertex(lo.y); y < hi.y; y += 4) {
        for (int x = first_vertex(lo.x); x < hi.x; x += 4) {
          const Point p{x, y, z};
          if (grid.at(p) != 0) continue;
          if (table[vertex_pattern(grid, p)]) out.push_back(p);
        }
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, zs.size())));
  std::vector<std::vector<Point>> parts(threads);
  if (threads == 1) {
    scan(0, zs.size(), parts[0]);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (zs.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = std::min(zs.size(), t * chunk), e = std::min(zs.size(), b + chunk);
      pool.emplace_back(scan, b, e, std::ref(parts[t]));
    }
    for (auto& th : pool) th.join();
  }
  std::vector<Point> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point> detect_critical(const GrayscaleGrid& grid, unsigned threads) {
  return detect_critical(grid, default_criticality_table(), threads);
}

PatternCensus classify_patterns(const CriticalityTable& table, const SymmetryGroup& group) {
  std::set<std::uint8_t> all, critical;
  for (int p = 0; p < 256; ++p) {
    const auto pattern = static_cast<std::uint8_t>(p);
    const std::uint8_t c = group.canonical(pattern);
    all.insert(c);
    if (table[pattern]) critical.insert(c);
  }
  return {all.size(), critical.size()};
}

std::vector<std::uint8_t> critical_class_representatives(const CriticalityTable& table, const SymmetryGroup& group) {
  std::set<std::uint8_t> reps;
  for (int p = 0; p < 256; ++p) {
    const auto pattern = static_cast<std::uint8_t>(p);
    if (table[pattern]) reps.insert(group.canonical(pattern));
  }
  return {reps.begin(), reps.end()};
}

}  // namespace ecm
