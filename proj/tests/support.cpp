#include "support.hpp"

#include <algorithm>
#include <numeric>

#include "ecm/criticality.hpp"

namespace ecm::test {

BinaryImage random_image(std::mt19937_64& rng, int n, double density) {
  std::bernoulli_distribution on(density);
  std::vector<Point> pts;
  for (int z = 0; z < n; ++z) {
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        if (on(rng)) pts.push_back({x, y, z});
      }
    }
  }
  return BinaryImage(std::move(pts));
}

BinaryImage pattern_image(std::uint8_t pattern) {
  std::vector<Point> pts;
  for (int b = 0; b < 8; ++b) {
    if ((pattern >> b) & 1) {
      const Point d = octant_direction(b);
      pts.push_back({(d.x + 1) / 2, (d.y + 1) / 2, (d.z + 1) / 2});
    }
  }
  return BinaryImage(std::move(pts));
}

std::array<std::size_t, 4> OracleComplex::counts() const {
  std::array<std::size_t, 4> c{};
  for (const auto& [k, v] : cells) ++c[v.first];
  return c;
}

OracleComplex closure_complex(const BinaryImage& image) {
  OracleComplex k;
  // Per axis a face of the voxel is the full interval (offset 0) or one of
  // its endpoints (offset -2 / +2 in quarter units).
  for (const Point& v : image.foreground()) {
    for (int a = -1; a <= 1; ++a) {
      for (int b = -1; b <= 1; ++b) {
        for (int c = -1; c <= 1; ++c) {
          const int sel[3] = {a, b, c};
          Point key = 4 * v;
          int dim = 0;
          std::set<Point> facets;
          for (int i = 0; i < 3; ++i) {
            key[i] += 2 * sel[i];
            if (sel[i] == 0) ++dim;
          }
          for (int i = 0; i < 3; ++i) {
            if (sel[i] != 0) continue;
            for (int s : {-2, 2}) {
              Point f = key;
              f[i] += s;
              facets.insert(f);
            }
          }
          k.cells[key] = {dim, facets};
        }
      }
    }
  }
  return k;
}

std::size_t components26(const BinaryImage& image) {
  const auto& vox = image.foreground();
  std::map<Point, std::size_t> index;
  for (std::size_t i = 0; i < vox.size(); ++i) index[vox[i]] = i;
  std::vector<std::size_t> parent(vox.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t n = vox.size();
  for (std::size_t i = 0; i < vox.size(); ++i) {
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dz = -1; dz <= 1; ++dz) {
          auto it = index.find(vox[i] + Point{dx, dy, dz});
          if (it == index.end()) continue;
          const std::size_t a = root(i);
          const std::size_t b = root(it->second);
          if (a != b) {
            parent[a] = b;
            --n;
          }
        }
      }
    }
  }
  return n;
}

std::set<Point> oracle_critical(const BinaryImage& image) {
  const OracleComplex k = closure_complex(image);
  std::map<Point, int> square_cubes;
  for (const auto& [key, cell] : k.cells) {
    if (cell.first == 3) {
      for (const Point& f : cell.second) ++square_cubes[f];
    }
  }
  std::set<Point> free_squares;
  for (const auto& [sq, n] : square_cubes) {
    if (n == 1) free_squares.insert(sq);
  }
  std::map<Point, std::vector<Point>> edge_squares;  // boundary edge -> free squares
  for (const Point& sq : free_squares) {
    for (const Point& e : k.cells.at(sq).second) edge_squares[e].push_back(sq);
  }
  std::map<Point, std::vector<Point>> vertex_edges;  // boundary vertex -> boundary edges
  for (const auto& [e, sqs] : edge_squares) {
    for (const Point& v : k.cells.at(e).second) vertex_edges[v].push_back(e);
  }
  std::set<Point> critical;
  for (const auto& [e, sqs] : edge_squares) {
    if (sqs.size() != 2) {
      for (const Point& v : k.cells.at(e).second) critical.insert(v);
    }
  }
  for (const auto& [v, edges] : vertex_edges) {
    // Flood fill over edges through shared free squares.
    std::set<Point> seen{edges.front()};
    std::vector<Point> stack{edges.front()};
    while (!stack.empty()) {
      const Point e = stack.back();
      stack.pop_back();
      for (const Point& sq : edge_squares.at(e)) {
        for (const Point& e2 : k.cells.at(sq).second) {
          if (std::find(edges.begin(), edges.end(), e2) != edges.end() && seen.insert(e2).second) stack.push_back(e2);
        }
      }
    }
    if (seen.size() != edges.size()) critical.insert(v);
  }
  return critical;
}

Built build_all(const BinaryImage& image) {
  Built b;
  b.g_q = build_q_grid(image);
  b.outcome = repair_grid(b.g_q, detect_critical(b.g_q));
  b.q = build_q_complex(b.g_q);
  b.p = build_p_complex(b.g_q, b.outcome);
  return b;
}

std::vector<BinaryImage> corpus(std::size_t randoms, std::uint64_t seed) {
  std::vector<BinaryImage> images;
  for (std::uint8_t rep : critical_class_representatives(default_criticality_table(), cube_symmetries())) {
    images.push_back(pattern_image(rep));
  }
  std::mt19937_64 rng(seed);
  const double densities[] = {0.2, 0.5, 0.8};
  for (std::size_t i = 0; i < randoms; ++i) images.push_back(random_image(rng, 6, densities[i % 3]));
  return images;
}

}  // namespace ecm::test
