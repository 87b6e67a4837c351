#include "ecm/complex.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "ecm/criticality.hpp"
#include "ecm/errors.hpp"

namespace ecm {

namespace {

std::string key_string(const Point& p) {
  std::ostringstream os;
  os << p.x << ',' << p.y << ',' << p.z;
  return os.str();
}

// Returns the vertex cycle of a 2-cell or an empty vector when the facet
// edges do not form a single closed walk.
std::vector<Point> ordered_cycle(const PolyComplex& k, const Cell& face) {
  std::map<Point, std::vector<Point>> adj;
  for (const Point& e : face.facets) {
    const Cell* edge = k.find(e);
    if (edge == nullptr || edge->dim != 1 || edge->facets.size() != 2) return {};
    adj[edge->facets[0]].push_back(edge->facets[1]);
    adj[edge->facets[1]].push_back(edge->facets[0]);
  }
  if (adj.size() < 3) return {};
  for (auto& [v, nb] : adj) {
    if (nb.size() != 2) return {};
    std::sort(nb.begin(), nb.end());
  }
  std::vector<Point> cycle{adj.begin()->first};
  Point prev = cycle[0];
  Point cur = adj.begin()->second[0];
  while (cur != cycle[0]) {
    if (cycle.size() > adj.size()) return {};
    cycle.push_back(cur);
    const auto& nb = adj[cur];
    const Point next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  if (cycle.size() != adj.size()) return {};

  // Newell normal; orient counterclockwise about its dominant positive axis.
  long long n[3] = {0, 0, 0};
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Point& a = cycle[i];
    const Point& b = cycle[(i + 1) % cycle.size()];
    n[0] += static_cast<long long>(a.y - b.y) * (a.z + b.z);
    n[1] += static_cast<long long>(a.z - b.z) * (a.x + b.x);
    n[2] += static_cast<long long>(a.x - b.x) * (a.y + b.y);
  }
  int axis = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::llabs(n[i]) > std::llabs(n[axis])) axis = i;
  }
  if (n[axis] < 0) std::reverse(cycle.begin() + 1, cycle.end());
  return cycle;
}

class PBuilder {
 public:
  PBuilder(const GrayscaleGrid& grid_q, const std::vector<Point>& critical)
      : grid_q_(grid_q), critical_(critical.begin(), critical.end()) {}

  bool critical(const Point& p) const { return critical_.contains(p); }

  void add(const Point& key, int dim, std::vector<Point> facets) {
    std::sort(facets.begin(), facets.end());
    Cell cell{key, dim, std::move(facets), {}};
    auto [it, inserted] = cells_.emplace(key, cell);
    if (!inserted && it->second != cell) {
      throw InvariantError("conflicting replacement cells at key " + key_string(key));
    }
  }

  // Rule (1): the small cube c(v) with all its faces.
  void small_cube(const Point& p) {
    std::vector<Point> faces;
    for (int a = 0; a < 3; ++a) {
      for (int s : {-1, 1}) {
        const Point f = unit(a, s);
        faces.push_back(p + f);
        std::vector<Point> edges;
        for (int b = 0; b < 3; ++b) {
          if (b == a) continue;
          for (int t : {-1, 1}) edges.push_back(p + f + unit(b, t));
        }
        add(p + f, 2, edges);
      }
    }
    add(p, 3, faces);
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        const int c = 3 - a - b;
        for (int s : {-1, 1}) {
          for (int t : {-1, 1}) {
            const Point e = p + unit(a, s) + unit(b, t);
            add(e, 1, {e + unit(c, -1), e + unit(c, 1)});
          }
        }
      }
    }
    for (int bit = 0; bit < 8; ++bit) add(p + octant_direction(bit), 0, {});
  }

  // Rules (2)/(3): pyramid or middle cube at edge key q along `axis`.
  void edge_block(const Point& q, int axis) {
    const Point u = unit(axis);
    const Point ends[2] = {q - 2 * u, q + 2 * u};
    const Point inward[2] = {u, -u};
    const bool crit[2] = {critical(ends[0]), critical(ends[1])};
    const int o1 = (axis + 1) % 3;
    const int o2 = (axis + 2) % 3;

    std::vector<Point> faces;
    for (int i = 0; i < 2; ++i) {
      if (crit[i]) faces.push_back(ends[i] + inward[i]);
    }
    for (int o : {o1, o2}) {
      const int other = o == o1 ? o2 : o1;
      for (int s : {-1, 1}) {
        const Point t = unit(o, s);
        faces.push_back(q + t);
        std::vector<Point> edges;
        for (int i = 0; i < 2; ++i) {
          if (crit[i]) edges.push_back(ends[i] + inward[i] + t);
        }
        for (int s2 : {-1, 1}) edges.push_back(q + t + unit(other, s2));
        add(q + t, 2, edges);
      }
    }
    add(q, 3, faces);
    for (int s1 : {-1, 1}) {
      for (int s2 : {-1, 1}) {
        const Point tt = unit(o1, s1) + unit(o2, s2);
        std::vector<Point> verts;
        for (int i = 0; i < 2; ++i) verts.push_back(crit[i] ? ends[i] + inward[i] + tt : ends[i]);
        add(q + tt, 1, verts);
      }
    }
  }

  // Rule (4): square at key r with at least one critical corner.
  void square_block(const Point& r) {
    int n = 0;
    for (int a = 0; a < 3; ++a) {
      if (floor_mod(r[a], 4) != 0) n = a;
    }
    const int in_plane[2] = {(n + 1) % 3, (n + 2) % 3};
    std::vector<Point> faces{r + unit(n, -1), r + unit(n, 1)};
    std::vector<Point> big[2];  // facets of B- and B+
    for (int k = 0; k < 2; ++k) {
      const int c = in_plane[k];
      const int d = in_plane[1 - k];
      for (int sigma : {-1, 1}) {
        const Point m = r + 2 * unit(c, sigma);
        const bool side_crit = critical(m + 2 * unit(d)) || critical(m - 2 * unit(d));
        if (side_crit) faces.push_back(r + unit(c, sigma));
        for (int s = 0; s < 2; ++s) {
          big[s].push_back(side_crit ? r + unit(c, sigma) + unit(n, 2 * s - 1) : m);
        }
      }
    }
    add(r, 3, faces);
    for (int s = 0; s < 2; ++s) add(r + unit(n, 2 * s - 1), 2, big[s]);
  }

  // Rule (5): cube at key s becomes a hexahedron.
  void cube_block(const Point& s) {
    std::vector<Point> faces;
    for (int a = 0; a < 3; ++a) {
      for (int sg : {-1, 1}) {
        const Point f = unit(a, sg);
        const Point sq = s + 2 * f;
        bool replaced = false;
        for (int t1 : {-1, 1}) {
          for (int t2 : {-1, 1}) {
            replaced |= critical(sq + 2 * unit((a + 1) % 3, t1) + 2 * unit((a + 2) % 3, t2));
          }
        }
        faces.push_back(replaced ? s + f : sq);
      }
    }
    add(s, 3, faces);
  }

  void run(const RepairOutcome& outcome) {
    for (const Point& p : outcome.critical) {
      small_cube(p);
      auto it = outcome.stars.find(p);
      const std::vector<Point> star = it != outcome.stars.end() ? it->second : vertex_star(grid_q_, p);
      for (const Point& q : star) {
        switch (grid_q_.at(q)) {
          case 1: {
            int axis = 0;
            for (int a = 0; a < 3; ++a) {
              if (q[a] != p[a]) axis = a;
            }
            edge_block(q, axis);
            break;
          }
          case 2: square_block(q); break;
          case 3: cube_block(q); break;
          default: throw InvariantError("star point without a cell at " + key_string(q));
        }
      }
    }
  }

  std::map<Point, Cell>& cells() { return cells_; }

 private:
  const GrayscaleGrid& grid_q_;
  std::unordered_set<Point, PointHash> critical_;
  std::map<Point, Cell> cells_;
};

std::unordered_map<Point, std::vector<Point>, PointHash> cofaces_within(const PolyComplex& k) { return k.coface_map(); }

LinkGraph link_graph_impl(const PolyComplex& boundary,
                          const std::unordered_map<Point, std::vector<Point>, PointHash>& cofaces,
                          const Point& vertex) {
  LinkGraph g;
  auto it = cofaces.find(vertex);
  if (it == cofaces.end()) return g;
  for (const Point& e : it->second) {
    if (boundary.at(e).dim == 1) g.nodes.push_back(e);
  }
  std::sort(g.nodes.begin(), g.nodes.end());
  std::map<Point, std::vector<std::size_t>> by_face;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    auto fit = cofaces.find(g.nodes[i]);
    if (fit == cofaces.end()) continue;
    for (const Point& f : fit->second) by_face[f].push_back(i);
  }
  std::set<std::pair<std::size_t, std::size_t>> arcs;
  for (const auto& [f, idx] : by_face) {
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) arcs.emplace(std::min(idx[a], idx[b]), std::max(idx[a], idx[b]));
    }
  }
  g.arcs.assign(arcs.begin(), arcs.end());
  return g;
}

}  // namespace

const Cell& PolyComplex::at(const Point& key) const {
  auto it = cells_.find(key);
  if (it == cells_.end()) throw std::out_of_range("no cell at key " + key_string(key));
  return it->second;
}

const Cell* PolyComplex::find(const Point& key) const {
  auto it = cells_.find(key);
  return it == cells_.end() ? nullptr : &it->second;
}

void PolyComplex::put(Cell cell) {
  std::sort(cell.facets.begin(), cell.facets.end());
  const Point key = cell.key;
  cells_.insert_or_assign(key, std::move(cell));
}

std::array<std::size_t, 4> PolyComplex::counts() const {
  std::array<std::size_t, 4> c{};
  for (const auto& [key, cell] : cells_) ++c[cell.dim];
  return c;
}

std::vector<Point> PolyComplex::keys_of_dim(int dim) const {
  std::vector<Point> keys;
  for (const auto& [key, cell] : cells_) {
    if (cell.dim == dim) keys.push_back(key);
  }
  return keys;
}

std::unordered_map<Point, std::vector<Point>, PointHash> PolyComplex::coface_map() const {
  std::unordered_map<Point, std::vector<Point>, PointHash> up;
  up.reserve(cells_.size());
  for (const auto& [key, cell] : cells_) {
    for (const Point& f : cell.facets) up[f].push_back(key);
  }
  return up;
}

void PolyComplex::order_cycles() {
  for (auto& [key, cell] : cells_) {
    if (cell.dim == 2) cell.cycle = ordered_cycle(*this, cell);
  }
}

std::vector<std::string> validate(const PolyComplex& k) {
  std::vector<std::string> problems;
  for (const auto& [key, cell] : k.cells()) {
    for (const Point& f : cell.facets) {
      const Cell* c = k.find(f);
      if (c == nullptr) {
        problems.push_back("dangling facet " + key_string(f) + " of " + key_string(key));
      } else if (c->dim != cell.dim - 1) {
        problems.push_back("facet " + key_string(f) + " of " + key_string(key) + " has wrong dimension");
      }
    }
    if (cell.dim > 0 && cell.facets.size() < static_cast<std::size_t>(cell.dim + 1)) {
      problems.push_back("too few facets at " + key_string(key));
    }
    if (cell.dim == 2) {
      std::set<Point> reach;
      for (const Point& e : cell.facets) {
        if (const Cell* c = k.find(e)) reach.insert(c->facets.begin(), c->facets.end());
      }
      const std::set<Point> on_cycle(cell.cycle.begin(), cell.cycle.end());
      if (cell.cycle.size() < 3 || on_cycle != reach || on_cycle.size() != cell.cycle.size()) {
        problems.push_back("bad vertex cycle at " + key_string(key));
      }
    }
  }
  // Completeness: every cell reaches a 3-cell through its cofaces.
  if (!k.empty()) {
    const auto up = k.coface_map();
    std::unordered_set<Point, PointHash> covered;
    for (int d = 3; d >= 0; --d) {
      for (const auto& [key, cell] : k.cells()) {
        if (cell.dim != d) continue;
        bool ok = d == 3;
        if (!ok) {
          auto it = up.find(key);
          if (it != up.end()) {
            ok = std::any_of(it->second.begin(), it->second.end(), [&](const Point& c) { return covered.contains(c); });
          }
        }
        if (ok) {
          covered.insert(key);
        } else {
          problems.push_back("cell " + key_string(key) + " is not a face of any 3-cell");
        }
      }
    }
  }
  return problems;
}

std::string dump_complex(const PolyComplex& k) {
  std::ostringstream os;
  for (int d = 0; d <= 3; ++d) {
    for (const auto& [key, cell] : k.cells()) {
      if (cell.dim != d) continue;
      os << d << ' ' << key_string(key);
      for (const Point& f : cell.facets) os << ' ' << key_string(f);
      os << '\n';
    }
  }
  return os.str();
}

PolyComplex build_q_complex(const GrayscaleGrid& grid_q) {
  PolyComplex k;
  for (const Point& p : grid_q.cell_points()) {
    const int dim = grid_q.at(p);
    Cell cell{p, dim, {}, {}};
    if (dim >= 1) cell.facets = faces_of(grid_q, p, q_face_elements());
    k.put(std::move(cell));
  }
  k.order_cycles();
  return k;
}

PolyComplex build_p_complex(const GrayscaleGrid& grid_q, const RepairOutcome& outcome) {
  PolyComplex p = build_q_complex(grid_q);
  if (outcome.critical.empty()) return p;
  PBuilder builder(grid_q, outcome.critical);
  builder.run(outcome);
  for (auto& [key, cell] : builder.cells()) p.put(std::move(cell));
  for (const auto& [key, cell] : p.cells()) {
    for (const Point& f : cell.facets) {
      const Cell* c = p.find(f);
      if (c == nullptr || c->dim != cell.dim - 1) {
        throw InvariantError("dangling facet " + key_string(f) + " of cell " + key_string(key));
      }
    }
  }
  p.order_cycles();
  return p;
}

std::vector<Point> grid_mismatches(const PolyComplex& k, const GrayscaleGrid& g) {
  std::vector<Point> bad;
  for (const auto& [key, cell] : k.cells()) {
    if (g.at(key) != cell.dim) bad.push_back(key);
  }
  for (const Point& p : g.cell_points()) {
    if (!k.contains(p)) bad.push_back(p);
  }
  std::sort(bad.begin(), bad.end());
  bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
  return bad;
}

PolyComplex boundary_subcomplex(const PolyComplex& k) {
  PolyComplex b;
  const auto up = k.coface_map();
  std::vector<Point> stack;
  for (const auto& [key, cell] : k.cells()) {
    if (cell.dim != 2) continue;
    auto it = up.find(key);
    const std::size_t n = it == up.end() ? 0 : it->second.size();
    if (n == 1) stack.push_back(key);
  }
  while (!stack.empty()) {
    const Point key = stack.back();
    stack.pop_back();
    if (b.contains(key)) continue;
    const Cell& cell = k.at(key);
    b.put(cell);
    for (const Point& f : cell.facets) stack.push_back(f);
  }
  return b;
}

std::size_t LinkGraph::components() const {
  std::vector<std::size_t> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t count = nodes.size();
  for (const auto& [a, b] : arcs) {
    const std::size_t ra = root(a);
    const std::size_t rb = root(b);
    if (ra != rb) {
      parent[ra] = rb;
      --count;
    }
  }
  return count;
}

LinkGraph link_graph_in_boundary(const PolyComplex& boundary, const Point& vertex) {
  return link_graph_impl(boundary, boundary.coface_map(), vertex);
}

LinkGraph link_graph(const PolyComplex& k, const Point& vertex) {
  k.at(vertex);
  return link_graph_in_boundary(boundary_subcomplex(k), vertex);
}

WellComposedReport check_well_composed(const PolyComplex& k) {
  WellComposedReport report;
  const PolyComplex b = boundary_subcomplex(k);
  const auto up = cofaces_within(b);
  for (const auto& [key, cell] : b.cells()) {
    if (cell.dim == 1) {
      auto it = up.find(key);
      const int n = it == up.end() ? 0 : static_cast<int>(it->second.size());
      if (n != 2) report.e1_violations.emplace_back(key, n);
    } else if (cell.dim == 0) {
      if (link_graph_impl(b, up, key).components() != 1) report.e2_violations.push_back(key);
    }
  }
  report.is_well_composed = report.e1_violations.empty() && report.e2_violations.empty();
  return report;
}

std::vector<Point> star(const PolyComplex& k, const std::vector<Point>& keys) {
  for (const Point& key : keys) k.at(key);
  const auto up = k.coface_map();
  std::set<Point> result;
  std::vector<Point> stack;
  for (const Point& key : keys) {
    auto it = up.find(key);
    if (it != up.end()) stack.insert(stack.end(), it->second.begin(), it->second.end());
  }
  while (!stack.empty()) {
    const Point key = stack.back();
    stack.pop_back();
    if (!result.insert(key).second) continue;
    auto it = up.find(key);
    if (it != up.end()) stack.insert(stack.end(), it->second.begin(), it->second.end());
  }
  return {result.begin(), result.end()};
}

std::vector<StructuringElement> derive_bp(const GrayscaleGrid& g, const PolyComplex& k, const BpOptions& options) {
  using ClassKey = std::pair<int, std::vector<Point>>;
  std::map<ClassKey, std::vector<Point>> classes;
  std::map<int, std::vector<Point>> by_dim;
  for (const auto& [key, cell] : k.cells()) {
    if (cell.dim < 1) continue;
    std::vector<Point> offs;
    for (const Point& f : cell.facets) offs.push_back(f - key);
    std::sort(offs.begin(), offs.end());
    classes[{cell.dim, std::move(offs)}].push_back(key);
    by_dim[cell.dim].push_back(key);
  }

  // Guard candidates: nearest shells first, then by norm and offset.
  const int radius = std::max(options.max_radius, 2);
  std::vector<Point> box;
  for (const Point& o : neighborhood_offsets({NeighborhoodKind::Box, radius})) {
    if (o != Point{}) box.push_back(o);
  }
  auto cheb = [](const Point& o) { return std::max({std::abs(o.x), std::abs(o.y), std::abs(o.z)}); };
  std::stable_sort(box.begin(), box.end(), [&](const Point& a, const Point& b) {
    const int ra = std::max(cheb(a), 2);
    const int rb = std::max(cheb(b), 2);
    if (ra != rb) return ra < rb;
    const int na = squared_norm(a);
    const int nb = squared_norm(b);
    return na != nb ? na < nb : a < b;
  });

  std::vector<Point> near;
  for (const Point& o : box) {
    if (cheb(o) <= 2) near.push_back(o);
  }

  std::vector<StructuringElement> elements;
  for (const auto& [ck, members] : classes) {
    const auto& [dim, offs] = ck;
    const std::set<Point> facet_set(offs.begin(), offs.end());
    const auto fits_at = [&](const std::vector<Point>& guards, const Point& x) {
      return std::all_of(guards.begin(), guards.end(), [&](const Point& o) { return g.at(x + o) == kNoCell; });
    };

    // Foreign cells of the same dimension matching the facet entries.
    std::vector<Point> foreign;
    for (const Point& x : by_dim.at(dim)) {
      if (std::binary_search(members.begin(), members.end(), x)) continue;
      if (std::all_of(offs.begin(), offs.end(), [&](const Point& o) { return g.at(x + o) == dim - 1; })) {
        foreign.push_back(x);
      }
    }

    // Crowded members seed groups first; their guards tend to fit the
    // sparser members too.
    std::vector<std::pair<std::size_t, Point>> order;
    for (const Point& m : members) {
      std::size_t empty = 0;
      for (const Point& o : near) {
        if (!facet_set.contains(o) && g.at(m + o) == kNoCell) ++empty;
      }
      order.emplace_back(empty, m);
    }
    std::sort(order.begin(), order.end());

    // Greedy guard choice for a group; returns the first cell left
    // unseparated, if any.
    const auto choose_guards = [&](const std::vector<Point>& group, const std::vector<Point>& avoid,
                                   std::vector<Point>& guards) -> std::optional<Point> {
      guards.clear();
      // Candidate validity is decided lazily: most scans stop early.
      std::vector<std::int8_t> valid(box.size(), -1);
      const auto usable = [&](std::size_t i) {
        if (valid[i] < 0) {
          const Point& o = box[i];
          valid[i] = !facet_set.contains(o) &&
                     std::all_of(group.begin(), group.end(), [&](const Point& m) { return g.at(m + o) == kNoCell; });
        }
        return valid[i] == 1;
      };
      // First candidate separating each avoided cell; picking the smallest
      // index repeatedly equals scanning candidates in order.
      std::vector<std::pair<std::size_t, Point>> first;
      std::vector<Point> remaining;
      for (const Point& x : avoid) {
        std::size_t i = 0;
        while (i < box.size() && (g.at(x + box[i]) == kNoCell || !usable(i))) ++i;
        if (i == box.size()) {
          remaining.push_back(x);
        } else {
          first.emplace_back(i, x);
        }
      }
      std::sort(first.begin(), first.end());
      std::vector<bool> done(first.size());
      for (std::size_t j = 0; j < first.size(); ++j) {
        if (done[j]) continue;
        const Point o = box[first[j].first];
        guards.push_back(o);
        for (std::size_t l = j; l < first.size(); ++l) {
          if (!done[l] && g.at(first[l].second + o) != kNoCell) done[l] = true;
        }
      }
      if (!remaining.empty()) return remaining.front();
      for (std::size_t i = guards.size(); i-- > 0;) {
        std::vector<Point> trial = guards;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (std::none_of(avoid.begin(), avoid.end(), [&](const Point& x) { return fits_at(trial, x); })) {
          guards = std::move(trial);
        }
      }
      return std::nullopt;
    };

    struct Group {
      std::vector<Point> members;
      std::vector<Point> guards;
    };
    std::vector<Group> groups;
    std::map<Point, std::size_t> owner;
    for (const auto& [unused, seed] : order) {
      if (owner.contains(seed)) continue;
      Group group{{seed}, {}};
      std::set<std::size_t> absorbed;
      std::vector<Point> avoid = foreign;
      for (;;) {
        const std::optional<Point> stuck = choose_guards(group.members, avoid, group.guards);
        if (stuck) {
          // A member of another group reads -1 wherever this group does:
          // the two groups have to share one element.
          auto it = owner.find(*stuck);
          if (it == owner.end() || absorbed.contains(it->second)) {
            throw AmbiguityUnresolvable("cannot separate cell " + key_string(seed) + " from cell " + key_string(*stuck));
          }
          absorbed.insert(it->second);
          const auto& other = groups[it->second].members;
          group.members.insert(group.members.end(), other.begin(), other.end());
          avoid.erase(std::remove_if(avoid.begin(), avoid.end(),
                                     [&](const Point& x) {
                                       auto o = owner.find(x);
                                       return o != owner.end() && absorbed.contains(o->second);
                                     }),
                      avoid.end());
          continue;
        }
        // Members of other groups are only avoided once they collide.
        std::size_t added = 0;
        for (const auto& [m, gi] : owner) {
          if (!absorbed.contains(gi) && fits_at(group.guards, m)) {
            avoid.push_back(m);
            ++added;
          }
        }
        if (added == 0) break;
      }
      const std::size_t index = absorbed.empty() ? groups.size() : *absorbed.begin();
      for (std::size_t gi : absorbed) {
        if (gi != index) groups[gi] = Group{};
      }
      for (const Point& m : members) {
        if (!owner.contains(m) && fits_at(group.guards, m)) group.members.push_back(m);
      }
      std::sort(group.members.begin(), group.members.end());
      group.members.erase(std::unique(group.members.begin(), group.members.end()), group.members.end());
      for (const Point& m : group.members) owner[m] = index;
      if (index == groups.size()) {
        groups.push_back(std::move(group));
      } else {
        groups[index] = std::move(group);
      }
    }

    for (const Group& group : groups) {
      if (group.members.empty()) continue;
      std::vector<StructuringElement::Entry> entries{{Point{}, static_cast<Color>(dim)}};
      for (const Point& o : offs) entries.emplace_back(o, static_cast<Color>(dim - 1));
      for (const Point& o : group.guards) entries.emplace_back(o, kNoCell);
      elements.emplace_back(std::move(entries));
    }
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return elements;
}

int guard_radius(const std::vector<StructuringElement>& elements) {
  int r = 0;
  for (const StructuringElement& se : elements) {
    for (const auto& [o, v] : se.entries()) r = std::max({r, std::abs(o.x), std::abs(o.y), std::abs(o.z)});
  }
  return r;
}

BpValidation validate_bp(const GrayscaleGrid& g, const PolyComplex& k, const std::vector<StructuringElement>& bp) {
  BpValidation v;
  // Element origins are >= 1, so nothing can fit at a vertex or an empty
  // point; only cells of dimension >= 1 need checking.
  for (const auto& [key, cell] : k.cells()) {
    if (cell.dim < 1) continue;
    ++v.cells_checked;
    const StructuringElement* hit = nullptr;
    int count = 0;
    for (const StructuringElement& se : bp) {
      if (fits(g, key, se)) {
        hit = &se;
        ++count;
      }
    }
    bool ok = count == 1;
    if (ok) {
      std::vector<Point> facets;
      for (const Point& o : hit->face_offsets()) facets.push_back(key + o);
      std::sort(facets.begin(), facets.end());
      ok = facets == cell.facets;
    }
    if (!ok) v.failures.push_back(key);
  }
  return v;
}

std::vector<Point> faces_via_bp(const GrayscaleGrid& g, const std::vector<StructuringElement>& bp, const Point& key) {
  std::vector<Point> f = faces_of(g, key, bp);
  std::sort(f.begin(), f.end());
  return f;
}

HexahedronShape hexahedron_shape(std::uint8_t marking) {
  auto marked = [&](const Point& corner) {
    const Point d{corner.x / 2, corner.y / 2, corner.z / 2};
    return ((marking >> octant_bit(d)) & 1) != 0;
  };
  HexahedronShape shape;
  for (int a = 0; a < 3; ++a) {
    for (int sg : {-1, 1}) {
      const Point f = unit(a, sg);
      bool replaced = false;
      for (int t1 : {-1, 1}) {
        for (int t2 : {-1, 1}) replaced |= marked(2 * f + 2 * unit((a + 1) % 3, t1) + 2 * unit((a + 2) % 3, t2));
      }
      shape.facets.push_back(replaced ? f : 2 * f);
    }
  }
  for (int bit = 0; bit < 8; ++bit) {
    const Point d = octant_direction(bit);
    shape.vertices.push_back(((marking >> bit) & 1) ? d : 2 * d);
  }
  std::sort(shape.facets.begin(), shape.facets.end());
  std::sort(shape.vertices.begin(), shape.vertices.end());
  return shape;
}

}  // namespace ecm
