#include "ecm/grid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "ecm/errors.hpp"

namespace ecm {

GrayscaleGrid::GrayscaleGrid() : GrayscaleGrid({0, 0, 0}, {1, 1, 1}) {}

GrayscaleGrid::GrayscaleGrid(Point origin, Point extent) : origin_(origin), extent_(extent) {
  if (extent.x <= 0 || extent.y <= 0 || extent.z <= 0) {
    throw std::invalid_argument("grid extent must be positive");
  }
  values_.assign(static_cast<std::size_t>(extent.x) * extent.y * extent.z, kNoCell);
}

void GrayscaleGrid::set(const Point& p, int value) {
  if (!in_bounds(p)) {
    std::ostringstream os;
    os << "grid write outside bounds at " << p;
    throw std::out_of_range(os.str());
  }
  if (value < -1 || value > 3) throw std::invalid_argument("grid value out of range");
  values_[index(p)] = static_cast<Color>(value);
}

Point GrayscaleGrid::point(std::size_t i) const noexcept {
  const auto nx = static_cast<std::size_t>(extent_.x);
  const auto ny = static_cast<std::size_t>(extent_.y);
  return {origin_.x + static_cast<int>(i % nx), origin_.y + static_cast<int>((i / nx) % ny),
          origin_.z + static_cast<int>(i / (nx * ny))};
}

std::vector<Point> GrayscaleGrid::cell_points() const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] >= 0) out.push_back(point(i));
  }
  return out;
}

std::array<std::size_t, 4> GrayscaleGrid::cell_counts() const {
  std::array<std::size_t, 4> counts{};
  for (Color c : values_) {
    if (c >= 0) ++counts[static_cast<std::size_t>(c)];
  }
  return counts;
}

// ---------------------------------------------------------------------------

StructuringElement::StructuringElement(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].first == entries_[i - 1].first) {
      throw std::invalid_argument("structuring element has a repeated offset");
    }
  }
  bool has_origin = false;
  for (const auto& [off, v] : entries_) {
    if (v < -1 || v > 3) throw std::invalid_argument("structuring element value out of range");
    if (off == Point{}) has_origin = true;
  }
  if (!has_origin) throw std::invalid_argument("structuring element must contain the origin");
}

Color StructuringElement::origin_value() const {
  const auto v = value_at({});
  return v ? *v : kNoCell;
}

std::optional<Color> StructuringElement::value_at(const Point& offset) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), offset,
                                   [](const Entry& e, const Point& o) { return e.first < o; });
  if (it == entries_.end() || it->first != offset) return std::nullopt;
  return it->second;
}

std::vector<Point> StructuringElement::face_offsets() const {
  const Color face = static_cast<Color>(origin_value() - 1);
  std::vector<Point> out;
  for (const auto& [off, v] : entries_) {
    if (off != Point{} && v == face) out.push_back(off);
  }
  return out;
}

std::string to_string(const StructuringElement& se) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [off, v] : se.entries()) {
    if (!first) os << ", ";
    first = false;
    os << off << ':' << static_cast<int>(v);
  }
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<Point> neighborhood_offsets(Neighborhood n) {
  if (n.radius < 1) throw std::invalid_argument("neighborhood radius must be >= 1");
  const int l = n.radius;
  std::vector<Point> out;
  for (int x = -l; x <= l; ++x) {
    for (int y = -l; y <= l; ++y) {
      for (int z = -l; z <= l; ++z) {
        const Point p{x, y, z};
        int at_l = 0, zero = 0;
        for (int a = 0; a < 3; ++a) {
          if (std::abs(p[a]) == l) ++at_l;
          if (p[a] == 0) ++zero;
        }
        bool keep = false;
        switch (n.kind) {
          case NeighborhoodKind::N6: keep = at_l == 1 && zero == 2; break;
          case NeighborhoodKind::N12: keep = at_l == 2 && zero == 1; break;
          case NeighborhoodKind::N8: keep = at_l == 3; break;
          case NeighborhoodKind::Shell: keep = at_l >= 1; break;
          case NeighborhoodKind::Box: keep = true; break;
        }
        if (keep) out.push_back(p);
      }
    }
  }
  return out;
}

std::vector<Point> neighborhood(Neighborhood n, const Point& center) {
  std::vector<Point> out = neighborhood_offsets(n);
  for (Point& p : out) p += center;
  return out;
}

int residue_class(const Point& p) {
  int nonzero = 0;
  for (int a = 0; a < 3; ++a) {
    if (floor_mod(p[a], 4) != 0) ++nonzero;
  }
  return 3 - nonzero;
}

// ---------------------------------------------------------------------------

GrayscaleGrid build_q_grid(const BinaryImage& image) {
  if (image.empty()) return GrayscaleGrid();
  const BoundingBox& box = *image.bbox();
  const Point origin = 4 * box.min - Point{3, 3, 3};
  const Point extent = 4 * (box.max - box.min) + Point{7, 7, 7};
  GrayscaleGrid grid(origin, extent);
  auto values = grid.mutable_values();
  for (const Point& v : image.foreground()) {
    const Point c = 4 * v;
    for (int dz = -2; dz <= 2; dz += 2) {
      for (int dy = -2; dy <= 2; dy += 2) {
        for (int dx = -2; dx <= 2; dx += 2) {
          // Dimension of the closure cell = number of zero offsets.
          const int dim = (dx == 0) + (dy == 0) + (dz == 0);
          values[grid.index(c + Point{dx, dy, dz})] = static_cast<Color>(dim);
        }
      }
    }
  }
  return grid;
}

bool fits(const GrayscaleGrid& grid, const Point& p, const StructuringElement& se) {
  for (const auto& [off, v] : se.entries()) {
    if (grid.at(p + off) != v) return false;
  }
  return true;
}

namespace {

std::vector<StructuringElement> make_q_elements() {
  std::vector<StructuringElement> out;
  // b1: edge along `axis`, endpoints at +-2 on the axis, guards at +-1.
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<StructuringElement::Entry> e{{Point{}, 1}};
    for (int s : {-1, 1}) {
      e.push_back({unit(axis, 2 * s), 0});
      e.push_back({unit(axis, s), -1});
    }
    out.emplace_back(std::move(e));
  }
  // b2: square with normal `axis`; edges at +-2 along the two in-plane axes.
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<StructuringElement::Entry> e{{Point{}, 2}};
    for (int other = 0; other < 3; ++other) {
      if (other == axis) continue;
      for (int s : {-1, 1}) {
        e.push_back({unit(other, 2 * s), 1});
        e.push_back({unit(other, s), -1});
      }
    }
    out.emplace_back(std::move(e));
  }
  std::vector<StructuringElement::Entry> cube{{Point{}, 3}};
  for (int axis = 0; axis < 3; ++axis) {
    for (int s : {-1, 1}) {
      cube.push_back({unit(axis, 2 * s), 2});
      cube.push_back({unit(axis, s), -1});
    }
  }
  out.emplace_back(std::move(cube));
  return out;
}

std::vector<StructuringElement> make_coface_elements() {
  std::vector<StructuringElement> out;
  for (int x = -1; x <= 1; ++x) {
    for (int y = -1; y <= 1; ++y) {
      for (int z = -1; z <= 1; ++z) {
        const Point u{x, y, z};
        if (u == Point{}) continue;
        const int dim = std::abs(x) + std::abs(y) + std::abs(z);
        out.emplace_back(std::vector<StructuringElement::Entry>{{Point{}, 0}, {u, -1}, {2 * u, static_cast<Color>(dim)}});
      }
    }
  }
  return out;
}

}  // namespace

const std::vector<StructuringElement>& q_face_elements() {
  static const std::vector<StructuringElement> elements = make_q_elements();
  return elements;
}

const StructuringElement& q_edge_element(int axis) { return q_face_elements().at(static_cast<std::size_t>(axis)); }
const StructuringElement& q_square_element(int normal_axis) {
  return q_face_elements().at(3 + static_cast<std::size_t>(normal_axis));
}
const StructuringElement& q_cube_element() { return q_face_elements().at(6); }

std::vector<Point> faces_of(const GrayscaleGrid& grid, const Point& p, std::span<const StructuringElement> elements) {
  const Color dim = grid.at(p);
  if (dim < 1) {
    std::ostringstream os;
    os << "faces_of: point " << p << " has color " << int(dim) << ", expected a cell of dimension >= 1";
    throw std::invalid_argument(os.str());
  }
  const StructuringElement* match = nullptr;
  for (const StructuringElement& se : elements) {
    if (se.origin_value() != dim || !fits(grid, p, se)) continue;
    if (match != nullptr) {
      std::ostringstream os;
      os << "ambiguous fit at " << p << ": " << to_string(*match) << " and " << to_string(se);
      throw AmbiguousFit(os.str());
    }
    match = &se;
  }
  if (match == nullptr) {
    std::ostringstream os;
    os << "no structuring element fits at " << p << " (color " << int(dim) << ")";
    throw NoElementFits(os.str());
  }
  std::vector<Point> faces = match->face_offsets();
  for (Point& f : faces) f += p;
  return faces;
}

const std::vector<StructuringElement>& vertex_coface_elements() {
  static const std::vector<StructuringElement> elements = make_coface_elements();
  return elements;
}

std::vector<Coface> cofaces_of_vertex(const GrayscaleGrid& grid, const Point& p) {
  if (grid.at(p) != 0) throw std::invalid_argument("cofaces_of_vertex: point is not a vertex");
  std::vector<Coface> out;
  for (const StructuringElement& se : vertex_coface_elements()) {
    if (!fits(grid, p, se)) continue;
    for (const auto& [off, v] : se.entries()) {
      if (v > 0) out.push_back({p + off, v});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

std::string dump_grid(const GrayscaleGrid& grid) {
  std::string out;
  const Point& o = grid.origin();
  const Point& n = grid.extent();
  out += "ecmgrid " + std::to_string(o.x) + ' ' + std::to_string(o.y) + ' ' + std::to_string(o.z) + ' ' +
         std::to_string(n.x) + ' ' + std::to_string(n.y) + ' ' + std::to_string(n.z) + '\n';
  const auto values = grid.values();
  out.reserve(out.size() + values.size() * 3);
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += std::to_string(static_cast<int>(values[i]));
    out += ((i + 1) % static_cast<std::size_t>(n.x) == 0) ? '\n' : ' ';
  }
  return out;
}

GrayscaleGrid load_grid(std::string_view text) {
  std::size_t pos = 0;
  auto next = [&]() -> std::pair<std::string_view, std::size_t> {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    return {text.substr(start, pos - start), start};
  };
  auto to_int = [](std::string_view s, int& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return !s.empty() && ec == std::errc{} && ptr == s.data() + s.size();
  };

  const auto [magic, magic_at] = next();
  if (magic != "ecmgrid") throw ParseError("malformed header: expected 'ecmgrid'", magic_at);
  int h[6];
  for (int i = 0; i < 6; ++i) {
    const auto [tok, at] = next();
    if (!to_int(tok, h[i])) throw ParseError("malformed header: expected integer", at);
    if (i >= 3 && h[i] <= 0) throw ParseError("malformed header: extent must be positive", at);
  }
  GrayscaleGrid grid({h[0], h[1], h[2]}, {h[3], h[4], h[5]});
  auto values = grid.mutable_values();
  std::size_t count = 0;
  while (true) {
    const auto [tok, at] = next();
    if (tok.empty()) break;
    int v = 0;
    if (!to_int(tok, v) || v < -1 || v > 3) {
      throw ParseError("value out of range '" + std::string(tok) + "'", at);
    }
    if (count >= values.size()) throw ParseError("count mismatch: too many values", at);
    values[count++] = static_cast<Color>(v);
  }
  if (count != values.size()) {
    throw ParseError("count mismatch: expected " + std::to_string(values.size()) + ", got " + std::to_string(count),
                     pos);
  }
  return grid;
}

}  // namespace ecm
