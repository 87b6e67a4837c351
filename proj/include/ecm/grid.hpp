#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ecm/image_io.hpp"
#include "ecm/point.hpp"

namespace ecm {

/// Cell dimension stored at a grid point; -1 means "no cell".
using Color = std::int8_t;
inline constexpr Color kNoCell = -1;

/// Bounded 3D grayscale field over Z^3 with values in {-1,0,1,2,3}.
/// Every grid point with a value >= 0 represents exactly one cell (the
/// point is the cell's key); reads outside the stored box return -1.
class GrayscaleGrid {
 public:
  GrayscaleGrid();
  GrayscaleGrid(Point origin, Point extent);

  const Point& origin() const noexcept { return origin_; }
  const Point& extent() const noexcept { return extent_; }
  std::size_t volume() const noexcept { return values_.size(); }

  bool in_bounds(const Point& p) const noexcept {
    return p.x >= origin_.x && p.y >= origin_.y && p.z >= origin_.z && p.x < origin_.x + extent_.x &&
           p.y < origin_.y + extent_.y && p.z < origin_.z + extent_.z;
  }

  Color at(const Point& p) const noexcept { return in_bounds(p) ? values_[index(p)] : kNoCell; }
  Color operator()(const Point& p) const noexcept { return at(p); }

  /// Throws std::out_of_range outside the box and std::invalid_argument for
  /// values outside {-1..3}.
  void set(const Point& p, int value);

  std::size_t index(const Point& p) const noexcept {
    return static_cast<std::size_t>(p.x - origin_.x) +
           static_cast<std::size_t>(extent_.x) *
               (static_cast<std::size_t>(p.y - origin_.y) +
                static_cast<std::size_t>(extent_.y) * static_cast<std::size_t>(p.z - origin_.z));
  }
  Point point(std::size_t index) const noexcept;

  std::span<const Color> values() const noexcept { return values_; }
  std::span<Color> mutable_values() noexcept { return values_; }

  /// All points carrying a cell, in storage order (z slowest).
  std::vector<Point> cell_points() const;
  /// Number of cells per dimension 0..3.
  std::array<std::size_t, 4> cell_counts() const;

  friend bool operator==(const GrayscaleGrid&, const GrayscaleGrid&) = default;

 private:
  Point origin_;
  Point extent_;
  std::vector<Color> values_;
};

/// Sparse offset -> value map containing the origin.
class StructuringElement {
 public:
  using Entry = std::pair<Point, Color>;

  StructuringElement() = default;
  /// Throws std::invalid_argument if the origin is missing, an offset
  /// repeats or a value is outside {-1..3}.
  explicit StructuringElement(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  Color origin_value() const;
  std::size_t size() const noexcept { return entries_.size(); }
  /// Offsets whose value is origin_value() - 1 (the facet offsets).
  std::vector<Point> face_offsets() const;
  std::optional<Color> value_at(const Point& offset) const;

  friend auto operator<=>(const StructuringElement&, const StructuringElement&) = default;
  friend bool operator==(const StructuringElement&, const StructuringElement&) = default;

 private:
  std::vector<Entry> entries_;  // sorted by offset
};

std::string to_string(const StructuringElement& se);

enum class NeighborhoodKind { N6, N12, N8, Shell, Box };

struct Neighborhood {
  NeighborhoodKind kind;
  int radius = 1;
};

/// Offsets of a neighborhood (not translated), sorted lexicographically.
std::vector<Point> neighborhood_offsets(Neighborhood n);
/// neighborhood_offsets translated to `center`.
std::vector<Point> neighborhood(Neighborhood n, const Point& center);

/// Residue-class dimension: 3 minus the number of coordinates whose value
/// mod 4 is nonzero. Every cell point of E_Q of dimension d lies in class d,
/// and every repair write at a point of class d is triggered by a cell of
/// dimension d within Chebyshev distance 1.
int residue_class(const Point& p);

/// Cubical complex of the image as a grid: 3 at 4*voxel, 2/1/0 at the
/// x4 barycenters of squares/edges/vertices. Bounds = bbox x4 padded by 3.
GrayscaleGrid build_q_grid(const BinaryImage& image);

bool fits(const GrayscaleGrid& grid, const Point& p, const StructuringElement& se);

/// The seven face elements of E_Q: b1 per edge axis, b2 per square normal,
/// and b3.
const std::vector<StructuringElement>& q_face_elements();
/// Axis-named accessors used in tests: edge along `axis`, square with
/// normal `axis`.
const StructuringElement& q_edge_element(int axis);
const StructuringElement& q_square_element(int normal_axis);
const StructuringElement& q_cube_element();

/// Points p+q where the unique element fitting at p has value grid(p)-1.
/// Throws std::invalid_argument when grid(p) < 1, NoElementFits or
/// AmbiguousFit when the element set is inconsistent with the grid.
std::vector<Point> faces_of(const GrayscaleGrid& grid, const Point& p, std::span<const StructuringElement> elements);

/// The 26 coface elements (origin 0, -1 at u, dim at 2u) for all rotations.
const std::vector<StructuringElement>& vertex_coface_elements();

struct Coface {
  Point key;
  int dim;
  friend auto operator<=>(const Coface&, const Coface&) = default;
};

/// Cofaces of the vertex at p found by matching vertex_coface_elements().
/// Requires grid(p) == 0.
std::vector<Coface> cofaces_of_vertex(const GrayscaleGrid& grid, const Point& p);

/// `ecmgrid ox oy oz nx ny nz` then nx*ny*nz integers, x fastest.
std::string dump_grid(const GrayscaleGrid& grid);
GrayscaleGrid load_grid(std::string_view text);

}  // namespace ecm
