#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ecm/grid.hpp"

namespace ecm {

/// Octant bit for corner direction d in {-1,+1}^3:
/// (d.x > 0) + 2*(d.y > 0) + 4*(d.z > 0).
constexpr int octant_bit(const Point& d) { return (d.x > 0) + 2 * (d.y > 0) + 4 * (d.z > 0); }
constexpr Point octant_direction(int bit) {
  return {(bit & 1) ? 1 : -1, (bit & 2) ? 1 : -1, (bit & 4) ? 1 : -1};
}

/// 2x2x2 occupancy pattern -> "central vertex is critical".
class CriticalityTable {
 public:
  CriticalityTable() = default;
  explicit CriticalityTable(std::array<bool, 256> entries) : entries_(entries) {}

  bool operator[](std::uint8_t pattern) const noexcept { return entries_[pattern]; }
  std::size_t critical_count() const;
  /// 256 chars '0'/'1' followed by a newline.
  std::string dump() const;

  friend bool operator==(const CriticalityTable&, const CriticalityTable&) = default;

 private:
  std::array<bool, 256> entries_{};
};

/// Signed coordinate permutation: (M p)[i] = sign[i] * p[perm[i]].
struct Symmetry {
  std::array<int, 3> perm{0, 1, 2};
  std::array<int, 3> sign{1, 1, 1};

  Point apply(const Point& p) const { return {sign[0] * p[perm[0]], sign[1] * p[perm[1]], sign[2] * p[perm[2]]}; }
  std::uint8_t apply(std::uint8_t pattern) const;
  /// (a * b)(p) = a(b(p)).
  friend Symmetry compose(const Symmetry& a, const Symmetry& b);
  friend auto operator<=>(const Symmetry&, const Symmetry&) = default;
};

/// The 48 signed permutations of Z^3.
class SymmetryGroup {
 public:
  SymmetryGroup();
  const std::vector<Symmetry>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  /// Smallest pattern in the orbit of `pattern`.
  std::uint8_t canonical(std::uint8_t pattern) const;

 private:
  std::vector<Symmetry> elements_;
};

const SymmetryGroup& cube_symmetries();

/// Central-vertex criticality for one occupancy pattern, decided on the
/// explicit local cubical complex (E1 on incident boundary edges, E2 on the
/// link graph of boundary edges around the vertex).
bool pattern_is_critical(std::uint8_t pattern);

CriticalityTable build_criticality_table();

/// One element per critical pattern: origin 0, -1 at (+-1,+-1,+-1),
/// and 3 / -1 at the corners (+-2,+-2,+-2) by octant occupancy.
std::vector<StructuringElement> critical_elements(const CriticalityTable& table);
StructuringElement pattern_element(std::uint8_t pattern);

/// Occupancy of the 8 cubes around the vertex point p (corner reads of 3).
std::uint8_t vertex_pattern(const GrayscaleGrid& grid, const Point& p);

/// Sorted list of vertex points of an E_Q grid whose pattern is critical.
/// `threads` = 0 means hardware concurrency.
std::vector<Point> detect_critical(const GrayscaleGrid& grid, const CriticalityTable& table, unsigned threads = 1);
/// Convenience overload using the built-in table.
std::vector<Point> detect_critical(const GrayscaleGrid& grid, unsigned threads = 1);

const CriticalityTable& default_criticality_table();

struct PatternCensus {
  std::size_t total_classes = 0;
  std::size_t critical_classes = 0;
};

PatternCensus classify_patterns(const CriticalityTable& table, const SymmetryGroup& group);

/// Orbit representatives (smallest index) of the critical patterns.
std::vector<std::uint8_t> critical_class_representatives(const CriticalityTable& table, const SymmetryGroup& group);

}  // namespace ecm
