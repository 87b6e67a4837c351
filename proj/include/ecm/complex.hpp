#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "ecm/grid.hpp"
#include "ecm/repair.hpp"

namespace ecm {

/// A cell of a polyhedral complex, keyed by its ECM grid point.
struct Cell {
  Point key;
  int dim = 0;
  std::vector<Point> facets;  // keys of the (dim-1)-faces, sorted
  std::vector<Point> cycle;   // 2-cells only: ordered vertex keys

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Explicit cell-incidence structure. Vertex positions are the keys
/// themselves (grid units, real = key / 4).
class PolyComplex {
 public:
  using CellMap = std::map<Point, Cell>;

  bool empty() const noexcept { return cells_.empty(); }
  std::size_t size() const noexcept { return cells_.size(); }
  const CellMap& cells() const noexcept { return cells_; }

  bool contains(const Point& key) const { return cells_.contains(key); }
  const Cell& at(const Point& key) const;
  const Cell* find(const Point& key) const;

  /// Inserts or replaces the cell at cell.key; facets get sorted.
  void put(Cell cell);
  void erase(const Point& key) { cells_.erase(key); }

  std::array<std::size_t, 4> counts() const;
  std::vector<Point> keys_of_dim(int dim) const;

  /// key -> keys of the cells having it as a facet.
  std::unordered_map<Point, std::vector<Point>, PointHash> coface_map() const;

  /// Orders the vertex cycle of every 2-cell from its facet edges.
  void order_cycles();

  friend bool operator==(const PolyComplex&, const PolyComplex&) = default;

 private:
  CellMap cells_;
};

/// Structural problems found by validate(): dangling facets, wrong facet
/// dimensions, incomplete cells, broken vertex cycles.
std::vector<std::string> validate(const PolyComplex& k);

/// Debug dump: `dim key facet_keys...`, ordered by dimension then key.
std::string dump_complex(const PolyComplex& k);

/// Q(I) from its E_Q grid; facets found with the E_Q face elements.
PolyComplex build_q_complex(const GrayscaleGrid& grid_q);

/// P(I): Q(I) with the star of every critical vertex replaced by the
/// small cubes, pyramids, square-derived 3-cells and hexahedra. Throws
/// InvariantError on a dangling facet.
PolyComplex build_p_complex(const GrayscaleGrid& grid_q, const RepairOutcome& outcome);

/// Keys where k and g disagree: a cell whose color is not its dimension,
/// or a colored point without a cell. Empty iff g encodes k.
std::vector<Point> grid_mismatches(const PolyComplex& k, const GrayscaleGrid& g);

/// Free 2-cells (exactly one 3-coface) together with all their faces.
PolyComplex boundary_subcomplex(const PolyComplex& k);

struct WellComposedReport {
  std::vector<std::pair<Point, int>> e1_violations;  // edge key, 2-coface count in the boundary
  std::vector<Point> e2_violations;                  // vertex keys with disconnected link
  bool is_well_composed = true;
};

WellComposedReport check_well_composed(const PolyComplex& k);

/// Link graph of a vertex inside the boundary subcomplex: nodes are the
/// boundary edges at the vertex, arcs join edges sharing a boundary 2-cell.
struct LinkGraph {
  std::vector<Point> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  std::size_t components() const;
};

/// Throws std::out_of_range for a key not in k.
LinkGraph link_graph(const PolyComplex& k, const Point& vertex);
/// Link graph computed on an already extracted boundary subcomplex.
LinkGraph link_graph_in_boundary(const PolyComplex& boundary, const Point& vertex);

/// Cells having a proper face in `keys` (cells of `keys` excluded unless
/// another member of `keys` is one of their faces). Sorted.
std::vector<Point> star(const PolyComplex& k, const std::vector<Point>& keys);

struct BpOptions {
  /// Largest Chebyshev radius searched for guard entries. Radius 2 is
  /// tried first; farther offsets are used only when nearer ones cannot
  /// separate a cell from a foreign one.
  int max_radius = 16;
};

/// Structuring elements encoding the facet relations of every cell of k on
/// grid g: origin = dim, dim-1 at facet offsets, -1 guards chosen greedily
/// from offsets that read -1 around the cell. Cells sharing facet offsets
/// share an element whenever one guard set serves them all. Throws
/// AmbiguityUnresolvable when no guard set within max_radius separates a
/// cell from a cell with different facets.
std::vector<StructuringElement> derive_bp(const GrayscaleGrid& g, const PolyComplex& k, const BpOptions& options = {});

/// Largest Chebyshev norm of any entry offset in the set.
int guard_radius(const std::vector<StructuringElement>& elements);

struct BpValidation {
  std::size_t cells_checked = 0;
  std::vector<Point> failures;  // cells with zero / several fits or wrong facets
  bool ok() const { return failures.empty(); }
};

/// Exactly one element fits per cell of dimension >= 1, its facet points
/// equal the explicit facets, and no element fits at a non-cell point.
BpValidation validate_bp(const GrayscaleGrid& g, const PolyComplex& k, const std::vector<StructuringElement>& bp);

/// Facet keys of the cell at `key` recovered from g and the element set
/// alone. Same error contract as faces_of.
std::vector<Point> faces_via_bp(const GrayscaleGrid& g, const std::vector<StructuringElement>& bp, const Point& key);

/// Combinatorial shape of the hexahedron replacing a cube whose corners are
/// marked critical by `marking` (octant bit order): facet offsets and
/// vertex offsets relative to the cube key, both sorted.
struct HexahedronShape {
  std::vector<Point> facets;
  std::vector<Point> vertices;
  friend auto operator<=>(const HexahedronShape&, const HexahedronShape&) = default;
};
HexahedronShape hexahedron_shape(std::uint8_t marking);

}  // namespace ecm
