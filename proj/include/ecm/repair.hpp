#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ecm/grid.hpp"

namespace ecm {

/// Result of recoloring g_Q into g_P.
struct RepairOutcome {
  GrayscaleGrid g_p;
  std::vector<Point> critical;                 // sorted
  std::map<Point, std::vector<Point>> stars;   // critical point -> coface points (sorted)
  std::size_t touched = 0;                     // points whose color changed
};

enum class StarMode {
  fused,     // read the 26 known coface offsets directly
  separate,  // match the coface structuring elements
};

struct RepairOptions {
#ifdef NDEBUG
  bool audit_conflicts = false;
#else
  bool audit_conflicts = true;
#endif
  StarMode star_mode = StarMode::fused;
  unsigned threads = 1;  // 0 = hardware concurrency
};

/// One color assignment issued by the recoloring, tagged with the cell
/// point whose operation produced it.
struct ColorWrite {
  Point point;
  Color value;
  Point trigger;
  Color trigger_dim;  // color of the trigger in g_Q
};

/// Coface points of the vertex p in an E_Q grid.
std::vector<Point> vertex_star(const GrayscaleGrid& grid_q, const Point& p, StarMode mode = StarMode::fused);

/// Writes issued for one critical vertex p with star `star`, in the order
/// given (vertex op, then one op per coface).
std::vector<ColorWrite> recolor_writes(const GrayscaleGrid& grid_q, const Point& p, const std::vector<Point>& star);

/// Recolors g_Q around every critical vertex. `critical` must be the output
/// of detect_critical on `grid_q`. With audit enabled, throws
/// InvariantError when two writes disagree on a point.
RepairOutcome repair_grid(const GrayscaleGrid& grid_q, const std::vector<Point>& critical,
                          const RepairOptions& options = {});

struct WellDefinedReport {
  bool ok = true;
  std::optional<Point> conflict;
};

/// Re-runs the recoloring with write-once tracking under `orderings` random
/// permutations of the critical set and of every star.
WellDefinedReport verify_welldefined(const GrayscaleGrid& grid_q, const std::vector<Point>& critical,
                                     std::size_t orderings = 10, std::uint64_t seed = 0);

}  // namespace ecm
