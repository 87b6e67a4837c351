#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ecm/complex.hpp"
#include "ecm/homology.hpp"
#include "ecm/image_io.hpp"
#include "json.hpp"

namespace ecm::cli {

struct PipelineReport {
  std::string input_path;
  std::size_t voxels = 0;
  std::array<std::size_t, 4> cells_q{};
  std::array<std::size_t, 4> cells_p{};
  std::size_t critical_count = 0;
  std::size_t critical_classes_found = 0;
  Betti betti_q{};
  Betti betti_p{};
  long long euler_q = 0;
  long long euler_p = 0;
  std::size_t e1_violations_q = 0;
  std::size_t e2_violations_q = 0;
  bool well_composed_p = false;
  std::size_t bp_element_count = 0;
  std::vector<Point> violations;  // P cells breaking E1 or E2
  std::vector<std::pair<std::string, double>> timings_ms;
};

struct PipelineOptions {
  unsigned threads = 0;
  int bp_max_radius = BpOptions{}.max_radius;
};

/// Runs detection, repair, both complexes, well-composedness, homology and
/// the B_P derivation. Throws InvariantError on a broken invariant.
PipelineReport run_pipeline(const BinaryImage& image, const std::string& input_path, const PipelineOptions& options);

nlohmann::ordered_json to_json(const PipelineReport& report, bool with_timings);

}  // namespace ecm::cli
