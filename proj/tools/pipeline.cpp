#include "pipeline.hpp"

#include <chrono>
#include <set>

#include "ecm/criticality.hpp"
#include "ecm/errors.hpp"

namespace ecm::cli {

namespace {

class StageTimer {
 public:
  explicit StageTimer(std::vector<std::pair<std::string, double>>& out) : out_(out) {}
  void stop(const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    out_.emplace_back(stage, std::chrono::duration<double, std::milli>(now - start_).count());
    start_ = now;
  }

 private:
  std::vector<std::pair<std::string, double>>& out_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

nlohmann::ordered_json point_json(const Point& p) { return {p.x, p.y, p.z}; }

}  // namespace

PipelineReport run_pipeline(const BinaryImage& image, const std::string& input_path, const PipelineOptions& options) {
  PipelineReport r;
  r.input_path = input_path;
  r.voxels = image.size();
  StageTimer timer(r.timings_ms);

  const GrayscaleGrid g_q = build_q_grid(image);
  timer.stop("build_q_grid");
  const std::vector<Point> critical = detect_critical(g_q, options.threads);
  r.critical_count = critical.size();
  std::set<std::uint8_t> classes;
  for (const Point& p : critical) classes.insert(cube_symmetries().canonical(vertex_pattern(g_q, p)));
  r.critical_classes_found = classes.size();
  timer.stop("detect");

  RepairOptions ro;
  ro.threads = options.threads;
  const RepairOutcome outcome = repair_grid(g_q, critical, ro);
  timer.stop("repair");

  const PolyComplex q = build_q_complex(g_q);
  const PolyComplex p = build_p_complex(g_q, outcome);
  if (!grid_mismatches(p, outcome.g_p).empty()) throw InvariantError("P(I) does not match its grid");
  r.cells_q = q.counts();
  r.cells_p = p.counts();
  timer.stop("complexes");

  const WellComposedReport wq = check_well_composed(q);
  const WellComposedReport wp = check_well_composed(p);
  r.e1_violations_q = wq.e1_violations.size();
  r.e2_violations_q = wq.e2_violations.size();
  r.well_composed_p = wp.is_well_composed;
  for (const auto& [key, n] : wp.e1_violations) r.violations.push_back(key);
  r.violations.insert(r.violations.end(), wp.e2_violations.begin(), wp.e2_violations.end());
  timer.stop("well_composed");

  r.betti_q = betti(q);
  r.betti_p = betti(p);
  r.euler_q = euler(q);
  r.euler_p = euler(p);
  timer.stop("homology");

  const std::vector<StructuringElement> bp = derive_bp(outcome.g_p, p, BpOptions{options.bp_max_radius});
  if (!validate_bp(outcome.g_p, p, bp).ok()) throw InvariantError("derived B_P fails validation");
  r.bp_element_count = bp.size();
  timer.stop("derive_bp");
  return r;
}

nlohmann::ordered_json to_json(const PipelineReport& r, bool with_timings) {
  nlohmann::ordered_json j;
  j["input_path"] = r.input_path;
  j["voxels"] = r.voxels;
  j["cells_q"] = r.cells_q;
  j["cells_p"] = r.cells_p;
  j["critical_count"] = r.critical_count;
  j["critical_classes_found"] = r.critical_classes_found;
  j["betti_q"] = r.betti_q;
  j["betti_p"] = r.betti_p;
  j["euler_q"] = r.euler_q;
  j["euler_p"] = r.euler_p;
  j["e1_violations_q"] = r.e1_violations_q;
  j["e2_violations_q"] = r.e2_violations_q;
  j["well_composed_p"] = r.well_composed_p;
  j["bp_element_count"] = r.bp_element_count;
  j["violations"] = nlohmann::ordered_json::array();
  for (const Point& p : r.violations) j["violations"].push_back(point_json(p));
  if (with_timings) {
    nlohmann::ordered_json t = nlohmann::ordered_json::object();
    for (const auto& [stage, ms] : r.timings_ms) t[stage] = ms;
    j["timings_ms"] = t;
  }
  return j;
}

}  // namespace ecm::cli
