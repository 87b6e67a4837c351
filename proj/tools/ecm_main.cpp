// ecm: command-line front end for the ECM repair pipeline.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ecm/complex.hpp"
#include "ecm/criticality.hpp"
#include "ecm/errors.hpp"
#include "ecm/homology.hpp"
#include "ecm/mesh_export.hpp"
#include "pipeline.hpp"

namespace fs = std::filesystem;
using namespace ecm;

namespace {

struct Common {
  std::string input;
  std::string format;
  unsigned threads = 0;
  std::string out;
};

BinaryImage load(const Common& c) {
  std::optional<ImageFormat> fmt;
  if (c.format == "voxgrid") {
    fmt = ImageFormat::voxgrid;
  } else if (c.format == "coords") {
    fmt = ImageFormat::coords;
  } else {
    fmt = format_from_extension(c.input);
  }
  if (!fmt) throw std::runtime_error("cannot infer format of '" + c.input + "'; pass --format voxgrid|coords");
  return read_image(c.input, *fmt);
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + out + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write to '" + out + "' failed");
}

std::string triple(const Betti& b) {
  std::ostringstream os;
  os << b[0] << ' ' << b[1] << ' ' << b[2];
  return os.str();
}

struct Prepared {
  GrayscaleGrid g_q;
  RepairOutcome outcome;
};

Prepared prepare(const BinaryImage& image, unsigned threads) {
  Prepared p;
  p.g_q = build_q_grid(image);
  RepairOptions ro;
  ro.threads = threads;
  p.outcome = repair_grid(p.g_q, detect_critical(p.g_q, threads), ro);
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detect and repair non-manifold vertices of 3D binary images"};
  app.require_subcommand(1);

  Common c;
  std::string which = "p";
  bool no_timings = false;
  int bp_radius = BpOptions{}.max_radius;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", c.input, "Input image (.vox voxgrid or .csv coordinates)")->required();
    sub->add_option("--format", c.format, "Input format")->check(CLI::IsMember({"voxgrid", "coords"}));
    sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
  };

  auto* info = app.add_subcommand("info", "Image and complex summary");
  add_common(info);
  auto* detect = app.add_subcommand("detect", "Print critical vertex points");
  add_common(detect);
  auto* repair = app.add_subcommand("repair", "Write the repaired grid g_P");
  add_common(repair);
  repair->add_option("output", c.out, "Output ecmgrid file");
  repair->add_option("--out", c.out, "Output ecmgrid file");
  auto* verify = app.add_subcommand("verify", "Run the full pipeline and write a JSON report");
  add_common(verify);
  verify->add_option("output", c.out, "Output JSON file");
  verify->add_option("--out", c.out, "Output JSON file");
  verify->add_flag("--no-timings", no_timings, "Omit stage timings (byte-stable output)");
  verify->add_option("--bp-radius", bp_radius, "Largest guard radius searched by the B_P derivation")
      ->check(CLI::PositiveNumber);
  auto* betti_cmd = app.add_subcommand("betti", "Print GF(2) Betti numbers of Q and P");
  add_common(betti_cmd);
  auto* mesh = app.add_subcommand("mesh", "Write the boundary surface as OBJ");
  add_common(mesh);
  mesh->add_option("--which", which, "Complex to export")->check(CLI::IsMember({"q", "p"}));
  mesh->add_option("output", c.out, "Output OBJ file");
  mesh->add_option("--out", c.out, "Output OBJ file");
  auto* dump = app.add_subcommand("dump-grid", "Write g_Q or g_P as ecmgrid text");
  add_common(dump);
  dump->add_option("--which", which, "Grid to dump")->check(CLI::IsMember({"q", "p"}));
  dump->add_option("output", c.out, "Output ecmgrid file");
  dump->add_option("--out", c.out, "Output ecmgrid file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const BinaryImage image = load(c);
    if (*info) {
      const GrayscaleGrid g = build_q_grid(image);
      const auto counts = g.cell_counts();
      std::ostringstream os;
      os << "voxels " << image.size() << '\n';
      if (image.bbox()) {
        const auto& b = *image.bbox();
        os << "bbox " << b.min.x << ' ' << b.min.y << ' ' << b.min.z << ' ' << b.max.x << ' ' << b.max.y << ' '
           << b.max.z << '\n';
      }
      if (image.duplicates_collapsed > 0) os << "duplicates_collapsed " << image.duplicates_collapsed << '\n';
      os << "grid_origin " << g.origin().x << ' ' << g.origin().y << ' ' << g.origin().z << '\n';
      os << "grid_extent " << g.extent().x << ' ' << g.extent().y << ' ' << g.extent().z << '\n';
      os << "cells_q " << counts[0] << ' ' << counts[1] << ' ' << counts[2] << ' ' << counts[3] << '\n';
      emit("", os.str());
    } else if (*detect) {
      std::ostringstream os;
      for (const Point& p : detect_critical(build_q_grid(image), c.threads)) os << p.x << ' ' << p.y << ' ' << p.z << '\n';
      emit("", os.str());
    } else if (*repair) {
      emit(c.out, dump_grid(prepare(image, c.threads).outcome.g_p));
    } else if (*verify) {
      cli::PipelineOptions po;
      po.threads = c.threads;
      po.bp_max_radius = bp_radius;
      const cli::PipelineReport report = cli::run_pipeline(image, c.input, po);
      emit(c.out, cli::to_json(report, !no_timings).dump(2) + "\n");
    } else if (*betti_cmd) {
      const Prepared p = prepare(image, c.threads);
      std::ostringstream os;
      os << "Q " << triple(betti(build_q_complex(p.g_q))) << '\n';
      os << "P " << triple(betti(build_p_complex(p.g_q, p.outcome))) << '\n';
      emit("", os.str());
    } else if (*mesh) {
      const Prepared p = prepare(image, c.threads);
      const PolyComplex k = which == "q" ? build_q_complex(p.g_q) : build_p_complex(p.g_q, p.outcome);
      emit(c.out, write_obj(triangulate_boundary(k)));
    } else if (*dump) {
      const Prepared p = prepare(image, c.threads);
      emit(c.out, dump_grid(which == "q" ? p.g_q : p.outcome.g_p));
    }
  } catch (const InvariantError& e) {
    std::cerr << "ecm: internal invariant violated: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "ecm: parse error at " << e.location() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ecm: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
