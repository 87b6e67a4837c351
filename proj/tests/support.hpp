#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "ecm/complex.hpp"
#include "ecm/image_io.hpp"
#include "ecm/repair.hpp"

namespace ecm::test {

/// Random image inside [0,n)^3 with the given density.
BinaryImage random_image(std::mt19937_64& rng, int n, double density);

/// Image of the 2x2x2 block around the vertex (1/2,1/2,1/2) for an octant
/// occupancy pattern: bit b set -> voxel (1,1,1) + (octant_direction(b)-1)/2.
BinaryImage pattern_image(std::uint8_t pattern);

/// Cubical complex built directly from voxel closures, without grids:
/// key -> (dimension, facet keys). Keys in quarter units.
struct OracleComplex {
  std::map<Point, std::pair<int, std::set<Point>>> cells;
  std::array<std::size_t, 4> counts() const;
};
OracleComplex closure_complex(const BinaryImage& image);

/// Number of 26-connected foreground components (union-find over voxels).
std::size_t components26(const BinaryImage& image);

/// Vertices of Q(I) (quarter-unit keys) found non-manifold by explicit
/// boundary analysis of the oracle complex: a boundary edge with a count of
/// boundary squares other than 2, or a boundary vertex whose boundary-edge
/// link graph is disconnected.
std::set<Point> oracle_critical(const BinaryImage& image);

/// Every stage of the repair for one image.
struct Built {
  GrayscaleGrid g_q;
  RepairOutcome outcome;
  PolyComplex q;
  PolyComplex p;
};
Built build_all(const BinaryImage& image);

/// Images of the critical class representatives followed by `randoms`
/// random 6^3 images at densities cycling through 0.2, 0.5, 0.8.
std::vector<BinaryImage> corpus(std::size_t randoms, std::uint64_t seed = 7);

}  // namespace ecm::test
