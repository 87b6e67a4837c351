#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecm/point.hpp"

namespace ecm {

struct BoundingBox {
  Point min;
  Point max;  // inclusive
};

/// Finite foreground set of voxel centers. Foreground is kept sorted and
/// duplicate-free; the bounding box is tight whenever the image is nonempty.
class BinaryImage {
 public:
  BinaryImage() = default;
  explicit BinaryImage(std::vector<Point> voxels);

  const std::vector<Point>& foreground() const noexcept { return voxels_; }
  std::size_t size() const noexcept { return voxels_.size(); }
  bool empty() const noexcept { return voxels_.empty(); }
  bool contains(const Point& p) const;

  /// Empty optional for the empty image.
  const std::optional<BoundingBox>& bbox() const noexcept { return bbox_; }

  /// Number of duplicate entries dropped while parsing (coords format).
  std::size_t duplicates_collapsed = 0;

  friend bool operator==(const BinaryImage& a, const BinaryImage& b) { return a.voxels_ == b.voxels_; }

 private:
  std::vector<Point> voxels_;
  std::optional<BoundingBox> bbox_;
};

enum class ImageFormat { voxgrid, coords };

/// `voxgrid nx ny nz` followed by nx*ny*nz tokens 0/1, x fastest.
BinaryImage parse_voxgrid(std::string_view text);
/// One `x,y,z` per nonempty line.
BinaryImage parse_coords(std::string_view text);

/// Voxgrid output anchored at the origin; throws std::invalid_argument for
/// negative coordinates (the format cannot express them).
std::string serialize_voxgrid(const BinaryImage& image);
std::string serialize_coords(const BinaryImage& image);

/// Picks the format from the extension (.vox -> voxgrid, .csv -> coords).
std::optional<ImageFormat> format_from_extension(const std::filesystem::path& path);
BinaryImage read_image(const std::filesystem::path& path, ImageFormat format);

std::string read_file(const std::filesystem::path& path);

}  // namespace ecm
