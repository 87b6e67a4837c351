#include "ecm/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ecm/errors.hpp"

namespace ecm {

BinaryImage::BinaryImage(std::vector<Point> voxels) : voxels_(std::move(voxels)) {
  std::sort(voxels_.begin(), voxels_.end());
  const auto last = std::unique(voxels_.begin(), voxels_.end());
  duplicates_collapsed = static_cast<std::size_t>(voxels_.end() - last);
  voxels_.erase(last, voxels_.end());
  if (voxels_.empty()) return;
  BoundingBox box{voxels_.front(), voxels_.front()};
  for (const Point& p : voxels_) {
    for (int a = 0; a < 3; ++a) {
      box.min[a] = std::min(box.min[a], p[a]);
      box.max[a] = std::max(box.max[a], p[a]);
    }
  }
  bbox_ = box;
}

bool BinaryImage::contains(const Point& p) const {
  return std::binary_search(voxels_.begin(), voxels_.end(), p);
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

// Whitespace tokenizer that remembers where each token started.
class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  std::optional<std::pair<std::string_view, std::size_t>> next() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    if (pos_ >= text_.size()) return std::nullopt;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) ++pos_;
    return std::make_pair(text_.substr(start, pos_ - start), start);
  }

  std::size_t offset() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

template <class Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

BinaryImage parse_voxgrid(std::string_view text) {
  Tokenizer tok(text);
  auto magic = tok.next();
  if (!magic || magic->first != "voxgrid") {
    throw ParseError("malformed header: expected 'voxgrid'", magic ? magic->second : 0);
  }
  long long dims[3];
  for (long long& d : dims) {
    auto t = tok.next();
    if (!t) throw ParseError("malformed header: missing dimension", tok.offset());
    if (!parse_int(t->first, d) || d <= 0) {
      throw ParseError("malformed header: dimension must be a positive integer", t->second);
    }
  }
  const long long total = dims[0] * dims[1] * dims[2];
  std::vector<Point> voxels;
  long long index = 0;
  while (auto t = tok.next()) {
    if (t->first != "0" && t->first != "1") {
      throw ParseError("invalid token '" + std::string(t->first) + "'", t->second);
    }
    if (index >= total) {
      throw ParseError("token count mismatch: more than " + std::to_string(total) + " tokens", t->second);
    }
    if (t->first == "1") {
      const long long x = index % dims[0];
      const long long y = (index / dims[0]) % dims[1];
      const long long z = index / (dims[0] * dims[1]);
      voxels.push_back({static_cast<int>(x), static_cast<int>(y), static_cast<int>(z)});
    }
    ++index;
  }
  if (index != total) {
    throw ParseError("token count mismatch: expected " + std::to_string(total) + ", got " + std::to_string(index),
                     tok.offset());
  }
  return BinaryImage(std::move(voxels));
}

BinaryImage parse_coords(std::string_view text) {
  std::vector<Point> voxels;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = trim(text.substr(pos, eol - pos));
    ++line_no;
    pos = eol + 1;
    if (line.empty()) continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 3) {
      throw ParseError("expected 3 fields, got " + std::to_string(fields.size()) + " at line " + std::to_string(line_no),
                       line_no);
    }
    Point p;
    for (int a = 0; a < 3; ++a) {
      if (!parse_int(fields[a], p[a])) {
        throw ParseError("non-integer field '" + std::string(fields[a]) + "' at line " + std::to_string(line_no),
                         line_no);
      }
    }
    voxels.push_back(p);
  }
  return BinaryImage(std::move(voxels));
}

std::string serialize_voxgrid(const BinaryImage& image) {
  if (image.empty()) return "voxgrid 1 1 1\n0\n";
  const BoundingBox& box = *image.bbox();
  if (box.min.x < 0 || box.min.y < 0 || box.min.z < 0) {
    throw std::invalid_argument("voxgrid cannot represent negative voxel coordinates");
  }
  const int nx = box.max.x + 1, ny = box.max.y + 1, nz = box.max.z + 1;
  std::ostringstream os;
  os << "voxgrid " << nx << ' ' << ny << ' ' << nz << '\n';
  for (int z = 0; z < nz; ++z) {
    for (int y = 0; y < ny; ++y) {
      for (int x = 0; x < nx; ++x) {
        os << (image.contains({x, y, z}) ? '1' : '0') << (x + 1 < nx ? ' ' : '\n');
      }
    }
  }
  return os.str();
}

std::string serialize_coords(const BinaryImage& image) {
  std::ostringstream os;
  for (const Point& p : image.foreground()) os << p.x << ',' << p.y << ',' << p.z << '\n';
  return os.str();
}

std::optional<ImageFormat> format_from_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".vox") return ImageFormat::voxgrid;
  if (ext == ".csv") return ImageFormat::coords;
  return std::nullopt;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BinaryImage read_image(const std::filesystem::path& path, ImageFormat format) {
  const std::string text = read_file(path);
  return format == ImageFormat::voxgrid ? parse_voxgrid(text) : parse_coords(text);
}

}  // namespace ecm
