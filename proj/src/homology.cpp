#include "ecm/homology.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace ecm {

void Gf2Matrix::flip(std::size_t r, std::size_t c) {
  if (r >= rows_ || c >= columns_.size()) throw std::out_of_range("Gf2Matrix index");
  auto& col = columns_[c];
  const auto row = static_cast<std::uint32_t>(r);
  auto it = std::lower_bound(col.begin(), col.end(), row);
  if (it != col.end() && *it == row) {
    col.erase(it);
  } else {
    col.insert(it, row);
  }
}

bool Gf2Matrix::get(std::size_t r, std::size_t c) const {
  const auto& col = columns_.at(c);
  return std::binary_search(col.begin(), col.end(), static_cast<std::uint32_t>(r));
}

Gf2Matrix Gf2Matrix::transpose() const {
  Gf2Matrix t(cols(), rows_);
  for (std::size_t c = 0; c < cols(); ++c) {
    for (std::uint32_t r : columns_[c]) t.columns_[r].push_back(static_cast<std::uint32_t>(c));
  }
  return t;
}

Gf2Matrix Gf2Matrix::multiply(const Gf2Matrix& rhs) const {
  if (cols() != rhs.rows()) throw std::invalid_argument("Gf2Matrix dimension mismatch");
  Gf2Matrix out(rows_, rhs.cols());
  std::vector<std::uint8_t> acc(rows_);
  for (std::size_t c = 0; c < rhs.cols(); ++c) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::uint32_t k : rhs.columns_[c]) {
      for (std::uint32_t r : columns_[k]) acc[r] ^= 1;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (acc[r]) out.columns_[c].push_back(static_cast<std::uint32_t>(r));
    }
  }
  return out;
}

bool Gf2Matrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
}

std::size_t Gf2Matrix::rank() const {
  std::vector<std::vector<std::uint32_t>> cols = columns_;
  std::unordered_map<std::uint32_t, std::size_t> pivot_of;  // lowest row -> column
  std::size_t rank = 0;
  std::vector<std::uint32_t> scratch;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto& col = cols[c];
    while (!col.empty()) {
      auto it = pivot_of.find(col.back());
      if (it == pivot_of.end()) break;
      const auto& other = cols[it->second];
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(), std::back_inserter(scratch));
      col.swap(scratch);
    }
    if (!col.empty()) {
      pivot_of.emplace(col.back(), c);
      ++rank;
    }
  }
  return rank;
}

Gf2Matrix boundary_matrix(const PolyComplex& k, int d) {
  if (d < 1 || d > 3) throw std::invalid_argument("boundary_matrix: dimension must be 1..3");
  std::unordered_map<Point, std::uint32_t, PointHash> row_index;
  std::uint32_t rows = 0;
  std::size_t cols = 0;
  for (const auto& [key, cell] : k.cells()) {
    if (cell.dim == d - 1) row_index.emplace(key, rows++);
    if (cell.dim == d) ++cols;
  }
  Gf2Matrix m(rows, cols);
  std::size_t c = 0;
  for (const auto& [key, cell] : k.cells()) {
    if (cell.dim != d) continue;
    for (const Point& f : cell.facets) m.flip(row_index.at(f), c);
    ++c;
  }
  return m;
}

Betti betti(const PolyComplex& k) {
  const auto n = k.counts();
  long long rank[5] = {0, 0, 0, 0, 0};  // rank of boundary map d, d = 0..4
  for (int d = 1; d <= 3; ++d) rank[d] = static_cast<long long>(boundary_matrix(k, d).rank());
  Betti b{};
  for (int i = 0; i < 3; ++i) b[i] = static_cast<long long>(n[i]) - rank[i] - rank[i + 1];
  return b;
}

long long euler(const PolyComplex& k) {
  const auto n = k.counts();
  return static_cast<long long>(n[0]) - static_cast<long long>(n[1]) + static_cast<long long>(n[2]) -
         static_cast<long long>(n[3]);
}

}  // namespace ecm
