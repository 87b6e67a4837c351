#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ecm/complex.hpp"

namespace ecm {

/// Sparse matrix over GF(2), stored by column (sorted row indices).
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }

  /// Toggles entry (r, c).
  void flip(std::size_t r, std::size_t c);
  bool get(std::size_t r, std::size_t c) const;
  const std::vector<std::uint32_t>& column(std::size_t c) const { return columns_[c]; }

  Gf2Matrix transpose() const;
  Gf2Matrix multiply(const Gf2Matrix& rhs) const;
  bool is_zero() const;

  /// Rank by column reduction with pivot lookup.
  std::size_t rank() const;

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<std::uint32_t>> columns_;
};

/// Rows = (d-1)-cells, cols = d-cells, both in key order. 1 <= d <= 3.
Gf2Matrix boundary_matrix(const PolyComplex& k, int d);

using Betti = std::array<long long, 3>;

Betti betti(const PolyComplex& k);
long long euler(const PolyComplex& k);

}  // namespace ecm
