#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>

namespace ecm {

/// Integer lattice point. Used both for voxel centers and for ECM grid
/// points (quarter-cell units, real coordinate x 4).
struct Point {
  int x = 0;
  int y = 0;
  int z = 0;

  constexpr int operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  constexpr int& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

  constexpr Point& operator+=(const Point& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Point& operator-=(const Point& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }

  friend constexpr Point operator+(Point a, const Point& b) { return a += b; }
  friend constexpr Point operator-(Point a, const Point& b) { return a -= b; }
  friend constexpr Point operator-(const Point& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Point operator*(int s, const Point& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr Point operator*(const Point& a, int s) { return s * a; }

  friend constexpr auto operator<=>(const Point&, const Point&) = default;
  friend constexpr bool operator==(const Point&, const Point&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Point& p) {
  return os << '(' << p.x << ',' << p.y << ',' << p.z << ')';
}

/// Unit vector along `axis` (0,1,2) with sign `s` (+1/-1).
constexpr Point unit(int axis, int s = 1) {
  Point p;
  p[axis] = s;
  return p;
}

constexpr int squared_norm(const Point& p) { return p.x * p.x + p.y * p.y + p.z * p.z; }

/// Floor modulo, result in [0, m).
constexpr int floor_mod(int a, int m) {
  const int r = a % m;
  return r < 0 ? r + m : r;
}

constexpr int floor_div(int a, int m) { return (a - floor_mod(a, m)) / m; }

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    std::uint64_t h = static_cast<std::uint32_t>(p.x);
    h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint32_t>(p.y);
    h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint32_t>(p.z);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

}  // namespace ecm
