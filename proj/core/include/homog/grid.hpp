#pragma once

#include <array>
#include <cstdint>

#include "homog/error.hpp"

namespace homog {

/// Uniform grid of square cells over an axis-aligned square domain.
/// Values of sampled fields live either at cell centers or at the
/// (n+1) x (n+1) nodes; both coordinate sets are reproducible bit-exactly
/// from (origin, side, n).
class Grid {
 public:
  explicit Grid(int cells_per_side, double side = 1.0, std::array<double, 2> origin = {0.0, 0.0})
      : n_(cells_per_side), side_(side), origin_(origin) {
    if (n_ < 2) raise(Errc::grid_too_coarse, "grid needs at least 2 cells per side");
    if (!(side_ > 0.0)) raise(Errc::config_invalid, "grid side must be positive");
  }

  int n() const { return n_; }
  double side() const { return side_; }
  double h() const { return side_ / n_; }
  std::array<double, 2> origin() const { return origin_; }

  std::int64_t num_cells() const { return std::int64_t(n_) * n_; }
  std::int64_t num_nodes() const { return std::int64_t(n_ + 1) * (n_ + 1); }

  std::int64_t cell_index(int ix, int iy) const { return std::int64_t(iy) * n_ + ix; }
  std::int64_t node_index(int ix, int iy) const { return std::int64_t(iy) * (n_ + 1) + ix; }

  std::array<double, 2> cell_center(int ix, int iy) const {
    const double hh = h();
    return {origin_[0] + (ix + 0.5) * hh, origin_[1] + (iy + 0.5) * hh};
  }
  std::array<double, 2> node_pos(int ix, int iy) const {
    const double hh = h();
    return {origin_[0] + ix * hh, origin_[1] + iy * hh};
  }

  bool boundary_node(int ix, int iy) const {
    return ix == 0 || iy == 0 || ix == n_ || iy == n_;
  }

  /// True for the default domain the test-function family is defined on.
  bool is_unit_square() const {
    return origin_[0] == 0.0 && origin_[1] == 0.0 && side_ == 1.0;
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n_ == b.n_ && a.side_ == b.side_ && a.origin_ == b.origin_;
  }
  friend bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }

 private:
  int n_;
  double side_;
  std::array<double, 2> origin_;
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (a != b) raise(Errc::grid_mismatch, where);
}

}  // namespace homog
