#pragma once

// Arithmetic of the Walsh group truncated to N binary coordinates.
//
// Coordinate x_k is bit k (least significant first) of the sample index, so
// a point at resolution N is the same thing as an index in [0, 2^N).

#include "walshlab/rational.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace walshlab {

using Index = std::uint64_t;

/// Largest resolution any routine will allocate 2^N samples for.
inline constexpr int kMaxResolution = 24;

/// Thrown when a requested resolution or order exceeds what fits.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

void check_resolution(int resolution);

inline Index cell_count(int resolution) { return Index{1} << resolution; }

class GroupPoint {
 public:
  GroupPoint(int resolution, Index index);

  static GroupPoint zero(int resolution) { return GroupPoint(resolution, 0); }
  /// e_n: the point with x_n = 1 and every other coordinate 0.
  static GroupPoint unit(int n, int resolution);
  static GroupPoint from_coords(std::span<const int> coords);

  int resolution() const { return resolution_; }
  Index index() const { return index_; }
  int coord(int k) const;
  std::vector<int> coords() const;

  friend bool operator==(const GroupPoint&, const GroupPoint&) = default;

 private:
  int resolution_;
  Index index_;
};

/// Coordinatewise addition mod 2; the resolutions must match.
GroupPoint group_add(const GroupPoint& x, const GroupPoint& y);
inline GroupPoint operator+(const GroupPoint& x, const GroupPoint& y) {
  return group_add(x, y);
}

/// r_k(x) = (-1)^{x_k}.
int rademacher(int k, const GroupPoint& x);

/// Reverses the low A bits of an index and keeps the rest.
Index reverse_low_bits(Index value, int A);

/// tau_A: reverses coordinates 0..A-1, leaves coordinates >= A unchanged.
GroupPoint tau(int A, const GroupPoint& x);

/// |n|: position of the highest set bit, n >= 1.
int msb(Index n);

class DyadicInterval {
 public:
  DyadicInterval(int rank, GroupPoint anchor);

  /// I_n = I_n(0) at the given resolution.
  static DyadicInterval at_zero(int rank, int resolution);

  int rank() const { return rank_; }
  const GroupPoint& anchor() const { return anchor_; }
  /// Anchor bits below the rank.
  Index prefix() const { return anchor_.index() & (cell_count(rank_) - 1); }

  bool contains(const GroupPoint& y) const;
  bool contains_index(Index j) const {
    return (j & (cell_count(rank_) - 1)) == prefix();
  }
  /// mu(I_n(x)) = 2^{-n}.
  Rational measure() const { return pow2(-rank_); }

 private:
  int rank_;
  GroupPoint anchor_;
};

/// Ascending indices j < 2^N whose cells lie in the interval.
std::vector<Index> interval_indices(const DyadicInterval& interval, int resolution);

/// J_N^{m,l}: the rank-N cell with x_m = x_l = 1 and every other coordinate
/// below N equal to 0. m = -1 drops the x_m constraint.
class JInterval {
 public:
  JInterval(int N, int m, int l);

  int N() const { return N_; }
  int m() const { return m_; }
  int l() const { return l_; }

  /// The single index at resolution N that the cell occupies.
  Index cell_index() const;
  bool contains(const GroupPoint& x) const;
  DyadicInterval as_interval() const;

 private:
  int N_;
  int m_;
  int l_;
};

}  // namespace walshlab
