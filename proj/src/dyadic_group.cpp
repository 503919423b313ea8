#include "walshlab/dyadic_group.hpp"

#include <bit>
#include <string>

namespace walshlab {

void check_resolution(int resolution) {
  if (resolution < 0)
    throw std::invalid_argument("negative resolution");
  if (resolution > kMaxResolution)
    throw CapacityError("resolution " + std::to_string(resolution) +
                        " exceeds capacity " + std::to_string(kMaxResolution));
}

GroupPoint::GroupPoint(int resolution, Index index)
    : resolution_(resolution), index_(index) {
  check_resolution(resolution);
  if (index >= cell_count(resolution))
    throw std::out_of_range("point index " + std::to_string(index) +
                            " outside resolution " + std::to_string(resolution));
}

GroupPoint GroupPoint::unit(int n, int resolution) {
  if (n < 0 || n >= resolution)
    throw std::out_of_range("e_n needs 0 <= n < resolution");
  return GroupPoint(resolution, Index{1} << n);
}

GroupPoint GroupPoint::from_coords(std::span<const int> coords) {
  int N = static_cast<int>(coords.size());
  check_resolution(N);
  Index j = 0;
  for (int k = 0; k < N; ++k) {
    if (coords[k] != 0 && coords[k] != 1)
      throw std::invalid_argument("coordinates must be 0 or 1");
    j |= static_cast<Index>(coords[k]) << k;
  }
  return GroupPoint(N, j);
}

int GroupPoint::coord(int k) const {
  if (k < 0 || k >= resolution_)
    throw std::out_of_range("coordinate " + std::to_string(k) +
                            " beyond resolution " + std::to_string(resolution_));
  return static_cast<int>((index_ >> k) & 1U);
}

std::vector<int> GroupPoint::coords() const {
  std::vector<int> out(resolution_);
  for (int k = 0; k < resolution_; ++k) out[k] = static_cast<int>((index_ >> k) & 1U);
  return out;
}

GroupPoint group_add(const GroupPoint& x, const GroupPoint& y) {
  if (x.resolution() != y.resolution())
    throw std::invalid_argument("group_add: resolution mismatch");
  return GroupPoint(x.resolution(), x.index() ^ y.index());
}

int rademacher(int k, const GroupPoint& x) { return x.coord(k) ? -1 : 1; }

Index reverse_low_bits(Index value, int A) {
  Index low = 0;
  for (int k = 0; k < A; ++k)
    if ((value >> k) & 1U) low |= Index{1} << (A - 1 - k);
  Index high = A >= 64 ? 0 : (value >> A) << A;
  return high | low;
}

GroupPoint tau(int A, const GroupPoint& x) {
  if (A < 0 || A > x.resolution())
    throw std::out_of_range("tau: A exceeds resolution");
  return GroupPoint(x.resolution(), reverse_low_bits(x.index(), A));
}

int msb(Index n) {
  if (n == 0) throw std::invalid_argument("msb: |0| is undefined");
  return std::bit_width(n) - 1;
}

DyadicInterval::DyadicInterval(int rank, GroupPoint anchor)
    : rank_(rank), anchor_(anchor) {
  if (rank < 0 || rank > anchor.resolution())
    throw std::out_of_range("interval rank outside anchor resolution");
}

DyadicInterval DyadicInterval::at_zero(int rank, int resolution) {
  return DyadicInterval(rank, GroupPoint::zero(resolution));
}

bool DyadicInterval::contains(const GroupPoint& y) const {
  if (y.resolution() < rank_)
    throw std::invalid_argument("point resolution below interval rank");
  return contains_index(y.index());
}

std::vector<Index> interval_indices(const DyadicInterval& interval, int resolution) {
  check_resolution(resolution);
  if (interval.rank() > resolution)
    throw std::out_of_range("interval rank exceeds resolution");
  const Index step = cell_count(interval.rank());
  const Index count = cell_count(resolution - interval.rank());
  std::vector<Index> out;
  out.reserve(count);
  for (Index high = 0; high < count; ++high) out.push_back(high * step + interval.prefix());
  return out;
}

JInterval::JInterval(int N, int m, int l) : N_(N), m_(m), l_(l) {
  check_resolution(N);
  if (l < 0 || l >= N) throw std::out_of_range("J interval needs 0 <= l < N");
  if (m < -1 || m > l) throw std::out_of_range("J interval needs -1 <= m <= l");
}

Index JInterval::cell_index() const {
  Index j = Index{1} << l_;
  if (m_ >= 0) j |= Index{1} << m_;
  return j;
}

bool JInterval::contains(const GroupPoint& x) const {
  if (x.resolution() < N_)
    throw std::invalid_argument("point resolution below J interval rank");
  return (x.index() & (cell_count(N_) - 1)) == cell_index();
}

DyadicInterval JInterval::as_interval() const {
  return DyadicInterval(N_, GroupPoint(N_, cell_index()));
}

}  // namespace walshlab
