#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace omni {

/// Membership set over indices 0..63. Every square and group handled by the
/// search code has order at most 64.
using Mask = std::uint64_t;

inline constexpr int kMaxOrder = 64;

constexpr Mask bit(int i) { return Mask{1} << i; }
constexpr Mask low_bits(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }
constexpr bool has(Mask m, int i) { return (m >> i) & 1U; }
constexpr int popcount(Mask m) { return std::popcount(m); }
constexpr int lowest(Mask m) { return std::countr_zero(m); }

inline Mask mask_of(const std::vector<int>& xs) {
  Mask m = 0;
  for (int x : xs) m |= bit(x);
  return m;
}

inline std::vector<int> elements_of(Mask m) {
  std::vector<int> out;
  out.reserve(popcount(m));
  for (; m != 0; m &= m - 1) out.push_back(lowest(m));
  return out;
}

}  // namespace omni
