#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "loopforge/loop.hpp"

namespace loopforge
{

struct LoopFingerprint
{
  std::size_t order = 0;
  std::vector<std::vector<std::size_t>> row_cycle_types;   // sorted multiset
  std::vector<std::pair<std::uint64_t, std::uint64_t>> power_orders;  // sorted
  std::size_t idempotents = 0;
  std::size_t involutions = 0;
  std::string mlt_order;
  std::string rmlt_order;

  friend bool operator==(LoopFingerprint const &, LoopFingerprint const &) = default;
  friend auto operator<=>(LoopFingerprint const &, LoopFingerprint const &) = default;
};

LoopFingerprint fingerprint(LoopTable const &loop);

// A bijection phi (phi[0] == 0) with phi(a*b) = phi(a) * phi(b), i.e.
// a.relabeled(phi) == b, or nothing. The witness is verified before return.
std::optional<std::vector<Point>> find_isomorphism(LoopTable const &a,
                                                   LoopTable const &b);

bool are_isomorphic(LoopTable const &a, LoopTable const &b);

// One representative per isomorphism class: the lexicographically least
// table among the inputs of that class. Sorted by (order, table).
std::vector<LoopTable> filter_up_to_isomorphism(std::vector<LoopTable> loops);

} // namespace loopforge
