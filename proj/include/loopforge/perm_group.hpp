#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "loopforge/perm.hpp"

/**
 * @file perm_group.hpp
 * @brief Permutation groups backed by a stabilizer chain.
 *
 * The chain is built once at construction; a PermGroup is immutable
 * afterwards and may be shared between threads for read-only queries.
 *
 * The base is a total ordering of all points: the requested prefix followed
 * by the remaining points in increasing order. Levels whose basic orbit is a
 * single point are kept (they cost one comparison while sifting) so that the
 * base of every group over the same ordering is literally the same list.
 */

namespace loopforge
{

using BigInt = boost::multiprecision::cpp_int;

struct ChainOptions
{
  // Points placed first in the base, in this order.
  std::vector<Point> base_prefix;

  // When present, a randomized Schreier-Sims run is stopped as soon as the
  // chain reaches this order. Reaching it certifies the chain, so the result
  // is exact; if it is never reached the deterministic algorithm is used.
  std::optional<BigInt> known_order;

  // Without a known order, first try to reach the order of A_d (all
  // generators even) or S_d. A chain of that order certifies the group.
  bool detect_giant = false;

  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
};

class PermGroup
{
public:
  struct Level
  {
    Point base;
    std::vector<Point> orbit;
    std::vector<std::int32_t> pos;     // pos[x] = index of x in orbit, or -1
    std::vector<Perm> transversal;     // transversal[i] maps base to orbit[i]
    std::vector<Perm> inv_transversal;
  };

  struct Chain
  {
    std::vector<Level> levels;
    std::vector<Perm> strong;          // strong generating set
    std::vector<std::size_t> depth;    // first level moved by strong[i]
  };

  // Throws InputError if degree < 1 or a generator has the wrong degree.
  PermGroup(std::size_t degree, std::vector<Perm> generators,
            ChainOptions const &options = {});

  static PermGroup trivial(std::size_t degree);

  std::size_t degree() const { return _degree; }

  // Never empty: the trivial group is generated by the identity.
  std::vector<Perm> const &generators() const { return _generators; }

  BigInt const &order() const { return _order; }

  // Order if it fits in 64 bits.
  std::optional<std::uint64_t> order_u64() const;

  bool is_trivial() const { return _order == 1; }

  // Base points of the levels with nontrivial basic orbits.
  std::vector<Point> base() const;
  std::vector<std::size_t> basic_orbit_sizes() const;

  Chain const &chain() const { return *_chain; }

  // Throws InputError on degree mismatch.
  bool contains(Perm const &p) const;

  // Same group, chain rebuilt with `prefix` leading the base.
  PermGroup with_base(std::span<Point const> prefix) const;

  // Pointwise stabilizer of `points`, with its own chain.
  PermGroup stabilizer(std::span<Point const> points) const;

  // Calls `fn` once for every element in a fixed order. Throws ResourceError
  // if the group has more than `limit` elements.
  void for_each_element(std::function<void(Perm const &)> const &fn,
                        std::uint64_t limit) const;

  std::vector<Perm> elements(std::uint64_t limit) const;

  // Uniformly distributed element (product of random transversal elements).
  Perm random_element(std::mt19937_64 &rng) const;

private:
  PermGroup(std::size_t degree, std::vector<Perm> generators,
            std::shared_ptr<Chain const> chain);

  std::size_t _degree;
  std::vector<Perm> _generators;
  std::shared_ptr<Chain const> _chain;
  BigInt _order;
};

std::string to_string(BigInt const &n);

} // namespace loopforge
