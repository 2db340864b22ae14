#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "loopforge/perm.hpp"
#include "loopforge/perm_group.hpp"

namespace loopforge
{

// Smallest generator-closed set containing `point`, in increasing order.
std::vector<Point> orbit(std::span<Perm const> gens, std::size_t degree,
                         Point point);

// All orbits, each sorted, ordered by least element.
std::vector<std::vector<Point>> orbits(std::span<Perm const> gens,
                                       std::size_t degree);

// Some g in G with a^g = b (Schreier tree over the generators), or nothing.
std::optional<Perm> representative_action(PermGroup const &group, Point a,
                                          Point b);

// Elements s * rep for s in `subgroup`, in the subgroup's enumeration order.
// Throws ResourceError if |subgroup| > limit.
void for_each_in_right_coset(PermGroup const &subgroup, Perm const &rep,
                             std::uint64_t limit,
                             std::function<void(Perm const &)> const &fn);

std::vector<Perm> right_coset(PermGroup const &subgroup, Perm const &rep,
                              std::uint64_t limit);

struct CentralizerOptions
{
  // Below this group order the centralizer is found by filtering all
  // elements instead of by backtracking. Zero disables the filter.
  std::uint64_t brute_force_below = 0;

  // Search tree nodes before ResourceError.
  std::uint64_t node_limit = 50'000'000;
};

// {g in G : g k = k g for all k in `elements`}.
PermGroup centralizer(PermGroup const &group, std::span<Perm const> elements,
                      CentralizerOptions const &options = {});

PermGroup centralizer(PermGroup const &group, PermGroup const &subgroup,
                      CentralizerOptions const &options = {});

// Element filter; throws ResourceError if |G| > limit.
PermGroup centralizer_brute_force(PermGroup const &group,
                                  std::span<Perm const> elements,
                                  std::uint64_t limit = 1'000'000);

bool is_transitive(std::span<Perm const> gens, std::size_t degree);
bool is_transitive(PermGroup const &group);

// Transitive on ordered k-tuples of distinct points; decided from the basic
// orbit lengths of a chain with base 1, 2, ..., k.
bool is_k_transitive(PermGroup const &group, std::size_t k);

// Finest block containing a and b (union-find closure). Sorted.
std::vector<Point> minimal_block(std::span<Perm const> gens,
                                 std::size_t degree, Point a, Point b);

bool is_primitive(std::span<Perm const> gens, std::size_t degree);
bool is_primitive(PermGroup const &group);

PermGroup normal_closure(PermGroup const &group, std::span<Perm const> elements);
PermGroup derived_subgroup(PermGroup const &group);
bool is_solvable(PermGroup const &group);

struct ConjugacyClassResult
{
  Perm representative;
  std::optional<std::uint64_t> size;   // empty: more than `cutoff` elements
  std::uint64_t cutoff;

  bool exceeded() const { return !size.has_value(); }
};

// Closure of {h} under conjugation by the generators, abandoned once it has
// more than `cutoff` elements.
ConjugacyClassResult conjugacy_class(PermGroup const &group, Perm const &h,
                                     std::uint64_t cutoff);

// Same closure, returning the elements (empty if the cutoff was exceeded).
std::vector<Perm> conjugacy_class_elements(PermGroup const &group,
                                           Perm const &h, std::uint64_t cutoff);

bool is_central(PermGroup const &group, Perm const &h);

struct MinClassSize
{
  enum class Kind
  {
    found,              // some non-central class has size <= bound
    all_exceed_bound,   // every non-central class is larger than bound
    no_nontrivial_class // the group is abelian
  };

  Kind kind;
  std::uint64_t size = 0;  // valid when kind == found
};

// Smallest size of a non-central conjugacy class, if it is at most `bound`.
// Enumerates the group; throws ResourceError if |G| > element_limit.
MinClassSize min_nontrivial_class_size(PermGroup const &group,
                                       std::uint64_t bound,
                                       std::uint64_t element_limit);

} // namespace loopforge
