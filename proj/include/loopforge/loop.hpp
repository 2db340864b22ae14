#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "loopforge/perm.hpp"
#include "loopforge/perm_group.hpp"

/**
 * @file loop.hpp
 * @brief Finite loops given by Cayley tables with neutral element 0
 *        (printed as 1).
 */

namespace loopforge
{

class LoopTable
{
public:
  LoopTable() = default;

  // Row-major 0-based table (entry a*order+b is a*b). Throws InputError
  // unless it is a Latin square whose first row and column are the identity.
  LoopTable(std::size_t order, std::vector<Point> table);

  // 1-based rows, as in the JSON format.
  static LoopTable from_rows(std::vector<std::vector<int>> const &rows);

  // {"order": d, "table": [[...], ...]}
  static LoopTable from_json(std::string const &text);
  std::string to_json() const;

  std::size_t order() const { return _order; }
  Point operator()(Point a, Point b) const { return _table[a * _order + b]; }
  std::vector<Point> const &data() const { return _table; }

  // The unique x with a*x = b, and with x*a = b.
  Point left_div(Point a, Point b) const;
  Point right_div(Point b, Point a) const;

  // Relabel by a bijection phi: the result has phi(a)*phi(b) = phi(a*b).
  // phi must fix 0.
  LoopTable relabeled(std::vector<Point> const &phi) const;

  friend bool operator==(LoopTable const &, LoopTable const &) = default;
  friend auto operator<=>(LoopTable const &, LoopTable const &) = default;

private:
  std::size_t _order = 0;
  std::vector<Point> _table;
};

// FNV-1a hash of the table, printed as 16 hex digits.
std::string table_digest(LoopTable const &loop);

// y -> y*x and y -> x*y.
Perm right_translation(LoopTable const &loop, Point x);
Perm left_translation(LoopTable const &loop, Point x);

struct Translations
{
  std::vector<Perm> right;
  std::vector<Perm> left;
};

Translations translations(LoopTable const &loop);

struct MultGroups
{
  PermGroup rmlt;
  PermGroup mlt;
};

MultGroups mult_groups(LoopTable const &loop);

struct InnerGenerators
{
  std::vector<Perm> right;    // R_x R_y R_{xy}^-1
  std::vector<Perm> left;     // L_x L_y L_{yx}^-1
  std::vector<Perm> middle;   // T_x = R_x L_x^-1
};

// All families over the full loop, indexed by (x, y) row-major or by x.
InnerGenerators inner_generators(LoopTable const &loop);

// Distinct non-identity inner generators, in first-occurrence order.
std::vector<Perm> distinct_inner_generators(LoopTable const &loop);

// (a*b)p = (ap)*(bp) for all a, b.
bool is_automorphism(LoopTable const &loop, Perm const &p);

// R_i^p = R_{ip} for all i, with p fixing the neutral element.
bool is_automorphism_by_translations(LoopTable const &loop, Perm const &p);

struct LoopProperties
{
  bool associative;
  bool commutative;
  bool flexible;
  bool aaip;
  bool two_sided_inverses;
  std::optional<std::uint64_t> exponent;   // from left-bracketed powers
  bool powers_agree;                       // left and right bracketing agree
};

LoopProperties property_checks(LoopTable const &loop);

bool is_associative(LoopTable const &loop);
bool is_commutative(LoopTable const &loop);
bool is_flexible(LoopTable const &loop);

// Every right inner mapping R_{x,y} is an automorphism.
bool is_right_automorphic(LoopTable const &loop);

// Every inner generator is an automorphism.
bool is_automorphic(LoopTable const &loop);

// Right automorphic and every conjugation T_x is an automorphism.
bool is_automorphic_via_conjugations(LoopTable const &loop);

// Simplicity from primitivity of the multiplication group.
bool is_simple_by_primitivity(LoopTable const &loop);

// Simplicity from normal subloop closures.
bool is_simple_by_closure(LoopTable const &loop);

// Smallest normal subloop containing x: closure under the product, both
// divisions and every inner generator. Sorted.
std::vector<Point> normal_closure(LoopTable const &loop, Point x);

// Left-bracketed power order of x (x, xx, (xx)x, ...), if it reaches 1.
std::optional<std::uint64_t> left_power_order(LoopTable const &loop, Point x);
std::optional<std::uint64_t> right_power_order(LoopTable const &loop, Point x);

} // namespace loopforge
