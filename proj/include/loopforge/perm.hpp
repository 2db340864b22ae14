#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

/**
 * @file perm.hpp
 * @brief Permutations of {0, ..., d-1} acting from the right.
 *
 * Points are 0-based internally; every external format (cycle notation,
 * loop tables, JSON) is 1-based and converted at the boundary.
 *
 * Composition is left to right: `(p * q)[k] == q[p[k]]`, i.e. `k(pq) = (kp)q`.
 */

namespace loopforge
{

using Point = std::uint16_t;

class Perm
{
public:
  Perm() = default;

  // Identity of the given degree.
  explicit Perm(std::size_t degree);

  // Throws InputError unless `images` is a bijection of {0..n-1}.
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree) { return Perm(degree); }

  // Images given as 1-based values (the external convention).
  static Perm from_one_based(std::span<int const> images);

  std::size_t degree() const { return _img.size(); }
  Point operator[](std::size_t k) const { return _img[k]; }
  std::vector<Point> const &images() const { return _img; }

  Perm inverse() const;

  bool is_identity() const;
  bool is_fixed_point_free() const;
  bool fixes(Point k) const { return _img[k] == k; }
  std::size_t moved_points() const;

  // g^-1 * this * g, the image of this permutation under relabeling by g.
  Perm conjugate(Perm const &g) const;

  // this * other^-1 is fixed point free, computed without forming the inverse.
  bool quotient_fixed_point_free(Perm const &other) const;

  std::size_t hash() const;

  friend Perm operator*(Perm const &lhs, Perm const &rhs);
  Perm &operator*=(Perm const &rhs);

  friend bool operator==(Perm const &, Perm const &) = default;
  friend auto operator<=>(Perm const &, Perm const &) = default;

private:
  std::vector<Point> _img;
};

// Checked composition; throws InputError on degree mismatch.
Perm compose(Perm const &p, Perm const &q);

// Commutator p^-1 q^-1 p q.
Perm commutator(Perm const &p, Perm const &q);

bool commutes(Perm const &p, Perm const &q);

struct PermHash
{
  std::size_t operator()(Perm const &p) const { return p.hash(); }
};

} // namespace loopforge
