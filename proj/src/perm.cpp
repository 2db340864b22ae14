#include "loopforge/perm.hpp"

#include <algorithm>

#include "loopforge/errors.hpp"

namespace loopforge
{

Perm::Perm(std::size_t degree) : _img(degree)
{
  for (std::size_t k = 0; k < degree; ++k)
    _img[k] = static_cast<Point>(k);
}

Perm::Perm(std::vector<Point> images) : _img(std::move(images))
{
  std::vector<bool> seen(_img.size(), false);
  for (Point x : _img) {
    if (x >= _img.size() || seen[x])
      throw InputError("image list is not a permutation");
    seen[x] = true;
  }
}

Perm Perm::from_one_based(std::span<int const> images)
{
  std::vector<Point> img;
  img.reserve(images.size());
  for (int x : images) {
    if (x < 1 || static_cast<std::size_t>(x) > images.size())
      throw InputError("image " + std::to_string(x) + " out of range");
    img.push_back(static_cast<Point>(x - 1));
  }
  return Perm(std::move(img));
}

Perm Perm::inverse() const
{
  Perm res;
  res._img.resize(_img.size());
  for (std::size_t k = 0; k < _img.size(); ++k)
    res._img[_img[k]] = static_cast<Point>(k);
  return res;
}

bool Perm::is_identity() const
{
  for (std::size_t k = 0; k < _img.size(); ++k) {
    if (_img[k] != k)
      return false;
  }
  return true;
}

bool Perm::is_fixed_point_free() const
{
  for (std::size_t k = 0; k < _img.size(); ++k) {
    if (_img[k] == k)
      return false;
  }
  return true;
}

std::size_t Perm::moved_points() const
{
  std::size_t n = 0;
  for (std::size_t k = 0; k < _img.size(); ++k)
    n += _img[k] != k;
  return n;
}

Perm Perm::conjugate(Perm const &g) const
{
  // (k g) (g^-1 p g) = (k p) g
  Perm res;
  res._img.resize(_img.size());
  for (std::size_t k = 0; k < _img.size(); ++k)
    res._img[g._img[k]] = g._img[_img[k]];
  return res;
}

bool Perm::quotient_fixed_point_free(Perm const &other) const
{
  // k p q^-1 = k  <=>  k p = k q
  for (std::size_t k = 0; k < _img.size(); ++k) {
    if (_img[k] == other._img[k])
      return false;
  }
  return true;
}

std::size_t Perm::hash() const
{
  std::size_t h = 1469598103934665603ull;
  for (Point x : _img) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

Perm operator*(Perm const &lhs, Perm const &rhs)
{
  Perm res;
  res._img.resize(lhs._img.size());
  for (std::size_t k = 0; k < lhs._img.size(); ++k)
    res._img[k] = rhs._img[lhs._img[k]];
  return res;
}

Perm &Perm::operator*=(Perm const &rhs)
{
  for (auto &x : _img)
    x = rhs._img[x];
  return *this;
}

Perm compose(Perm const &p, Perm const &q)
{
  if (p.degree() != q.degree())
    throw InputError("degree mismatch: " + std::to_string(p.degree()) +
                     " vs " + std::to_string(q.degree()));
  return p * q;
}

Perm commutator(Perm const &p, Perm const &q)
{
  return p.inverse() * q.inverse() * p * q;
}

bool commutes(Perm const &p, Perm const &q)
{
  for (std::size_t k = 0; k < p.degree(); ++k) {
    if (q[p[k]] != p[q[k]])
      return false;
  }
  return true;
}

} // namespace loopforge
