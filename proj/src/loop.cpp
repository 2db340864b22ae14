#include "loopforge/loop.hpp"

#include <cstdio>
#include <numeric>
#include <unordered_set>

#include <json.hpp>

#include "loopforge/errors.hpp"
#include "loopforge/group_ops.hpp"

namespace loopforge
{

LoopTable::LoopTable(std::size_t order, std::vector<Point> table)
  : _order(order), _table(std::move(table))
{
  if (order < 1)
    throw InputError("loop order must be positive");
  if (_table.size() != order * order)
    throw InputError("table has " + std::to_string(_table.size()) +
                     " entries, expected " + std::to_string(order * order));

  std::vector<std::uint32_t> col_seen(order * order, 0);
  for (std::size_t a = 0; a < order; ++a) {
    std::vector<bool> row_seen(order, false);
    for (std::size_t b = 0; b < order; ++b) {
      Point c = _table[a * order + b];
      if (c >= order)
        throw InputError("entry " + std::to_string(c + 1) + " out of range");
      if (row_seen[c])
        throw InputError("row " + std::to_string(a + 1) + " repeats " +
                         std::to_string(c + 1));
      row_seen[c] = true;
      if (col_seen[b * order + c]++)
        throw InputError("column " + std::to_string(b + 1) + " repeats " +
                         std::to_string(c + 1));
    }
  }
  for (std::size_t k = 0; k < order; ++k) {
    if (_table[k] != k || _table[k * order] != k)
      throw InputError("row and column 1 must be the identity");
  }
}

LoopTable LoopTable::from_rows(std::vector<std::vector<int>> const &rows)
{
  std::size_t d = rows.size();
  std::vector<Point> table;
  table.reserve(d * d);
  for (std::size_t a = 0; a < d; ++a) {
    if (rows[a].size() != d)
      throw InputError("row " + std::to_string(a + 1) + " has " +
                       std::to_string(rows[a].size()) + " entries");
    for (int v : rows[a]) {
      if (v < 1 || static_cast<std::size_t>(v) > d)
        throw InputError("entry " + std::to_string(v) + " out of range");
      table.push_back(static_cast<Point>(v - 1));
    }
  }
  return LoopTable(d, std::move(table));
}

LoopTable LoopTable::from_json(std::string const &text)
{
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (nlohmann::json::parse_error const &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    auto rows = j.at("table").get<std::vector<std::vector<int>>>();
    auto order = j.at("order").get<std::int64_t>();
    if (order < 1 || static_cast<std::size_t>(order) != rows.size())
      throw InputError("order " + std::to_string(order) +
                       " does not match the table size");
    return from_rows(rows);
  } catch (nlohmann::json::exception const &e) {
    throw InputError(std::string("malformed loop file: ") + e.what());
  }
}

std::string LoopTable::to_json() const
{
  std::string out = "{\"order\": " + std::to_string(_order) + ", \"table\": [";
  for (std::size_t a = 0; a < _order; ++a) {
    out += a ? ",\n  [" : "\n  [";
    for (std::size_t b = 0; b < _order; ++b) {
      if (b)
        out += ',';
      out += std::to_string((*this)(static_cast<Point>(a), static_cast<Point>(b)) + 1);
    }
    out += ']';
  }
  out += "\n]}\n";
  return out;
}

Point LoopTable::left_div(Point a, Point b) const
{
  for (std::size_t x = 0; x < _order; ++x) {
    if (_table[a * _order + x] == b)
      return static_cast<Point>(x);
  }
  return 0;
}

Point LoopTable::right_div(Point b, Point a) const
{
  for (std::size_t x = 0; x < _order; ++x) {
    if (_table[x * _order + a] == b)
      return static_cast<Point>(x);
  }
  return 0;
}

LoopTable LoopTable::relabeled(std::vector<Point> const &phi) const
{
  if (phi.size() != _order || phi[0] != 0)
    throw InputError("relabeling must be a bijection fixing the neutral element");
  std::vector<Point> table(_order * _order);
  for (std::size_t a = 0; a < _order; ++a) {
    for (std::size_t b = 0; b < _order; ++b)
      table[phi[a] * _order + phi[b]] = phi[_table[a * _order + b]];
  }
  return LoopTable(_order, std::move(table));
}

std::string table_digest(LoopTable const &loop)
{
  std::uint64_t h = 1469598103934665603ull;
  for (Point x : loop.data()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Perm right_translation(LoopTable const &loop, Point x)
{
  std::vector<Point> img(loop.order());
  for (std::size_t y = 0; y < loop.order(); ++y)
    img[y] = loop(static_cast<Point>(y), x);
  return Perm(std::move(img));
}

Perm left_translation(LoopTable const &loop, Point x)
{
  std::vector<Point> img(loop.order());
  for (std::size_t y = 0; y < loop.order(); ++y)
    img[y] = loop(x, static_cast<Point>(y));
  return Perm(std::move(img));
}

Translations translations(LoopTable const &loop)
{
  Translations t;
  for (std::size_t x = 0; x < loop.order(); ++x) {
    t.right.push_back(right_translation(loop, static_cast<Point>(x)));
    t.left.push_back(left_translation(loop, static_cast<Point>(x)));
  }
  return t;
}

MultGroups mult_groups(LoopTable const &loop)
{
  auto t = translations(loop);
  std::size_t d = loop.order();
  ChainOptions options;
  options.detect_giant = true;
  PermGroup rmlt(d, t.right, options);
  std::vector<Perm> all = rmlt.generators();
  for (auto const &l : t.left) {
    if (!rmlt.contains(l))
      all.push_back(l);
  }
  if (all.size() == rmlt.generators().size())
    return {rmlt, rmlt};
  return {rmlt, PermGroup(d, std::move(all), options)};
}

InnerGenerators inner_generators(LoopTable const &loop)
{
  auto t = translations(loop);
  std::size_t d = loop.order();
  InnerGenerators g;
  g.right.reserve(d * d);
  g.left.reserve(d * d);
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) {
      Point xy = loop(static_cast<Point>(x), static_cast<Point>(y));
      Point yx = loop(static_cast<Point>(y), static_cast<Point>(x));
      g.right.push_back(t.right[x] * t.right[y] * t.right[xy].inverse());
      g.left.push_back(t.left[x] * t.left[y] * t.left[yx].inverse());
    }
    g.middle.push_back(t.right[x] * t.left[x].inverse());
  }
  return g;
}

namespace
{

void add_distinct(std::vector<Perm> const &src,
                  std::unordered_set<Perm, PermHash> &seen,
                  std::vector<Perm> &out)
{
  for (auto const &p : src) {
    if (!p.is_identity() && seen.insert(p).second)
      out.push_back(p);
  }
}

bool all_automorphisms(LoopTable const &loop, std::vector<Perm> const &maps)
{
  std::unordered_set<Perm, PermHash> seen;
  for (auto const &p : maps) {
    if (p.is_identity() || !seen.insert(p).second)
      continue;
    if (!is_automorphism(loop, p))
      return false;
  }
  return true;
}

template <typename Step>
std::optional<std::uint64_t> power_order(LoopTable const &loop, Point x, Step step)
{
  Point p = x;
  for (std::uint64_t n = 1; n <= loop.order(); ++n) {
    if (p == 0)
      return n;
    p = step(p);
  }
  return std::nullopt;
}

} // anonymous namespace

std::vector<Perm> distinct_inner_generators(LoopTable const &loop)
{
  auto g = inner_generators(loop);
  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> out;
  add_distinct(g.right, seen, out);
  add_distinct(g.left, seen, out);
  add_distinct(g.middle, seen, out);
  return out;
}

bool is_automorphism(LoopTable const &loop, Perm const &p)
{
  std::size_t d = loop.order();
  if (p.degree() != d)
    return false;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      Point ab = loop(static_cast<Point>(a), static_cast<Point>(b));
      if (p[ab] != loop(p[a], p[b]))
        return false;
    }
  }
  return true;
}

bool is_automorphism_by_translations(LoopTable const &loop, Perm const &p)
{
  std::size_t d = loop.order();
  if (p.degree() != d || p[0] != 0)
    return false;
  for (std::size_t i = 0; i < d; ++i) {
    Perm ri = right_translation(loop, static_cast<Point>(i));
    if (ri.conjugate(p) != right_translation(loop, p[i]))
      return false;
  }
  return true;
}

bool is_associative(LoopTable const &loop)
{
  std::size_t d = loop.order();
  for (Point a = 1; a < d; ++a) {
    for (Point b = 1; b < d; ++b) {
      Point ab = loop(a, b);
      for (Point c = 1; c < d; ++c) {
        if (loop(ab, c) != loop(a, loop(b, c)))
          return false;
      }
    }
  }
  return true;
}

bool is_commutative(LoopTable const &loop)
{
  std::size_t d = loop.order();
  for (Point a = 0; a < d; ++a) {
    for (Point b = a + 1; b < d; ++b) {
      if (loop(a, b) != loop(b, a))
        return false;
    }
  }
  return true;
}

bool is_flexible(LoopTable const &loop)
{
  std::size_t d = loop.order();
  for (Point x = 0; x < d; ++x) {
    for (Point y = 0; y < d; ++y) {
      if (loop(loop(x, y), x) != loop(x, loop(y, x)))
        return false;
    }
  }
  return true;
}

std::optional<std::uint64_t> left_power_order(LoopTable const &loop, Point x)
{
  return power_order(loop, x, [&](Point p) { return loop(p, x); });
}

std::optional<std::uint64_t> right_power_order(LoopTable const &loop, Point x)
{
  return power_order(loop, x, [&](Point p) { return loop(x, p); });
}

LoopProperties property_checks(LoopTable const &loop)
{
  std::size_t d = loop.order();
  LoopProperties props{};
  props.associative = is_associative(loop);
  props.commutative = is_commutative(loop);
  props.flexible = is_flexible(loop);

  // left inverse x^l with x^l x = 1, right inverse x^r with x x^r = 1
  std::vector<Point> linv(d), rinv(d);
  props.two_sided_inverses = true;
  for (Point x = 0; x < d; ++x) {
    linv[x] = loop.right_div(0, x);
    rinv[x] = loop.left_div(x, 0);
    props.two_sided_inverses = props.two_sided_inverses && linv[x] == rinv[x];
  }

  props.aaip = props.two_sided_inverses;
  for (Point x = 0; x < d && props.aaip; ++x) {
    for (Point y = 0; y < d; ++y) {
      if (rinv[loop(x, y)] != loop(rinv[y], rinv[x])) {
        props.aaip = false;
        break;
      }
    }
  }

  std::uint64_t exponent = 1;
  bool defined = true;
  props.powers_agree = true;
  for (Point x = 0; x < d; ++x) {
    auto lo = left_power_order(loop, x);
    if (!lo) {
      defined = false;
    } else {
      exponent = std::lcm(exponent, *lo);
    }

    Point lp = x, rp = x;
    for (std::size_t n = 1; n <= d; ++n) {
      if (lp != rp) {
        props.powers_agree = false;
        break;
      }
      if (lp == 0)
        break;
      lp = loop(lp, x);
      rp = loop(x, rp);
    }
  }
  if (defined)
    props.exponent = exponent;
  return props;
}

bool is_right_automorphic(LoopTable const &loop)
{
  return all_automorphisms(loop, inner_generators(loop).right);
}

bool is_automorphic(LoopTable const &loop)
{
  return all_automorphisms(loop, distinct_inner_generators(loop));
}

bool is_automorphic_via_conjugations(LoopTable const &loop)
{
  auto g = inner_generators(loop);
  return all_automorphisms(loop, g.right) && all_automorphisms(loop, g.middle);
}

bool is_simple_by_primitivity(LoopTable const &loop)
{
  if (loop.order() == 1)
    return true;
  return is_primitive(mult_groups(loop).mlt);
}

namespace
{

std::vector<Point> normal_closure_with(LoopTable const &loop, Point x,
                                       std::vector<Perm> const &inner)
{
  std::size_t d = loop.order();
  std::vector<bool> in(d, false);
  std::vector<Point> members;
  auto add = [&](Point y) {
    if (!in[y]) {
      in[y] = true;
      members.push_back(y);
    }
  };
  add(0);
  add(x);

  for (std::size_t i = 0; i < members.size(); ++i) {
    Point a = members[i];
    for (std::size_t j = 0; j <= i; ++j) {
      Point b = members[j];
      add(loop(a, b));
      add(loop(b, a));
      add(loop.left_div(a, b));
      add(loop.left_div(b, a));
      add(loop.right_div(a, b));
      add(loop.right_div(b, a));
    }
    for (auto const &h : inner)
      add(h[a]);
  }
  std::sort(members.begin(), members.end());
  return members;
}

} // anonymous namespace

std::vector<Point> normal_closure(LoopTable const &loop, Point x)
{
  return normal_closure_with(loop, x, distinct_inner_generators(loop));
}

bool is_simple_by_closure(LoopTable const &loop)
{
  std::size_t d = loop.order();
  auto inner = distinct_inner_generators(loop);
  for (Point x = 1; x < d; ++x) {
    if (normal_closure_with(loop, x, inner).size() != d)
      return false;
  }
  return true;
}

} // namespace loopforge
