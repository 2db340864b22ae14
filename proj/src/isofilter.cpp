#include "loopforge/isofilter.hpp"

#include <algorithm>
#include <map>

namespace loopforge
{

namespace
{

std::vector<std::size_t> cycle_type(LoopTable const &loop, Point x, bool row)
{
  std::size_t d = loop.order();
  std::vector<bool> done(d, false);
  std::vector<std::size_t> lengths;
  for (Point y = 0; y < d; ++y) {
    if (done[y])
      continue;
    std::size_t len = 0;
    for (Point z = y; !done[z]; z = row ? loop(x, z) : loop(z, x)) {
      done[z] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

// Isomorphism-invariant description of a single element.
struct ElementInvariant
{
  std::uint64_t left_order;
  std::uint64_t right_order;
  std::vector<std::size_t> row_type;
  std::vector<std::size_t> column_type;
  Point square_is_one;

  auto operator<=>(ElementInvariant const &) const = default;
};

ElementInvariant element_invariant(LoopTable const &loop, Point x)
{
  return {left_power_order(loop, x).value_or(0),
          right_power_order(loop, x).value_or(0),
          cycle_type(loop, x, true), cycle_type(loop, x, false),
          static_cast<Point>(loop(x, x) == 0)};
}

class IsoSearch
{
public:
  IsoSearch(LoopTable const &a, LoopTable const &b) : _a(a), _b(b), _d(a.order())
  {}

  std::optional<std::vector<Point>> run()
  {
    if (!classify())
      return std::nullopt;
    plan();
    _phi.assign(_d, -1);
    _used.assign(_d, false);
    _phi[0] = 0;
    _used[0] = true;
    if (descend(0))
      return std::vector<Point>(_phi.begin(), _phi.end());
    return std::nullopt;
  }

private:
  struct Triple
  {
    Point x, y, xy;
  };

  bool classify()
  {
    std::map<ElementInvariant, std::size_t> ids;
    auto id_of = [&](ElementInvariant const &inv) {
      auto [it, inserted] = ids.try_emplace(inv, ids.size());
      return it->second;
    };
    _class_a.resize(_d);
    _class_b.resize(_d);
    for (Point x = 0; x < _d; ++x)
      _class_a[x] = id_of(element_invariant(_a, x));
    for (Point x = 0; x < _d; ++x)
      _class_b[x] = id_of(element_invariant(_b, x));

    _count.assign(ids.size(), 0);
    std::vector<std::size_t> count_b(ids.size(), 0);
    for (Point x = 0; x < _d; ++x) {
      ++_count[_class_a[x]];
      ++count_b[_class_b[x]];
    }
    return _count == count_b;
  }

  // Greedy generating set of a, rarest class first, with the products that
  // reach every element from the generators.
  void plan()
  {
    std::vector<bool> known(_d, false);
    std::vector<Point> order{0};
    known[0] = true;
    std::size_t processed = 0;

    while (order.size() < _d) {
      Point g = 0;
      bool have = false;
      for (Point x = 1; x < _d; ++x) {
        if (known[x])
          continue;
        if (!have || _count[_class_a[x]] < _count[_class_a[g]]) {
          g = x;
          have = true;
        }
      }
      _gens.push_back(g);
      _stages.emplace_back();
      known[g] = true;
      order.push_back(g);

      for (; processed < order.size(); ++processed) {
        Point p = order[processed];
        for (std::size_t q = 0; q <= processed; ++q) {
          Point r = order[q];
          for (auto [x, y] : {std::pair{p, r}, std::pair{r, p}}) {
            Point z = _a(x, y);
            if (!known[z]) {
              known[z] = true;
              order.push_back(z);
              _stages.back().push_back({x, y, z});
            }
          }
        }
      }
    }
  }

  bool descend(std::size_t stage)
  {
    if (stage == _gens.size())
      return verify();

    Point g = _gens[stage];
    for (Point y = 1; y < _d; ++y) {
      if (_used[y] || _class_b[y] != _class_a[g])
        continue;
      std::vector<Point> assigned{g};
      _phi[g] = y;
      _used[y] = true;

      bool ok = true;
      for (auto const &t : _stages[stage]) {
        Point img = _b(static_cast<Point>(_phi[t.x]), static_cast<Point>(_phi[t.y]));
        if (_used[img] || _class_b[img] != _class_a[t.xy]) {
          ok = false;
          break;
        }
        _phi[t.xy] = img;
        _used[img] = true;
        assigned.push_back(t.xy);
      }

      if (ok && descend(stage + 1))
        return true;

      for (Point x : assigned) {
        _used[static_cast<Point>(_phi[x])] = false;
        _phi[x] = -1;
      }
    }
    return false;
  }

  bool verify() const
  {
    for (Point x = 0; x < _d; ++x) {
      for (Point y = 0; y < _d; ++y) {
        if (_phi[_a(x, y)] != _b(static_cast<Point>(_phi[x]), static_cast<Point>(_phi[y])))
          return false;
      }
    }
    return true;
  }

  LoopTable const &_a;
  LoopTable const &_b;
  Point _d;
  std::vector<std::size_t> _class_a, _class_b, _count;
  std::vector<Point> _gens;
  std::vector<std::vector<Triple>> _stages;
  std::vector<std::int32_t> _phi;
  std::vector<bool> _used;
};

} // anonymous namespace

LoopFingerprint fingerprint(LoopTable const &loop)
{
  LoopFingerprint fp;
  std::size_t d = loop.order();
  fp.order = d;
  for (Point x = 0; x < d; ++x) {
    fp.row_cycle_types.push_back(cycle_type(loop, x, true));
    fp.power_orders.emplace_back(left_power_order(loop, x).value_or(0),
                                 right_power_order(loop, x).value_or(0));
    Point sq = loop(x, x);
    fp.idempotents += sq == x;
    fp.involutions += x != 0 && sq == 0;
  }
  std::sort(fp.row_cycle_types.begin(), fp.row_cycle_types.end());
  std::sort(fp.power_orders.begin(), fp.power_orders.end());
  auto groups = mult_groups(loop);
  fp.mlt_order = to_string(groups.mlt.order());
  fp.rmlt_order = to_string(groups.rmlt.order());
  return fp;
}

std::optional<std::vector<Point>> find_isomorphism(LoopTable const &a,
                                                   LoopTable const &b)
{
  if (a.order() != b.order())
    return std::nullopt;
  if (a.order() == 1)
    return std::vector<Point>{0};
  auto phi = IsoSearch(a, b).run();
  if (phi && a.relabeled(*phi) != b)
    return std::nullopt;
  return phi;
}

bool are_isomorphic(LoopTable const &a, LoopTable const &b)
{
  return find_isomorphism(a, b).has_value();
}

std::vector<LoopTable> filter_up_to_isomorphism(std::vector<LoopTable> loops)
{
  std::sort(loops.begin(), loops.end());
  loops.erase(std::unique(loops.begin(), loops.end()), loops.end());

  std::map<LoopFingerprint, std::vector<std::size_t>> buckets;
  std::vector<LoopTable> reps;
  for (auto &loop : loops) {
    auto &bucket = buckets[fingerprint(loop)];
    bool seen = std::any_of(bucket.begin(), bucket.end(), [&](std::size_t r) {
      return are_isomorphic(reps[r], loop);
    });
    if (!seen) {
      bucket.push_back(reps.size());
      reps.push_back(std::move(loop));
    }
  }
  return reps;
}

} // namespace loopforge
