#include "loopforge/perm_group.hpp"

#include <algorithm>
#include <limits>

#include "loopforge/errors.hpp"

namespace loopforge
{

namespace
{

std::vector<Point> base_ordering(std::size_t degree,
                                 std::span<Point const> prefix)
{
  std::vector<bool> used(degree, false);
  std::vector<Point> order;
  order.reserve(degree);

  for (Point p : prefix) {
    if (p >= degree)
      throw InputError("base point " + std::to_string(p + 1) + " out of range");
    if (!used[p]) {
      used[p] = true;
      order.push_back(p);
    }
  }
  for (std::size_t k = 0; k < degree; ++k) {
    if (!used[k])
      order.push_back(static_cast<Point>(k));
  }
  return order;
}

// Product replacement generator of pseudo-random elements.
class RandomElements
{
public:
  RandomElements(std::vector<Perm> const &gens, std::size_t degree,
                 std::uint64_t seed)
    : _rng(seed), _acc(degree)
  {
    if (gens.empty()) {
      _state.emplace_back(degree);
    } else {
      while (_state.size() < 10 || _state.size() < gens.size())
        _state.push_back(gens[_state.size() % gens.size()]);
    }
    for (int i = 0; i < 50; ++i)
      next();
  }

  Perm const &next()
  {
    std::uniform_int_distribution<std::size_t> pick(0, _state.size() - 1);
    std::size_t i = pick(_rng);
    std::size_t j = pick(_rng);
    if (i == j)
      j = (j + 1) % _state.size();
    if (_rng() & 1u)
      _state[i] *= _state[j];
    else
      _state[i] *= _state[j].inverse();
    _acc *= _state[i];
    return _acc;
  }

private:
  std::mt19937_64 _rng;
  std::vector<Perm> _state;
  Perm _acc;
};

class ChainBuilder
{
public:
  ChainBuilder(std::size_t degree, std::vector<Point> const &base)
    : _degree(degree)
  {
    _chain.levels.resize(degree);
    for (std::size_t i = 0; i < degree; ++i) {
      auto &lv = _chain.levels[i];
      lv.base = base[i];
      lv.orbit = {base[i]};
      lv.pos.assign(degree, -1);
      lv.pos[base[i]] = 0;
      lv.transversal = {Perm(degree)};
      lv.inv_transversal = {Perm(degree)};
    }
  }

  std::size_t first_moved_level(Perm const &p) const
  {
    for (std::size_t i = 0; i < _degree; ++i) {
      if (p[_chain.levels[i].base] != _chain.levels[i].base)
        return i;
    }
    return _degree;
  }

  void add_strong(Perm p)
  {
    std::size_t depth = first_moved_level(p);
    if (depth == _degree)
      return;
    _chain.strong.push_back(std::move(p));
    _chain.depth.push_back(depth);
    std::size_t idx = _chain.strong.size() - 1;
    for (std::size_t l = 0; l <= depth; ++l)
      extend_orbit(l, idx);
  }

  // Residue of g after sifting through levels from..end, and the level at
  // which sifting stopped (== degree if it went all the way).
  std::pair<Perm, std::size_t> sift(Perm g, std::size_t from) const
  {
    for (std::size_t l = from; l < _degree; ++l) {
      auto const &lv = _chain.levels[l];
      Point x = g[lv.base];
      if (x == lv.base)
        continue;
      std::int32_t q = lv.pos[x];
      if (q < 0)
        return {std::move(g), l};
      g *= lv.inv_transversal[q];
    }
    return {std::move(g), _degree};
  }

  BigInt order() const
  {
    BigInt n = 1;
    for (auto const &lv : _chain.levels)
      n *= lv.orbit.size();
    return n;
  }

  void deterministic()
  {
    std::vector<Point> g(_degree);
    std::size_t i = _degree;
    while (i-- > 0) {
      bool changed = false;
      auto const &lv = _chain.levels[i];
      // Schreier generators of a trivial level are strong generators of the
      // level below, which is already verified.
      if (lv.orbit.size() == 1)
        continue;

      for (std::size_t p = 0; p < lv.orbit.size() && !changed; ++p) {
        for (std::size_t s = 0; s < _chain.strong.size(); ++s) {
          if (_chain.depth[s] < i)
            continue;
          auto const &sg = _chain.strong[s];
          auto const &tp = lv.transversal[p];
          std::int32_t q = lv.pos[sg[lv.orbit[p]]];
          auto const &tq = lv.inv_transversal[q];

          bool trivial = true;
          for (std::size_t k = 0; k < _degree; ++k) {
            g[k] = tq[sg[tp[k]]];
            trivial = trivial && g[k] == k;
          }
          if (trivial)
            continue;

          auto [h, j] = sift(Perm(g), i + 1);
          if (!h.is_identity()) {
            add_strong(std::move(h));
            i = j + 1;
            changed = true;
            break;
          }
        }
      }
    }
  }

  bool randomized(BigInt const &target, std::uint64_t seed)
  {
    RandomElements rnd(_chain.strong, _degree, seed);
    std::size_t failures = 0;
    BigInt current = order();
    while (current < target) {
      auto [h, j] = sift(rnd.next(), 0);
      if (h.is_identity()) {
        if (++failures > 4000)
          return false;
        continue;
      }
      failures = 0;
      add_strong(std::move(h));
      current = order();
    }
    return current == target;
  }

  PermGroup::Chain take() { return std::move(_chain); }

private:
  void extend_orbit(std::size_t l, std::size_t new_gen)
  {
    auto &lv = _chain.levels[l];
    auto const &h = _chain.strong[new_gen];
    std::size_t old_size = lv.orbit.size();

    auto push = [&](Point y, std::size_t from, Perm const &s) {
      lv.pos[y] = static_cast<std::int32_t>(lv.orbit.size());
      lv.orbit.push_back(y);
      Perm t = lv.transversal[from] * s;
      lv.inv_transversal.push_back(t.inverse());
      lv.transversal.push_back(std::move(t));
    };

    for (std::size_t idx = 0; idx < old_size; ++idx) {
      Point y = h[lv.orbit[idx]];
      if (lv.pos[y] < 0)
        push(y, idx, h);
    }
    for (std::size_t idx = old_size; idx < lv.orbit.size(); ++idx) {
      for (std::size_t s = 0; s < _chain.strong.size(); ++s) {
        if (_chain.depth[s] < l)
          continue;
        Point y = _chain.strong[s][lv.orbit[idx]];
        if (lv.pos[y] < 0)
          push(y, idx, _chain.strong[s]);
      }
    }
  }

  std::size_t _degree;
  PermGroup::Chain _chain;
};

bool is_even(Perm const &g)
{
  std::size_t d = g.degree();
  std::vector<bool> done(d, false);
  std::size_t transpositions = 0;
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t len = 0;
    for (std::size_t x = k; !done[x]; x = g[x]) {
      done[x] = true;
      ++len;
    }
    if (len)
      transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

void check_degrees(std::size_t degree, std::vector<Perm> const &gens)
{
  if (degree < 1)
    throw InputError("permutation group degree must be positive");
  for (auto const &g : gens) {
    if (g.degree() != degree)
      throw InputError("generator of degree " + std::to_string(g.degree()) +
                       " in group of degree " + std::to_string(degree));
  }
}

std::vector<Perm> nonidentity(std::vector<Perm> gens, std::size_t degree)
{
  std::erase_if(gens, [](Perm const &g) { return g.is_identity(); });
  if (gens.empty())
    gens.emplace_back(degree);
  return gens;
}

std::shared_ptr<PermGroup::Chain const>
build_chain(std::size_t degree, std::vector<Perm> const &strong_seed,
            ChainOptions const &options)
{
  ChainBuilder builder(degree, base_ordering(degree, options.base_prefix));
  for (auto const &g : strong_seed)
    builder.add_strong(g);

  bool done = false;
  if (options.known_order) {
    done = builder.randomized(*options.known_order, options.seed);
  } else if (options.detect_giant && degree > 2) {
    bool even = std::all_of(strong_seed.begin(), strong_seed.end(),
                            [](Perm const &g) { return is_even(g); });
    BigInt target = 1;
    for (std::size_t k = 2; k <= degree; ++k)
      target *= k;
    if (even)
      target /= 2;
    done = builder.randomized(target, options.seed);
  }
  if (!done)
    builder.deterministic();

  return std::make_shared<PermGroup::Chain const>(builder.take());
}

} // anonymous namespace

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators,
                     ChainOptions const &options)
  : _degree(degree)
{
  check_degrees(degree, generators);
  _generators = nonidentity(std::move(generators), degree);
  _chain = build_chain(degree, _generators, options);
  _order = 1;
  for (auto const &lv : _chain->levels)
    _order *= lv.orbit.size();
}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators,
                     std::shared_ptr<Chain const> chain)
  : _degree(degree), _generators(std::move(generators)),
    _chain(std::move(chain))
{
  _order = 1;
  for (auto const &lv : _chain->levels)
    _order *= lv.orbit.size();
}

PermGroup PermGroup::trivial(std::size_t degree)
{
  return PermGroup(degree, {Perm(degree)});
}

std::optional<std::uint64_t> PermGroup::order_u64() const
{
  if (_order > std::numeric_limits<std::uint64_t>::max())
    return std::nullopt;
  return _order.convert_to<std::uint64_t>();
}

std::vector<Point> PermGroup::base() const
{
  std::vector<Point> res;
  for (auto const &lv : _chain->levels) {
    if (lv.orbit.size() > 1)
      res.push_back(lv.base);
  }
  return res;
}

std::vector<std::size_t> PermGroup::basic_orbit_sizes() const
{
  std::vector<std::size_t> res;
  for (auto const &lv : _chain->levels) {
    if (lv.orbit.size() > 1)
      res.push_back(lv.orbit.size());
  }
  return res;
}

bool PermGroup::contains(Perm const &p) const
{
  if (p.degree() != _degree)
    throw InputError("membership test with permutation of degree " +
                     std::to_string(p.degree()) + " in group of degree " +
                     std::to_string(_degree));
  Perm g = p;
  for (auto const &lv : _chain->levels) {
    Point x = g[lv.base];
    if (x == lv.base)
      continue;
    std::int32_t q = lv.pos[x];
    if (q < 0)
      return false;
    g *= lv.inv_transversal[q];
  }
  return g.is_identity();
}

PermGroup PermGroup::with_base(std::span<Point const> prefix) const
{
  bool matches = prefix.size() <= _chain->levels.size();
  for (std::size_t i = 0; matches && i < prefix.size(); ++i)
    matches = _chain->levels[i].base == prefix[i];
  if (matches)
    return *this;

  ChainOptions options;
  options.base_prefix.assign(prefix.begin(), prefix.end());
  options.known_order = _order;
  return PermGroup(_degree, _generators,
                   build_chain(_degree, _chain->strong, options));
}

PermGroup PermGroup::stabilizer(std::span<Point const> points) const
{
  PermGroup rebased = with_base(points);
  Chain sub = rebased.chain();
  std::size_t k = points.size();

  for (std::size_t l = 0; l < k; ++l) {
    auto &lv = sub.levels[l];
    for (Point x : lv.orbit)
      lv.pos[x] = -1;
    lv.orbit = {lv.base};
    lv.pos[lv.base] = 0;
    lv.transversal = {Perm(_degree)};
    lv.inv_transversal = {Perm(_degree)};
  }

  Chain filtered;
  filtered.levels = std::move(sub.levels);
  for (std::size_t s = 0; s < sub.strong.size(); ++s) {
    if (sub.depth[s] >= k) {
      filtered.strong.push_back(sub.strong[s]);
      filtered.depth.push_back(sub.depth[s]);
    }
  }

  std::vector<Perm> gens = filtered.strong;
  if (gens.empty())
    gens.emplace_back(_degree);
  return PermGroup(_degree, std::move(gens),
                   std::make_shared<Chain const>(std::move(filtered)));
}

void PermGroup::for_each_element(std::function<void(Perm const &)> const &fn,
                                 std::uint64_t limit) const
{
  if (_order > limit)
    throw ResourceError("group of order " + to_string(_order) +
                        " exceeds the element limit " + std::to_string(limit));

  std::vector<Level const *> levels;
  for (auto const &lv : _chain->levels) {
    if (lv.orbit.size() > 1)
      levels.push_back(&lv);
  }

  // element = u_last * ... * u_1 * u_0, built from the top level down
  std::function<void(std::size_t, Perm const &)> rec =
    [&](std::size_t l, Perm const &suffix) {
      if (l == levels.size()) {
        fn(suffix);
        return;
      }
      for (auto const &u : levels[l]->transversal)
        rec(l + 1, u * suffix);
    };
  rec(0, Perm(_degree));
}

std::vector<Perm> PermGroup::elements(std::uint64_t limit) const
{
  std::vector<Perm> res;
  for_each_element([&res](Perm const &g) { res.push_back(g); }, limit);
  return res;
}

Perm PermGroup::random_element(std::mt19937_64 &rng) const
{
  Perm g(_degree);
  for (auto const &lv : _chain->levels) {
    if (lv.orbit.size() == 1)
      continue;
    std::uniform_int_distribution<std::size_t> pick(0, lv.orbit.size() - 1);
    g = lv.transversal[pick(rng)] * g;
  }
  return g;
}

std::string to_string(BigInt const &n) { return n.str(); }

} // namespace loopforge
