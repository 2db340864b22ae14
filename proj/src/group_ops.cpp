#include "loopforge/group_ops.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "loopforge/errors.hpp"

namespace loopforge
{

std::vector<Point> orbit(std::span<Perm const> gens, std::size_t degree,
                         Point point)
{
  if (point >= degree)
    throw InputError("point " + std::to_string(point + 1) +
                     " out of range for degree " + std::to_string(degree));

  std::vector<bool> seen(degree, false);
  std::vector<Point> orb{point};
  seen[point] = true;
  for (std::size_t i = 0; i < orb.size(); ++i) {
    for (auto const &g : gens) {
      Point y = g[orb[i]];
      if (!seen[y]) {
        seen[y] = true;
        orb.push_back(y);
      }
    }
  }
  std::sort(orb.begin(), orb.end());
  return orb;
}

std::vector<std::vector<Point>> orbits(std::span<Perm const> gens,
                                       std::size_t degree)
{
  std::vector<bool> done(degree, false);
  std::vector<std::vector<Point>> res;
  for (std::size_t x = 0; x < degree; ++x) {
    if (done[x])
      continue;
    auto orb = orbit(gens, degree, static_cast<Point>(x));
    for (Point y : orb)
      done[y] = true;
    res.push_back(std::move(orb));
  }
  return res;
}

std::optional<Perm> representative_action(PermGroup const &group, Point a,
                                          Point b)
{
  std::size_t d = group.degree();
  if (a >= d || b >= d)
    throw InputError("point out of range in representative_action");

  // Schreier tree: parent point and generator used to reach each point
  std::vector<std::int32_t> via(d, -1);
  std::vector<Point> parent(d);
  std::vector<Point> queue{a};
  via[a] = static_cast<std::int32_t>(group.generators().size());
  for (std::size_t i = 0; i < queue.size() && via[b] < 0; ++i) {
    auto const &gens = group.generators();
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Point y = gens[s][queue[i]];
      if (via[y] < 0) {
        via[y] = static_cast<std::int32_t>(s);
        parent[y] = queue[i];
        queue.push_back(y);
      }
    }
  }
  if (via[b] < 0)
    return std::nullopt;

  std::vector<std::size_t> word;
  for (Point x = b; x != a; x = parent[x])
    word.push_back(static_cast<std::size_t>(via[x]));

  Perm g(d);
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    g *= group.generators()[*it];
  return g;
}

void for_each_in_right_coset(PermGroup const &subgroup, Perm const &rep,
                             std::uint64_t limit,
                             std::function<void(Perm const &)> const &fn)
{
  if (rep.degree() != subgroup.degree())
    throw InputError("coset representative has the wrong degree");
  subgroup.for_each_element([&](Perm const &s) { fn(s * rep); }, limit);
}

std::vector<Perm> right_coset(PermGroup const &subgroup, Perm const &rep,
                              std::uint64_t limit)
{
  std::vector<Perm> res;
  for_each_in_right_coset(subgroup, rep, limit,
                          [&res](Perm const &g) { res.push_back(g); });
  return res;
}

namespace
{

// Partial bijection forced by commutation with a set of permutations: once
// x maps to y, x^k must map to y^k for every k.
class CommutingMap
{
public:
  CommutingMap(std::span<Perm const> ks, std::vector<std::size_t> const &ksize,
               std::size_t degree)
    : _ks(ks), _ksize(ksize), _img(degree, -1), _pre(degree, -1)
  {}

  std::int32_t image(Point x) const { return _img[x]; }
  std::size_t mark() const { return _trail.size(); }

  void undo(std::size_t mark)
  {
    while (_trail.size() > mark) {
      Point x = _trail.back();
      _trail.pop_back();
      _pre[static_cast<std::size_t>(_img[x])] = -1;
      _img[x] = -1;
    }
  }

  // Returns false (leaving a partial assignment to be undone) on conflict.
  bool assign(Point x, Point y)
  {
    _queue.clear();
    _queue.emplace_back(x, y);
    for (std::size_t i = 0; i < _queue.size(); ++i) {
      auto [a, b] = _queue[i];
      if (_img[a] >= 0) {
        if (_img[a] != b)
          return false;
        continue;
      }
      if (_pre[b] >= 0 || _ksize[a] != _ksize[b])
        return false;
      _img[a] = b;
      _pre[b] = a;
      _trail.push_back(a);
      for (auto const &k : _ks)
        _queue.emplace_back(k[a], k[b]);
    }
    return true;
  }

private:
  std::span<Perm const> _ks;
  std::vector<std::size_t> const &_ksize;
  std::vector<std::int32_t> _img;
  std::vector<std::int32_t> _pre;
  std::vector<Point> _trail;
  std::vector<std::pair<Point, Point>> _queue;
};

class CentralizerSearch
{
public:
  CentralizerSearch(PermGroup const &group, std::span<Perm const> ks,
                    std::vector<std::size_t> const &ksize,
                    std::uint64_t node_limit)
    : _levels(group.chain().levels), _ks(ks), _ksize(ksize),
      _degree(group.degree()), _map(ks, ksize, group.degree()),
      _node_limit(node_limit)
  {}

  // Generators of the centralizer and the lengths of its basic orbits.
  std::pair<std::vector<Perm>, BigInt> run()
  {
    std::vector<Perm> found;
    BigInt order = 1;

    for (std::size_t l = _levels.size(); l-- > 0;) {
      auto const &lv = _levels[l];
      if (lv.orbit.size() == 1)
        continue;

      auto reached = orbit_flags(found, lv.base);
      std::vector<Point> targets = lv.orbit;
      std::sort(targets.begin(), targets.end());

      for (Point gamma : targets) {
        if (reached[gamma] || _ksize[gamma] != _ksize[lv.base])
          continue;

        _map.undo(0);
        bool ok = true;
        for (std::size_t j = 0; j < l && ok; ++j)
          ok = _map.assign(_levels[j].base, _levels[j].base);
        ok = ok && _map.assign(lv.base, gamma);
        if (!ok)
          continue;

        auto const &u = lv.transversal[static_cast<std::size_t>(lv.pos[gamma])];
        if (auto g = descend(l + 1, u)) {
          found.push_back(std::move(*g));
          reached = orbit_flags(found, lv.base);
        }
      }
      order *= std::count(reached.begin(), reached.end(), true);
    }
    _map.undo(0);
    return {std::move(found), order};
  }

private:
  std::vector<bool> orbit_flags(std::vector<Perm> const &gens, Point p) const
  {
    std::vector<bool> flags(_degree, false);
    for (Point x : orbit(gens, _degree, p))
      flags[x] = true;
    return flags;
  }

  // `prefix` is the product of the transversal elements chosen for the
  // levels above `l`; the final element is (u_last ... u_l) * prefix.
  std::optional<Perm> descend(std::size_t l, Perm const &prefix)
  {
    if (++_nodes > _node_limit)
      throw ResourceError("centralizer search exceeded " +
                          std::to_string(_node_limit) + " nodes");

    if (l == _levels.size()) {
      for (auto const &k : _ks) {
        if (!commutes(prefix, k))
          return std::nullopt;
      }
      return prefix;
    }

    auto const &lv = _levels[l];
    std::size_t mark = _map.mark();

    if (lv.orbit.size() == 1) {
      if (!_map.assign(lv.base, prefix[lv.base])) {
        _map.undo(mark);
        return std::nullopt;
      }
      auto res = descend(l + 1, prefix);
      _map.undo(mark);
      return res;
    }

    std::int32_t forced = _map.image(lv.base);
    if (forced >= 0) {
      // gamma * prefix must equal the forced image
      Point gamma = 0;
      while (prefix[gamma] != forced)
        ++gamma;
      std::int32_t q = lv.pos[gamma];
      if (q < 0)
        return std::nullopt;
      return descend(l + 1, lv.transversal[static_cast<std::size_t>(q)] * prefix);
    }

    for (std::size_t q = 0; q < lv.orbit.size(); ++q) {
      Point delta = prefix[lv.orbit[q]];
      if (_ksize[delta] != _ksize[lv.base])
        continue;
      if (_map.assign(lv.base, delta)) {
        if (auto res = descend(l + 1, lv.transversal[q] * prefix)) {
          _map.undo(mark);
          return res;
        }
      }
      _map.undo(mark);
    }
    return std::nullopt;
  }

  std::vector<PermGroup::Level> const &_levels;
  std::span<Perm const> _ks;
  std::vector<std::size_t> const &_ksize;
  std::size_t _degree;
  CommutingMap _map;
  std::uint64_t _node_limit;
  std::uint64_t _nodes = 0;
};

} // anonymous namespace

PermGroup centralizer(PermGroup const &group, std::span<Perm const> elements,
                      CentralizerOptions const &options)
{
  std::size_t d = group.degree();
  std::vector<Perm> ks;
  for (auto const &k : elements) {
    if (k.degree() != d)
      throw InputError("centralizer: element of the wrong degree");
    if (!k.is_identity())
      ks.push_back(k);
  }
  if (ks.empty())
    return group;

  if (options.brute_force_below > 0 && group.order() < options.brute_force_below)
    return centralizer_brute_force(group, ks, options.brute_force_below);

  // Base: nontrivial K-orbits (largest first) listed in BFS order, so that the
  // image of the first point of an orbit forces the images of the rest.
  auto orbs = orbits(ks, d);
  std::vector<std::size_t> ksize(d);
  for (auto const &o : orbs) {
    for (Point x : o)
      ksize[x] = o.size();
  }
  std::stable_sort(orbs.begin(), orbs.end(),
                   [](auto const &a, auto const &b) { return a.size() > b.size(); });

  std::vector<Point> prefix;
  for (auto const &o : orbs) {
    if (o.size() == 1)
      break;
    std::vector<bool> seen(d, false);
    std::size_t start = prefix.size();
    prefix.push_back(o.front());
    seen[o.front()] = true;
    for (std::size_t i = start; i < prefix.size(); ++i) {
      for (auto const &k : ks) {
        Point y = k[prefix[i]];
        if (!seen[y]) {
          seen[y] = true;
          prefix.push_back(y);
        }
      }
    }
  }

  PermGroup rebased = group.with_base(prefix);
  CentralizerSearch search(rebased, ks, ksize, options.node_limit);
  auto [gens, order] = search.run();
  if (gens.empty())
    return PermGroup::trivial(d);

  ChainOptions chain_options;
  chain_options.known_order = order;
  return PermGroup(d, std::move(gens), chain_options);
}

PermGroup centralizer(PermGroup const &group, PermGroup const &subgroup,
                      CentralizerOptions const &options)
{
  return centralizer(group, subgroup.generators(), options);
}

PermGroup centralizer_brute_force(PermGroup const &group,
                                  std::span<Perm const> elements,
                                  std::uint64_t limit)
{
  std::vector<Perm> members;
  group.for_each_element(
    [&](Perm const &g) {
      for (auto const &k : elements) {
        if (!commutes(g, k))
          return;
      }
      members.push_back(g);
    },
    limit);

  ChainOptions options;
  options.known_order = members.size();
  return PermGroup(group.degree(), std::move(members), options);
}

bool is_transitive(std::span<Perm const> gens, std::size_t degree)
{
  return orbit(gens, degree, 0).size() == degree;
}

bool is_transitive(PermGroup const &group)
{
  return is_transitive(group.generators(), group.degree());
}

bool is_k_transitive(PermGroup const &group, std::size_t k)
{
  std::size_t d = group.degree();
  if (k > d)
    throw InputError("transitivity degree exceeds the group degree");
  if (k == 0)
    return true;

  std::vector<Point> prefix(k);
  std::iota(prefix.begin(), prefix.end(), Point{0});
  PermGroup rebased = group.with_base(prefix);
  auto const &levels = rebased.chain().levels;
  for (std::size_t i = 0; i < k; ++i) {
    if (levels[i].orbit.size() != d - i)
      return false;
  }
  return true;
}

namespace
{

struct UnionFind
{
  explicit UnionFind(std::size_t n) : parent(n)
  {
    std::iota(parent.begin(), parent.end(), Point{0});
  }

  Point find(Point x)
  {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  std::vector<Point> parent;
};

} // anonymous namespace

std::vector<Point> minimal_block(std::span<Perm const> gens,
                                 std::size_t degree, Point a, Point b)
{
  UnionFind uf(degree);
  std::deque<std::pair<Point, Point>> queue;

  auto unite = [&](Point x, Point y) {
    Point rx = uf.find(x), ry = uf.find(y);
    if (rx == ry)
      return;
    if (rx > ry)
      std::swap(rx, ry);
    uf.parent[ry] = rx;
    queue.emplace_back(rx, ry);
  };

  unite(a, b);
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    for (auto const &g : gens)
      unite(g[x], g[y]);
  }

  std::vector<Point> block;
  Point root = uf.find(a);
  for (std::size_t x = 0; x < degree; ++x) {
    if (uf.find(static_cast<Point>(x)) == root)
      block.push_back(static_cast<Point>(x));
  }
  return block;
}

bool is_primitive(std::span<Perm const> gens, std::size_t degree)
{
  if (!is_transitive(gens, degree))
    return false;
  for (std::size_t b = 1; b < degree; ++b) {
    if (minimal_block(gens, degree, 0, static_cast<Point>(b)).size() != degree)
      return false;
  }
  return true;
}

bool is_primitive(PermGroup const &group)
{
  return is_primitive(group.generators(), group.degree());
}

PermGroup normal_closure(PermGroup const &group, std::span<Perm const> elements)
{
  std::size_t d = group.degree();
  std::vector<Perm> gens;
  for (auto const &e : elements) {
    if (!e.is_identity())
      gens.push_back(e);
  }
  if (gens.empty())
    return PermGroup::trivial(d);

  // The closure often is the whole group; try that certificate first.
  ChainOptions hint;
  hint.known_order = group.order();
  PermGroup whole(d, gens, hint);
  if (whole.order() == group.order())
    return whole;

  // Otherwise add elements one at a time, keeping only those that enlarge
  // the subgroup so the generating set stays short.
  PermGroup closure = PermGroup::trivial(d);
  std::vector<Perm> kept;
  std::deque<Perm> queue(gens.begin(), gens.end());
  while (!queue.empty()) {
    Perm x = std::move(queue.front());
    queue.pop_front();
    if (closure.contains(x))
      continue;
    kept.push_back(x);
    closure = PermGroup(d, kept);
    for (auto const &g : group.generators())
      queue.push_back(x.conjugate(g));
  }
  return closure;
}

PermGroup derived_subgroup(PermGroup const &group)
{
  auto const &gens = group.generators();
  std::vector<Perm> comms;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      comms.push_back(commutator(gens[i], gens[j]));
  }
  return normal_closure(group, comms);
}

bool is_solvable(PermGroup const &group)
{
  PermGroup current = group;
  while (!current.is_trivial()) {
    PermGroup next = derived_subgroup(current);
    if (next.order() == current.order())
      return false;
    current = std::move(next);
  }
  return true;
}

bool is_central(PermGroup const &group, Perm const &h)
{
  return std::all_of(group.generators().begin(), group.generators().end(),
                     [&h](Perm const &g) { return commutes(g, h); });
}

namespace
{

// Fills `members` with the class of h, or returns false past the cutoff.
bool close_under_conjugation(PermGroup const &group, Perm const &h,
                             std::uint64_t cutoff, std::vector<Perm> &members)
{
  std::unordered_set<Perm, PermHash> seen{h};
  members = {h};
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (auto const &g : group.generators()) {
      Perm c = members[i].conjugate(g);
      if (seen.insert(c).second) {
        if (members.size() >= cutoff)
          return false;
        members.push_back(std::move(c));
      }
    }
  }
  return true;
}

} // anonymous namespace

ConjugacyClassResult conjugacy_class(PermGroup const &group, Perm const &h,
                                     std::uint64_t cutoff)
{
  if (cutoff < 1)
    throw InputError("class cutoff must be positive");
  std::vector<Perm> members;
  ConjugacyClassResult res{h, std::nullopt, cutoff};
  if (close_under_conjugation(group, h, cutoff, members))
    res.size = members.size();
  return res;
}

std::vector<Perm> conjugacy_class_elements(PermGroup const &group,
                                           Perm const &h, std::uint64_t cutoff)
{
  std::vector<Perm> members;
  if (!close_under_conjugation(group, h, cutoff, members))
    members.clear();
  return members;
}

MinClassSize min_nontrivial_class_size(PermGroup const &group,
                                       std::uint64_t bound,
                                       std::uint64_t element_limit)
{
  if (group.order() > element_limit)
    throw ResourceError("class enumeration: group order " +
                        to_string(group.order()) + " exceeds " +
                        std::to_string(element_limit));

  bool noncentral = false;
  std::uint64_t best = 0;
  std::unordered_set<Perm, PermHash> classified;
  std::vector<Perm> members;

  group.for_each_element(
    [&](Perm const &h) {
      if (classified.contains(h) || is_central(group, h))
        return;
      noncentral = true;
      if (close_under_conjugation(group, h, bound, members)) {
        if (best == 0 || members.size() < best)
          best = members.size();
        classified.insert(members.begin(), members.end());
      }
    },
    element_limit);

  if (!noncentral)
    return {MinClassSize::Kind::no_nontrivial_class, 0};
  if (best == 0)
    return {MinClassSize::Kind::all_exceed_bound, 0};
  return {MinClassSize::Kind::found, best};
}

} // namespace loopforge
