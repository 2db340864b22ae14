#include "loopforge/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <set>
#include <unordered_set>

#include <omp.h>

#include "loopforge/errors.hpp"
#include "loopforge/folder.hpp"
#include "loopforge/group_ops.hpp"

namespace loopforge
{

std::string_view mode_name(Mode mode)
{
  switch (mode) {
  case Mode::ra:
    return "ra";
  case Mode::aut:
    return "aut";
  case Mode::caut:
    return "caut";
  }
  return "?";
}

std::optional<Mode> mode_from_name(std::string_view name)
{
  for (Mode m : {Mode::ra, Mode::aut, Mode::caut}) {
    if (mode_name(m) == name)
      return m;
  }
  return std::nullopt;
}

SearchOptions SearchOptions::defaults(Mode mode)
{
  SearchOptions o;
  o.mode = mode;
  o.skip_four_transitive = true;
  o.skip_solvable = mode != Mode::ra;
  o.parity_rule = mode != Mode::ra;
  return o;
}

namespace
{

bool is_prime_power(std::size_t n)
{
  if (n < 2)
    return false;
  std::size_t p = 2;
  while (n % p)
    ++p;
  while (n % p == 0)
    n /= p;
  return n == 1;
}

Decision skipped(std::string reason, std::optional<AffinePrune> affine = {})
{
  Decision d;
  d.skip = true;
  d.reason = std::move(reason);
  d.affine = std::move(affine);
  return d;
}

PermGroup point_stabilizer(PermGroup const &G, std::initializer_list<Point> pts)
{
  std::vector<Point> v(pts);
  return G.stabilizer(v);
}

} // anonymous namespace

AffinePrune affine_class_prune(PermGroup const &G, GroupInfo const &info,
                               SearchLimits const &limits)
{
  AffinePrune res;
  if (!info.affine || !is_prime_power(G.degree()))
    return res;

  PermGroup H = point_stabilizer(G, {0});
  auto orbs = orbits(H.generators(), G.degree());
  for (auto const &o : orbs)
    res.gamma = std::max<std::uint64_t>(res.gamma, o.size());

  if (H.is_trivial()) {
    res.applicable = true;
    res.reason = "trivial-stabilizer";
    res.method = "stabilizer is trivial";
    return res;
  }

  if (H.order() <= limits.class_enum) {
    auto m = min_nontrivial_class_size(H, res.gamma, limits.class_enum);
    res.method = "class enumeration of the stabilizer";
    if (m.kind == MinClassSize::Kind::found) {
      res.min_class_size = m.size;
      return res;
    }
    res.applicable = true;
    res.reason = "affine-class-bound";
    return res;
  }

  // Too large to enumerate. In a loop with this multiplication group the
  // element h_i attached to a point i centralizes H_i, so if every C_H(H_i)
  // lies in Z(H) no class of H can arise from the loop.
  res.method = "stabilizer centralizers are central";
  for (auto const &o : orbs) {
    if (o.front() == 0)
      continue;
    PermGroup Hi = point_stabilizer(G, {0, o.front()});
    PermGroup C = centralizer(H, Hi);
    for (auto const &c : C.generators()) {
      if (!is_central(H, c))
        return res;
    }
  }
  res.applicable = true;
  res.reason = "affine-class-bound";
  return res;
}

Decision prefilter(PermGroup const &G, GroupInfo const &info,
                   SearchOptions const &options)
{
  if (options.force_search)
    return {};

  std::size_t d = G.degree();
  if (options.skip_four_transitive && d >= 4 && is_k_transitive(G, 4))
    return skipped("4-transitive");

  bool automorphic = options.mode != Mode::ra;
  if (automorphic && options.skip_solvable && is_solvable(G))
    return skipped("solvable");

  if (options.parity_rule) {
    if (options.mode == Mode::aut && d % 2 == 1)
      return skipped("odd-degree");
    if (options.mode == Mode::caut && !std::has_single_bit(d))
      return skipped("not-power-of-two");
  }

  if (options.affine_prune && options.mode == Mode::caut) {
    auto prune = affine_class_prune(G, info, options.limits);
    if (prune.applicable)
      return skipped(prune.reason, prune);
    if (info.affine) {
      Decision d;
      d.affine = prune;
      return d;
    }
  }
  return {};
}

std::vector<PointOrbit> step1_orbit_reps(PermGroup const &H)
{
  std::vector<PointOrbit> res;
  for (auto &o : orbits(H.generators(), H.degree())) {
    if (o.front() == 0)
      continue;
    res.push_back({o.front(), std::move(o)});
  }
  return res;
}

std::vector<Perm> step2_candidates(PermGroup const &G, PermGroup const &H,
                                   Point i, SearchLimits const &limits)
{
  PermGroup Hi = point_stabilizer(H, {i});
  PermGroup C = centralizer(G, Hi);
  auto v = representative_action(C, 0, i);
  if (!v)
    return {};

  PermGroup C1 = point_stabilizer(C, {0});
  std::vector<Perm> res;
  try {
    for_each_in_right_coset(C1, *v, limits.coset, [&](Perm const &g) {
      if (g.is_fixed_point_free())
        res.push_back(g);
    });
  } catch (ResourceError const &e) {
    throw ResourceError("candidate coset for point " + std::to_string(i + 1) +
                        ": " + e.what());
  }
  std::sort(res.begin(), res.end());
  return res;
}

namespace
{

// Conjugation orbit r^H if it passes the size and quotient tests.
std::optional<std::vector<Perm>> conjugation_orbit(PermGroup const &H,
                                                   Perm const &r,
                                                   std::size_t expected)
{
  std::unordered_set<Perm, PermHash> seen{r};
  std::vector<Perm> orb{r};
  for (std::size_t k = 0; k < orb.size(); ++k) {
    for (auto const &h : H.generators()) {
      Perm c = orb[k].conjugate(h);
      if (seen.insert(c).second) {
        if (orb.size() == expected)
          return std::nullopt;
        orb.push_back(std::move(c));
      }
    }
  }
  if (orb.size() != expected)
    return std::nullopt;
  for (std::size_t k = 1; k < orb.size(); ++k) {
    if (!orb[k].quotient_fixed_point_free(r))
      return std::nullopt;
  }
  std::sort(orb.begin(), orb.end(),
            [](Perm const &a, Perm const &b) { return a[0] < b[0]; });
  return orb;
}

} // anonymous namespace

std::vector<CandidateOrbit> step3_candidate_orbits(
  PermGroup const &H, PointOrbit const &orbit, std::size_t layer,
  std::vector<Perm> const &candidates, bool parallel)
{
  std::size_t n = candidates.size();
  std::vector<std::optional<std::vector<Perm>>> found(n);

  if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::size_t k = 0; k < n; ++k)
      found[k] = conjugation_orbit(H, candidates[k], orbit.points.size());
  } else {
    for (std::size_t k = 0; k < n; ++k)
      found[k] = conjugation_orbit(H, candidates[k], orbit.points.size());
  }

  std::vector<CandidateOrbit> res;
  std::set<std::vector<Perm>> distinct;
  for (auto &f : found) {
    if (f && distinct.insert(*f).second)
      res.push_back({orbit.representative, layer, std::move(*f)});
  }
  return res;
}

bool step4_compatibility(CandidateOrbit const &a, CandidateOrbit const &b)
{
  Perm const &t = a.members.front();
  return std::all_of(b.members.begin(), b.members.end(), [&](Perm const &s) {
    return s.quotient_fixed_point_free(t);
  });
}

bool step4_compatibility_full(CandidateOrbit const &a, CandidateOrbit const &b)
{
  for (auto const &s : b.members) {
    for (auto const &t : a.members) {
      if (!s.quotient_fixed_point_free(t))
        return false;
    }
  }
  return true;
}

std::size_t CompatibilityGraph::edge_count() const
{
  std::size_t n = 0;
  for (auto const &row : adjacency) {
    for (auto w : row)
      n += static_cast<std::size_t>(std::popcount(w));
  }
  return n / 2;
}

CompatibilityGraph step4_graph(std::vector<CandidateOrbit> vertices,
                               std::size_t layers, bool parallel)
{
  CompatibilityGraph g;
  g.vertices = std::move(vertices);
  g.layers = layers;
  std::size_t n = g.vertices.size();
  std::size_t words = (n + 63) / 64;
  g.adjacency.assign(n, std::vector<std::uint64_t>(words, 0));

  // Each row fills only its upper triangle; the mirror is copied afterwards.
  auto fill_row = [&](std::size_t v) {
    for (std::size_t w = v + 1; w < n; ++w) {
      if (g.vertices[v].layer != g.vertices[w].layer &&
          step4_compatibility(g.vertices[v], g.vertices[w]))
        g.adjacency[v][w / 64] |= std::uint64_t{1} << (w % 64);
    }
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t v = 0; v < n; ++v)
      fill_row(v);
  } else {
    for (std::size_t v = 0; v < n; ++v)
      fill_row(v);
  }

  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = v + 1; w < n; ++w) {
      if (g.adjacent(v, w))
        g.adjacency[w][v / 64] |= std::uint64_t{1} << (v % 64);
    }
  }
  return g;
}

namespace
{

class Assembler
{
public:
  Assembler(CompatibilityGraph const &g, std::uint64_t node_limit)
    : _g(g), _limit(node_limit), _by_layer(g.layers)
  {
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      _by_layer[g.vertices[v].layer].push_back(v);
  }

  std::vector<std::size_t> const &layer(std::size_t l) const { return _by_layer[l]; }

  // Extends `chosen` (one vertex per layer below `l`) in every possible way.
  // Returns false once the node limit is exceeded.
  bool extend(std::size_t l, std::vector<std::size_t> &chosen,
              std::vector<std::uint64_t> const &mask,
              std::vector<std::vector<std::size_t>> &out, std::uint64_t &nodes) const
  {
    if (++nodes > _limit)
      return false;
    if (l == _by_layer.size()) {
      out.push_back(chosen);
      return true;
    }
    for (std::size_t v : _by_layer[l]) {
      if (!((mask[v / 64] >> (v % 64)) & 1u))
        continue;
      std::vector<std::uint64_t> next(mask.size());
      for (std::size_t k = 0; k < mask.size(); ++k)
        next[k] = mask[k] & _g.adjacency[v][k];
      chosen.push_back(v);
      bool ok = extend(l + 1, chosen, next, out, nodes);
      chosen.pop_back();
      if (!ok)
        return false;
    }
    return true;
  }

  std::vector<std::uint64_t> full_mask() const
  {
    std::size_t n = _g.vertices.size();
    std::vector<std::uint64_t> m((n + 63) / 64, ~std::uint64_t{0});
    if (n % 64)
      m.back() = (std::uint64_t{1} << (n % 64)) - 1;
    return m;
  }

private:
  CompatibilityGraph const &_g;
  std::uint64_t _limit;
  std::vector<std::vector<std::size_t>> _by_layer;
};

} // anonymous namespace

AssemblyResult step5_assemble(CompatibilityGraph const &graph,
                              std::uint64_t node_limit, bool parallel)
{
  AssemblyResult res;
  Assembler asm_(graph, node_limit);
  auto limit_error = [&] {
    return ResourceError("assembly exceeded " + std::to_string(node_limit) +
                         " search nodes");
  };

  if (!parallel || graph.layers == 0) {
    std::vector<std::size_t> chosen;
    if (!asm_.extend(0, chosen, asm_.full_mask(), res.selections, res.nodes))
      throw limit_error();
    return res;
  }

  // Branch on the first layer; every branch is searched to completion (or to
  // the limit on its own), so the node total does not depend on scheduling.
  auto const &first = asm_.layer(0);
  std::size_t n = first.size();
  std::vector<std::vector<std::vector<std::size_t>>> found(n);
  std::vector<std::uint64_t> nodes(n, 0);
  auto root = asm_.full_mask();

#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t v = first[k];
    std::vector<std::uint64_t> mask(root.size());
    for (std::size_t w = 0; w < root.size(); ++w)
      mask[w] = root[w] & graph.adjacency[v][w];
    std::vector<std::size_t> chosen{v};
    asm_.extend(1, chosen, mask, found[k], nodes[k]);
  }

  res.nodes = 1;
  for (std::size_t k = 0; k < n; ++k) {
    res.nodes += nodes[k];
    for (auto &s : found[k])
      res.selections.push_back(std::move(s));
  }
  if (res.nodes > node_limit)
    throw limit_error();
  return res;
}

std::vector<Perm> selection_transversal(CompatibilityGraph const &graph,
                                        std::vector<std::size_t> const &sel,
                                        std::size_t degree)
{
  std::vector<Perm> R(degree);
  R[0] = Perm(degree);
  for (std::size_t v : sel) {
    for (auto const &m : graph.vertices[v].members)
      R[m[0]] = m;
  }
  return R;
}

std::vector<LoopTable> all_loops(PermGroup const &G, SearchOptions const &options,
                                 SearchStats *stats)
{
  std::size_t d = G.degree();
  if (!is_transitive(G))
    throw InputError("search requires a transitive group");

  SearchStats local;
  SearchStats &st = stats ? *stats : local;

  PermGroup H = point_stabilizer(G, {0});
  auto layers = step1_orbit_reps(H);
  st.point_orbits = layers.size();

  std::vector<CandidateOrbit> vertices;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    auto cands = step2_candidates(G, H, layers[l].representative, options.limits);
    st.candidates += cands.size();
    auto orbs = step3_candidate_orbits(H, layers[l], l, cands, options.parallel);
    st.candidate_orbits += orbs.size();
    if (st.candidate_orbits > options.limits.orbits)
      throw ResourceError("more than " + std::to_string(options.limits.orbits) +
                          " candidate orbits");
    // An empty layer means no loop; later layers need not be computed.
    if (orbs.empty())
      return {};
    for (auto &o : orbs)
      vertices.push_back(std::move(o));
  }

  auto graph = step4_graph(std::move(vertices), layers.size(), options.parallel);
  st.edges = graph.edge_count();

  auto assembly = step5_assemble(graph, options.limits.clique_nodes, options.parallel);
  st.assembly_nodes = assembly.nodes;
  st.assembled = assembly.selections.size();

  std::vector<LoopTable> loops;
  for (auto const &sel : assembly.selections)
    loops.push_back(loop_from_folder(G, selection_transversal(graph, sel, d)));
  std::sort(loops.begin(), loops.end());
  return loops;
}

bool is_sound(PermGroup const &G, LoopTable const &loop)
{
  if (loop.order() != G.degree())
    return false;
  for (std::size_t x = 0; x < loop.order(); ++x) {
    if (!G.contains(right_translation(loop, static_cast<Point>(x))))
      return false;
  }
  PermGroup H = point_stabilizer(G, {0});
  for (auto const &h : H.generators()) {
    if (!is_automorphism(loop, h))
      return false;
  }
  return true;
}

namespace
{

FoundLoop classify(PermGroup const &G, LoopTable table, SearchOptions const &options)
{
  FoundLoop f;
  auto groups = mult_groups(table);
  f.associative = is_associative(table);
  f.commutative = is_commutative(table);
  f.simple = is_primitive(groups.mlt);
  f.mlt_order = to_string(groups.mlt.order());

  if (options.mode != Mode::ra) {
    bool mlt_is_g = groups.mlt.order() == G.order() &&
                    std::all_of(groups.mlt.generators().begin(),
                                groups.mlt.generators().end(),
                                [&](Perm const &p) { return G.contains(p); });
    if (options.automorphic_fast_path && mlt_is_g)
      f.automorphic = true;
    else
      f.automorphic = is_automorphic_via_conjugations(table);
  }
  f.table = std::move(table);
  return f;
}

bool keep(FoundLoop const &f, Mode mode)
{
  switch (mode) {
  case Mode::ra:
    return true;
  case Mode::aut:
    return f.simple && *f.automorphic;
  case Mode::caut:
    return f.simple && *f.automorphic && f.commutative;
  }
  return false;
}

} // anonymous namespace

SearchReport search_group(PermGroup const &G, GroupInfo const &info,
                          SearchOptions const &options)
{
  auto start = std::chrono::steady_clock::now();
  SearchReport rep;
  rep.group_name = info.name;
  rep.degree = G.degree();
  rep.group_order = to_string(G.order());

  try {
    rep.decision = prefilter(G, info, options);

    if (!rep.decision.skip) {
      for (auto &t : all_loops(G, options, &rep.stats)) {
        auto f = classify(G, std::move(t), options);
        if (keep(f, options.mode))
          rep.loops.push_back(std::move(f));
      }
      rep.stats.kept = rep.loops.size();
    }
  } catch (ResourceError const &e) {
    rep.decision.skip = true;
    rep.decision.reason = "resource";
    rep.decision.detail = e.what();
    rep.loops.clear();
  }

  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

} // namespace loopforge
