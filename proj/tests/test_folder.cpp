#include <doctest.h>

#include <algorithm>
#include <random>

#include "loopforge/catalog.hpp"
#include "loopforge/errors.hpp"
#include "loopforge/folder.hpp"
#include "loopforge/group_ops.hpp"
#include "loopforge/search.hpp"

#include "support/oracles.hpp"

using namespace loopforge;

namespace
{

Point const one = 0;

std::vector<Perm> rights(LoopTable const &q) { return translations(q).right; }

// Cayley table of a small group, identity first.
LoopTable group_table(PermGroup const &G)
{
  auto elems = G.elements(1000);
  std::sort(elems.begin(), elems.end());
  std::size_t n = elems.size();
  std::vector<Point> t(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto it = std::lower_bound(elems.begin(), elems.end(), elems[a] * elems[b]);
      t[a * n + b] = static_cast<Point>(it - elems.begin());
    }
  }
  return LoopTable(n, t);
}

} // anonymous namespace

TEST_CASE("folders of small loops")
{
  auto c3 = oracle::cyclic(3);
  auto f = folder_from_loop(c3);
  CHECK(f.G.order() == 3);
  CHECK(f.H.is_trivial());
  CHECK(f.R.size() == 3);
  for (auto const &r : f.R)
    CHECK(f.G.contains(r));

  for (std::size_t n = 1; n <= 6; ++n) {
    for (auto const &q : oracle::all_loops(n)) {
      auto fr = folder_from_loop(q, FolderScope::right);
      auto ff = folder_from_loop(q, FolderScope::full);
      CHECK(loop_from_folder(fr.R) == q);
      CHECK(loop_from_folder(fr.G, fr.R) == q);
      CHECK(loop_from_folder(ff.G, ff.R) == q);
      if (is_associative(q))
        CHECK(ff.H.is_trivial() == is_commutative(q));
    }
  }
}

TEST_CASE("building loops from transversals")
{
  auto c4 = oracle::cyclic(4);
  CHECK(loop_from_folder(rights(c4)) == c4);

  auto R = rights(c4);
  R[2] = R[3];
  CHECK_THROWS(loop_from_folder(R));
  try {
    // normal form holds, quotient of r_2 and r_3 has a fixed point
    std::vector<Perm> S = rights(oracle::cyclic(4));
    S[2] = parse_cycles("(1,3)", 4);
    S[3] = parse_cycles("(1,4)(2,3)", 4);
    loop_from_folder(S);
    FAIL("accepted a system with a fixed point");
  } catch (ConstructionError const &e) {
    CHECK(e.first != e.second);
  }

  std::mt19937_64 rng(6);
  auto fives = oracle::all_loops(5);
  for (int t = 0; t < 30; ++t) {
    auto const &q = fives[rng() % fives.size()];
    CHECK(loop_from_folder(rights(q)) == q);
  }
}

TEST_CASE("normalization of transversals")
{
  auto R = rights(oracle::cyclic(5));
  std::vector<Perm> shuffled(R.rbegin(), R.rend());
  CHECK(normalize_transversal(shuffled) == R);
  shuffled[0] = shuffled[1];
  CHECK_THROWS_AS(normalize_transversal(shuffled), InputError);
}

TEST_CASE("the coset construction agrees with the translation construction")
{
  for (auto const &e : oracle::shipped_catalog()) {
    if (!e.order || *e.order > 3000)
      continue;
    auto G = e.group();
    SearchOptions o = SearchOptions::defaults(Mode::ra);
    o.force_search = true;
    for (auto const &q : all_loops(G, o)) {
      auto R = rights(q);
      CHECK_MESSAGE(oracle::coset_loop(G, R) == q, e.name);
      CHECK(loop_from_folder(G, R) == q);
    }
  }
  for (std::size_t n = 4; n <= 6; ++n) {
    for (auto const &q : oracle::all_loops(n)) {
      auto f = folder_from_loop(q);
      CHECK(oracle::coset_loop(f.G, f.R) == q);
    }
  }
}

TEST_CASE("transversal predicates equal the coset counting definitions")
{
  std::mt19937_64 rng(12);
  std::size_t positives = 0, negatives = 0;
  for (auto const &e : oracle::shipped_catalog()) {
    if (!e.order || *e.order > 5000)
      continue;
    auto G = e.group();
    auto H = G.stabilizer(std::span<Point const>(&one, 1));
    SearchOptions o = SearchOptions::defaults(Mode::ra);
    o.force_search = true;
    std::vector<std::vector<Perm>> systems;
    for (auto const &q : all_loops(G, o))
      systems.push_back(rights(q));
    // random transversals: one random element per coset
    for (int t = 0; t < 3; ++t) {
      std::vector<Perm> R;
      for (Point i = 0; i < G.degree(); ++i) {
        auto rep = representative_action(G, 0, i);
        R.push_back(i == 0 ? Perm::identity(G.degree()) : H.random_element(rng) * *rep);
      }
      systems.push_back(R);
    }
    // a non-transversal
    auto bad = systems.back();
    bad[2] = bad[1];
    systems.push_back(bad);

    for (auto const &R : systems) {
      bool fast = is_transversal_to_all_conjugates(G, H, R);
      CHECK_MESSAGE(fast == oracle::transversal_to_conjugates(G, R), e.name);
      CHECK(is_right_transversal(G, R) == oracle::right_transversal(G, R));
      (fast ? positives : negatives)++;
    }
  }
  CHECK(positives > 0);
  CHECK(negatives > 0);
}

TEST_CASE("regular subgroups are transversal to all conjugates")
{
  auto c = PermGroup(6, {parse_cycles("(1,2,3,4,5,6)", 6)});
  auto S6 = PermGroup(6, {parse_cycles("(1,2)", 6), parse_cycles("(1,2,3,4,5,6)", 6)});
  auto H = S6.stabilizer(std::span<Point const>(&one, 1));
  auto R = normalize_transversal(c.elements(10));
  CHECK(is_transversal_to_all_conjugates(S6, H, R));
  R[3] = R[2];
  CHECK_FALSE(is_transversal_to_all_conjugates(S6, H, R));
}

TEST_CASE("reformulation conditions")
{
  // C_8: imprimitive
  auto f8 = folder_from_loop(oracle::cyclic(8));
  auto r8 = verify_reformulation(f8.G, f8.R);
  CHECK_FALSE(r8.a_primitive_power_of_two);
  CHECK(r8.b_right_transversal);
  CHECK(r8.c_generates);
  CHECK_FALSE(r8.all());

  auto v4 = folder_from_loop(oracle::product(oracle::cyclic(2), oracle::cyclic(2)));
  CHECK_FALSE(verify_reformulation(v4.G, v4.R).a_primitive_power_of_two);

  // non-transversal: the rest is still evaluated
  auto R = f8.R;
  R[3] = R[2];
  auto bad = verify_reformulation(f8.G, R);
  CHECK_FALSE(bad.b_right_transversal);
  CHECK(bad.diagnostic);
  CHECK(bad.f_squares_in_h == false);

  // condition (d) holds exactly for the commutative loops
  auto c2 = oracle::cyclic(2);
  std::vector<LoopTable> eights{oracle::cyclic(8), oracle::product(oracle::cyclic(4), c2),
                                oracle::product(oracle::product(c2, c2), c2),
                                group_table(PermGroup(4, {parse_cycles("(1,2,3,4)", 4),
                                                          parse_cycles("(1,3)", 4)})),
                                group_table(PermGroup(8, {parse_cycles("(1,2,4,7)(3,6,8,5)", 8),
                                                          parse_cycles("(1,3,4,8)(2,5,7,6)", 8)}))};
  CHECK(eights[3].order() == 8);
  CHECK(eights[4].order() == 8);
  CHECK_FALSE(is_commutative(eights[3]));
  CHECK_FALSE(is_commutative(eights[4]));
  auto sixes = oracle::all_loops(6);
  for (auto const &q : eights) {
    auto f = folder_from_loop(q, FolderScope::full);
    auto rep = verify_reformulation(f.G, f.R);
    CHECK(rep.b_right_transversal);
    CHECK(rep.d_commutators_in_h == is_commutative(q));
  }
  for (auto const &q : sixes) {
    auto f = folder_from_loop(q, FolderScope::full);
    CHECK(verify_reformulation(f.G, f.R).d_commutators_in_h == is_commutative(q));
  }
}
