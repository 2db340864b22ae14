#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "loopforge/catalog.hpp"
#include "loopforge/errors.hpp"
#include "loopforge/group_ops.hpp"
#include "loopforge/loop.hpp"

#include "support/oracles.hpp"

using namespace loopforge;

namespace
{

std::vector<LoopTable> const &small_loops()
{
  static auto const corpus = [] {
    std::vector<LoopTable> all;
    for (std::size_t n = 1; n <= 6; ++n) {
      auto l = oracle::all_loops(n);
      all.insert(all.end(), l.begin(), l.end());
    }
    return all;
  }();
  return corpus;
}

// Automorphisms of a small loop by trying every permutation fixing 0.
std::vector<Perm> automorphisms(LoopTable const &q)
{
  std::vector<Point> img(q.order());
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<Perm> out;
  do {
    Perm p(img);
    bool ok = true;
    for (Point a = 0; a < q.order() && ok; ++a) {
      for (Point b = 0; b < q.order() && ok; ++b)
        ok = p[q(a, b)] == q(p[a], p[b]);
    }
    if (ok)
      out.push_back(p);
  } while (std::next_permutation(img.begin() + 1, img.end()));
  return out;
}

} // anonymous namespace

TEST_CASE("exhaustive corpus has the known number of normalized Latin squares")
{
  CHECK(oracle::all_loops(4).size() == 4);
  CHECK(oracle::all_loops(5).size() == 56);
  CHECK(oracle::all_loops(6).size() == 9408);
}

TEST_CASE("table validation")
{
  CHECK(oracle::cyclic(3).order() == 3);
  auto v4 = oracle::product(oracle::cyclic(2), oracle::cyclic(2));
  CHECK(v4.order() == 4);
  CHECK_THROWS_AS(LoopTable::from_rows({{1, 2}, {2, 2}}), InputError);
  CHECK_THROWS_AS(LoopTable::from_rows({{2, 1}, {1, 2}}), InputError);
  CHECK_THROWS_AS(LoopTable::from_rows({{1, 2, 3}, {2, 3, 1}}), InputError);
  CHECK_THROWS_AS(LoopTable::from_json("{\"order\": 3, \"table\": [[1]]}"), InputError);
  CHECK_THROWS(LoopTable::from_json("{"));

  auto c5 = oracle::cyclic(5);
  CHECK(LoopTable::from_json(c5.to_json()) == c5);
}

TEST_CASE("translations")
{
  auto c3 = oracle::cyclic(3);
  auto t = translations(c3);
  CHECK(t.right[0].is_identity());
  CHECK(t.left[0].is_identity());
  CHECK(t.right[1] * t.right[1] == t.right[2]);
  for (auto const &q : small_loops()) {
    auto tr = translations(q);
    for (Point x = 0; x < q.order(); ++x) {
      CHECK(tr.right[x][0] == x);
      CHECK(tr.left[x][0] == x);
    }
  }
}

TEST_CASE("multiplication groups")
{
  auto c5 = mult_groups(oracle::cyclic(5));
  CHECK(c5.rmlt.order() == 5);
  CHECK(c5.mlt.order() == 5);
  auto v4 = mult_groups(oracle::product(oracle::cyclic(2), oracle::cyclic(2)));
  CHECK(v4.rmlt.order() == 4);
  CHECK(v4.mlt.order() == 4);
  for (auto const &q : small_loops()) {
    auto mg = mult_groups(q);
    CHECK(is_transitive(mg.rmlt));
    CHECK(is_transitive(mg.mlt));
    if (is_commutative(q))
      CHECK(mg.rmlt.order() == mg.mlt.order());
  }
}

TEST_CASE("inner generators fix the neutral element and generate the stabilizer")
{
  auto inner = inner_generators(oracle::cyclic(6));
  for (auto const *fam : {&inner.right, &inner.left, &inner.middle}) {
    for (auto const &p : *fam)
      CHECK(p.is_identity());
  }

  Point one = 0;
  for (auto const &q : small_loops()) {
    auto ig = inner_generators(q);
    std::vector<Perm> all;
    for (auto const *fam : {&ig.right, &ig.left, &ig.middle}) {
      for (auto const &p : *fam) {
        CHECK(p[0] == 0);
        all.push_back(p);
      }
    }
    PermGroup inn(q.order(), all);
    auto stab = mult_groups(q).mlt.stabilizer(std::span<Point const>(&one, 1));
    CHECK(inn.order() == stab.order());
  }
}

TEST_CASE("automorphisms")
{
  auto c3 = oracle::cyclic(3);
  CHECK(is_automorphism(c3, Perm::identity(3)));
  CHECK(is_automorphism(c3, parse_cycles("(2,3)", 3)));
  auto c4 = oracle::cyclic(4);
  CHECK_FALSE(is_automorphism(c4, parse_cycles("(2,3,4)", 4)));
  CHECK_FALSE(is_automorphism(c4, parse_cycles("(2,4,3)", 4)));

  std::mt19937_64 rng(4);
  for (auto const &q : small_loops()) {
    if (q.order() < 3)
      continue;
    for (int t = 0; t < 3; ++t) {
      std::vector<Point> img(q.order());
      std::iota(img.begin(), img.end(), Point{0});
      std::shuffle(img.begin() + 1, img.end(), rng);
      Perm p(img);
      CHECK(is_automorphism(q, p) == is_automorphism_by_translations(q, p));
    }
  }
}

TEST_CASE("property record")
{
  auto v4 = oracle::product(oracle::cyclic(2), oracle::cyclic(2));
  auto p = property_checks(v4);
  CHECK(p.associative);
  CHECK(p.commutative);
  CHECK(p.aaip);
  CHECK(p.exponent == 2u);
  CHECK(p.powers_agree);
  CHECK_FALSE(is_simple_by_primitivity(v4));
  CHECK_FALSE(is_simple_by_closure(v4));

  auto c6 = property_checks(oracle::cyclic(6));
  CHECK(c6.exponent == 6u);

  for (auto const &q : small_loops()) {
    auto r = property_checks(q);
    if (r.associative) {
      CHECK(r.aaip);
      CHECK(r.flexible);
      CHECK(r.two_sided_inverses);
      CHECK(r.powers_agree);
      CHECK(is_automorphic(q));
      CHECK(is_right_automorphic(q));
      CHECK(is_automorphic_via_conjugations(q));
    }
  }
}

TEST_CASE("simplicity examples")
{
  CHECK(is_simple_by_primitivity(oracle::cyclic(5)));
  CHECK(is_simple_by_closure(oracle::cyclic(5)));
  CHECK_FALSE(is_simple_by_primitivity(oracle::cyclic(4)));
  CHECK_FALSE(is_simple_by_closure(oracle::cyclic(4)));
  CHECK(normal_closure(oracle::cyclic(4), 2) == std::vector<Point>{0, 2});
}

TEST_CASE("automorphic iff all conjugations are automorphisms, on all loops of order <= 6")
{
  std::size_t automorphic = 0;
  for (auto const &q : small_loops()) {
    bool a = is_automorphic(q);
    CHECK(a == is_automorphic_via_conjugations(q));
    if (a) {
      ++automorphic;
      CHECK(property_checks(q).aaip);
    }
    auto ig = inner_generators(q);
    bool conj = std::all_of(ig.middle.begin(), ig.middle.end(),
                            [&](Perm const &t) { return is_automorphism(q, t); });
    if (conj)
      CHECK(is_flexible(q));
  }
  CHECK(automorphic > 0);
}

TEST_CASE("automorphic iff inner generators satisfy R_i^h = R_ih")
{
  for (auto const &q : small_loops()) {
    bool all = true;
    for (auto const &h : distinct_inner_generators(q))
      all &= is_automorphism_by_translations(q, h);
    CHECK(all == is_automorphic(q));
  }
}

TEST_CASE("products lie in trivial orbits of two-point stabilizers of automorphism groups")
{
  for (auto const &q : small_loops()) {
    if (q.order() < 4)
      continue;
    auto aut = automorphisms(q);
    for (Point i = 0; i < q.order(); ++i) {
      for (Point j = 0; j < q.order(); ++j) {
        for (auto const &h : aut) {
          if (h[i] == i && h[j] == j)
            CHECK(h[q(i, j)] == q(i, j));
        }
      }
    }
  }
}

TEST_CASE("simplicity by primitivity equals brute force on all loops of order <= 6")
{
  std::size_t simple = 0;
  for (auto const &q : small_loops()) {
    bool brute = oracle::is_simple_by_subsets(q);
    CHECK(is_simple_by_primitivity(q) == brute);
    CHECK(is_simple_by_closure(q) == brute);
    simple += brute;
  }
  CHECK(simple > 0);
}

TEST_CASE("a random Latin square of order 5 that is not automorphic")
{
  std::size_t found = 0;
  for (auto const &q : oracle::all_loops(5)) {
    if (is_associative(q))
      continue;
    bool direct = true;
    auto ig = inner_generators(q);
    for (auto const *fam : {&ig.right, &ig.left, &ig.middle}) {
      for (auto const &p : *fam)
        direct &= is_automorphism(q, p);
    }
    CHECK(is_automorphic(q) == direct);
    found += !direct;
  }
  CHECK(found > 0);
}

TEST_CASE("relabeling")
{
  auto q = oracle::all_loops(5)[7];
  std::vector<Point> phi{0, 3, 1, 4, 2};
  auto r = q.relabeled(phi);
  for (Point a = 0; a < 5; ++a) {
    for (Point b = 0; b < 5; ++b)
      CHECK(r(phi[a], phi[b]) == phi[q(a, b)]);
  }
  for (Point a = 0; a < 5; ++a) {
    for (Point b = 0; b < 5; ++b) {
      CHECK(q(a, q.left_div(a, b)) == b);
      CHECK(q(q.right_div(b, a), a) == b);
    }
  }
}
