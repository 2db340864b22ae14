#include "loopforge/folder.hpp"

#include <bit>
#include <unordered_set>

#include "loopforge/errors.hpp"
#include "loopforge/group_ops.hpp"

namespace loopforge
{

LoopFolder folder_from_loop(LoopTable const &loop, FolderScope scope)
{
  auto groups = mult_groups(loop);
  PermGroup G = scope == FolderScope::right ? groups.rmlt : groups.mlt;
  Point one = 0;
  PermGroup H = G.stabilizer(std::span<Point const>(&one, 1));
  return {G, H, translations(loop).right};
}

namespace
{

void check_normal_form(std::vector<Perm> const &R)
{
  if (R.empty())
    throw InputError("empty transversal");
  std::size_t d = R.size();
  for (std::size_t i = 0; i < d; ++i) {
    if (R[i].degree() != d)
      throw InputError("transversal element " + std::to_string(i + 1) +
                       " has degree " + std::to_string(R[i].degree()) +
                       ", expected " + std::to_string(d));
    if (R[i][0] != i)
      throw InputError("transversal element " + std::to_string(i + 1) +
                       " does not map 1 to " + std::to_string(i + 1));
  }
  if (!R[0].is_identity())
    throw InputError("first transversal element must be the identity");
}

} // anonymous namespace

LoopTable loop_from_folder(std::vector<Perm> const &R)
{
  check_normal_form(R);
  std::size_t d = R.size();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (!R[i].quotient_fixed_point_free(R[j]))
        throw ConstructionError("r_" + std::to_string(i + 1) + " r_" +
                                  std::to_string(j + 1) +
                                  "^-1 has a fixed point",
                                static_cast<unsigned>(i),
                                static_cast<unsigned>(j));
    }
  }

  std::vector<Point> table(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j)
      table[i * d + j] = R[j][i];
  }
  return LoopTable(d, std::move(table));
}

LoopTable loop_from_folder(PermGroup const &G, std::vector<Perm> const &R)
{
  if (R.size() != G.degree())
    throw InputError("transversal size differs from the group degree");
  return loop_from_folder(R);
}

std::vector<Perm> normalize_transversal(std::vector<Perm> const &R)
{
  std::size_t d = R.size();
  std::vector<Perm> out(d);
  std::vector<bool> hit(d, false);
  for (auto const &r : R) {
    if (r.degree() != d)
      throw InputError("transversal of " + std::to_string(d) +
                       " elements contains a permutation of degree " +
                       std::to_string(r.degree()));
    Point i = r[0];
    if (hit[i])
      throw InputError("two transversal elements map 1 to " +
                       std::to_string(i + 1));
    hit[i] = true;
    out[i] = r;
  }
  return out;
}

bool is_right_transversal(PermGroup const &G, std::vector<Perm> const &R)
{
  // |G : G_1| = d for transitive G, and H r = H s iff 0 r = 0 s.
  if (R.size() != G.degree())
    return false;
  std::vector<bool> hit(G.degree(), false);
  for (auto const &r : R) {
    if (r.degree() != G.degree() || !G.contains(r) || hit[r[0]])
      return false;
    hit[r[0]] = true;
  }
  return true;
}

bool is_transversal_to_all_conjugates(PermGroup const &, PermGroup const &,
                                      std::vector<Perm> const &R)
{
  for (std::size_t i = 0; i < R.size(); ++i) {
    for (std::size_t j = i + 1; j < R.size(); ++j) {
      if (!R[i].quotient_fixed_point_free(R[j]))
        return false;
    }
  }
  return true;
}

ReformulationReport verify_reformulation(PermGroup const &G,
                                         std::vector<Perm> const &R)
{
  std::size_t d = G.degree();
  ReformulationReport rep{};
  Point one = 0;
  PermGroup H = G.stabilizer(std::span<Point const>(&one, 1));

  rep.a_primitive_power_of_two = d > 2 && std::has_single_bit(d) && is_primitive(G);

  rep.b_right_transversal = is_right_transversal(G, R);
  if (!rep.b_right_transversal)
    rep.diagnostic = "R is not a right transversal to G_1 in G";

  std::vector<Perm> gens;
  for (auto const &r : R) {
    if (r.degree() == d)
      gens.push_back(r);
  }
  bool degrees_ok = gens.size() == R.size() && !R.empty();
  ChainOptions hint;
  hint.known_order = G.order();
  rep.c_generates = degrees_ok && PermGroup(d, gens, hint).order() == G.order();

  std::vector<Perm> inv;
  for (auto const &r : gens)
    inv.push_back(r.inverse());
  rep.d_commutators_in_h = degrees_ok;
  for (std::size_t i = 0; i < inv.size() && rep.d_commutators_in_h; ++i) {
    for (std::size_t j = i + 1; j < inv.size(); ++j) {
      if (!H.contains(commutator(inv[i], inv[j]))) {
        rep.d_commutators_in_h = false;
        break;
      }
    }
  }

  std::unordered_set<Perm, PermHash> set(gens.begin(), gens.end());
  rep.e_closed_under_h = degrees_ok;
  for (auto const &h : H.generators()) {
    for (auto const &r : gens) {
      if (!set.contains(r.conjugate(h))) {
        rep.e_closed_under_h = false;
        break;
      }
    }
  }

  rep.f_squares_in_h = degrees_ok;
  for (auto const &r : gens) {
    if (!H.contains(r * r)) {
      rep.f_squares_in_h = false;
      break;
    }
  }
  return rep;
}

} // namespace loopforge
