#pragma once

#include <random>
#include <set>
#include <vector>

#include "loopforge/catalog.hpp"
#include "loopforge/loop.hpp"
#include "loopforge/perm.hpp"
#include "loopforge/perm_group.hpp"

// Slow, obviously correct reference implementations used by the tests.

namespace oracle
{

using loopforge::LoopTable;
using loopforge::Perm;
using loopforge::PermGroup;
using loopforge::Point;

// Every element of <gens> by breadth-first closure.
std::set<Perm> closure(std::vector<Perm> const &gens, std::size_t degree);

// Orbit of `point` by repeated application of the generators.
std::set<Point> orbit(std::vector<Perm> const &gens, Point point);

Perm random_perm(std::size_t degree, std::mt19937_64 &rng);

// Elements of G commuting with every element of `with`.
std::set<Perm> centralizer(std::set<Perm> const &G, std::vector<Perm> const &with);

// Every loop of the given order with neutral element 0 (all normalized
// Latin squares).
std::vector<LoopTable> all_loops(std::size_t order);

// Subsets S containing 0, closed under the product and both divisions, with
// xS = Sx, (Sx)y = S(xy), (xS)y = x(Sy) and x(yS) = (xy)S. Exponential.
bool is_simple_by_subsets(LoopTable const &loop);

// Cayley table of Z_n.
LoopTable cyclic(std::size_t n);

// Direct product table (a1,a2)(b1,b2) with index a1 * |B| + a2.
LoopTable product(LoopTable const &a, LoopTable const &b);

// The coset loop: Hx o Hy = H x r_y on the right cosets of H = G_1, with
// cosets built as explicit element sets. Cosets are labelled by the
// transversal element they contain.
LoopTable coset_loop(PermGroup const &G, std::vector<Perm> const &R);

// Every system (r_1 .. r_{d-1}) with r_i in G, 0 r_i = i, all r_i r_j^-1 fixed
// point free and r_i^h = r_{ih} for every h in G_1, turned into tables.
// Sorted.
std::vector<LoopTable> brute_force_systems(PermGroup const &G);

// R meets every right coset of every conjugate of G_1 at most once, by
// enumerating the conjugates.
bool transversal_to_conjugates(PermGroup const &G, std::vector<Perm> const &R);

// R lies in G and meets each right coset of G_1 once, by explicit cosets.
bool right_transversal(PermGroup const &G, std::vector<Perm> const &R);

std::vector<loopforge::GroupCatalogEntry> const &shipped_catalog();

// Every R_x in G, G_1 acting by automorphisms, checked by enumeration of G_1.
bool brute_sound(PermGroup const &G, LoopTable const &loop);

} // namespace oracle
