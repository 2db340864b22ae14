#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopforge/loop.hpp"
#include "loopforge/perm_group.hpp"

namespace loopforge
{

// (G, H, R): G transitive, H = G_1, R[i] maps the neutral point 0 to i.
struct LoopFolder
{
  PermGroup G;
  PermGroup H;
  std::vector<Perm> R;
};

enum class FolderScope
{
  right,   // G = RMlt
  full     // G = Mlt
};

LoopFolder folder_from_loop(LoopTable const &loop,
                            FolderScope scope = FolderScope::right);

// The table i*j = i R[j]. Throws ConstructionError naming the first pair
// (i, j) (0-based) whose quotient R[i] R[j]^-1 has a fixed point, and
// InputError if R is not in normal form.
LoopTable loop_from_folder(std::vector<Perm> const &R);
LoopTable loop_from_folder(PermGroup const &G, std::vector<Perm> const &R);

// Reorders R so that R[i] maps 0 to i. Throws InputError if the images of 0
// are not all distinct or some R[i] has the wrong degree.
std::vector<Perm> normalize_transversal(std::vector<Perm> const &R);

// R meets every right coset of H in G exactly once (H = G_1 assumed, so the
// coset H r is determined by 0 r).
bool is_right_transversal(PermGroup const &G, std::vector<Perm> const &R);

// Every r_i r_j^-1 (i != j) is fixed point free.
bool is_transversal_to_all_conjugates(PermGroup const &G, PermGroup const &H,
                                      std::vector<Perm> const &R);

struct ReformulationReport
{
  bool a_primitive_power_of_two;
  bool b_right_transversal;
  bool c_generates;
  bool d_commutators_in_h;
  bool e_closed_under_h;
  bool f_squares_in_h;
  std::optional<std::string> diagnostic;

  bool all() const
  {
    return a_primitive_power_of_two && b_right_transversal && c_generates &&
           d_commutators_in_h && e_closed_under_h && f_squares_in_h;
  }
};

// All six conditions are evaluated even after one fails. R must be in
// normal form (R[0] the identity, 0 R[i] = i).
ReformulationReport verify_reformulation(PermGroup const &G,
                                         std::vector<Perm> const &R);

} // namespace loopforge
