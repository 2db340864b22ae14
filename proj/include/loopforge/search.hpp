#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loopforge/loop.hpp"
#include "loopforge/perm_group.hpp"

/**
 * @file search.hpp
 * @brief All loops Q with RMlt(Q) <= G and G_1 <= Aut(Q) for a transitive G,
 *        built from right transversals that are closed under conjugation by
 *        the point stabilizer.
 *
 * The kernels of steps 3-5 exist in a serial form and an OpenMP form; the
 * two produce identical results in identical order.
 */

namespace loopforge
{

enum class Mode
{
  ra,    // right automorphic
  aut,   // automorphic
  caut   // commutative automorphic
};

std::string_view mode_name(Mode mode);
std::optional<Mode> mode_from_name(std::string_view name);

struct SearchLimits
{
  std::uint64_t coset = 1'000'000;         // elements per candidate coset
  std::uint64_t orbits = 1'000'000;        // candidate orbits per group
  std::uint64_t clique_nodes = 1'000'000;  // assembly search nodes
  std::uint64_t class_enum = 10'000'000;   // stabilizer order for class pruning
};

struct SearchOptions
{
  Mode mode = Mode::ra;
  bool skip_four_transitive = true;
  bool skip_solvable = false;
  bool parity_rule = false;       // odd degree (aut), non power of two (caut)
  bool affine_prune = false;
  bool force_search = false;      // ignore every prefilter
  bool automorphic_fast_path = true;
  bool parallel = false;          // OpenMP kernels inside one group
  SearchLimits limits;

  // Flags as set by default for a mode.
  static SearchOptions defaults(Mode mode);
};

// Optional facts about G supplied by the caller (catalog tags).
struct GroupInfo
{
  std::string name;
  bool affine = false;
};

struct AffinePrune
{
  bool applicable = false;
  std::string reason;            // "trivial-stabilizer" or "affine-class-bound"
  std::string method;            // how the bound was established
  std::optional<std::uint64_t> min_class_size;
  std::uint64_t gamma = 0;       // largest orbit of G_1
};

struct Decision
{
  bool skip = false;
  std::string reason;                 // empty when searching
  std::optional<AffinePrune> affine;  // present when the class bound ran
  std::string detail;                 // message of a resource skip
};

// Stabilizer class bound for tagged affine groups of prime power degree.
AffinePrune affine_class_prune(PermGroup const &G, GroupInfo const &info,
                               SearchLimits const &limits);

Decision prefilter(PermGroup const &G, GroupInfo const &info,
                   SearchOptions const &options);

struct PointOrbit
{
  Point representative;         // least point
  std::vector<Point> points;    // sorted
};

std::vector<PointOrbit> step1_orbit_reps(PermGroup const &H);

// Fixed point free elements of (C_G(H_i))_1 v, v mapping 0 to i.
std::vector<Perm> step2_candidates(PermGroup const &G, PermGroup const &H,
                                   Point i, SearchLimits const &limits);

struct CandidateOrbit
{
  Point base_point;
  std::size_t layer;            // index of the point orbit
  std::vector<Perm> members;    // sorted by the image of 0
  std::size_t weight() const { return members.size(); }
};

std::vector<CandidateOrbit> step3_candidate_orbits(
  PermGroup const &H, PointOrbit const &orbit, std::size_t layer,
  std::vector<Perm> const &candidates, bool parallel);

// Every s t^-1 with s in b and t the first member of a is fixed point free.
bool step4_compatibility(CandidateOrbit const &a, CandidateOrbit const &b);

// Quadratic version over all pairs of members.
bool step4_compatibility_full(CandidateOrbit const &a, CandidateOrbit const &b);

struct CompatibilityGraph
{
  std::vector<CandidateOrbit> vertices;
  std::vector<std::vector<std::uint64_t>> adjacency;   // bit rows
  std::size_t layers = 0;

  bool adjacent(std::size_t v, std::size_t w) const
  {
    return (adjacency[v][w / 64] >> (w % 64)) & 1u;
  }
  std::size_t edge_count() const;
};

CompatibilityGraph step4_graph(std::vector<CandidateOrbit> vertices,
                               std::size_t layers, bool parallel);

struct AssemblyResult
{
  std::vector<std::vector<std::size_t>> selections;   // vertex ids per layer
  std::uint64_t nodes = 0;
};

// One vertex per layer, pairwise adjacent. Throws ResourceError past the
// node limit.
AssemblyResult step5_assemble(CompatibilityGraph const &graph,
                              std::uint64_t node_limit, bool parallel);

// Right translations (indexed by the image of 0) of a selection.
std::vector<Perm> selection_transversal(CompatibilityGraph const &graph,
                                        std::vector<std::size_t> const &sel,
                                        std::size_t degree);

struct FoundLoop
{
  LoopTable table;
  bool associative = false;
  bool commutative = false;
  bool simple = false;
  std::optional<bool> automorphic;   // set in aut / caut modes
  std::string mlt_order;
};

struct SearchStats
{
  std::size_t point_orbits = 0;
  std::size_t candidates = 0;
  std::size_t candidate_orbits = 0;
  std::size_t edges = 0;
  std::uint64_t assembly_nodes = 0;
  std::size_t assembled = 0;
  std::size_t kept = 0;
};

struct SearchReport
{
  std::string group_name;
  std::size_t degree = 0;
  std::string group_order;
  Decision decision;
  std::vector<FoundLoop> loops;      // sorted by table
  SearchStats stats;
  double seconds = 0.0;              // wall time, not part of the report
};

SearchReport search_group(PermGroup const &G, GroupInfo const &info,
                          SearchOptions const &options);

// Steps 1-5 only: every loop with RMlt <= G and G_1 <= Aut, sorted.
std::vector<LoopTable> all_loops(PermGroup const &G, SearchOptions const &options,
                                 SearchStats *stats = nullptr);

// Independent check of an emitted loop: each R_x in G, each generator of
// G_1 an automorphism.
bool is_sound(PermGroup const &G, LoopTable const &loop);

} // namespace loopforge
