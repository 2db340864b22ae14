#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopforge/catalog.hpp"
#include "loopforge/folder.hpp"
#include "loopforge/loop.hpp"
#include "loopforge/search.hpp"

/**
 * @file driver.hpp
 * @brief Catalog-wide searches and the JSON documents written by the
 *        command line tool (layout in docs/report.md).
 */

namespace loopforge
{

struct RunConfig
{
  std::vector<std::size_t> degrees;                          // always reported
  std::optional<std::pair<std::size_t, std::size_t>> range;  // catalog degrees only
  Mode mode = Mode::ra;
  std::string catalog_path;

  // Unset flags take the defaults of the mode.
  std::optional<bool> skip_four_transitive;
  std::optional<bool> skip_solvable;
  std::optional<bool> parity_rule;
  bool affine_prune = false;
  bool use_known_exclusions = false;
  bool iso_filter = false;
  bool force_search = false;

  SearchLimits limits;
  unsigned jobs = 1;
  std::optional<std::string> loops_dir;
  bool verbose = false;   // per-group progress on stderr

  // Throws InputError on degree < 2, jobs < 1, zero limits or an empty
  // degree selection.
  void validate() const;

  SearchOptions search_options() const;
};

struct SearchRun
{
  std::string report;     // deterministic JSON, no timings
  std::string timings;    // JSON with wall-clock times
  int exit_code = 0;      // 0, or 2 when a group was skipped for resources
};

// Degrees selected by the config, sorted and without repetitions.
std::vector<std::size_t> selected_degrees(RunConfig const &config,
                                          std::vector<GroupCatalogEntry> const &catalog);

// Searches every selected group; groups run concurrently when jobs > 1 and
// results are merged in catalog order. Writes loop files when loops_dir is
// set.
SearchRun run_search(RunConfig const &config,
                     std::vector<GroupCatalogEntry> const &catalog);

// Property record of a loop together with both simplicity tests.
std::string check_report(LoopTable const &loop);

struct FolderInput
{
  std::string group_name;
  PermGroup G;
  std::vector<Perm> R;      // normalized when possible
  std::optional<std::string> note;
};

// Transversal file: a JSON array of cycle strings, or an object with
// "transversal" and optionally "group" (a catalog reference or an object
// {"name", "degree", "generators"}). A non-empty group_ref overrides the
// group of the file. Throws InputError / ParseError on malformed input.
FolderInput read_folder_input(std::string const &text,
                              std::vector<GroupCatalogEntry> const *catalog,
                              std::string const &group_ref);

std::string reformulation_report(FolderInput const &input);

} // namespace loopforge
