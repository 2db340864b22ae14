#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "loopforge/perm.hpp"
#include "loopforge/perm_group.hpp"

namespace loopforge
{

// "(1,2,3)(4,5)" with 1-based points; whitespace is ignored, "()" is the
// identity. Throws ParseError (with a character position) on malformed
// input, repeated points or points above `degree`.
Perm parse_cycles(std::string_view s, std::size_t degree);

// Canonical cycle notation: nontrivial cycles starting at their least point,
// sorted by that point; the identity prints as "()".
std::string print_cycles(Perm const &p);

enum class Tag
{
  affine,
  known_not_mlt,
  four_transitive_claimed,
  solvable_claimed
};

std::string_view tag_name(Tag tag);
std::optional<Tag> tag_from_name(std::string_view name);

struct GroupCatalogEntry
{
  std::string name;
  std::size_t degree = 0;
  std::vector<std::string> generators;
  std::set<Tag> tags;
  std::string provenance;
  std::optional<BigInt> order;   // trusted hint; verified by the chain

  bool has(Tag tag) const { return tags.contains(tag); }

  // Parsed generators and a chain (the order hint speeds this up).
  PermGroup group() const;
};

struct CatalogOptions
{
  // Recompute the claimed tags and reject entries that disagree.
  bool strict = false;
};

// JSON lines; blank lines are skipped. Throws InputError naming the file and
// line for I/O, syntax and invariant violations.
std::vector<GroupCatalogEntry> load_catalog(std::string const &path,
                                            CatalogOptions const &options = {});

// Parses one catalog line (without line-number context).
GroupCatalogEntry parse_catalog_entry(std::string_view line);

std::string catalog_entry_json(GroupCatalogEntry const &entry);

struct DegreeSelection
{
  std::vector<GroupCatalogEntry const *> groups;
  std::vector<std::string> excluded;   // names removed by known-not-mlt
  std::optional<std::string> warning;
};

DegreeSelection groups_of_degree(std::vector<GroupCatalogEntry> const &catalog,
                                 std::size_t degree,
                                 bool use_known_exclusions = false);

// "degree:index" (1-based position among the entries of that degree) or an
// exact name that occurs once. Throws InputError otherwise.
GroupCatalogEntry const &resolve_group_ref(std::vector<GroupCatalogEntry> const &catalog,
                                           std::string const &ref);

// Explicit path, then $LOOPFORGE_CATALOG, then the catalog in the source tree.
std::string default_catalog_path(std::optional<std::string> const &explicit_path);

} // namespace loopforge
