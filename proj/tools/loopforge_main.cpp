#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "loopforge/catalog.hpp"
#include "loopforge/driver.hpp"
#include "loopforge/errors.hpp"

using namespace loopforge;

namespace
{

std::string read_file(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(std::string const &text, std::string const &out)
{
  if (out.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f)
    throw InputError("cannot write '" + out + "'");
  f << text << '\n';
}

// "lo-hi" or "lo:hi"
std::pair<std::size_t, std::size_t> parse_range(std::string const &s)
{
  auto sep = s.find_first_of("-:");
  if (sep == std::string::npos)
    throw InputError("degree range must look like LO-HI");
  try {
    std::size_t used = 0;
    auto lo = std::stoul(s.substr(0, sep), &used);
    if (used != sep)
      throw std::invalid_argument("lo");
    auto rest = s.substr(sep + 1);
    auto hi = std::stoul(rest, &used);
    if (used != rest.size())
      throw std::invalid_argument("hi");
    return {lo, hi};
  } catch (std::logic_error const &) {
    throw InputError("degree range must look like LO-HI");
  }
}

} // anonymous namespace

int main(int argc, char **argv)
{
  CLI::App app{"Search for right automorphic and automorphic loops in "
               "transitive permutation groups"};
  app.require_subcommand(1);

  RunConfig config;
  std::string mode = "ra";
  std::string range;
  std::string catalog_path;
  std::string out;
  std::string timings_out;
  bool strict = false;
  std::optional<bool> skip4, skip_solvable, parity;

  auto *search = app.add_subcommand("search", "search the catalog groups of given degrees");
  search->add_option("--degree,-d", config.degrees, "degree (repeatable)");
  search->add_option("--degree-range", range, "all catalog degrees in LO-HI");
  search->add_option("--mode,-m", mode, "ra, aut or caut")
    ->check(CLI::IsMember({"ra", "aut", "caut"}));
  search->add_option("--catalog", catalog_path,
                     "catalog file (default $LOOPFORGE_CATALOG, then the shipped one)");
  search->add_flag("--skip-4transitive,!--no-skip-4transitive", skip4,
                   "skip 4-transitive groups (default on)");
  search->add_flag("--skip-solvable,!--no-skip-solvable", skip_solvable,
                   "skip solvable groups (default on in aut and caut)");
  search->add_flag("--parity-rule,!--no-parity-rule", parity,
                   "skip odd degrees (aut) or non powers of two (caut)");
  search->add_flag("--affine-prune", config.affine_prune,
                   "class size bound for affine groups (caut)");
  search->add_flag("--use-known-exclusions", config.use_known_exclusions,
                   "drop catalog entries tagged known-not-mlt");
  search->add_flag("--iso-filter", config.iso_filter,
                   "count simple non-associative loops up to isomorphism");
  search->add_flag("--force-search", config.force_search, "ignore every prefilter");
  search->add_option("--coset-limit", config.limits.coset, "elements per candidate coset");
  search->add_option("--orbit-limit", config.limits.orbits, "candidate orbits per group");
  search->add_option("--clique-nodes", config.limits.clique_nodes, "assembly search nodes");
  search->add_option("--class-enum", config.limits.class_enum,
                     "largest stabilizer enumerated for the class bound");
  search->add_option("--jobs,-j", config.jobs, "worker threads");
  search->add_option("--out,-o", out, "report file (default stdout)");
  search->add_option("--timings", timings_out,
                     "timings file (default <out>.timings.json when --out is given)");
  search->add_option("--loops-dir", config.loops_dir, "write each loop and index.json here");
  search->add_flag("--strict-catalog", strict, "recheck catalog tags and orders");
  search->add_flag("--verbose,-v", config.verbose, "progress on stderr");

  std::string loop_file;
  std::string check_out;
  auto *check = app.add_subcommand("check", "properties of a loop given as a JSON table");
  check->add_option("loop", loop_file, "loop file")->required();
  check->add_option("--out,-o", check_out, "report file (default stdout)");

  std::string group_ref;
  std::string transversal_file;
  std::string verify_out;
  std::string verify_catalog;
  auto *verify = app.add_subcommand("verify-reformulation",
                                    "evaluate the six transversal conditions");
  verify->add_option("transversal", transversal_file, "transversal file")->required();
  verify->add_option("--group,-g", group_ref, "degree:index or catalog name");
  verify->add_option("--catalog", verify_catalog, "catalog for group references");
  verify->add_option("--out,-o", verify_out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*search) {
      config.mode = *mode_from_name(mode);
      if (!range.empty())
        config.range = parse_range(range);
      config.skip_four_transitive = skip4;
      config.skip_solvable = skip_solvable;
      config.parity_rule = parity;
      config.catalog_path = default_catalog_path(
        catalog_path.empty() ? std::nullopt : std::optional(catalog_path));
      config.validate();

      CatalogOptions copts;
      copts.strict = strict;
      auto catalog = load_catalog(config.catalog_path, copts);
      auto run = run_search(config, catalog);

      emit(run.report, out);
      if (timings_out.empty() && !out.empty())
        timings_out = out + ".timings.json";
      if (!timings_out.empty())
        emit(run.timings, timings_out);
      return run.exit_code;
    }

    if (*check) {
      auto loop = LoopTable::from_json(read_file(loop_file));
      emit(check_report(loop), check_out);
      return 0;
    }

    if (*verify) {
      std::optional<std::vector<GroupCatalogEntry>> catalog;
      std::string text = read_file(transversal_file);
      bool needs_catalog = !group_ref.empty() || text.find("\"group\"") != std::string::npos;
      if (needs_catalog) {
        catalog = load_catalog(default_catalog_path(
          verify_catalog.empty() ? std::nullopt : std::optional(verify_catalog)));
      }
      auto input = read_folder_input(text, catalog ? &*catalog : nullptr, group_ref);
      emit(reformulation_report(input), verify_out);
      return 0;
    }
  } catch (Error const &e) {
    std::fprintf(stderr, "loopforge: %s\n", e.what());
    return 1;
  } catch (std::exception const &e) {
    std::fprintf(stderr, "loopforge: %s\n", e.what());
    return 1;
  }
  return 0;
}
