#include "loopforge/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include <omp.h>

#include <json.hpp>

#include "loopforge/errors.hpp"
#include "loopforge/group_ops.hpp"
#include "loopforge/isofilter.hpp"

namespace loopforge
{

using ojson = nlohmann::ordered_json;

void RunConfig::validate() const
{
  for (auto d : degrees) {
    if (d < 2)
      throw InputError("degree must be at least 2");
  }
  if (range) {
    if (range->first < 2 || range->first > range->second)
      throw InputError("degree range must satisfy 2 <= lo <= hi");
  }
  if (degrees.empty() && !range)
    throw InputError("no degree selected");
  if (jobs < 1)
    throw InputError("jobs must be at least 1");
  if (!limits.coset || !limits.orbits || !limits.clique_nodes || !limits.class_enum)
    throw InputError("limits must be positive");
}

SearchOptions RunConfig::search_options() const
{
  auto o = SearchOptions::defaults(mode);
  if (skip_four_transitive)
    o.skip_four_transitive = *skip_four_transitive;
  if (skip_solvable)
    o.skip_solvable = *skip_solvable;
  if (parity_rule)
    o.parity_rule = *parity_rule;
  o.affine_prune = affine_prune;
  o.force_search = force_search;
  o.limits = limits;
  return o;
}

std::vector<std::size_t> selected_degrees(RunConfig const &config,
                                          std::vector<GroupCatalogEntry> const &catalog)
{
  std::set<std::size_t> out(config.degrees.begin(), config.degrees.end());
  if (config.range) {
    for (auto const &e : catalog) {
      if (e.degree >= config.range->first && e.degree <= config.range->second)
        out.insert(e.degree);
    }
  }
  return {out.begin(), out.end()};
}

namespace
{

struct Unit
{
  std::size_t degree;
  std::size_t index;            // 1-based within the degree
  GroupCatalogEntry const *entry;
};

ojson decision_json(Decision const &d)
{
  ojson j;
  j["status"] = d.skip ? "skipped" : "searched";
  if (!d.reason.empty())
    j["reason"] = d.reason;
  if (!d.detail.empty())
    j["detail"] = d.detail;
  if (d.affine) {
    ojson a;
    a["applicable"] = d.affine->applicable;
    a["reason"] = d.affine->reason;
    a["method"] = d.affine->method;
    a["min_class_size"] = d.affine->min_class_size ? ojson(*d.affine->min_class_size)
                                                   : ojson(nullptr);
    a["gamma"] = d.affine->gamma;
    j["affine_prune"] = a;
  }
  return j;
}

ojson stats_json(SearchStats const &s)
{
  ojson j;
  j["point_orbits"] = s.point_orbits;
  j["candidates"] = s.candidates;
  j["candidate_orbits"] = s.candidate_orbits;
  j["edges"] = s.edges;
  j["assembly_nodes"] = s.assembly_nodes;
  j["assembled"] = s.assembled;
  j["kept"] = s.kept;
  return j;
}

std::string loop_id(std::size_t degree, std::size_t group, std::size_t k)
{
  return "d" + std::to_string(degree) + "_g" + std::to_string(group) + "_l" +
         std::to_string(k);
}

void write_file(std::filesystem::path const &path, std::string const &text)
{
  std::ofstream out(path);
  if (!out)
    throw InputError("cannot write '" + path.string() + "'");
  out << text << '\n';
}

} // anonymous namespace

SearchRun run_search(RunConfig const &config,
                     std::vector<GroupCatalogEntry> const &catalog)
{
  config.validate();
  auto options = config.search_options();
  auto degrees = selected_degrees(config, catalog);
  auto t_start = std::chrono::steady_clock::now();

  ojson warnings = ojson::array();
  std::vector<DegreeSelection> selections;
  std::vector<Unit> units;
  for (auto d : degrees) {
    auto sel = groups_of_degree(catalog, d, config.use_known_exclusions);
    if (sel.warning)
      warnings.push_back(*sel.warning);
    for (std::size_t k = 0; k < sel.groups.size(); ++k) {
      // indices count every entry of the degree, excluded or not
      std::size_t index = 0, seen = 0;
      for (auto const &e : catalog) {
        if (e.degree != d)
          continue;
        ++seen;
        if (&e == sel.groups[k]) {
          index = seen;
          break;
        }
      }
      units.push_back({d, index, sel.groups[k]});
    }
    selections.push_back(std::move(sel));
  }

  std::vector<SearchReport> reports(units.size());
  std::vector<std::exception_ptr> errors(units.size());

  auto run_unit = [&](std::size_t u, SearchOptions const &opts) {
    try {
      auto const &e = *units[u].entry;
      PermGroup G = e.group();
      GroupInfo info{e.name, e.has(Tag::affine)};
      reports[u] = search_group(G, info, opts);
      reports[u].group_name = e.name;
      if (config.verbose) {
        std::fprintf(stderr, "degree %zu group %zu %s: %s%s %zu loops %.3fs\n",
                     units[u].degree, units[u].index, e.name.c_str(),
                     reports[u].decision.skip ? "skipped " : "searched",
                     reports[u].decision.reason.c_str(), reports[u].loops.size(),
                     reports[u].seconds);
      }
    } catch (...) {
      errors[u] = std::current_exception();
    }
  };

  int threads = static_cast<int>(config.jobs);
  if (units.size() > 1 && threads > 1) {
    // one group per thread, serial kernels inside
    int levels = omp_get_max_active_levels();
    omp_set_max_active_levels(1);
    auto opts = options;
    opts.parallel = false;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::size_t u = 0; u < units.size(); ++u)
      run_unit(u, opts);
    omp_set_max_active_levels(levels);
  } else {
    int saved = omp_get_max_threads();
    omp_set_num_threads(threads);
    auto opts = options;
    opts.parallel = threads > 1;
    for (std::size_t u = 0; u < units.size(); ++u)
      run_unit(u, opts);
    omp_set_num_threads(saved);
  }

  for (auto const &err : errors) {
    if (err)
      std::rethrow_exception(err);
  }

  std::optional<std::filesystem::path> dir;
  if (config.loops_dir) {
    dir = *config.loops_dir;
    std::filesystem::create_directories(*dir);
  }

  // report
  ojson report;
  report["tool"] = "loopforge";
  {
    ojson c;
    c["command"] = "search";
    c["degrees"] = degrees;
    c["mode"] = std::string(mode_name(config.mode));
    c["catalog"] = config.catalog_path;
    ojson f;
    f["skip_4transitive"] = options.skip_four_transitive;
    f["skip_solvable"] = options.skip_solvable;
    f["parity_rule"] = options.parity_rule;
    f["affine_prune"] = options.affine_prune;
    f["use_known_exclusions"] = config.use_known_exclusions;
    f["iso_filter"] = config.iso_filter;
    f["force_search"] = options.force_search;
    c["flags"] = f;
    ojson l;
    l["coset"] = options.limits.coset;
    l["orbits"] = options.limits.orbits;
    l["clique_nodes"] = options.limits.clique_nodes;
    l["class_enum"] = options.limits.class_enum;
    c["limits"] = l;
    report["config"] = c;
  }
  report["warnings"] = warnings;

  ojson timing_groups = ojson::array();
  ojson index = ojson::array();
  ojson table = ojson::array();
  ojson degree_list = ojson::array();
  bool resource_skip = false;
  double iso_seconds = 0.0;

  std::size_t u = 0;
  for (std::size_t di = 0; di < degrees.size(); ++di) {
    std::size_t d = degrees[di];
    auto const &sel = selections[di];

    ojson groups = ojson::array();
    std::size_t searched = 0, skipped = 0, found = 0;
    std::map<std::string, std::size_t> reasons;
    std::vector<LoopTable> sna;
    std::map<LoopTable, std::string> first_id;
    std::vector<std::string> sna_ids;

    for (; u < units.size() && units[u].degree == d; ++u) {
      auto const &rep = reports[u];
      auto const &e = *units[u].entry;
      ojson g;
      g["index"] = units[u].index;
      g["name"] = e.name;
      g["order"] = rep.group_order;
      std::vector<std::string> tags;
      for (Tag t : e.tags)
        tags.emplace_back(tag_name(t));
      g["tags"] = tags;
      g["decision"] = decision_json(rep.decision);
      g["stats"] = stats_json(rep.stats);

      if (rep.decision.skip) {
        ++skipped;
        ++reasons[rep.decision.reason];
        resource_skip |= rep.decision.reason == "resource";
      } else {
        ++searched;
      }

      ojson loops = ojson::array();
      for (std::size_t k = 0; k < rep.loops.size(); ++k) {
        auto const &fl = rep.loops[k];
        std::string id = loop_id(d, units[u].index, k + 1);
        ojson lj;
        lj["id"] = id;
        lj["digest"] = table_digest(fl.table);
        lj["associative"] = fl.associative;
        lj["commutative"] = fl.commutative;
        lj["simple"] = fl.simple;
        if (fl.automorphic)
          lj["automorphic"] = *fl.automorphic;
        lj["mlt_order"] = fl.mlt_order;
        if (dir) {
          std::string file = id + ".json";
          write_file(*dir / file, fl.table.to_json());
          lj["file"] = file;
        }
        loops.push_back(lj);
        ++found;
        if (fl.simple && !fl.associative) {
          sna.push_back(fl.table);
          first_id.emplace(fl.table, id);
          sna_ids.push_back(id);
        }

        ojson ij = lj;
        ij["degree"] = d;
        ij["group_index"] = units[u].index;
        ij["group"] = e.name;
        index.push_back(ij);
      }
      g["loops"] = loops;
      groups.push_back(g);

      ojson tg;
      tg["degree"] = d;
      tg["index"] = units[u].index;
      tg["name"] = e.name;
      tg["seconds"] = rep.seconds;
      timing_groups.push_back(tg);
    }

    ojson summary;
    summary["groups"] = sel.groups.size();
    summary["excluded"] = sel.excluded;
    summary["searched"] = searched;
    summary["skipped"] = skipped;
    ojson r = ojson::object();
    for (auto const &[reason, n] : reasons)
      r[reason] = n;
    summary["skip_reasons"] = r;
    summary["loops_found"] = found;
    summary["simple_nonassociative"] = sna.size();

    std::optional<std::size_t> classes;
    if (config.iso_filter) {
      auto t0 = std::chrono::steady_clock::now();
      auto reps = filter_up_to_isomorphism(sna);
      iso_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      classes = reps.size();
      std::vector<std::string> ids;
      for (auto const &t : reps)
        ids.push_back(first_id.at(t));
      std::sort(ids.begin(), ids.end(), [&](auto const &a, auto const &b) {
        return std::find(sna_ids.begin(), sna_ids.end(), a) <
               std::find(sna_ids.begin(), sna_ids.end(), b);
      });
      summary["up_to_isomorphism"] = *classes;
      summary["representatives"] = ids;
      for (auto &ij : index) {
        if (ij["degree"] == d)
          ij["representative"] =
            std::find(ids.begin(), ids.end(), ij["id"].get<std::string>()) != ids.end();
      }
    } else {
      summary["up_to_isomorphism"] = nullptr;
    }

    ojson dj;
    dj["degree"] = d;
    dj["summary"] = summary;
    dj["groups"] = groups;
    degree_list.push_back(dj);

    ojson row;
    row["order"] = d;
    row["found"] = classes ? *classes : sna.size();
    row["up_to_isomorphism"] = classes.has_value();
    table.push_back(row);
  }

  report["degrees"] = degree_list;
  report["table"] = table;
  int exit_code = resource_skip ? 2 : 0;
  report["exit_status"] = exit_code;

  if (dir) {
    ojson idx;
    idx["mode"] = std::string(mode_name(config.mode));
    idx["loops"] = index;
    write_file(*dir / "index.json", idx.dump(2));
  }

  ojson timings;
  timings["jobs"] = config.jobs;
  timings["total_seconds"] =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  timings["iso_filter_seconds"] = iso_seconds;
  timings["groups"] = timing_groups;

  return {report.dump(2), timings.dump(2), exit_code};
}

std::string check_report(LoopTable const &loop)
{
  auto p = property_checks(loop);
  auto mg = mult_groups(loop);
  ojson j;
  j["order"] = loop.order();
  j["digest"] = table_digest(loop);
  j["associative"] = p.associative;
  j["commutative"] = p.commutative;
  j["flexible"] = p.flexible;
  j["aaip"] = p.aaip;
  j["two_sided_inverses"] = p.two_sided_inverses;
  j["exponent"] = p.exponent ? ojson(*p.exponent) : ojson(nullptr);
  j["powers_agree"] = p.powers_agree;
  j["right_automorphic"] = is_right_automorphic(loop);
  j["automorphic"] = is_automorphic(loop);
  j["automorphic_via_conjugations"] = is_automorphic_via_conjugations(loop);
  j["simple_by_primitivity"] = is_simple_by_primitivity(loop);
  j["simple_by_closure"] = is_simple_by_closure(loop);
  j["rmlt_order"] = to_string(mg.rmlt.order());
  j["mlt_order"] = to_string(mg.mlt.order());
  return j.dump(2);
}

namespace
{

FolderInput group_from_json(nlohmann::json const &g,
                            std::vector<GroupCatalogEntry> const *catalog)
{
  if (g.is_string()) {
    if (!catalog)
      throw InputError("group reference needs a catalog");
    auto const &e = resolve_group_ref(*catalog, g.get<std::string>());
    return {e.name, e.group(), {}, {}};
  }
  if (!g.is_object())
    throw InputError("group must be a reference string or an object");
  auto degree = g.at("degree").get<std::int64_t>();
  if (degree < 2)
    throw InputError("degree must be at least 2");
  std::vector<Perm> gens;
  for (auto const &s : g.at("generators").get<std::vector<std::string>>())
    gens.push_back(parse_cycles(s, static_cast<std::size_t>(degree)));
  return {g.value("name", std::string("inline")),
          PermGroup(static_cast<std::size_t>(degree), std::move(gens)), {}, {}};
}

} // anonymous namespace

FolderInput read_folder_input(std::string const &text,
                              std::vector<GroupCatalogEntry> const *catalog,
                              std::string const &group_ref)
{
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (nlohmann::json::parse_error const &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }

  try {
    nlohmann::json strings;
    std::optional<FolderInput> in;
    if (!group_ref.empty())
      in = group_from_json(nlohmann::json(group_ref), catalog);

    if (j.is_array()) {
      strings = j;
    } else if (j.is_object()) {
      strings = j.at("transversal");
      if (!in && j.contains("group"))
        in = group_from_json(j.at("group"), catalog);
    } else {
      throw InputError("transversal file must hold an array or an object");
    }
    if (!in)
      throw InputError("no group given");

    std::size_t d = in->G.degree();
    std::vector<Perm> R;
    for (auto const &s : strings.get<std::vector<std::string>>())
      R.push_back(parse_cycles(s, d));

    try {
      in->R = normalize_transversal(R);
    } catch (InputError const &e) {
      in->R = std::move(R);
      in->note = std::string("transversal kept in file order: ") + e.what();
    }
    return std::move(*in);
  } catch (nlohmann::json::exception const &e) {
    throw InputError(std::string("malformed transversal file: ") + e.what());
  }
}

std::string reformulation_report(FolderInput const &input)
{
  auto rep = verify_reformulation(input.G, input.R);
  ojson j;
  ojson g;
  g["name"] = input.group_name;
  g["degree"] = input.G.degree();
  g["order"] = to_string(input.G.order());
  j["group"] = g;
  j["transversal_size"] = input.R.size();
  ojson c;
  c["a_primitive_power_of_two"] = rep.a_primitive_power_of_two;
  c["b_right_transversal"] = rep.b_right_transversal;
  c["c_generates"] = rep.c_generates;
  c["d_commutators_in_stabilizer"] = rep.d_commutators_in_h;
  c["e_closed_under_stabilizer"] = rep.e_closed_under_h;
  c["f_squares_in_stabilizer"] = rep.f_squares_in_h;
  j["conditions"] = c;
  j["all"] = rep.all();
  std::vector<std::string> notes;
  if (input.note)
    notes.push_back(*input.note);
  if (rep.diagnostic)
    notes.push_back(*rep.diagnostic);
  j["diagnostics"] = notes;
  return j.dump(2);
}

} // namespace loopforge
