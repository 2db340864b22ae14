#include "loopforge/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "loopforge/errors.hpp"
#include "loopforge/group_ops.hpp"

namespace loopforge
{

using nlohmann::json;

Perm parse_cycles(std::string_view s, std::size_t degree)
{
  if (degree < 2)
    throw InputError("degree must be at least 2");

  std::vector<Point> img(degree);
  for (std::size_t k = 0; k < degree; ++k)
    img[k] = static_cast<Point>(k);
  std::vector<bool> seen(degree, false);

  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  };

  skip_ws();
  if (pos == s.size())
    throw ParseError("empty cycle string", pos);

  while (pos < s.size()) {
    if (s[pos] != '(')
      throw ParseError("expected '('", pos);
    ++pos;
    skip_ws();

    std::vector<Point> cycle;
    if (pos < s.size() && s[pos] == ')') {
      ++pos;
      skip_ws();
      continue;
    }

    for (;;) {
      skip_ws();
      std::size_t start = pos;
      std::size_t value = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        value = value * 10 + static_cast<std::size_t>(s[pos] - '0');
        if (value > degree)
          throw ParseError("point exceeds degree " + std::to_string(degree), start);
        ++pos;
      }
      if (pos == start)
        throw ParseError("expected a point", pos);
      if (value == 0)
        throw ParseError("points are numbered from 1", start);
      Point p = static_cast<Point>(value - 1);
      if (seen[p])
        throw ParseError("repeated point " + std::to_string(value), start);
      seen[p] = true;
      cycle.push_back(p);

      skip_ws();
      if (pos == s.size())
        throw ParseError("unterminated cycle", pos);
      if (s[pos] == ',') {
        ++pos;
        continue;
      }
      if (s[pos] == ')') {
        ++pos;
        break;
      }
      throw ParseError("expected ',' or ')'", pos);
    }

    for (std::size_t i = 0; i < cycle.size(); ++i)
      img[cycle[i]] = cycle[(i + 1) % cycle.size()];
    skip_ws();
  }

  return Perm(std::move(img));
}

std::string print_cycles(Perm const &p)
{
  std::string out;
  std::vector<bool> done(p.degree(), false);
  for (std::size_t k = 0; k < p.degree(); ++k) {
    if (done[k] || p[k] == k)
      continue;
    out += '(';
    std::size_t x = k;
    do {
      if (x != k)
        out += ',';
      out += std::to_string(x + 1);
      done[x] = true;
      x = p[x];
    } while (x != k);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

namespace
{

constexpr std::pair<Tag, std::string_view> tag_names[] = {
  {Tag::affine, "affine"},
  {Tag::known_not_mlt, "known-not-mlt"},
  {Tag::four_transitive_claimed, "four-transitive-claimed"},
  {Tag::solvable_claimed, "solvable-claimed"},
};

} // anonymous namespace

std::string_view tag_name(Tag tag)
{
  for (auto [t, n] : tag_names) {
    if (t == tag)
      return n;
  }
  return "?";
}

std::optional<Tag> tag_from_name(std::string_view name)
{
  for (auto [t, n] : tag_names) {
    if (n == name)
      return t;
  }
  return std::nullopt;
}

PermGroup GroupCatalogEntry::group() const
{
  std::vector<Perm> gens;
  for (auto const &g : generators)
    gens.push_back(parse_cycles(g, degree));
  ChainOptions options;
  options.known_order = order;
  return PermGroup(degree, std::move(gens), options);
}

GroupCatalogEntry parse_catalog_entry(std::string_view line)
{
  json j;
  try {
    j = json::parse(line);
  } catch (json::parse_error const &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object())
    throw InputError("catalog entry is not a JSON object");

  GroupCatalogEntry e;
  try {
    e.name = j.at("name").get<std::string>();
    auto degree = j.at("degree").get<std::int64_t>();
    if (degree < 2)
      throw InputError("degree must be at least 2");
    e.degree = static_cast<std::size_t>(degree);
    e.generators = j.at("generators").get<std::vector<std::string>>();
    for (auto const &t : j.value("tags", std::vector<std::string>{})) {
      auto tag = tag_from_name(t);
      if (!tag)
        throw InputError("unknown tag '" + t + "'");
      e.tags.insert(*tag);
    }
    e.provenance = j.value("provenance", std::string{});
    if (j.contains("order")) {
      auto const &o = j.at("order");
      std::string digits = o.is_string() ? o.get<std::string>() : o.dump();
      if (digits.empty() ||
          !std::all_of(digits.begin(), digits.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw InputError("order must be a decimal integer");
      e.order = BigInt(digits);
    }
  } catch (json::exception const &ex) {
    throw InputError(std::string("malformed catalog entry: ") + ex.what());
  }

  if (e.generators.empty())
    throw InputError("entry '" + e.name + "' has no generators");
  for (auto const &g : e.generators) {
    try {
      parse_cycles(g, e.degree);
    } catch (ParseError const &ex) {
      throw InputError("entry '" + e.name + "', generator \"" + g +
                       "\": " + ex.what());
    }
  }
  return e;
}

std::string catalog_entry_json(GroupCatalogEntry const &entry)
{
  json j;
  j["name"] = entry.name;
  j["degree"] = entry.degree;
  j["generators"] = entry.generators;
  std::vector<std::string> tags;
  for (Tag t : entry.tags)
    tags.emplace_back(tag_name(t));
  j["tags"] = tags;
  if (entry.order)
    j["order"] = to_string(*entry.order);
  j["provenance"] = entry.provenance;
  return j.dump();
}

std::vector<GroupCatalogEntry> load_catalog(std::string const &path,
                                            CatalogOptions const &options)
{
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open catalog '" + path + "'");

  std::vector<GroupCatalogEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (std::all_of(line.begin(), line.end(),
                    [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
      continue;

    auto where = [&] { return path + ":" + std::to_string(lineno) + ": "; };
    try {
      auto e = parse_catalog_entry(line);
      if (options.strict) {
        PermGroup g = e.group();
        if (e.order && g.order() != *e.order)
          throw InputError("order " + to_string(g.order()) +
                           " differs from the stated " + to_string(*e.order));
        bool four = g.degree() >= 4 && is_k_transitive(g, 4);
        if (four != e.has(Tag::four_transitive_claimed))
          throw InputError("tag four-transitive-claimed disagrees with the group");
        // 4-transitive groups of these degrees are alternating or symmetric
        bool solvable = !four && is_solvable(g);
        if (solvable != e.has(Tag::solvable_claimed))
          throw InputError("tag solvable-claimed disagrees with the group");
      }
      entries.push_back(std::move(e));
    } catch (Error const &ex) {
      throw InputError(where() + ex.what());
    }
  }
  return entries;
}

DegreeSelection groups_of_degree(std::vector<GroupCatalogEntry> const &catalog,
                                 std::size_t degree, bool use_known_exclusions)
{
  DegreeSelection sel;
  for (auto const &e : catalog) {
    if (e.degree != degree)
      continue;
    if (use_known_exclusions && e.has(Tag::known_not_mlt)) {
      sel.excluded.push_back(e.name);
      continue;
    }
    sel.groups.push_back(&e);
  }
  if (sel.groups.empty() && sel.excluded.empty())
    sel.warning = "catalog has no groups of degree " + std::to_string(degree) +
                  "; results for this degree are not authoritative";
  return sel;
}

GroupCatalogEntry const &resolve_group_ref(std::vector<GroupCatalogEntry> const &catalog,
                                           std::string const &ref)
{
  auto colon = ref.find(':');
  if (colon != std::string::npos && colon > 0 && colon + 1 < ref.size() &&
      std::all_of(ref.begin(), ref.end(), [](char c) {
        return c == ':' || std::isdigit(static_cast<unsigned char>(c));
      })) {
    std::size_t degree = std::stoul(ref.substr(0, colon));
    std::size_t index = std::stoul(ref.substr(colon + 1));
    std::size_t seen = 0;
    for (auto const &e : catalog) {
      if (e.degree == degree && ++seen == index)
        return e;
    }
    throw InputError("no catalog entry " + ref);
  }

  GroupCatalogEntry const *found = nullptr;
  for (auto const &e : catalog) {
    if (e.name != ref)
      continue;
    if (found)
      throw InputError("group name '" + ref +
                       "' is ambiguous; use degree:index");
    found = &e;
  }
  if (!found)
    throw InputError("no catalog entry named '" + ref + "'");
  return *found;
}

std::string default_catalog_path(std::optional<std::string> const &explicit_path)
{
  if (explicit_path)
    return *explicit_path;
  if (char const *env = std::getenv("LOOPFORGE_CATALOG"); env && *env)
    return env;
  return LOOPFORGE_DEFAULT_CATALOG;
}

} // namespace loopforge
