#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>

#include "loopforge/catalog.hpp"

namespace oracle
{

std::set<Perm> closure(std::vector<Perm> const &gens, std::size_t degree)
{
  std::set<Perm> seen{Perm::identity(degree)};
  std::deque<Perm> queue{Perm::identity(degree)};
  while (!queue.empty()) {
    Perm x = queue.front();
    queue.pop_front();
    for (auto const &g : gens) {
      Perm y = x * g;
      if (seen.insert(y).second)
        queue.push_back(y);
    }
  }
  return seen;
}

std::set<Point> orbit(std::vector<Perm> const &gens, Point point)
{
  std::set<Point> out{point};
  bool grew = true;
  while (grew) {
    grew = false;
    for (Point p : std::vector<Point>(out.begin(), out.end())) {
      for (auto const &g : gens)
        grew |= out.insert(g[p]).second;
    }
  }
  return out;
}

Perm random_perm(std::size_t degree, std::mt19937_64 &rng)
{
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::shuffle(img.begin(), img.end(), rng);
  return Perm(img);
}

std::set<Perm> centralizer(std::set<Perm> const &G, std::vector<Perm> const &with)
{
  std::set<Perm> out;
  for (auto const &g : G) {
    if (std::all_of(with.begin(), with.end(),
                    [&](Perm const &h) { return g * h == h * g; }))
      out.insert(g);
  }
  return out;
}

namespace
{

void fill_squares(std::size_t n, std::vector<Point> &t, std::size_t cell,
                  std::vector<std::vector<bool>> &row_used,
                  std::vector<std::vector<bool>> &col_used,
                  std::vector<LoopTable> &out)
{
  if (cell == n * n) {
    out.emplace_back(n, t);
    return;
  }
  std::size_t a = cell / n, b = cell % n;
  if (a == 0 || b == 0) {
    fill_squares(n, t, cell + 1, row_used, col_used, out);
    return;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (row_used[a][v] || col_used[b][v])
      continue;
    row_used[a][v] = col_used[b][v] = true;
    t[cell] = static_cast<Point>(v);
    fill_squares(n, t, cell + 1, row_used, col_used, out);
    row_used[a][v] = col_used[b][v] = false;
  }
}

} // anonymous namespace

std::vector<LoopTable> all_loops(std::size_t n)
{
  std::vector<Point> t(n * n, 0);
  std::vector<std::vector<bool>> row_used(n, std::vector<bool>(n, false));
  std::vector<std::vector<bool>> col_used(n, std::vector<bool>(n, false));
  for (std::size_t k = 0; k < n; ++k) {
    t[k] = t[k * n] = static_cast<Point>(k);
    row_used[k][k] = col_used[k][k] = true;
  }
  std::vector<LoopTable> out;
  fill_squares(n, t, 0, row_used, col_used, out);
  return out;
}

bool is_simple_by_subsets(LoopTable const &q)
{
  std::size_t n = q.order();
  if (n <= 1)
    return true;
  using Set = std::set<Point>;
  auto mul_left = [&](Point x, Set const &s) {
    Set r;
    for (Point y : s)
      r.insert(q(x, y));
    return r;
  };
  auto mul_right = [&](Set const &s, Point x) {
    Set r;
    for (Point y : s)
      r.insert(q(y, x));
    return r;
  };

  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    Set s{0};
    for (std::size_t k = 1; k < n; ++k) {
      if (mask >> (k - 1) & 1)
        s.insert(static_cast<Point>(k));
    }
    if (s.size() == 1 || s.size() == n)
      continue;

    bool ok = true;
    for (Point a : s) {
      for (Point b : s) {
        ok &= s.contains(q(a, b)) && s.contains(q.left_div(a, b)) &&
              s.contains(q.right_div(b, a));
      }
    }
    for (Point x = 0; x < n && ok; ++x) {
      ok &= mul_left(x, s) == mul_right(s, x);
      for (Point y = 0; y < n && ok; ++y) {
        ok &= mul_right(mul_right(s, x), y) == mul_right(s, q(x, y));
        ok &= mul_right(mul_left(x, s), y) == mul_left(x, mul_right(s, y));
        ok &= mul_left(x, mul_left(y, s)) == mul_left(q(x, y), s);
      }
    }
    if (ok)
      return false;
  }
  return true;
}

LoopTable cyclic(std::size_t n)
{
  std::vector<Point> t(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      t[a * n + b] = static_cast<Point>((a + b) % n);
  }
  return LoopTable(n, t);
}

LoopTable product(LoopTable const &A, LoopTable const &B)
{
  std::size_t m = A.order(), k = B.order(), n = m * k;
  std::vector<Point> t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      auto a = A(static_cast<Point>(x / k), static_cast<Point>(y / k));
      auto b = B(static_cast<Point>(x % k), static_cast<Point>(y % k));
      t[x * n + y] = static_cast<Point>(a * k + b);
    }
  }
  return LoopTable(n, t);
}

LoopTable coset_loop(PermGroup const &G, std::vector<Perm> const &R)
{
  std::size_t d = G.degree();
  Point one = 0;
  auto H = G.stabilizer(std::span<Point const>(&one, 1)).elements(1'000'000);

  std::vector<std::set<Perm>> cosets;
  std::vector<Perm> pick;   // an element of each coset other than r_i if possible
  for (auto const &r : R) {
    std::set<Perm> c;
    for (auto const &h : H)
      c.insert(h * r);
    pick.push_back(H.size() > 1 && !(H.back() * r == r) ? H.back() * r : r);
    cosets.push_back(std::move(c));
  }

  std::vector<Point> t(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Perm x = pick[i] * R[j];
      std::size_t label = d;
      for (std::size_t k = 0; k < d; ++k) {
        if (cosets[k].contains(x))
          label = k;
      }
      t[i * d + j] = static_cast<Point>(label);
    }
  }
  return LoopTable(d, t);
}

namespace
{

struct SystemSearch
{
  std::size_t d;
  std::vector<std::vector<Perm>> choices;   // by point
  std::vector<Perm> H;
  std::vector<std::optional<Perm>> r;
  std::vector<LoopTable> out;

  bool compatible(Point i, Perm const &g) const
  {
    if (!g.is_fixed_point_free())
      return false;
    for (std::size_t j = 1; j < d; ++j) {
      if (j != i && r[j] && !(g * r[j]->inverse()).is_fixed_point_free())
        return false;
    }
    return true;
  }

  void run(std::size_t i)
  {
    if (i == d) {
      std::vector<Point> t(d * d);
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b)
          t[a * d + b] = b == 0 ? static_cast<Point>(a) : (*r[b])[a];
      }
      out.emplace_back(d, t);
      return;
    }
    if (r[i]) {
      run(i + 1);
      return;
    }
    for (auto const &g : choices[i]) {
      // assign the whole H-orbit of g, undoing on conflict
      std::vector<Point> set_here;
      bool ok = true;
      for (auto const &h : H) {
        Perm c = g.conjugate(h);
        Point k = c[0];
        if (r[k]) {
          if (!(*r[k] == c)) {
            ok = false;
            break;
          }
          continue;
        }
        if (!compatible(k, c)) {
          ok = false;
          break;
        }
        r[k] = c;
        set_here.push_back(k);
      }
      if (ok)
        run(i + 1);
      for (Point k : set_here)
        r[k].reset();
    }
  }
};

} // anonymous namespace

std::vector<LoopTable> brute_force_systems(PermGroup const &G)
{
  SystemSearch s;
  s.d = G.degree();
  s.choices.resize(s.d);
  for (auto const &g : G.elements(1'000'000)) {
    if (g[0] != 0 && g.is_fixed_point_free())
      s.choices[g[0]].push_back(g);
  }
  Point one = 0;
  s.H = G.stabilizer(std::span<Point const>(&one, 1)).elements(1'000'000);
  s.r.assign(s.d, std::nullopt);
  s.r[0] = Perm::identity(s.d);
  s.run(1);
  std::sort(s.out.begin(), s.out.end());
  s.out.erase(std::unique(s.out.begin(), s.out.end()), s.out.end());
  return s.out;
}

// R meets every right coset of every conjugate of H once, checked by
// enumerating the conjugates and their cosets.
bool transversal_to_conjugates(PermGroup const &G, std::vector<Perm> const &R)
{
  Point zero = 0;
  auto elems = G.elements(100'000);
  auto H = G.stabilizer(std::span<Point const>(&zero, 1)).elements(100'000);
  for (auto const &g : elems) {
    std::set<Perm> Hg;
    for (auto const &h : H)
      Hg.insert(h.conjugate(g));
    // r_i, r_j in the same right coset of H^g iff r_i r_j^-1 in H^g
    for (std::size_t i = 0; i < R.size(); ++i) {
      for (std::size_t j = i + 1; j < R.size(); ++j) {
        if (Hg.contains(R[i] * R[j].inverse()))
          return false;
      }
    }
  }
  return true;
}

bool right_transversal(PermGroup const &G, std::vector<Perm> const &R)
{
  Point zero = 0;
  auto H = G.stabilizer(std::span<Point const>(&zero, 1)).elements(100'000);
  std::set<std::set<Perm>> cosets;
  for (auto const &r : R) {
    if (!G.contains(r))
      return false;
    std::set<Perm> c;
    for (auto const &h : H)
      c.insert(h * r);
    cosets.insert(c);
  }
  return R.size() == G.degree() && cosets.size() == R.size();
}

std::vector<loopforge::GroupCatalogEntry> const &shipped_catalog()
{
  static auto const catalog = loopforge::load_catalog(LOOPFORGE_DEFAULT_CATALOG);
  return catalog;
}

bool brute_sound(PermGroup const &G, LoopTable const &loop)
{
  std::size_t d = loop.order();
  for (Point x = 0; x < d; ++x) {
    if (!G.contains(loopforge::right_translation(loop, x)))
      return false;
  }
  Point one = 0;
  for (auto const &h : G.stabilizer(std::span<Point const>(&one, 1)).elements(10'000'000)) {
    for (Point a = 0; a < d; ++a) {
      for (Point b = 0; b < d; ++b) {
        if (h[loop(a, b)] != loop(h[a], h[b]))
          return false;
      }
    }
  }
  return true;
}

} // namespace oracle
