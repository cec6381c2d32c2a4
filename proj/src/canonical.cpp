#include "tourep/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tourep {

namespace {

std::vector<int> multiplicity_matrix(const Digraph& g) {
  const int n = g.num_vertices();
  std::vector<int> m(static_cast<std::size_t>(n) * n, 0);
  for (const Arc& e : g.arcs()) ++m[e.tail * n + e.head];
  return m;
}

struct DegreeKey {
  int out = 0, in = 0;
  friend auto operator<=>(const DegreeKey&, const DegreeKey&) = default;
};

std::vector<DegreeKey> degree_keys(const Digraph& g) {
  std::vector<DegreeKey> keys(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) keys[v] = {g.out_degree(v), g.in_degree(v)};
  return keys;
}

}  // namespace

CanonicalForm canonical_form(const Digraph& g) {
  const int n = g.num_vertices();
  const auto mult = multiplicity_matrix(g);
  const auto keys = degree_keys(g);

  // order[i] = original vertex placed at position i; positions grouped by key.
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return keys[a] != keys[b] ? keys[a] < keys[b] : a < b;
  });
  std::vector<std::pair<int, int>> blocks;  // [begin, end) of equal keys
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && keys[order[j]] == keys[order[i]]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }

  CanonicalForm best{n, {}};
  std::vector<int> encoding(static_cast<std::size_t>(n) * n);
  // Iterate the product of permutations of each block (odometer style).
  while (true) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) encoding[i * n + j] = mult[order[i] * n + order[j]];
    if (best.matrix.empty() || encoding < best.matrix) best.matrix = encoding;

    std::size_t b = 0;
    for (; b < blocks.size(); ++b) {
      auto [lo, hi] = blocks[b];
      if (std::next_permutation(order.begin() + lo, order.begin() + hi)) break;
    }
    if (b == blocks.size()) break;
  }
  return best;
}

namespace {

struct IsoSearch {
  int n;
  std::vector<int> ma, mb;
  std::vector<DegreeKey> ka, kb;
  std::vector<Vertex> map, used;
  bool collect_all = false;
  std::vector<std::vector<Vertex>> found;

  bool extend(int u) {
    if (u == n) {
      found.push_back(map);
      return !collect_all;
    }
    for (Vertex x = 0; x < n; ++x) {
      if (used[x] || ka[u] != kb[x]) continue;
      bool ok = true;
      for (Vertex w = 0; w < u && ok; ++w)
        ok = ma[u * n + w] == mb[x * n + map[w]] && ma[w * n + u] == mb[map[w] * n + x];
      if (!ok) continue;
      map[u] = x;
      used[x] = 1;
      if (extend(u + 1)) return true;
      used[x] = 0;
    }
    return false;
  }
};

IsoSearch make_search(const Digraph& a, const Digraph& b) {
  IsoSearch s;
  s.n = a.num_vertices();
  s.ma = multiplicity_matrix(a);
  s.mb = multiplicity_matrix(b);
  s.ka = degree_keys(a);
  s.kb = degree_keys(b);
  s.map.assign(s.n, -1);
  s.used.assign(s.n, 0);
  return s;
}

}  // namespace

std::optional<std::vector<Vertex>> find_isomorphism(const Digraph& a, const Digraph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_arcs() != b.num_arcs()) return std::nullopt;
  auto ka = degree_keys(a), kb = degree_keys(b);
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  if (ka != kb) return std::nullopt;
  auto s = make_search(a, b);
  if (!s.extend(0)) return std::nullopt;
  return s.found.front();
}

std::vector<std::vector<Vertex>> automorphisms(const Digraph& h) {
  auto s = make_search(h, h);
  s.collect_all = true;
  s.extend(0);
  // The search visits images in increasing order, so the identity comes first.
  return s.found;
}

std::vector<Digraph> all_tournaments(int n) {
  if (n < 0 || n > 7) throw std::invalid_argument("all_tournaments supports 0 <= n <= 7");
  const int pairs = n * (n - 1) / 2;
  std::vector<Digraph> out;
  out.reserve(std::size_t{1} << pairs);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs); ++code)
    out.push_back(tournament_from_code(n, code));
  return out;
}

std::vector<Digraph> tournament_classes(int n) {
  if (n < 0 || n > 6) throw std::invalid_argument("tournament_classes supports 0 <= n <= 6");
  std::map<CanonicalForm, Digraph> classes;
  const int pairs = n * (n - 1) / 2;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs); ++code) {
    Digraph t = tournament_from_code(n, code);
    classes.try_emplace(canonical_form(t), t);
  }
  std::vector<Digraph> out;
  for (auto& [form, g] : classes) out.push_back(g);
  return out;
}

}  // namespace tourep
