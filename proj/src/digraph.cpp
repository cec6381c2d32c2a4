#include "tourep/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "tourep/rng.hpp"

namespace tourep {

Digraph::Digraph(int n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  out_.resize(static_cast<std::size_t>(n));
  in_.resize(static_cast<std::size_t>(n));
  for (ArcId a = 0; a < num_arcs(); ++a) {
    const Arc& e = arcs_[static_cast<std::size_t>(a)];
    if (!has_vertex(e.tail) || !has_vertex(e.head))
      throw std::out_of_range("arc " + std::to_string(e.tail) + "->" + std::to_string(e.head) +
                              " has an endpoint outside 0.." + std::to_string(n - 1));
    if (e.tail == e.head) throw std::invalid_argument("loop at vertex " + std::to_string(e.tail));
    out_[static_cast<std::size_t>(e.tail)].push_back(a);
    in_[static_cast<std::size_t>(e.head)].push_back(a);
  }
}

int Digraph::multiplicity(Vertex u, Vertex v) const {
  int count = 0;
  for (ArcId a : out_arcs(u))
    if (arcs_[static_cast<std::size_t>(a)].head == v) ++count;
  return count;
}

bool same_arc_multiset(const Digraph& a, const Digraph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_arcs() != b.num_arcs()) return false;
  auto x = a.arcs();
  auto y = b.arcs();
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

SccPartition scc(const Digraph& g) {
  // Iterative Tarjan. Tarjan emits components in reverse topological order.
  const int n = g.num_vertices();
  std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0);
  std::vector<Vertex> stack;
  std::vector<std::vector<Vertex>> found;
  int counter = 0;

  struct Frame {
    Vertex v;
    std::size_t next;
  };
  std::vector<Frame> call;
  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      auto outs = g.out_arcs(f.v);
      if (f.next < outs.size()) {
        Vertex w = g.arc(outs[f.next++]).head;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      Vertex v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<Vertex> comp;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        found.push_back(std::move(comp));
      }
    }
  }

  SccPartition out;
  out.components.assign(found.rbegin(), found.rend());
  out.component_of.assign(n, -1);
  for (int c = 0; c < out.count(); ++c)
    for (Vertex v : out.components[c]) out.component_of[v] = c;
  return out;
}

bool is_strongly_connected(const Digraph& g) {
  return g.num_vertices() >= 1 && scc(g).count() == 1;
}

bool is_s_semicomplete(const Digraph& g, int s) {
  const int n = g.num_vertices();
  std::vector<char> adjacent(static_cast<std::size_t>(n) * n, 0);
  for (const Arc& e : g.arcs()) {
    adjacent[e.tail * n + e.head] = 1;
    adjacent[e.head * n + e.tail] = 1;
  }
  for (Vertex v = 0; v < n; ++v) {
    int neighbours = 0;
    for (Vertex w = 0; w < n; ++w) neighbours += adjacent[v * n + w];
    if (neighbours < n - 1 - s) return false;
  }
  return true;
}

bool is_tournament(const Digraph& g) {
  const int n = g.num_vertices();
  if (g.num_arcs() != n * (n - 1) / 2) return false;
  std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
  for (const Arc& e : g.arcs()) {
    int lo = std::min(e.tail, e.head), hi = std::max(e.tail, e.head);
    if (seen[lo * n + hi]) return false;
    seen[lo * n + hi] = 1;
  }
  return true;
}

bool is_contractible_arc(const Digraph& g, ArcId a) {
  if (a < 0 || a >= g.num_arcs()) throw std::out_of_range("arc id " + std::to_string(a) + " not in digraph");
  const Arc& e = g.arc(a);
  return g.in_degree(e.head) == 1 || g.out_degree(e.tail) == 1;
}

namespace {

// Rebuilds g after mapping vertices through vertex_map (dense new ids, -1 =
// deleted) and dropping arcs in drop_arc or whose endpoints vanish or collapse.
Relabeled rebuild(const Digraph& g, std::vector<Vertex> vertex_map, int new_n,
                  const std::vector<char>& drop_arc) {
  Relabeled out;
  out.arc_map.assign(g.num_arcs(), -1);
  std::vector<Arc> arcs;
  for (ArcId a = 0; a < g.num_arcs(); ++a) {
    if (!drop_arc.empty() && drop_arc[a]) continue;
    const Arc& e = g.arc(a);
    Vertex t = vertex_map[e.tail], h = vertex_map[e.head];
    if (t < 0 || h < 0 || t == h) continue;
    out.arc_map[a] = static_cast<ArcId>(arcs.size());
    arcs.push_back({t, h});
  }
  out.graph = Digraph(new_n, std::move(arcs));
  out.vertex_map = std::move(vertex_map);
  return out;
}

void check_vertices(const Digraph& g, std::span<const Vertex> vs) {
  for (Vertex v : vs)
    if (!g.has_vertex(v)) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
}

// Collapses the marked vertices into the slot of the smallest marked one.
Relabeled merge_vertices(const Digraph& g, const std::vector<char>& in_set) {
  const int n = g.num_vertices();
  std::vector<Vertex> map(n, -1);
  int next = 0, merged = -1;
  for (Vertex v = 0; v < n; ++v) {
    if (in_set[v]) {
      if (merged < 0) merged = next++;
      map[v] = merged;
    } else {
      map[v] = next++;
    }
  }
  return rebuild(g, std::move(map), next, {});
}

}  // namespace

Relabeled contract_butterfly(const Digraph& g, ArcId a) {
  if (!is_contractible_arc(g, a))
    throw std::invalid_argument("arc " + std::to_string(a) + " is not contractible");
  std::vector<char> in_set(g.num_vertices(), 0);
  in_set[g.arc(a).tail] = in_set[g.arc(a).head] = 1;
  return merge_vertices(g, in_set);
}

Relabeled contract_strong(const Digraph& g, std::span<const Vertex> set) {
  if (set.empty()) throw std::invalid_argument("cannot contract an empty vertex set");
  check_vertices(g, set);
  auto sub = induced(g, set);
  if (!is_strongly_connected(sub.graph))
    throw std::invalid_argument("contracted set does not induce a strongly-connected subdigraph");
  std::vector<char> in_set(g.num_vertices(), 0);
  for (Vertex v : set) in_set[v] = 1;
  return merge_vertices(g, in_set);
}

Relabeled induced(const Digraph& g, std::span<const Vertex> vertices) {
  check_vertices(g, vertices);
  std::vector<char> keep(g.num_vertices(), 0);
  for (Vertex v : vertices) keep[v] = 1;
  std::vector<Vertex> map(g.num_vertices(), -1);
  int next = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (keep[v]) map[v] = next++;
  return rebuild(g, std::move(map), next, {});
}

Relabeled delete_vertices(const Digraph& g, std::span<const Vertex> vertices) {
  check_vertices(g, vertices);
  std::vector<char> drop(g.num_vertices(), 0);
  for (Vertex v : vertices) drop[v] = 1;
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (!drop[v]) keep.push_back(v);
  return induced(g, keep);
}

Relabeled delete_arcs(const Digraph& g, std::span<const ArcId> arcs) {
  std::vector<char> drop(g.num_arcs(), 0);
  for (ArcId a : arcs) {
    if (a < 0 || a >= g.num_arcs()) throw std::out_of_range("arc id " + std::to_string(a) + " out of range");
    drop[a] = 1;
  }
  std::vector<Vertex> map(g.num_vertices());
  std::iota(map.begin(), map.end(), 0);
  return rebuild(g, std::move(map), g.num_vertices(), drop);
}

Digraph disjoint_union(const Digraph& g, const Digraph& h) {
  std::vector<Arc> arcs = g.arcs();
  const int off = g.num_vertices();
  for (const Arc& e : h.arcs()) arcs.push_back({e.tail + off, e.head + off});
  return Digraph(g.num_vertices() + h.num_vertices(), std::move(arcs));
}

Digraph disjoint_copies(const Digraph& h, int k) {
  Digraph out;
  for (int i = 0; i < k; ++i) out = disjoint_union(out, h);
  return out;
}

Digraph directed_cycle(int n) {
  if (n < 2) throw std::invalid_argument("a directed cycle needs at least 2 vertices");
  std::vector<Arc> arcs;
  for (Vertex v = 0; v < n; ++v) arcs.push_back({v, (v + 1) % n});
  return Digraph(n, std::move(arcs));
}

Digraph directed_path(int n) {
  std::vector<Arc> arcs;
  for (Vertex v = 0; v + 1 < n; ++v) arcs.push_back({v, v + 1});
  return Digraph(n, std::move(arcs));
}

Digraph transitive_tournament(int n) {
  std::vector<Arc> arcs;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) arcs.push_back({i, j});
  return Digraph(n, std::move(arcs));
}

Digraph complete_digraph(int n) {
  std::vector<Arc> arcs;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j)
      if (i != j) arcs.push_back({i, j});
  return Digraph(n, std::move(arcs));
}

Digraph random_tournament(int n, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  Rng rng(seed);
  std::vector<Arc> arcs;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) arcs.push_back(rng.coin() ? Arc{i, j} : Arc{j, i});
  return Digraph(n, std::move(arcs));
}

namespace {

Digraph sample_s_semicomplete(int n, int s, int max_multiplicity, Rng& rng) {
  // mult[u*n+v] = number of arcs u -> v
  std::vector<int> mult(static_cast<std::size_t>(n) * n, 0);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) {
      if (rng.coin()) ++mult[i * n + j];
      else ++mult[j * n + i];
    }

  std::vector<int> missing(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    int budget = static_cast<int>(rng.below(static_cast<std::uint64_t>(s) + 1));
    for (int attempt = 0; attempt < budget; ++attempt) {
      if (missing[v] >= s || n < 2) break;
      Vertex w = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
      if (w == v || missing[w] >= s) continue;
      if (mult[v * n + w] + mult[w * n + v] == 0) continue;
      mult[v * n + w] = mult[w * n + v] = 0;
      ++missing[v];
      ++missing[w];
    }
  }

  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) {
      if (mult[i * n + j] + mult[j * n + i] == 0) continue;
      if (rng.below(4) != 0) continue;
      auto [u, v] = rng.coin() ? std::pair{i, j} : std::pair{j, i};
      if (mult[u * n + v] < max_multiplicity) ++mult[u * n + v];
    }

  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      for (int c = 0; c < mult[u * n + v]; ++c) arcs.push_back({u, v});
  return Digraph(n, std::move(arcs));
}

}  // namespace

Digraph random_s_semicomplete(int n, int s, int max_multiplicity, std::uint64_t seed) {
  if (n < 0 || s < 0) throw std::invalid_argument("negative size parameter");
  if (max_multiplicity < 1) throw std::invalid_argument("max_multiplicity must be at least 1");
  Rng rng(seed);
  constexpr int kMaxAttempts = 64;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Digraph g = sample_s_semicomplete(n, s, max_multiplicity, rng);
    if (is_s_semicomplete(g, s)) return g;
  }
  throw std::runtime_error("random_s_semicomplete: no valid sample after retries");
}

Digraph tournament_from_code(int n, std::uint64_t code) {
  std::vector<Arc> arcs;
  int bit = 0;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j, ++bit)
      arcs.push_back(((code >> bit) & 1U) ? Arc{i, j} : Arc{j, i});
  return Digraph(n, std::move(arcs));
}

}  // namespace tourep
