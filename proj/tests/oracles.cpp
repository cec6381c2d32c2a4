#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace oracle {

namespace {

std::vector<std::vector<int>> multiplicity_matrix(const Digraph& g) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (const auto& a : g.arcs()) ++m[static_cast<std::size_t>(a.tail)][static_cast<std::size_t>(a.head)];
  return m;
}

std::uint32_t reach(const Digraph& g, std::uint32_t mask, Vertex start, bool forward) {
  std::uint32_t seen = 1u << start;
  std::vector<Vertex> stack{start};
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (const auto& a : g.arcs()) {
      const Vertex from = forward ? a.tail : a.head, to = forward ? a.head : a.tail;
      if (from != v || !(mask >> to & 1u) || (seen >> to & 1u)) continue;
      seen |= 1u << to;
      stack.push_back(to);
    }
  }
  return seen;
}

// Spanning subdigraph keeping the arcs in arc_mask.
Digraph keep_arcs(const Digraph& g, std::uint64_t arc_mask) {
  std::vector<tourep::Arc> arcs;
  for (int i = 0; i < g.num_arcs(); ++i)
    if (arc_mask >> i & 1u) arcs.push_back(g.arc(i));
  return Digraph(g.num_vertices(), std::move(arcs));
}

Digraph induce(const Digraph& g, std::uint32_t mask) {
  std::vector<int> id(static_cast<std::size_t>(g.num_vertices()), -1);
  int n = 0;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (mask >> v & 1u) id[static_cast<std::size_t>(v)] = n++;
  std::vector<tourep::Arc> arcs;
  for (const auto& a : g.arcs()) {
    const int t = id[static_cast<std::size_t>(a.tail)], h = id[static_cast<std::size_t>(a.head)];
    if (t >= 0 && h >= 0) arcs.push_back({t, h});
  }
  return Digraph(n, std::move(arcs));
}

// All directed walks without repeated arcs from s to t, as arc-id lists; used
// by the immersion oracle.
void trails(const Digraph& g, Vertex at, Vertex target, std::uint64_t used, std::vector<int>& path,
            std::vector<std::vector<int>>& out) {
  if (at == target && !path.empty()) {
    out.push_back(path);
    return;
  }
  for (int i = 0; i < g.num_arcs(); ++i) {
    if ((used >> i & 1u) || g.arc(i).tail != at) continue;
    path.push_back(i);
    trails(g, g.arc(i).head, target, used | (std::uint64_t{1} << i), path, out);
    path.pop_back();
  }
}

bool immersion_paths(const Digraph& h, const Digraph& g, const std::vector<Vertex>& branch, std::size_t a,
                     std::uint64_t used) {
  if (a == static_cast<std::size_t>(h.num_arcs())) return true;
  const auto& pa = h.arc(static_cast<int>(a));
  std::vector<std::vector<int>> options;
  std::vector<int> path;
  trails(g, branch[static_cast<std::size_t>(pa.tail)], branch[static_cast<std::size_t>(pa.head)], used, path,
         options);
  for (const auto& p : options) {
    std::uint64_t next = used;
    for (int e : p) next |= std::uint64_t{1} << e;
    if (immersion_paths(h, g, branch, a + 1, next)) return true;
  }
  return false;
}

// Topological minor: simple paths whose interiors avoid branch vertices and
// each other.
bool topo_paths(const Digraph& h, const Digraph& g, const std::vector<Vertex>& branch, std::size_t a,
                std::uint32_t blocked, std::uint64_t used) {
  if (a == static_cast<std::size_t>(h.num_arcs())) return true;
  const auto& pa = h.arc(static_cast<int>(a));
  const Vertex s = branch[static_cast<std::size_t>(pa.tail)], t = branch[static_cast<std::size_t>(pa.head)];
  std::function<bool(Vertex, std::uint32_t, std::uint64_t)> walk = [&](Vertex at, std::uint32_t interior,
                                                                        std::uint64_t arcs) {
    for (int i = 0; i < g.num_arcs(); ++i) {
      const auto& e = g.arc(i);
      if (e.tail != at || (arcs >> i & 1u)) continue;
      const std::uint64_t next = arcs | (std::uint64_t{1} << i);
      if (e.head == t) {
        if (topo_paths(h, g, branch, a + 1, blocked | interior, next)) return true;
        continue;
      }
      if ((blocked >> e.head & 1u) || (interior >> e.head & 1u)) continue;
      if (walk(e.head, interior | (1u << e.head), next)) return true;
    }
    return false;
  };
  return walk(s, 0, used);
}

template <typename PathFn>
bool over_injections(const Digraph& h, const Digraph& g, PathFn paths) {
  const int p = h.num_vertices(), n = g.num_vertices();
  if (p > n) return false;
  std::vector<Vertex> branch(static_cast<std::size_t>(p));
  std::function<bool(int, std::uint32_t)> assign = [&](int v, std::uint32_t taken) {
    if (v == p) return paths(branch, taken);
    for (int x = 0; x < n; ++x) {
      if (taken >> x & 1u) continue;
      branch[static_cast<std::size_t>(v)] = x;
      if (assign(v + 1, taken | (1u << x))) return true;
    }
    return false;
  };
  return assign(0, 0);
}

bool butterfly_search(const Digraph& h, const Digraph& g, std::set<std::pair<int, std::vector<tourep::Arc>>>& seen);

}  // namespace

int cutwidth(const Digraph& g) {
  std::vector<Vertex> order(static_cast<std::size_t>(g.num_vertices()));
  std::iota(order.begin(), order.end(), 0);
  int best = g.num_arcs() + 1;
  do {
    std::vector<int> pos(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    int worst = 0;
    for (std::size_t cut = 1; cut < order.size(); ++cut) {
      int c = 0;
      for (const auto& a : g.arcs())
        if (pos[static_cast<std::size_t>(a.tail)] < static_cast<int>(cut) &&
            pos[static_cast<std::size_t>(a.head)] >= static_cast<int>(cut))
          ++c;
      worst = std::max(worst, c);
    }
    best = std::min(best, worst);
  } while (std::next_permutation(order.begin(), order.end()));
  return order.empty() ? 0 : best;
}

int pathwidth(const Digraph& g) {
  const int n = g.num_vertices();
  if (n == 0) return 0;
  std::vector<std::uint32_t> out(static_cast<std::size_t>(n), 0);
  for (const auto& a : g.arcs()) out[static_cast<std::size_t>(a.tail)] |= 1u << a.head;
  const std::uint32_t all = (1u << n) - 1;
  for (int w = 0; w < n; ++w) {
    // State: introduced set and current bag. A vertex may leave the bag once
    // every out-neighbour has been introduced (heads may not appear after
    // their tail's last bag); the bag never exceeds w+1 vertices.
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    std::queue<std::pair<std::uint32_t, std::uint32_t>> todo;
    todo.push({0, 0});
    seen.insert({0, 0});
    bool done = false;
    while (!todo.empty() && !done) {
      auto [intro, bag] = todo.front();
      todo.pop();
      if (intro == all) {
        done = true;
        break;
      }
      auto push = [&](std::uint32_t i, std::uint32_t b) {
        if (seen.insert({i, b}).second) todo.push({i, b});
      };
      for (int v = 0; v < n; ++v) {
        if (!(intro >> v & 1u) && std::popcount(bag) < w + 1) push(intro | (1u << v), bag | (1u << v));
        if ((bag >> v & 1u) && (out[static_cast<std::size_t>(v)] & ~intro) == 0) push(intro, bag & ~(1u << v));
      }
    }
    if (done) return w;
  }
  return n - 1;
}

bool strongly_connected(const Digraph& g, std::uint32_t mask) {
  if (mask == 0) return false;
  const Vertex s = std::countr_zero(mask);
  return (reach(g, mask, s, true) & mask) == mask && (reach(g, mask, s, false) & mask) == mask;
}

int scc_count(const Digraph& g) {
  const int n = g.num_vertices();
  const std::uint32_t all = n == 0 ? 0 : (n == 32 ? ~0u : (1u << n) - 1);
  std::uint32_t left = all;
  int count = 0;
  while (left) {
    const Vertex v = std::countr_zero(left);
    left &= ~(reach(g, all, v, true) & reach(g, all, v, false));
    ++count;
  }
  return count;
}

bool contains_subdigraph(const Digraph& h, const Digraph& g) {
  const auto hm = multiplicity_matrix(h), gm = multiplicity_matrix(g);
  return over_injections(h, g, [&](const std::vector<Vertex>& b, std::uint32_t) {
    for (std::size_t u = 0; u < hm.size(); ++u)
      for (std::size_t v = 0; v < hm.size(); ++v)
        if (hm[u][v] > gm[static_cast<std::size_t>(b[u])][static_cast<std::size_t>(b[v])]) return false;
    return true;
  });
}

bool contains_strong_minor(const Digraph& h, const Digraph& g) {
  const int p = h.num_vertices(), n = g.num_vertices();
  if (p == 0) return true;
  const auto hm = multiplicity_matrix(h), gm = multiplicity_matrix(g);
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  std::function<bool(int)> assign = [&](int x) {
    if (x == n) {
      std::vector<std::uint32_t> sets(static_cast<std::size_t>(p), 0);
      for (int v = 0; v < n; ++v)
        if (owner[static_cast<std::size_t>(v)] >= 0) sets[static_cast<std::size_t>(owner[static_cast<std::size_t>(v)])] |= 1u << v;
      for (auto s : sets)
        if (!strongly_connected(g, s)) return false;
      std::vector<std::vector<int>> between(static_cast<std::size_t>(p), std::vector<int>(static_cast<std::size_t>(p), 0));
      for (const auto& a : g.arcs()) {
        const int i = owner[static_cast<std::size_t>(a.tail)], j = owner[static_cast<std::size_t>(a.head)];
        if (i >= 0 && j >= 0 && i != j) ++between[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
          if (hm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] >
              between[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
            return false;
      return true;
    }
    for (int o = -1; o < p; ++o) {
      owner[static_cast<std::size_t>(x)] = o;
      if (assign(x + 1)) return true;
    }
    return false;
  };
  return assign(0);
}

namespace {

bool contains_immersion(const Digraph& h, const Digraph& g) {
  return over_injections(h, g, [&](const std::vector<Vertex>& b, std::uint32_t) {
    return immersion_paths(h, g, b, 0, 0);
  });
}

bool contains_topological(const Digraph& h, const Digraph& g) {
  return over_injections(h, g, [&](const std::vector<Vertex>& b, std::uint32_t taken) {
    return topo_paths(h, g, b, 0, taken, 0);
  });
}

std::pair<int, std::vector<tourep::Arc>> key(const Digraph& g) {
  // Cheap canonical key: the smallest sorted arc list over all relabelings.
  std::vector<Vertex> perm(static_cast<std::size_t>(g.num_vertices()));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<tourep::Arc> best;
  bool first = true;
  do {
    std::vector<tourep::Arc> arcs;
    for (const auto& a : g.arcs())
      arcs.push_back({perm[static_cast<std::size_t>(a.tail)], perm[static_cast<std::size_t>(a.head)]});
    std::sort(arcs.begin(), arcs.end());
    if (first || arcs < best) best = arcs;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {g.num_vertices(), best};
}

bool butterfly_search(const Digraph& h, const Digraph& g, std::set<std::pair<int, std::vector<tourep::Arc>>>& seen) {
  if (g.num_vertices() < h.num_vertices() || g.num_arcs() < h.num_arcs()) return false;
  if (!seen.insert(key(g)).second) return false;
  if (g.num_vertices() == h.num_vertices() && contains_subdigraph(h, g)) return true;
  for (int i = 0; i < g.num_arcs(); ++i) {
    std::vector<tourep::Arc> arcs = g.arcs();
    arcs.erase(arcs.begin() + i);
    if (butterfly_search(h, Digraph(g.num_vertices(), arcs), seen)) return true;
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    const std::uint32_t all = (1u << g.num_vertices()) - 1;
    if (butterfly_search(h, induce(g, all & ~(1u << v)), seen)) return true;
  }
  for (int i = 0; i < g.num_arcs(); ++i) {
    const auto [u, v] = g.arc(i);
    int into_v = 0, out_of_u = 0;
    for (const auto& a : g.arcs()) {
      into_v += a.head == v;
      out_of_u += a.tail == u;
    }
    if (into_v != 1 && out_of_u != 1) continue;
    // Merge v into u; the arc itself disappears.
    std::vector<tourep::Arc> arcs;
    auto relabel = [&](Vertex x) {
      if (x == v) x = u;
      return x > v ? x - 1 : x;
    };
    for (int j = 0; j < g.num_arcs(); ++j) {
      if (j == i) continue;
      const Vertex t = relabel(g.arc(j).tail), hd = relabel(g.arc(j).head);
      if (t != hd) arcs.push_back({t, hd});
    }
    if (butterfly_search(h, Digraph(g.num_vertices() - 1, arcs), seen)) return true;
  }
  return false;
}

}  // namespace

bool contains_in(const Digraph& h, const Digraph& g, tourep::Relation rel, std::uint32_t mask) {
  const Digraph sub = induce(g, mask);
  using tourep::Relation;
  switch (rel) {
    case Relation::Subdigraph:
      return contains_subdigraph(h, sub);
    case Relation::TopologicalMinor:
      return contains_topological(h, sub);
    case Relation::Immersion:
      return contains_immersion(h, sub);
    case Relation::StrongMinor:
      return contains_strong_minor(h, sub);
    case Relation::ButterflyMinor: {
      std::set<std::pair<int, std::vector<tourep::Arc>>> seen;
      return butterfly_search(h, sub, seen);
    }
  }
  throw std::logic_error("unknown relation");
}

int max_disjoint(const std::vector<std::vector<int>>& family) {
  std::vector<std::uint64_t> masks;
  for (const auto& m : family) {
    std::uint64_t b = 0;
    for (int e : m) b |= std::uint64_t{1} << e;
    masks.push_back(b);
  }
  int best = 0;
  std::function<void(std::size_t, std::uint64_t, int)> go = [&](std::size_t i, std::uint64_t used, int count) {
    best = std::max(best, count);
    if (count + static_cast<int>(masks.size() - i) <= best) return;
    for (std::size_t j = i; j < masks.size(); ++j)
      if (!(masks[j] & used)) go(j + 1, used | masks[j], count + 1);
  };
  go(0, 0, 0);
  return best;
}

int min_hitting(const std::vector<std::vector<int>>& family, int ground) {
  for (int size = 0; size <= ground; ++size) {
    std::vector<bool> pick(static_cast<std::size_t>(ground), false);
    std::fill(pick.begin(), pick.begin() + size, true);
    do {
      bool all = true;
      for (const auto& m : family) {
        bool hit = false;
        for (int e : m) hit = hit || pick[static_cast<std::size_t>(e)];
        if (!hit) {
          all = false;
          break;
        }
      }
      if (all) return size;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return -1;
}

std::pair<int, int> vertex_nu_tau(const Digraph& h, const Digraph& g, tourep::Relation rel) {
  const int n = g.num_vertices();
  const std::uint32_t all = (1u << n) - 1;
  std::map<std::uint32_t, bool> has;
  for (std::uint32_t m = 0; m <= all; ++m) has[m] = contains_in(h, g, rel, m);
  std::vector<std::vector<int>> family;
  for (std::uint32_t m = 1; m <= all; ++m) {
    if (!has[m]) continue;
    std::vector<int> set;
    for (int v = 0; v < n; ++v)
      if (m >> v & 1u) set.push_back(v);
    family.push_back(set);
  }
  int tau = n;
  for (std::uint32_t x = 0; x <= all; ++x)
    if (!has[all & ~x]) tau = std::min(tau, std::popcount(x));
  return {max_disjoint(family), has[all] ? tau : 0};
}

std::pair<int, int> arc_nu_tau(const Digraph& h, const Digraph& g) {
  const int m = g.num_arcs();
  if (m > 20) throw std::length_error("too many arcs for the arc oracle");
  const std::uint64_t all = (std::uint64_t{1} << m) - 1;
  std::vector<char> has(static_cast<std::size_t>(all + 1), 0);
  for (std::uint64_t s = 0; s <= all; ++s) has[s] = contains_immersion(h, keep_arcs(g, s));
  // Minimal arc sets are enough for packing.
  std::vector<std::vector<int>> family;
  for (std::uint64_t s = 1; s <= all; ++s) {
    if (!has[s]) continue;
    bool minimal = true;
    for (int i = 0; i < m && minimal; ++i)
      if ((s >> i & 1u) && has[s & ~(std::uint64_t{1} << i)]) minimal = false;
    if (!minimal) continue;
    std::vector<int> set;
    for (int i = 0; i < m; ++i)
      if (s >> i & 1u) set.push_back(i);
    family.push_back(set);
  }
  int tau = m;
  for (std::uint64_t y = 0; y <= all; ++y)
    if (!has[all & ~y]) tau = std::min(tau, std::popcount(y));
  return {max_disjoint(family), has[all] ? tau : 0};
}

int min_pierce(const tourep::PiercingInstance& inst) {
  std::vector<std::vector<int>> family = inst.members;
  return min_hitting(family, inst.length);
}

}  // namespace oracle
