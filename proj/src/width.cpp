#include "tourep/width.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

namespace tourep {

int PathDecomposition::width() const {
  int w = 0;
  for (const auto& bag : bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
  return w;
}

void check_layout(const Digraph& g, const Layout& layout) {
  const int n = g.num_vertices();
  if (static_cast<int>(layout.order.size()) != n)
    throw std::invalid_argument("layout length does not match vertex count");
  std::vector<char> seen(n, 0);
  for (Vertex v : layout.order) {
    if (!g.has_vertex(v) || seen[v]) throw std::invalid_argument("layout is not a permutation of the vertices");
    seen[v] = 1;
  }
}

namespace {

std::vector<int> positions(const Layout& layout) {
  std::vector<int> pos(layout.order.size());
  for (std::size_t i = 0; i < layout.order.size(); ++i) pos[layout.order[i]] = static_cast<int>(i);
  return pos;
}

}  // namespace

int layout_cutwidth(const Digraph& g, const Layout& layout) {
  check_layout(g, layout);
  const int n = g.num_vertices();
  const auto pos = positions(layout);
  // delta[i]: change of the forward cut when the boundary moves past position i.
  std::vector<int> delta(n + 1, 0);
  for (const Arc& e : g.arcs()) {
    int a = pos[e.tail], b = pos[e.head];
    if (a < b) {
      ++delta[a + 1];
      --delta[b + 1];
    }
  }
  int best = 0, cut = 0;
  for (int i = 0; i <= n; ++i) {
    cut += delta[i];
    best = std::max(best, cut);
  }
  return best;
}

int layout_vertex_separation(const Digraph& g, const Layout& layout) {
  check_layout(g, layout);
  const int n = g.num_vertices();
  const auto pos = positions(layout);
  // u is "open" at boundary i (prefix of length i) when pos[u] < i <= last(u),
  // last(u) = max position of an out-neighbour.
  std::vector<int> delta(n + 2, 0);
  for (Vertex u = 0; u < n; ++u) {
    int last = -1;
    for (ArcId a : g.out_arcs(u)) last = std::max(last, pos[g.arc(a).head]);
    if (last > pos[u]) {
      ++delta[pos[u] + 1];
      --delta[last + 1];
    }
  }
  int best = 0, open = 0;
  for (int i = 0; i <= n; ++i) {
    open += delta[i];
    best = std::max(best, open);
  }
  return best;
}

namespace {

using Mask = std::uint32_t;

// value[S] = min over orderings of S of the max cost over its prefixes, where
// cost depends only on the prefix set. The optimal order is recovered from the
// full set backwards, always removing the smallest vertex that attains the
// optimum.
template <typename CostFn>
Layout subset_dp(int n, CostFn cost) {
  if (n == 0) return {};
  const Mask full = (Mask{1} << n) - 1;
  std::vector<std::uint8_t> value(std::size_t{full} + 1, 0);
  for (Mask s = 1; s <= full; ++s) {
    int best = std::numeric_limits<int>::max();
    for (Mask rest = s; rest; rest &= rest - 1) {
      Vertex v = std::countr_zero(rest);
      best = std::min(best, static_cast<int>(value[s & ~(Mask{1} << v)]));
    }
    value[s] = static_cast<std::uint8_t>(std::min(255, std::max(best, cost(s))));
  }
  std::vector<Vertex> order(n);
  Mask s = full;
  for (int i = n - 1; i >= 0; --i) {
    for (Mask rest = s; rest; rest &= rest - 1) {
      Vertex v = std::countr_zero(rest);
      Mask prev = s & ~(Mask{1} << v);
      if (std::max<int>(value[prev], cost(s)) == value[s]) {
        order[i] = v;
        s = prev;
        break;
      }
    }
  }
  return Layout{std::move(order)};
}

}  // namespace

WidthCertificate cutwidth(const Digraph& g) {
  const int n = g.num_vertices();
  if (n > kMaxCutwidthVertices)
    throw std::length_error("cutwidth: exact DP limited to " + std::to_string(kMaxCutwidthVertices) + " vertices");
  if (g.num_arcs() > 255) throw std::length_error("cutwidth: too many arcs for the DP value type");
  // arcs_out[v] lists (head, count) pairs.
  std::vector<std::vector<std::pair<Vertex, int>>> out(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (int m = g.multiplicity(u, v)) out[u].emplace_back(v, m);
  auto cost = [&](Mask s) {
    int c = 0;
    for (Mask rest = s; rest; rest &= rest - 1)
      for (auto [v, m] : out[std::countr_zero(rest)])
        if (!(s >> v & 1U)) c += m;
    return c;
  };
  Layout layout = subset_dp(n, cost);
  int value = layout_cutwidth(g, layout);
  return {value, std::move(layout)};
}

WidthCertificate directed_pathwidth(const Digraph& g) {
  const int n = g.num_vertices();
  if (n > kMaxPathwidthVertices)
    throw std::length_error("directed_pathwidth: exact DP limited to " + std::to_string(kMaxPathwidthVertices) +
                            " vertices");
  std::vector<Mask> out_mask(n, 0);
  for (const Arc& e : g.arcs()) out_mask[e.tail] |= Mask{1} << e.head;
  auto cost = [&](Mask s) {
    int c = 0;
    for (Mask rest = s; rest; rest &= rest - 1)
      if (out_mask[std::countr_zero(rest)] & ~s) ++c;
    return c;
  };
  Layout layout = subset_dp(n, cost);
  PathDecomposition pd = layout_to_decomposition(g, layout);
  int value = pd.width();
  return {value, std::move(pd)};
}

PathDecomposition layout_to_decomposition(const Digraph& g, const Layout& layout) {
  check_layout(g, layout);
  const int n = g.num_vertices();
  const auto pos = positions(layout);
  std::vector<int> last(n, -1);  // last position of an out-neighbour
  for (const Arc& e : g.arcs()) last[e.tail] = std::max(last[e.tail], pos[e.head]);
  PathDecomposition pd;
  pd.bags.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      Vertex u = layout.order[j];
      if (last[u] >= i) pd.bags[i].push_back(u);
    }
    pd.bags[i].push_back(layout.order[i]);
  }
  return pd;
}

std::string DecompositionCheck::describe() const {
  switch (violation) {
    case Violation::None:
      return "valid";
    case Violation::MissingVertex:
      return "vertex " + std::to_string(vertex) + " is in no bag";
    case Violation::ArcNotCovered:
      return "arc " + std::to_string(arc.tail) + "->" + std::to_string(arc.head) +
             " has its head only in bags after the tail's last bag";
    case Violation::NotContiguous:
      return "bags containing vertex " + std::to_string(vertex) + " are not contiguous";
  }
  return {};
}

DecompositionCheck validate_path_decomposition(const Digraph& g, const PathDecomposition& pd) {
  const int n = g.num_vertices();
  std::vector<int> first(n, -1), last(n, -1), count(n, 0);
  for (int i = 0; i < static_cast<int>(pd.bags.size()); ++i) {
    std::vector<char> in_bag(n, 0);
    for (Vertex v : pd.bags[i]) {
      if (!g.has_vertex(v)) throw std::out_of_range("bag entry " + std::to_string(v) + " is not a vertex");
      if (in_bag[v]) continue;
      in_bag[v] = 1;
      if (first[v] < 0) first[v] = i;
      last[v] = i;
      ++count[v];
    }
  }
  DecompositionCheck check;
  for (Vertex v = 0; v < n; ++v)
    if (first[v] < 0) {
      check.violation = DecompositionCheck::Violation::MissingVertex;
      check.vertex = v;
      return check;
    }
  // Condition on arcs: some j <= i with tail in X_i, head in X_j, i.e. the
  // head's first bag is no later than the tail's last bag.
  for (const Arc& e : g.arcs())
    if (first[e.head] > last[e.tail]) {
      check.violation = DecompositionCheck::Violation::ArcNotCovered;
      check.arc = e;
      return check;
    }
  for (Vertex v = 0; v < n; ++v)
    if (count[v] != last[v] - first[v] + 1) {
      check.violation = DecompositionCheck::Violation::NotContiguous;
      check.vertex = v;
      return check;
    }
  return check;
}

}  // namespace tourep
