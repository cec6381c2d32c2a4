#include "tourep/containment.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <set>

#include "search_engine.hpp"
#include "tourep/canonical.hpp"

namespace tourep {

std::string_view to_string(Relation rel) {
  switch (rel) {
    case Relation::Subdigraph:
      return "subdigraph";
    case Relation::TopologicalMinor:
      return "topological-minor";
    case Relation::Immersion:
      return "immersion";
    case Relation::StrongMinor:
      return "strong-minor";
    case Relation::ButterflyMinor:
      return "butterfly-minor";
  }
  return "?";
}

Relation parse_relation(std::string_view name) {
  std::string key;
  for (char c : name) key += c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  static const std::map<std::string, Relation, std::less<>> names{
      {"subdigraph", Relation::Subdigraph},
      {"topological-minor", Relation::TopologicalMinor},
      {"topological", Relation::TopologicalMinor},
      {"topologicalminor", Relation::TopologicalMinor},
      {"immersion", Relation::Immersion},
      {"strong-minor", Relation::StrongMinor},
      {"strong", Relation::StrongMinor},
      {"strongminor", Relation::StrongMinor},
      {"butterfly-minor", Relation::ButterflyMinor},
      {"butterfly", Relation::ButterflyMinor},
      {"butterflyminor", Relation::ButterflyMinor},
  };
  auto it = names.find(key);
  if (it == names.end()) throw std::invalid_argument("unknown relation '" + std::string(name) + "'");
  return it->second;
}

Digraph materialize(const Digraph& g, const Subdigraph& sub) {
  std::vector<Vertex> slot(g.num_vertices(), -1);
  int n = 0;
  for (Vertex v : sub.vertices) {
    if (!g.has_vertex(v)) throw std::out_of_range("subdigraph vertex out of range");
    if (slot[v] >= 0) throw std::invalid_argument("subdigraph repeats a vertex");
    slot[v] = n++;
  }
  std::vector<Arc> arcs;
  for (ArcId a : sub.arcs) {
    if (a < 0 || a >= g.num_arcs()) throw std::out_of_range("subdigraph arc out of range");
    const Arc& e = g.arc(a);
    if (slot[e.tail] < 0 || slot[e.head] < 0) throw std::invalid_argument("subdigraph arc leaves its vertex set");
    arcs.push_back({slot[e.tail], slot[e.head]});
  }
  return Digraph(n, std::move(arcs));
}

Subdigraph ContainmentModel::image(const Digraph& g) const {
  std::set<Vertex> vertices;
  std::set<ArcId> arcs;
  if (const auto* m = std::get_if<PathModel>(&data)) {
    vertices.insert(m->branch.begin(), m->branch.end());
    for (const auto& path : m->paths) arcs.insert(path.begin(), path.end());
  } else if (const auto* m = std::get_if<StrongMinorModel>(&data)) {
    for (const auto& set : m->branch_sets) vertices.insert(set.begin(), set.end());
    for (const auto& inner : m->inner_arcs) arcs.insert(inner.begin(), inner.end());
    arcs.insert(m->connections.begin(), m->connections.end());
  } else if (const auto* m = std::get_if<ButterflyModel>(&data)) {
    return m->witness;
  }
  for (ArcId a : arcs) {
    vertices.insert(g.arc(a).tail);
    vertices.insert(g.arc(a).head);
  }
  return {{vertices.begin(), vertices.end()}, {arcs.begin(), arcs.end()}};
}

namespace {

void check_caps(const Digraph& h, const Digraph& g, const ContainmentOptions& options) {
  if (h.num_vertices() < 1) throw std::invalid_argument("pattern must have at least one vertex");
  if (h.num_vertices() > options.max_pattern_vertices)
    throw std::length_error("pattern has " + std::to_string(h.num_vertices()) + " vertices, cap is " +
                            std::to_string(options.max_pattern_vertices));
  if (g.num_vertices() > options.max_host_vertices)
    throw std::length_error("host has " + std::to_string(g.num_vertices()) + " vertices, cap is " +
                            std::to_string(options.max_host_vertices));
}

ModelCheck fail(std::string reason, std::optional<ArcId> arc = {}, std::optional<Vertex> vertex = {}) {
  return {false, std::move(reason), arc, vertex};
}

bool valid_arc(const Digraph& g, ArcId a) { return a >= 0 && a < g.num_arcs(); }

ModelCheck check_path_model(const Digraph& h, const Digraph& g, Relation rel, const PathModel& m) {
  const int hn = h.num_vertices();
  if (static_cast<int>(m.branch.size()) != hn) return fail("branch map has the wrong size");
  std::vector<int> branch_of(g.num_vertices(), -1);
  for (Vertex v = 0; v < hn; ++v) {
    Vertex x = m.branch[v];
    if (!g.has_vertex(x)) return fail("branch vertex out of range", {}, x);
    if (branch_of[x] >= 0) return fail("branch map is not injective", {}, x);
    branch_of[x] = v;
  }
  if (static_cast<int>(m.paths.size()) != h.num_arcs()) return fail("path map has the wrong size");

  std::vector<char> arc_used(g.num_arcs(), 0);
  std::vector<char> interior_used(g.num_vertices(), 0);
  for (ArcId ha = 0; ha < h.num_arcs(); ++ha) {
    const auto& path = m.paths[ha];
    if (path.empty()) return fail("pattern arc " + std::to_string(ha) + " has an empty path");
    if (rel == Relation::Subdigraph && path.size() != 1)
      return fail("subdigraph model maps an arc to a longer path", path[1]);
    Vertex at = m.branch[h.arc(ha).tail];
    std::vector<Vertex> seen{at};
    for (std::size_t i = 0; i < path.size(); ++i) {
      ArcId a = path[i];
      if (!valid_arc(g, a)) return fail("path arc out of range", a);
      if (g.arc(a).tail != at) return fail("path is not contiguous", a);
      if (arc_used[a]) return fail("arc used by two paths", a);
      arc_used[a] = 1;
      at = g.arc(a).head;
      if (std::find(seen.begin(), seen.end(), at) != seen.end()) return fail("path repeats a vertex", a, at);
      seen.push_back(at);
      if (i + 1 < path.size() && rel == Relation::TopologicalMinor) {
        if (branch_of[at] >= 0) return fail("path passes through a branch vertex", a, at);
        if (interior_used[at]) return fail("paths share an interior vertex", a, at);
        interior_used[at] = 1;
      }
    }
    if (at != m.branch[h.arc(ha).head]) return fail("path ends away from the head's branch vertex", path.back());
  }
  return ModelCheck::ok();
}

ModelCheck check_strong_model(const Digraph& h, const Digraph& g, const StrongMinorModel& m) {
  const int hn = h.num_vertices();
  if (static_cast<int>(m.branch_sets.size()) != hn || static_cast<int>(m.inner_arcs.size()) != hn)
    return fail("branch sets have the wrong size");
  std::vector<int> owner(g.num_vertices(), -1);
  for (Vertex v = 0; v < hn; ++v) {
    if (m.branch_sets[v].empty()) return fail("empty branch set");
    for (Vertex x : m.branch_sets[v]) {
      if (!g.has_vertex(x)) return fail("branch vertex out of range", {}, x);
      if (owner[x] >= 0) return fail("branch sets overlap", {}, x);
      owner[x] = v;
    }
  }
  std::vector<char> arc_used(g.num_arcs(), 0);
  for (Vertex v = 0; v < hn; ++v) {
    const auto& set = m.branch_sets[v];
    std::vector<Vertex> local(g.num_vertices(), -1);
    for (std::size_t i = 0; i < set.size(); ++i) local[set[i]] = static_cast<int>(i);
    std::vector<Arc> arcs;
    for (ArcId a : m.inner_arcs[v]) {
      if (!valid_arc(g, a)) return fail("inner arc out of range", a);
      const Arc& e = g.arc(a);
      if (owner[e.tail] != v || owner[e.head] != v) return fail("inner arc leaves its branch set", a);
      if (arc_used[a]) return fail("arc used twice", a);
      arc_used[a] = 1;
      arcs.push_back({local[e.tail], local[e.head]});
    }
    if (!is_strongly_connected(Digraph(static_cast<int>(set.size()), std::move(arcs))))
      return fail("branch set of pattern vertex " + std::to_string(v) + " is not strongly connected", {}, set.front());
  }
  if (static_cast<int>(m.connections.size()) != h.num_arcs()) return fail("arc assignment has the wrong size");
  for (ArcId ha = 0; ha < h.num_arcs(); ++ha) {
    ArcId a = m.connections[ha];
    if (!valid_arc(g, a)) return fail("assigned arc out of range", a);
    const Arc& e = g.arc(a);
    if (owner[e.tail] != h.arc(ha).tail || owner[e.head] != h.arc(ha).head)
      return fail("assigned arc does not join the right branch sets", a);
    if (arc_used[a]) return fail("arc used twice", a);
    arc_used[a] = 1;
  }
  return ModelCheck::ok();
}

ModelCheck check_butterfly_model(const Digraph& h, const Digraph& g, const ButterflyModel& m) {
  const auto& w = m.witness;
  if (!std::is_sorted(w.vertices.begin(), w.vertices.end()) || !std::is_sorted(w.arcs.begin(), w.arcs.end()))
    return fail("witness is not sorted");
  std::vector<ArcId> local_arc(g.num_arcs(), -1);
  for (std::size_t i = 0; i < w.arcs.size(); ++i) {
    if (!valid_arc(g, w.arcs[i])) return fail("witness arc out of range", w.arcs[i]);
    local_arc[w.arcs[i]] = static_cast<ArcId>(i);
  }
  Digraph current;
  try {
    current = materialize(g, w);
  } catch (const std::exception& e) {
    return fail(std::string("witness is not a subdigraph: ") + e.what());
  }
  for (ArcId a : m.contractions) {
    if (!valid_arc(g, a) || local_arc[a] < 0) return fail("contracted arc is not in the witness", a);
    const ArcId now = local_arc[a];
    if (!is_contractible_arc(current, now)) return fail("arc is not contractible when its turn comes", a);
    Relabeled next = contract_butterfly(current, now);
    for (ArcId& la : local_arc)
      if (la >= 0) la = next.arc_map[la];
    current = std::move(next.graph);
  }
  if (!are_isomorphic(current, h)) return fail("contracted witness is not isomorphic to the pattern");
  return ModelCheck::ok();
}

}  // namespace

std::optional<ContainmentModel> contains(const Digraph& h, const Digraph& g, Relation rel,
                                         const ContainmentOptions& options) {
  check_caps(h, g, options);
  detail::CompiledPattern pattern(h, rel);
  detail::Budget budget(options.limits);
  auto model = detail::find_model(pattern, detail::full_view(g), budget);
  return model;
}

std::optional<ContainmentModel> contains_within(const Digraph& h, const Digraph& g, Relation rel,
                                                const Subdigraph& within, const ContainmentOptions& options) {
  check_caps(h, g, options);
  detail::CompiledPattern pattern(h, rel);
  detail::Budget budget(options.limits);
  return detail::find_model(pattern, detail::subdigraph_view(g, within), budget);
}

Subdigraph shrink_to_minimal_host(const Digraph& h, const Digraph& g, Relation rel, Subdigraph host,
                                  const ContainmentOptions& options) {
  check_caps(h, g, options);
  detail::CompiledPattern pattern(h, rel);
  detail::Budget budget(options.limits);
  detail::HostView view = detail::subdigraph_view(g, host);
  if (!detail::find_model(pattern, view, budget)) throw std::invalid_argument("subdigraph does not contain the pattern");
  for (ArcId a : host.arcs) {
    view.arcs.reset(static_cast<std::size_t>(a));
    if (!detail::find_model(pattern, view, budget)) view.arcs.set(static_cast<std::size_t>(a));
  }
  detail::VertexMask touched = 0;
  for (auto a = view.arcs.find_first(); a != detail::ArcSet::npos; a = view.arcs.find_next(a))
    touched |= detail::VertexMask{1} << g.arc(static_cast<ArcId>(a)).tail | detail::VertexMask{1}
                                                                                << g.arc(static_cast<ArcId>(a)).head;
  for (Vertex v : host.vertices) {
    const detail::VertexMask b = detail::VertexMask{1} << v;
    if (touched & b) continue;
    view.vertices &= ~b;
    if (!detail::find_model(pattern, view, budget)) view.vertices |= b;
  }
  return detail::to_subdigraph(view.vertices, view.arcs);
}

ModelCheck verify_model(const Digraph& h, const Digraph& g, const ContainmentModel& model) {
  if (const auto* m = std::get_if<PathModel>(&model.data)) {
    if (model.relation != Relation::Subdigraph && model.relation != Relation::TopologicalMinor &&
        model.relation != Relation::Immersion)
      return fail("path model given for " + std::string(to_string(model.relation)));
    return check_path_model(h, g, model.relation, *m);
  }
  if (const auto* m = std::get_if<StrongMinorModel>(&model.data)) {
    if (model.relation != Relation::StrongMinor) return fail("strong-minor model given for another relation");
    return check_strong_model(h, g, *m);
  }
  const auto& m = std::get<ButterflyModel>(model.data);
  if (model.relation != Relation::ButterflyMinor) return fail("butterfly model given for another relation");
  return check_butterfly_model(h, g, m);
}

HostFamily enumerate_minimal_hosts(const Digraph& h, const Digraph& g, Relation rel,
                                   const EnumerationOptions& options) {
  check_caps(h, g, options.containment);
  using detail::ArcSet;
  using detail::VertexMask;

  HostFamily family{rel, h, {}, true};
  detail::CompiledPattern pattern(h, rel);
  detail::Budget budget(options.containment.limits);

  auto holds = [&](VertexMask vertices, const ArcSet& arcs) {
    return detail::find_model(pattern, detail::HostView{&g, vertices, arcs}, budget).has_value();
  };
  std::map<std::pair<VertexMask, ArcSet>, bool> prune_memo;
  auto prune = [&](VertexMask vertices, const ArcSet& arcs) {
    auto key = std::pair{vertices, arcs};
    auto it = prune_memo.find(key);
    if (it != prune_memo.end()) return it->second;
    bool result = holds(vertices, arcs);
    prune_memo.emplace(std::move(key), result);
    return result;
  };

  std::set<std::pair<VertexMask, ArcSet>> seen;
  auto minimal = [&](VertexMask vertices, const ArcSet& arcs) {
    ArcSet fewer = arcs;
    VertexMask touched = 0;
    for (auto a = arcs.find_first(); a != ArcSet::npos; a = arcs.find_next(a)) {
      const Arc& e = g.arc(static_cast<ArcId>(a));
      touched |= VertexMask{1} << e.tail | VertexMask{1} << e.head;
      fewer.reset(a);
      bool still = holds(vertices, fewer);
      fewer.set(a);
      if (still) return false;
    }
    for (VertexMask isolated = vertices & ~touched; isolated; isolated &= isolated - 1)
      if (holds(vertices & ~(isolated & -isolated), arcs)) return false;
    return true;
  };
  auto visit = [&](VertexMask vertices, const ArcSet& arcs) {
    if (!seen.emplace(vertices, arcs).second) return false;
    if (!minimal(vertices, arcs)) return false;
    family.hosts.push_back(detail::to_subdigraph(vertices, arcs));
    if (family.hosts.size() >= options.max_hosts) {
      family.complete = false;
      return true;
    }
    return false;
  };

  try {
    detail::enumerate_models(pattern, detail::full_view(g), budget, prune, visit);
  } catch (const BudgetExceeded&) {
    family.complete = false;
  }
  std::sort(family.hosts.begin(), family.hosts.end());
  return family;
}

HostFamily enumerate_minimal_hosts(const Digraph& h, const Digraph& g, Relation rel, std::size_t cap) {
  EnumerationOptions options;
  options.max_hosts = cap;
  return enumerate_minimal_hosts(h, g, rel, options);
}

bool butterfly_minor_by_contraction(const Digraph& h, const Digraph& g) {
  if (h.num_vertices() < 1) throw std::invalid_argument("pattern must have at least one vertex");
  std::set<CanonicalForm> visited;
  std::vector<Digraph> stack{g};
  while (!stack.empty()) {
    Digraph d = std::move(stack.back());
    stack.pop_back();
    if (d.num_vertices() < h.num_vertices() || d.num_arcs() < h.num_arcs()) continue;
    if (!visited.insert(canonical_form(d)).second) continue;
    if (d.num_vertices() == h.num_vertices() && d.num_arcs() == h.num_arcs()) {
      if (are_isomorphic(d, h)) return true;
      continue;
    }
    for (ArcId a = 0; a < d.num_arcs(); ++a) {
      const ArcId one[] = {a};
      stack.push_back(delete_arcs(d, one).graph);
      if (is_contractible_arc(d, a)) stack.push_back(contract_butterfly(d, a).graph);
    }
    for (Vertex v = 0; v < d.num_vertices(); ++v) {
      const Vertex one[] = {v};
      stack.push_back(delete_vertices(d, one).graph);
    }
  }
  return false;
}

}  // namespace tourep
