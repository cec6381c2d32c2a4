#include "tourep/duality.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "search_engine.hpp"

namespace tourep {

std::string_view to_string(Mode mode) { return mode == Mode::Vertex ? "vertex" : "arc"; }

Mode parse_mode(std::string_view name) {
  if (name == "vertex") return Mode::Vertex;
  if (name == "arc") return Mode::Arc;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "' (expected vertex or arc)");
}

namespace {

void require_complete(const HostFamily& hosts) {
  if (!hosts.complete) throw std::invalid_argument("host family is incomplete (enumeration budget was hit)");
}

int ground_of(const std::vector<std::vector<int>>& members) {
  int ground = 0;
  for (const auto& m : members)
    for (int e : m) ground = std::max(ground, e + 1);
  return ground;
}

Subdigraph induced_subdigraph(const Digraph& g, std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : vertices) in[v] = 1;
  Subdigraph sub{std::move(vertices), {}};
  for (ArcId a = 0; a < g.num_arcs(); ++a)
    if (in[g.arc(a).tail] && in[g.arc(a).head]) sub.arcs.push_back(a);
  return sub;
}

Subdigraph without_vertices(const Digraph& g, const std::vector<Vertex>& removed) {
  std::vector<char> gone(g.num_vertices(), 0);
  for (Vertex v : removed) gone[v] = 1;
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (!gone[v]) keep.push_back(v);
  return induced_subdigraph(g, std::move(keep));
}

Subdigraph without_arcs(const Digraph& g, const std::vector<ArcId>& removed) {
  std::vector<char> gone(g.num_arcs(), 0);
  for (ArcId a : removed) gone[a] = 1;
  Subdigraph sub;
  for (Vertex v = 0; v < g.num_vertices(); ++v) sub.vertices.push_back(v);
  for (ArcId a = 0; a < g.num_arcs(); ++a)
    if (!gone[a]) sub.arcs.push_back(a);
  return sub;
}

// Minimal hosts F of g with F ∩ cover ⊆ S for some S ⊆ cover of the given
// size, in g's arc ids. A host meeting cover in few arcs lives in g minus the
// rest of cover, so each S costs one enumeration on a sparser graph.
std::vector<std::vector<ArcId>> hosts_meeting_cover(const Digraph& h, const Digraph& g, Relation rel,
                                                    const std::vector<ArcId>& cover, std::size_t size,
                                                    const ContainmentOptions& options) {
  std::set<std::vector<ArcId>> out;
  std::vector<char> pick(cover.size(), 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), 1);
  do {
    std::vector<ArcId> removed;
    for (std::size_t i = 0; i < cover.size(); ++i)
      if (!pick[i]) removed.push_back(cover[i]);
    const Subdigraph rest = without_arcs(g, removed);
    std::vector<Arc> arcs;
    for (ArcId a : rest.arcs) arcs.push_back(g.arc(a));
    EnumerationOptions enumeration;
    enumeration.containment = options;
    const HostFamily family = enumerate_minimal_hosts(h, Digraph(g.num_vertices(), std::move(arcs)), rel, enumeration);
    if (!family.complete) throw BudgetExceeded("minimal host enumeration hit its budget");
    for (const auto& host : family.hosts) {
      std::vector<ArcId> mapped;
      for (ArcId a : host.arcs) mapped.push_back(rest.arcs[static_cast<std::size_t>(a)]);
      std::sort(mapped.begin(), mapped.end());
      out.insert(std::move(mapped));
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return {out.begin(), out.end()};
}

void check_cover_scope(const Digraph& h, Relation rel) {
  const auto parts = scc(h);
  bool arcs_inside = true;
  for (const Arc& e : h.arcs()) arcs_inside &= parts.component_of[e.tail] == parts.component_of[e.head];
  switch (rel) {
    case Relation::StrongMinor:
    case Relation::Subdigraph:
      return;
    case Relation::ButterflyMinor:
    case Relation::TopologicalMinor:
      if (!arcs_inside)
        throw std::invalid_argument(std::string(to_string(rel)) +
                                    " cover needs a pattern whose arcs lie inside strongly-connected components");
      return;
    case Relation::Immersion:
      if (!is_strongly_connected(h))
        throw std::invalid_argument("immersion cover needs a strongly-connected pattern");
      return;
  }
}

bool pairwise_disjoint(const std::vector<Subdigraph>& hosts, Mode mode) {
  std::set<int> seen;
  for (const auto& host : hosts)
    for (int e : mode == Mode::Vertex ? host.vertices : host.arcs)
      if (!seen.insert(e).second) return false;
  return true;
}

}  // namespace

SetSystem host_sets(const HostFamily& hosts, Mode mode) {
  SetSystem sys;
  for (const auto& host : hosts.hosts) sys.members.push_back(mode == Mode::Vertex ? host.vertices : host.arcs);
  sys.ground_size = ground_of(sys.members);
  return inclusion_minimal(sys);
}

std::vector<Subdigraph> max_packing(const HostFamily& hosts, Mode mode) {
  require_complete(hosts);
  SetSystem all;
  for (const auto& host : hosts.hosts) all.members.push_back(mode == Mode::Vertex ? host.vertices : host.arcs);
  all.ground_size = ground_of(all.members);
  std::vector<Subdigraph> packing;
  for (std::size_t i : max_disjoint_members(all)) packing.push_back(hosts.hosts[i]);
  return packing;
}

std::vector<int> min_cover(const HostFamily& hosts, Mode mode) {
  require_complete(hosts);
  return min_hitting_set(host_sets(hosts, mode));
}

std::vector<std::vector<Vertex>> minimal_host_vertex_sets(const Digraph& h, const Digraph& g, Relation rel,
                                                          const ContainmentOptions& options) {
  if (h.num_vertices() < 1) throw std::invalid_argument("pattern must have at least one vertex");
  if (h.num_vertices() > options.max_pattern_vertices || g.num_vertices() > options.max_host_vertices)
    throw std::length_error("pattern or host exceeds the configured size caps");
  using detail::VertexMask;
  const int n = g.num_vertices();
  detail::CompiledPattern pattern(h, rel);
  detail::Budget budget(options.limits);
  detail::HostView view = detail::full_view(g);

  std::vector<VertexMask> masks;
  for (VertexMask s = 0; s < (VertexMask{1} << n); ++s)
    if (std::popcount(s) >= h.num_vertices()) masks.push_back(s);
  std::stable_sort(masks.begin(), masks.end(),
                   [](VertexMask a, VertexMask b) { return std::popcount(a) < std::popcount(b); });
  std::vector<VertexMask> found;
  for (VertexMask s : masks) {
    if (std::any_of(found.begin(), found.end(), [&](VertexMask f) { return (f & s) == f; })) continue;
    view.vertices = s;
    if (detail::find_model(pattern, view, budget)) found.push_back(s);
  }
  std::vector<std::vector<Vertex>> sets;
  for (VertexMask s : found) sets.push_back(detail::to_subdigraph(s, detail::ArcSet(0)).vertices);
  return sets;
}

int run_count(const std::vector<int>& sorted_indices) {
  int runs = 0;
  for (std::size_t i = 0; i < sorted_indices.size(); ++i)
    if (i == 0 || sorted_indices[i] != sorted_indices[i - 1] + 1) ++runs;
  return runs;
}

int PiercingInstance::max_components() const {
  int p = 0;
  for (auto m : members) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    p = std::max(p, run_count(m));
  }
  return p;
}

PiercingResult pierce_path_subgraphs(const PiercingInstance& inst, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  SetSystem sys{inst.length, {}};
  std::set<int> candidates;
  for (auto m : inst.members) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] < 0 || m[i] >= inst.length) throw std::out_of_range("piercing member index outside the path");
      if (i + 1 == m.size() || m[i + 1] != m[i] + 1) candidates.insert(m[i]);
    }
    sys.members.push_back(std::move(m));
  }
  PiercingResult result;
  auto disjoint = max_disjoint_members(sys, static_cast<std::size_t>(k) + 1);
  if (disjoint.size() >= static_cast<std::size_t>(k) + 1) {
    result.packed = true;
    result.members = std::move(disjoint);
    return result;
  }
  result.pierce = min_hitting_set(sys, {candidates.begin(), candidates.end()});
  return result;
}

std::vector<int> trace(const PathDecomposition& pd, const std::vector<Vertex>& vertices) {
  std::vector<int> indices;
  for (int i = 0; i < static_cast<int>(pd.bags.size()); ++i)
    for (Vertex v : pd.bags[i])
      if (std::find(vertices.begin(), vertices.end(), v) != vertices.end()) {
        indices.push_back(i);
        break;
      }
  return indices;
}

VertexCoverResult cover_from_path_decomposition(const Digraph& h, const Digraph& g, Relation rel,
                                                const PathDecomposition& pd, int k,
                                                const ContainmentOptions& options) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  check_cover_scope(h, rel);
  if (auto check = validate_path_decomposition(g, pd); !check.valid())
    throw std::invalid_argument("invalid path decomposition: " + check.describe());

  const auto sets = minimal_host_vertex_sets(h, g, rel, options);
  PiercingInstance inst{static_cast<int>(pd.bags.size()), {}};
  for (const auto& set : sets) inst.members.push_back(trace(pd, set));

  VertexCoverResult result;
  result.components = scc(h).count();
  result.width = pd.width();
  result.bound = piercing_bound(result.components, k - 1) * (result.width + 1);

  const auto pierced = pierce_path_subgraphs(inst, k - 1);
  if (pierced.packed) {
    result.packed = true;
    for (std::size_t i : pierced.members) {
      auto model = contains_within(h, g, rel, induced_subdigraph(g, sets[i]), options);
      if (!model) throw std::logic_error("minimal vertex set lost its host");
      result.hosts.push_back(model->image(g));
    }
    return result;
  }
  result.pierced_bags = pierced.pierce;
  std::set<Vertex> cover;
  for (int i : pierced.pierce) cover.insert(pd.bags[i].begin(), pd.bags[i].end());
  result.cover.assign(cover.begin(), cover.end());
  return result;
}

ArcCoverResult cover_from_cutwidth_ordering(const Digraph& h, const Digraph& g, const Layout& layout, int k,
                                            const ContainmentOptions& options) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (h.num_vertices() < 2 || !is_strongly_connected(h))
    throw std::invalid_argument("ordering cover needs a strongly-connected pattern with at least two vertices");
  check_layout(g, layout);
  const int n = g.num_vertices();
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[layout.order[i]] = i;

  ArcCoverResult result;
  result.cutwidth = layout_cutwidth(g, layout);
  result.bound = static_cast<long long>(k) * result.cutwidth;

  std::set<ArcId> cut;
  int start = 0;
  while (static_cast<int>(result.hosts.size()) < k) {
    std::optional<ContainmentModel> model;
    int end = start;  // prefix is order[start..end]
    std::vector<Vertex> prefix;
    for (; end < n; ++end) {
      prefix.push_back(layout.order[end]);
      model = contains_within(h, g, Relation::Immersion, induced_subdigraph(g, prefix), options);
      if (model) break;
    }
    if (!model) break;
    result.hosts.push_back(model->image(g));
    for (ArcId a = 0; a < g.num_arcs(); ++a) {
      const Arc& e = g.arc(a);
      if (pos[e.tail] >= start && pos[e.tail] < end && pos[e.head] >= end) cut.insert(a);
    }
    start = end;
  }
  if (static_cast<int>(result.hosts.size()) == k) {
    result.packed = true;
  } else {
    result.hosts.clear();
    result.cover.assign(cut.begin(), cut.end());
  }
  return result;
}

std::pair<int, int> arc_packing_and_cover(const Digraph& h, const Digraph& g, Relation rel,
                                          const ContainmentOptions& options) {
  if (h.num_arcs() == 0) throw std::invalid_argument("arc mode needs a pattern with at least one arc");
  SetSystem found{g.num_arcs(), {}};
  std::vector<int> cover;
  // tau of a growing pool never decreases, so the last value bounds the next.
  while (true) {
    cover = min_hitting_set(found, {}, cover.size());
    auto model = contains_within(h, g, rel, without_arcs(g, cover), options);
    if (!model) break;
    found.members.push_back(shrink_to_minimal_host(h, g, rel, model->image(g), options).arcs);
  }
  const int tau = static_cast<int>(cover.size());

  // Greedy packing in the residual; with the pool it bounds nu from below.
  std::vector<ArcId> used;
  while (auto model = contains_within(h, g, rel, without_arcs(g, used), options)) {
    auto host = shrink_to_minimal_host(h, g, rel, model->image(g), options);
    used.insert(used.end(), host.arcs.begin(), host.arcs.end());
    found.members.push_back(std::move(host.arcs));
  }
  int nu = static_cast<int>(max_disjoint_members(inclusion_minimal(found), static_cast<std::size_t>(tau)).size());
  // A packing of size t meets the cover tau times at least once each, so
  // every member meets it in at most tau - t + 1 arcs.
  for (int t = tau; t > nu; --t) {
    const SetSystem pool{g.num_arcs(),
                         hosts_meeting_cover(h, g, rel, cover, static_cast<std::size_t>(tau - t + 1), options)};
    if (static_cast<int>(max_disjoint_members(pool, static_cast<std::size_t>(t)).size()) >= t) {
      nu = t;
      break;
    }
  }
  return {nu, tau};
}

void to_json(nlohmann::json& j, const EpReport& r) {
  j = nlohmann::json{{"relation", to_string(r.relation)},
                     {"mode", to_string(r.mode)},
                     {"n", r.n},
                     {"arcs", r.arcs},
                     {"nu", r.nu},
                     {"tau", r.tau},
                     {"k", r.k},
                     {"outcome", r.outcome},
                     {"constructive_size", r.constructive_size},
                     {"bound_rhs", r.bound_rhs},
                     {"bounds_ok", r.bounds_ok},
                     {"pw", r.pw},
                     {"ctw", r.ctw},
                     {"seed", r.seed},
                     {"violations", r.violations}};
}

void from_json(const nlohmann::json& j, EpReport& r) {
  r.relation = parse_relation(j.at("relation").get<std::string>());
  r.mode = parse_mode(j.at("mode").get<std::string>());
  j.at("n").get_to(r.n);
  j.at("arcs").get_to(r.arcs);
  j.at("nu").get_to(r.nu);
  j.at("tau").get_to(r.tau);
  j.at("k").get_to(r.k);
  j.at("outcome").get_to(r.outcome);
  j.at("constructive_size").get_to(r.constructive_size);
  j.at("bound_rhs").get_to(r.bound_rhs);
  j.at("bounds_ok").get_to(r.bounds_ok);
  j.at("pw").get_to(r.pw);
  j.at("ctw").get_to(r.ctw);
  j.at("seed").get_to(r.seed);
  r.violations = j.value("violations", std::vector<std::string>{});
}

std::vector<EpReport> ep_verify(const Digraph& h, const Digraph& g, Relation rel, Mode mode, int k_max,
                                const EpOptions& options) {
  if (k_max < 1) throw std::invalid_argument("k_max must be positive");
  if (mode == Mode::Arc && rel != Relation::Immersion)
    throw std::invalid_argument("arc mode is defined for immersion only");
  const auto& copts = options.containment;
  const auto pw = directed_pathwidth(g);
  const auto ctw = cutwidth(g);

  int nu = 0, tau = 0;
  if (mode == Mode::Vertex) {
    SetSystem sys{g.num_vertices(), minimal_host_vertex_sets(h, g, rel, copts)};
    nu = static_cast<int>(max_disjoint_members(sys).size());
    tau = static_cast<int>(min_hitting_set(sys).size());
  } else {
    std::tie(nu, tau) = arc_packing_and_cover(h, g, rel, copts);
  }

  std::vector<EpReport> reports;
  for (int k = 1; k <= k_max; ++k) {
    EpReport r;
    r.relation = rel;
    r.mode = mode;
    r.n = g.num_vertices();
    r.arcs = g.num_arcs();
    r.nu = nu;
    r.tau = tau;
    r.k = k;
    r.pw = pw.value;
    r.ctw = ctw.value;
    r.seed = options.seed;
    if (tau < nu) r.violations.push_back("tau < nu");

    bool packed = false;
    std::vector<Subdigraph> hosts;
    std::vector<int> cover;
    Subdigraph rest;
    if (mode == Mode::Vertex) {
      auto res = cover_from_path_decomposition(h, g, rel, pw.decomposition(), k, copts);
      packed = res.packed;
      hosts = std::move(res.hosts);
      cover.assign(res.cover.begin(), res.cover.end());
      r.bound_rhs = res.bound;
      if (!packed) rest = without_vertices(g, res.cover);
    } else {
      auto res = cover_from_cutwidth_ordering(h, g, ctw.layout(), k, copts);
      packed = res.packed;
      hosts = std::move(res.hosts);
      cover.assign(res.cover.begin(), res.cover.end());
      r.bound_rhs = static_cast<long long>(k) * ctw.value;
      if (!packed) rest = without_arcs(g, res.cover);
    }

    if (packed) {
      r.outcome = "packing";
      if (static_cast<int>(hosts.size()) != k) r.violations.push_back("packing has the wrong size");
      for (const auto& host : hosts) {
        auto model = contains_within(h, g, rel, host, copts);
        if (!model || !verify_model(h, g, *model).valid)
          r.violations.push_back("packed subdigraph does not contain the pattern");
      }
      if (!pairwise_disjoint(hosts, mode)) r.violations.push_back("packed hosts are not disjoint");
      if (k > nu) r.violations.push_back("packing larger than nu");
    } else {
      r.outcome = "cover";
      r.constructive_size = static_cast<int>(cover.size());
      if (r.constructive_size > r.bound_rhs) r.violations.push_back("cover exceeds its bound");
      if (r.constructive_size < tau) r.violations.push_back("cover smaller than tau");
      if (contains_within(h, g, rel, rest, copts)) r.violations.push_back("pattern survives the cover");
    }
    r.bounds_ok = r.violations.empty();
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace tourep
