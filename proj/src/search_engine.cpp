#include "search_engine.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "tourep/canonical.hpp"

namespace tourep::detail {

namespace {

constexpr VertexMask bit(Vertex v) { return VertexMask{1} << v; }

VertexMask all_vertices(int n) { return n >= 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1; }

}  // namespace

HostView full_view(const Digraph& g) {
  if (g.num_vertices() > kMaxViewVertices)
    throw std::length_error("host has more than " + std::to_string(kMaxViewVertices) + " vertices");
  HostView view{&g, all_vertices(g.num_vertices()), ArcSet(static_cast<std::size_t>(g.num_arcs()))};
  view.arcs.set();
  return view;
}

HostView subdigraph_view(const Digraph& g, const Subdigraph& sub) {
  if (g.num_vertices() > kMaxViewVertices)
    throw std::length_error("host has more than " + std::to_string(kMaxViewVertices) + " vertices");
  HostView view{&g, 0, ArcSet(static_cast<std::size_t>(g.num_arcs()))};
  for (Vertex v : sub.vertices) view.vertices |= bit(v);
  for (ArcId a : sub.arcs) view.arcs.set(static_cast<std::size_t>(a));
  return view;
}

Subdigraph to_subdigraph(VertexMask vertices, const ArcSet& arcs) {
  Subdigraph sub;
  for (VertexMask rest = vertices; rest; rest &= rest - 1) sub.vertices.push_back(std::countr_zero(rest));
  for (auto a = arcs.find_first(); a != ArcSet::npos; a = arcs.find_next(a))
    sub.arcs.push_back(static_cast<ArcId>(a));
  return sub;
}

void Budget::tick() {
  ++nodes_;
  if (limits_.max_nodes != 0 && nodes_ > limits_.max_nodes) throw BudgetExceeded("search node budget exhausted");
  if (limits_.deadline && (nodes_ & 1023U) == 0 && std::chrono::steady_clock::now() > *limits_.deadline)
    throw BudgetExceeded("search time budget exhausted");
}

CompiledPattern::CompiledPattern(const Digraph& pattern, Relation rel) : h(pattern), relation(rel) {
  const int n = h.num_vertices();
  if (n == 0) throw std::invalid_argument("pattern must have at least one vertex");

  // Most-constrained-first: next is the vertex with the most arcs to placed
  // vertices, then the highest degree, then the smallest id.
  std::vector<int> placed(n, 0), links(n, 0);
  for (int step = 0; step < n; ++step) {
    Vertex best = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (placed[v]) continue;
      auto deg = [&](Vertex u) { return h.out_degree(u) + h.in_degree(u); };
      if (best < 0 || links[v] > links[best] || (links[v] == links[best] && deg(v) > deg(best))) best = v;
    }
    placed[best] = 1;
    order.push_back(best);
    for (const Arc& e : h.arcs()) {
      if (e.tail == best) ++links[e.head];
      if (e.head == best) ++links[e.tail];
    }
  }
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  arc_order.resize(h.num_arcs());
  for (ArcId a = 0; a < h.num_arcs(); ++a) arc_order[a] = a;
  auto key = [&](ArcId a) {
    const Arc& e = h.arc(a);
    return std::tuple{std::max(pos[e.tail], pos[e.head]), std::min(pos[e.tail], pos[e.head]), pos[e.tail], a};
  };
  std::sort(arc_order.begin(), arc_order.end(), [&](ArcId a, ArcId b) { return key(a) < key(b); });

  scc_id = scc(h).component_of;
  automorphisms = tourep::automorphisms(h);
  automorphisms.erase(automorphisms.begin());
}

namespace {

// Per-view adjacency summaries.
struct ViewInfo {
  const Digraph& g;
  int n;
  VertexMask vertices;
  std::vector<char> arc_on;
  std::vector<VertexMask> out_mask, in_mask;
  std::vector<int> out_deg, in_deg;
  std::vector<int> scc_rep;

  explicit ViewInfo(const HostView& view)
      : g(*view.g),
        n(view.g->num_vertices()),
        vertices(view.vertices),
        arc_on(static_cast<std::size_t>(view.g->num_arcs()), 0),
        out_mask(n, 0),
        in_mask(n, 0),
        out_deg(n, 0),
        in_deg(n, 0),
        scc_rep(n, -1) {
    for (ArcId a = 0; a < g.num_arcs(); ++a) {
      const Arc& e = g.arc(a);
      if (!view.arcs.test(static_cast<std::size_t>(a)) || !(vertices & bit(e.tail)) || !(vertices & bit(e.head)))
        continue;
      arc_on[a] = 1;
      out_mask[e.tail] |= bit(e.head);
      in_mask[e.head] |= bit(e.tail);
      ++out_deg[e.tail];
      ++in_deg[e.head];
    }
    std::vector<VertexMask> reach(n, 0);
    for (VertexMask rest = vertices; rest; rest &= rest - 1) {
      Vertex v = std::countr_zero(rest);
      reach[v] = closure(bit(v), vertices, out_mask);
    }
    for (VertexMask rest = vertices; rest; rest &= rest - 1) {
      Vertex v = std::countr_zero(rest);
      if (scc_rep[v] >= 0) continue;
      for (VertexMask r = reach[v]; r; r &= r - 1) {
        Vertex w = std::countr_zero(r);
        if (reach[w] & bit(v)) scc_rep[w] = v;
      }
    }
  }

  // Vertices reachable from start inside within, following adjacency masks.
  static VertexMask closure(VertexMask start, VertexMask within, const std::vector<VertexMask>& adj) {
    VertexMask seen = start, frontier = start;
    while (frontier) {
      VertexMask next = 0;
      for (VertexMask f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
      next &= within & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen;
  }

  int arcs_between(VertexMask from, VertexMask to, const ArcSet& used) const {
    int count = 0;
    for (VertexMask rest = from; rest; rest &= rest - 1)
      for (ArcId a : g.out_arcs(std::countr_zero(rest)))
        if (arc_on[a] && !used.test(static_cast<std::size_t>(a)) && (to & bit(g.arc(a).head))) ++count;
    return count;
  }
};

// Is the vertex set strongly connected using only the listed arcs?
bool strongly_connected_on(const Digraph& g, VertexMask set, const std::vector<ArcId>& arcs,
                           const std::vector<char>& keep) {
  if (std::popcount(set) <= 1) return true;
  std::vector<VertexMask> out(g.num_vertices(), 0), in(g.num_vertices(), 0);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (!keep[i]) continue;
    const Arc& e = g.arc(arcs[i]);
    out[e.tail] |= bit(e.head);
    in[e.head] |= bit(e.tail);
  }
  VertexMask start = set & -set;
  return ViewInfo::closure(start, set, out) == set && ViewInfo::closure(start, set, in) == set;
}

class Search {
 public:
  Search(const CompiledPattern& p, const HostView& view, Budget& budget, const ImageFn* prune, const ImageFn* visit)
      : p_(p),
        h_(p.h),
        info_(view),
        budget_(budget),
        prune_(prune),
        visit_(visit),
        hn_(p.h.num_vertices()),
        hm_(p.h.num_arcs()),
        key_(hn_, -1),
        used_arcs_(static_cast<std::size_t>(info_.g.num_arcs())),
        vcount_(info_.n, 0),
        paths_(hm_),
        sets_(hn_, 0),
        inner_(hn_),
        conn_(hm_, -1),
        owner_(info_.n, -1),
        role_(info_.n, Role::None),
        tree_arc_(info_.n, -1),
        min_conn_(hm_, 0) {
    hmult_.assign(static_cast<std::size_t>(hn_) * hn_, 0);
    for (const Arc& e : h_.arcs()) ++hmult_[e.tail * hn_ + e.head];
  }

  bool run() {
    if (std::popcount(info_.vertices) < hn_) return false;
    int usable = 0;
    for (char on : info_.arc_on) usable += on;
    if (usable < hm_) return false;
    switch (p_.relation) {
      case Relation::Subdigraph:
      case Relation::TopologicalMinor:
      case Relation::Immersion:
        return assign_branch(0);
      case Relation::StrongMinor:
        return assign_strong(0);
      case Relation::ButterflyMinor:
        return assign_root(0);
    }
    return false;
  }

  const ContainmentModel& model() const { return found_; }

 private:
  enum class Role : char { None, Root, Out, In };

  ContainmentModel snapshot() const {
    ContainmentModel m;
    m.relation = p_.relation;
    switch (p_.relation) {
      case Relation::Subdigraph:
      case Relation::TopologicalMinor:
      case Relation::Immersion:
        m.data = PathModel{key_, paths_};
        break;
      case Relation::StrongMinor: {
        StrongMinorModel s;
        for (Vertex v = 0; v < hn_; ++v) s.branch_sets.push_back(to_subdigraph(sets_[v], ArcSet(0)).vertices);
        s.inner_arcs = inner_;
        for (auto& arcs : s.inner_arcs) std::sort(arcs.begin(), arcs.end());
        s.connections = conn_;
        m.data = std::move(s);
        break;
      }
      case Relation::ButterflyMinor: {
        ButterflyModel b;
        b.roots = key_;
        b.branch_sets.resize(hn_);
        for (Vertex w = 0; w < info_.n; ++w)
          if (owner_[w] >= 0) b.branch_sets[owner_[w]].push_back(w);
        b.witness = to_subdigraph(image_v_, used_arcs_);
        for (Vertex v = 0; v < hn_; ++v)
          for (Vertex w : b.branch_sets[v])
            if (role_[w] == Role::Out || role_[w] == Role::In) b.contractions.push_back(tree_arc_[w]);
        m.data = std::move(b);
        break;
      }
    }
    return m;
  }

  bool enumerating() const { return visit_ != nullptr; }

  // A partial image that already contains the pattern can only grow into a
  // non-minimal host.
  bool should_prune() const { return enumerating() && (*prune_)(image_v_, used_arcs_); }

  bool complete() {
    if (!enumerating()) {
      found_ = snapshot();
      return true;
    }
    return (*visit_)(image_v_, used_arcs_);
  }

  void add_image_vertex(Vertex v) {
    if (vcount_[v]++ == 0) image_v_ |= bit(v);
  }
  void remove_image_vertex(Vertex v) {
    if (--vcount_[v] == 0) image_v_ &= ~bit(v);
  }
  void use_arc(ArcId a) { used_arcs_.set(static_cast<std::size_t>(a)); }
  void unuse_arc(ArcId a) { used_arcs_.reset(static_cast<std::size_t>(a)); }
  bool arc_free(ArcId a) const { return info_.arc_on[a] && !used_arcs_.test(static_cast<std::size_t>(a)); }

  // Pattern vertices in one strongly-connected component must land in one
  // strongly-connected component of the host.
  bool scc_consistent(int placed, Vertex v, Vertex host_rep) const {
    for (int j = 0; j < placed; ++j) {
      Vertex u = p_.order[j];
      if (p_.scc_id[u] == p_.scc_id[v] && info_.scc_rep[key_[u]] != info_.scc_rep[host_rep]) return false;
    }
    return true;
  }

  // Least branch assignment in its orbit under the pattern's automorphisms.
  bool canonical() const {
    for (const auto& sigma : p_.automorphisms) {
      for (Vertex v = 0; v < hn_; ++v) {
        int permuted = key_[sigma[v]], base = key_[v];
        if (permuted < base) return false;
        if (permuted > base) break;
      }
    }
    return true;
  }

  bool parallel_to_previous(int j) const {
    return j > 0 && h_.arc(p_.arc_order[j]) == h_.arc(p_.arc_order[j - 1]);
  }

  // ---- subdigraph, topological minor, immersion ----

  bool assign_branch(int i) {
    budget_.tick();
    if (i == hn_) {
      if (enumerating() && !canonical()) return false;
      return route(0);
    }
    const Vertex v = p_.order[i];
    for (Vertex x = 0; x < info_.n; ++x) {
      if (!(info_.vertices & bit(x)) || (used_v_ & bit(x))) continue;
      if (info_.out_deg[x] < h_.out_degree(v) || info_.in_deg[x] < h_.in_degree(v)) continue;
      if (!scc_consistent(i, v, x)) continue;
      if (p_.relation == Relation::Subdigraph && !multiplicities_fit(i, v, x)) continue;
      key_[v] = x;
      used_v_ |= bit(x);
      add_image_vertex(x);
      bool stop = assign_branch(i + 1);
      remove_image_vertex(x);
      used_v_ &= ~bit(x);
      key_[v] = -1;
      if (stop) return true;
    }
    return false;
  }

  bool multiplicities_fit(int placed, Vertex v, Vertex x) const {
    for (int j = 0; j < placed; ++j) {
      Vertex u = p_.order[j];
      const VertexMask xu = bit(key_[u]), xv = bit(x);
      if (info_.arcs_between(xv, xu, used_arcs_) < hmult_[v * hn_ + u]) return false;
      if (info_.arcs_between(xu, xv, used_arcs_) < hmult_[u * hn_ + v]) return false;
    }
    return true;
  }

  bool route(int j) {
    if (j == hm_) return complete();
    const Arc& e = h_.arc(p_.arc_order[j]);
    // Parallel pattern arcs are interchangeable: order their first host arcs.
    ArcId min_first = parallel_to_previous(j) ? paths_[p_.arc_order[j - 1]].front() + 1 : 0;
    VertexMask saved = on_path_;
    on_path_ = bit(key_[e.tail]);
    bool stop = extend_path(j, key_[e.tail], key_[e.head], min_first);
    on_path_ = saved;
    return stop;
  }

  bool extend_path(int j, Vertex u, Vertex target, ArcId min_first) {
    budget_.tick();
    auto& path = paths_[p_.arc_order[j]];
    for (ArcId a : info_.g.out_arcs(u)) {
      if (!arc_free(a) || (path.empty() && a < min_first)) continue;
      const Vertex w = info_.g.arc(a).head;
      if (w == target) {
        path.push_back(a);
        use_arc(a);
        bool stop = false;
        if (!(j + 1 < hm_ && should_prune())) stop = route(j + 1);
        unuse_arc(a);
        path.pop_back();
        if (stop) return true;
        continue;
      }
      if (p_.relation == Relation::Subdigraph) continue;
      if (on_path_ & bit(w)) continue;
      const bool topological = p_.relation == Relation::TopologicalMinor;
      if (topological && (used_v_ & bit(w))) continue;
      path.push_back(a);
      use_arc(a);
      on_path_ |= bit(w);
      if (topological) used_v_ |= bit(w);
      add_image_vertex(w);
      bool stop = false;
      if (!should_prune()) stop = extend_path(j, w, target, min_first);
      remove_image_vertex(w);
      if (topological) used_v_ &= ~bit(w);
      on_path_ &= ~bit(w);
      unuse_arc(a);
      path.pop_back();
      if (stop) return true;
    }
    return false;
  }

  // ---- strong minor ----

  const std::vector<VertexMask>& strong_sets() {
    if (!sc_sets_computed_) {
      sc_sets_computed_ = true;
      const VertexMask all = info_.vertices;
      for (VertexMask s = all; s; s = (s - 1) & all) {
        VertexMask start = s & -s;
        if (ViewInfo::closure(start, s, info_.out_mask) == s && ViewInfo::closure(start, s, info_.in_mask) == s)
          sc_sets_.push_back(s);
      }
      std::sort(sc_sets_.begin(), sc_sets_.end(), [](VertexMask a, VertexMask b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
      });
    }
    return sc_sets_;
  }

  std::vector<ArcId> arcs_inside(VertexMask set) const {
    std::vector<ArcId> arcs;
    for (VertexMask rest = set; rest; rest &= rest - 1)
      for (ArcId a : info_.g.out_arcs(std::countr_zero(rest)))
        if (info_.arc_on[a] && (set & bit(info_.g.arc(a).head))) arcs.push_back(a);
    std::sort(arcs.begin(), arcs.end());
    return arcs;
  }

  // Drops arcs greedily in id order while the set stays strongly connected.
  std::vector<ArcId> some_minimal_spanning(VertexMask set) const {
    auto arcs = arcs_inside(set);
    std::vector<char> keep(arcs.size(), 1);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      keep[i] = 0;
      if (!strongly_connected_on(info_.g, set, arcs, keep)) keep[i] = 1;
    }
    std::vector<ArcId> out;
    for (std::size_t i = 0; i < arcs.size(); ++i)
      if (keep[i]) out.push_back(arcs[i]);
    return out;
  }

  // All minimal strongly-connected spanning arc sets of the set.
  const std::vector<std::vector<ArcId>>& all_minimal_spanning(VertexMask set) {
    auto it = mscs_cache_.find(set);
    if (it != mscs_cache_.end()) return it->second;
    std::vector<std::vector<ArcId>> found;
    const auto arcs = arcs_inside(set);
    // possible = chosen or undecided arcs. An arc (u,v) is redundant in every
    // superset of the chosen arcs once they hold another u->v path, so chosen
    // sets stay irredundant; an irredundant strongly-connected set is minimal.
    std::vector<char> chosen(arcs.size(), 0), possible(arcs.size(), 1);
    auto irredundant = [&] {
      std::vector<VertexMask> out(info_.n, 0);
      for (std::size_t c = 0; c < arcs.size(); ++c) {
        if (!chosen[c]) continue;
        const Arc& e = info_.g.arc(arcs[c]);
        if (out[e.tail] & bit(e.head)) return false;  // parallel
        out[e.tail] |= bit(e.head);
      }
      for (std::size_t c = 0; c < arcs.size(); ++c) {
        if (!chosen[c]) continue;
        const Arc& e = info_.g.arc(arcs[c]);
        out[e.tail] &= ~bit(e.head);
        bool bypass = ViewInfo::closure(bit(e.tail), set, out) & bit(e.head);
        out[e.tail] |= bit(e.head);
        if (bypass) return false;
      }
      return true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      budget_.tick();
      if (!strongly_connected_on(info_.g, set, arcs, possible)) return;
      if (strongly_connected_on(info_.g, set, arcs, chosen)) {
        std::vector<ArcId> picked;
        for (std::size_t c = 0; c < arcs.size(); ++c)
          if (chosen[c]) picked.push_back(arcs[c]);
        found.push_back(std::move(picked));
        return;
      }
      if (i == arcs.size()) return;
      chosen[i] = 1;
      if (irredundant()) rec(i + 1);
      chosen[i] = 0;
      possible[i] = 0;
      rec(i + 1);
      possible[i] = 1;
    };
    rec(0);
    return mscs_cache_.emplace(set, std::move(found)).first->second;
  }

  bool sets_fit(int placed, Vertex v, VertexMask set) const {
    for (int j = 0; j < placed; ++j) {
      Vertex u = p_.order[j];
      if (info_.arcs_between(set, sets_[u], used_arcs_) < hmult_[v * hn_ + u]) return false;
      if (info_.arcs_between(sets_[u], set, used_arcs_) < hmult_[u * hn_ + v]) return false;
    }
    return true;
  }

  bool assign_strong(int i) {
    budget_.tick();
    if (i == hn_) {
      if (enumerating() && !canonical()) return false;
      return connect(0);
    }
    const Vertex v = p_.order[i];
    const bool more_after = i + 1 < hn_ || hm_ > 0;
    const auto& candidates = strong_sets();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const VertexMask set = candidates[c];
      if (set & used_v_) continue;
      const Vertex rep = std::countr_zero(set);
      if (!scc_consistent(i, v, rep) || !sets_fit(i, v, set)) continue;
      sets_[v] = set;
      key_[v] = rep;
      used_v_ |= set;
      for (VertexMask r = set; r; r &= r - 1) add_image_vertex(std::countr_zero(r));

      bool stop = false;
      auto try_inner = [&](const std::vector<ArcId>& inner) {
        inner_[v] = inner;
        for (ArcId a : inner) use_arc(a);
        bool s = false;
        if (!(more_after && should_prune())) s = assign_strong(i + 1);
        for (ArcId a : inner) unuse_arc(a);
        return s;
      };
      if (enumerating()) {
        // Copy: the cache may rehash while deeper levels fill it.
        const auto options = all_minimal_spanning(set);
        for (const auto& inner : options)
          if ((stop = try_inner(inner))) break;
      } else {
        stop = try_inner(some_minimal_spanning(set));
      }

      for (VertexMask r = set; r; r &= r - 1) remove_image_vertex(std::countr_zero(r));
      used_v_ &= ~set;
      sets_[v] = 0;
      key_[v] = -1;
      if (stop) return true;
    }
    return false;
  }

  bool connect(int j) {
    if (j == hm_) return complete();
    budget_.tick();
    const ArcId ha = p_.arc_order[j];
    const Arc& e = h_.arc(ha);
    const ArcId min_arc = parallel_to_previous(j) ? conn_[p_.arc_order[j - 1]] + 1 : 0;
    for (VertexMask rest = sets_[e.tail]; rest; rest &= rest - 1) {
      for (ArcId a : info_.g.out_arcs(std::countr_zero(rest))) {
        if (a < min_arc || !arc_free(a) || !(sets_[e.head] & bit(info_.g.arc(a).head))) continue;
        conn_[ha] = a;
        use_arc(a);
        bool stop = false;
        if (!(j + 1 < hm_ && should_prune())) stop = connect(j + 1);
        unuse_arc(a);
        conn_[ha] = -1;
        if (stop) return true;
      }
    }
    return false;
  }

  // ---- butterfly minor ----
  //
  // Each pattern vertex v owns a root r_v, an out-branching grown from r_v
  // (role Out) and an in-branching into r_v (role In). Pattern arc (x,y) is
  // realized by walking down x's out-branching, taking one connection arc, and
  // walking up y's in-branching to r_y. Contracting every branching arc of
  // such a structure yields the pattern.

  void claim(Vertex w, Vertex owner, Role role) {
    owner_[w] = owner;
    role_[w] = role;
    used_v_ |= bit(w);
    add_image_vertex(w);
  }
  void release(Vertex w) {
    owner_[w] = -1;
    role_[w] = Role::None;
    tree_arc_[w] = -1;
    used_v_ &= ~bit(w);
    remove_image_vertex(w);
  }

  bool assign_root(int i) {
    budget_.tick();
    if (i == hn_) {
      if (enumerating() && !canonical()) return false;
      return route_butterfly(0);
    }
    const Vertex v = p_.order[i];
    for (Vertex x = 0; x < info_.n; ++x) {
      if (!(info_.vertices & bit(x)) || (used_v_ & bit(x))) continue;
      if ((h_.out_degree(v) > 0 && info_.out_deg[x] == 0) || (h_.in_degree(v) > 0 && info_.in_deg[x] == 0)) continue;
      if (!scc_consistent(i, v, x)) continue;
      key_[v] = x;
      claim(x, v, Role::Root);
      bool stop = assign_root(i + 1);
      release(x);
      key_[v] = -1;
      if (stop) return true;
    }
    return false;
  }

  bool route_butterfly(int j) {
    if (j == hm_) return complete();
    const ArcId ha = p_.arc_order[j];
    min_conn_[j] = parallel_to_previous(j) ? conn_[p_.arc_order[j - 1]] + 1 : 0;
    return out_phase(j, key_[h_.arc(ha).tail]);
  }

  bool finish_arc(int j) {
    if (j + 1 < hm_ && should_prune()) return false;
    VertexMask saved = on_path_;
    on_path_ = 0;
    bool stop = route_butterfly(j + 1);
    on_path_ = saved;
    return stop;
  }

  bool accepts_connection(Vertex w, Vertex y) const {
    return owner_[w] == y && (role_[w] == Role::Root || role_[w] == Role::In) && !(on_path_ & bit(w));
  }

  bool out_phase(int j, Vertex u) {
    budget_.tick();
    const ArcId ha = p_.arc_order[j];
    const Vertex x = h_.arc(ha).tail, y = h_.arc(ha).head;
    for (ArcId a : info_.g.out_arcs(u)) {
      if (!info_.arc_on[a]) continue;
      const Vertex w = info_.g.arc(a).head;
      if (owner_[w] == x && role_[w] == Role::Out && tree_arc_[w] == a) {
        if (out_phase(j, w)) return true;
        continue;
      }
      if (used_arcs_.test(static_cast<std::size_t>(a))) continue;
      if (accepts_connection(w, y)) {
        if (a < min_conn_[j]) continue;
        conn_[ha] = a;
        use_arc(a);
        bool stop = finish_arc(j);
        unuse_arc(a);
        conn_[ha] = -1;
        if (stop) return true;
        continue;
      }
      if (owner_[w] != -1 || !(info_.vertices & bit(w))) continue;
      if (a >= min_conn_[j]) {
        conn_[ha] = a;
        use_arc(a);
        claim(w, y, Role::In);
        on_path_ |= bit(w);
        bool stop = false;
        if (!should_prune()) stop = in_phase(j, w);
        on_path_ &= ~bit(w);
        release(w);
        unuse_arc(a);
        conn_[ha] = -1;
        if (stop) return true;
      }
      claim(w, x, Role::Out);
      tree_arc_[w] = a;
      use_arc(a);
      bool stop = false;
      if (!should_prune()) stop = out_phase(j, w);
      unuse_arc(a);
      release(w);
      if (stop) return true;
    }
    return false;
  }

  // w is a new in-branching vertex of the arc's head that still needs its arc
  // towards the root.
  bool in_phase(int j, Vertex w) {
    budget_.tick();
    const Vertex y = h_.arc(p_.arc_order[j]).head;
    for (ArcId a : info_.g.out_arcs(w)) {
      if (!arc_free(a)) continue;
      const Vertex z = info_.g.arc(a).head;
      if (accepts_connection(z, y)) {
        tree_arc_[w] = a;
        use_arc(a);
        bool stop = finish_arc(j);
        unuse_arc(a);
        tree_arc_[w] = -1;
        if (stop) return true;
        continue;
      }
      if (owner_[z] != -1 || !(info_.vertices & bit(z))) continue;
      tree_arc_[w] = a;
      use_arc(a);
      claim(z, y, Role::In);
      on_path_ |= bit(z);
      bool stop = false;
      if (!should_prune()) stop = in_phase(j, z);
      on_path_ &= ~bit(z);
      release(z);
      unuse_arc(a);
      tree_arc_[w] = -1;
      if (stop) return true;
    }
    return false;
  }

  const CompiledPattern& p_;
  const Digraph& h_;
  ViewInfo info_;
  Budget& budget_;
  const ImageFn* prune_;
  const ImageFn* visit_;
  int hn_, hm_;
  std::vector<int> hmult_;

  std::vector<int> key_;  // branch vertex, smallest set member, or root
  VertexMask used_v_ = 0;
  VertexMask on_path_ = 0;
  ArcSet used_arcs_;
  std::vector<int> vcount_;
  VertexMask image_v_ = 0;

  std::vector<std::vector<ArcId>> paths_;

  std::vector<VertexMask> sets_;
  std::vector<std::vector<ArcId>> inner_;
  std::vector<ArcId> conn_;
  bool sc_sets_computed_ = false;
  std::vector<VertexMask> sc_sets_;
  std::map<VertexMask, std::vector<std::vector<ArcId>>> mscs_cache_;

  std::vector<int> owner_;
  std::vector<Role> role_;
  std::vector<ArcId> tree_arc_;
  std::vector<ArcId> min_conn_;

  ContainmentModel found_;
};

}  // namespace

std::optional<ContainmentModel> find_model(const CompiledPattern& p, const HostView& view, Budget& budget) {
  Search search(p, view, budget, nullptr, nullptr);
  if (!search.run()) return std::nullopt;
  return search.model();
}

void enumerate_models(const CompiledPattern& p, const HostView& view, Budget& budget, const ImageFn& prune,
                      const ImageFn& visit) {
  Search search(p, view, budget, &prune, &visit);
  search.run();
}

}  // namespace tourep::detail
