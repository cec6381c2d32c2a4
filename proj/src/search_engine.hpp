#pragma once

// Backtracking model search shared by contains() and enumerate_minimal_hosts().
// Internal to the library.

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tourep/containment.hpp"

namespace tourep::detail {

using VertexMask = std::uint64_t;
using ArcSet = boost::dynamic_bitset<std::uint64_t>;

inline constexpr int kMaxViewVertices = 64;

/// A host restricted to a vertex mask and an arc set. An arc is usable only
/// when it is in the set and both endpoints are in the mask.
struct HostView {
  const Digraph* g = nullptr;
  VertexMask vertices = 0;
  ArcSet arcs;
};

HostView full_view(const Digraph& g);
HostView subdigraph_view(const Digraph& g, const Subdigraph& sub);
Subdigraph to_subdigraph(VertexMask vertices, const ArcSet& arcs);

/// Shared node counter so nested searches draw from one budget.
class Budget {
 public:
  explicit Budget(const SearchLimits& limits) : limits_(limits) {}
  void tick();
  std::uint64_t nodes() const { return nodes_; }

 private:
  SearchLimits limits_;
  std::uint64_t nodes_ = 0;
};

/// Pattern preprocessed for one relation.
struct CompiledPattern {
  Digraph h;
  Relation relation;
  std::vector<Vertex> order;         // placement order of pattern vertices
  std::vector<ArcId> arc_order;      // routing order of pattern arcs
  std::vector<int> scc_id;           // per pattern vertex
  std::vector<std::vector<Vertex>> automorphisms;  // without the identity

  CompiledPattern(const Digraph& pattern, Relation rel);
};

using ImageFn = std::function<bool(VertexMask, const ArcSet&)>;

/// First model in search order, or nullopt.
std::optional<ContainmentModel> find_model(const CompiledPattern& p, const HostView& view, Budget& budget);

/// Calls visit(vertices, arcs) for the image of every model whose branch
/// assignment is lexicographically least in its automorphism orbit. Before
/// extending a partial image that will certainly grow, calls prune(vertices,
/// arcs); a true result abandons the branch. visit returning true stops.
void enumerate_models(const CompiledPattern& p, const HostView& view, Budget& budget, const ImageFn& prune,
                      const ImageFn& visit);

}  // namespace tourep::detail
