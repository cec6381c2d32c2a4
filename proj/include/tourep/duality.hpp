#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "tourep/containment.hpp"
#include "tourep/set_system.hpp"
#include "tourep/width.hpp"

namespace tourep {

enum class Mode { Vertex, Arc };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view name);

// ---- packing and covering over explicit host families ----

/// Vertex sets (resp. arc sets) of the hosts, inclusion-minimal members only.
SetSystem host_sets(const HostFamily& hosts, Mode mode);

/// Maximum number of pairwise vertex- (arc-) disjoint hosts, with witnesses.
/// Throws std::invalid_argument for an incomplete family.
std::vector<Subdigraph> max_packing(const HostFamily& hosts, Mode mode);

/// Minimum vertex (arc) set meeting every host. Throws std::invalid_argument
/// for an incomplete family.
std::vector<int> min_cover(const HostFamily& hosts, Mode mode);

/// Inclusion-minimal vertex sets U such that g[U] contains h, by scanning
/// vertex subsets in order of size. A vertex-disjoint packing or a vertex
/// cover only depends on these sets.
std::vector<std::vector<Vertex>> minimal_host_vertex_sets(const Digraph& h, const Digraph& g, Relation rel,
                                                          const ContainmentOptions& options = {});

// ---- piercing subgraphs of a path ----

/// Subgraphs of the path 0, 1, ..., length-1, each given by its vertex indices.
struct PiercingInstance {
  int length = 0;
  std::vector<std::vector<int>> members;

  /// Largest number of maximal runs of consecutive indices in one member.
  int max_components() const;
};

/// Number of maximal runs of consecutive integers in a sorted index list.
int run_count(const std::vector<int>& sorted_indices);

struct PiercingResult {
  /// True: `members` holds k+1 pairwise disjoint member indices.
  /// False: `pierce` meets every member and is a minimum such set.
  bool packed = false;
  std::vector<std::size_t> members;
  std::vector<int> pierce;
};

/// Exact: returns k+1 disjoint members when they exist, otherwise a minimum
/// pierce set. Candidate points are restricted to right ends of runs, which
/// loses nothing (every point can slide right to the nearest such end).
PiercingResult pierce_path_subgraphs(const PiercingInstance& inst, int k);

inline long long piercing_bound(int p, int k) { return 2LL * p * p * k; }

// ---- constructive covers ----

/// Bag indices met by a vertex set (sorted).
std::vector<int> trace(const PathDecomposition& pd, const std::vector<Vertex>& vertices);

struct VertexCoverResult {
  bool packed = false;
  std::vector<Subdigraph> hosts;  // k vertex-disjoint hosts when packed
  std::vector<Vertex> cover;      // union of the pierced bags otherwise
  std::vector<int> pierced_bags;
  int components = 1;  // p, the SCC count of h
  int width = 0;       // width of the decomposition used
  long long bound = 0;  // 2p^2(k-1)(width+1)
};

/// Packing-or-cover from a path decomposition: traces of the minimal hosts
/// are pierced with parameter k-1, and the cover is the union of the pierced
/// bags. Supported: StrongMinor and Subdigraph for any h; ButterflyMinor and
/// TopologicalMinor when every arc of h lies in a strongly-connected
/// component; Immersion when h is strongly connected. Throws
/// std::invalid_argument outside that scope, for k < 1, or for an invalid pd.
VertexCoverResult cover_from_path_decomposition(const Digraph& h, const Digraph& g, Relation rel,
                                                const PathDecomposition& pd, int k,
                                                const ContainmentOptions& options = {});

struct ArcCoverResult {
  bool packed = false;
  std::vector<Subdigraph> hosts;  // k arc-disjoint immersion hosts when packed
  std::vector<ArcId> cover;       // union of the prefix cuts otherwise
  int cutwidth = 0;               // t, cutwidth of the layout
  long long bound = 0;            // k * t
};

/// Packing-or-cover from a vertex ordering: repeatedly takes the shortest
/// prefix v_1..v_i of the remaining order that contains h as an immersion,
/// records that host, cuts the arcs from v_1..v_{i-1} to v_i..v_n and goes on
/// with v_i..v_n. Requires h strongly connected with at least two vertices.
ArcCoverResult cover_from_cutwidth_ordering(const Digraph& h, const Digraph& g, const Layout& layout, int k,
                                            const ContainmentOptions& options = {});

// ---- verification ----

struct EpReport {
  Relation relation = Relation::StrongMinor;
  Mode mode = Mode::Vertex;
  int n = 0;
  int arcs = 0;
  int nu = 0;
  int tau = 0;
  int k = 0;
  std::string outcome;  // "packing" or "cover"
  int constructive_size = 0;
  long long bound_rhs = 0;
  bool bounds_ok = false;
  int pw = 0;
  int ctw = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> violations;
};

void to_json(nlohmann::json& j, const EpReport& r);
void from_json(const nlohmann::json& j, EpReport& r);

struct EpOptions {
  ContainmentOptions containment;
  std::uint64_t seed = 0;  // echoed into the reports
};

/// nu and tau of g plus one report per k = 1..k_max. Vertex mode runs the
/// path-decomposition cover on an optimal decomposition and checks
/// 2p^2(k-1)(pw+1); arc mode (Immersion only) runs the ordering cover on an
/// optimal cutwidth layout and checks k*ctw. Every packing is re-verified and
/// every cover is re-checked by a fresh containment search.
std::vector<EpReport> ep_verify(const Digraph& h, const Digraph& g, Relation rel, Mode mode, int k_max,
                                const EpOptions& options = {});

/// nu and tau for immersion in arc mode without enumerating every minimal
/// host: tau by lazily generated hitting-set constraints, nu by a greedy
/// packing that falls back to full enumeration when it falls short of tau.
std::pair<int, int> arc_packing_and_cover(const Digraph& h, const Digraph& g, Relation rel,
                                          const ContainmentOptions& options = {});

}  // namespace tourep
