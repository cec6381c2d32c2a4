#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tourep/duality.hpp"

namespace tourep {

/// Named digraphs: "C<n>" (directed cycle, n >= 2), "TT<n>" (transitive
/// tournament), "P<n>" (directed path), "K<n>" (complete digraph),
/// "2-cycle"/"two-cycle" (= C2), and "<k>C<n>" or "<k>xC<n>" for k disjoint
/// copies of C<n>. Returns nullopt for anything else.
std::optional<Digraph> builtin_digraph(std::string_view name);

/// Reads a dgr file. Throws ParseError for malformed text and
/// std::runtime_error when the file cannot be read.
Digraph load_digraph(const std::filesystem::path& path);
void save_digraph(const Digraph& g, const std::filesystem::path& path);

/// A builtin name if it is one, otherwise a dgr file path.
Digraph resolve_digraph(const std::string& spec);

struct EnsembleSpec {
  enum class Kind {
    Tournaments,  // one tournament per isomorphism class, n = n_min..n_max (n <= 6)
    Random,       // count samples of random_s_semicomplete
  };
  Kind kind = Kind::Tournaments;
  int n_min = 1;
  int n_max = 5;
  /// Random only: each sample draws n uniformly in [n_min, n_max] and its own
  /// s uniformly in [0, s].
  int s = 0;
  int max_multiplicity = 1;
  int count = 0;
};

struct Instance {
  std::string name;
  Digraph graph;
  std::uint64_t seed = 0;
};

/// Instance i of a random ensemble uses instance_seed(master_seed, i), so the
/// ensemble does not depend on the order in which instances are evaluated.
std::vector<Instance> build_ensemble(const EnsembleSpec& spec, std::uint64_t master_seed);

struct ExperimentConfig {
  std::string pattern = "C3";
  Relation relation = Relation::StrongMinor;
  Mode mode = Mode::Vertex;
  EnsembleSpec ensemble;
  std::uint64_t seed = 1;
  int k_max = 3;
  /// Wall-clock budget per instance in seconds; 0 = none.
  double time_per_instance = 0;
  /// Node budget per containment search; 0 = none.
  std::uint64_t max_nodes = 0;
  int max_pattern_vertices = 5;
  int max_host_vertices = 12;
  int jobs = 1;
  bool deterministic = false;
};

struct InstanceResult {
  std::string instance;
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<EpReport> reports;
  bool budget_exhausted = false;
  std::string error;
};

/// Per host size: how many instances avoided the pattern and the largest
/// width among them (-1 if none did).
struct ThresholdRow {
  int n = 0;
  int instances = 0;
  int avoiding = 0;
  int max_width = -1;
  /// max_width over all rows up to this n.
  int cumulative = -1;
};

struct RunArtifact {
  ExperimentConfig config;
  std::vector<InstanceResult> instances;
  int violations = 0;
  int budget_exhausted = 0;
  /// Largest constructive_size / bound_rhs over cover outcomes.
  double max_bound_ratio = 0;
  /// Pathwidth (vertex mode) or cutwidth (arc mode) of hosts with nu = 0.
  std::vector<ThresholdRow> thresholds;
  std::string timestamp;
};

/// Runs ep_verify over the ensemble with up to config.jobs threads; results are
/// stored by instance index, so the output does not depend on scheduling.
RunArtifact run_epcheck(const ExperimentConfig& config);

/// 0 when clean, 1 on any violation, else 2 if some instance hit its budget.
int exit_code(const RunArtifact& artifact);

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void to_json(nlohmann::json& j, const RunArtifact& a);

inline constexpr std::string_view kCsvHeader =
    "instance,relation,mode,n,arcs,nu,tau,k,outcome,constructive_size,bound_rhs,bounds_ok,pw,ctw,seed";

/// One row per EpReport in instance order; an instance that failed gets one
/// row with outcome "budget" or "error" and zeros elsewhere.
std::string to_csv(const RunArtifact& artifact);

void save_report(const RunArtifact& artifact, const std::filesystem::path& json_path,
                 const std::filesystem::path& csv_path);

struct ProbeConfig {
  std::string pattern = "C3";
  Relation relation = Relation::StrongMinor;
  bool use_cutwidth = false;
  EnsembleSpec ensemble;
  std::uint64_t seed = 1;
  std::uint64_t max_nodes = 0;
  int max_pattern_vertices = 5;
  int max_host_vertices = 12;
  int jobs = 1;
};

/// Largest pathwidth (or cutwidth) among ensemble hosts that do not contain
/// the pattern, per host size.
std::vector<ThresholdRow> probe_threshold(const ProbeConfig& config);

void to_json(nlohmann::json& j, const ThresholdRow& row);

}  // namespace tourep
