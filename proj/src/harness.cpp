#include "tourep/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <regex>
#include <sstream>
#include <thread>

#include "tourep/canonical.hpp"
#include "tourep/dgr_format.hpp"
#include "tourep/rng.hpp"

namespace tourep {

std::optional<Digraph> builtin_digraph(std::string_view name) {
  static const std::regex family(R"((C|TT|P|K)(\d+))");
  static const std::regex copies(R"((\d+)x?C(\d+))");
  const std::string text(name);
  if (text == "2-cycle" || text == "two-cycle") return directed_cycle(2);
  std::smatch m;
  if (std::regex_match(text, m, family)) {
    const int n = std::stoi(m[2]);
    if (n > 64) return std::nullopt;
    if (m[1] == "C") return n >= 2 ? std::optional(directed_cycle(n)) : std::nullopt;
    if (m[1] == "TT") return transitive_tournament(n);
    if (m[1] == "P") return directed_path(n);
    return complete_digraph(n);
  }
  if (std::regex_match(text, m, copies)) {
    const int k = std::stoi(m[1]), n = std::stoi(m[2]);
    if (k < 1 || n < 2 || k * n > 64) return std::nullopt;
    return disjoint_copies(directed_cycle(n), k);
  }
  return std::nullopt;
}

Digraph load_digraph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_dgr(buffer.str());
}

void save_digraph(const Digraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_dgr(g);
}

Digraph resolve_digraph(const std::string& spec) {
  if (auto g = builtin_digraph(spec)) return *g;
  return load_digraph(spec);
}

std::vector<Instance> build_ensemble(const EnsembleSpec& spec, std::uint64_t master_seed) {
  if (spec.n_min < 1 || spec.n_max < spec.n_min) throw std::invalid_argument("ensemble needs 1 <= n_min <= n_max");
  std::vector<Instance> out;
  if (spec.kind == EnsembleSpec::Kind::Tournaments) {
    for (int n = spec.n_min; n <= spec.n_max; ++n) {
      auto classes = tournament_classes(n);
      for (std::size_t i = 0; i < classes.size(); ++i)
        out.push_back({"T" + std::to_string(n) + "#" + std::to_string(i), std::move(classes[i]), 0});
    }
    return out;
  }
  if (spec.count < 1) throw std::invalid_argument("random ensemble needs a positive count");
  if (spec.s < 0 || spec.max_multiplicity < 1) throw std::invalid_argument("random ensemble needs s >= 0, multiplicity >= 1");
  for (int i = 0; i < spec.count; ++i) {
    const std::uint64_t seed = instance_seed(master_seed, static_cast<std::uint64_t>(i));
    Rng rng(seed);
    const int n = spec.n_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.n_max - spec.n_min + 1)));
    const int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.s) + 1));
    out.push_back({"R#" + std::to_string(i), random_s_semicomplete(n, s, spec.max_multiplicity, rng.next()), seed});
  }
  return out;
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

ContainmentOptions containment_options(int max_pattern, int max_host, std::uint64_t max_nodes, double seconds) {
  ContainmentOptions options;
  options.max_pattern_vertices = max_pattern;
  options.max_host_vertices = max_host;
  options.limits.max_nodes = max_nodes;
  if (seconds > 0)
    options.limits.deadline =
        std::chrono::steady_clock::now() +
        std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
  return options;
}

std::vector<ThresholdRow> finish_rows(std::map<int, ThresholdRow> rows) {
  std::vector<ThresholdRow> out;
  int running = -1;
  for (auto& [n, row] : rows) {
    running = std::max(running, row.max_width);
    row.cumulative = running;
    out.push_back(row);
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

}  // namespace

RunArtifact run_epcheck(const ExperimentConfig& config) {
  if (config.k_max < 1) throw std::invalid_argument("k_max must be positive");
  if (config.time_per_instance < 0) throw std::invalid_argument("time budget must be non-negative");
  const Digraph h = resolve_digraph(config.pattern);
  const auto instances = build_ensemble(config.ensemble, config.seed);

  RunArtifact artifact;
  artifact.config = config;
  artifact.instances.resize(instances.size());
  const int jobs = config.deterministic ? 1 : config.jobs;
  parallel_for(instances.size(), jobs, [&](std::size_t i) {
    const Instance& inst = instances[i];
    InstanceResult& result = artifact.instances[i];
    result.instance = inst.name;
    result.n = inst.graph.num_vertices();
    result.seed = inst.seed;
    EpOptions options{containment_options(config.max_pattern_vertices, config.max_host_vertices, config.max_nodes,
                                          config.time_per_instance),
                      inst.seed};
    try {
      result.reports = ep_verify(h, inst.graph, config.relation, config.mode, config.k_max, options);
    } catch (const BudgetExceeded& e) {
      result.budget_exhausted = true;
      result.error = e.what();
    } catch (const std::exception& e) {
      result.error = e.what();
    }
  });

  std::map<int, ThresholdRow> rows;
  for (const auto& result : artifact.instances) {
    if (result.budget_exhausted) {
      ++artifact.budget_exhausted;
      continue;
    }
    if (!result.error.empty()) {
      ++artifact.violations;
      continue;
    }
    for (const auto& r : result.reports) {
      if (!r.bounds_ok) ++artifact.violations;
      if (r.outcome == "cover" && r.bound_rhs > 0)
        artifact.max_bound_ratio =
            std::max(artifact.max_bound_ratio, static_cast<double>(r.constructive_size) / static_cast<double>(r.bound_rhs));
    }
    if (result.reports.empty()) continue;
    const EpReport& first = result.reports.front();
    ThresholdRow& row = rows[result.n];
    row.n = result.n;
    ++row.instances;
    if (first.nu == 0) {
      ++row.avoiding;
      row.max_width = std::max(row.max_width, config.mode == Mode::Vertex ? first.pw : first.ctw);
    }
  }
  artifact.thresholds = finish_rows(std::move(rows));
  artifact.timestamp = utc_timestamp();
  return artifact;
}

int exit_code(const RunArtifact& artifact) {
  if (artifact.violations > 0) return 1;
  if (artifact.budget_exhausted > 0) return 2;
  return 0;
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = nlohmann::json{
      {"pattern", c.pattern},
      {"relation", to_string(c.relation)},
      {"mode", to_string(c.mode)},
      {"ensemble",
       {{"kind", c.ensemble.kind == EnsembleSpec::Kind::Tournaments ? "tournaments" : "random"},
        {"n_min", c.ensemble.n_min},
        {"n_max", c.ensemble.n_max},
        {"s", c.ensemble.s},
        {"max_multiplicity", c.ensemble.max_multiplicity},
        {"count", c.ensemble.count}}},
      {"seed", c.seed},
      {"k_max", c.k_max},
      {"time_per_instance", c.time_per_instance},
      {"max_nodes", c.max_nodes},
      {"max_pattern_vertices", c.max_pattern_vertices},
      {"max_host_vertices", c.max_host_vertices},
      {"jobs", c.jobs},
      {"deterministic", c.deterministic},
  };
}

void to_json(nlohmann::json& j, const ThresholdRow& row) {
  j = nlohmann::json{{"n", row.n},
                     {"instances", row.instances},
                     {"avoiding", row.avoiding},
                     {"max_width", row.max_width},
                     {"cumulative", row.cumulative}};
}

void to_json(nlohmann::json& j, const RunArtifact& a) {
  nlohmann::json instances = nlohmann::json::array();
  for (const auto& r : a.instances)
    instances.push_back({{"instance", r.instance},
                         {"n", r.n},
                         {"seed", r.seed},
                         {"budget_exhausted", r.budget_exhausted},
                         {"error", r.error},
                         {"reports", r.reports}});
  j = nlohmann::json{{"config", a.config},
                     {"instances", std::move(instances)},
                     {"summary",
                      {{"violations", a.violations},
                       {"budget_exhausted", a.budget_exhausted},
                       {"max_bound_ratio", a.max_bound_ratio}}},
                     {"threshold_kind", a.config.mode == Mode::Vertex ? "zeta_hat" : "eta_hat"},
                     {"thresholds", a.thresholds},
                     {"timestamp", a.timestamp}};
}

std::string to_csv(const RunArtifact& artifact) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  const auto& c = artifact.config;
  for (const auto& r : artifact.instances) {
    if (r.reports.empty()) {
      out << r.instance << ',' << to_string(c.relation) << ',' << to_string(c.mode) << ',' << r.n << ",0,0,0,0,"
          << (r.budget_exhausted ? "budget" : "error") << ",0,0,false,0,0," << r.seed << '\n';
      continue;
    }
    for (const auto& e : r.reports)
      out << r.instance << ',' << to_string(e.relation) << ',' << to_string(e.mode) << ',' << e.n << ',' << e.arcs
          << ',' << e.nu << ',' << e.tau << ',' << e.k << ',' << e.outcome << ',' << e.constructive_size << ','
          << e.bound_rhs << ',' << (e.bounds_ok ? "true" : "false") << ',' << e.pw << ',' << e.ctw << ',' << e.seed
          << '\n';
  }
  return out.str();
}

void save_report(const RunArtifact& artifact, const std::filesystem::path& json_path,
                 const std::filesystem::path& csv_path) {
  std::ofstream json_out(json_path);
  if (!json_out) throw std::runtime_error("cannot write " + json_path.string());
  json_out << nlohmann::json(artifact).dump(2) << '\n';
  std::ofstream csv_out(csv_path);
  if (!csv_out) throw std::runtime_error("cannot write " + csv_path.string());
  csv_out << to_csv(artifact);
}

std::vector<ThresholdRow> probe_threshold(const ProbeConfig& config) {
  const Digraph h = resolve_digraph(config.pattern);
  const auto instances = build_ensemble(config.ensemble, config.seed);
  std::vector<int> width(instances.size(), -1);
  std::vector<std::exception_ptr> failure(instances.size());
  parallel_for(instances.size(), config.jobs, [&](std::size_t i) {
    try {
      const Digraph& g = instances[i].graph;
      auto options = containment_options(config.max_pattern_vertices, config.max_host_vertices, config.max_nodes, 0);
      if (contains(h, g, config.relation, options)) return;
      width[i] = config.use_cutwidth ? cutwidth(g).value : directed_pathwidth(g).value;
    } catch (...) {
      failure[i] = std::current_exception();
    }
  });
  for (const auto& f : failure)
    if (f) std::rethrow_exception(f);

  std::map<int, ThresholdRow> rows;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    ThresholdRow& row = rows[instances[i].graph.num_vertices()];
    row.n = instances[i].graph.num_vertices();
    ++row.instances;
    if (width[i] >= 0) {
      ++row.avoiding;
      row.max_width = std::max(row.max_width, width[i]);
    }
  }
  return finish_rows(std::move(rows));
}

}  // namespace tourep
