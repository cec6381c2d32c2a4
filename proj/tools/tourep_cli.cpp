// tourep: command-line front end for the containment, width and
// packing/covering routines.
//
// Exit codes: 0 ok, 1 invariant violation, 2 budget exhausted, 3 malformed
// input.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <list>
#include <json.hpp>
#include <sstream>

#include "tourep/dgr_format.hpp"
#include "tourep/harness.hpp"

using namespace tourep;
using nlohmann::json;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitBudget = 2;
constexpr int kExitMalformed = 3;

struct Budget {
  std::uint64_t max_nodes = 0;
  double seconds = 0;
  int max_pattern = 5;
  int max_host = 12;

  ContainmentOptions options() const {
    ContainmentOptions o;
    o.max_pattern_vertices = max_pattern;
    o.max_host_vertices = max_host;
    o.limits.max_nodes = max_nodes;
    if (seconds > 0)
      o.limits.deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(seconds));
    return o;
  }
};

void add_budget(CLI::App* app, Budget& b) {
  app->add_option("--max-nodes", b.max_nodes, "search node budget (0 = none)");
  app->add_option("--time", b.seconds, "seconds per search (0 = none)")->check(CLI::NonNegativeNumber);
  app->add_option("--max-pattern", b.max_pattern, "largest pattern accepted")->check(CLI::PositiveNumber);
  app->add_option("--max-host", b.max_host, "largest host accepted")->check(CLI::PositiveNumber);
}

void add_ensemble(CLI::App* app, EnsembleSpec& spec) {
  static const std::map<std::string, EnsembleSpec::Kind> kinds{{"tournaments", EnsembleSpec::Kind::Tournaments},
                                                              {"random", EnsembleSpec::Kind::Random}};
  app->add_option("--ensemble", spec.kind, "tournaments (all classes) or random")
      ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
  app->add_option("--n-min", spec.n_min, "smallest host size")->check(CLI::PositiveNumber);
  app->add_option("--n-max", spec.n_max, "largest host size")->check(CLI::PositiveNumber);
  app->add_option("--s", spec.s, "random: largest s")->check(CLI::NonNegativeNumber);
  app->add_option("--multi", spec.max_multiplicity, "random: arcs per ordered pair")->check(CLI::PositiveNumber);
  app->add_option("--count", spec.count, "random: number of hosts")->check(CLI::PositiveNumber);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

json model_json(const Digraph& g, const ContainmentModel& m) {
  const Subdigraph img = m.image(g);
  json j{{"relation", to_string(m.relation)}, {"image_vertices", img.vertices}, {"image_arcs", img.arcs}};
  if (const auto* p = std::get_if<PathModel>(&m.data)) {
    j["branch"] = p->branch;
    j["paths"] = p->paths;
  } else if (const auto* s = std::get_if<StrongMinorModel>(&m.data)) {
    j["branch_sets"] = s->branch_sets;
    j["inner_arcs"] = s->inner_arcs;
    j["connections"] = s->connections;
  } else {
    const auto& b = std::get<ButterflyModel>(m.data);
    j["roots"] = b.roots;
    j["branch_sets"] = b.branch_sets;
    j["witness_arcs"] = b.witness.arcs;
    j["contractions"] = b.contractions;
  }
  return j;
}

std::string join(const std::vector<int>& xs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? " " : "") << xs[i];
  return out.str();
}

int cmd_gen(int n, int s, int multi, std::uint64_t seed, bool tournament, const std::string& out) {
  const Digraph g = tournament ? random_tournament(n, seed) : random_s_semicomplete(n, s, multi, seed);
  write_text(out, format_dgr(g));
  return 0;
}

int cmd_width(const std::string& graph, bool use_cutwidth, const std::string& cert) {
  const Digraph g = resolve_digraph(graph);
  const WidthCertificate c = use_cutwidth ? cutwidth(g) : directed_pathwidth(g);
  std::ostringstream text;
  if (use_cutwidth) {
    text << "cutwidth " << c.value << "\nlayout " << join(c.layout().order) << '\n';
  } else {
    text << "pathwidth " << c.value << '\n';
    for (const auto& bag : c.decomposition().bags) text << "bag " << join(bag) << '\n';
  }
  if (cert.empty()) {
    std::cout << text.str();
  } else {
    std::cout << (use_cutwidth ? "cutwidth " : "pathwidth ") << c.value << '\n';
    write_text(cert, text.str());
  }
  return 0;
}

int cmd_contain(const std::string& pattern, const std::string& host, Relation rel, const Budget& budget) {
  const Digraph h = resolve_digraph(pattern);
  const Digraph g = resolve_digraph(host);
  const auto model = contains(h, g, rel, budget.options());
  if (!model) {
    std::cout << "no\n";
    return 0;
  }
  const ModelCheck check = verify_model(h, g, *model);
  std::cout << "yes\n" << model_json(g, *model).dump() << '\n';
  if (!check.valid) {
    std::cerr << "witness rejected: " << check.reason << '\n';
    return kExitViolation;
  }
  return 0;
}

// Vertex mode works on the minimal vertex sets; arc mode on the full family
// of minimal hosts.
int cmd_pack_or_cover(bool pack, const std::string& pattern, const std::string& host, Relation rel, Mode mode,
                      std::size_t cap, const Budget& budget) {
  const Digraph h = resolve_digraph(pattern);
  const Digraph g = resolve_digraph(host);
  const auto options = budget.options();
  if (mode == Mode::Vertex) {
    const auto sets = minimal_host_vertex_sets(h, g, rel, options);
    SetSystem family{g.num_vertices(), sets};
    if (pack) {
      const auto chosen = max_disjoint_members(family);
      std::cout << "nu " << chosen.size() << '\n';
      for (std::size_t i : chosen) std::cout << "host " << join(sets[i]) << '\n';
    } else {
      const auto cover = min_hitting_set(family);
      std::cout << "tau " << cover.size() << "\ncover " << join(cover) << '\n';
    }
    return 0;
  }
  EnumerationOptions eo{options, cap};
  const HostFamily family = enumerate_minimal_hosts(h, g, rel, eo);
  if (!family.complete) {
    std::cerr << "host enumeration stopped at " << cap << " hosts\n";
    return kExitBudget;
  }
  if (pack) {
    const auto hosts = max_packing(family, mode);
    std::cout << "nu " << hosts.size() << '\n';
    for (const auto& f : hosts) std::cout << "host " << join(f.arcs) << '\n';
  } else {
    const auto cover = min_cover(family, mode);
    std::cout << "tau " << cover.size() << "\ncover " << join(cover) << '\n';
  }
  return 0;
}

// The constructive packing-or-cover for a fixed k.
int cmd_construct(const std::string& pattern, const std::string& host, Relation rel, Mode mode, int k,
                  const Budget& budget) {
  const Digraph h = resolve_digraph(pattern);
  const Digraph g = resolve_digraph(host);
  const auto options = budget.options();
  if (mode == Mode::Vertex) {
    const auto pw = directed_pathwidth(g);
    const auto r = cover_from_path_decomposition(h, g, rel, pw.decomposition(), k, options);
    if (r.packed) {
      std::cout << "packing " << r.hosts.size() << '\n';
      for (const auto& f : r.hosts) std::cout << "host " << join(f.vertices) << '\n';
      return 0;
    }
    std::cout << "cover " << r.cover.size() << " bound " << r.bound << "\nvertices " << join(r.cover) << '\n';
    const bool ok = static_cast<long long>(r.cover.size()) <= r.bound;
    return ok ? 0 : kExitViolation;
  }
  if (rel != Relation::Immersion) throw std::invalid_argument("arc mode needs the immersion relation");
  const auto ctw = cutwidth(g);
  const auto r = cover_from_cutwidth_ordering(h, g, ctw.layout(), k, options);
  if (r.packed) {
    std::cout << "packing " << r.hosts.size() << '\n';
    for (const auto& f : r.hosts) std::cout << "host " << join(f.arcs) << '\n';
    return 0;
  }
  std::cout << "cover " << r.cover.size() << " bound " << r.bound << "\narcs " << join(r.cover) << '\n';
  return static_cast<long long>(r.cover.size()) <= r.bound ? 0 : kExitViolation;
}

int cmd_epcheck(const ExperimentConfig& config, const std::string& out) {
  const RunArtifact artifact = run_epcheck(config);
  if (out.empty()) {
    std::cout << to_csv(artifact);
  } else {
    save_report(artifact, out + ".json", out + ".csv");
  }
  std::cerr << artifact.instances.size() << " instances, " << artifact.violations << " violations, "
            << artifact.budget_exhausted << " over budget, max ratio " << artifact.max_bound_ratio << '\n';
  for (const auto& r : artifact.instances)
    if (!r.error.empty()) std::cerr << r.instance << ": " << r.error << '\n';
  return exit_code(artifact);
}

int cmd_probe(const ProbeConfig& config, const std::string& out) {
  const auto rows = probe_threshold(config);
  std::cout << "n,instances,avoiding,max_width,cumulative\n";
  for (const auto& r : rows)
    std::cout << r.n << ',' << r.instances << ',' << r.avoiding << ',' << r.max_width << ',' << r.cumulative << '\n';
  if (!out.empty()) write_text(out, json(rows).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Containment, width and Erdős-Pósa checks on semicomplete digraphs"};
  app.require_subcommand(1);

  // Relations and modes are read as text and converted after parsing.
  std::vector<std::pair<std::string*, Relation*>> relation_slots;
  std::vector<std::pair<std::string*, Mode*>> mode_slots;
  std::list<std::string> names;
  auto relation_opt = [&](CLI::App* sub, Relation& rel) {
    auto& text = names.emplace_back();
    sub->add_option("--relation", text, "subdigraph, topological-minor, immersion, strong-minor, butterfly-minor");
    relation_slots.emplace_back(&text, &rel);
  };
  auto mode_opt = [&](CLI::App* sub, Mode& mode) {
    auto& text = names.emplace_back();
    sub->add_option("--mode", text, "vertex or arc");
    mode_slots.emplace_back(&text, &mode);
  };

  int gen_n = 5, gen_s = 0, gen_multi = 1;
  std::uint64_t gen_seed = 1;
  bool gen_tournament = false;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "write a random tournament or s-semicomplete digraph");
  gen->add_option("--n", gen_n, "vertices")->check(CLI::PositiveNumber);
  gen->add_option("--s", gen_s, "missing pairs allowed per vertex")->check(CLI::NonNegativeNumber);
  gen->add_option("--multi", gen_multi, "arcs per ordered pair")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed);
  gen->add_flag("--tournament", gen_tournament, "plain random tournament");
  gen->add_option("--out", gen_out, "dgr file (default stdout)");

  std::string width_graph, width_cert;
  bool width_cut = false;
  auto* width = app.add_subcommand("width", "exact directed pathwidth or cutwidth");
  width->add_option("graph", width_graph, "dgr file or builtin name")->required();
  width->add_flag("--cutwidth", width_cut, "cutwidth instead of pathwidth");
  width->add_option("--cert", width_cert, "write the certificate here");

  std::string pattern = "C3", host;
  Relation rel = Relation::StrongMinor;
  Mode mode = Mode::Vertex;
  Budget budget;
  std::size_t cap = 100000;
  int construct_k = 0;

  auto* contain = app.add_subcommand("contain", "decide containment and print a witness");
  contain->add_option("--pattern", pattern, "dgr file or builtin name");
  contain->add_option("--host", host, "dgr file or builtin name")->required();
  relation_opt(contain, rel);
  add_budget(contain, budget);

  auto* pack = app.add_subcommand("pack", "maximum number of disjoint hosts");
  auto* cover = app.add_subcommand("cover", "minimum cover, or with --k the constructive packing-or-cover");
  for (auto* sub : {pack, cover}) {
    sub->add_option("--pattern", pattern, "dgr file or builtin name");
    sub->add_option("--host", host, "dgr file or builtin name")->required();
    relation_opt(sub, rel);
    mode_opt(sub, mode);
    sub->add_option("--max-hosts", cap, "arc mode: host enumeration cap")->check(CLI::PositiveNumber);
    add_budget(sub, budget);
  }
  cover->add_option("--k", construct_k, "run the width-based construction for this k")->check(CLI::PositiveNumber);

  ExperimentConfig ep;
  std::string ep_out;
  auto* epcheck = app.add_subcommand("epcheck", "verify duality bounds over an ensemble");
  epcheck->add_option("--pattern", ep.pattern, "dgr file or builtin name");
  relation_opt(epcheck, ep.relation);
  mode_opt(epcheck, ep.mode);
  add_ensemble(epcheck, ep.ensemble);
  epcheck->add_option("--seed", ep.seed, "master seed");
  epcheck->add_option("--k-max", ep.k_max)->check(CLI::PositiveNumber);
  epcheck->add_option("--time", ep.time_per_instance, "seconds per instance (0 = none)")
      ->check(CLI::NonNegativeNumber);
  epcheck->add_option("--max-nodes", ep.max_nodes, "search node budget (0 = none)");
  epcheck->add_option("--max-pattern", ep.max_pattern_vertices)->check(CLI::PositiveNumber);
  epcheck->add_option("--max-host", ep.max_host_vertices)->check(CLI::PositiveNumber);
  epcheck->add_option("--jobs", ep.jobs, "parallel instances")->check(CLI::PositiveNumber);
  epcheck->add_flag("--deterministic", ep.deterministic, "one instance at a time");
  epcheck->add_option("--out", ep_out, "write <out>.json and <out>.csv (default: CSV on stdout)");

  ProbeConfig probe;
  std::string probe_out;
  bool probe_deterministic = false;
  auto* probe_cmd = app.add_subcommand("probe-threshold", "largest width among hosts avoiding the pattern");
  probe_cmd->add_option("--pattern", probe.pattern, "dgr file or builtin name");
  relation_opt(probe_cmd, probe.relation);
  probe_cmd->add_flag("--cutwidth", probe.use_cutwidth, "cutwidth instead of pathwidth");
  add_ensemble(probe_cmd, probe.ensemble);
  probe_cmd->add_option("--seed", probe.seed, "master seed");
  probe_cmd->add_option("--max-nodes", probe.max_nodes, "search node budget (0 = none)");
  probe_cmd->add_option("--max-pattern", probe.max_pattern_vertices)->check(CLI::PositiveNumber);
  probe_cmd->add_option("--max-host", probe.max_host_vertices)->check(CLI::PositiveNumber);
  probe_cmd->add_option("--jobs", probe.jobs, "parallel instances")->check(CLI::PositiveNumber);
  probe_cmd->add_flag("--deterministic", probe_deterministic, "one instance at a time");
  probe_cmd->add_option("--out", probe_out, "write the table as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitMalformed;
  }

  try {
    for (auto [text, rel_out] : relation_slots)
      if (!text->empty()) *rel_out = parse_relation(*text);
    for (auto [text, mode_out] : mode_slots)
      if (!text->empty()) *mode_out = parse_mode(*text);
    if (*gen) return cmd_gen(gen_n, gen_s, gen_multi, gen_seed, gen_tournament, gen_out);
    if (*width) return cmd_width(width_graph, width_cut, width_cert);
    if (*contain) return cmd_contain(pattern, host, rel, budget);
    if (*pack) return cmd_pack_or_cover(true, pattern, host, rel, mode, cap, budget);
    if (*cover) {
      if (construct_k > 0) return cmd_construct(pattern, host, rel, mode, construct_k, budget);
      return cmd_pack_or_cover(false, pattern, host, rel, mode, cap, budget);
    }
    if (*epcheck) return cmd_epcheck(ep, ep_out);
    if (*probe_cmd) {
      if (probe_deterministic) probe.jobs = 1;
      return cmd_probe(probe, probe_out);
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMalformed;
  }
  return 0;
}
