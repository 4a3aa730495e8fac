// clustest: instance generation, tester runs, sweeps and distinguishing
// experiments. Exit codes: 0 ok, 1 error, 2 I/O error.

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "clustest/error.hpp"
#include "clustest/exact_oracle.hpp"
#include "clustest/experiments.hpp"
#include "clustest/families.hpp"

using namespace clustest;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::kIoError, "cannot write " + path);
}

Family to_family(int f) {
  if (f != 1 && f != 2) throw Error(ErrorCode::kConfigError, "--family must be 1 or 2");
  return static_cast<Family>(f);
}

struct TesterFlags {
  double epsilon = 0.01;
  std::string backend = "exhaustive";
  std::uint64_t seed = 0;
  ParamOverrides overrides;
  Calibration calibration;

  void add(CLI::App* cmd) {
    cmd->add_option("--epsilon", epsilon, "Accuracy parameter")->capture_default_str();
    cmd->add_option("--backend", backend, "exhaustive | qcost | qwalk")->capture_default_str();
    cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
    cmd->add_option("--walks", overrides.walks, "Override K");
    cmd->add_option("--walk-length", overrides.walk_length, "Override L");
    cmd->add_option("--repetitions", overrides.repetitions, "Override the repetition count");
    cmd->add_option("--cost-constant", overrides.cost_model_constant, "Quantum cost model constant");
    cmd->add_option("--cal-walks", calibration.walks, "Constant in K")->capture_default_str();
    cmd->add_option("--cal-length", calibration.length, "Constant in L")->capture_default_str();
    cmd->add_option("--cal-repetitions", calibration.repetitions, "Constant in repetitions")
        ->capture_default_str();
  }
};

int cmd_gen(int family, std::size_t n, std::uint64_t seed, const std::string& out) {
  const FamilyInstance inst = generate_family(to_family(family), n, seed);
  write_file(out, serialize_graph(inst.graph));
  write_file(out + ".family.json", serialize_family_sidecar(inst));
  const auto violations = validate_family_membership(inst);
  std::cout << "family " << family << ", N=" << n << ", seed " << seed << ", "
            << inst.graph.edge_count() << " edges\n";
  std::cout << "validation: " << (violations.empty() ? "ok" : "FAILED") << '\n';
  for (const auto& v : violations) std::cout << "  " << v << '\n';
  const auto witness = is_clusterable(inst.graph);
  std::cout << "clusterable: " << (witness ? "yes" : "no");
  if (witness) std::cout << " (" << witness->component_count << " components)";
  std::cout << "\nwrote " << out << " and " << out << ".family.json\n";
  return violations.empty() ? 0 : 1;
}

int cmd_test(const std::string& path, const TesterFlags& flags) {
  const SignedGraph g = parse_graph(read_file(path));
  const TesterParams params =
      resolve_params(g.vertex_count(), flags.epsilon, flags.calibration, flags.overrides);
  BackendConfig backend;
  backend.kind = parse_backend(flags.backend);
  QuerySession session(g);
  const Verdict v = run_tester(session, params, backend, flags.seed);
  std::cout << (v.rejected() ? "reject" : "accept") << '\n';
  std::cout << "params: K=" << params.walks << " L=" << params.walk_length
            << " repetitions=" << params.repetitions << " k=" << params.effective_independence()
            << '\n';
  if (v.witness) {
    const Witness& w = *v.witness;
    std::cout << "witness: repetition " << w.repetition << ", start " << w.start << ", walk "
              << w.first.walk + 1 << " prefix " << w.first.prefix << " -> " << w.u << ", walk "
              << w.second.walk + 1 << " prefix " << w.second.prefix << " -> " << w.v
              << ", negative edge (" << w.u << ", " << w.v << ")\n";
  }
  std::cout << "queries: " << v.queries_used << '\n';
  if (backend.kind == BackendKind::kQuantumCost) {
    std::cout << "modeled quantum queries: " << v.modeled_quantum_queries << '\n';
  }
  return 0;
}

int cmd_sweep(int family, const std::vector<std::size_t>& ns, std::uint64_t trials,
              const TesterFlags& flags, const std::string& out) {
  SweepConfig cfg;
  cfg.family = to_family(family);
  cfg.ns = ns;
  cfg.trials = trials;
  cfg.backend = parse_backend(flags.backend);
  cfg.seed = flags.seed;
  cfg.epsilon = flags.epsilon;
  cfg.calibration = flags.calibration;
  cfg.overrides = flags.overrides;
  const SweepResult result = run_sweep(cfg);
  std::ostringstream csv;
  write_sweep_csv(csv, result.rows);
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    write_file(out, csv.str());
  }
  std::cout << "classical queries / polylog: " << describe_fit(result.classical_fit) << '\n';
  std::cout << "modeled quantum queries / polylog: " << describe_fit(result.quantum_fit) << '\n';
  return 0;
}

int cmd_distinguish(const DistinguishConfig& cfg, const std::string& out) {
  const DistinguishReport report = distinguish_experiment(cfg);
  std::ostringstream csv;
  write_distinguish_csv(csv, report);
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    write_file(out, csv.str());
  }
  for (const auto& b : report.blocks) {
    std::cout << "block " << b.block << ": T=" << report.queries << " tv=" << b.tv_estimate
              << " sigma=" << b.bootstrap.sigma << " bound 10*delta^2=" << report.bound
              << " acceptance_gap=" << b.acceptance_gap << '\n';
  }
  return 0;
}

struct QwalkFlags {
  std::uint32_t x_size = 8;
  std::uint32_t collisions = 1;
  std::uint32_t subset_size = 0;
  std::uint32_t trials = 100;
  std::uint64_t seed = 0;
  bool sweep = false;
  std::optional<std::uint32_t> outer, inner;
};

int cmd_qwalk(const QwalkFlags& f) {
  if (f.x_size < 2) throw Error(ErrorCode::kConfigError, "--x-size must be at least 2");
  const std::uint64_t max_pairs = std::uint64_t{f.x_size} * (f.x_size - 1) / 2;
  if (f.collisions > max_pairs) throw Error(ErrorCode::kConfigError, "too many planted pairs");
  // Planted instance: f(x) = x, R = a random set of unordered pairs.
  Rng rng(split_seed(f.seed, Stream::kGraph));
  std::set<std::pair<std::uint64_t, std::uint64_t>> pairs;
  while (pairs.size() < f.collisions) {
    std::uint64_t a = rng.below(f.x_size), b = rng.below(f.x_size);
    if (a == b) continue;
    pairs.emplace(std::min(a, b), std::max(a, b));
  }
  CollisionProblem<std::uint64_t> problem;
  problem.domain_size = f.x_size;
  problem.f = [](std::uint64_t x) { return x; };
  problem.related = [&pairs](std::uint64_t a, std::uint64_t b) {
    return pairs.contains({std::min(a, b), std::max(a, b)});
  };
  QuantumWalkOptions opts;
  opts.subset_size = f.subset_size;
  opts.trials = f.trials;
  opts.sweep = f.sweep;
  opts.seed = split_seed(f.seed, Stream::kBackend);
  if (f.outer || f.inner) opts.iterations = WalkIterations{f.outer.value_or(1), f.inner.value_or(1)};
  const QuantumWalkReport r = quantum_walk_simulate(problem, opts);
  std::cout << "|X|=" << f.x_size << " planted pairs:";
  for (const auto& [a, b] : pairs) std::cout << " (" << a << "," << b << ")";
  std::cout << "\nr=" << r.subset_size << " t1=" << r.iterations.outer << " t2=" << r.iterations.inner
            << "\ninitial marked mass: " << r.initial_marked_mass
            << "\nsuccess probability: " << r.report.success_probability.value_or(0.0)
            << "\nsuccessful trials: " << r.successful_trials << "/" << f.trials << '\n';
  if (r.report.found) {
    std::cout << "found: (" << r.report.found->first << ", " << r.report.found->second << ")\n";
  } else {
    std::cout << "no collision\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signed-graph clusterability testing toolkit"};
  app.require_subcommand(1);

  int family = 2;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::string out;

  auto* gen = app.add_subcommand("gen", "Generate a family instance");
  gen->add_option("--family", family, "1 (far) or 2 (clusterable)")->required();
  gen->add_option("--n", n, "Vertex count (multiple of 10, at least 30)")->required();
  gen->add_option("--seed", seed, "Seed")->capture_default_str();
  gen->add_option("--out", out, "Graph file; the sidecar goes to <out>.family.json")->required();

  std::string graph_path;
  TesterFlags test_flags;
  auto* test = app.add_subcommand("test", "Run the tester on a graph file");
  test->add_option("graph", graph_path, "Graph file")->required();
  test_flags.add(test);

  std::vector<std::size_t> ns;
  std::uint64_t trials = 10;
  TesterFlags sweep_flags;
  sweep_flags.backend = "qcost";
  auto* sweep = app.add_subcommand("sweep", "Query-complexity sweep over N");
  sweep->add_option("--family", family, "1 or 2")->capture_default_str();
  sweep->add_option("--n", ns, "Vertex counts")->required()->delimiter(',');
  sweep->add_option("--trials", trials, "Instances per N")->capture_default_str();
  sweep->add_option("--out", out, "CSV path (stdout if omitted)");
  sweep_flags.add(sweep);

  DistinguishConfig dcfg;
  std::string strategy = "random-port-walker";
  auto* dist = app.add_subcommand("distinguish", "Distinguishing experiment between P1 and P2");
  dist->add_option("--n", dcfg.n, "Vertex count")->capture_default_str();
  dist->add_option("--delta", dcfg.delta, "T = floor(delta sqrt N)")->capture_default_str();
  dist->add_option("--trials", dcfg.trials, "Trials per process")->capture_default_str();
  dist->add_option("--strategy", strategy, "random-port-walker | breadth-first | port1-chaser")
      ->capture_default_str();
  dist->add_option("--seed", dcfg.seed, "Seed")->capture_default_str();
  dist->add_option("--blocks", dcfg.blocks, "Independent trial blocks")->capture_default_str();
  dist->add_option("--resamples", dcfg.resamples, "Bootstrap resamples")->capture_default_str();
  dist->add_option("--out", out, "CSV path (stdout if omitted)");

  QwalkFlags qf;
  auto* qwalk = app.add_subcommand("qwalk", "Quantum-walk simulation on a planted instance");
  qwalk->add_option("--x-size", qf.x_size, "|X| (at most 10)")->capture_default_str();
  qwalk->add_option("--collisions", qf.collisions, "Planted related pairs")->capture_default_str();
  qwalk->add_option("--subset-size", qf.subset_size, "r (0 = ceil(|X|^(2/3)))")->capture_default_str();
  qwalk->add_option("--trials", qf.trials, "Measurements")->capture_default_str();
  qwalk->add_option("--seed", qf.seed, "Seed")->capture_default_str();
  qwalk->add_flag("--sweep", qf.sweep, "Pick the best (t1, t2) in [1, 8]^2");
  qwalk->add_option("--outer", qf.outer, "t1");
  qwalk->add_option("--inner", qf.inner, "t2");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(family, n, seed, out);
    if (*test) return cmd_test(graph_path, test_flags);
    if (*sweep) return cmd_sweep(family, ns, trials, sweep_flags, out);
    if (*dist) {
      dcfg.strategy = parse_strategy(strategy);
      return cmd_distinguish(dcfg, out);
    }
    if (*qwalk) return cmd_qwalk(qf);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kIoError ? 2 : 1;
  }
  return 0;
}
