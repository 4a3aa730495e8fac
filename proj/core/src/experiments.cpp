#include "clustest/experiments.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "clustest/error.hpp"

namespace clustest {

std::string_view to_string(BackendKind kind) noexcept {
  switch (kind) {
    case BackendKind::kExhaustive: return "exhaustive";
    case BackendKind::kQuantumCost: return "qcost";
    case BackendKind::kQuantumWalk: return "qwalk";
  }
  return "?";
}

BackendKind parse_backend(std::string_view name) {
  for (auto k : {BackendKind::kExhaustive, BackendKind::kQuantumCost, BackendKind::kQuantumWalk}) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorCode::kConfigError, "unknown backend '" + std::string(name) + "'");
}

std::string_view tester_name(BackendKind kind) noexcept {
  switch (kind) {
    case BackendKind::kExhaustive: return "classical";
    case BackendKind::kQuantumCost: return "quantum_model";
    case BackendKind::kQuantumWalk: return "quantum_walk";
  }
  return "?";
}

TesterParams resolve_params(std::size_t n, double epsilon, const Calibration& cal,
                            const ParamOverrides& o) {
  TesterParams p = default_tester_params(n, epsilon, cal);
  if (o.walks) p.walks = *o.walks;
  if (o.walk_length) p.walk_length = *o.walk_length;
  if (o.repetitions) p.repetitions = *o.repetitions;
  if (o.cost_model_constant) p.cost_model_constant = *o.cost_model_constant;
  check_tester_params(p);
  return p;
}

double classical_polylog(const TesterParams& p, std::size_t n, std::uint32_t d) {
  const double L = static_cast<double>(p.walk_length);
  const double per_walk = static_cast<double>(d) * (L * (L + 1.0) / 32.0 + L);
  return static_cast<double>(p.repetitions) * static_cast<double>(p.walks) * per_walk /
         std::sqrt(static_cast<double>(n));
}

double quantum_polylog(const TesterParams& p, std::size_t n) {
  const double ratio = static_cast<double>(p.domain_size()) / std::sqrt(static_cast<double>(n));
  return static_cast<double>(p.repetitions) * p.cost_model_constant * std::cbrt(ratio * ratio) *
         (1.0 + std::log2(static_cast<double>(n)));
}

SweepResult run_sweep(const SweepConfig& cfg) {
  if (cfg.ns.empty()) throw Error(ErrorCode::kConfigError, "empty N list");
  if (cfg.trials == 0) throw Error(ErrorCode::kConfigError, "trials must be positive");
  for (std::size_t n : cfg.ns) check_family_size(n);

  SweepResult result;
  std::vector<double> log_n, log_classical, log_quantum;
  for (std::size_t n : cfg.ns) {
    SweepRow row;
    row.n = n;
    row.family = cfg.family;
    row.backend = cfg.backend;
    row.trials = cfg.trials;
    row.params = resolve_params(n, cfg.epsilon, cfg.calibration, cfg.overrides);
    BackendConfig backend;
    backend.kind = cfg.backend;
    double queries = 0.0, modeled = 0.0;
    std::uint64_t rejections = 0;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
      const std::uint64_t trial_seed = split_seed(split_seed(cfg.seed, n), t);
      const FamilyInstance inst = generate_family(cfg.family, n, trial_seed);
      QuerySession session(inst.graph);
      const Verdict v = run_tester(session, row.params, backend, split_seed(trial_seed, Stream::kCoins));
      queries += static_cast<double>(v.queries_used);
      modeled += static_cast<double>(v.modeled_quantum_queries);
      rejections += v.rejected();
    }
    const double trials = static_cast<double>(cfg.trials);
    row.mean_classical_queries = queries / trials;
    if (cfg.backend == BackendKind::kQuantumCost) row.mean_modeled_quantum_queries = modeled / trials;
    row.rejection_rate = static_cast<double>(rejections) / trials;

    log_n.push_back(std::log(static_cast<double>(n)));
    log_classical.push_back(
        std::log(row.mean_classical_queries / classical_polylog(row.params, n, kFamilyDegree)));
    if (row.mean_modeled_quantum_queries) {
      log_quantum.push_back(
          std::log(*row.mean_modeled_quantum_queries / quantum_polylog(row.params, n)));
    }
    result.rows.push_back(row);
  }
  result.classical_fit = fit_line(log_n, log_classical);
  if (log_quantum.size() == log_n.size()) result.quantum_fit = fit_line(log_n, log_quantum);
  return result;
}

namespace {

std::string number(double x) {
  std::ostringstream out;
  out << std::setprecision(10) << x;
  return out.str();
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "N,family,tester,backend,trials,mean_classical_queries,mean_modeled_quantum_queries,"
         "rejection_rate\n";
  for (const auto& r : rows) {
    out << r.n << ',' << static_cast<int>(r.family) << ',' << tester_name(r.backend) << ','
        << to_string(r.backend) << ',' << r.trials << ',' << number(r.mean_classical_queries)
        << ','
        << (r.mean_modeled_quantum_queries ? number(*r.mean_modeled_quantum_queries) : "NA")
        << ',' << number(r.rejection_rate) << '\n';
  }
}

std::string describe_fit(const std::optional<LinearFit>& fit) {
  if (!fit) return "slope NA";
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << "slope " << fit->slope;
  if (fit->ci_low) {
    out << " [" << *fit->ci_low << ", " << *fit->ci_high << "]";
  } else {
    out << " [CI NA]";
  }
  return out.str();
}

void write_distinguish_csv(std::ostream& out, const DistinguishReport& report) {
  out << "row_type,trial_block,step,tv_estimate,tv_sigma,ci_low,ci_high,collision_rate_p1,"
         "collision_rate_p2,bound\n";
  for (const auto& b : report.blocks) {
    out << "summary," << b.block << ",NA," << number(b.tv_estimate) << ','
        << number(b.bootstrap.sigma) << ',' << number(b.bootstrap.ci_low) << ','
        << number(b.bootstrap.ci_high) << ",NA,NA," << number(report.bound) << '\n';
    for (const auto& s : b.steps) {
      out << "step," << b.block << ',' << s.step << ",NA,NA,NA,NA," << number(s.rate_p1) << ','
          << number(s.rate_p2) << ',' << number(s.bound) << '\n';
    }
  }
}

}  // namespace clustest
