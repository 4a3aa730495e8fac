#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "clustest/distinguish.hpp"
#include "clustest/families.hpp"
#include "clustest/stats.hpp"
#include "clustest/walk.hpp"

namespace clustest {

std::string_view to_string(BackendKind kind) noexcept;
/// "exhaustive", "qcost" or "qwalk"; throws Error{kConfigError} otherwise.
BackendKind parse_backend(std::string_view name);
/// Tester label used in sweep output: classical, quantum_model, quantum_walk.
std::string_view tester_name(BackendKind kind) noexcept;

/// Overrides applied on top of default_tester_params.
struct ParamOverrides {
  std::optional<std::uint64_t> walks;
  std::optional<std::uint64_t> walk_length;
  std::optional<std::uint64_t> repetitions;
  std::optional<double> cost_model_constant;
};

TesterParams resolve_params(std::size_t n, double epsilon, const Calibration& cal,
                            const ParamOverrides& overrides);

/// Expected queries of one exhaustive pass divided by sqrt(N):
/// reps * K * d * (L (L + 1) / 32 + L) / sqrt(N). A Move coin appears with
/// probability d / 16 per step and costs one query; each endpoint costs d.
double classical_polylog(const TesterParams& p, std::size_t n, std::uint32_t d);

/// Modeled quantum queries divided by N^(1/3):
/// reps * c * (K L / sqrt(N))^(2/3) * (1 + log2 N).
double quantum_polylog(const TesterParams& p, std::size_t n);

struct SweepConfig {
  Family family = Family::kClusterable;
  std::vector<std::size_t> ns;
  std::uint64_t trials = 1;
  BackendKind backend = BackendKind::kQuantumCost;
  std::uint64_t seed = 0;
  double epsilon = 0.01;
  Calibration calibration;
  ParamOverrides overrides;
};

struct SweepRow {
  std::size_t n = 0;
  Family family = Family::kClusterable;
  BackendKind backend = BackendKind::kExhaustive;
  std::uint64_t trials = 0;
  double mean_classical_queries = 0.0;
  std::optional<double> mean_modeled_quantum_queries;
  double rejection_rate = 0.0;
  TesterParams params;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// log(mean / polylog) against log N; unset with fewer than 2 sizes.
  std::optional<LinearFit> classical_fit;
  std::optional<LinearFit> quantum_fit;
};

/// Per N and trial t: instance seed and tester seed both derive from
/// split_seed(split_seed(seed, N), t).
SweepResult run_sweep(const SweepConfig& cfg);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
/// "slope 0.501 [0.47, 0.53]" or "slope NA".
std::string describe_fit(const std::optional<LinearFit>& fit);

void write_distinguish_csv(std::ostream& out, const DistinguishReport& report);

}  // namespace clustest
