#include "clustest/walk.hpp"

#include <algorithm>
#include <cmath>

#include "clustest/error.hpp"
#include "clustest/random.hpp"

namespace clustest {

std::uint32_t TesterParams::effective_independence() const noexcept {
  if (independence != 0) return independence;
  return clamp_independence(8 * walk_length + 1, domain_size());
}

void check_tester_params(const TesterParams& p) {
  if (!(p.epsilon > 0.0 && p.epsilon <= 1.0)) {
    throw Error(ErrorCode::kConfigError, "epsilon=" + std::to_string(p.epsilon) + " not in (0, 1]");
  }
  if (p.walks == 0 || p.walk_length == 0 || p.repetitions == 0) {
    throw Error(ErrorCode::kConfigError, "walks, walk length and repetitions must be positive");
  }
  if (!(p.cost_model_constant > 0.0)) {
    throw Error(ErrorCode::kConfigError, "cost model constant must be positive");
  }
}

TesterParams default_tester_params(std::size_t n, double epsilon, const Calibration& cal) {
  if (n < 1) throw Error(ErrorCode::kConfigError, "N must be positive");
  TesterParams p;
  p.epsilon = epsilon;
  check_tester_params(p);
  const double lg = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  auto up = [](double x) { return std::max<std::uint64_t>(1, std::uint64_t(std::ceil(x - 1e-9))); };
  p.walks = up(cal.walks * std::sqrt(static_cast<double>(n)) * lg);
  p.walk_length = up(cal.length * lg * lg / epsilon);
  p.repetitions = up(cal.repetitions / epsilon);
  return p;
}

std::size_t EndpointRecordHash::operator()(const EndpointRecord& r) const noexcept {
  std::uint64_t h = mix64(r.vertex);
  for (const auto& nb : r.neighborhood) {
    h = mix64(h ^ (std::uint64_t{nb.to} << 1 | static_cast<std::uint64_t>(nb.sign)));
  }
  return static_cast<std::size_t>(h);
}

EndpointRecord walk_endpoint(QuerySession& session, Vertex s, std::span<const CoinValue> coins,
                             std::uint64_t j) {
  if (j < 1 || j > coins.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "prefix length " + std::to_string(j) + " outside [1, " +
                    std::to_string(coins.size()) + "]");
  }
  const std::uint32_t d = session.degree_bound();
  Vertex cur = s;
  for (std::uint64_t m = 0; m < j; ++m) {
    const CoinValue c = coins[m];
    if (!c.is_move(d)) continue;
    const Answer a = session.neighbor_query(cur, c.port());
    if (!a.is_error() && a.get().sign == Sign::kPositive) cur = a.get().to;
  }
  EndpointRecord rec{cur, {}};
  for (std::uint32_t port = 1; port <= d; ++port) {
    const Answer a = session.neighbor_query(cur, port);
    if (!a.is_error()) rec.neighborhood.push_back(a.get());
  }
  return rec;
}

EndpointRecord walk_endpoint(QuerySession& session, Vertex s, const KWiseSource& source,
                             std::uint64_t i, std::uint64_t j, std::uint64_t walk_length) {
  std::vector<CoinValue> coins;
  coins.reserve(j);
  for (std::uint64_t m = 0; m < std::min(j, walk_length); ++m) {
    coins.push_back(source.coin(i, m, walk_length));
  }
  if (j > walk_length) {
    throw Error(ErrorCode::kIndexOutOfRange, "prefix length " + std::to_string(j) + " > L");
  }
  return walk_endpoint(session, s, coins, j);
}

bool relation_R(const EndpointRecord& a, const EndpointRecord& b) noexcept {
  return std::any_of(b.neighborhood.begin(), b.neighborhood.end(), [&](const Neighbor& nb) {
    return nb.to == a.vertex && nb.sign == Sign::kNegative;
  });
}

Verdict run_tester(QuerySession& session, const TesterParams& params,
                   const BackendConfig& backend, std::uint64_t seed) {
  check_tester_params(params);
  const std::size_t n = session.vertex_count();
  if (n == 0) throw Error(ErrorCode::kConfigError, "empty graph");
  const std::uint64_t K = params.walks;
  const std::uint64_t L = params.walk_length;
  const std::uint32_t k = params.effective_independence();
  const std::uint64_t y_size = backend.y_size ? backend.y_size : n;

  Verdict verdict;
  const std::uint64_t start_queries = session.queries_used();
  std::vector<CoinValue> coins(K * L);
  std::vector<Vertex> endpoint_of(K * L);
  for (std::uint64_t r = 0; r < params.repetitions; ++r) {
    const std::uint64_t rep_seed = split_seed(seed, r);
    const auto s = static_cast<Vertex>(Rng(split_seed(rep_seed, Stream::kStartVertex)).below(n));
    const KWiseSource source(k, K * L, split_seed(rep_seed, Stream::kCoins));
    for (std::uint64_t i = 0; i < K; ++i) {
      for (std::uint64_t m = 0; m < L; ++m) coins[i * L + m] = source.coin(i, m, L);
    }

    const std::uint64_t before = session.queries_used();
    CollisionProblem<EndpointRecord> problem;
    problem.domain_size = K * L;
    problem.f = [&](std::uint64_t x) {
      const WalkPoint w = to_walk_point(x, L);
      EndpointRecord rec = walk_endpoint(
          session, s, std::span<const CoinValue>(coins).subspan(w.walk * L, L), w.prefix);
      endpoint_of[x] = rec.vertex;
      return rec;
    };
    problem.related = [](const EndpointRecord& a, const EndpointRecord& b) {
      return relation_R(a, b);
    };

    CollisionReport report;
    switch (backend.kind) {
      case BackendKind::kExhaustive:
        report = exhaustive_collide<EndpointRecord, EndpointRecordHash>(problem, backend.work_budget);
        break;
      case BackendKind::kQuantumCost:
        report = quantum_cost_collide<EndpointRecord, EndpointRecordHash>(
            problem, y_size, params.cost_model_constant, backend.work_budget);
        break;
      case BackendKind::kQuantumWalk: {
        QuantumWalkOptions opts = backend.walk;
        opts.seed = split_seed(rep_seed, Stream::kBackend);
        report = quantum_walk_simulate(problem, opts).report;
        break;
      }
    }

    RepetitionLog entry{s, report.f_evaluations, session.queries_used() - before,
                        report.modeled_quantum_queries, report.success_probability};
    verdict.log.push_back(entry);
    if (report.modeled_quantum_queries) verdict.modeled_quantum_queries += *report.modeled_quantum_queries;

    if (report.found) {
      const WalkPoint a = to_walk_point(report.found->first, L);
      const WalkPoint b = to_walk_point(report.found->second, L);
      verdict.decision = Decision::kReject;
      verdict.witness = Witness{r, s, a, b, endpoint_of[report.found->first],
                                endpoint_of[report.found->second]};
      break;
    }
  }
  verdict.queries_used = session.queries_used() - start_queries;
  return verdict;
}

}  // namespace clustest
