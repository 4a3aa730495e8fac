#include "clustest/distinguish.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "clustest/error.hpp"

namespace clustest {

const TranscriptStep& Transcript::record(Vertex v, std::uint32_t port, Answer answer) {
  bool collision = false;
  if (!answer.is_error()) {
    const Vertex u = answer.get().to;
    collision = u == start_ || std::any_of(steps_.begin(), steps_.end(), [u](const auto& s) {
                  return s.v == u || (!s.answer.is_error() && s.answer.get().to == u);
                });
  }
  steps_.push_back({v, port, answer, collision});
  return steps_.back();
}

std::vector<Vertex> Transcript::appearance_order() const {
  std::vector<Vertex> order{start_};
  auto add = [&order](Vertex w) {
    if (std::find(order.begin(), order.end(), w) == order.end()) order.push_back(w);
  };
  for (const auto& s : steps_) {
    add(s.v);
    if (!s.answer.is_error()) add(s.answer.get().to);
  }
  return order;
}

bool Transcript::port_known(Vertex v, std::uint32_t port) const {
  return std::any_of(steps_.begin(), steps_.end(), [&](const TranscriptStep& s) {
    if (s.v == v && s.port == port) return true;
    return !s.answer.is_error() && s.answer.get().to == v && mate_port(s.port) == port;
  });
}

std::string Transcript::canonical() const {
  const auto order = appearance_order();
  auto id = [&order](Vertex w) {
    return static_cast<std::size_t>(std::find(order.begin(), order.end(), w) - order.begin());
  };
  std::ostringstream out;
  for (const auto& s : steps_) {
    out << id(s.v) << '.' << s.port << '>';
    if (s.answer.is_error()) {
      out << '!';
    } else {
      out << id(s.answer.get().to) << to_char(s.answer.get().sign);
    }
    out << ';';
  }
  return out.str();
}

bool Transcript::any_collision() const noexcept {
  return std::any_of(steps_.begin(), steps_.end(), [](const auto& s) { return s.collision; });
}

namespace {

std::uint64_t fnv1a(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::uint32_t> unknown_ports(const Transcript& t, Vertex v) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 1; p <= kFamilyDegree; ++p) {
    if (!t.port_known(v, p)) out.push_back(p);
  }
  return out;
}

Vertex current_vertex(const Transcript& t) {
  if (t.steps().empty() || t.steps().back().answer.is_error()) return t.start();
  return t.steps().back().answer.get().to;
}

Query first_unknown(const Transcript& t) {
  for (Vertex v : t.appearance_order()) {
    const auto ports = unknown_ports(t, v);
    if (!ports.empty()) return {v, ports.front()};
  }
  return {t.start(), 1};
}

class RandomPortWalker final : public Strategy {
 public:
  explicit RandomPortWalker(std::uint64_t seed) : seed_(seed) {}
  std::string_view name() const override { return "random-port-walker"; }
  Query next(const Transcript& t) const override {
    const Vertex cur = current_vertex(t);
    const auto ports = unknown_ports(t, cur);
    if (ports.empty()) return first_unknown(t);
    const std::uint64_t h = mix64(seed_ ^ fnv1a(t.canonical()));
    return {cur, ports[h % ports.size()]};
  }

 private:
  std::uint64_t seed_;
};

class BreadthFirstProber final : public Strategy {
 public:
  std::string_view name() const override { return "breadth-first"; }
  Query next(const Transcript& t) const override { return first_unknown(t); }
};

class Port1Chaser final : public Strategy {
 public:
  std::string_view name() const override { return "port1-chaser"; }
  Query next(const Transcript& t) const override {
    const Vertex cur = current_vertex(t);
    const auto ports = unknown_ports(t, cur);
    if (ports.empty()) return first_unknown(t);
    return {cur, ports.front()};  // port 1 whenever it is still unknown
  }
};

}  // namespace

std::string_view to_string(StrategyKind kind) noexcept {
  switch (kind) {
    case StrategyKind::kRandomPortWalker: return "random-port-walker";
    case StrategyKind::kBreadthFirst: return "breadth-first";
    case StrategyKind::kPort1Chaser: return "port1-chaser";
  }
  return "?";
}

StrategyKind parse_strategy(std::string_view name) {
  for (auto k : {StrategyKind::kRandomPortWalker, StrategyKind::kBreadthFirst,
                 StrategyKind::kPort1Chaser}) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorCode::kConfigError, "unknown strategy '" + std::string(name) + "'");
}

std::unique_ptr<Strategy> make_strategy(StrategyKind kind, std::uint64_t seed) {
  switch (kind) {
    case StrategyKind::kRandomPortWalker: return std::make_unique<RandomPortWalker>(seed);
    case StrategyKind::kBreadthFirst: return std::make_unique<BreadthFirstProber>();
    case StrategyKind::kPort1Chaser: return std::make_unique<Port1Chaser>();
  }
  throw Error(ErrorCode::kConfigError, "unknown strategy");
}

Query FixedPlanStrategy::next(const Transcript& t) const {
  const std::size_t k = t.steps().size();
  if (k >= plan_.size()) throw Error(ErrorCode::kIndexOutOfRange, "fixed plan exhausted");
  const Item& item = plan_[k];
  if (item.answer_index == 0) return {t.start(), item.port};
  if (item.answer_index > k) throw Error(ErrorCode::kConfigError, "plan refers to a future answer");
  const Answer& a = t.steps()[item.answer_index - 1].answer;
  return {a.is_error() ? t.start() : a.get().to, item.port};
}

Transcript run_strategy(NeighborOracle& oracle, const Strategy& strategy, std::size_t steps) {
  Transcript t(0);
  for (std::size_t k = 0; k < steps; ++k) {
    const Query q = strategy.next(t);
    t.record(q.v, q.port, oracle.answer(q.v, q.port - 1));
  }
  return t;
}

std::uint64_t DistinguishConfig::query_count() const noexcept {
  return static_cast<std::uint64_t>(std::floor(delta * std::sqrt(static_cast<double>(n)) + 1e-12));
}

void check_distinguish_config(const DistinguishConfig& cfg) {
  if (!(cfg.delta > 0.0 && cfg.delta < 0.5)) {
    throw Error(ErrorCode::kConfigError, "delta=" + std::to_string(cfg.delta) + " not in (0, 1/2)");
  }
  if (cfg.trials == 0) throw Error(ErrorCode::kConfigError, "trials must be positive");
  if (cfg.blocks == 0) throw Error(ErrorCode::kConfigError, "blocks must be positive");
  if (cfg.resamples == 0) throw Error(ErrorCode::kConfigError, "resamples must be positive");
  const std::uint64_t t = cfg.query_count();
  if (t < 1) throw Error(ErrorCode::kConfigError, "T = floor(delta sqrt N) = 0");
  if (cfg.n < 40 * t) {
    throw Error(ErrorCode::kConfigError, "N=" + std::to_string(cfg.n) + " < 40T = " +
                                             std::to_string(40 * t));
  }
  check_family_size(cfg.n);
}

DistinguishReport distinguish_experiment(const DistinguishConfig& cfg) {
  check_distinguish_config(cfg);
  const std::uint64_t T = cfg.query_count();
  const auto strategy = make_strategy(cfg.strategy, split_seed(cfg.seed, Stream::kStrategy));
  DistinguishReport report;
  report.queries = T;
  report.bound = 10.0 * cfg.delta * cfg.delta;

  for (std::uint32_t b = 0; b < cfg.blocks; ++b) {
    const std::uint64_t block_seed = split_seed(cfg.seed, b);
    std::array<std::unordered_map<std::string, std::uint64_t>, 2> counts;
    std::array<std::vector<std::uint64_t>, 2> collisions{std::vector<std::uint64_t>(T, 0),
                                                         std::vector<std::uint64_t>(T, 0)};
    std::array<std::uint64_t, 2> any_collision{};
    for (int a = 0; a < 2; ++a) {
      const Family family = a == 0 ? Family::kFar : Family::kClusterable;
      const std::uint64_t family_seed = split_seed(block_seed, static_cast<std::uint64_t>(a + 1));
      for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
        LazyProcess process(family, cfg.n, split_seed(family_seed, trial));
        const Transcript t = run_strategy(process, *strategy, T);
        ++counts[a][t.canonical()];
        for (std::uint64_t s = 0; s < T; ++s) collisions[a][s] += t.steps()[s].collision;
        any_collision[a] += t.any_collision();
      }
    }

    // Align both count tables on a common key order.
    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> joint;
    for (const auto& [k, c] : counts[0]) joint[k].first = c;
    for (const auto& [k, c] : counts[1]) joint[k].second = c;
    std::vector<std::uint64_t> ca, cb;
    ca.reserve(joint.size());
    cb.reserve(joint.size());
    double l1 = 0.0;
    const double n = static_cast<double>(cfg.trials);
    for (const auto& [k, c] : joint) {
      ca.push_back(c.first);
      cb.push_back(c.second);
      l1 += std::abs(static_cast<double>(c.first) - static_cast<double>(c.second)) / n;
    }

    DistinguishBlock block;
    block.block = b;
    block.tv_estimate = l1 / 2.0;
    block.distinct_histories = joint.size();
    Rng boot(split_seed(block_seed, Stream::kBootstrap));
    block.bootstrap = bootstrap_total_variation(ca, cb, cfg.resamples, boot);
    for (std::uint64_t s = 0; s < T; ++s) {
      StepRate r;
      r.step = static_cast<std::uint32_t>(s + 1);
      r.rate_p1 = static_cast<double>(collisions[0][s]) / n;
      r.rate_p2 = static_cast<double>(collisions[1][s]) / n;
      r.sigma_p1 = std::sqrt(r.rate_p1 * (1.0 - r.rate_p1) / n);
      r.sigma_p2 = std::sqrt(r.rate_p2 * (1.0 - r.rate_p2) / n);
      r.bound = 20.0 * static_cast<double>(s) / static_cast<double>(cfg.n);
      block.steps.push_back(r);
    }
    block.acceptance_gap =
        std::abs(static_cast<double>(any_collision[0]) - static_cast<double>(any_collision[1])) / n;
    report.blocks.push_back(std::move(block));
  }
  return report;
}

namespace {

struct Enumerator {
  const Strategy& strategy;
  std::size_t steps;
  ExactTranscripts out;

  void run(LazyProcess process, Transcript t, double prob) {
    if (prob == 0.0) return;
    if (t.steps().size() == steps) {
      out.probability[t.canonical()] += prob;
      for (std::size_t s = 0; s < steps; ++s) {
        if (t.steps()[s].collision) out.collision_probability[s] += prob;
      }
      return;
    }
    const Query q = strategy.next(t);
    const std::uint32_t port0 = q.port - 1;
    if (!process.label(q.v)) {
      const auto dist = process.label_distribution();
      for (Label p = 0; p < kLabelCount; ++p) {
        if (dist[p] == 0.0) continue;
        LazyProcess branch = process;
        branch.assign_label(q.v, p);
        run(std::move(branch), t, prob * dist[p]);
      }
      return;
    }
    if (const auto known = process.known_port(q.v, port0)) {
      t.record(q.v, q.port, Answer::neighbor(known->to, known->sign));
      run(std::move(process), std::move(t), prob);
      return;
    }
    for (const AnswerOption& option : process.answer_options(q.v, port0)) {
      LazyProcess branch = process;
      Transcript next = t;
      next.record(q.v, q.port, branch.commit(q.v, port0, option));
      run(std::move(branch), std::move(next), prob * option.probability);
    }
  }
};

}  // namespace

ExactTranscripts exact_transcripts(Family family, std::size_t n, const Strategy& strategy,
                                   std::size_t steps) {
  Enumerator e{strategy, steps, {}};
  e.out.collision_probability.assign(steps, 0.0);
  e.run(LazyProcess(family, n, 0), Transcript(0), 1.0);
  return std::move(e.out);
}

std::string interaction_statistic(const Transcript& t, const SignedGraph& completed) {
  const auto order = t.appearance_order();
  std::string out = t.canonical();
  out += '|';
  for (std::uint32_t p = 0; p < completed.degree_bound(); ++p) {
    const auto& slot = completed.port(t.start(), p);
    if (!slot) {
      out += '!';
    } else {
      auto it = std::find(order.begin(), order.end(), slot->to);
      out += it == order.end() ? std::string("*") : std::to_string(it - order.begin());
    }
    out += ',';
  }
  return out;
}

std::vector<ChiSquareResult> uniformity_experiment(Family family, std::size_t n,
                                                   const Strategy& strategy, std::size_t steps,
                                                   std::uint64_t samples_per_block,
                                                   std::uint32_t blocks, std::uint64_t seed) {
  check_family_size(n);
  std::vector<ChiSquareResult> out;
  for (std::uint32_t b = 0; b < blocks; ++b) {
    const std::uint64_t block_seed = split_seed(seed, b);
    std::map<std::string, std::uint64_t> lazy, direct;
    for (std::uint64_t s = 0; s < samples_per_block; ++s) {
      const std::uint64_t sample_seed = split_seed(block_seed, s);
      LazyProcess process(family, n, split_seed(sample_seed, Stream::kProcess));
      const Transcript tp = run_strategy(process, strategy, steps);
      Rng completion(split_seed(sample_seed, Stream::kGraph));
      ++lazy[interaction_statistic(tp, process.complete_graph(completion).graph)];

      const FamilyInstance inst = generate_family(family, n, split_seed(sample_seed, Stream::kBackend));
      GraphOracle oracle(inst.graph);
      const Transcript tg = run_strategy(oracle, strategy, steps);
      ++direct[interaction_statistic(tg, inst.graph)];
    }
    out.push_back(chi_square_two_sample(lazy, direct));
  }
  return out;
}

}  // namespace clustest
