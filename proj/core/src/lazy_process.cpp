#include "clustest/lazy_process.hpp"

#include <algorithm>
#include <sstream>

#include "clustest/error.hpp"

namespace clustest {

LazyProcess::LazyProcess(Family family, std::size_t n, std::uint64_t seed)
    : family_(family), n_(n), rng_(split_seed(seed, Stream::kProcess)) {
  check_family_size(n);
  (void)family_layers(family);  // validates the family
}

const LazyProcess::State* LazyProcess::find(Vertex v) const {
  auto it = states_.find(v);
  return it == states_.end() ? nullptr : &it->second;
}

std::optional<Label> LazyProcess::label(Vertex v) const {
  if (const State* s = find(v)) return s->label;
  return std::nullopt;
}

std::optional<PortEntry> LazyProcess::known_port(Vertex v, std::uint32_t port0) const {
  if (const State* s = find(v)) return s->ports[port0];
  return std::nullopt;
}

std::vector<Vertex> LazyProcess::open_ports(Label p, std::uint32_t port) const {
  std::vector<Vertex> out;
  for (Vertex v : order_) {
    const State& s = states_.at(v);
    if (s.label == p && !s.ports[port - 1]) out.push_back(v);
  }
  return out;
}

std::array<double, kLabelCount> LazyProcess::label_distribution() const noexcept {
  std::array<double, kLabelCount> out{};
  const double remaining = static_cast<double>(n_ - order_.size());
  for (Label p = 0; p < kLabelCount; ++p) {
    out[p] = remaining > 0 ? static_cast<double>(n_ / kLabelCount - counts_[p]) / remaining : 0.0;
  }
  return out;
}

void LazyProcess::assign_label(Vertex v, Label p) {
  if (states_.contains(v)) throw Error(ErrorCode::kConfigError, "vertex already labeled");
  if (counts_[p] >= n_ / kLabelCount) {
    throw Error(ErrorCode::kExhaustedLabelClass, "label " + std::to_string(p));
  }
  states_.emplace(v, State{p, {}});
  order_.push_back(v);
  ++counts_[p];
}

std::optional<std::pair<Vertex, std::size_t>> LazyProcess::path_end(Vertex v, std::size_t layer,
                                                                    bool backward) const {
  const std::uint32_t tail0 = family_layers(family_)[layer].tail_port - 1;
  const std::uint32_t step_port = backward ? tail0 + 1 : tail0;
  Vertex cur = v;
  std::size_t count = 1;
  for (;;) {
    const auto& next = states_.at(cur).ports[step_port];
    if (!next) return std::pair{cur, count};
    cur = next->to;
    if (cur == v) return std::nullopt;
    ++count;
  }
}

bool LazyProcess::closing_allowed(Vertex v, std::size_t layer, std::size_t cycle_vertices) const {
  const LayerSpec& spec = family_layers(family_)[layer];
  if (spec.hamiltonian) return cycle_vertices == n_;
  if (spec.cycle_length(states_.at(v).label) >= 3) return true;
  // Within-label layer: the cycle must have at least 3 vertices and the
  // class must still be able to close its remaining vertices.
  if (cycle_vertices < 3) return false;
  const Label p = states_.at(v).label;
  std::size_t closed = 0;
  for (Vertex w : order_) {
    if (states_.at(w).label == p && !path_end(w, layer, false)) ++closed;
  }
  const std::size_t remaining = n_ / kLabelCount - closed - cycle_vertices;
  return remaining == 0 || remaining >= 3;
}

std::vector<AnswerOption> LazyProcess::answer_options(Vertex v, std::uint32_t port0) const {
  const State* sv = find(v);
  if (!sv) throw Error(ErrorCode::kConfigError, "answer_options on an unlabeled vertex");
  if (sv->ports[port0]) throw Error(ErrorCode::kConfigError, "answer_options on a known port");
  const std::uint32_t port = port0 + 1;
  const PortRule rule = port_rule(family_, sv->label, port);
  const bool tail = port == family_layers(family_)[rule.layer_index].tail_port;

  // The only candidate that closes a cycle is the far end of v's path.
  const auto end = path_end(v, rule.layer_index, tail);
  std::vector<Vertex> open;
  for (Vertex u : open_ports(rule.target, rule.back_port)) {
    if (end && u == end->first && !closing_allowed(v, rule.layer_index, end->second)) continue;
    open.push_back(u);
  }
  const std::size_t fresh = n_ / kLabelCount - counts_[rule.target];
  const std::size_t total = open.size() + fresh;
  if (total == 0) {
    std::ostringstream out;
    out << "no feasible answer for (" << v << ", " << port << "), label " << int(rule.target);
    throw Error(ErrorCode::kExhaustedLabelClass, out.str());
  }
  std::vector<AnswerOption> options;
  for (Vertex u : open) options.push_back({u, 1.0 / static_cast<double>(total)});
  if (fresh) options.push_back({std::nullopt, static_cast<double>(fresh) / static_cast<double>(total)});
  return options;
}

Vertex LazyProcess::smallest_unlabeled() const {
  for (Vertex w = 0; w < n_; ++w) {
    if (!states_.contains(w)) return w;
  }
  throw Error(ErrorCode::kExhaustedLabelClass, "every vertex is labeled");
}

Vertex LazyProcess::sample_unlabeled() {
  if (order_.size() * 2 < n_) {
    for (;;) {
      const auto w = static_cast<Vertex>(rng_.below(n_));
      if (!states_.contains(w)) return w;
    }
  }
  std::vector<Vertex> pool;
  for (Vertex w = 0; w < n_; ++w) {
    if (!states_.contains(w)) pool.push_back(w);
  }
  if (pool.empty()) throw Error(ErrorCode::kExhaustedLabelClass, "every vertex is labeled");
  return pool[rng_.below(pool.size())];
}

Answer LazyProcess::commit(Vertex v, std::uint32_t port0, const AnswerOption& option,
                           std::optional<Vertex> fresh) {
  const std::uint32_t port = port0 + 1;
  const PortRule rule = port_rule(family_, state(v).label, port);
  Vertex u;
  if (option.existing) {
    u = *option.existing;
  } else {
    u = fresh ? *fresh : smallest_unlabeled();
    assign_label(u, rule.target);
  }
  State& sv = state(v);
  State& su = state(u);
  if (su.label != rule.target || su.ports[rule.back_port - 1] || sv.ports[port0]) {
    throw Error(ErrorCode::kInfeasibleHistory, "inconsistent commit");
  }
  sv.ports[port0] = PortEntry{u, rule.sign, rule.back_port - 1};
  su.ports[rule.back_port - 1] = PortEntry{v, rule.sign, port0};
  history_.push_back({v, port, u, rule.sign, option.existing.has_value()});
  return Answer::neighbor(u, rule.sign);
}

Answer LazyProcess::answer(Vertex v, std::uint32_t port0) {
  if (v >= n_ || port0 >= kFamilyDegree) {
    throw Error(ErrorCode::kIdOutOfRange,
                "query (" + std::to_string(v) + ", " + std::to_string(port0 + 1) + ")");
  }
  if (!states_.contains(v)) {
    const auto dist = label_distribution();
    double x = rng_.uniform();
    Label p = 0;
    for (; p + 1 < kLabelCount; ++p) {
      if (x < dist[p]) break;
      x -= dist[p];
    }
    while (dist[p] == 0.0) --p;  // guard against rounding past the last class
    assign_label(v, p);
  }
  if (const auto& known = state(v).ports[port0]) return Answer::neighbor(known->to, known->sign);

  const auto options = answer_options(v, port0);
  double x = rng_.uniform();
  std::size_t pick = 0;
  for (; pick + 1 < options.size(); ++pick) {
    if (x < options[pick].probability) break;
    x -= options[pick].probability;
  }
  const AnswerOption& chosen = options[pick];
  return commit(v, port0, chosen,
                chosen.existing ? std::nullopt : std::optional<Vertex>(sample_unlabeled()));
}

FamilyInstance LazyProcess::complete_graph(Rng& rng, std::uint64_t max_attempts) const {
  FamilyInstance inst;
  inst.family = family_;
  inst.labels.assign(n_, 0);
  std::vector<Label> rest;
  for (Label p = 0; p < kLabelCount; ++p) rest.insert(rest.end(), n_ / kLabelCount - counts_[p], p);
  rng.shuffle(std::span<Label>(rest));
  std::size_t next = 0;
  for (Vertex w = 0; w < n_; ++w) {
    if (const State* s = find(w)) {
      inst.labels[w] = s->label;
    } else {
      inst.labels[w] = rest[next++];
    }
  }
  LabelClasses classes;
  for (Vertex w = 0; w < n_; ++w) classes[inst.labels[w]].push_back(w);

  std::vector<EdgeSpec> all;
  const auto layers = family_layers(family_);
  for (std::size_t l = 0; l < 3; ++l) {
    const LayerSpec& spec = layers[l];
    const std::uint32_t tail0 = spec.tail_port - 1;
    // succ[w] for every vertex; history edges fixed, the rest drawn below.
    std::vector<Vertex> succ(n_, 0);
    std::vector<std::uint8_t> has_pred(n_, 0);
    std::vector<std::uint8_t> has_succ(n_, 0);
    for (const auto& [w, s] : states_) {
      if (const auto& e = s.ports[tail0]) {
        succ[w] = e->to;
        has_succ[w] = 1;
      }
      if (s.ports[tail0 + 1]) has_pred[w] = 1;
    }
    for (const auto& sigma : spec.cycles) {
      const auto support = sigma.cycle();
      std::vector<std::vector<Vertex>> tails(kLabelCount), heads(kLabelCount);
      for (Label p : support) {
        for (Vertex w : classes[p]) {
          if (!has_succ[w]) tails[p].push_back(w);
          if (!has_pred[w]) heads[p].push_back(w);
        }
      }
      // Tails of label p pair with open heads of label sigma(p).
      for (Label p : support) {
        if (tails[p].size() != heads[sigma.apply(p)].size()) {
          throw Error(ErrorCode::kInfeasibleHistory,
                      "layer " + std::string(to_string(spec.layer)) + ": open port counts differ");
        }
      }
      std::vector<Vertex> members;
      for (Label p : support) members.insert(members.end(), classes[p].begin(), classes[p].end());
      const std::size_t min_cycle = spec.hamiltonian ? n_ : 3;
      std::uint64_t attempt = 0;
      std::vector<std::uint8_t> seen(n_, 0);
      for (;; ++attempt) {
        if (attempt == max_attempts) {
          throw Error(ErrorCode::kInfeasibleHistory,
                      "layer " + std::string(to_string(spec.layer)) + ": no valid completion in " +
                          std::to_string(max_attempts) + " attempts");
        }
        for (Label p : support) {
          auto& h = heads[sigma.apply(p)];
          rng.shuffle(std::span<Vertex>(h));
          for (std::size_t i = 0; i < tails[p].size(); ++i) succ[tails[p][i]] = h[i];
        }
        bool ok = true;
        for (Vertex w : members) seen[w] = 0;
        for (Vertex start : members) {
          if (seen[start]) continue;
          std::size_t len = 0;
          for (Vertex cur = start; !seen[cur]; cur = succ[cur]) {
            seen[cur] = 1;
            ++len;
          }
          if (len < min_cycle) {
            ok = false;
            break;
          }
        }
        if (ok) break;
      }
      for (Vertex w : members) {
        all.push_back({w, succ[w], spec.sign, tail0, tail0 + 1});
        inst.layer_edges[l].emplace_back(w, succ[w]);
      }
    }
  }
  inst.graph = SignedGraph::build(n_, kFamilyDegree, all);
  return inst;
}

}  // namespace clustest
