#include "clustest/families.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "clustest/error.hpp"

namespace clustest {

LabelPermutation::LabelPermutation(std::vector<Label> cycle) : cycle_(std::move(cycle)) {
  position_.fill(-1);
  if (cycle_.empty()) throw Error(ErrorCode::kConfigError, "empty label cycle");
  for (std::size_t i = 0; i < cycle_.size(); ++i) {
    const Label p = cycle_[i];
    if (p >= kLabelCount || position_[p] >= 0) {
      throw Error(ErrorCode::kConfigError, "label " + std::to_string(p) + " repeated or out of range");
    }
    position_[p] = static_cast<int>(i);
  }
}

Label LabelPermutation::apply(Label p) const {
  if (!in_support(p)) throw Error(ErrorCode::kNotInSupport, "label " + std::to_string(p));
  return cycle_[(static_cast<std::size_t>(position_[p]) + 1) % cycle_.size()];
}

Label LabelPermutation::invert(Label p) const {
  if (!in_support(p)) throw Error(ErrorCode::kNotInSupport, "label " + std::to_string(p));
  return cycle_[(static_cast<std::size_t>(position_[p]) + cycle_.size() - 1) % cycle_.size()];
}

const LabelPermutation& LabelPermutation::first() {
  static const LabelPermutation s({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  return s;
}
const LabelPermutation& LabelPermutation::second() {
  static const LabelPermutation s({2, 4, 6, 0, 8, 1, 3, 7, 9, 5});
  return s;
}
const LabelPermutation& LabelPermutation::third() {
  static const LabelPermutation s({1, 6, 3, 8, 5, 0, 7, 2, 9, 4});
  return s;
}
const LabelPermutation& LabelPermutation::evens() {
  static const LabelPermutation s({0, 2, 4, 6, 8});
  return s;
}
const LabelPermutation& LabelPermutation::odds() {
  static const LabelPermutation s({1, 3, 5, 7, 9});
  return s;
}
LabelPermutation LabelPermutation::fixed(Label s) { return LabelPermutation({s}); }

std::string_view to_string(Layer layer) noexcept {
  switch (layer) {
    case Layer::kArc: return "arc";
    case Layer::kSecond: return "second";
    case Layer::kThird: return "third";
    case Layer::kWithinLabel: return "within_label";
    case Layer::kStep2: return "step2";
    case Layer::kHamiltonian: return "hamiltonian";
  }
  return "?";
}

namespace {

const LabelPermutation& cycle_of(const LayerSpec& spec, Label p) {
  for (const auto& c : spec.cycles) {
    if (c.in_support(p)) return c;
  }
  throw Error(ErrorCode::kNotInSupport,
              "label " + std::to_string(p) + " in layer " + std::string(to_string(spec.layer)));
}

std::vector<LayerSpec> make_layers(Family family) {
  std::vector<LayerSpec> out;
  if (family == Family::kFar) {
    out.push_back({Layer::kArc, 1, Sign::kPositive, true, {LabelPermutation::first()}});
    out.push_back({Layer::kSecond, 3, Sign::kPositive, false, {LabelPermutation::second()}});
    out.push_back({Layer::kThird, 5, Sign::kNegative, false, {LabelPermutation::third()}});
  } else {
    std::vector<LabelPermutation> fixed;
    for (Label s = 0; s < kLabelCount; ++s) fixed.push_back(LabelPermutation::fixed(s));
    out.push_back({Layer::kWithinLabel, 1, Sign::kPositive, false, std::move(fixed)});
    out.push_back({Layer::kStep2, 3, Sign::kPositive, false,
                   {LabelPermutation::evens(), LabelPermutation::odds()}});
    out.push_back({Layer::kHamiltonian, 5, Sign::kNegative, true, {LabelPermutation::first()}});
  }
  return out;
}

std::size_t family_index(Family family) {
  if (family != Family::kFar && family != Family::kClusterable) {
    throw Error(ErrorCode::kConfigError,
                "family " + std::to_string(static_cast<int>(family)) + " (expected 1 or 2)");
  }
  return family == Family::kFar ? 0 : 1;
}

LabelClasses classes_of(std::span<const Label> labels) {
  LabelClasses classes;
  for (Vertex v = 0; v < labels.size(); ++v) classes[labels[v]].push_back(v);
  return classes;
}

std::vector<Label> balanced_labels(std::size_t n, Rng& rng) {
  std::vector<Label> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = static_cast<Label>(v % kLabelCount);
  rng.shuffle(std::span<Label>(labels));
  return labels;
}

// Single Hamiltonian cycle visiting labels 0,1,...,9,0,... : position x holds
// a vertex of label x mod 10, uniformly permuted within each label class.
std::vector<EdgeSpec> sample_hamiltonian(const LabelClasses& classes, std::uint32_t tail_port,
                                         Sign sign, Rng& rng) {
  const std::size_t m = classes[0].size();
  std::array<std::vector<Vertex>, kLabelCount> slots = classes;
  for (auto& s : slots) rng.shuffle(std::span<Vertex>(s));
  std::vector<Vertex> order;
  order.reserve(m * kLabelCount);
  for (std::size_t round = 0; round < m; ++round) {
    for (Label p = 0; p < kLabelCount; ++p) order.push_back(slots[p][round]);
  }
  std::vector<EdgeSpec> edges;
  edges.reserve(order.size());
  for (std::size_t x = 0; x < order.size(); ++x) {
    edges.push_back({order[x], order[(x + 1) % order.size()], sign, tail_port - 1, tail_port});
  }
  return edges;
}

FamilyInstance assemble(Family family, std::size_t n, std::uint64_t seed, std::vector<Label> labels,
                        std::array<std::vector<EdgeSpec>, 3> layers) {
  FamilyInstance inst;
  inst.family = family;
  inst.seed = seed;
  inst.labels = std::move(labels);
  std::vector<EdgeSpec> all;
  for (std::size_t l = 0; l < 3; ++l) {
    for (const auto& e : layers[l]) {
      inst.layer_edges[l].emplace_back(e.u, e.v);
      all.push_back(e);
    }
  }
  // Layers use disjoint label pairs, so build() rejecting a duplicate here
  // would indicate a generator bug.
  inst.graph = SignedGraph::build(n, kFamilyDegree, all);
  return inst;
}

}  // namespace

Label LayerSpec::successor(Label p) const { return cycle_of(*this, p).apply(p); }
Label LayerSpec::predecessor(Label p) const { return cycle_of(*this, p).invert(p); }
std::size_t LayerSpec::cycle_length(Label p) const { return cycle_of(*this, p).support_size(); }

std::span<const LayerSpec> family_layers(Family family) {
  static const std::array<std::vector<LayerSpec>, 2> all = {make_layers(Family::kFar),
                                                            make_layers(Family::kClusterable)};
  return all[family_index(family)];
}

PortRule port_rule(Family family, Label p, std::uint32_t port) {
  if (port < 1 || port > kFamilyDegree) {
    throw Error(ErrorCode::kIdOutOfRange, "port " + std::to_string(port));
  }
  const std::size_t layer = (port - 1) / 2;
  const LayerSpec& spec = family_layers(family)[layer];
  if (port == spec.tail_port) return {spec.successor(p), port + 1, spec.sign, layer};
  return {spec.predecessor(p), port - 1, spec.sign, layer};
}

std::vector<EdgeSpec> sample_cycle_union(const LabelClasses& classes,
                                         const LabelPermutation& sigma, std::uint32_t tail_port,
                                         Sign sign, Rng& rng) {
  const auto support = sigma.cycle();
  const std::size_t m = classes[support[0]].size();
  for (Label p : support) {
    if (classes[p].size() != m) {
      std::ostringstream out;
      out << "label " << int(p) << " has " << classes[p].size() << " vertices, label "
          << int(support[0]) << " has " << m;
      throw Error(ErrorCode::kUnevenLabelCounts, out.str());
    }
  }
  if (m < 3) {
    throw Error(ErrorCode::kTooFewVertices,
                std::to_string(m) + " vertices per label (need at least 3)");
  }

  // successor[v] for v in the support; index via a local id map.
  std::vector<Vertex> members;
  for (Label p : support) members.insert(members.end(), classes[p].begin(), classes[p].end());
  std::unordered_map<Vertex, std::size_t> local;
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = i;

  std::vector<Vertex> succ(members.size());
  std::vector<std::uint8_t> seen(members.size());
  for (;;) {
    for (Label p : support) {
      std::vector<Vertex> heads = classes[sigma.apply(p)];
      rng.shuffle(std::span<Vertex>(heads));
      for (std::size_t i = 0; i < m; ++i) succ[local[classes[p][i]]] = heads[i];
    }
    // Reject any cycle shorter than 3 (self-loop or parallel pair).
    std::fill(seen.begin(), seen.end(), 0);
    bool ok = true;
    for (std::size_t start = 0; start < members.size() && ok; ++start) {
      if (seen[start]) continue;
      std::size_t len = 0;
      for (std::size_t cur = start; !seen[cur]; cur = local[succ[cur]]) {
        seen[cur] = 1;
        ++len;
      }
      ok = len >= 3;
    }
    if (ok) break;
  }

  std::vector<EdgeSpec> edges;
  edges.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    edges.push_back({members[i], succ[i], sign, tail_port - 1, tail_port});
  }
  return edges;
}

void check_family_size(std::size_t n) {
  if (n % kLabelCount != 0 || n < 30) {
    throw Error(ErrorCode::kBadN, "N=" + std::to_string(n) + " (need a multiple of 10, at least 30)");
  }
}

FamilyInstance generate_family(Family family, std::size_t n, std::uint64_t seed) {
  const auto layers = family_layers(family);
  check_family_size(n);
  Rng rng(split_seed(seed, Stream::kGraph));
  std::vector<Label> labels = balanced_labels(n, rng);
  const LabelClasses classes = classes_of(labels);
  std::array<std::vector<EdgeSpec>, 3> edges;
  for (std::size_t l = 0; l < 3; ++l) {
    const LayerSpec& spec = layers[l];
    if (spec.hamiltonian) {
      edges[l] = sample_hamiltonian(classes, spec.tail_port, spec.sign, rng);
      continue;
    }
    for (const auto& sigma : spec.cycles) {
      auto part = sample_cycle_union(classes, sigma, spec.tail_port, spec.sign, rng);
      edges[l].insert(edges[l].end(), part.begin(), part.end());
    }
  }
  return assemble(family, n, seed, std::move(labels), std::move(edges));
}

FamilyInstance gen_g1(std::size_t n, std::uint64_t seed) {
  return generate_family(Family::kFar, n, seed);
}

FamilyInstance gen_g2(std::size_t n, std::uint64_t seed) {
  return generate_family(Family::kClusterable, n, seed);
}

std::vector<std::string> validate_family_membership(const FamilyInstance& inst) {
  std::vector<std::string> out;
  auto violation = [&out](auto&&... parts) {
    std::ostringstream s;
    (s << ... << parts);
    out.push_back(s.str());
  };
  if (inst.family != Family::kFar && inst.family != Family::kClusterable) {
    violation("family ", int(inst.family), " is not 1 or 2");
    return out;
  }
  const SignedGraph& g = inst.graph;
  const std::size_t n = g.vertex_count();
  if (g.degree_bound() != kFamilyDegree) {
    violation("degree bound ", g.degree_bound(), " (expected ", kFamilyDegree, ")");
  }
  if (inst.labels.size() != n) {
    violation("labels cover ", inst.labels.size(), " vertices of ", n);
    return out;
  }
  if (n % kLabelCount != 0) violation("N=", n, " is not a multiple of 10");
  std::array<std::size_t, kLabelCount> counts{};
  for (Vertex v = 0; v < n; ++v) {
    if (inst.labels[v] >= kLabelCount) {
      violation("vertex ", v, " has label ", int(inst.labels[v]));
      return out;
    }
    ++counts[inst.labels[v]];
  }
  for (Label p = 0; p < kLabelCount; ++p) {
    if (counts[p] * kLabelCount != n) violation("label ", int(p), " has ", counts[p], " vertices");
  }

  const auto layers = family_layers(inst.family);
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) != g.degree_bound() || g.degree_bound() != kFamilyDegree) {
      violation("vertex ", v, " uses ", g.degree(v), " ports (expected 6)");
    }
    for (std::uint32_t port = 1; port <= std::min(g.degree_bound(), kFamilyDegree); ++port) {
      const auto& slot = g.port(v, port - 1);
      if (!slot) continue;
      const PortRule rule = port_rule(inst.family, inst.labels[v], port);
      const std::string_view name = to_string(layers[rule.layer_index].layer);
      if (inst.labels[slot->to] != rule.target) {
        violation("edge ", v, ":", port, " -> ", slot->to, " joins labels ", int(inst.labels[v]),
                  " -> ", int(inst.labels[slot->to]), " (layer ", name, " expects ",
                  int(rule.target), ")");
      }
      if (slot->back_port + 1 != rule.back_port) {
        violation("edge ", v, ":", port, " -> ", slot->to, " has mirror port ",
                  slot->back_port + 1, " (layer ", name, " expects ", rule.back_port, ")");
      }
      if (slot->sign != rule.sign) {
        violation("edge ", v, ":", port, " -> ", slot->to, " has sign ", to_char(slot->sign),
                  " (layer ", name, " expects ", to_char(rule.sign), ")");
      }
    }
  }
  if (!out.empty() || n == 0) return out;

  for (std::size_t l = 0; l < 3; ++l) {
    const LayerSpec& spec = layers[l];
    if (!spec.hamiltonian) continue;
    std::size_t len = 0;
    Vertex cur = 0;
    do {
      cur = g.port(cur, spec.tail_port - 1)->to;
      ++len;
    } while (cur != 0 && len <= n);
    if (len != n) {
      violation("layer ", to_string(spec.layer), " cycle through vertex 0 has length ", len,
                " (expected ", n, ")");
    }
  }
  for (std::size_t l = 0; l < 3; ++l) {
    const std::uint32_t tail_port = layers[l].tail_port;
    for (const auto& [tail, head] : inst.layer_edges[l]) {
      const auto& slot = tail < n ? g.port(tail, tail_port - 1) : std::optional<PortEntry>{};
      if (!slot || slot->to != head) {
        violation("layer ", to_string(layers[l].layer), " edge (", tail, ", ", head,
                  ") is not on port ", tail_port);
      }
    }
  }
  return out;
}

std::string serialize_family_sidecar(const FamilyInstance& inst) {
  nlohmann::ordered_json doc;
  doc["family"] = static_cast<int>(inst.family);
  doc["seed"] = inst.seed;
  doc["labels"] = inst.labels;
  nlohmann::ordered_json layers = nlohmann::ordered_json::object();
  const auto specs = family_layers(inst.family);
  for (std::size_t l = 0; l < 3; ++l) {
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const auto& [t, h] : inst.layer_edges[l]) edges.push_back({t, h});
    layers[std::string(to_string(specs[l].layer))] = std::move(edges);
  }
  doc["layers"] = std::move(layers);
  return doc.dump() + "\n";
}

FamilyInstance parse_family(std::string_view graph_text, std::string_view sidecar_text) {
  FamilyInstance inst;
  inst.graph = parse_graph(graph_text);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(sidecar_text.begin(), sidecar_text.end());
    const int family = doc.at("family").get<int>();
    if (family != 1 && family != 2) {
      throw Error(ErrorCode::kFormatError, "sidecar family: " + std::to_string(family));
    }
    inst.family = static_cast<Family>(family);
    inst.seed = doc.at("seed").get<std::uint64_t>();
    inst.labels = doc.at("labels").get<std::vector<Label>>();
    const auto specs = family_layers(inst.family);
    for (std::size_t l = 0; l < 3; ++l) {
      const auto& edges = doc.at("layers").at(std::string(to_string(specs[l].layer)));
      for (const auto& e : edges) {
        inst.layer_edges[l].emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormatError, std::string("sidecar: ") + e.what());
  }
  return inst;
}

}  // namespace clustest
