#include "clustest/signed_graph.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "clustest/error.hpp"

namespace clustest {
namespace {

std::string describe(const EdgeSpec& e) {
  std::ostringstream out;
  out << "edge (" << e.u << ", " << e.v << ", " << to_char(e.sign) << ", port " << e.port_u
      << ", port " << e.port_v << ")";
  return out.str();
}

std::uint64_t pair_key(Vertex a, Vertex b) noexcept {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

SignedGraph SignedGraph::build(std::size_t n, std::uint32_t d, std::span<const EdgeSpec> edges) {
  SignedGraph g;
  g.n_ = n;
  g.d_ = d;
  g.ports_.assign(n * d, std::nullopt);

  std::unordered_set<std::uint64_t> pairs;
  pairs.reserve(edges.size() * 2);
  for (const EdgeSpec& e : edges) {
    if (e.u >= n || e.v >= n || e.port_u >= d || e.port_v >= d) {
      throw Error(ErrorCode::kIdOutOfRange, describe(e));
    }
    if (e.u == e.v) throw Error(ErrorCode::kSelfLoop, describe(e));
    if (!pairs.insert(pair_key(e.u, e.v)).second) {
      throw Error(ErrorCode::kDuplicateEdge, describe(e));
    }
    auto& slot_u = g.ports_[static_cast<std::size_t>(e.u) * d + e.port_u];
    auto& slot_v = g.ports_[static_cast<std::size_t>(e.v) * d + e.port_v];
    if (slot_u || slot_v) throw Error(ErrorCode::kPortConflict, describe(e));
    slot_u = PortEntry{e.v, e.sign, e.port_v};
    slot_v = PortEntry{e.u, e.sign, e.port_u};
  }
  g.edge_count_ = edges.size();
  return g;
}

std::vector<EdgeSpec> SignedGraph::edges() const {
  std::vector<EdgeSpec> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < n_; ++u) {
    for (std::uint32_t i = 0; i < d_; ++i) {
      const auto& slot = port(u, i);
      if (slot && u < slot->to) out.push_back({u, slot->to, slot->sign, i, slot->back_port});
    }
  }
  return out;
}

std::uint32_t SignedGraph::degree(Vertex v) const noexcept {
  auto p = ports(v);
  return static_cast<std::uint32_t>(std::count_if(p.begin(), p.end(),
                                                  [](const auto& s) { return s.has_value(); }));
}

Answer GraphOracle::answer(Vertex v, std::uint32_t port0) {
  const auto& slot = graph_->port(v, port0);
  if (!slot) return Answer::error_symbol();
  return Answer::neighbor(slot->to, slot->sign);
}

Answer QuerySession::neighbor_query(Vertex v, std::uint32_t port) {
  if (v >= oracle_->vertex_count() || port < 1 || port > oracle_->degree_bound()) {
    std::ostringstream out;
    out << "query (" << v << ", " << port << ") with N=" << oracle_->vertex_count()
        << ", d=" << oracle_->degree_bound();
    throw Error(ErrorCode::kIdOutOfRange, out.str());
  }
  Answer a = oracle_->answer(v, port - 1);
  ++queries_used_;
  return a;
}

}  // namespace clustest
