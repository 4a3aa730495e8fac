#include <algorithm>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "clustest/error.hpp"
#include "clustest/signed_graph.hpp"

namespace clustest {
namespace {

using nlohmann::json;

[[noreturn]] void format_error(const std::string& locus, const std::string& what) {
  throw Error(ErrorCode::kFormatError, locus + ": " + what);
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

std::uint64_t require_count(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) format_error(key, "missing field");
  if (!it->is_number_unsigned()) format_error(key, "expected a non-negative integer");
  return it->get<std::uint64_t>();
}

}  // namespace

std::string serialize_graph(const SignedGraph& g) {
  std::ostringstream out;
  out << "{\"n\":" << g.vertex_count() << ",\"d\":" << g.degree_bound() << ",\"adjacency\":[";
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    out << (v == 0 ? "\n[" : ",\n[");
    for (std::uint32_t i = 0; i < g.degree_bound(); ++i) {
      if (i) out << ',';
      const auto& slot = g.port(v, i);
      if (!slot) {
        out << "null";
      } else {
        out << "{\"to\":" << slot->to << ",\"sign\":\"" << to_char(slot->sign)
            << "\",\"back\":" << slot->back_port + 1 << '}';
      }
    }
    out << ']';
  }
  out << "\n]}\n";
  return out.str();
}

SignedGraph parse_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    format_error("line " + std::to_string(line_of(text, e.byte)), e.what());
  }
  if (!doc.is_object()) format_error("line 1", "top level must be an object");

  const std::uint64_t n = require_count(doc, "n");
  const std::uint64_t d = require_count(doc, "d");
  auto adj_it = doc.find("adjacency");
  if (adj_it == doc.end() || !adj_it->is_array()) format_error("adjacency", "missing array");
  const json& adjacency = *adj_it;
  if (adjacency.size() != n) {
    format_error("adjacency", "expected " + std::to_string(n) + " vertex rows, found " +
                                  std::to_string(adjacency.size()));
  }

  struct Raw {
    Vertex to;
    Sign sign;
    std::uint32_t back;
  };
  std::vector<std::optional<Raw>> raw(n * d);
  for (std::size_t v = 0; v < n; ++v) {
    const std::string row_locus = "line " + std::to_string(v + 2) + ", adjacency[" +
                                  std::to_string(v) + "]";
    const json& row = adjacency[v];
    if (!row.is_array()) format_error(row_locus, "expected an array");
    if (row.size() != d) {
      format_error(row_locus, "expected " + std::to_string(d) + " ports, found " +
                                  std::to_string(row.size()));
    }
    for (std::size_t i = 0; i < d; ++i) {
      const json& entry = row[i];
      const std::string locus = row_locus + "[" + std::to_string(i) + "]";
      if (entry.is_null()) continue;
      if (!entry.is_object()) format_error(locus, "expected object or null");
      const std::uint64_t to = require_count(entry, "to");
      const std::uint64_t back = require_count(entry, "back");
      auto sign_it = entry.find("sign");
      if (sign_it == entry.end() || !sign_it->is_string()) format_error(locus + ".sign", "missing");
      const std::string s = sign_it->get<std::string>();
      if (s != "+" && s != "-") format_error(locus + ".sign", "expected \"+\" or \"-\"");
      if (to >= n) throw Error(ErrorCode::kIdOutOfRange, locus + ".to = " + std::to_string(to));
      if (back < 1 || back > d) {
        throw Error(ErrorCode::kIdOutOfRange, locus + ".back = " + std::to_string(back));
      }
      raw[v * d + i] = Raw{static_cast<Vertex>(to), s == "+" ? Sign::kPositive : Sign::kNegative,
                           static_cast<std::uint32_t>(back - 1)};
    }
  }

  std::vector<EdgeSpec> edges;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::uint32_t i = 0; i < d; ++i) {
      const auto& e = raw[v * d + i];
      if (!e) continue;
      if (e->to == v) {
        throw Error(ErrorCode::kSelfLoop,
                    "adjacency[" + std::to_string(v) + "][" + std::to_string(i) + "]");
      }
      const auto& mirror = raw[static_cast<std::size_t>(e->to) * d + e->back];
      if (!mirror || mirror->to != v || mirror->back != i || mirror->sign != e->sign) {
        std::ostringstream out;
        out << "adjacency[" << v << "][" << i << "] -> (" << e->to << ", back " << e->back + 1
            << ") has no matching mirror entry";
        throw Error(ErrorCode::kPortConflict, out.str());
      }
      // Each symmetric pair is emitted once, from the smaller (vertex, port).
      if (std::pair(static_cast<std::size_t>(e->to), e->back) > std::pair(v, i)) {
        edges.push_back({static_cast<Vertex>(v), e->to, e->sign, i, e->back});
      }
    }
  }
  return SignedGraph::build(n, static_cast<std::uint32_t>(d), edges);
}

}  // namespace clustest
