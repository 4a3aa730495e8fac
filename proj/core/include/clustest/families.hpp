#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clustest/random.hpp"
#include "clustest/signed_graph.hpp"

namespace clustest {

using Label = std::uint8_t;
inline constexpr Label kLabelCount = 10;
inline constexpr std::uint32_t kFamilyDegree = 6;

/// Cyclic permutation (r_1 r_2 ... r_L) on a subset of the ten labels.
class LabelPermutation {
 public:
  /// Throws Error{kConfigError} for repeated or out-of-range labels.
  explicit LabelPermutation(std::vector<Label> cycle);

  bool in_support(Label p) const noexcept { return p < kLabelCount && position_[p] >= 0; }
  /// Throws Error{kNotInSupport}.
  Label apply(Label p) const;
  Label invert(Label p) const;

  std::span<const Label> cycle() const noexcept { return cycle_; }
  std::size_t support_size() const noexcept { return cycle_.size(); }

  static const LabelPermutation& first();   // (0 1 2 3 4 5 6 7 8 9)
  static const LabelPermutation& second();  // (2 4 6 0 8 1 3 7 9 5)
  static const LabelPermutation& third();   // (1 6 3 8 5 0 7 2 9 4)
  static const LabelPermutation& evens();   // (0 2 4 6 8)
  static const LabelPermutation& odds();    // (1 3 5 7 9)
  static LabelPermutation fixed(Label s);   // (s)

 private:
  std::vector<Label> cycle_;
  std::array<int, kLabelCount> position_{};
};

/// G1 (far from clusterable w.h.p.) and G2 (always clusterable).
enum class Family : std::uint8_t { kFar = 1, kClusterable = 2 };

enum class Layer : std::uint8_t {
  kArc,          // G1 ports 1/2, positive, Hamiltonian
  kSecond,       // G1 ports 3/4, positive
  kThird,        // G1 ports 5/6, negative
  kWithinLabel,  // G2 ports 1/2, positive
  kStep2,        // G2 ports 3/4, positive
  kHamiltonian,  // G2 ports 5/6, negative, Hamiltonian
};

std::string_view to_string(Layer layer) noexcept;

/// One edge layer of a family: a union of label-stepping cycles whose edges
/// take port `tail_port` at the tail and `tail_port + 1` at the head.
struct LayerSpec {
  Layer layer;
  std::uint32_t tail_port;  // 1-based: 1, 3 or 5
  Sign sign;
  bool hamiltonian;
  std::vector<LabelPermutation> cycles;  // disjoint; together they cover all labels

  Label successor(Label p) const;
  Label predecessor(Label p) const;
  /// Support size of the cycle containing p (1 for the within-label layer).
  std::size_t cycle_length(Label p) const;
};

/// The three layers of a family, ordered by tail port.
std::span<const LayerSpec> family_layers(Family family);

/// Where port `port` (1-based) of a vertex labelled p leads in the family:
/// the neighbor's label, the neighbor's mirror port (1-based), the sign,
/// and the layer.
struct PortRule {
  Label target;
  std::uint32_t back_port;
  Sign sign;
  std::size_t layer_index;
};
PortRule port_rule(Family family, Label p, std::uint32_t port);

struct FamilyInstance {
  SignedGraph graph;
  std::vector<Label> labels;
  Family family = Family::kFar;
  std::uint64_t seed = 0;
  /// Per layer (family_layers order), the (tail, head) pairs.
  std::array<std::vector<std::pair<Vertex, Vertex>>, 3> layer_edges;
};

/// Vertices grouped by label.
using LabelClasses = std::array<std::vector<Vertex>, kLabelCount>;

/// Uniform member of D^sigma over the given vertices: independent uniform
/// successor bijections class(p) -> class(sigma(p)), resampled while any
/// cycle is shorter than 3. Edges take ports (tail_port, tail_port + 1),
/// given 1-based. Throws kUnevenLabelCounts / kTooFewVertices.
std::vector<EdgeSpec> sample_cycle_union(const LabelClasses& classes,
                                         const LabelPermutation& sigma, std::uint32_t tail_port,
                                         Sign sign, Rng& rng);

/// Throws Error{kBadN} unless N is a multiple of 10 and at least 30.
void check_family_size(std::size_t n);

FamilyInstance gen_g1(std::size_t n, std::uint64_t seed);
FamilyInstance gen_g2(std::size_t n, std::uint64_t seed);
FamilyInstance generate_family(Family family, std::size_t n, std::uint64_t seed);

/// Empty iff every family invariant holds; otherwise one line per violation.
std::vector<std::string> validate_family_membership(const FamilyInstance& instance);

/// Sidecar JSON: {"family":..,"seed":..,"labels":[..],"layers":{name:[[tail,head],..]}}
std::string serialize_family_sidecar(const FamilyInstance& instance);
/// Rebuilds an instance from a graph file and its sidecar.
FamilyInstance parse_family(std::string_view graph_text, std::string_view sidecar_text);

}  // namespace clustest
