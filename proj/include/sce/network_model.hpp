#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sce/index_model.hpp"
#include "sce/probinfo.hpp"
#include "sce/rational.hpp"

namespace sce {

struct NetworkEdge {
  size_t tail = 0;
  size_t head = 0;
  std::uint32_t copy = 0;  // disambiguates parallel edges
  Rat capacity;            // bits per use, nonnegative

  std::string id(const std::vector<std::string>& vertices) const {
    return vertices[tail] + "->" + vertices[head] + "#" +
           std::to_string(copy);
  }
};

struct NetworkMessage {
  std::string id;
  std::uint32_t alphabet = 2;
  size_t origin = 0;
  std::vector<size_t> destinations;  // vertex indices, sorted
};

struct NetworkEavesdropper {
  std::string id;
  std::vector<size_t> targets;  // message indices, sorted
  std::vector<size_t> taps;     // edge indices, sorted
};

// Acyclic capacitated digraph with source messages and eavesdroppers that
// observe subsets of edges.
struct NetworkInstance {
  std::vector<std::string> vertices;
  std::vector<NetworkEdge> edges;
  std::vector<NetworkMessage> messages;
  std::vector<NetworkEavesdropper> eavesdroppers;

  void validate() const;
  size_t vertex_index(const std::string& id) const;
  size_t edge_index(const std::string& id) const;
  std::vector<size_t> in_edges(size_t v) const;
  std::vector<size_t> out_edges(size_t v) const;
  std::vector<size_t> origin_messages(size_t v) const;
  std::vector<size_t> demanded_messages(size_t v) const;
  std::vector<size_t> destination_vertices() const;
};

// Local encoders and destination decoders as explicit total tables.
//
// edge_encoders[e]: indexed by (in-edge values of tail(e) in edge order,
// origin-message values at tail(e) in message order, key of tail(e)); the
// key dimension is last. Entries lie in [0, 2^floor(c_e * uses)).
// decoders[v] (destinations only): indexed by (in-edge values of v, origin
// messages at v); entries are the packed demanded-message estimate.
struct NetworkCode {
  std::uint64_t uses = 1;
  std::vector<Pmf> node_keys;  // one per vertex; support 1 = deterministic
  std::vector<std::vector<std::uint64_t>> edge_encoders;
  std::map<size_t, std::vector<std::uint64_t>> decoders;

  bool deterministic() const;
  void validate(const NetworkInstance& inst) const;
};

// 2^floor(c_e * uses); capacity floor 0 gives a one-symbol alphabet.
std::uint64_t edge_alphabet(const NetworkInstance& inst,
                            std::uint64_t uses, size_t e);

// Removes, to a fixpoint, in-degree-0 vertices that originate nothing and
// out-degree-0 vertices that are no destination.
NetworkInstance normalize_instance(const NetworkInstance& inst);

// Kahn's algorithm; ties broken by vertex id (lexicographic).
std::vector<size_t> topological_order(const NetworkInstance& inst);

// Every edge value as a function of the (message, key) realization.
// Realizations are ranked over (messages in instance order, node keys in
// vertex order), first component most significant.
struct GlobalTables {
  std::vector<std::uint32_t> domain_sizes;  // messages then keys
  std::uint64_t realizations = 0;
  std::vector<std::vector<std::uint64_t>> edge_values;  // [edge][rank]
};

GlobalTables global_encodings(const NetworkInstance& inst,
                              const NetworkCode& code);
// Same, but along a caller-supplied topological vertex order.
GlobalTables global_encodings_ordered(const NetworkInstance& inst,
                                      const NetworkCode& code,
                                      const std::vector<size_t>& order);

// Joint over (messages, node keys, edge values, decode flag). Variable
// names: "msg:<id>", "key:<vertex>", "edge:<edge-id>", "decode_ok".
JointPmf network_joint(const NetworkInstance& inst, const NetworkCode& code,
                       const std::vector<Pmf>& msg_pmfs);

Rat eval_network_error(const NetworkInstance& inst, const NetworkCode& code,
                       const std::vector<Pmf>& msg_pmfs);

// Per-eavesdropper I(X_A ; X_B) over the tapped edge values, in bits.
std::vector<double> eval_network_leakage(const NetworkInstance& inst,
                                         const NetworkCode& code,
                                         const std::vector<Pmf>& msg_pmfs);

FeasibilityReport check_network_feasible(const NetworkInstance& inst,
                                         const NetworkCode& code,
                                         const std::vector<Pmf>& msg_pmfs,
                                         const Rat& epsilon, double eta);

// Randomization-free equivalent: one extra source message per vertex takes
// the role of that vertex's key; nobody demands it. Vertices with no
// outgoing edge get the one-symbol sentinel alphabet.
struct AugmentedInstance {
  NetworkInstance net;
  size_t original_message_count = 0;

  size_t key_message_of_vertex(size_t v) const {
    return original_message_count + v;
  }
};

// Returns the augmented instance plus the equivalent deterministic code.
// Error probability and all leakages are preserved.
std::pair<AugmentedInstance, NetworkCode> augment(const NetworkInstance& inst,
                                                  const NetworkCode& code);

// Message pmfs for the augmented instance: originals first, then one per
// vertex copied from the code's key (sentinel for sinks).
std::vector<Pmf> augmented_pmfs(const NetworkInstance& inst,
                                const NetworkCode& code,
                                const std::vector<Pmf>& msg_pmfs);

}  // namespace sce
