#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sce/index_model.hpp"
#include "sce/network_model.hpp"

namespace sce {

// Image of an index instance under the index-to-network mapping, with the
// structural correspondence the code translations rely on.
struct MappedNetwork {
  NetworkInstance net;
  std::vector<size_t> source_vertex;    // per message: s_i
  std::vector<size_t> receiver_vertex;  // per receiver: t_j
  size_t hub1 = 0;                      // relay fed by every source
  size_t hub2 = 0;                      // broadcast fan-out vertex
  size_t bottleneck_edge = 0;           // hub1 -> hub2
  std::vector<size_t> source_hub_edge;  // per message: s_i -> hub1
  std::vector<size_t> fanout_edge;      // per receiver: hub2 -> t_j
  std::uint64_t uses = 1;
  std::uint64_t codeword_bits = 1;      // floor(bottleneck capacity * uses)
};

// Builds the k+l+2 vertex network: every source feeds a relay, the relay
// feeds a fan-out vertex over one bottleneck link, the fan-out vertex feeds
// every receiver, and side information becomes direct source-to-receiver
// links. Eavesdroppers tap the bottleneck plus all outgoing links of their
// side-information sources.
//
// Source links get capacity ceil(log2 |alphabet|)/uses; the bottleneck and
// fan-out links get capacity codeword_bits/uses (1 bit per use when no
// codeword length is supplied).
MappedNetwork index_to_network(const IndexInstance& inst,
                               std::uint64_t uses = 1,
                               std::optional<std::uint64_t> codeword_bits = {});

// Reconstructs the index instance a mapped network came from and validates
// the structure; receiver ids are regenerated positionally.
IndexInstance invert_index_to_network(const NetworkInstance& net);

// invert_index_to_network plus the full correspondence, with the bottleneck
// codeword length derived from the relay's outgoing capacity.
struct RecoveredMapping {
  IndexInstance instance;
  MappedNetwork mapped;
};
RecoveredMapping recover_index_instance(const NetworkInstance& net,
                                        std::uint64_t uses);

// Validates that `net` is the image of `inst` and recovers the
// correspondence. Throws InputError on any mismatch.
MappedNetwork recover_mapped_network(const IndexInstance& inst,
                                     const NetworkInstance& net,
                                     std::uint64_t uses,
                                     std::uint64_t codeword_bits);

// Image of an augmented network instance under the network-to-index
// mapping: one index message per source (keys included) and per edge, one
// receiver per destination vertex and per edge, eavesdroppers carried over
// with tapped edges turned into side-information edge messages.
struct MappedIndex {
  IndexInstance instance;
  std::uint64_t n_hat = 0;
  std::uint64_t uses = 1;
  size_t source_count = 0;                    // |S'|
  std::vector<std::uint64_t> edge_bits;       // floor(c_e * uses) per edge
  std::vector<size_t> edge_message;           // index-message per edge
  std::vector<std::optional<size_t>> receiver_of_vertex;
  std::vector<size_t> receiver_of_edge;

  std::uint64_t source_space() const;         // |X_{S'}|
  std::uint64_t edge_space() const;           // |X_{E'}| = 2^n_hat
};

MappedIndex network_to_index(const AugmentedInstance& aug,
                             std::uint64_t uses);

}  // namespace sce
