#pragma once

#include <cstdint>

#include "sce/index_model.hpp"
#include "sce/mapping.hpp"
#include "sce/network_model.hpp"

namespace sce {

// splitmix64; fully deterministic across platforms, which keeps seeded
// verification runs and their reports byte-identical.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n <= 1 ? 0 : next() % n; }
  bool chance(std::uint64_t num, std::uint64_t den) {
    return next() % den < num;
  }

 private:
  std::uint64_t state_;
};

// Dyadic key pmf, sometimes non-uniform for binary alphabets.
Pmf random_key_pmf(std::uint32_t alphabet, Rng& rng);

// Arbitrary encoder/decoder tables on an index instance.
IndexCode random_index_code(const IndexInstance& inst, std::uint64_t n_hat,
                            std::uint32_t max_key_alphabet, Rng& rng);

// Arbitrary network code on a mapped network whose source links are
// deterministic functions of their message (keys only at the two hubs).
NetworkCode random_network_code_on_mapped(const IndexInstance& inst,
                                          const MappedNetwork& mapped,
                                          std::uint32_t max_key_alphabet,
                                          Rng& rng);

struct DagOptions {
  std::uint32_t max_vertices = 4;
  std::uint32_t max_edges = 4;
  bool allow_zero_bit_edges = true;
  std::uint32_t max_messages = 2;
  std::uint32_t max_eavesdroppers = 2;
};

// Small acyclic instance with binary sources, every source demanded, every
// in-degree-0 vertex originating and every out-degree-0 vertex a
// destination, and at least one eavesdropper.
NetworkInstance random_dag_instance(Rng& rng, const DagOptions& opts = {});

// Deterministic (or key-randomized) code with either random or
// posterior-maximizing decoders.
NetworkCode random_network_code(const NetworkInstance& inst,
                                std::uint64_t uses, std::uint32_t max_key,
                                bool map_decoders, Rng& rng);

// Random broadcast encoder on a mapped index instance with
// posterior-maximizing decoders (uniform messages assumed).
IndexCode random_index_code_on_mapped(const MappedIndex& mapped,
                                      bool map_decoders, Rng& rng);

// GF(2)-linear surjective broadcast encoder (identity on the edge-message
// bits) with posterior-maximizing decoders.
IndexCode linear_index_code_on_mapped(const MappedIndex& mapped, Rng& rng);

// Flips a few decoder entries to inject decoding error.
void corrupt_index_decoders(const MappedIndex& mapped, IndexCode& code,
                            int flips, Rng& rng);

}  // namespace sce
