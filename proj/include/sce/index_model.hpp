#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sce/probinfo.hpp"
#include "sce/rational.hpp"

namespace sce {

struct IndexMessage {
  std::string id;
  std::uint32_t alphabet = 2;
};

struct IndexReceiver {
  std::string id;
  std::vector<size_t> wants;  // message indices, sorted ascending
  std::vector<size_t> has;    // message indices, sorted ascending
};

struct IndexEavesdropper {
  std::string id;
  std::vector<size_t> targets;  // A_r, sorted
  std::vector<size_t> side;     // B_r, sorted, disjoint from targets
};

// One sender, noiseless broadcast, receivers with side information, and a
// set of eavesdroppers that see the broadcast plus some messages.
struct IndexInstance {
  std::vector<IndexMessage> messages;
  std::vector<IndexReceiver> receivers;
  std::vector<IndexEavesdropper> eavesdroppers;

  void validate() const;
  size_t message_index(const std::string& id) const;
  std::uint64_t message_space() const;
  std::vector<std::uint32_t> message_sizes() const;
};

// Broadcast encoder and per-receiver decoders as explicit total tables.
//
// encoder: indexed by (message tuple, key) in mixed radix, messages in
// instance order first, key last; entries lie in [0, 2^codeword_bits).
// decoders[t]: indexed by (codeword, has-tuple); entries are the packed
// wants-tuple estimate.
struct IndexCode {
  std::uint64_t codeword_bits = 0;
  std::uint32_t key_alphabet = 0;  // 0 = deterministic
  Pmf key_pmf;                     // present iff key_alphabet > 0
  std::vector<std::uint64_t> encoder;
  std::vector<std::vector<std::uint64_t>> decoders;

  bool deterministic() const { return key_alphabet <= 1; }
  std::uint32_t effective_key_alphabet() const {
    return key_alphabet == 0 ? 1u : key_alphabet;
  }
  Pmf effective_key_pmf() const {
    return key_alphabet == 0 ? Pmf::uniform(1) : key_pmf;
  }
  void validate(const IndexInstance& inst) const;

  // Decoder table domain helpers.
  std::uint64_t encode(const IndexInstance& inst,
                       const std::vector<std::uint32_t>& msg_values,
                       std::uint32_t key) const;
  std::uint64_t decode(const IndexInstance& inst, size_t receiver,
                       std::uint64_t codeword,
                       const std::vector<std::uint32_t>& has_values) const;
};

// Joint over (messages, key, broadcast, decode flag); messages independent
// with the given pmfs. Variable names: "msg:<id>", "key", "bcast",
// "decode_ok".
JointPmf index_joint(const IndexInstance& inst, const IndexCode& code,
                     const std::vector<Pmf>& msg_pmfs);

// Exact probability that at least one receiver errs.
Rat eval_index_error(const IndexInstance& inst, const IndexCode& code,
                     const std::vector<Pmf>& msg_pmfs);

// Per-eavesdropper leakage I(X_A ; X_b, X_B) in bits.
std::vector<double> eval_index_leakage(const IndexInstance& inst,
                                       const IndexCode& code,
                                       const std::vector<Pmf>& msg_pmfs);

struct FeasibilityReport {
  Rat error;
  std::vector<double> leakage;
  Rat epsilon;
  double eta = 0.0;
  bool error_ok = false;
  bool leakage_ok = false;
  bool feasible = false;
};

// P_e <= epsilon exactly and every leakage <= eta + 1e-9.
FeasibilityReport check_index_feasible(const IndexInstance& inst,
                                       const IndexCode& code,
                                       const std::vector<Pmf>& msg_pmfs,
                                       const Rat& epsilon, double eta);

constexpr double kLeakageTol = 1e-9;

}  // namespace sce
