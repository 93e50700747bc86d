#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sce/index_model.hpp"
#include "sce/mapping.hpp"
#include "sce/network_model.hpp"

namespace sce {

// Evaluated quantities of a source/target code pair plus the bound values
// and clause verdicts of one theorem check.
struct TranslationReport {
  std::string name;
  std::vector<std::string> eavesdropper_ids;
  Rat source_error;
  std::vector<double> source_leakage;
  Rat target_error;
  std::vector<double> target_leakage;
  std::optional<std::uint64_t> chosen_sigma;
  std::optional<Rat> measured_tv;
  std::optional<double> bound_zeta;
  std::optional<std::string> zeta_branch;  // which minimum was active
  std::optional<double> bound_gamma;
  std::optional<double> bound_gamma_prime;
  std::vector<std::pair<std::string, bool>> clauses;
  bool satisfied = true;

  void add_clause(const std::string& label, bool ok) {
    clauses.emplace_back(label, ok);
    satisfied = satisfied && ok;
  }
  std::string format() const;  // stable field order
};

// Forward translation: the broadcast encoder becomes the bottleneck
// encoder, sources transmit their message verbatim, the fan-out vertex
// copies, and receiver decoders carry over. Error and leakage match the
// index code exactly.
NetworkCode translate_i2n(const IndexInstance& inst, const IndexCode& code,
                          const MappedNetwork& mapped);

// Backward translation on a mapped network. Requires every source link to
// be a deterministic function of its message. If the fan-out encoders are
// not plain copies they are first replaced by copies, fixing the fan-out
// key at its error-minimizing value under `msg_pmfs` and composing the old
// re-encoding into the receiver decoders. Error cannot increase; leakage
// is unchanged.
IndexCode translate_n2i(const IndexInstance& inst, const MappedNetwork& mapped,
                        const NetworkCode& code,
                        const std::vector<Pmf>& msg_pmfs);

// One-time-pad style translation of a deterministic code on an augmented
// instance: each broadcast component is the edge message plus the global
// encoding of that edge, modulo the edge alphabet.
IndexCode translate_n2i_code(const AugmentedInstance& aug,
                             const MappedIndex& mapped,
                             const NetworkCode& code);

// Edge-message realizations under which every receiver of the mapped index
// instance decodes correctly, for a fixed source realization.
std::vector<std::uint64_t> decodable_set(const MappedIndex& mapped,
                                         const IndexCode& code,
                                         std::uint64_t source_rank);

// Instantiates network encoders/decoders by pinning the broadcast word to
// sigma inside the index decoders.
NetworkCode build_network_code_from_sigma(const AugmentedInstance& aug,
                                          const MappedIndex& mapped,
                                          const IndexCode& code,
                                          std::uint64_t sigma);

// Packed edge tuple produced by the sigma-pinned code per source rank.
std::vector<std::uint64_t> phi_sigma(const AugmentedInstance& aug,
                                     const MappedIndex& mapped,
                                     const IndexCode& code,
                                     std::uint64_t sigma);

// Source realizations decodable with broadcast sigma: one flag vector per
// sigma value, plus counts.
struct GoodSets {
  std::vector<std::vector<bool>> member;  // [sigma][source_rank]
  std::vector<std::uint64_t> count;       // |G_sigma|
};
GoodSets good_sets(const MappedIndex& mapped, const IndexCode& code);

struct SigmaDiagnostics {
  std::uint64_t sigma = 0;
  Rat broadcast_prob;        // p_{X_b}(sigma)
  Rat bad_fraction;          // |G^c_sigma| / |X_{S'}|
  double security_sum = 0.0; // four-term decomposition summed over r
  double objective = 0.0;
};

struct SigmaSelection {
  std::uint64_t sigma = 0;
  double objective = 0.0;
  std::vector<SigmaDiagnostics> scanned;  // positive-probability sigma only
};

// Scans every positive-probability sigma and returns the minimizer of
//   |G^c_sigma|/|X_{S'}|
//   + sum_r [ I(A;D|b=s) - I(A;D|B,b=s)
//             + p(D=1|b=s) I(A;B|D=1,b=s) + p(D=0|b=s) I(A;B|D=0,b=s) ],
// smallest sigma among ties. Messages must be uniform and independent.
SigmaSelection select_sigma(const AugmentedInstance& aug,
                            const MappedIndex& mapped, const IndexCode& code);

// zeta = min{ eps(1 + coeff*tv), eps(1 + eps 2^n), 1 }.
double zeta(double eps, std::uint64_t n_hat, double tv, double tv_coeff = 2.0);

// Name of the branch achieving the minimum: "tv", "eps2n", or "one".
std::string zeta_active_branch(double eps, std::uint64_t n_hat, double tv,
                               double tv_coeff = 2.0);

// Leakage ceiling for the imperfect-decoding backward translation; returns
// n_hat whenever r_count*eta + zeta >= 1.
double gamma_bound(double eps, double eta, size_t r_count,
                   std::uint64_t n_hat, double log_source_alphabet,
                   double zeta_val);

// gamma with zeta replaced by eps (uniform-broadcast case).
double gamma_prime_bound(double eps, double eta, size_t r_count,
                         std::uint64_t n_hat, double log_source_alphabet);

struct Lemma1Report {
  double eps_prime = 0.0;
  double lhs = 0.0;       // network-side leakage of the sigma-pinned code
  double index_cond_mi = 0.0;
  double rhs = 0.0;
  bool holds = false;
  double prop3_lhs = 0.0, prop3_rhs = 0.0;
  bool prop3_holds = false;
  double prop4_lhs = 0.0, prop4_rhs = 0.0;
  bool prop4_holds = false;
};

// Both sides of the leakage-difference bound and its two sub-inequalities,
// for one eavesdropper and one sigma. Uniform messages assumed.
Lemma1Report check_lemma1(const AugmentedInstance& aug,
                          const MappedIndex& mapped, const IndexCode& code,
                          std::uint64_t sigma, size_t eavesdropper);

enum class TheoremId {
  Thm1Fwd,
  Thm1Bwd,
  Thm2P1,
  Thm2P2a,
  Thm2P2b,
  Cor1,
};

std::optional<TheoremId> theorem_id_from_string(const std::string& s);

TranslationReport verify_thm1_fwd(const IndexInstance& inst,
                                  const IndexCode& code,
                                  const std::vector<Pmf>& msg_pmfs);
TranslationReport verify_thm1_bwd(const IndexInstance& inst,
                                  const MappedNetwork& mapped,
                                  const NetworkCode& code,
                                  const std::vector<Pmf>& msg_pmfs);
TranslationReport verify_thm2_p1(const AugmentedInstance& aug,
                                 const MappedIndex& mapped,
                                 const NetworkCode& code,
                                 const std::vector<Pmf>& aug_pmfs);
TranslationReport verify_thm2_p2a(const AugmentedInstance& aug,
                                  const MappedIndex& mapped,
                                  const IndexCode& code);
TranslationReport verify_thm2_p2b(const AugmentedInstance& aug,
                                  const MappedIndex& mapped,
                                  const IndexCode& code,
                                  double tv_coeff = 2.0,
                                  std::optional<std::uint64_t> sigma = {});
TranslationReport verify_cor1(const AugmentedInstance& aug,
                              const MappedIndex& mapped,
                              const IndexCode& code,
                              bool linear_encoder);

// Uniform pmfs for every message of an index/network instance.
std::vector<Pmf> uniform_index_pmfs(const IndexInstance& inst);
std::vector<Pmf> uniform_network_pmfs(const NetworkInstance& inst);

}  // namespace sce
