#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sce/randomgen.hpp"
#include "sce/translation.hpp"

namespace sce {

struct SuiteResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::vector<std::string> details;  // one line per failing trial

  bool pass() const { return trials > 0 && failures == 0; }
  void record(bool ok, const std::string& detail) {
    ++trials;
    if (!ok) {
      ++failures;
      details.push_back(detail);
    }
  }
};

// Canonical fixtures.
IndexInstance fig1_index_instance();
NetworkInstance fig2_network_instance();
NetworkCode fig2_otp_code(const NetworkInstance& net);

// Random DAG plus a deterministic code on its augmented instance, with the
// one-time-pad translation applied.
struct P1Fixture {
  NetworkInstance base;
  AugmentedInstance aug;
  MappedIndex mapped;
  NetworkCode code;       // deterministic code on aug.net
  std::vector<Pmf> aug_pmfs;
  IndexCode translated;
  Rat network_error;
};

P1Fixture make_p1_fixture(Rng& rng);
P1Fixture fig2_p1_fixture();

// Imperfect deterministic index code on a mapped instance, measured error
// in (0, eps_cap].
struct P5Fixture {
  AugmentedInstance aug;
  MappedIndex mapped;
  IndexCode code;
  Rat eps_hat;
};

P5Fixture make_p5_fixture(Rng& rng, double eps_cap = 0.5,
                          bool linear = false);

SuiteResult suite_thm1_fwd(int trials, std::uint64_t seed,
                           std::uint64_t max_bits = 3,
                           std::uint32_t max_key = 2);
SuiteResult suite_thm1_bwd(int trials, std::uint64_t seed);
SuiteResult suite_thm2_p1(int trials, std::uint64_t seed);
// Zero-error translated codes drawn from the same stream as suite_thm2_p1.
SuiteResult suite_thm2_p2a(int trials, std::uint64_t seed,
                           std::uint64_t max_nhat = 3);
SuiteResult suite_thm2_p2b(int trials, std::uint64_t seed,
                           double eps_cap = 0.5, double tv_coeff = 2.0);
SuiteResult suite_cor1(int trials, std::uint64_t seed);
SuiteResult suite_lemma1(int trials, std::uint64_t seed);
// Exhaustive uniqueness of decodable preimages over the p1 and p5 streams.
SuiteResult suite_prop1(int trials, std::uint64_t seed);

}  // namespace sce
