#include "sce/verify_suite.hpp"

#include <algorithm>
#include <cmath>

#include "sce/error.hpp"
#include "sce/util.hpp"

namespace sce {

IndexInstance fig1_index_instance() {
  IndexInstance inst;
  inst.messages = {{"1", 2}, {"2", 2}, {"3", 2}, {"4", 2}};
  inst.receivers = {{"t1", {0}, {1}}, {"t2", {1, 3}, {2}}, {"t3", {2}, {0, 3}}};
  inst.eavesdroppers = {{"r", {1}, {3}}};
  inst.validate();
  return inst;
}

NetworkInstance fig2_network_instance() {
  NetworkInstance net;
  net.vertices = {"1", "2"};
  net.edges = {{0, 1, 0, Rat(1)}, {0, 1, 1, Rat(1)}};
  net.messages = {{"1", 2, 0, {1}}};
  net.eavesdroppers = {{"r1", {0}, {0}}, {"r2", {0}, {1}}};
  net.validate();
  return net;
}

NetworkCode fig2_otp_code(const NetworkInstance& net) {
  NetworkCode code;
  code.uses = 1;
  code.node_keys = {Pmf::uniform(2), Pmf::uniform(1)};
  // first link carries message xor key, second link carries the key
  code.edge_encoders = {{0, 1, 1, 0}, {0, 1, 0, 1}};
  // receiver xors its two incoming links
  code.decoders[1] = {0, 1, 1, 0};
  code.validate(net);
  return code;
}

P1Fixture fig2_p1_fixture() {
  P1Fixture f;
  f.base = fig2_network_instance();
  NetworkCode randomized = fig2_otp_code(f.base);
  auto [aug, det] = augment(f.base, randomized);
  f.aug = aug;
  f.code = det;
  f.aug_pmfs =
      augmented_pmfs(f.base, randomized, uniform_network_pmfs(f.base));
  f.mapped = network_to_index(f.aug, 1);
  f.translated = translate_n2i_code(f.aug, f.mapped, f.code);
  f.network_error = eval_network_error(f.aug.net, f.code, f.aug_pmfs);
  return f;
}

P1Fixture make_p1_fixture(Rng& rng) {
  P1Fixture f;
  f.base = random_dag_instance(rng);
  bool randomized = rng.chance(1, 2);
  bool map_dec = rng.chance(1, 2);
  NetworkCode raw =
      random_network_code(f.base, 1, randomized ? 2 : 1, map_dec, rng);
  auto [aug, det] = augment(f.base, raw);
  f.aug = aug;
  f.code = det;
  f.aug_pmfs = augmented_pmfs(f.base, raw, uniform_network_pmfs(f.base));
  f.mapped = network_to_index(f.aug, 1);
  f.translated = translate_n2i_code(f.aug, f.mapped, f.code);
  f.network_error = eval_network_error(f.aug.net, f.code, f.aug_pmfs);
  return f;
}

P5Fixture make_p5_fixture(Rng& rng, double eps_cap, bool linear) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    NetworkInstance base = random_dag_instance(rng);
    NetworkCode raw = random_network_code(base, 1, 1, false, rng);
    auto [aug, det] = augment(base, raw);
    MappedIndex mapped = network_to_index(aug, 1);
    if (mapped.n_hat == 0) continue;
    IndexCode code = linear ? linear_index_code_on_mapped(mapped, rng)
                            : random_index_code_on_mapped(mapped, true, rng);
    auto pmfs = uniform_index_pmfs(mapped.instance);
    Rat eps = eval_index_error(mapped.instance, code, pmfs);
    for (int fix = 0; fix < 8 && eps == 0; ++fix) {
      corrupt_index_decoders(mapped, code, 1 + static_cast<int>(rng.below(2)),
                             rng);
      eps = eval_index_error(mapped.instance, code, pmfs);
    }
    if (eps == 0 || rat_double(eps) > eps_cap) continue;
    P5Fixture f;
    f.aug = std::move(aug);
    f.mapped = std::move(mapped);
    f.code = std::move(code);
    f.eps_hat = eps;
    return f;
  }
  throw EvalError("imperfect-code fixture generation failed to converge");
}

SuiteResult suite_thm1_fwd(int trials, std::uint64_t seed,
                           std::uint64_t max_bits, std::uint32_t max_key) {
  SuiteResult res;
  res.name = "thm1_fwd";
  IndexInstance inst = fig1_index_instance();
  auto pmfs = uniform_index_pmfs(inst);
  Rng rng(seed);
  for (int i = 0; i < trials; ++i) {
    std::uint64_t bits = 1 + rng.below(max_bits);
    IndexCode code = random_index_code(inst, bits, max_key, rng);
    TranslationReport rep = verify_thm1_fwd(inst, code, pmfs);
    res.record(rep.satisfied, "trial " + std::to_string(i) + ": " +
                                  rep.format());
  }
  return res;
}

SuiteResult suite_thm1_bwd(int trials, std::uint64_t seed) {
  SuiteResult res;
  res.name = "thm1_bwd";
  IndexInstance inst = fig1_index_instance();
  auto pmfs = uniform_index_pmfs(inst);
  Rng rng(seed);
  for (int i = 0; i < trials; ++i) {
    std::uint64_t bits = 1 + rng.below(3);
    MappedNetwork mapped = index_to_network(inst, 1, bits);
    NetworkCode ncode = random_network_code_on_mapped(inst, mapped, 2, rng);
    TranslationReport rep = verify_thm1_bwd(inst, mapped, ncode, pmfs);
    bool ok = rep.satisfied;
    std::string detail = rep.format();

    // Round trip: translating forward and back must reproduce the index
    // code's error and leakage exactly.
    IndexCode icode = translate_n2i(inst, mapped, ncode, pmfs);
    NetworkCode fwd = translate_i2n(inst, icode, mapped);
    IndexCode icode2 = translate_n2i(inst, mapped, fwd, pmfs);
    Rat e1 = eval_index_error(inst, icode, pmfs);
    Rat e2 = eval_index_error(inst, icode2, pmfs);
    auto l1 = eval_index_leakage(inst, icode, pmfs);
    auto l2 = eval_index_leakage(inst, icode2, pmfs);
    bool round = e1 == e2 && l1.size() == l2.size();
    for (size_t r = 0; round && r < l1.size(); ++r)
      round = std::abs(l1[r] - l2[r]) <= 1e-12;
    if (!round) detail += "round-trip mismatch\n";
    res.record(ok && round, "trial " + std::to_string(i) + ": " + detail);
  }
  return res;
}

SuiteResult suite_thm2_p1(int trials, std::uint64_t seed) {
  SuiteResult res;
  res.name = "thm2_p1";
  {
    P1Fixture f = fig2_p1_fixture();
    TranslationReport rep = verify_thm2_p1(f.aug, f.mapped, f.code, f.aug_pmfs);
    bool ok = rep.satisfied && rep.target_error == 0;
    for (double l : rep.target_leakage) ok = ok && l == 0.0;
    res.record(ok, "one-time-pad fixture: " + rep.format());
  }
  Rng rng(seed);
  for (int i = 1; i < trials; ++i) {
    P1Fixture f = make_p1_fixture(rng);
    TranslationReport rep = verify_thm2_p1(f.aug, f.mapped, f.code, f.aug_pmfs);
    res.record(rep.satisfied,
               "trial " + std::to_string(i) + ": " + rep.format());
  }
  return res;
}

SuiteResult suite_thm2_p2a(int trials, std::uint64_t seed,
                           std::uint64_t max_nhat) {
  SuiteResult res;
  res.name = "thm2_p2a";
  auto check = [&](const P1Fixture& f, const std::string& label) {
    auto pmfs = uniform_index_pmfs(f.mapped.instance);
    if (f.mapped.n_hat > max_nhat) return;
    if (eval_index_error(f.mapped.instance, f.translated, pmfs) != 0) return;
    TranslationReport rep = verify_thm2_p2a(f.aug, f.mapped, f.translated);
    res.record(rep.satisfied, label + ": " + rep.format());
  };
  check(fig2_p1_fixture(), "one-time-pad fixture");
  Rng rng(seed);
  for (int i = 1; i < trials; ++i)
    check(make_p1_fixture(rng), "trial " + std::to_string(i));
  return res;
}

SuiteResult suite_thm2_p2b(int trials, std::uint64_t seed, double eps_cap,
                           double tv_coeff) {
  SuiteResult res;
  res.name = "thm2_p2b";
  Rng rng(seed);
  for (int i = 0; i < trials; ++i) {
    P5Fixture f = make_p5_fixture(rng, eps_cap);
    TranslationReport rep =
        verify_thm2_p2b(f.aug, f.mapped, f.code, tv_coeff, {});
    res.record(rep.satisfied,
               "trial " + std::to_string(i) + ": " + rep.format());
  }
  return res;
}

SuiteResult suite_cor1(int trials, std::uint64_t seed) {
  SuiteResult res;
  res.name = "cor1";
  Rng rng(seed);
  for (int i = 0; i < trials; ++i) {
    P5Fixture f = make_p5_fixture(rng, 0.5, true);
    TranslationReport rep = verify_cor1(f.aug, f.mapped, f.code, true);
    res.record(rep.satisfied,
               "trial " + std::to_string(i) + ": " + rep.format());
  }
  return res;
}

SuiteResult suite_lemma1(int trials, std::uint64_t seed) {
  SuiteResult res;
  res.name = "lemma1";
  Rng rng(seed);
  for (int i = 0; i < trials; ++i) {
    P5Fixture f = make_p5_fixture(rng);
    GoodSets gs = good_sets(f.mapped, f.code);
    std::vector<std::uint64_t> candidates;
    for (std::uint64_t s = 0; s < gs.count.size(); ++s)
      if (gs.count[s] > 0) candidates.push_back(s);
    if (candidates.empty()) continue;  // cannot happen for eps <= 1/2
    std::uint64_t sigma = candidates[rng.below(candidates.size())];
    size_t r = rng.below(f.mapped.instance.eavesdroppers.size());
    Lemma1Report rep = check_lemma1(f.aug, f.mapped, f.code, sigma, r);
    bool ok = rep.holds && rep.prop3_holds && rep.prop4_holds;
    res.record(ok, "trial " + std::to_string(i) + ": lemma lhs=" +
                       std::to_string(rep.lhs) + " rhs=" +
                       std::to_string(rep.rhs));
  }
  return res;
}

SuiteResult suite_prop1(int trials, std::uint64_t seed) {
  SuiteResult res;
  res.name = "prop1";
  auto check = [&](const MappedIndex& mapped, const IndexCode& code,
                   const std::string& label) {
    std::uint64_t edge_space = mapped.edge_space();
    bool ok = true;
    for (std::uint64_t sr = 0; sr < mapped.source_space() && ok; ++sr) {
      std::vector<int> hits(edge_space, 0);
      for (std::uint64_t er : decodable_set(mapped, code, sr)) {
        std::uint64_t sigma = code.encoder[sr * edge_space + er];
        if (++hits[sigma] > 1) ok = false;
      }
    }
    res.record(ok, label + ": two decodable preimages share a sigma");
  };
  check(fig2_p1_fixture().mapped, fig2_p1_fixture().translated,
        "one-time-pad fixture");
  Rng rng(seed);
  for (int i = 1; i < trials; ++i) {
    if (i % 2 == 0) {
      P1Fixture f = make_p1_fixture(rng);
      check(f.mapped, f.translated, "p1 trial " + std::to_string(i));
    } else {
      P5Fixture f = make_p5_fixture(rng);
      check(f.mapped, f.code, "p5 trial " + std::to_string(i));
    }
  }
  return res;
}

}  // namespace sce
