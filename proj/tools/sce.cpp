#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "sce/error.hpp"
#include "sce/serialize.hpp"
#include "sce/translation.hpp"
#include "sce/verify_suite.hpp"

namespace {

using namespace sce;

bool diagnostics_enabled() {
  const char* v = std::getenv("SCE_LOG");
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

void diag(const std::string& msg) {
  if (diagnostics_enabled()) std::cerr << "sce: " << msg << "\n";
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw InputError("cannot write '" + output_path + "'");
  out << text;
}

std::string fmt_bits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

int cmd_map(const std::string& input, const std::string& direction,
            std::uint64_t n, const std::string& output) {
  SceFile file = load_sce_file(input);
  if (direction == "i2n") {
    if (file.kind != SceFile::Kind::Index)
      throw InputError("direction i2n needs an index file");
    MappedNetwork mapped = index_to_network(*file.index, n);
    SceFile out;
    out.kind = SceFile::Kind::Network;
    out.network = mapped.net;
    out.pmfs = file.pmfs;
    emit(serialize(out), output);
    return 0;
  }
  if (direction == "n2i") {
    if (file.kind != SceFile::Kind::Network)
      throw InputError("direction n2i needs a network file");
    if (!file.augmented_original_count)
      throw InputError(
          "direction n2i needs an augmented instance; run 'sce augment' first");
    AugmentedInstance aug = as_augmented(file);
    MappedIndex mapped = network_to_index(aug, n);
    SceFile out;
    out.kind = SceFile::Kind::Index;
    out.index = mapped.instance;
    out.meta["nhat"] = std::to_string(mapped.n_hat);
    out.meta["uses"] = std::to_string(mapped.uses);
    out.pmfs = file.pmfs;
    emit(serialize(out), output);
    return 0;
  }
  throw InputError("direction must be i2n or n2i");
}

int cmd_augment(const std::string& input, const std::string& output) {
  SceFile file = load_sce_file(input);
  if (file.kind != SceFile::Kind::Network || !file.network_code)
    throw InputError("augment needs a network file with a code section");
  auto [aug, det] = augment(*file.network, *file.network_code);
  SceFile out;
  out.kind = SceFile::Kind::Network;
  out.network = aug.net;
  out.augmented_original_count = aug.original_message_count;
  out.network_code = det;
  out.pmfs = file.pmfs;
  // key-message pmfs follow the original code's keys
  for (size_t v = 0; v < file.network->vertices.size(); ++v) {
    const Pmf& key = file.network_code->node_keys[v];
    size_t km = aug.key_message_of_vertex(v);
    if (aug.net.messages[km].alphabet > 1 &&
        key != Pmf::uniform(key.support_size()))
      out.pmfs[aug.net.messages[km].id] = key;
  }
  emit(serialize(out), output);
  return 0;
}

int cmd_translate(const std::string& input, const std::string& direction,
                  std::uint64_t n, std::optional<std::uint64_t> sigma,
                  const std::string& via, const std::string& output) {
  SceFile file = load_sce_file(input);

  if (direction == "i2n" && via.empty()) {
    if (file.kind != SceFile::Kind::Index || !file.index_code)
      throw InputError("translate i2n needs an index file with a code");
    auto pmfs = resolve_index_pmfs(file);
    TranslationReport rep = verify_thm1_fwd(*file.index, *file.index_code,
                                            pmfs);
    MappedNetwork mapped =
        index_to_network(*file.index, n, file.index_code->codeword_bits);
    NetworkCode ncode = translate_i2n(*file.index, *file.index_code, mapped);
    SceFile out;
    out.kind = SceFile::Kind::Network;
    out.network = mapped.net;
    out.network_code = ncode;
    out.pmfs = file.pmfs;
    emit(serialize(out), output);
    std::cout << rep.format();
    return rep.satisfied ? 0 : 1;
  }

  if (direction == "n2i" && file.kind == SceFile::Kind::Network &&
      !file.augmented_original_count) {
    if (!file.network_code)
      throw InputError("translate n2i needs a network code section");
    RecoveredMapping rec =
        recover_index_instance(*file.network, file.network_code->uses);
    auto pmfs = resolve_network_pmfs(file);
    TranslationReport rep =
        verify_thm1_bwd(rec.instance, rec.mapped, *file.network_code, pmfs);
    IndexCode icode = translate_n2i(rec.instance, rec.mapped,
                                    *file.network_code, pmfs);
    SceFile out;
    out.kind = SceFile::Kind::Index;
    out.index = rec.instance;
    out.index_code = icode;
    emit(serialize(out), output);
    std::cout << rep.format();
    return rep.satisfied ? 0 : 1;
  }

  if (direction == "n2i") {
    if (!file.network_code)
      throw InputError("translate n2i needs a network code section");
    if (!file.network_code->deterministic())
      throw InputError("code is randomized: run 'sce augment' first");
    AugmentedInstance aug = as_augmented(file);
    MappedIndex mapped = network_to_index(aug, n);
    auto pmfs = resolve_network_pmfs(file);
    TranslationReport rep =
        verify_thm2_p1(aug, mapped, *file.network_code, pmfs);
    IndexCode icode = translate_n2i_code(aug, mapped, *file.network_code);
    SceFile out;
    out.kind = SceFile::Kind::Index;
    out.index = mapped.instance;
    out.index_code = icode;
    out.meta["nhat"] = std::to_string(mapped.n_hat);
    out.meta["uses"] = std::to_string(mapped.uses);
    emit(serialize(out), output);
    std::cout << rep.format();
    return rep.satisfied ? 0 : 1;
  }

  // i2n with --via: rebuild a network code on the augmented instance by
  // pinning a broadcast value inside the index decoders.
  if (file.kind != SceFile::Kind::Index || !file.index_code)
    throw InputError("translate i2n needs an index file with a code");
  SceFile via_file = load_sce_file(via);
  AugmentedInstance aug = as_augmented(via_file);
  MappedIndex mapped = network_to_index(aug, n);
  if (mapped.instance.messages.size() != file.index->messages.size())
    throw InputError("index file does not match the augmented instance");
  for (size_t i = 0; i < mapped.instance.messages.size(); ++i)
    if (mapped.instance.messages[i].id != file.index->messages[i].id ||
        mapped.instance.messages[i].alphabet !=
            file.index->messages[i].alphabet)
      throw InputError("index file does not match the augmented instance");
  const IndexCode& icode = *file.index_code;

  TranslationReport rep;
  NetworkCode built;
  if (sigma) {
    built = build_network_code_from_sigma(aug, mapped, icode, *sigma);
    rep.name = "sigma_rebuild";
    for (const auto& r : mapped.instance.eavesdroppers)
      rep.eavesdropper_ids.push_back(r.id);
    auto ipmfs = uniform_index_pmfs(mapped.instance);
    rep.source_error = eval_index_error(mapped.instance, icode, ipmfs);
    rep.source_leakage = eval_index_leakage(mapped.instance, icode, ipmfs);
    auto npmfs = uniform_network_pmfs(aug.net);
    rep.target_error = eval_network_error(aug.net, built, npmfs);
    rep.target_leakage = eval_network_leakage(aug.net, built, npmfs);
    rep.chosen_sigma = *sigma;
  } else {
    auto ipmfs = uniform_index_pmfs(mapped.instance);
    Rat eps = eval_index_error(mapped.instance, icode, ipmfs);
    rep = eps == 0 ? verify_thm2_p2a(aug, mapped, icode)
                   : verify_thm2_p2b(aug, mapped, icode);
    built = build_network_code_from_sigma(aug, mapped, icode,
                                          rep.chosen_sigma.value_or(0));
  }
  SceFile out;
  out.kind = SceFile::Kind::Network;
  out.network = aug.net;
  out.augmented_original_count = aug.original_message_count;
  out.network_code = built;
  emit(serialize(out), output);
  std::cout << rep.format();
  return rep.satisfied ? 0 : 1;
}

int cmd_evaluate(const std::string& input, const std::string& epsilon,
                 std::optional<double> eta) {
  SceFile file = load_sce_file(input);
  FeasibilityReport rep;
  std::vector<std::string> ids;
  if (file.kind == SceFile::Kind::Index) {
    if (!file.index_code) throw InputError("evaluate needs a code section");
    auto pmfs = resolve_index_pmfs(file);
    rep.error = eval_index_error(*file.index, *file.index_code, pmfs);
    rep.leakage = eval_index_leakage(*file.index, *file.index_code, pmfs);
    for (const auto& r : file.index->eavesdroppers) ids.push_back(r.id);
  } else {
    if (!file.network_code) throw InputError("evaluate needs a code section");
    auto pmfs = resolve_network_pmfs(file);
    rep.error = eval_network_error(*file.network, *file.network_code, pmfs);
    rep.leakage =
        eval_network_leakage(*file.network, *file.network_code, pmfs);
    for (const auto& r : file.network->eavesdroppers) ids.push_back(r.id);
  }
  std::string out = "report evaluate\n";
  out += "error " + rat_str(rep.error) + "\n";
  for (size_t i = 0; i < rep.leakage.size(); ++i)
    out += "leakage " + ids[i] + " " + fmt_bits(rep.leakage[i]) + "\n";
  bool feasibility_checked = !epsilon.empty() || eta.has_value();
  bool feasible = true;
  if (feasibility_checked) {
    Rat eps = epsilon.empty() ? Rat(0) : rat_parse(epsilon);
    double eta_v = eta.value_or(0.0);
    feasible = rep.error <= eps;
    for (double l : rep.leakage) feasible = feasible && l <= eta_v + kLeakageTol;
    out += std::string("feasible ") + (feasible ? "true" : "false") + "\n";
  }
  std::cout << out;
  return feasibility_checked && !feasible ? 1 : 0;
}

int cmd_verify(const std::string& theorem, int trials, std::uint64_t seed,
               std::optional<double> epsilon, double tv_coeff) {
  if (epsilon && (*epsilon <= 0.0 || *epsilon > 0.5))
    throw InputError("theorem hypothesis needs epsilon in (0, 0.5]");
  double eps_cap = epsilon.value_or(0.5);
  diag("verify " + theorem + " trials=" + std::to_string(trials) +
       " seed=" + std::to_string(seed));
  SuiteResult res;
  if (theorem == "thm1_fwd")
    res = suite_thm1_fwd(trials, seed);
  else if (theorem == "thm1_bwd")
    res = suite_thm1_bwd(trials, seed);
  else if (theorem == "thm2_p1")
    res = suite_thm2_p1(trials, seed);
  else if (theorem == "thm2_p2a")
    res = suite_thm2_p2a(trials, seed);
  else if (theorem == "thm2_p2b")
    res = suite_thm2_p2b(trials, seed, eps_cap, tv_coeff);
  else if (theorem == "cor1")
    res = suite_cor1(trials, seed);
  else if (theorem == "lemma1")
    res = suite_lemma1(trials, seed);
  else if (theorem == "prop1")
    res = suite_prop1(trials, seed);
  else
    throw InputError("unknown theorem id '" + theorem + "'");
  diag("suite finished with " + std::to_string(res.failures) + " failures");
  std::cout << "verify " << res.name << " trials " << res.trials
            << " failures " << res.failures << "\n";
  if (!res.pass())
    for (const auto& d : res.details) std::cerr << d << "\n";
  std::cout << (res.pass() ? "PASS" : "FAIL") << "\n";
  return res.pass() ? 0 : 1;
}

int cmd_bounds(double epsilon, double eta, size_t r_count,
               std::uint64_t n_hat, std::optional<double> log_alpha,
               double tv, double tv_coeff) {
  double z = zeta(epsilon, n_hat, tv, tv_coeff);
  std::string out = "report bounds\n";
  out += "zeta " + fmt_bits(z) + "\n";
  if (log_alpha) {
    out += "gamma " +
           fmt_bits(gamma_bound(epsilon, eta, r_count, n_hat, *log_alpha, z)) +
           "\n";
    out += "gamma-prime " +
           fmt_bits(gamma_prime_bound(epsilon, eta, r_count, n_hat,
                                      *log_alpha)) +
           "\n";
  }
  std::cout << out;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "secure index/network coding: instance mappings, code translations, "
      "and exact equivalence verification"};
  app.require_subcommand(1);

  std::string input, direction, output, via, epsilon_str, theorem;
  std::uint64_t n = 1, seed = 1;
  int trials = 100;
  std::optional<std::uint64_t> sigma;
  std::optional<double> eta, epsilon_d, log_alpha;
  double tv = 0.0, tv_coeff = 2.0;
  double bounds_eps = 0.0, bounds_eta = 0.0;
  size_t r_count = 1;
  std::uint64_t n_hat = 1;

  auto* map_cmd = app.add_subcommand("map", "map an instance across classes");
  map_cmd->add_option("input", input)->required();
  map_cmd->add_option("--direction", direction)->required();
  map_cmd->add_option("--n", n, "network uses");
  map_cmd->add_option("--output", output);

  auto* aug_cmd =
      app.add_subcommand("augment", "turn node keys into key messages");
  aug_cmd->add_option("input", input)->required();
  aug_cmd->add_option("--output", output);

  auto* tr_cmd = app.add_subcommand("translate", "translate a code");
  tr_cmd->add_option("input", input)->required();
  tr_cmd->add_option("--direction", direction)->required();
  tr_cmd->add_option("--n", n, "network uses");
  tr_cmd->add_option("--sigma", sigma, "broadcast value override");
  tr_cmd->add_option("--via", via, "augmented network instance file");
  tr_cmd->add_option("--output", output);

  auto* ev_cmd =
      app.add_subcommand("evaluate", "evaluate error and leakage of a code");
  ev_cmd->add_option("input", input)->required();
  ev_cmd->add_option("--epsilon", epsilon_str, "error ceiling (rational)");
  ev_cmd->add_option("--eta", eta, "leakage ceiling in bits");

  auto* vf_cmd =
      app.add_subcommand("verify", "randomized theorem verification");
  vf_cmd->add_option("theorem", theorem)->required();
  vf_cmd->add_option("--trials", trials);
  vf_cmd->add_option("--seed", seed);
  vf_cmd->add_option("--epsilon", epsilon_d, "error-rate cap for fixtures");
  vf_cmd->add_option("--tv-coefficient", tv_coeff);

  auto* bd_cmd = app.add_subcommand("bounds", "closed-form bound calculators");
  bd_cmd->add_option("--epsilon", bounds_eps)->required();
  bd_cmd->add_option("--eta", bounds_eta);
  bd_cmd->add_option("--eavesdroppers", r_count);
  bd_cmd->add_option("--nhat", n_hat);
  bd_cmd->add_option("--log-alphabet", log_alpha);
  bd_cmd->add_option("--tv", tv);
  bd_cmd->add_option("--tv-coefficient", tv_coeff);

  CLI11_PARSE(app, argc, argv);

  try {
    if (map_cmd->parsed()) return cmd_map(input, direction, n, output);
    if (aug_cmd->parsed()) return cmd_augment(input, output);
    if (tr_cmd->parsed())
      return cmd_translate(input, direction, n, sigma, via, output);
    if (ev_cmd->parsed()) return cmd_evaluate(input, epsilon_str, eta);
    if (vf_cmd->parsed())
      return cmd_verify(theorem, trials, seed, epsilon_d, tv_coeff);
    if (bd_cmd->parsed())
      return cmd_bounds(bounds_eps, bounds_eta, r_count, n_hat, log_alpha, tv,
                        tv_coeff);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  diag("no subcommand dispatched");
  return 2;
}
