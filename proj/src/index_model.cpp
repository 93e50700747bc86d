#include "sce/index_model.hpp"

#include <algorithm>

#include "sce/error.hpp"
#include "sce/util.hpp"

namespace sce {

namespace {

bool sorted_unique(const std::vector<size_t>& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] >= v[i]) return false;
  return true;
}

bool disjoint(const std::vector<size_t>& a, const std::vector<size_t>& b) {
  std::vector<size_t> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(both));
  return both.empty();
}

}  // namespace

void IndexInstance::validate() const {
  if (messages.empty()) throw InputError("index instance has no messages");
  for (size_t i = 0; i < messages.size(); ++i) {
    if (messages[i].alphabet == 0)
      throw InputError("message '" + messages[i].id + "' has empty alphabet");
    for (size_t j = i + 1; j < messages.size(); ++j)
      if (messages[i].id == messages[j].id)
        throw InputError("duplicate message id '" + messages[i].id + "'");
  }
  for (const auto& t : receivers) {
    if (t.wants.empty())
      throw InputError("receiver '" + t.id + "' wants nothing");
    if (!sorted_unique(t.wants) || !sorted_unique(t.has))
      throw InputError("receiver '" + t.id + "' sets must be sorted sets");
    for (size_t m : t.wants)
      if (m >= messages.size())
        throw InputError("receiver '" + t.id + "' wants unknown message");
    for (size_t m : t.has)
      if (m >= messages.size())
        throw InputError("receiver '" + t.id + "' has unknown message");
    if (!disjoint(t.wants, t.has))
      throw InputError("receiver '" + t.id + "' wants a message it has");
  }
  for (const auto& r : eavesdroppers) {
    if (!sorted_unique(r.targets) || !sorted_unique(r.side))
      throw InputError("eavesdropper '" + r.id + "' sets must be sorted sets");
    for (size_t m : r.targets)
      if (m >= messages.size())
        throw InputError("eavesdropper '" + r.id + "' targets unknown message");
    for (size_t m : r.side)
      if (m >= messages.size())
        throw InputError("eavesdropper '" + r.id + "' holds unknown message");
    if (!disjoint(r.targets, r.side))
      throw InputError("eavesdropper '" + r.id +
                       "' target and side sets intersect");
  }
}

size_t IndexInstance::message_index(const std::string& id) const {
  for (size_t i = 0; i < messages.size(); ++i)
    if (messages[i].id == id) return i;
  throw InputError("unknown message id '" + id + "'");
}

std::vector<std::uint32_t> IndexInstance::message_sizes() const {
  std::vector<std::uint32_t> s;
  s.reserve(messages.size());
  for (const auto& m : messages) s.push_back(m.alphabet);
  return s;
}

std::uint64_t IndexInstance::message_space() const {
  auto s = message_sizes();
  return space_size(s);
}

void IndexCode::validate(const IndexInstance& inst) const {
  if (codeword_bits > 20)
    throw InputError("codeword too long to enumerate");
  std::uint64_t cw = pow2(codeword_bits);
  if (key_alphabet > 0 && key_pmf.support_size() != key_alphabet)
    throw InputError("key pmf does not match key alphabet");
  std::uint64_t domain = inst.message_space() * effective_key_alphabet();
  if (encoder.size() != domain)
    throw InputError("encoder table must cover the full message/key domain");
  for (auto v : encoder)
    if (v >= cw) throw InputError("encoder output outside codeword range");
  if (decoders.size() != inst.receivers.size())
    throw InputError("need one decoder table per receiver");
  auto sizes = inst.message_sizes();
  for (size_t t = 0; t < decoders.size(); ++t) {
    const auto& rx = inst.receivers[t];
    std::uint64_t has_space = 1, want_space = 1;
    for (size_t m : rx.has) has_space *= sizes[m];
    for (size_t m : rx.wants) want_space *= sizes[m];
    if (decoders[t].size() != cw * has_space)
      throw InputError("decoder table for '" + rx.id +
                       "' must cover codeword x side-information domain");
    for (auto v : decoders[t])
      if (v >= want_space)
        throw InputError("decoder output for '" + rx.id + "' out of range");
  }
}

std::uint64_t IndexCode::encode(const IndexInstance& inst,
                                const std::vector<std::uint32_t>& msg_values,
                                std::uint32_t key) const {
  auto sizes = inst.message_sizes();
  std::uint64_t rank = pack_mixed(msg_values, sizes);
  return encoder.at(rank * effective_key_alphabet() + key);
}

std::uint64_t IndexCode::decode(const IndexInstance& inst, size_t receiver,
                                std::uint64_t codeword,
                                const std::vector<std::uint32_t>& has_values)
    const {
  const auto& rx = inst.receivers.at(receiver);
  auto sizes = inst.message_sizes();
  std::vector<std::uint32_t> has_sizes;
  for (size_t m : rx.has) has_sizes.push_back(sizes[m]);
  std::uint64_t has_space = 1;
  for (auto s : has_sizes) has_space *= s;
  std::uint64_t rank = codeword * has_space + pack_mixed(has_values, has_sizes);
  return decoders.at(receiver).at(rank);
}

JointPmf index_joint(const IndexInstance& inst, const IndexCode& code,
                     const std::vector<Pmf>& msg_pmfs) {
  inst.validate();
  code.validate(inst);
  if (msg_pmfs.size() != inst.messages.size())
    throw InputError("need one pmf per message");
  for (size_t i = 0; i < msg_pmfs.size(); ++i)
    if (msg_pmfs[i].support_size() != inst.messages[i].alphabet)
      throw InputError("pmf alphabet mismatch for message '" +
                       inst.messages[i].id + "'");

  auto sizes = inst.message_sizes();
  std::uint32_t key_alpha = code.effective_key_alphabet();
  Pmf key_pmf = code.effective_key_pmf();
  std::uint64_t cw = pow2(code.codeword_bits);

  std::vector<std::string> ids;
  std::vector<std::uint32_t> var_sizes;
  for (const auto& m : inst.messages) {
    ids.push_back("msg:" + m.id);
    var_sizes.push_back(m.alphabet);
  }
  ids.push_back("key");
  var_sizes.push_back(key_alpha);
  ids.push_back("bcast");
  var_sizes.push_back(static_cast<std::uint32_t>(cw));
  ids.push_back("decode_ok");
  var_sizes.push_back(2);
  JointPmf joint(ids, var_sizes);

  std::uint64_t msg_space = inst.message_space();
  for (std::uint64_t rank = 0; rank < msg_space; ++rank) {
    auto vals = unpack_mixed(rank, sizes);
    Rat msg_w = 1;
    for (size_t i = 0; i < vals.size(); ++i) msg_w *= msg_pmfs[i].weight(vals[i]);
    if (msg_w == 0) continue;
    for (std::uint32_t z = 0; z < key_alpha; ++z) {
      Rat w = msg_w * key_pmf.weight(z);
      if (w == 0) continue;
      std::uint64_t b = code.encoder[rank * key_alpha + z];
      bool ok = true;
      for (size_t t = 0; t < inst.receivers.size() && ok; ++t) {
        const auto& rx = inst.receivers[t];
        std::vector<std::uint32_t> has_vals, want_vals, want_sizes;
        for (size_t m : rx.has) has_vals.push_back(vals[m]);
        for (size_t m : rx.wants) {
          want_vals.push_back(vals[m]);
          want_sizes.push_back(sizes[m]);
        }
        std::uint64_t est = code.decode(inst, t, b, has_vals);
        ok = est == pack_mixed(want_vals, want_sizes);
      }
      std::vector<std::uint32_t> outcome = vals;
      outcome.push_back(z);
      outcome.push_back(static_cast<std::uint32_t>(b));
      outcome.push_back(ok ? 1 : 0);
      joint.add(outcome, w);
    }
  }
  joint.validate();
  return joint;
}

Rat eval_index_error(const IndexInstance& inst, const IndexCode& code,
                     const std::vector<Pmf>& msg_pmfs) {
  JointPmf joint = index_joint(inst, code, msg_pmfs);
  return joint.event_probability({{"decode_ok", 0}});
}

std::vector<double> eval_index_leakage(const IndexInstance& inst,
                                       const IndexCode& code,
                                       const std::vector<Pmf>& msg_pmfs) {
  JointPmf joint = index_joint(inst, code, msg_pmfs);
  std::vector<double> out;
  for (const auto& r : inst.eavesdroppers) {
    std::vector<std::string> a, b{"bcast"};
    for (size_t m : r.targets) a.push_back("msg:" + inst.messages[m].id);
    for (size_t m : r.side) b.push_back("msg:" + inst.messages[m].id);
    out.push_back(joint.mutual_information(a, b));
  }
  return out;
}

FeasibilityReport check_index_feasible(const IndexInstance& inst,
                                       const IndexCode& code,
                                       const std::vector<Pmf>& msg_pmfs,
                                       const Rat& epsilon, double eta) {
  FeasibilityReport rep;
  rep.error = eval_index_error(inst, code, msg_pmfs);
  rep.leakage = eval_index_leakage(inst, code, msg_pmfs);
  rep.epsilon = epsilon;
  rep.eta = eta;
  rep.error_ok = rep.error <= epsilon;
  rep.leakage_ok = true;
  for (double l : rep.leakage)
    if (l > eta + kLeakageTol) rep.leakage_ok = false;
  rep.feasible = rep.error_ok && rep.leakage_ok;
  return rep;
}

}  // namespace sce
