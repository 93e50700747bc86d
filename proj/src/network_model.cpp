#include "sce/network_model.hpp"

#include <algorithm>
#include <set>

#include "sce/error.hpp"
#include "sce/util.hpp"

namespace sce {

namespace {

constexpr std::uint64_t kMaxEdgeAlphabet = std::uint64_t{1} << 20;

std::vector<std::uint32_t> encoder_domain_sizes(const NetworkInstance& inst,
                                                const NetworkCode& code,
                                                size_t tail) {
  std::vector<std::uint32_t> sizes;
  for (size_t d : inst.in_edges(tail))
    sizes.push_back(
        static_cast<std::uint32_t>(edge_alphabet(inst, code.uses, d)));
  for (size_t m : inst.origin_messages(tail))
    sizes.push_back(inst.messages[m].alphabet);
  sizes.push_back(code.node_keys[tail].support_size());
  return sizes;
}

std::vector<std::uint32_t> decoder_domain_sizes(const NetworkInstance& inst,
                                                const NetworkCode& code,
                                                size_t v) {
  std::vector<std::uint32_t> sizes;
  for (size_t d : inst.in_edges(v))
    sizes.push_back(
        static_cast<std::uint32_t>(edge_alphabet(inst, code.uses, d)));
  for (size_t m : inst.origin_messages(v))
    sizes.push_back(inst.messages[m].alphabet);
  return sizes;
}

}  // namespace

void NetworkInstance::validate() const {
  if (vertices.empty()) throw InputError("network instance has no vertices");
  std::set<std::string> seen;
  for (const auto& v : vertices) {
    if (v.empty() || v.find(' ') != std::string::npos ||
        v.find("->") != std::string::npos || v.find(',') != std::string::npos)
      throw InputError("bad vertex id '" + v + "'");
    if (!seen.insert(v).second)
      throw InputError("duplicate vertex id '" + v + "'");
  }
  std::set<std::string> edge_ids;
  for (const auto& e : edges) {
    if (e.tail >= vertices.size() || e.head >= vertices.size())
      throw InputError("edge endpoint out of range");
    if (e.tail == e.head) throw InputError("self-loop edge");
    if (e.capacity < 0) throw InputError("negative edge capacity");
    if (!edge_ids.insert(e.id(vertices)).second)
      throw InputError("duplicate edge id '" + e.id(vertices) + "'");
  }
  std::set<std::string> msg_ids;
  for (const auto& m : messages) {
    if (m.alphabet == 0)
      throw InputError("message '" + m.id + "' has empty alphabet");
    if (!msg_ids.insert(m.id).second)
      throw InputError("duplicate message id '" + m.id + "'");
    if (m.origin >= vertices.size())
      throw InputError("message '" + m.id + "' originates nowhere");
    for (size_t i = 1; i < m.destinations.size(); ++i)
      if (m.destinations[i - 1] >= m.destinations[i])
        throw InputError("message '" + m.id + "' destinations must be sorted");
    for (size_t d : m.destinations) {
      if (d >= vertices.size())
        throw InputError("message '" + m.id + "' has unknown destination");
      if (d == m.origin)
        throw InputError("message '" + m.id + "' is demanded at its origin");
    }
  }
  for (const auto& r : eavesdroppers) {
    for (size_t m : r.targets)
      if (m >= messages.size())
        throw InputError("eavesdropper '" + r.id + "' targets unknown message");
    for (size_t e : r.taps)
      if (e >= edges.size())
        throw InputError("eavesdropper '" + r.id + "' taps unknown edge");
  }
  topological_order(*this);  // throws on a cycle
}

size_t NetworkInstance::vertex_index(const std::string& id) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == id) return i;
  throw InputError("unknown vertex id '" + id + "'");
}

size_t NetworkInstance::edge_index(const std::string& id) const {
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id(vertices) == id) return i;
  throw InputError("unknown edge id '" + id + "'");
}

std::vector<size_t> NetworkInstance::in_edges(size_t v) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].head == v) out.push_back(i);
  return out;
}

std::vector<size_t> NetworkInstance::out_edges(size_t v) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].tail == v) out.push_back(i);
  return out;
}

std::vector<size_t> NetworkInstance::origin_messages(size_t v) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < messages.size(); ++i)
    if (messages[i].origin == v) out.push_back(i);
  return out;
}

std::vector<size_t> NetworkInstance::demanded_messages(size_t v) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < messages.size(); ++i)
    if (std::binary_search(messages[i].destinations.begin(),
                           messages[i].destinations.end(), v))
      out.push_back(i);
  return out;
}

std::vector<size_t> NetworkInstance::destination_vertices() const {
  std::vector<size_t> out;
  for (size_t v = 0; v < vertices.size(); ++v)
    if (!demanded_messages(v).empty()) out.push_back(v);
  return out;
}

std::uint64_t edge_alphabet(const NetworkInstance& inst, std::uint64_t uses,
                            size_t e) {
  std::uint64_t bits = floor_scaled(inst.edges.at(e).capacity, uses);
  std::uint64_t alpha = pow2(bits);
  if (alpha > kMaxEdgeAlphabet) throw InputError("edge alphabet too large");
  return alpha;
}

std::vector<size_t> topological_order(const NetworkInstance& inst) {
  size_t n = inst.vertices.size();
  std::vector<size_t> indeg(n, 0);
  for (const auto& e : inst.edges) ++indeg[e.head];
  auto cmp = [&](size_t a, size_t b) { return inst.vertices[a] < inst.vertices[b]; };
  std::vector<size_t> ready;
  for (size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::sort(ready.begin(), ready.end(), cmp);
  std::vector<size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    size_t v = ready.front();
    ready.erase(ready.begin());
    order.push_back(v);
    for (const auto& e : inst.edges)
      if (e.tail == v && --indeg[e.head] == 0) {
        auto pos = std::lower_bound(ready.begin(), ready.end(), e.head, cmp);
        ready.insert(pos, e.head);
      }
  }
  if (order.size() != n) throw InputError("network graph contains a cycle");
  return order;
}

NetworkInstance normalize_instance(const NetworkInstance& inst) {
  inst.validate();
  NetworkInstance cur = inst;
  for (;;) {
    std::vector<bool> drop(cur.vertices.size(), false);
    bool changed = false;
    for (size_t v = 0; v < cur.vertices.size(); ++v) {
      bool no_in = cur.in_edges(v).empty();
      bool no_out = cur.out_edges(v).empty();
      bool originates = !cur.origin_messages(v).empty();
      bool demanded = !cur.demanded_messages(v).empty();
      if ((no_in && !originates) || (no_out && !demanded)) {
        drop[v] = true;
        changed = true;
      }
    }
    if (!changed) return cur;

    // Rebuild without the dropped vertices and their incident edges.
    std::vector<size_t> remap(cur.vertices.size(), SIZE_MAX);
    NetworkInstance next;
    for (size_t v = 0; v < cur.vertices.size(); ++v)
      if (!drop[v]) {
        remap[v] = next.vertices.size();
        next.vertices.push_back(cur.vertices[v]);
      }
    if (next.vertices.empty())
      throw InputError("normalization removed every vertex");
    std::vector<size_t> edge_remap(cur.edges.size(), SIZE_MAX);
    for (size_t i = 0; i < cur.edges.size(); ++i) {
      const auto& e = cur.edges[i];
      if (drop[e.tail] || drop[e.head]) continue;
      edge_remap[i] = next.edges.size();
      next.edges.push_back({remap[e.tail], remap[e.head], e.copy, e.capacity});
    }
    for (const auto& m : cur.messages) {
      if (drop[m.origin])
        throw InputError("normalization would drop origin of message '" +
                         m.id + "'");
      NetworkMessage nm = m;
      nm.origin = remap[m.origin];
      nm.destinations.clear();
      for (size_t d : m.destinations)
        if (!drop[d]) nm.destinations.push_back(remap[d]);
      next.messages.push_back(nm);
    }
    for (const auto& r : cur.eavesdroppers) {
      NetworkEavesdropper nr;
      nr.id = r.id;
      nr.targets = r.targets;
      for (size_t e : r.taps) {
        if (edge_remap[e] == SIZE_MAX)
          throw InputError("normalization would drop a tapped edge of '" +
                           r.id + "'");
        nr.taps.push_back(edge_remap[e]);
      }
      std::sort(nr.taps.begin(), nr.taps.end());
      next.eavesdroppers.push_back(nr);
    }
    cur = next;
  }
}

bool NetworkCode::deterministic() const {
  for (const auto& k : node_keys)
    if (k.support_size() > 1) return false;
  return true;
}

void NetworkCode::validate(const NetworkInstance& inst) const {
  if (node_keys.size() != inst.vertices.size())
    throw InputError("need one key pmf per vertex");
  if (edge_encoders.size() != inst.edges.size())
    throw InputError("need one encoder table per edge");
  for (size_t e = 0; e < inst.edges.size(); ++e) {
    auto sizes = encoder_domain_sizes(inst, *this, inst.edges[e].tail);
    std::uint64_t domain = space_size(sizes);
    std::uint64_t alpha = edge_alphabet(inst, uses, e);
    if (edge_encoders[e].size() != domain)
      throw InputError("encoder table size mismatch on edge '" +
                       inst.edges[e].id(inst.vertices) + "'");
    for (auto v : edge_encoders[e])
      if (v >= alpha)
        throw InputError("encoder output out of range on edge '" +
                         inst.edges[e].id(inst.vertices) + "'");
  }
  auto dests = inst.destination_vertices();
  if (decoders.size() != dests.size())
    throw InputError("need one decoder table per destination vertex");
  for (size_t v : dests) {
    auto it = decoders.find(v);
    if (it == decoders.end())
      throw InputError("missing decoder at destination vertex '" +
                       inst.vertices[v] + "'");
    auto sizes = decoder_domain_sizes(inst, *this, v);
    std::uint64_t domain = space_size(sizes);
    std::uint64_t want_space = 1;
    for (size_t m : inst.demanded_messages(v))
      want_space *= inst.messages[m].alphabet;
    if (it->second.size() != domain)
      throw InputError("decoder table size mismatch at vertex '" +
                       inst.vertices[v] + "'");
    for (auto val : it->second)
      if (val >= want_space)
        throw InputError("decoder output out of range at vertex '" +
                         inst.vertices[v] + "'");
  }
}

GlobalTables global_encodings_ordered(const NetworkInstance& inst,
                                      const NetworkCode& code,
                                      const std::vector<size_t>& order) {
  code.validate(inst);
  GlobalTables g;
  for (const auto& m : inst.messages) g.domain_sizes.push_back(m.alphabet);
  for (const auto& k : code.node_keys)
    g.domain_sizes.push_back(k.support_size());
  g.realizations = space_size(g.domain_sizes);
  g.edge_values.assign(inst.edges.size(), {});
  for (auto& ev : g.edge_values)
    ev.assign(g.realizations, 0);

  size_t nmsg = inst.messages.size();
  for (std::uint64_t rank = 0; rank < g.realizations; ++rank) {
    auto vals = unpack_mixed(rank, g.domain_sizes);
    for (size_t v : order) {
      for (size_t e : inst.out_edges(v)) {
        std::vector<std::uint32_t> in_vals, sizes;
        for (size_t d : inst.in_edges(v)) {
          in_vals.push_back(
              static_cast<std::uint32_t>(g.edge_values[d][rank]));
          sizes.push_back(
              static_cast<std::uint32_t>(edge_alphabet(inst, code.uses, d)));
        }
        for (size_t m : inst.origin_messages(v)) {
          in_vals.push_back(vals[m]);
          sizes.push_back(inst.messages[m].alphabet);
        }
        in_vals.push_back(vals[nmsg + v]);
        sizes.push_back(code.node_keys[v].support_size());
        std::uint64_t idx = pack_mixed(in_vals, sizes);
        if (idx >= code.edge_encoders[e].size())
          throw EvalError("encoder entry missing on edge '" +
                          inst.edges[e].id(inst.vertices) + "'");
        g.edge_values[e][rank] = code.edge_encoders[e][idx];
      }
    }
  }
  return g;
}

GlobalTables global_encodings(const NetworkInstance& inst,
                              const NetworkCode& code) {
  return global_encodings_ordered(inst, code, topological_order(inst));
}

namespace {

Rat realization_weight(const NetworkInstance& inst, const NetworkCode& code,
                       const std::vector<Pmf>& msg_pmfs,
                       const std::vector<std::uint32_t>& vals) {
  Rat w = 1;
  size_t nmsg = inst.messages.size();
  for (size_t i = 0; i < nmsg; ++i) w *= msg_pmfs[i].weight(vals[i]);
  for (size_t v = 0; v < inst.vertices.size(); ++v)
    w *= code.node_keys[v].weight(vals[nmsg + v]);
  return w;
}

bool all_destinations_decode(const NetworkInstance& inst,
                             const NetworkCode& code, const GlobalTables& g,
                             std::uint64_t rank,
                             const std::vector<std::uint32_t>& vals) {
  for (size_t v : inst.destination_vertices()) {
    std::vector<std::uint32_t> in_vals, sizes;
    for (size_t d : inst.in_edges(v)) {
      in_vals.push_back(static_cast<std::uint32_t>(g.edge_values[d][rank]));
      sizes.push_back(
          static_cast<std::uint32_t>(edge_alphabet(inst, code.uses, d)));
    }
    for (size_t m : inst.origin_messages(v)) {
      in_vals.push_back(vals[m]);
      sizes.push_back(inst.messages[m].alphabet);
    }
    std::uint64_t est = code.decoders.at(v).at(pack_mixed(in_vals, sizes));
    std::vector<std::uint32_t> want_vals, want_sizes;
    for (size_t m : inst.demanded_messages(v)) {
      want_vals.push_back(vals[m]);
      want_sizes.push_back(inst.messages[m].alphabet);
    }
    if (est != pack_mixed(want_vals, want_sizes)) return false;
  }
  return true;
}

void check_pmfs(const NetworkInstance& inst, const std::vector<Pmf>& msg_pmfs) {
  if (msg_pmfs.size() != inst.messages.size())
    throw InputError("need one pmf per message");
  for (size_t i = 0; i < msg_pmfs.size(); ++i)
    if (msg_pmfs[i].support_size() != inst.messages[i].alphabet)
      throw InputError("pmf alphabet mismatch for message '" +
                       inst.messages[i].id + "'");
}

}  // namespace

JointPmf network_joint(const NetworkInstance& inst, const NetworkCode& code,
                       const std::vector<Pmf>& msg_pmfs) {
  check_pmfs(inst, msg_pmfs);
  GlobalTables g = global_encodings(inst, code);

  std::vector<std::string> ids;
  std::vector<std::uint32_t> sizes;
  for (const auto& m : inst.messages) {
    ids.push_back("msg:" + m.id);
    sizes.push_back(m.alphabet);
  }
  for (size_t v = 0; v < inst.vertices.size(); ++v) {
    ids.push_back("key:" + inst.vertices[v]);
    sizes.push_back(code.node_keys[v].support_size());
  }
  for (size_t e = 0; e < inst.edges.size(); ++e) {
    ids.push_back("edge:" + inst.edges[e].id(inst.vertices));
    sizes.push_back(
        static_cast<std::uint32_t>(edge_alphabet(inst, code.uses, e)));
  }
  ids.push_back("decode_ok");
  sizes.push_back(2);
  JointPmf joint(ids, sizes);

  for (std::uint64_t rank = 0; rank < g.realizations; ++rank) {
    auto vals = unpack_mixed(rank, g.domain_sizes);
    Rat w = realization_weight(inst, code, msg_pmfs, vals);
    if (w == 0) continue;
    std::vector<std::uint32_t> outcome = vals;
    for (size_t e = 0; e < inst.edges.size(); ++e)
      outcome.push_back(static_cast<std::uint32_t>(g.edge_values[e][rank]));
    outcome.push_back(
        all_destinations_decode(inst, code, g, rank, vals) ? 1 : 0);
    joint.add(outcome, w);
  }
  joint.validate();
  return joint;
}

Rat eval_network_error(const NetworkInstance& inst, const NetworkCode& code,
                       const std::vector<Pmf>& msg_pmfs) {
  check_pmfs(inst, msg_pmfs);
  GlobalTables g = global_encodings(inst, code);
  Rat err = 0;
  for (std::uint64_t rank = 0; rank < g.realizations; ++rank) {
    auto vals = unpack_mixed(rank, g.domain_sizes);
    Rat w = realization_weight(inst, code, msg_pmfs, vals);
    if (w == 0) continue;
    if (!all_destinations_decode(inst, code, g, rank, vals)) err += w;
  }
  return err;
}

std::vector<double> eval_network_leakage(const NetworkInstance& inst,
                                         const NetworkCode& code,
                                         const std::vector<Pmf>& msg_pmfs) {
  JointPmf joint = network_joint(inst, code, msg_pmfs);
  std::vector<double> out;
  for (const auto& r : inst.eavesdroppers) {
    std::vector<std::string> a, b;
    for (size_t m : r.targets) a.push_back("msg:" + inst.messages[m].id);
    for (size_t e : r.taps)
      b.push_back("edge:" + inst.edges[e].id(inst.vertices));
    if (a.empty() || b.empty()) {
      out.push_back(0.0);
      continue;
    }
    out.push_back(joint.mutual_information(a, b));
  }
  return out;
}

FeasibilityReport check_network_feasible(const NetworkInstance& inst,
                                         const NetworkCode& code,
                                         const std::vector<Pmf>& msg_pmfs,
                                         const Rat& epsilon, double eta) {
  FeasibilityReport rep;
  rep.error = eval_network_error(inst, code, msg_pmfs);
  rep.leakage = eval_network_leakage(inst, code, msg_pmfs);
  rep.epsilon = epsilon;
  rep.eta = eta;
  rep.error_ok = rep.error <= epsilon;
  rep.leakage_ok = true;
  for (double l : rep.leakage)
    if (l > eta + kLeakageTol) rep.leakage_ok = false;
  rep.feasible = rep.error_ok && rep.leakage_ok;
  return rep;
}

std::pair<AugmentedInstance, NetworkCode> augment(const NetworkInstance& inst,
                                                  const NetworkCode& code) {
  inst.validate();
  code.validate(inst);

  AugmentedInstance out;
  out.net = inst;
  out.original_message_count = inst.messages.size();
  for (size_t v = 0; v < inst.vertices.size(); ++v) {
    NetworkMessage km;
    km.id = "key:" + inst.vertices[v];
    // re-augmenting is allowed; primed names keep ids unique
    auto taken = [&](const std::string& id) {
      for (const auto& m : inst.messages)
        if (m.id == id) return true;
      return false;
    };
    while (taken(km.id)) km.id += "'";
    bool sink = inst.out_edges(v).empty();
    km.alphabet = sink ? 1 : code.node_keys[v].support_size();
    km.origin = v;
    out.net.messages.push_back(km);
  }

  NetworkCode det;
  det.uses = code.uses;
  det.node_keys.assign(inst.vertices.size(), Pmf::uniform(1));
  // The key dimension of each encoder table was last; the key message is
  // appended after the tail's original origin messages, so the same table
  // indexes the new domain unchanged.
  det.edge_encoders = code.edge_encoders;
  for (size_t v : inst.destination_vertices()) {
    const auto& old_table = code.decoders.at(v);
    std::uint32_t key_msg_alpha =
        out.net.messages[out.key_message_of_vertex(v)].alphabet;
    std::vector<std::uint64_t> table;
    table.reserve(old_table.size() * key_msg_alpha);
    for (std::uint64_t base = 0; base < old_table.size(); ++base)
      for (std::uint32_t k = 0; k < key_msg_alpha; ++k)
        table.push_back(old_table[base]);
    det.decoders[v] = std::move(table);
  }

  out.net.validate();
  det.validate(out.net);
  return {out, det};
}

std::vector<Pmf> augmented_pmfs(const NetworkInstance& inst,
                                const NetworkCode& code,
                                const std::vector<Pmf>& msg_pmfs) {
  std::vector<Pmf> out = msg_pmfs;
  for (size_t v = 0; v < inst.vertices.size(); ++v) {
    bool sink = inst.out_edges(v).empty();
    out.push_back(sink ? Pmf::uniform(1) : code.node_keys[v]);
  }
  return out;
}

}  // namespace sce
